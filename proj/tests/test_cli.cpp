/*
 * Copyright (C) 2026 The droidsmell Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = DROIDSMELL_CLI;
const fs::path kFixtures = DROIDSMELL_FIXTURES;

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

CliResult run_cli(const std::string& args) {
    std::string command = kCli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    char buffer[4096];
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        result.output.append(buffer, n);
    }
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string corpus(const std::string& bundle) {
    return (kFixtures / "corpus" / bundle).string();
}

}  // namespace

TEST_CASE("scan: json output, findings fail the scan") {
    CliResult r = run_cli("scan " + corpus("debuggable_on") + " --format json");
    CHECK(r.exit_code == 1);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["schema"] == 1);
    CHECK(j["presence"]["DEBUGGABLE_RELEASE"] == true);
    CHECK(j["bundle_id"] == "debuggable_on");
}

TEST_CASE("scan: clean bundle exits 0") {
    CliResult r = run_cli("scan " + corpus("clean_min"));
    CHECK(r.exit_code == 0);
}

TEST_CASE("scan: info-only findings stay below the default threshold") {
    CliResult r = run_cli("scan " + corpus("http_loopback") + " --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["presence"]["INSECURE_NETWORK_PROTOCOL"] == true);
    for (const auto& finding : j["findings"]) {
        CHECK(finding["severity"] == "info");
    }
    CHECK(run_cli("scan " + corpus("http_loopback") + " --fail-on info").exit_code == 1);
}

TEST_CASE("scan: missing directory is an input error") {
    CHECK(run_cli("scan /nonexistent/bundle/dir").exit_code == 3);
}

TEST_CASE("scan: usage errors exit 2") {
    CHECK(run_cli("scan " + corpus("clean_min") + " --ruleset nope").exit_code == 2);
    CHECK(run_cli("scan").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("scan: ruleset selection changes the evaluated rules") {
    CliResult core = run_cli("scan " + corpus("installer") + " --ruleset core --format json");
    auto j = nlohmann::json::parse(core.output);
    CHECK(j["presence"].size() == 10);
    CHECK(!j["presence"].contains("UNACKNOWLEDGED_DISTRIBUTION"));
    CHECK(core.exit_code == 0);  // the installer smell is an extended rule

    CliResult ext = run_cli("scan " + corpus("installer") + " --ruleset extended --format json");
    auto e = nlohmann::json::parse(ext.output);
    CHECK(e["presence"].size() == 5);
    CHECK(e["presence"]["UNACKNOWLEDGED_DISTRIBUTION"] == true);
    CHECK(ext.exit_code == 1);
}

TEST_CASE("batch + stats pipeline") {
    fs::path out = fs::temp_directory_path() / "droidsmell_cli_batch";
    fs::remove_all(out);
    CliResult batch = run_cli("batch " + (kFixtures / "corpus").string() + " " + out.string()
                              + " --jobs 2");
    CHECK(batch.exit_code == 0);
    CHECK(fs::exists(out / "index.json"));

    CliResult smell = run_cli("stats " + out.string() + " --dimension smell");
    CHECK(smell.exit_code == 0);
    CHECK(smell.output.rfind("rule_id,present_bundles,prevalence\n", 0) == 0);

    CliResult bogus = run_cli("stats " + out.string() + " --dimension bogus");
    CHECK(bogus.exit_code == 2);

    fs::path empty_dir = fs::temp_directory_path() / "droidsmell_cli_empty";
    fs::create_directories(empty_dir);
    CHECK(run_cli("stats " + empty_dir.string() + " --dimension smell").exit_code == 3);
    fs::remove_all(empty_dir);
    fs::remove_all(out);
}

TEST_CASE("stats joins external metadata") {
    fs::path out = fs::temp_directory_path() / "droidsmell_cli_join";
    fs::remove_all(out);
    run_cli("batch " + (kFixtures / "corpus").string() + " " + out.string());
    CliResult with = run_cli("stats " + out.string() + " --dimension category --metadata "
                             + (kFixtures / "metadata.csv").string());
    CHECK(with.exit_code == 0);
    CHECK(with.output.find("Education") != std::string::npos);       // from the CSV
    CHECK(with.output.find("Food and Drink") != std::string::npos);  // quoted-free comma-less
    CliResult without = run_cli("stats " + out.string() + " --dimension category");
    CHECK(without.output.find("Education") == std::string::npos);
    fs::remove_all(out);
}

TEST_CASE("rules lists the catalog and explains one rule") {
    CliResult table = run_cli("rules");
    CHECK(table.exit_code == 0);
    int lines = 0;
    std::istringstream stream(table.output);
    std::string line;
    while (std::getline(stream, line)) ++lines;
    CHECK(lines == 16);  // header + 15 rules

    CliResult detail = run_cli("rules DEBUGGABLE_RELEASE");
    CHECK(detail.exit_code == 0);
    CHECK(detail.output.find("android:debuggable") != std::string::npos);
    CHECK(detail.output.find("mitigation") != std::string::npos);

    CHECK(run_cli("rules NOPE").exit_code == 2);
}

TEST_CASE("exclude-prefix suppresses library findings end to end") {
    CliResult plain = run_cli("scan " + corpus("lib_noise") + " --format json");
    auto unfiltered = nlohmann::json::parse(plain.output);
    CHECK(unfiltered["presence"]["EXPOSED_CLIPBOARD"] == true);

    CliResult filtered = run_cli("scan " + corpus("lib_noise")
                                 + " --exclude-prefix com/thirdparty --format json");
    auto j = nlohmann::json::parse(filtered.output);
    CHECK(j["presence"]["EXPOSED_CLIPBOARD"] == false);
    CHECK(j["presence"]["INSECURE_NETWORK_PROTOCOL"] == false);
    CHECK(j["presence"]["DEBUGGABLE_RELEASE"] == true);
    CHECK(j["presence"]["UNIQUE_HARDWARE_ID"] == true);
    for (const auto& finding : j["findings"]) {
        std::string path = finding["path"];
        CHECK(path.find("com/thirdparty") == std::string::npos);
    }
}
