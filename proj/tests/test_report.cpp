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

#include <doctest.h>

#include "droidsmell/report.hpp"

using namespace droidsmell;

namespace {

Finding make_finding(const std::string& rule, const std::string& path, int line,
                     Severity severity, const std::string& evidence = "e") {
    Finding f;
    f.rule_id = rule;
    f.bundle_id = "b1";
    f.path = path;
    f.line = line;
    f.evidence = evidence;
    f.severity = severity;
    return f;
}

ScanResult result_with(std::vector<Finding> findings, std::vector<std::string> rules) {
    ScanResult r;
    r.findings = std::move(findings);
    for (const auto& rule : rules) r.presence[rule] = false;
    for (const auto& f : r.findings) r.presence[f.rule_id] = true;
    return r;
}

}  // namespace

TEST_CASE("empty report renders all-false presence and no findings") {
    ScanReport report = make_report("b1", "com.t", "core", std::nullopt,
                                    result_with({}, {"A_RULE", "B_RULE"}), {}, std::nullopt);
    std::string json = render_json(report);
    CHECK(json.find("\"findings\": []") != std::string::npos);
    CHECK(json.find("\"A_RULE\": false") != std::string::npos);
    CHECK(json.find("\"schema\": 1") != std::string::npos);
    CHECK(json.find("\"api_level\": null") != std::string::npos);
    CHECK(render_json(report) == json);  // byte-stable
}

TEST_CASE("findings are canonically ordered by (rule, path, line)") {
    std::vector<Finding> unordered = {
            make_finding("Z_RULE", "smali/a.smali", 4, Severity::Warning),
            make_finding("A_RULE", "smali/b.smali", 9, Severity::Warning),
            make_finding("A_RULE", "smali/a.smali", 7, Severity::Critical),
            make_finding("A_RULE", "smali/a.smali", 2, Severity::Critical),
    };
    ScanReport report = make_report("b1", "com.t", "all", 19,
                                    result_with(unordered, {"A_RULE", "Z_RULE"}), {},
                                    std::nullopt);
    REQUIRE(report.findings.size() == 4);
    CHECK(report.findings[0].line == 2);
    CHECK(report.findings[1].line == 7);
    CHECK(report.findings[2].path == "smali/b.smali");
    CHECK(report.findings[3].rule_id == "Z_RULE");

    CHECK(report.rule_counts.at("A_RULE") == 3);
    CHECK(report.rule_counts.at("Z_RULE") == 1);
    CHECK(report.severity_counts.at("critical") == 2);
    CHECK(report.severity_counts.at("warning") == 2);
    CHECK(report.severity_counts.at("info") == 0);
    CHECK(report.distinct_smells() == 2);
}

TEST_CASE("render_json round-trips losslessly") {
    AppMetadata meta;
    meta.package = "com.t";
    meta.category = "Games";
    meta.downloads = 12345;
    meta.stars = 4.5;
    meta.release_date = "2015-06-01";
    meta.apk_size_bytes = 777;

    std::vector<Diagnostic> diags = {{"smali/a.smali", 3, "odd directive"}};
    ScanReport report = make_report(
            "b1", "com.t", "all", 21,
            result_with({make_finding("A_RULE", "smali/a.smali", 2, Severity::Info, "x")},
                        {"A_RULE", "B_RULE"}),
            diags, meta);

    ScanReport back = report_from_json(render_json(report));
    CHECK(back == report);
    CHECK(render_json(back) == render_json(report));
}

TEST_CASE("render_text is line oriented and stable") {
    ScanReport report = make_report(
            "b1", "com.t", "core", 19,
            result_with({make_finding("B_RULE", "smali/x.smali", 12, Severity::Warning,
                                      "invoke-virtual {v0}, X"),
                         make_finding("A_RULE", "manifest/application", 0, Severity::Critical,
                                      "android:debuggable=\"true\"")},
                        {"A_RULE", "B_RULE"}),
            {}, std::nullopt);
    std::string text = render_text(report);
    CHECK(text == "critical A_RULE manifest/application:0 android:debuggable=\"true\"\n"
                  "warning B_RULE smali/x.smali:12 invoke-virtual {v0}, X\n"
                  "# bundle b1 (core ruleset): 2 finding(s), 2 distinct smell(s)\n"
                  "# A_RULE 1\n"
                  "# B_RULE 1\n");
    CHECK(render_text(report) == text);
}

TEST_CASE("exit_code honors the fail-on threshold") {
    ScanReport clean = make_report("b", "p", "all", std::nullopt, result_with({}, {"R"}), {},
                                   std::nullopt);
    CHECK(exit_code(clean, Severity::Warning) == 0);

    ScanReport critical = make_report(
            "b", "p", "all", std::nullopt,
            result_with({make_finding("R", "m", 0, Severity::Critical)}, {"R"}), {},
            std::nullopt);
    CHECK(exit_code(critical, Severity::Warning) == 1);
    CHECK(exit_code(critical, Severity::Critical) == 1);

    ScanReport info_only = make_report(
            "b", "p", "all", std::nullopt,
            result_with({make_finding("R", "m", 0, Severity::Info)}, {"R"}), {}, std::nullopt);
    CHECK(exit_code(info_only, Severity::Warning) == 0);
    CHECK(exit_code(info_only, Severity::Info) == 1);
}
