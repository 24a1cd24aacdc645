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

#include "droidsmell/report.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "droidsmell/errors.hpp"

namespace droidsmell {

namespace {

using nlohmann::json;

// nlohmann keeps object keys sorted; replacing invalid UTF-8 on dump keeps
// rendering total over arbitrary bytes found in scanned files.
std::string dump_canonical(const json& j) {
    return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

json metadata_to_json(const AppMetadata& meta) {
    json j;
    j["package"] = meta.package;
    j["category"] = meta.category;
    j["downloads"] = meta.downloads;
    j["stars"] = meta.stars;
    j["release_date"] = meta.release_date;
    j["apk_size_bytes"] = meta.apk_size_bytes;
    return j;
}

AppMetadata metadata_from_json(const json& j) {
    AppMetadata meta;
    meta.package = j.at("package").get<std::string>();
    meta.category = j.at("category").get<std::string>();
    meta.downloads = j.at("downloads").get<std::int64_t>();
    meta.stars = j.at("stars").get<double>();
    meta.release_date = j.at("release_date").get<std::string>();
    meta.apk_size_bytes = j.at("apk_size_bytes").get<std::int64_t>();
    return meta;
}

}  // namespace

int ScanReport::distinct_smells() const {
    int count = 0;
    for (const auto& [rule, present] : presence) {
        if (present) ++count;
    }
    return count;
}

ScanReport make_report(std::string bundle_id, std::string package, std::string ruleset,
                       std::optional<int> api_level, ScanResult result,
                       std::vector<Diagnostic> diagnostics,
                       std::optional<AppMetadata> metadata) {
    ScanReport report;
    report.bundle_id = std::move(bundle_id);
    report.package = std::move(package);
    report.ruleset = std::move(ruleset);
    report.api_level = api_level;
    report.findings = std::move(result.findings);
    report.presence = std::move(result.presence);
    report.diagnostics = std::move(diagnostics);
    report.metadata = std::move(metadata);

    std::sort(report.findings.begin(), report.findings.end(),
              [](const Finding& a, const Finding& b) {
                  return std::tie(a.rule_id, a.path, a.line) < std::tie(b.rule_id, b.path, b.line);
              });
    std::sort(report.diagnostics.begin(), report.diagnostics.end());

    for (const auto& [rule, present] : report.presence) report.rule_counts[rule] = 0;
    for (Severity s : {Severity::Info, Severity::Warning, Severity::Critical}) {
        report.severity_counts[to_string(s)] = 0;
    }
    for (const auto& finding : report.findings) {
        ++report.rule_counts[finding.rule_id];
        ++report.severity_counts[to_string(finding.severity)];
    }
    return report;
}

std::string render_json(const ScanReport& report) {
    json j;
    j["schema"] = 1;
    j["bundle_id"] = report.bundle_id;
    j["package"] = report.package;
    j["ruleset"] = report.ruleset;
    j["api_level"] = report.api_level ? json(*report.api_level) : json(nullptr);
    j["findings"] = json::array();
    for (const auto& finding : report.findings) {
        j["findings"].push_back({{"rule_id", finding.rule_id},
                                 {"bundle_id", finding.bundle_id},
                                 {"path", finding.path},
                                 {"line", finding.line},
                                 {"evidence", finding.evidence},
                                 {"severity", to_string(finding.severity)}});
    }
    j["presence"] = report.presence;
    j["stats"] = {{"by_rule", report.rule_counts}, {"by_severity", report.severity_counts}};
    j["diagnostics"] = json::array();
    for (const auto& diag : report.diagnostics) {
        j["diagnostics"].push_back(
                {{"path", diag.path}, {"line", diag.line}, {"message", diag.message}});
    }
    j["metadata"] = report.metadata ? metadata_to_json(*report.metadata) : json(nullptr);
    return dump_canonical(j);
}

ScanReport report_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    if (!j.contains("schema") || j["schema"].get<int>() != 1) {
        throw Error("unsupported report schema");
    }
    ScanReport report;
    report.bundle_id = j.at("bundle_id").get<std::string>();
    report.package = j.at("package").get<std::string>();
    report.ruleset = j.at("ruleset").get<std::string>();
    if (!j.at("api_level").is_null()) report.api_level = j["api_level"].get<int>();
    for (const auto& f : j.at("findings")) {
        Finding finding;
        finding.rule_id = f.at("rule_id").get<std::string>();
        finding.bundle_id = f.at("bundle_id").get<std::string>();
        finding.path = f.at("path").get<std::string>();
        finding.line = f.at("line").get<int>();
        finding.evidence = f.at("evidence").get<std::string>();
        finding.severity = severity_from_string(f.at("severity").get<std::string>());
        report.findings.push_back(std::move(finding));
    }
    report.presence = j.at("presence").get<std::map<std::string, bool>>();
    report.rule_counts = j.at("stats").at("by_rule").get<std::map<std::string, int>>();
    report.severity_counts = j.at("stats").at("by_severity").get<std::map<std::string, int>>();
    for (const auto& d : j.at("diagnostics")) {
        report.diagnostics.push_back({d.at("path").get<std::string>(), d.at("line").get<int>(),
                                      d.at("message").get<std::string>()});
    }
    if (!j.at("metadata").is_null()) report.metadata = metadata_from_json(j["metadata"]);
    return report;
}

std::string render_text(const ScanReport& report) {
    std::ostringstream out;
    for (const auto& finding : report.findings) {
        std::string evidence = finding.evidence;
        std::replace(evidence.begin(), evidence.end(), '\n', ' ');
        std::replace(evidence.begin(), evidence.end(), '\r', ' ');
        out << to_string(finding.severity) << ' ' << finding.rule_id << ' ' << finding.path
            << ':' << finding.line << ' ' << evidence << '\n';
    }
    out << "# bundle " << report.bundle_id << " (" << report.ruleset << " ruleset): "
        << report.findings.size() << " finding(s), " << report.distinct_smells()
        << " distinct smell(s)\n";
    for (const auto& [rule, count] : report.rule_counts) {
        out << "# " << rule << ' ' << count << '\n';
    }
    return out.str();
}

int exit_code(const ScanReport& report, Severity fail_on) {
    for (const auto& finding : report.findings) {
        if (finding.severity >= fail_on) return 1;
    }
    return 0;
}

}  // namespace droidsmell
