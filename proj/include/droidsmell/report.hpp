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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "droidsmell/bundle.hpp"
#include "droidsmell/rules.hpp"

namespace droidsmell {

/// Scan outcome for one bundle, in canonical order: findings sorted by
/// (rule_id, path, line); stats mirror the finding subsets exactly.
struct ScanReport {
    std::string bundle_id;
    std::string package;
    std::string ruleset;
    std::optional<int> api_level;  // target_sdk, falling back to min_sdk
    std::vector<Finding> findings;
    std::map<std::string, bool> presence;
    std::map<std::string, int> rule_counts;      // every ruleset id, zeros kept
    std::map<std::string, int> severity_counts;  // info / warning / critical
    std::vector<Diagnostic> diagnostics;
    std::optional<AppMetadata> metadata;

    friend bool operator==(const ScanReport&, const ScanReport&) = default;

    int distinct_smells() const;
};

ScanReport make_report(std::string bundle_id, std::string package, std::string ruleset,
                       std::optional<int> api_level, ScanResult result,
                       std::vector<Diagnostic> diagnostics,
                       std::optional<AppMetadata> metadata);

/// Canonical JSON: keys sorted, findings in report order, `"schema": 1`,
/// two-space indent, trailing newline. Byte-stable across runs.
std::string render_json(const ScanReport& report);

/// Parses render_json output back; lossless for every ScanReport field.
ScanReport report_from_json(const std::string& json_text);

/// One `severity rule_id path:line evidence` line per finding, then a
/// per-rule count summary. Same ordering as render_json.
std::string render_text(const ScanReport& report);

/// 0 when no finding is at or above `fail_on`, 1 otherwise.
int exit_code(const ScanReport& report, Severity fail_on);

}  // namespace droidsmell
