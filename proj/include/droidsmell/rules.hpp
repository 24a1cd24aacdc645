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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "droidsmell/bundle.hpp"
#include "droidsmell/manifest.hpp"
#include "droidsmell/smali.hpp"

namespace droidsmell {

enum class Severity { Info, Warning, Critical };

std::string to_string(Severity severity);
Severity severity_from_string(const std::string& text);

/// One concrete match. `path` is either a smali/native file path with a
/// 1-based line, or a manifest element path (e.g. "manifest/application")
/// with line 0. At most one finding exists per (rule_id, path, line).
struct Finding {
    std::string rule_id;
    std::string bundle_id;
    std::string path;
    int line = 0;
    std::string evidence;  // verbatim matched text, truncated to 200 chars
    Severity severity = Severity::Warning;

    friend bool operator==(const Finding&, const Finding&) = default;
};

struct RuleContext {
    const Manifest& manifest;
    const CodeIndex& index;
    const AppBundle& bundle;
};

/// A smell detector: metadata from the smell catalog plus a pure predicate
/// over the three input models.
struct Rule {
    std::string id;
    std::string smell_name;
    std::string category;   // catalog group
    Severity severity = Severity::Warning;
    std::string description;
    std::string risk;
    std::string mitigation;
    std::function<std::vector<Finding>(const RuleContext&)> predicate;
};

/// `core` (10 rules), `extended` (5), or `all` (15). Throws
/// UnknownDimensionError-style Error on any other name.
const std::vector<Rule>& get_ruleset(const std::string& name);

const Rule* find_rule(const std::string& rule_id);

struct ScanOptions {
    std::string ruleset = "all";
    std::vector<std::string> exclude_prefixes;  // package paths, e.g. com/thirdparty
};

struct ScanResult {
    std::vector<Finding> findings;            // ruleset order, per rule sorted
    std::map<std::string, bool> presence;     // rule id -> had >= 1 finding
};

/// Runs one rule: stamps ids, truncates evidence, deduplicates by location,
/// sorts by (path, line).
std::vector<Finding> evaluate_rule(const Rule& rule, const RuleContext& ctx);

/// Runs a whole ruleset, applying exclusion prefixes and the severity
/// adjustment to every finding. Throws DuplicateRuleIdError on id clash.
ScanResult evaluate_ruleset(const std::vector<Rule>& ruleset, const RuleContext& ctx,
                            const ScanOptions& options = {});

/// Downgrades cleartext-protocol findings that point at loopback hosts or
/// packaged local assets to Severity::Info; everything else is unchanged.
Finding severity_adjust(Finding finding);

/// True when `path` (a smali source path) lies under one of the package
/// path prefixes. `com.thirdparty` and `com/thirdparty/` match alike.
bool path_excluded(const std::string& path, const std::vector<std::string>& prefixes);

}  // namespace droidsmell
