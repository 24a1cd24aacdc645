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
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "droidsmell/analytics.hpp"
#include "droidsmell/errors.hpp"

namespace {

// Exit codes: 0 clean / below threshold, 1 findings at/above threshold,
// 2 usage or config error, 3 input error.
constexpr int kExitFindings = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

struct CommonOptions {
    std::string ruleset = "all";
    std::vector<std::string> exclude_prefixes;
    std::string metadata_csv;

    droidsmell::ScanOptions scan_options() const { return {ruleset, exclude_prefixes}; }

    std::map<std::string, droidsmell::AppMetadata> metadata() const {
        if (metadata_csv.empty()) return {};
        return droidsmell::load_metadata_csv(metadata_csv);
    }
};

void add_common(CLI::App* cmd, CommonOptions& options) {
    cmd->add_option("--ruleset", options.ruleset, "Ruleset to evaluate")
            ->check(CLI::IsMember({"core", "extended", "all"}))
            ->capture_default_str();
    cmd->add_option("--exclude-prefix", options.exclude_prefixes,
                    "Package path prefix to suppress (repeatable), e.g. com/thirdparty");
    cmd->add_option("--metadata", options.metadata_csv,
                    "Corpus metadata CSV joined on package name");
}

int cmd_rules(const std::string& rule_id) {
    using droidsmell::get_ruleset;
    if (rule_id.empty()) {
        std::printf("%-28s %-36s %s\n", "ID", "CATEGORY", "SEVERITY");
        for (const auto& rule : get_ruleset("all")) {
            std::printf("%-28s %-36s %s\n", rule.id.c_str(), rule.category.c_str(),
                        droidsmell::to_string(rule.severity).c_str());
        }
        return 0;
    }
    const droidsmell::Rule* rule = droidsmell::find_rule(rule_id);
    if (!rule) {
        std::cerr << "error: unknown rule '" << rule_id << "' (try `droidsmell rules`)\n";
        return kExitUsage;
    }
    std::cout << rule->id << ": " << rule->smell_name << "\n"
              << "catalog entry: " << rule->category << " / " << rule->smell_name << "\n"
              << "severity:      " << droidsmell::to_string(rule->severity) << "\n\n"
              << "detects:    " << rule->description << "\n\n"
              << "risk:       " << rule->risk << "\n\n"
              << "mitigation: " << rule->mitigation << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"droidsmell: security code smell scanner for decoded Android app bundles"};
    app.require_subcommand(1);

    // scan
    auto* scan = app.add_subcommand("scan", "Scan one decoded bundle directory");
    std::string scan_path;
    CommonOptions scan_common;
    std::string format = "text";
    std::string fail_on = "warning";
    scan->add_option("bundle", scan_path, "Decoded bundle directory")->required();
    add_common(scan, scan_common);
    scan->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
    scan->add_option("--fail-on", fail_on, "Lowest severity that fails the scan")
            ->check(CLI::IsMember({"info", "warning", "critical"}))
            ->capture_default_str();

    // batch
    auto* batch = app.add_subcommand("batch", "Scan a corpus and write one report per bundle");
    std::string batch_root;
    std::string batch_out;
    CommonOptions batch_common;
    int jobs = 1;
    batch->add_option("corpus", batch_root, "Corpus root directory")->required();
    batch->add_option("out", batch_out, "Output directory for report files")->required();
    add_common(batch, batch_common);
    batch->add_option("--jobs", jobs, "Concurrent bundle scans")
            ->check(CLI::Range(1, 1024))
            ->capture_default_str();

    // stats
    auto* stats = app.add_subcommand("stats", "Aggregate a report directory into CSV");
    std::string stats_dir;
    std::string dimension;
    std::string stats_metadata;
    stats->add_option("reports", stats_dir, "Directory of batch report files")->required();
    stats->add_option("--dimension", dimension, "smell, count, api-level, category, downloads, stars, or release-year")
            ->required();
    stats->add_option("--metadata", stats_metadata, "Corpus metadata CSV joined on package name");

    // rules
    auto* rules = app.add_subcommand("rules", "List rules or explain one");
    std::string rule_id;
    rules->add_option("rule", rule_id, "Rule id to explain");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (scan->parsed()) {
            droidsmell::ScanReport report =
                    droidsmell::scan_bundle(scan_path, scan_common.scan_options(),
                                            scan_common.metadata());
            std::cout << (format == "json" ? droidsmell::render_json(report)
                                           : droidsmell::render_text(report));
            return droidsmell::exit_code(report, droidsmell::severity_from_string(fail_on))
                           ? kExitFindings
                           : 0;
        }
        if (batch->parsed()) {
            droidsmell::CorpusScanResult result =
                    droidsmell::write_batch(batch_root, batch_out, batch_common.scan_options(),
                                            jobs, batch_common.metadata());
            std::cerr << "scanned " << result.reports.size() << " bundle(s), "
                      << result.errors.size() << " error(s) -> " << batch_out << "\n";
            return 0;
        }
        if (stats->parsed()) {
            const auto& dims = droidsmell::csv_dimensions();
            if (std::find(dims.begin(), dims.end(), dimension) == dims.end()) {
                std::cerr << "error: unknown dimension '" << dimension << "'\n";
                return kExitUsage;
            }
            std::map<std::string, droidsmell::AppMetadata> extra;
            if (!stats_metadata.empty()) extra = droidsmell::load_metadata_csv(stats_metadata);
            auto reports = droidsmell::load_reports_dir(stats_dir);
            std::cout << droidsmell::export_csv(droidsmell::aggregate(reports, extra), dimension);
            return 0;
        }
        if (rules->parsed()) {
            return cmd_rules(rule_id);
        }
    } catch (const droidsmell::UnknownDimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const droidsmell::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}
