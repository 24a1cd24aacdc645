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

#include "droidsmell/analytics.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>
#include <variant>

#include <json.hpp>

#include "droidsmell/errors.hpp"
#include "droidsmell/manifest.hpp"
#include "droidsmell/smali.hpp"

namespace fs = std::filesystem;

namespace droidsmell {

namespace {

std::string format_fraction(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", value);
    return buffer;
}

std::optional<AppMetadata> join_metadata(const std::optional<AppMetadata>& own,
                                         const std::string& package,
                                         const std::map<std::string, AppMetadata>& extra) {
    if (own) return own;  // the bundle's sidecar wins over the corpus CSV
    auto it = extra.find(package);
    if (it != extra.end()) return it->second;
    return std::nullopt;
}

}  // namespace

ScanReport scan_bundle(const fs::path& dir, const ScanOptions& options,
                       const std::map<std::string, AppMetadata>& extra_metadata) {
    AppBundle bundle = discover_bundle(dir);
    Manifest manifest = parse_manifest(bundle.manifest_text);

    std::vector<Diagnostic> diagnostics = bundle.diagnostics;
    diagnostics.insert(diagnostics.end(), manifest.diagnostics.begin(),
                       manifest.diagnostics.end());

    std::vector<SmaliClass> classes;
    classes.reserve(bundle.smali_files.size());
    for (const auto& file : bundle.smali_files) {
        SmaliParseResult parsed = parse_smali_file(file.text, file.path);
        diagnostics.insert(diagnostics.end(), parsed.diagnostics.begin(),
                           parsed.diagnostics.end());
        if (parsed.parsed) classes.push_back(std::move(*parsed.parsed));
    }
    CodeIndex index = build_index(classes);
    diagnostics.insert(diagnostics.end(), index.diagnostics.begin(), index.diagnostics.end());

    ScanResult result =
            evaluate_ruleset(get_ruleset(options.ruleset), {manifest, index, bundle}, options);

    std::optional<int> api_level = manifest.target_sdk ? manifest.target_sdk : manifest.min_sdk;
    return make_report(bundle.bundle_id, manifest.package, options.ruleset, api_level,
                       std::move(result), std::move(diagnostics),
                       join_metadata(bundle.metadata, manifest.package, extra_metadata));
}

CorpusScanResult scan_corpus(const fs::path& root, const ScanOptions& options, int jobs,
                             const std::map<std::string, AppMetadata>& extra_metadata) {
    std::vector<fs::path> bundles = discover_corpus(root);
    if (jobs < 1) jobs = 1;

    using Slot = std::variant<std::monostate, ScanReport, CorpusScanError>;
    std::vector<Slot> slots(bundles.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= bundles.size()) return;
            try {
                slots[i] = scan_bundle(bundles[i], options, extra_metadata);
            } catch (const std::exception& e) {
                slots[i] = CorpusScanError{bundles[i].filename().string(), e.what()};
            }
        }
    };

    if (jobs == 1 || bundles.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(jobs), bundles.size());
        pool.reserve(n);
        for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Slots are already in discover_corpus order (sorted by bundle name), so
    // the result is identical at any parallelism.
    CorpusScanResult result;
    for (auto& slot : slots) {
        if (auto* report = std::get_if<ScanReport>(&slot)) {
            result.reports.push_back(std::move(*report));
        } else if (auto* error = std::get_if<CorpusScanError>(&slot)) {
            result.errors.push_back(std::move(*error));
        }
    }
    return result;
}

CorpusScanResult write_batch(const fs::path& root, const fs::path& out_dir,
                             const ScanOptions& options, int jobs,
                             const std::map<std::string, AppMetadata>& extra_metadata) {
    CorpusScanResult result = scan_corpus(root, options, jobs, extra_metadata);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    nlohmann::json index;
    index["schema"] = 1;
    index["ruleset"] = options.ruleset;
    index["bundles"] = nlohmann::json::array();
    for (const auto& report : result.reports) {
        fs::path file = out_dir / (report.bundle_id + ".json");
        std::ofstream out(file, std::ios::binary);
        if (!out) throw IoError("cannot write " + file.string());
        out << render_json(report);
        index["bundles"].push_back({{"bundle_id", report.bundle_id},
                                    {"report", report.bundle_id + ".json"},
                                    {"findings", report.findings.size()},
                                    {"distinct_smells", report.distinct_smells()}});
    }
    index["errors"] = nlohmann::json::array();
    for (const auto& error : result.errors) {
        index["errors"].push_back({{"bundle_id", error.bundle_id}, {"message", error.message}});
    }
    std::ofstream out(out_dir / "index.json", std::ios::binary);
    if (!out) throw IoError("cannot write " + (out_dir / "index.json").string());
    out << index.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) << "\n";

    return result;
}

std::vector<ScanReport> load_reports_dir(const fs::path& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw IoError("not a readable directory: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().extension() != ".json") continue;
        if (entry.path().filename() == "index.json") continue;
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<ScanReport> reports;
    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw IoError("cannot read " + file.string());
        std::ostringstream buffer;
        buffer << in.rdbuf();
        try {
            reports.push_back(report_from_json(buffer.str()));
        } catch (const std::exception& e) {
            throw Error(file.string() + ": " + e.what());
        }
    }
    std::sort(reports.begin(), reports.end(), [](const ScanReport& a, const ScanReport& b) {
        return a.bundle_id < b.bundle_id;
    });
    return reports;
}

std::string download_bucket(std::int64_t downloads) {
    if (downloads < 1000) return "<1k";
    if (downloads < 50000) return "1k-50k";
    if (downloads < 1000000) return "50k-1M";
    return ">1M";
}

std::string star_bucket(double stars) {
    int step = static_cast<int>(stars / 0.5);
    if (step > 9) step = 9;  // 5.0 belongs to the top bucket
    if (step < 0) step = 0;
    double low = step * 0.5;
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%.1f-%.1f", low, low + 0.5);
    return buffer;
}

std::map<std::string, double> CorpusStats::prevalence() const {
    std::map<std::string, double> out;
    for (const auto& [rule, count] : present_counts) {
        out[rule] = n_bundles ? static_cast<double>(count) / n_bundles : 0.0;
    }
    return out;
}

CorpusStats aggregate(const std::vector<ScanReport>& reports,
                      const std::map<std::string, AppMetadata>& extra_metadata) {
    if (reports.empty()) throw EmptyCorpusError("no reports to aggregate");

    CorpusStats stats;
    stats.n_bundles = static_cast<int>(reports.size());

    std::set<std::string> rule_ids;
    for (const auto& report : reports) {
        for (const auto& [rule, present] : report.presence) rule_ids.insert(rule);
    }
    stats.rule_ids.assign(rule_ids.begin(), rule_ids.end());
    for (const auto& rule : stats.rule_ids) stats.present_counts[rule] = 0;
    for (std::size_t k = 0; k <= stats.rule_ids.size(); ++k) {
        stats.partition[static_cast<int>(k)] = 0;
    }

    auto fold_group = [&](std::map<std::string, GroupStats>& groups, const std::string& key,
                          const ScanReport& report, int distinct) {
        GroupStats& group = groups[key];
        ++group.n;
        group.sum_distinct += distinct;
        for (const auto& [rule, present] : report.presence) {
            if (present) ++group.present[rule];
        }
    };

    for (const auto& report : reports) {
        int distinct = report.distinct_smells();
        ++stats.partition[distinct];
        for (const auto& [rule, present] : report.presence) {
            if (present) ++stats.present_counts[rule];
        }

        std::string api_key = report.api_level ? std::to_string(*report.api_level) : "unknown";
        fold_group(stats.by_api_level, api_key, report, distinct);

        auto metadata = join_metadata(report.metadata, report.package, extra_metadata);
        if (!metadata) {
            ++stats.skipped_no_metadata;
            continue;
        }
        fold_group(stats.by_category, metadata->category, report, distinct);
        fold_group(stats.by_downloads, download_bucket(metadata->downloads), report, distinct);
        fold_group(stats.by_stars, star_bucket(metadata->stars), report, distinct);
        std::string year = metadata->release_date.substr(0, 4);
        fold_group(stats.by_release_year, year, report, distinct);
    }
    return stats;
}

namespace {

// Group keys in export order: api levels numerically with "unknown" last,
// download buckets smallest-first, everything else lexicographically.
std::vector<std::string> ordered_keys(const std::map<std::string, GroupStats>& groups,
                                      const std::string& dimension) {
    std::vector<std::string> keys;
    keys.reserve(groups.size());
    for (const auto& [key, value] : groups) keys.push_back(key);
    if (dimension == "api-level") {
        std::sort(keys.begin(), keys.end(), [](const std::string& a, const std::string& b) {
            bool a_num = a != "unknown";
            bool b_num = b != "unknown";
            if (a_num != b_num) return a_num;
            if (!a_num) return false;
            return std::stoi(a) < std::stoi(b);
        });
    } else if (dimension == "downloads") {
        static const std::vector<std::string> order = {"<1k", "1k-50k", "50k-1M", ">1M"};
        std::sort(keys.begin(), keys.end(), [](const std::string& a, const std::string& b) {
            auto rank = [](const std::string& k) {
                auto it = std::find(order.begin(), order.end(), k);
                return std::distance(order.begin(), it);
            };
            return rank(a) < rank(b);
        });
    }
    return keys;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += "\"\"";
        else quoted.push_back(c);
    }
    quoted += "\"";
    return quoted;
}

std::string export_groups(const CorpusStats& stats,
                          const std::map<std::string, GroupStats>& groups,
                          const std::string& key_name, const std::string& dimension) {
    std::ostringstream out;
    out << key_name << ",n";
    for (const auto& rule : stats.rule_ids) out << ',' << rule;
    out << ",sum_distinct,mean_distinct\n";
    for (const auto& key : ordered_keys(groups, dimension)) {
        const GroupStats& group = groups.at(key);
        out << csv_quote(key) << ',' << group.n;
        for (const auto& rule : stats.rule_ids) {
            auto it = group.present.find(rule);
            int count = it == group.present.end() ? 0 : it->second;
            out << ',' << format_fraction(group.n ? static_cast<double>(count) / group.n : 0.0);
        }
        out << ',' << group.sum_distinct << ',' << format_fraction(group.mean_distinct()) << '\n';
    }
    return out.str();
}

}  // namespace

const std::vector<std::string>& csv_dimensions() {
    static const std::vector<std::string> dims = {"smell",     "count", "api-level", "category",
                                                  "downloads", "stars", "release-year"};
    return dims;
}

std::string export_csv(const CorpusStats& stats, const std::string& dimension) {
    if (dimension == "smell") {
        std::ostringstream out;
        out << "rule_id,present_bundles,prevalence\n";
        for (const auto& rule : stats.rule_ids) {
            int count = stats.present_counts.at(rule);
            out << rule << ',' << count << ','
                << format_fraction(stats.n_bundles ? static_cast<double>(count) / stats.n_bundles
                                                   : 0.0)
                << '\n';
        }
        return out.str();
    }
    if (dimension == "count") {
        std::ostringstream out;
        out << "distinct_smells,bundles\n";
        for (const auto& [k, count] : stats.partition) {
            out << k << ',' << count << '\n';
        }
        return out.str();
    }
    if (dimension == "api-level") return export_groups(stats, stats.by_api_level, "api_level", dimension);
    if (dimension == "category") return export_groups(stats, stats.by_category, "category", dimension);
    if (dimension == "downloads") return export_groups(stats, stats.by_downloads, "downloads", dimension);
    if (dimension == "stars") return export_groups(stats, stats.by_stars, "stars", dimension);
    if (dimension == "release-year") {
        return export_groups(stats, stats.by_release_year, "release_year", dimension);
    }
    throw UnknownDimensionError("unknown dimension '" + dimension + "' (expected smell, count, "
                                "api-level, category, downloads, stars, or release-year)");
}

}  // namespace droidsmell
