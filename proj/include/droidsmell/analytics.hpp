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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "droidsmell/report.hpp"

namespace droidsmell {

/// Full scan pipeline for one decoded bundle directory. Throws on input
/// errors (missing manifest, malformed XML/metadata, unreadable path).
/// `extra_metadata` (package -> metadata) fills in bundles without a sidecar.
ScanReport scan_bundle(const std::filesystem::path& dir, const ScanOptions& options = {},
                       const std::map<std::string, AppMetadata>& extra_metadata = {});

struct CorpusScanError {
    std::string bundle_id;
    std::string message;
};

struct CorpusScanResult {
    std::vector<ScanReport> reports;     // sorted by bundle_id
    std::vector<CorpusScanError> errors; // sorted by bundle_id
};

/// Scans every bundle under `root` with up to `jobs` workers. Output is
/// identical for any degree of parallelism; per-bundle failures become
/// error entries.
CorpusScanResult scan_corpus(const std::filesystem::path& root, const ScanOptions& options = {},
                             int jobs = 1,
                             const std::map<std::string, AppMetadata>& extra_metadata = {});

/// Writes one `<bundle_id>.json` per report plus `index.json` into
/// `out_dir` (created if needed). Reruns produce identical bytes.
CorpusScanResult write_batch(const std::filesystem::path& root,
                             const std::filesystem::path& out_dir,
                             const ScanOptions& options = {}, int jobs = 1,
                             const std::map<std::string, AppMetadata>& extra_metadata = {});

/// Loads every report (`*.json` except index.json) from a batch directory.
std::vector<ScanReport> load_reports_dir(const std::filesystem::path& dir);

/// Per-group accumulator: bundle count, per-rule present counts, and the
/// running sum of distinct smells (prevalence = present / n).
struct GroupStats {
    int n = 0;
    std::map<std::string, int> present;
    long long sum_distinct = 0;

    double mean_distinct() const { return n ? static_cast<double>(sum_distinct) / n : 0.0; }
};

/// Corpus-level aggregates: prevalence per rule, the distinct-smell-count
/// partition, and the same numbers grouped by API level, category,
/// download bucket, star bucket, and release year. Counts are accumulated
/// as integers and divided exactly once on read.
struct CorpusStats {
    int n_bundles = 0;
    std::vector<std::string> rule_ids;        // union of presence keys, sorted
    std::map<std::string, int> present_counts;
    std::map<int, int> partition;             // k distinct smells -> bundles
    std::map<std::string, GroupStats> by_api_level;  // "15", ..., "unknown"
    std::map<std::string, GroupStats> by_category;
    std::map<std::string, GroupStats> by_downloads;  // "<1k".. ">1M"
    std::map<std::string, GroupStats> by_stars;      // "0.0-0.5".. "4.5-5.0"
    std::map<std::string, GroupStats> by_release_year;
    int skipped_no_metadata = 0;

    std::map<std::string, double> prevalence() const;
};

/// Throws EmptyCorpusError when `reports` is empty. `extra_metadata` is
/// joined on package for reports without embedded metadata.
CorpusStats aggregate(const std::vector<ScanReport>& reports,
                      const std::map<std::string, AppMetadata>& extra_metadata = {});

/// Download bucket label for a download count (boundaries at 1k, 50k, 1M).
std::string download_bucket(std::int64_t downloads);
/// Star bucket label at 0.5-star steps ("4.5-5.0" includes 5.0).
std::string star_bucket(double stars);

/// CSV export of one dimension: smell, count, api-level, category,
/// downloads, stars, or release-year. Fractions carry 4 decimal places.
/// Throws UnknownDimensionError on anything else.
std::string export_csv(const CorpusStats& stats, const std::string& dimension);

const std::vector<std::string>& csv_dimensions();

}  // namespace droidsmell
