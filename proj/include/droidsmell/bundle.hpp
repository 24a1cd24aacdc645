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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "droidsmell/diagnostics.hpp"

namespace droidsmell {

/// Store-side metadata for one app, supplied as a `metadata.json` sidecar
/// in the bundle directory or joined from a corpus-wide CSV.
struct AppMetadata {
    std::string package;
    std::string category;
    std::int64_t downloads = 0;      // >= 0
    double stars = 0.0;              // within [0, 5]
    std::string release_date;        // ISO-8601 calendar date (YYYY-MM-DD)
    std::int64_t apk_size_bytes = 0; // >= 0

    friend bool operator==(const AppMetadata&, const AppMetadata&) = default;
};

struct SmaliFile {
    std::string path;  // bundle-relative, forward slashes
    std::string text;

    friend bool operator==(const SmaliFile&, const SmaliFile&) = default;
};

/// One decoded app as found on disk: the plain-text manifest, every smali
/// file from all smali*/ trees, native library paths, and the optional
/// metadata sidecar. Immutable once loaded.
struct AppBundle {
    std::string bundle_id;               // directory name
    std::string manifest_text;           // non-empty
    std::vector<SmaliFile> smali_files;  // sorted by path, paths unique
    std::vector<std::string> native_libs;
    std::optional<AppMetadata> metadata;
    std::vector<Diagnostic> diagnostics;

    friend bool operator==(const AppBundle&, const AppBundle&) = default;
};

/// Loads a decoded bundle directory (apktool layout): AndroidManifest.xml,
/// smali*/**/*.smali, lib/**/*.so (path only), optional metadata.json.
/// Unreadable smali files become diagnostics; a missing or empty manifest
/// throws MissingManifestError; a bad sidecar throws MalformedMetadataError.
AppBundle discover_bundle(const std::filesystem::path& dir);

/// Immediate subdirectories of `root` that contain an AndroidManifest.xml,
/// sorted lexicographically by directory name.
std::vector<std::filesystem::path> discover_corpus(const std::filesystem::path& root);

/// Parses a metadata sidecar (JSON object with keys package, category,
/// downloads, stars, release_date, apk_size_bytes). Throws
/// MalformedMetadataError on bad JSON or violated invariants.
AppMetadata parse_metadata_json(const std::string& text);

/// Loads a corpus metadata CSV (`package,category,downloads,stars,
/// release_date,apk_size_bytes` with a header row), keyed by package.
std::map<std::string, AppMetadata> load_metadata_csv(const std::filesystem::path& csv);

}  // namespace droidsmell
