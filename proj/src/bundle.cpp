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

#include "droidsmell/bundle.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "droidsmell/errors.hpp"

namespace fs = std::filesystem;

namespace droidsmell {

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("error while reading " + path.string());
    return buffer.str();
}

std::string relative_generic(const fs::path& path, const fs::path& base) {
    return path.lexically_relative(base).generic_string();
}

bool valid_date(const std::string& date) {
    // YYYY-MM-DD with sane ranges; no calendar arithmetic needed here.
    if (date.size() != 10 || date[4] != '-' || date[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(date[i]))) return false;
    }
    int month = (date[5] - '0') * 10 + (date[6] - '0');
    int day = (date[8] - '0') * 10 + (date[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

void check_metadata(const AppMetadata& meta) {
    if (meta.package.empty()) throw MalformedMetadataError("metadata: package is empty");
    if (meta.downloads < 0) throw MalformedMetadataError("metadata: downloads is negative");
    if (meta.stars < 0.0 || meta.stars > 5.0) {
        throw MalformedMetadataError("metadata: stars outside [0, 5]");
    }
    if (meta.apk_size_bytes < 0) {
        throw MalformedMetadataError("metadata: apk_size_bytes is negative");
    }
    if (!valid_date(meta.release_date)) {
        throw MalformedMetadataError("metadata: release_date is not an ISO-8601 date: '"
                                     + meta.release_date + "'");
    }
}

// Minimal CSV field splitting with double-quote support.
std::vector<std::string> split_csv_row(const std::string& row) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < row.size(); ++i) {
        char c = row[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < row.size() && row[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace

AppMetadata parse_metadata_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedMetadataError(std::string("metadata: invalid JSON: ") + e.what());
    }
    AppMetadata meta;
    try {
        meta.package = j.at("package").get<std::string>();
        meta.category = j.at("category").get<std::string>();
        meta.downloads = j.at("downloads").get<std::int64_t>();
        meta.stars = j.at("stars").get<double>();
        meta.release_date = j.at("release_date").get<std::string>();
        meta.apk_size_bytes = j.at("apk_size_bytes").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw MalformedMetadataError(std::string("metadata: missing or mistyped key: ")
                                     + e.what());
    }
    check_metadata(meta);
    return meta;
}

std::map<std::string, AppMetadata> load_metadata_csv(const fs::path& csv) {
    std::ifstream in(csv);
    if (!in) throw IoError("cannot read " + csv.string());
    std::map<std::string, AppMetadata> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line_no == 1 && line.rfind("package,", 0) == 0)) continue;
        auto fields = split_csv_row(line);
        if (fields.size() != 6) {
            throw MalformedMetadataError(csv.string() + ":" + std::to_string(line_no)
                                         + ": expected 6 fields, got "
                                         + std::to_string(fields.size()));
        }
        AppMetadata meta;
        meta.package = fields[0];
        meta.category = fields[1];
        try {
            meta.downloads = std::stoll(fields[2]);
            meta.stars = std::stod(fields[3]);
            meta.apk_size_bytes = std::stoll(fields[5]);
        } catch (const std::exception&) {
            throw MalformedMetadataError(csv.string() + ":" + std::to_string(line_no)
                                         + ": non-numeric downloads/stars/apk_size_bytes");
        }
        meta.release_date = fields[4];
        check_metadata(meta);
        out[meta.package] = std::move(meta);
    }
    return out;
}

AppBundle discover_bundle(const fs::path& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw IoError("not a readable directory: " + dir.string());
    }

    AppBundle bundle;
    fs::path abs = fs::absolute(dir);
    bundle.bundle_id = abs.filename().string();
    if (bundle.bundle_id.empty() || bundle.bundle_id == ".") {
        bundle.bundle_id = abs.parent_path().filename().string();
    }

    fs::path manifest_path = dir / "AndroidManifest.xml";
    if (!fs::is_regular_file(manifest_path, ec)) {
        throw MissingManifestError("no AndroidManifest.xml in " + dir.string());
    }
    bundle.manifest_text = read_file(manifest_path);
    if (bundle.manifest_text.empty()) {
        throw MissingManifestError("empty AndroidManifest.xml in " + dir.string());
    }

    // All smali*/ trees (multi-dex) merge into one file set.
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_directory()) continue;
        std::string name = entry.path().filename().string();
        if (name.rfind("smali", 0) != 0) continue;
        for (fs::recursive_directory_iterator it(entry.path(), ec), end; it != end;
             it.increment(ec)) {
            if (ec) {
                bundle.diagnostics.push_back({relative_generic(entry.path(), dir), 0,
                                              "unreadable directory: " + ec.message()});
                break;
            }
            if (!it->is_regular_file() || it->path().extension() != ".smali") continue;
            std::string rel = relative_generic(it->path(), dir);
            try {
                bundle.smali_files.push_back({rel, read_file(it->path())});
            } catch (const IoError& e) {
                bundle.diagnostics.push_back({rel, 0, e.what()});
            }
        }
    }
    std::sort(bundle.smali_files.begin(), bundle.smali_files.end(),
              [](const SmaliFile& a, const SmaliFile& b) { return a.path < b.path; });

    fs::path lib_dir = dir / "lib";
    if (fs::is_directory(lib_dir, ec)) {
        for (fs::recursive_directory_iterator it(lib_dir, ec), end; it != end;
             it.increment(ec)) {
            if (ec) break;
            if (it->is_regular_file() && it->path().extension() == ".so") {
                bundle.native_libs.push_back(relative_generic(it->path(), dir));
            }
        }
        std::sort(bundle.native_libs.begin(), bundle.native_libs.end());
    }

    fs::path metadata_path = dir / "metadata.json";
    if (fs::is_regular_file(metadata_path, ec)) {
        bundle.metadata = parse_metadata_json(read_file(metadata_path));
    }

    return bundle;
}

std::vector<fs::path> discover_corpus(const fs::path& root) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        throw IoError("not a readable directory: " + root.string());
    }
    std::vector<fs::path> bundles;
    for (const auto& entry : fs::directory_iterator(root, ec)) {
        if (!entry.is_directory()) continue;
        if (fs::is_regular_file(entry.path() / "AndroidManifest.xml", ec)) {
            bundles.push_back(entry.path());
        }
    }
    std::sort(bundles.begin(), bundles.end(), [](const fs::path& a, const fs::path& b) {
        return a.filename().string() < b.filename().string();
    });
    return bundles;
}

}  // namespace droidsmell
