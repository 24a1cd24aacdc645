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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "droidsmell/analytics.hpp"
#include "droidsmell/errors.hpp"
#include "droidsmell/manifest.hpp"

namespace py = pybind11;

namespace {

std::map<std::string, droidsmell::AppMetadata> metadata_from(const std::string& csv_path) {
    if (csv_path.empty()) return {};
    return droidsmell::load_metadata_csv(csv_path);
}

std::string scan_json(const std::string& path, const std::string& ruleset,
                      const std::vector<std::string>& exclude_prefixes,
                      const std::string& metadata_csv) {
    droidsmell::ScanOptions options{ruleset, exclude_prefixes};
    py::gil_scoped_release release;
    return droidsmell::render_json(
            droidsmell::scan_bundle(path, options, metadata_from(metadata_csv)));
}

std::string scan_corpus_json(const std::string& root, const std::string& ruleset,
                             const std::vector<std::string>& exclude_prefixes, int jobs,
                             const std::string& metadata_csv) {
    droidsmell::ScanOptions options{ruleset, exclude_prefixes};
    py::gil_scoped_release release;
    droidsmell::CorpusScanResult result =
            droidsmell::scan_corpus(root, options, jobs, metadata_from(metadata_csv));
    nlohmann::json j;
    j["reports"] = nlohmann::json::array();
    for (const auto& report : result.reports) {
        j["reports"].push_back(nlohmann::json::parse(droidsmell::render_json(report)));
    }
    j["errors"] = nlohmann::json::array();
    for (const auto& error : result.errors) {
        j["errors"].push_back({{"bundle_id", error.bundle_id}, {"message", error.message}});
    }
    return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::string stats_csv(const std::string& report_dir, const std::string& dimension,
                      const std::string& metadata_csv) {
    py::gil_scoped_release release;
    auto reports = droidsmell::load_reports_dir(report_dir);
    return droidsmell::export_csv(droidsmell::aggregate(reports, metadata_from(metadata_csv)),
                                  dimension);
}

std::string rules_json(const std::string& ruleset) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& rule : droidsmell::get_ruleset(ruleset)) {
        j.push_back({{"id", rule.id},
                     {"smell_name", rule.smell_name},
                     {"category", rule.category},
                     {"severity", droidsmell::to_string(rule.severity)},
                     {"description", rule.description},
                     {"risk", rule.risk},
                     {"mitigation", rule.mitigation}});
    }
    return j.dump(2);
}

std::string parse_manifest_json(const std::string& xml_text) {
    return droidsmell::manifest_to_json(droidsmell::parse_manifest(xml_text));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Security code smell scanner for decoded Android app bundles";

    m.def("scan_json", &scan_json, py::arg("path"), py::arg("ruleset") = "all",
          py::arg("exclude_prefixes") = std::vector<std::string>{},
          py::arg("metadata_csv") = "",
          "Scan one decoded bundle directory; returns the report as JSON text.");
    m.def("scan_corpus_json", &scan_corpus_json, py::arg("root"), py::arg("ruleset") = "all",
          py::arg("exclude_prefixes") = std::vector<std::string>{}, py::arg("jobs") = 1,
          py::arg("metadata_csv") = "",
          "Scan every bundle under a corpus root; returns reports and errors as JSON text.");
    m.def("stats_csv", &stats_csv, py::arg("report_dir"), py::arg("dimension"),
          py::arg("metadata_csv") = "",
          "Aggregate a batch report directory into one CSV dimension.");
    m.def("rules_json", &rules_json, py::arg("ruleset") = "all",
          "Rule catalog (id, category, severity, description, risk, mitigation) as JSON text.");
    m.def("parse_manifest_json", &parse_manifest_json, py::arg("xml_text"),
          "Parse decoded manifest XML into its typed-model JSON summary.");

    py::register_exception<droidsmell::Error>(m, "DroidsmellError", PyExc_RuntimeError);

#ifdef DROIDSMELL_VERSION
    m.attr("__version__") = DROIDSMELL_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
