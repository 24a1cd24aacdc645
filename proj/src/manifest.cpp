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

#include "droidsmell/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include <json.hpp>

#include "droidsmell/errors.hpp"
#include "droidsmell/xml.hpp"

namespace droidsmell {

namespace {

constexpr const char* kManifestPath = "AndroidManifest.xml";

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Attributes are matched by local name; anything but the android: prefix
// on a consumed attribute gets a diagnostic (decoded manifests vary).
const xml::Attr* consumed_attr(const xml::Element& el, std::string_view local,
                               std::vector<Diagnostic>& diags) {
    const xml::Attr* attr = el.attr_local(local);
    if (attr && attr->prefix != "android") {
        diags.push_back({kManifestPath, attr->line,
                         "attribute '" + std::string(local) + "' has nonstandard prefix '"
                                 + attr->prefix + "'"});
    }
    return attr;
}

TriBool tri_from(const xml::Attr* attr, std::vector<Diagnostic>& diags) {
    if (!attr) return TriBool::Absent;
    if (attr->value == "true") return TriBool::True;
    if (attr->value == "false") return TriBool::False;
    // Resource references and typos stay verbatim and never match a rule.
    diags.push_back({kManifestPath, attr->line,
                     "boolean attribute has non-literal value '" + attr->value + "'"});
    return TriBool::Absent;
}

std::optional<int> sdk_from(const xml::Attr* attr, std::vector<Diagnostic>& diags) {
    if (!attr) return std::nullopt;
    int value = 0;
    const char* begin = attr->value.data();
    const char* end = begin + attr->value.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || value < 1) {
        diags.push_back({kManifestPath, attr->line,
                         "SDK level '" + attr->value + "' is not a positive integer; ignored"});
        return std::nullopt;
    }
    return value;
}

IntentFilter parse_intent_filter(const xml::Element& el, std::vector<Diagnostic>& diags) {
    IntentFilter filter;
    for (const auto* action : el.children_local("action")) {
        if (const auto* name = consumed_attr(*action, "name", diags)) {
            filter.actions.insert(name->value);
        }
    }
    for (const auto* category : el.children_local("category")) {
        if (const auto* name = consumed_attr(*category, "name", diags)) {
            filter.categories.insert(name->value);
        }
    }
    for (const auto* data : el.children_local("data")) {
        if (const auto* scheme = consumed_attr(*data, "scheme", diags)) {
            filter.data_schemes.insert(lowercase(scheme->value));
        }
    }
    return filter;
}

std::optional<ComponentKind> kind_from_name(const std::string& local) {
    if (local == "activity") return ComponentKind::Activity;
    if (local == "service") return ComponentKind::Service;
    if (local == "receiver") return ComponentKind::Receiver;
    if (local == "provider") return ComponentKind::Provider;
    return std::nullopt;
}

Component parse_component(const xml::Element& el, ComponentKind kind,
                          std::vector<Diagnostic>& diags) {
    Component component;
    component.kind = kind;
    if (const auto* name = consumed_attr(el, "name", diags)) component.name = name->value;
    component.exported_attr = tri_from(consumed_attr(el, "exported", diags), diags);
    if (const auto* permission = consumed_attr(el, "permission", diags)) {
        component.permission_attr = permission->value;
    }
    for (const auto* filter : el.children_local("intent-filter")) {
        component.intent_filters.push_back(parse_intent_filter(*filter, diags));
    }
    return component;
}

}  // namespace

std::string to_string(ComponentKind kind) {
    switch (kind) {
        case ComponentKind::Activity: return "activity";
        case ComponentKind::Service: return "service";
        case ComponentKind::Receiver: return "receiver";
        case ComponentKind::Provider: return "provider";
    }
    return "activity";
}

Manifest parse_manifest(const std::string& xml_text) {
    xml::Element root = xml::parse_document(xml_text);
    if (root.local != "manifest") {
        throw XmlSyntaxError("root element is <" + root.local + ">, expected <manifest>",
                             root.line, root.column);
    }

    Manifest manifest;
    const xml::Attr* package = root.attr_local("package");
    if (!package || package->value.empty()) {
        throw MissingPackageAttributeError("<manifest> lacks a package attribute");
    }
    manifest.package = package->value;

    if (const auto* uses_sdk = [&]() -> const xml::Element* {
            auto all = root.children_local("uses-sdk");
            for (std::size_t i = 1; i < all.size(); ++i) {
                manifest.diagnostics.push_back(
                        {kManifestPath, all[i]->line, "extra <uses-sdk> element ignored"});
            }
            return all.empty() ? nullptr : all.front();
        }()) {
        manifest.min_sdk = sdk_from(consumed_attr(*uses_sdk, "minSdkVersion", manifest.diagnostics),
                                    manifest.diagnostics);
        manifest.target_sdk =
                sdk_from(consumed_attr(*uses_sdk, "targetSdkVersion", manifest.diagnostics),
                         manifest.diagnostics);
        if (manifest.min_sdk && manifest.target_sdk && *manifest.min_sdk > *manifest.target_sdk) {
            manifest.diagnostics.push_back(
                    {kManifestPath, uses_sdk->line,
                     "minSdkVersion " + std::to_string(*manifest.min_sdk)
                             + " exceeds targetSdkVersion " + std::to_string(*manifest.target_sdk)});
        }
    }

    for (const auto* uses_permission : root.children_local("uses-permission")) {
        if (const auto* name = consumed_attr(*uses_permission, "name", manifest.diagnostics)) {
            manifest.uses_permissions.insert(name->value);
        }
    }

    for (const auto* application : root.children_local("application")) {
        manifest.debuggable =
                tri_from(consumed_attr(*application, "debuggable", manifest.diagnostics),
                         manifest.diagnostics);
        for (const auto& child : application->children) {
            if (auto kind = kind_from_name(child.local)) {
                manifest.components.push_back(
                        parse_component(child, *kind, manifest.diagnostics));
            }
        }
        break;  // a manifest has a single <application>
    }

    return manifest;
}

bool effective_exported(const Component& component, std::optional<int> target_sdk) {
    if (component.exported_attr == TriBool::True) return true;
    if (component.exported_attr == TriBool::False) return false;
    if (!component.intent_filters.empty()) return true;
    if (component.kind == ComponentKind::Provider) {
        return target_sdk.has_value() && *target_sdk <= 16;
    }
    return false;
}

namespace {

using nlohmann::json;

const char* tri_name(TriBool value) {
    switch (value) {
        case TriBool::True: return "true";
        case TriBool::False: return "false";
        case TriBool::Absent: return "absent";
    }
    return "absent";
}

TriBool tri_parse(const std::string& text) {
    if (text == "true") return TriBool::True;
    if (text == "false") return TriBool::False;
    return TriBool::Absent;
}

}  // namespace

std::string manifest_to_json(const Manifest& manifest) {
    json j;
    j["package"] = manifest.package;
    j["min_sdk"] = manifest.min_sdk ? json(*manifest.min_sdk) : json(nullptr);
    j["target_sdk"] = manifest.target_sdk ? json(*manifest.target_sdk) : json(nullptr);
    j["uses_permissions"] = manifest.uses_permissions;
    j["debuggable"] = tri_name(manifest.debuggable);
    j["components"] = json::array();
    for (const auto& component : manifest.components) {
        json c;
        c["kind"] = to_string(component.kind);
        c["name"] = component.name;
        c["exported"] = tri_name(component.exported_attr);
        c["permission"] =
                component.permission_attr ? json(*component.permission_attr) : json(nullptr);
        c["intent_filters"] = json::array();
        for (const auto& filter : component.intent_filters) {
            c["intent_filters"].push_back({{"actions", filter.actions},
                                           {"categories", filter.categories},
                                           {"data_schemes", filter.data_schemes}});
        }
        j["components"].push_back(std::move(c));
    }
    j["diagnostics"] = json::array();
    for (const auto& diag : manifest.diagnostics) {
        j["diagnostics"].push_back(
                {{"path", diag.path}, {"line", diag.line}, {"message", diag.message}});
    }
    return j.dump(2) + "\n";
}

Manifest manifest_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    Manifest manifest;
    manifest.package = j.at("package").get<std::string>();
    if (!j.at("min_sdk").is_null()) manifest.min_sdk = j["min_sdk"].get<int>();
    if (!j.at("target_sdk").is_null()) manifest.target_sdk = j["target_sdk"].get<int>();
    manifest.uses_permissions = j.at("uses_permissions").get<std::set<std::string>>();
    manifest.debuggable = tri_parse(j.at("debuggable").get<std::string>());
    for (const auto& c : j.at("components")) {
        Component component;
        std::string kind = c.at("kind").get<std::string>();
        if (kind == "service") component.kind = ComponentKind::Service;
        else if (kind == "receiver") component.kind = ComponentKind::Receiver;
        else if (kind == "provider") component.kind = ComponentKind::Provider;
        else component.kind = ComponentKind::Activity;
        component.name = c.at("name").get<std::string>();
        component.exported_attr = tri_parse(c.at("exported").get<std::string>());
        if (!c.at("permission").is_null()) {
            component.permission_attr = c["permission"].get<std::string>();
        }
        for (const auto& f : c.at("intent_filters")) {
            IntentFilter filter;
            filter.actions = f.at("actions").get<std::set<std::string>>();
            filter.categories = f.at("categories").get<std::set<std::string>>();
            filter.data_schemes = f.at("data_schemes").get<std::set<std::string>>();
            component.intent_filters.push_back(std::move(filter));
        }
        manifest.components.push_back(std::move(component));
    }
    for (const auto& d : j.at("diagnostics")) {
        manifest.diagnostics.push_back({d.at("path").get<std::string>(), d.at("line").get<int>(),
                                        d.at("message").get<std::string>()});
    }
    return manifest;
}

}  // namespace droidsmell
