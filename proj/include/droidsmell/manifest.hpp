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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "droidsmell/diagnostics.hpp"

namespace droidsmell {

/// A boolean manifest attribute that may simply not be there.
enum class TriBool { True, False, Absent };

enum class ComponentKind { Activity, Service, Receiver, Provider };

std::string to_string(ComponentKind kind);

struct IntentFilter {
    std::set<std::string> actions;
    std::set<std::string> categories;
    std::set<std::string> data_schemes;  // lower-cased on parse

    friend bool operator==(const IntentFilter&, const IntentFilter&) = default;
};

struct Component {
    ComponentKind kind = ComponentKind::Activity;
    std::string name;
    TriBool exported_attr = TriBool::Absent;
    std::optional<std::string> permission_attr;
    std::vector<IntentFilter> intent_filters;

    friend bool operator==(const Component&, const Component&) = default;
};

/// Typed view of the decoded AndroidManifest.xml, limited to the facts the
/// rules consume. Unknown elements and attributes are ignored on parse.
struct Manifest {
    std::string package;
    std::optional<int> min_sdk;
    std::optional<int> target_sdk;
    std::set<std::string> uses_permissions;
    TriBool debuggable = TriBool::Absent;
    std::vector<Component> components;
    std::vector<Diagnostic> diagnostics;

    friend bool operator==(const Manifest&, const Manifest&) = default;
};

/// Parses decoded manifest XML. Throws XmlSyntaxError on malformed or
/// binary (AXML) input and MissingPackageAttributeError when the root
/// lacks a package attribute. Total otherwise: unknown content is skipped,
/// suspicious values become diagnostics.
Manifest parse_manifest(const std::string& xml_text);

/// Platform default-export rule: an explicit android:exported wins; a
/// component with at least one intent filter is exported; a provider with
/// neither is exported only when target_sdk <= 16; everything else is not.
bool effective_exported(const Component& component, std::optional<int> target_sdk);

/// Canonical JSON summary of the typed model (round-trips losslessly).
std::string manifest_to_json(const Manifest& manifest);
Manifest manifest_from_json(const std::string& json_text);

}  // namespace droidsmell
