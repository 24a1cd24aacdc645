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

#include <string>
#include <string_view>
#include <vector>

namespace droidsmell::xml {

// Minimal DOM for decoded (plain-text) Android manifests. Attribute and
// element names keep their namespace prefix split off so callers can match
// by local name. Text content, comments, and processing instructions are
// discarded; element/attribute source positions are kept for diagnostics.

struct Attr {
    std::string prefix;  // "" when unprefixed
    std::string local;
    std::string value;   // entity-decoded
    int line = 0;
    int column = 0;
};

struct Element {
    std::string prefix;
    std::string local;
    std::vector<Attr> attributes;
    std::vector<Element> children;
    int line = 0;
    int column = 0;

    /// First attribute whose local name matches, regardless of prefix.
    const Attr* attr_local(std::string_view local_name) const;
    /// Direct children whose local name matches.
    std::vector<const Element*> children_local(std::string_view local_name) const;
};

/// Parses one XML document and returns its root element.
/// Throws XmlSyntaxError (with 1-based line/column) on malformed input,
/// including binary AXML input.
Element parse_document(std::string_view text);

}  // namespace droidsmell::xml
