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

#include <stdexcept>
#include <string>

namespace droidsmell {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem access failed; the message carries the offending path.
struct IoError : Error {
    using Error::Error;
};

/// A bundle directory has no AndroidManifest.xml (or it is empty).
struct MissingManifestError : Error {
    using Error::Error;
};

/// metadata.json (or a metadata CSV row) parsed but violates the
/// metadata invariants, or is not parseable at all.
struct MalformedMetadataError : Error {
    using Error::Error;
};

/// Manifest text is not well-formed XML (or is a binary AXML blob).
struct XmlSyntaxError : Error {
    int line;
    int column;
    XmlSyntaxError(const std::string& msg, int line_, int column_)
        : Error("line " + std::to_string(line_) + ", column "
                + std::to_string(column_) + ": " + msg),
          line(line_),
          column(column_) {}
};

/// The <manifest> root element has no (non-empty) package attribute.
struct MissingPackageAttributeError : Error {
    using Error::Error;
};

struct DuplicateRuleIdError : Error {
    using Error::Error;
};

struct EmptyCorpusError : Error {
    using Error::Error;
};

struct UnknownDimensionError : Error {
    using Error::Error;
};

}  // namespace droidsmell
