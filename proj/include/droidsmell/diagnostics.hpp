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

#include <compare>
#include <string>

namespace droidsmell {

/// One non-fatal problem found while loading or parsing, tied to a file
/// location. `line` is 1-based; 0 means the whole file.
struct Diagnostic {
    std::string path;
    int line = 0;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
    friend auto operator<=>(const Diagnostic&, const Diagnostic&) = default;
};

}  // namespace droidsmell
