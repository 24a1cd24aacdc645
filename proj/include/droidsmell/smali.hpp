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
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "droidsmell/diagnostics.hpp"

namespace droidsmell {

/// A `Lpkg/Cls;->name(args)ret` reference as it appears on an invoke line.
/// Concatenating class_name + "->" + method_name + descriptor reproduces
/// the verbatim reference text.
struct MethodRef {
    std::string class_name;   // binary class name, e.g. Lcom/a/B;
    std::string method_name;  // may be <init> / <clinit>
    std::string descriptor;   // "(...)Ret" including the return type

    friend bool operator==(const MethodRef&, const MethodRef&) = default;
};

/// One body line. Only the instruction families the rules query are
/// structurally decoded; everything else keeps mnemonic + raw text.
struct Instruction {
    int line = 0;                              // physical 1-based file line
    std::string mnemonic;                      // first token of the line
    std::string raw_text;                      // whole line, trimmed
    std::optional<std::string> string_literal; // const-string / const-string/jumbo, unescaped
    std::optional<MethodRef> method_ref;       // any invoke-*
    std::optional<std::int64_t> const_value;   // const/4, const/16, const

    friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct SmaliMethod {
    std::string name;
    std::string descriptor;
    std::set<std::string> access_flags;
    std::vector<Instruction> instructions;
    int line_of_declaration = 0;

    friend bool operator==(const SmaliMethod&, const SmaliMethod&) = default;
};

struct SmaliClass {
    std::string name;        // L...;
    std::string super_name;  // L...;
    std::set<std::string> interfaces;
    std::vector<SmaliMethod> methods;
    std::string source_path;

    friend bool operator==(const SmaliClass&, const SmaliClass&) = default;
};

struct SmaliParseResult {
    std::optional<SmaliClass> parsed;  // absent when no usable .class directive
    std::vector<Diagnostic> diagnostics;
};

/// Parses one smali file. Never throws: malformed directives become
/// diagnostics and parsing resynchronizes at the next .method or .class.
SmaliParseResult parse_smali_file(std::string_view text, const std::string& source_path);

struct InvokeSite {
    std::string source_path;
    int line = 0;
    std::string enclosing_class;
    std::string enclosing_method;  // "name" + descriptor
    std::string text;              // trimmed invoke line (evidence)
};

struct StringLiteralSite {
    std::string value;
    std::string source_path;
    int line = 0;
    std::string enclosing_class;
    std::string enclosing_method;
};

/// Corpus-wide query substrate. Deterministic: all lists are ordered by
/// (source_path, line); maps are ordered by key.
struct CodeIndex {
    std::map<std::string, SmaliClass> classes_by_name;
    std::map<std::pair<std::string, std::string>, std::vector<InvokeSite>> invokes;
    std::vector<StringLiteralSite> string_literals;
    std::map<std::string, std::set<std::string>> implementors;  // direct only
    std::vector<Diagnostic> diagnostics;

    const std::vector<InvokeSite>* find_invokes(const std::string& class_name,
                                                const std::string& method_name) const;
    /// All invoke sites whose target class matches, any method name.
    std::vector<const InvokeSite*> invokes_on_class(const std::string& class_name) const;
    /// All invoke sites whose target method name matches, any class.
    std::vector<const InvokeSite*> invokes_named(const std::string& method_name) const;
    /// Whether `class_name`'s super chain (within the index) reaches `ancestor`.
    bool derives_from(const std::string& class_name, const std::string& ancestor) const;
};

/// Merges parsed classes into one index. Two files declaring the same class
/// produce a DuplicateClass diagnostic; the first (by input order) wins.
CodeIndex build_index(std::span<const SmaliClass> classes);

/// True when the body cannot perform or delegate validation: no invoke, no
/// throw, and every return is void, a constant set in the body, or a
/// parameter register.
bool trivial_body(const SmaliMethod& method);

/// Register list of an invoke line ({v0 .. v5} ranges are expanded).
std::vector<std::string> invoke_registers(const Instruction& invoke);

/// Register holding argument `param_index` (0-based, receiver excluded)
/// of an invoke, accounting for wide (J/D) parameter slots.
std::optional<std::string> invoke_arg_register(const Instruction& invoke, int param_index);

/// Nearest-preceding-constant resolution within one method body: the value
/// register `reg` holds just before instruction `upto_index`, provided the
/// last write to it was a decoded const; unknown otherwise.
std::optional<std::int64_t> resolve_const_int(const SmaliMethod& method, std::size_t upto_index,
                                              std::string_view reg);
std::optional<std::string> resolve_const_string(const SmaliMethod& method, std::size_t upto_index,
                                                std::string_view reg);

/// Unescapes the body of a smali string literal (\" \' \\ \n \r \t \b \f
/// \uXXXX; surrogate pairs combined, lone surrogates become U+FFFD).
std::string unescape_string_literal(std::string_view escaped);

}  // namespace droidsmell
