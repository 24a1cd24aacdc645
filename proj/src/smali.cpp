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

#include "droidsmell/smali.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace droidsmell {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

bool is_class_name(std::string_view s) {
    return s.size() >= 3 && s.front() == 'L' && s.back() == ';'
           && s.find(';') == s.size() - 1;
}

// Balanced "(params)ReturnType" with a non-empty return type.
bool is_descriptor(std::string_view s) {
    if (s.empty() || s.front() != '(') return false;
    auto close = s.find(')');
    if (close == std::string_view::npos || close + 1 >= s.size()) return false;
    return s.find('(', 1) == std::string_view::npos;
}

bool is_register(std::string_view s) {
    if (s.size() < 2 || (s[0] != 'v' && s[0] != 'p')) return false;
    return std::all_of(s.begin() + 1, s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp <= 0x7F) {
        out.push_back(static_cast<char>(cp));
    } else if (cp <= 0x7FF) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp <= 0xFFFF) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::optional<std::uint32_t> hex4(std::string_view s) {
    if (s.size() < 4) return std::nullopt;
    std::uint32_t value = 0;
    for (int i = 0; i < 4; ++i) {
        char c = s[static_cast<std::size_t>(i)];
        std::uint32_t digit;
        if (c >= '0' && c <= '9') digit = static_cast<std::uint32_t>(c - '0');
        else if (c >= 'a' && c <= 'f') digit = static_cast<std::uint32_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') digit = static_cast<std::uint32_t>(c - 'A' + 10);
        else return std::nullopt;
        value = value * 16 + digit;
    }
    return value;
}

// Quoted-literal body starting after the opening '"': returns the span up
// to the closing unescaped quote, or nullopt when unterminated.
std::optional<std::string_view> quoted_span(std::string_view rest) {
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (rest[i] == '\\') {
            ++i;
        } else if (rest[i] == '"') {
            return rest.substr(0, i);
        }
    }
    return std::nullopt;
}

std::optional<MethodRef> parse_method_ref(std::string_view text) {
    auto arrow = text.find("->");
    if (arrow == std::string_view::npos) return std::nullopt;
    auto paren = text.find('(', arrow);
    if (paren == std::string_view::npos) return std::nullopt;
    MethodRef ref;
    ref.class_name = std::string(text.substr(0, arrow));
    ref.method_name = std::string(text.substr(arrow + 2, paren - arrow - 2));
    ref.descriptor = std::string(text.substr(paren));
    if (ref.class_name.empty() || ref.method_name.empty() || !is_descriptor(ref.descriptor)) {
        return std::nullopt;
    }
    return ref;
}

// Mnemonics whose first operand is not a destination register.
bool writes_first_register(std::string_view mnemonic) {
    static constexpr std::string_view non_writing[] = {
            "invoke-", "return", "throw", "goto", "if-", "iput", "sput", "aput",
            "monitor-", "packed-switch", "sparse-switch", "fill-array-data",
            "filled-new-array", "check-cast", "nop",
    };
    for (auto prefix : non_writing) {
        if (mnemonic.substr(0, prefix.size()) == prefix) return false;
    }
    return true;
}

// Destination register of an instruction, when it has one.
std::optional<std::string_view> written_register(const Instruction& ins) {
    if (ins.mnemonic.empty() || ins.mnemonic[0] == '.' || ins.mnemonic[0] == ':') {
        return std::nullopt;
    }
    if (!writes_first_register(ins.mnemonic)) return std::nullopt;
    std::string_view rest = trim(std::string_view(ins.raw_text).substr(ins.mnemonic.size()));
    if (rest.empty() || rest[0] == '{') return std::nullopt;
    auto end = rest.find_first_of(", \t");
    std::string_view reg = rest.substr(0, end);
    if (!is_register(reg)) return std::nullopt;
    return reg;
}

}  // namespace

std::string unescape_string_literal(std::string_view escaped) {
    std::string out;
    out.reserve(escaped.size());
    std::optional<std::uint32_t> pending_high;  // first half of a surrogate pair

    auto flush_pending = [&] {
        if (pending_high) {
            append_utf8(out, 0xFFFD);  // lone high surrogate
            pending_high.reset();
        }
    };

    for (std::size_t i = 0; i < escaped.size(); ++i) {
        char c = escaped[i];
        if (c != '\\' || i + 1 >= escaped.size()) {
            flush_pending();
            out.push_back(c);
            continue;
        }
        char esc = escaped[++i];
        if (esc == 'u') {
            auto cp = hex4(escaped.substr(i + 1));
            if (!cp) {
                flush_pending();
                out.push_back('u');
                continue;
            }
            i += 4;
            if (pending_high) {
                if (*cp >= 0xDC00 && *cp <= 0xDFFF) {
                    std::uint32_t combined =
                            0x10000 + ((*pending_high - 0xD800) << 10) + (*cp - 0xDC00);
                    pending_high.reset();
                    append_utf8(out, combined);
                    continue;
                }
                flush_pending();
            }
            if (*cp >= 0xD800 && *cp <= 0xDBFF) {
                pending_high = *cp;
            } else if (*cp >= 0xDC00 && *cp <= 0xDFFF) {
                append_utf8(out, 0xFFFD);  // lone low surrogate
            } else {
                append_utf8(out, *cp);
            }
            continue;
        }
        flush_pending();
        switch (esc) {
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            case 't': out.push_back('\t'); break;
            case 'b': out.push_back('\b'); break;
            case 'f': out.push_back('\f'); break;
            case '\\': out.push_back('\\'); break;
            case '\'': out.push_back('\''); break;
            case '"': out.push_back('"'); break;
            default: out.push_back(esc); break;  // lenient: keep unknown escapes
        }
    }
    flush_pending();
    return out;
}

namespace {

Instruction parse_instruction(std::string_view trimmed, int line,
                              const std::string& source_path,
                              std::vector<Diagnostic>& diags) {
    Instruction ins;
    ins.line = line;
    ins.raw_text = std::string(trimmed);
    auto ws = trimmed.find_first_of(" \t");
    ins.mnemonic = std::string(trimmed.substr(0, ws));

    if (ins.mnemonic.rfind("invoke-", 0) == 0) {
        auto brace = trimmed.find('}');
        auto comma = brace == std::string_view::npos ? brace : trimmed.find(',', brace);
        if (comma != std::string_view::npos) {
            auto ref = parse_method_ref(trim(trimmed.substr(comma + 1)));
            if (ref) {
                ins.method_ref = std::move(ref);
            } else {
                diags.push_back({source_path, line, "unparsable invoke reference"});
            }
        } else {
            diags.push_back({source_path, line, "invoke line without register list"});
        }
    } else if (ins.mnemonic == "const-string" || ins.mnemonic == "const-string/jumbo") {
        auto quote = trimmed.find('"');
        if (quote == std::string_view::npos) {
            diags.push_back({source_path, line, "const-string without literal"});
        } else {
            auto span = quoted_span(trimmed.substr(quote + 1));
            if (!span) {
                diags.push_back({source_path, line, "unterminated string literal"});
            } else {
                ins.string_literal = unescape_string_literal(*span);
            }
        }
    } else if (ins.mnemonic == "const/4" || ins.mnemonic == "const/16"
               || ins.mnemonic == "const") {
        auto comma = trimmed.rfind(',');
        if (comma != std::string_view::npos) {
            std::string_view value_text = trim(trimmed.substr(comma + 1));
            bool negative = !value_text.empty() && value_text.front() == '-';
            if (negative) value_text.remove_prefix(1);
            int base = 10;
            if (value_text.rfind("0x", 0) == 0 || value_text.rfind("0X", 0) == 0) {
                base = 16;
                value_text.remove_prefix(2);
            }
            std::int64_t value = 0;
            auto [ptr, ec] = std::from_chars(value_text.data(),
                                             value_text.data() + value_text.size(), value, base);
            if (ec == std::errc{} && ptr == value_text.data() + value_text.size()) {
                ins.const_value = negative ? -value : value;
            } else {
                diags.push_back({source_path, line, "unparsable const operand"});
            }
        }
    }
    return ins;
}

struct MethodSignature {
    std::set<std::string> flags;
    std::string name;
    std::string descriptor;
};

std::optional<MethodSignature> parse_method_signature(std::string_view trimmed) {
    auto tokens = split_ws(trimmed);
    if (tokens.size() < 2) return std::nullopt;  // ".method" plus name token
    std::string_view name_token = tokens.back();
    auto paren = name_token.find('(');
    if (paren == std::string_view::npos || paren == 0) return std::nullopt;
    MethodSignature sig;
    sig.name = std::string(name_token.substr(0, paren));
    sig.descriptor = std::string(name_token.substr(paren));
    if (!is_descriptor(sig.descriptor)) return std::nullopt;
    for (std::size_t i = 1; i + 1 < tokens.size(); ++i) {
        sig.flags.insert(std::string(tokens[i]));
    }
    return sig;
}

}  // namespace

SmaliParseResult parse_smali_file(std::string_view text, const std::string& source_path) {
    SmaliParseResult result;
    SmaliClass cls;
    cls.source_path = source_path;
    cls.super_name = "Ljava/lang/Object;";
    bool have_class = false;

    enum class State { Preamble, InMethod, SkippingBadMethod };
    State state = State::Preamble;
    SmaliMethod current;

    auto finish_method = [&] {
        cls.methods.push_back(std::move(current));
        current = SmaliMethod{};
        state = State::Preamble;
    };

    auto handle_class_directive = [&](std::string_view trimmed, int line) {
        auto tokens = split_ws(trimmed);
        if (tokens.size() < 2 || !is_class_name(tokens.back())) {
            result.diagnostics.push_back({source_path, line, "malformed .class directive"});
            return;
        }
        if (have_class) {
            result.diagnostics.push_back(
                    {source_path, line, "extra .class directive ignored (first wins)"});
            return;
        }
        cls.name = std::string(tokens.back());
        have_class = true;
    };

    auto begin_method = [&](std::string_view trimmed, int line) {
        auto sig = parse_method_signature(trimmed);
        if (!sig) {
            result.diagnostics.push_back({source_path, line,
                                          "malformed .method directive; skipping to next block"});
            state = State::SkippingBadMethod;
            return;
        }
        current = SmaliMethod{};
        current.name = std::move(sig->name);
        current.descriptor = std::move(sig->descriptor);
        current.access_flags = std::move(sig->flags);
        current.line_of_declaration = line;
        state = State::InMethod;
    };

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        std::string_view raw_line = eol == std::string_view::npos
                                            ? text.substr(pos)
                                            : text.substr(pos, eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        std::string_view trimmed = trim(raw_line);
        if (trimmed.empty() || trimmed[0] == '#') continue;

        switch (state) {
            case State::Preamble:
                if (trimmed.rfind(".class", 0) == 0) {
                    handle_class_directive(trimmed, line_no);
                } else if (trimmed.rfind(".super", 0) == 0) {
                    auto tokens = split_ws(trimmed);
                    if (tokens.size() >= 2 && is_class_name(tokens.back())) {
                        cls.super_name = std::string(tokens.back());
                    } else {
                        result.diagnostics.push_back(
                                {source_path, line_no, "malformed .super directive"});
                    }
                } else if (trimmed.rfind(".implements", 0) == 0) {
                    auto tokens = split_ws(trimmed);
                    if (tokens.size() >= 2 && is_class_name(tokens.back())) {
                        cls.interfaces.insert(std::string(tokens.back()));
                    } else {
                        result.diagnostics.push_back(
                                {source_path, line_no, "malformed .implements directive"});
                    }
                } else if (trimmed.rfind(".method", 0) == 0) {
                    begin_method(trimmed, line_no);
                }
                // fields, .source, annotations etc. are preserved opaquely by
                // not being modeled at all outside method bodies
                break;

            case State::InMethod:
                if (trimmed == ".end method") {
                    finish_method();
                } else if (trimmed.rfind(".method", 0) == 0) {
                    result.diagnostics.push_back(
                            {source_path, line_no, "missing .end method; starting new method"});
                    finish_method();
                    begin_method(trimmed, line_no);
                } else if (trimmed.rfind(".class", 0) == 0) {
                    result.diagnostics.push_back(
                            {source_path, line_no, "missing .end method before .class"});
                    finish_method();
                    handle_class_directive(trimmed, line_no);
                } else {
                    current.instructions.push_back(
                            parse_instruction(trimmed, line_no, source_path, result.diagnostics));
                }
                break;

            case State::SkippingBadMethod:
                if (trimmed == ".end method") {
                    state = State::Preamble;
                } else if (trimmed.rfind(".method", 0) == 0) {
                    begin_method(trimmed, line_no);
                } else if (trimmed.rfind(".class", 0) == 0) {
                    state = State::Preamble;
                    handle_class_directive(trimmed, line_no);
                }
                break;
        }
    }

    if (state == State::InMethod) {
        result.diagnostics.push_back(
                {source_path, line_no, "file ends inside a method body"});
        finish_method();
    }

    if (!have_class) {
        result.diagnostics.push_back({source_path, 0, "no usable .class directive in file"});
        return result;
    }
    result.parsed = std::move(cls);
    return result;
}

const std::vector<InvokeSite>* CodeIndex::find_invokes(const std::string& class_name,
                                                       const std::string& method_name) const {
    auto it = invokes.find({class_name, method_name});
    return it == invokes.end() ? nullptr : &it->second;
}

std::vector<const InvokeSite*> CodeIndex::invokes_on_class(const std::string& class_name) const {
    std::vector<const InvokeSite*> out;
    for (auto it = invokes.lower_bound({class_name, std::string()});
         it != invokes.end() && it->first.first == class_name; ++it) {
        for (const auto& site : it->second) out.push_back(&site);
    }
    std::sort(out.begin(), out.end(), [](const InvokeSite* a, const InvokeSite* b) {
        return std::tie(a->source_path, a->line) < std::tie(b->source_path, b->line);
    });
    return out;
}

std::vector<const InvokeSite*> CodeIndex::invokes_named(const std::string& method_name) const {
    std::vector<const InvokeSite*> out;
    for (const auto& [key, sites] : invokes) {
        if (key.second != method_name) continue;
        for (const auto& site : sites) out.push_back(&site);
    }
    std::sort(out.begin(), out.end(), [](const InvokeSite* a, const InvokeSite* b) {
        return std::tie(a->source_path, a->line) < std::tie(b->source_path, b->line);
    });
    return out;
}

bool CodeIndex::derives_from(const std::string& class_name, const std::string& ancestor) const {
    std::set<std::string> seen;
    auto it = classes_by_name.find(class_name);
    while (it != classes_by_name.end()) {
        const std::string& super = it->second.super_name;
        if (super == ancestor) return true;
        if (!seen.insert(super).second) return false;  // inheritance cycle in input
        it = classes_by_name.find(super);
    }
    return false;
}

CodeIndex build_index(std::span<const SmaliClass> classes) {
    CodeIndex index;
    for (const auto& cls : classes) {
        auto [it, inserted] = index.classes_by_name.emplace(cls.name, cls);
        if (!inserted) {
            index.diagnostics.push_back(
                    {cls.source_path, 0,
                     "DuplicateClass: " + cls.name + " already declared in "
                             + it->second.source_path + " (first wins)"});
            continue;
        }
        for (const auto& iface : cls.interfaces) {
            index.implementors[iface].insert(cls.name);
        }
        for (const auto& method : cls.methods) {
            for (const auto& ins : method.instructions) {
                if (ins.method_ref) {
                    index.invokes[{ins.method_ref->class_name, ins.method_ref->method_name}]
                            .push_back({cls.source_path, ins.line, cls.name,
                                        method.name + method.descriptor, ins.raw_text});
                }
                if (ins.string_literal) {
                    index.string_literals.push_back({*ins.string_literal, cls.source_path,
                                                     ins.line, cls.name,
                                                     method.name + method.descriptor});
                }
            }
        }
    }
    for (auto& [key, sites] : index.invokes) {
        std::sort(sites.begin(), sites.end(), [](const InvokeSite& a, const InvokeSite& b) {
            return std::tie(a.source_path, a.line) < std::tie(b.source_path, b.line);
        });
    }
    std::sort(index.string_literals.begin(), index.string_literals.end(),
              [](const StringLiteralSite& a, const StringLiteralSite& b) {
                  return std::tie(a.source_path, a.line) < std::tie(b.source_path, b.line);
              });
    return index;
}

std::vector<std::string> invoke_registers(const Instruction& invoke) {
    std::vector<std::string> registers;
    std::string_view raw(invoke.raw_text);
    auto open = raw.find('{');
    auto close = raw.find('}', open == std::string_view::npos ? 0 : open);
    if (open == std::string_view::npos || close == std::string_view::npos) return registers;
    std::string_view list = raw.substr(open + 1, close - open - 1);

    auto range_sep = list.find("..");
    if (range_sep != std::string_view::npos) {
        std::string_view first = trim(list.substr(0, range_sep));
        std::string_view last = trim(list.substr(range_sep + 2));
        if (is_register(first) && is_register(last) && first[0] == last[0]) {
            int lo = 0;
            int hi = 0;
            std::from_chars(first.data() + 1, first.data() + first.size(), lo);
            std::from_chars(last.data() + 1, last.data() + last.size(), hi);
            for (int r = lo; r <= hi && r - lo < 64; ++r) {
                registers.push_back(std::string(1, first[0]) + std::to_string(r));
            }
        }
        return registers;
    }

    std::size_t start = 0;
    while (start <= list.size()) {
        auto comma = list.find(',', start);
        std::string_view reg = trim(list.substr(
                start, comma == std::string_view::npos ? list.size() - start : comma - start));
        if (is_register(reg)) registers.push_back(std::string(reg));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return registers;
}

namespace {

// Register slots used by each parameter in a descriptor (wide types take 2).
std::vector<int> parameter_slots(std::string_view descriptor) {
    std::vector<int> slots;
    if (descriptor.empty() || descriptor.front() != '(') return slots;
    std::size_t i = 1;
    while (i < descriptor.size() && descriptor[i] != ')') {
        while (i < descriptor.size() && descriptor[i] == '[') ++i;  // arrays are references
        if (i >= descriptor.size()) break;
        char c = descriptor[i];
        if (c == 'L') {
            auto semi = descriptor.find(';', i);
            if (semi == std::string_view::npos) break;
            i = semi + 1;
            slots.push_back(1);
        } else {
            // array-of-primitive is still a single reference slot
            bool was_array = i > 1 && descriptor[i - 1] == '[';
            slots.push_back((!was_array && (c == 'J' || c == 'D')) ? 2 : 1);
            ++i;
        }
    }
    return slots;
}

}  // namespace

std::optional<std::string> invoke_arg_register(const Instruction& invoke, int param_index) {
    if (!invoke.method_ref) return std::nullopt;
    auto registers = invoke_registers(invoke);
    bool is_static = invoke.mnemonic.find("static") != std::string::npos;
    std::size_t base = is_static ? 0 : 1;
    auto slots = parameter_slots(invoke.method_ref->descriptor);
    if (param_index < 0 || static_cast<std::size_t>(param_index) >= slots.size()) {
        return std::nullopt;
    }
    std::size_t offset = base;
    for (int i = 0; i < param_index; ++i) offset += static_cast<std::size_t>(slots[i]);
    if (offset >= registers.size()) return std::nullopt;
    return registers[offset];
}

namespace {

enum class ConstKind { None, Int, String, OtherConst, OtherWrite };

// Classifies the most recent write to `reg` before `upto_index`.
ConstKind last_write(const SmaliMethod& method, std::size_t upto_index, std::string_view reg,
                     std::int64_t& int_out, std::string& string_out) {
    if (upto_index > method.instructions.size()) upto_index = method.instructions.size();
    for (std::size_t i = upto_index; i-- > 0;) {
        const Instruction& ins = method.instructions[i];
        auto written = written_register(ins);
        if (!written || *written != reg) continue;
        if (ins.const_value) {
            int_out = *ins.const_value;
            return ConstKind::Int;
        }
        if (ins.string_literal) {
            string_out = *ins.string_literal;
            return ConstKind::String;
        }
        if (ins.mnemonic.rfind("const", 0) == 0) return ConstKind::OtherConst;
        return ConstKind::OtherWrite;
    }
    return ConstKind::None;
}

}  // namespace

std::optional<std::int64_t> resolve_const_int(const SmaliMethod& method, std::size_t upto_index,
                                              std::string_view reg) {
    std::int64_t value = 0;
    std::string ignored;
    if (last_write(method, upto_index, reg, value, ignored) == ConstKind::Int) return value;
    return std::nullopt;
}

std::optional<std::string> resolve_const_string(const SmaliMethod& method, std::size_t upto_index,
                                                std::string_view reg) {
    std::int64_t ignored = 0;
    std::string value;
    if (last_write(method, upto_index, reg, ignored, value) == ConstKind::String) return value;
    return std::nullopt;
}

bool trivial_body(const SmaliMethod& method) {
    for (const auto& ins : method.instructions) {
        if (ins.mnemonic.rfind("invoke-", 0) == 0) return false;
        if (ins.mnemonic == "throw") return false;
    }
    for (std::size_t i = 0; i < method.instructions.size(); ++i) {
        const Instruction& ins = method.instructions[i];
        if (ins.mnemonic.rfind("return", 0) != 0) continue;
        if (ins.mnemonic == "return-void") continue;
        auto tokens = split_ws(std::string_view(ins.raw_text).substr(ins.mnemonic.size()));
        if (tokens.empty() || !is_register(tokens[0])) return false;
        std::string_view reg = tokens[0];
        if (reg[0] == 'p') continue;  // echoes a parameter back
        std::int64_t int_out = 0;
        std::string string_out;
        ConstKind kind = last_write(method, i, reg, int_out, string_out);
        if (kind != ConstKind::Int && kind != ConstKind::String && kind != ConstKind::OtherConst) {
            return false;
        }
    }
    return true;
}

}  // namespace droidsmell
