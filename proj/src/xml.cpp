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

#include "droidsmell/xml.hpp"

#include <cctype>
#include <cstdint>

#include "droidsmell/errors.hpp"

namespace droidsmell::xml {

namespace {

bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':'
           || static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
    return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
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

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Element parse() {
        reject_binary();
        skip_bom();
        skip_misc();
        if (at_end()) fail("document has no root element");
        Element root = parse_element();
        skip_misc();
        if (!at_end()) fail("content after the root element");
        return root;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;

    [[noreturn]] void fail(const std::string& msg) const {
        throw XmlSyntaxError(msg, line_, column_);
    }

    // A decoded manifest is plain text; NUL bytes or the AXML chunk header
    // mean the caller fed us an unpacked binary manifest.
    void reject_binary() const {
        if (text_.size() >= 4 && static_cast<unsigned char>(text_[0]) == 0x03
            && static_cast<unsigned char>(text_[1]) == 0x00) {
            throw XmlSyntaxError(
                    "binary Android manifest (AXML); expected the decoded plain-text "
                    "AndroidManifest.xml produced by an apk decoder",
                    1, 1);
        }
        const std::size_t probe = text_.size() < 256 ? text_.size() : 256;
        for (std::size_t i = 0; i < probe; ++i) {
            if (text_[i] == '\0') {
                throw XmlSyntaxError(
                        "NUL byte in manifest; expected decoded plain-text XML", 1,
                        static_cast<int>(i) + 1);
            }
        }
    }

    void skip_bom() {
        if (text_.substr(0, 3) == "\xEF\xBB\xBF") {
            pos_ = 3;
        }
    }

    bool at_end() const { return pos_ >= text_.size(); }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    char peek_at(std::size_t off) const {
        return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
    }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    bool consume(std::string_view lit) {
        if (text_.substr(pos_, lit.size()) != lit) return false;
        for (std::size_t i = 0; i < lit.size(); ++i) advance();
        return true;
    }

    void skip_ws() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                return;
            }
        }
    }

    void expect(char c, const char* what) {
        if (at_end() || peek() != c) fail(std::string("expected ") + what);
        advance();
    }

    // Whitespace, comments, PIs, the XML declaration, and DOCTYPE.
    void skip_misc() {
        for (;;) {
            skip_ws();
            if (consume("<!--")) {
                skip_until("-->", "unterminated comment");
            } else if (peek() == '<' && peek_at(1) == '?') {
                skip_until("?>", "unterminated processing instruction");
            } else if (peek() == '<' && peek_at(1) == '!') {
                // DOCTYPE (no internal-subset support; manifests have none)
                skip_until(">", "unterminated declaration");
            } else {
                return;
            }
        }
    }

    void skip_until(std::string_view terminator, const char* err) {
        while (!at_end()) {
            if (consume(terminator)) return;
            advance();
        }
        fail(err);
    }

    std::string read_name() {
        if (at_end() || !is_name_start(peek())) fail("expected a name");
        std::string name;
        while (!at_end() && is_name_char(peek())) name.push_back(advance());
        return name;
    }

    static void split_qname(const std::string& qname, std::string& prefix, std::string& local) {
        auto colon = qname.find(':');
        if (colon == std::string::npos) {
            prefix.clear();
            local = qname;
        } else {
            prefix = qname.substr(0, colon);
            local = qname.substr(colon + 1);
        }
    }

    std::string read_attr_value() {
        if (peek() != '"' && peek() != '\'') fail("attribute value must be quoted");
        char quote = advance();
        std::string value;
        for (;;) {
            if (at_end()) fail("unterminated attribute value");
            char c = peek();
            if (c == quote) {
                advance();
                return value;
            }
            if (c == '<') fail("'<' inside attribute value");
            if (c == '&') {
                value += read_entity();
            } else {
                value.push_back(advance());
            }
        }
    }

    std::string read_entity() {
        advance();  // '&'
        std::string name;
        while (!at_end() && peek() != ';') {
            name.push_back(advance());
            if (name.size() > 10) fail("unterminated entity reference");
        }
        expect(';', "';' after entity reference");
        if (name == "amp") return "&";
        if (name == "lt") return "<";
        if (name == "gt") return ">";
        if (name == "quot") return "\"";
        if (name == "apos") return "'";
        if (!name.empty() && name[0] == '#') {
            std::uint32_t cp = 0;
            std::size_t i = 1;
            bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
            if (hex) i = 2;
            if (i >= name.size()) fail("empty character reference");
            for (; i < name.size(); ++i) {
                char c = name[i];
                std::uint32_t digit;
                if (c >= '0' && c <= '9') {
                    digit = static_cast<std::uint32_t>(c - '0');
                } else if (hex && c >= 'a' && c <= 'f') {
                    digit = static_cast<std::uint32_t>(c - 'a' + 10);
                } else if (hex && c >= 'A' && c <= 'F') {
                    digit = static_cast<std::uint32_t>(c - 'A' + 10);
                } else {
                    fail("malformed character reference");
                }
                cp = cp * (hex ? 16 : 10) + digit;
                if (cp > 0x10FFFF) fail("character reference out of range");
            }
            std::string out;
            append_utf8(out, cp);
            return out;
        }
        fail("unknown entity '&" + name + ";'");
    }

    Element parse_element() {
        int el_line = line_;
        int el_column = column_;
        expect('<', "'<'");
        Element element;
        element.line = el_line;
        element.column = el_column;
        std::string qname = read_name();
        split_qname(qname, element.prefix, element.local);

        // attributes
        for (;;) {
            bool had_ws = false;
            std::size_t before = pos_;
            skip_ws();
            had_ws = pos_ != before;
            if (at_end()) fail("unterminated start tag");
            char c = peek();
            if (c == '>') {
                advance();
                break;
            }
            if (c == '/') {
                advance();
                expect('>', "'>' after '/'");
                return element;  // self-closing
            }
            if (!had_ws) fail("expected whitespace before attribute");
            Attr attr;
            attr.line = line_;
            attr.column = column_;
            std::string attr_qname = read_name();
            split_qname(attr_qname, attr.prefix, attr.local);
            skip_ws();
            expect('=', "'=' after attribute name");
            skip_ws();
            attr.value = read_attr_value();
            element.attributes.push_back(std::move(attr));
        }

        // content until the matching end tag
        for (;;) {
            if (at_end()) fail("unterminated element <" + qname + ">");
            char c = peek();
            if (c == '<') {
                if (consume("<!--")) {
                    skip_until("-->", "unterminated comment");
                } else if (consume("<![CDATA[")) {
                    skip_until("]]>", "unterminated CDATA section");
                } else if (peek_at(1) == '?') {
                    skip_until("?>", "unterminated processing instruction");
                } else if (peek_at(1) == '/') {
                    advance();  // '<'
                    advance();  // '/'
                    std::string close = read_name();
                    if (close != qname) {
                        fail("mismatched end tag </" + close + ">, expected </" + qname + ">");
                    }
                    skip_ws();
                    expect('>', "'>' at end tag");
                    return element;
                } else {
                    element.children.push_back(parse_element());
                }
            } else if (c == '&') {
                read_entity();  // validated, content text is discarded
            } else {
                advance();  // text content, discarded
            }
        }
    }
};

}  // namespace

const Attr* Element::attr_local(std::string_view local_name) const {
    for (const auto& attr : attributes) {
        if (attr.local == local_name) return &attr;
    }
    return nullptr;
}

std::vector<const Element*> Element::children_local(std::string_view local_name) const {
    std::vector<const Element*> out;
    for (const auto& child : children) {
        if (child.local == local_name) out.push_back(&child);
    }
    return out;
}

Element parse_document(std::string_view text) {
    return Parser(text).parse();
}

}  // namespace droidsmell::xml
