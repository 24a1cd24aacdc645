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

#include <doctest.h>

#include "droidsmell/errors.hpp"
#include "droidsmell/xml.hpp"

using droidsmell::XmlSyntaxError;
namespace xml = droidsmell::xml;

TEST_CASE("parses elements, attributes, and nesting") {
    auto root = xml::parse_document(
            "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n"
            "<!-- decoded -->\n"
            "<manifest xmlns:android=\"http://schemas.android.com/apk/res/android\" "
            "package=\"com.example\">\n"
            "  <application android:debuggable=\"true\">\n"
            "    <activity android:name=\".Main\"/>\n"
            "  </application>\n"
            "</manifest>\n");
    CHECK(root.local == "manifest");
    REQUIRE(root.attr_local("package") != nullptr);
    CHECK(root.attr_local("package")->value == "com.example");
    REQUIRE(root.children.size() == 1);
    const auto& app = root.children[0];
    CHECK(app.local == "application");
    REQUIRE(app.attr_local("debuggable") != nullptr);
    CHECK(app.attr_local("debuggable")->prefix == "android");
    CHECK(app.children_local("activity").size() == 1);
}

TEST_CASE("decodes entities in attribute values") {
    auto root = xml::parse_document("<a v=\"&lt;x&gt; &amp; &quot;y&quot; &#65; &#x42;\"/>");
    CHECK(root.attr_local("v")->value == "<x> & \"y\" A B");
}

TEST_CASE("reports line and column on malformed input") {
    try {
        xml::parse_document("<manifest>\n  <application>\n</manifest>\n");
        FAIL("expected XmlSyntaxError");
    } catch (const XmlSyntaxError& e) {
        CHECK(e.line == 3);
        CHECK(e.column > 1);
        CHECK(std::string(e.what()).find("mismatched end tag") != std::string::npos);
    }
}

TEST_CASE("rejects truncated documents") {
    CHECK_THROWS_AS(xml::parse_document("<manifest package=\"x\""), XmlSyntaxError);
    CHECK_THROWS_AS(xml::parse_document("<a><b></a>"), XmlSyntaxError);
    CHECK_THROWS_AS(xml::parse_document(""), XmlSyntaxError);
    CHECK_THROWS_AS(xml::parse_document("<a/><b/>"), XmlSyntaxError);
}

TEST_CASE("rejects binary AXML with a format hint") {
    std::string axml{'\x03', '\x00', '\x08', '\x00', 'x', 'y'};
    try {
        xml::parse_document(axml);
        FAIL("expected XmlSyntaxError");
    } catch (const XmlSyntaxError& e) {
        CHECK(std::string(e.what()).find("plain-text") != std::string::npos);
    }
    std::string nul = std::string("<manifest ") + '\0' + ">";
    CHECK_THROWS_AS(xml::parse_document(nul), XmlSyntaxError);
}

TEST_CASE("skips CDATA, processing instructions, and DOCTYPE") {
    auto root = xml::parse_document(
            "<!DOCTYPE manifest>\n"
            "<m><?pi data?><![CDATA[<not-an-element/>]]>text<inner/></m>");
    CHECK(root.local == "m");
    CHECK(root.children.size() == 1);
    CHECK(root.children[0].local == "inner");
}
