// Copyright 2026 The xsv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "util.hpp"
#include "xsv/xml.hpp"

using namespace xsv;
using test::parse_fail;
using test::parse_ok;
using test::st;

namespace {

const Element& only_child(const Element& e) {
    REQUIRE(e.children.size() == 1);
    return std::get<Element>(e.children.front().v);
}

const TextNode& only_text(const Element& e) {
    REQUIRE(e.children.size() == 1);
    return std::get<TextNode>(e.children.front().v);
}

}  // namespace

TEST_CASE("minimal documents") {
    CHECK(parse_ok("<a/>").root.name.local.bytes() == "a");
    CHECK(parse_ok("<a></a>").root.children.empty());
    CHECK(parse_ok("<?xml version=\"1.0\"?><a/>").root.name.local.bytes() == "a");
    CHECK(parse_ok("<?xml version=\"1.0\" encoding=\"UTF-8\"?><a/>").root.name.local.bytes() ==
          "a");
    CHECK(parse_ok("\xEF\xBB\xBF<a/>").root.name.local.bytes() == "a");  // BOM
    CHECK(parse_ok(" \n <a/> \n ").root.name.local.bytes() == "a");
}

TEST_CASE("numeric character references are banned") {
    CHECK(parse_fail("<a>&#115;</a>").code == Code::WF001);
    CHECK(parse_fail("<a>&#x73;</a>").code == Code::WF001);
    CHECK(parse_fail("<a v=\"&#115;\"/>").code == Code::WF001);
    const Diag d = parse_fail("<a>&#115;</a>");
    CHECK(d.line == 1);
    CHECK(d.col == 4);  // position of the reference
}

TEST_CASE("only the five predefined entities resolve") {
    const XmlDocument doc = parse_ok("<a>&amp;&lt;&gt;&quot;&apos;</a>");
    CHECK(only_text(doc.root).text.bytes() == "&<>\"'");
    CHECK(parse_fail("<a>&nbsp;</a>").code == Code::WF002);
    CHECK(parse_fail("<a>&unknown;</a>").code == Code::WF002);

    CHECK(std::get<char32_t>(resolve_entity_ref(st("amp"))) == U'&');
    CHECK(std::get<char32_t>(resolve_entity_ref(st("lt"))) == U'<');
    CHECK(std::get<char32_t>(resolve_entity_ref(st("gt"))) == U'>');
    CHECK(std::get<char32_t>(resolve_entity_ref(st("quot"))) == U'"');
    CHECK(std::get<char32_t>(resolve_entity_ref(st("apos"))) == U'\'');
    CHECK(std::get<WfError>(resolve_entity_ref(st("#x73"))).code == Code::WF001);
    CHECK(std::get<WfError>(resolve_entity_ref(st("#115"))).code == Code::WF001);
    CHECK(std::get<WfError>(resolve_entity_ref(st("nbsp"))).code == Code::WF002);
}

TEST_CASE("doctype and cdata are banned") {
    CHECK(parse_fail("<!DOCTYPE a []><a/>").code == Code::WF003);
    CHECK(parse_fail("<!DOCTYPE a><a/>").code == Code::WF003);
    CHECK(parse_fail("<a><![CDATA[x]]></a>").code == Code::WF004);
}

TEST_CASE("structural errors") {
    CHECK(parse_fail("<a><b></a></b>").code == Code::WF004);
    CHECK(parse_fail("<a>").code == Code::WF004);
    CHECK(parse_fail("<a/><b/>").code == Code::WF004);
    CHECK(parse_fail("").code == Code::WF004);
    CHECK(parse_fail("text only").code == Code::WF004);
    CHECK(parse_fail("<a x=\"1\" x=\"2\"/>").code == Code::WF004);  // duplicate attribute
    CHECK(parse_fail("<a>]]></a>").code == Code::WF004);            // bare CDATA close
    CHECK(parse_fail("<a x=1/>").code == Code::WF004);              // unquoted value
    CHECK(parse_fail("<a><b/></a>trail<c/>").code == Code::WF004);
    CHECK(parse_fail("<p:a></q:a>").code == Code::WF004);  // end tag must repeat the prefix
}

TEST_CASE("encoding policy") {
    CHECK(parse_fail("<?xml version=\"1.0\" encoding=\"UTF-16\"?><a/>").code == Code::WF005);
    CHECK(parse_fail("<?xml version=\"1.0\" encoding=\"latin-1\"?><a/>").code == Code::WF005);
    CHECK(parse_ok("<?xml version=\"1.0\" encoding=\"utf-8\"?><a/>").root.name.local.bytes() ==
          "a");
    CHECK(parse_fail("<a>\xC0\xAF</a>").code == Code::WF005);  // overlong byte sequence
    CHECK(parse_fail("<a>\xFF</a>").code == Code::WF005);
}

TEST_CASE("illegal characters") {
    CHECK(parse_fail(std::string_view("<a>\x00</a>", 8)).code == Code::WF006);
    CHECK(parse_fail("<a>\x0B</a>").code == Code::WF006);
    CHECK(parse_fail("<a>\xEF\xBF\xBE</a>").code == Code::WF006);  // U+FFFE
    const Diag d = parse_fail("<a>\n\x01</a>");
    CHECK(d.code == Code::WF006);
    CHECK(d.line == 2);
    CHECK(d.col == 1);
}

TEST_CASE("comments and processing instructions are parsed then dropped") {
    const XmlDocument doc = parse_ok("<a><!-- note --><?pi data?><b/></a>");
    CHECK(only_child(doc.root).name.local.bytes() == "b");
    CHECK(parse_fail("<a><!-- -- --></a>").code == Code::WF004);  // '--' inside comment
    CHECK(parse_fail("<a><?xml bad?></a>").code == Code::WF004);  // reserved PI target
}

TEST_CASE("adjacent text merges across dropped nodes") {
    const XmlDocument doc = parse_ok("<a>one<!-- x -->two</a>");
    REQUIRE(doc.root.children.size() == 1);
    CHECK(only_text(doc.root).text.bytes() == "onetwo");
}

TEST_CASE("end-of-line normalization") {
    const XmlDocument doc = parse_ok("<a>x\r\ny\rz</a>");
    CHECK(only_text(doc.root).text.bytes() == "x\ny\nz");
}

TEST_CASE("attribute value normalization") {
    const XmlDocument doc = parse_ok("<a v=\"x\ty\nz\"/>");
    REQUIRE(doc.root.attributes.size() == 1);
    CHECK(doc.root.attributes[0].value.bytes() == "x y z");
    const XmlDocument d2 = parse_ok("<a v='a&amp;b'/>");
    CHECK(d2.root.attributes[0].value.bytes() == "a&b");
    CHECK(parse_fail("<a v=\"<\"/>").code == Code::WF004);  // raw '<' in value
}

TEST_CASE("name checking") {
    CHECK(std::get<QName>(check_name(st("a"), Limits{})).local.bytes() == "a");
    const QName q = std::get<QName>(check_name(st("p:x"), Limits{}));
    CHECK(q.local.bytes() == "x");
    REQUIRE(q.prefix.has_value());
    CHECK(q.prefix->bytes() == "p");
    CHECK(std::get<WfError>(check_name(st("a:b:c"), Limits{})).code == Code::WF004);
    CHECK(std::get<WfError>(check_name(st("1a"), Limits{})).code == Code::WF004);
    CHECK(std::get<WfError>(check_name(st(":a"), Limits{})).code == Code::WF004);
    CHECK(std::get<WfError>(check_name(st("a:"), Limits{})).code == Code::WF004);
    Limits tight;
    tight.max_name_bytes = 2;
    CHECK(std::get<WfError>(check_name(st("abc"), tight)).code == Code::LIM003);
}

TEST_CASE("ncname character predicates") {
    CHECK(is_ncname_start(U'a'));
    CHECK(is_ncname_start(U'_'));
    CHECK(!is_ncname_start(U'1'));
    CHECK(!is_ncname_start(U'-'));
    CHECK(!is_ncname_start(U':'));
    CHECK(is_ncname_char(U'1'));
    CHECK(is_ncname_char(U'-'));
    CHECK(is_ncname_char(U'.'));
    CHECK(!is_ncname_char(U':'));
    CHECK(is_ncname_start(U'é'));
    CHECK(is_ncname_start(U'中'));
}

TEST_CASE("resource limits") {
    Limits lim;

    SUBCASE("depth") {
        std::string deep;
        for (int i = 0; i < 300; ++i) deep += "<a>";
        for (int i = 0; i < 300; ++i) deep += "</a>";
        CHECK(parse_fail(deep, lim).code == Code::LIM001);
        std::string ok;
        for (int i = 0; i < 255; ++i) ok += "<a>";
        for (int i = 0; i < 255; ++i) ok += "</a>";
        CHECK(parse_ok(ok, lim).max_depth == 255);
    }

    SUBCASE("input size") {
        lim.max_input_bytes = 16;
        CHECK(parse_fail("<a>0123456789abcdef</a>", lim).code == Code::LIM002);
    }

    SUBCASE("attribute count") {
        lim.max_attrs_per_element = 2;
        CHECK(parse_fail("<a x=\"1\" y=\"2\" z=\"3\"/>", lim).code == Code::LIM004);
        CHECK(parse_ok("<a x=\"1\" y=\"2\"/>", lim).root.attributes.size() == 2);
    }

    SUBCASE("attribute value size") {
        lim.max_attr_value_bytes = 4;
        CHECK(parse_fail("<a v=\"12345\"/>", lim).code == Code::LIM004);
    }

    SUBCASE("name length") {
        lim.max_name_bytes = 4;
        CHECK(parse_fail("<abcde/>", lim).code == Code::LIM003);
    }

    SUBCASE("node count") {
        lim.max_total_nodes = 8;
        std::string many = "<a>";
        for (int i = 0; i < 10; ++i) many += "<b/>";
        many += "</a>";
        CHECK(parse_fail(many, lim).code == Code::LIM007);
    }
}

TEST_CASE("positions are 1-based line and column") {
    const XmlDocument doc = parse_ok("<a>\n  <b/>\n</a>");
    CHECK(doc.root.line == 1);
    CHECK(doc.root.col == 1);
    const Element& b = std::get<Element>(doc.root.children[1].v);
    CHECK(b.line == 2);
    CHECK(b.col == 3);
}

TEST_CASE("whitespace predicate") {
    CHECK(is_xml_whitespace(st(" \t\r\n")));
    CHECK(is_xml_whitespace(st("")));
    CHECK(!is_xml_whitespace(st(" x ")));
}

TEST_CASE("total nodes counts dropped units") {
    const XmlDocument doc = parse_ok("<a><!-- c --><b/>text</a>");
    CHECK(doc.total_nodes >= 4);  // a, comment, b, text
}
