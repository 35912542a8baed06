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
#include "xsv/schema.hpp"

using namespace xsv;
using test::compile_xsd_fail;
using test::compile_xsd_ok;
using test::has_code;
using test::parse_ok;

namespace {

std::vector<Diag> screen(std::string_view src) { return screen_constructs(parse_ok(src)); }

std::string wrap(std::string_view body) {
    return "<xs:schema xmlns:xs=\"http://www.w3.org/2001/XMLSchema\">" + std::string(body) +
           "</xs:schema>";
}

}  // namespace

TEST_CASE("screen accepts the supported vocabulary") {
    CHECK(screen(wrap("<xs:element name=\"a\" type=\"xs:string\"/>")).empty());
    CHECK(screen(wrap("<xs:element name=\"a\">"
                      "<xs:complexType><xs:sequence>"
                      "<xs:element name=\"b\" type=\"xs:integer\"/>"
                      "</xs:sequence></xs:complexType>"
                      "</xs:element>"))
              .empty());
    CHECK(screen(wrap("<xs:annotation><xs:documentation>free text, any "
                      "<content/></xs:documentation></xs:annotation>"
                      "<xs:element name=\"a\" type=\"xs:token\"/>"))
              .empty());
}

TEST_CASE("forbidden constructs are SCH001") {
    CHECK(has_code(screen(wrap("<xs:any/>")), Code::SCH001));
    CHECK(has_code(screen(wrap("<xs:anyAttribute/>")), Code::SCH001));
    CHECK(has_code(screen(wrap("<xs:redefine/>")), Code::SCH001));
    CHECK(has_code(screen(wrap("<xs:include schemaLocation=\"x.xsd\"/>")), Code::SCH001));
    CHECK(has_code(screen(wrap("<xs:import namespace=\"n\"/>")), Code::SCH001));
    CHECK(has_code(screen(wrap("<xs:notation name=\"n\"/>")), Code::SCH001));
    CHECK(has_code(screen(wrap("<xs:simpleType name=\"t\"><xs:union/></xs:simpleType>")),
                   Code::SCH001));
    CHECK(has_code(screen(wrap("<xs:simpleType name=\"t\"><xs:list/></xs:simpleType>")),
                   Code::SCH001));
    CHECK(has_code(
        screen(wrap("<xs:element name=\"a\" type=\"xs:string\" substitutionGroup=\"g\"/>")),
        Code::SCH001));
    CHECK(has_code(screen(wrap("<xs:element name=\"a\" type=\"xs:string\" abstract=\"true\"/>")),
                   Code::SCH001));
    CHECK(has_code(
        screen(wrap("<xs:complexType name=\"t\" mixed=\"true\"><xs:sequence/></xs:complexType>")),
        Code::SCH001));
    CHECK(has_code(screen(wrap("<xs:element name=\"a\" type=\"xs:string\" default=\"x\"/>")),
                   Code::SCH001));
    CHECK(has_code(screen(wrap("<xs:element name=\"a\" type=\"xs:string\" fixed=\"x\"/>")),
                   Code::SCH001));
    CHECK(has_code(screen(wrap("<foreign xsi:type=\"t\"/>")), Code::SCH001));
    // every occurrence is reported, not only the first
    const auto ds = screen(wrap("<xs:any/><xs:any/>"));
    int n = 0;
    for (const auto& d : ds) n += d.code == Code::SCH001;
    CHECK(n == 2);
}

TEST_CASE("unrecognized vocabulary and foreign elements are SCH005") {
    CHECK(has_code(screen(wrap("<xs:group name=\"g\"/>")), Code::SCH005));
    CHECK(has_code(screen(wrap("<xs:key name=\"k\"/>")), Code::SCH005));
    CHECK(has_code(screen(wrap("<other:thing xmlns:other=\"n\"/>")), Code::SCH005));
    CHECK(has_code(screen("<not-schema/>"), Code::SCH005));
    // abstract="false" and mixed="false" are tolerated
    CHECK(screen(wrap("<xs:element name=\"a\" type=\"xs:string\" abstract=\"false\"/>")).empty());
}

TEST_CASE("build translates the whitelisted vocabulary") {
    const CompiledSchema cs = compile_xsd_ok(wrap(
        "<xs:element name=\"root\">"
        "<xs:complexType>"
        "<xs:sequence>"
        "<xs:element name=\"id\" type=\"xs:integer\"/>"
        "<xs:element name=\"tag\" type=\"xs:token\" minOccurs=\"0\" maxOccurs=\"unbounded\"/>"
        "</xs:sequence>"
        "<xs:attribute name=\"version\" type=\"xs:string\" use=\"required\"/>"
        "</xs:complexType>"
        "</xs:element>"));
    CHECK(cs.roots.size() == 1);
    CHECK(cs.roots.count("root") == 1);
}

TEST_CASE("unprefixed schema vocabulary works") {
    const CompiledSchema cs = compile_xsd_ok(
        "<schema><element name=\"a\" type=\"string\"/></schema>");
    CHECK(cs.roots.count("a") == 1);
}

TEST_CASE("named types, refs, and simple type restrictions") {
    const CompiledSchema cs = compile_xsd_ok(wrap(
        "<xs:simpleType name=\"Code\">"
        "<xs:restriction base=\"xs:string\"><xs:maxLength value=\"4\"/></xs:restriction>"
        "</xs:simpleType>"
        "<xs:complexType name=\"Box\">"
        "<xs:sequence><xs:element ref=\"item\" maxOccurs=\"unbounded\"/></xs:sequence>"
        "</xs:complexType>"
        "<xs:element name=\"item\" type=\"Code\"/>"
        "<xs:element name=\"box\" type=\"Box\"/>"));
    CHECK(cs.roots.count("box") == 1);
    CHECK(cs.roots.count("item") == 1);
}

TEST_CASE("derivation chains flatten facets") {
    const CompiledSchema cs = compile_xsd_ok(wrap(
        "<xs:simpleType name=\"A\">"
        "<xs:restriction base=\"xs:integer\"><xs:minInclusive value=\"0\"/></xs:restriction>"
        "</xs:simpleType>"
        "<xs:simpleType name=\"B\">"
        "<xs:restriction base=\"A\"><xs:maxInclusive value=\"10\"/></xs:restriction>"
        "</xs:simpleType>"
        "<xs:element name=\"n\" type=\"B\"/>"));
    CHECK(cs.roots.count("n") == 1);
}

TEST_CASE("occurs parsing and LIM005") {
    CHECK(has_code(
        test::compile_xsd_fail(wrap(
            "<xs:element name=\"r\"><xs:complexType><xs:sequence>"
            "<xs:element name=\"a\" type=\"xs:string\" maxOccurs=\"99999\"/>"
            "</xs:sequence></xs:complexType></xs:element>")),
        Code::LIM005));
    CHECK(has_code(
        test::compile_xsd_fail(wrap(
            "<xs:element name=\"r\"><xs:complexType><xs:sequence>"
            "<xs:element name=\"a\" type=\"xs:string\" minOccurs=\"2\" maxOccurs=\"1\"/>"
            "</xs:sequence></xs:complexType></xs:element>")),
        Code::SCH005));
    CHECK(has_code(
        test::compile_xsd_fail(wrap(
            "<xs:element name=\"r\"><xs:complexType><xs:sequence>"
            "<xs:element name=\"a\" type=\"xs:string\" minOccurs=\"-1\"/>"
            "</xs:sequence></xs:complexType></xs:element>")),
        Code::SCH005));
    // boundary: maxOccurs equal to the bound is fine
    compile_xsd_ok(wrap(
        "<xs:element name=\"r\"><xs:complexType><xs:sequence>"
        "<xs:element name=\"a\" type=\"xs:string\" maxOccurs=\"1024\"/>"
        "</xs:sequence></xs:complexType></xs:element>"));
}

TEST_CASE("facet applicability is SCH006") {
    CHECK(has_code(test::compile_xsd_fail(wrap(
                       "<xs:simpleType name=\"t\">"
                       "<xs:restriction base=\"xs:string\">"
                       "<xs:maxInclusive value=\"5\"/>"
                       "</xs:restriction></xs:simpleType>"
                       "<xs:element name=\"e\" type=\"t\"/>")),
                   Code::SCH006));
    CHECK(has_code(test::compile_xsd_fail(wrap(
                       "<xs:simpleType name=\"t\">"
                       "<xs:restriction base=\"xs:integer\">"
                       "<xs:maxLength value=\"5\"/>"
                       "</xs:restriction></xs:simpleType>"
                       "<xs:element name=\"e\" type=\"t\"/>")),
                   Code::SCH006));
    CHECK(has_code(test::compile_xsd_fail(wrap(
                       "<xs:simpleType name=\"t\">"
                       "<xs:restriction base=\"xs:integer\">"
                       "<xs:maxInclusive value=\"five\"/>"
                       "</xs:restriction></xs:simpleType>"
                       "<xs:element name=\"e\" type=\"t\"/>")),
                   Code::SCH006));
}

TEST_CASE("dangling references are SCH002") {
    CHECK(has_code(test::compile_xsd_fail(wrap(
                       "<xs:element name=\"e\" type=\"Missing\"/>")),
                   Code::SCH002));
    CHECK(has_code(test::compile_xsd_fail(wrap(
                       "<xs:element name=\"r\"><xs:complexType><xs:sequence>"
                       "<xs:element ref=\"nowhere\"/>"
                       "</xs:sequence></xs:complexType></xs:element>")),
                   Code::SCH002));
    const auto ds = test::compile_xsd_fail(wrap("<xs:element name=\"e\" type=\"Missing\"/>"));
    bool names_it = false;
    for (const auto& d : ds) names_it = names_it || d.message.find("Missing") != std::string::npos;
    CHECK(names_it);
}

TEST_CASE("derivation cycles are SCH003") {
    CHECK(has_code(test::compile_xsd_fail(wrap(
                       "<xs:simpleType name=\"S\">"
                       "<xs:restriction base=\"S\"><xs:maxLength value=\"2\"/></xs:restriction>"
                       "</xs:simpleType>"
                       "<xs:element name=\"e\" type=\"S\"/>")),
                   Code::SCH003));
    CHECK(has_code(test::compile_xsd_fail(wrap(
                       "<xs:simpleType name=\"A\">"
                       "<xs:restriction base=\"B\"><xs:maxLength value=\"2\"/></xs:restriction>"
                       "</xs:simpleType>"
                       "<xs:simpleType name=\"B\">"
                       "<xs:restriction base=\"A\"><xs:maxLength value=\"3\"/></xs:restriction>"
                       "</xs:simpleType>"
                       "<xs:element name=\"e\" type=\"A\"/>")),
                   Code::SCH003));
}

TEST_CASE("element-to-element recursion through content models is allowed") {
    const CompiledSchema cs = compile_xsd_ok(wrap(
        "<xs:element name=\"tree\">"
        "<xs:complexType><xs:sequence>"
        "<xs:element ref=\"tree\" minOccurs=\"0\" maxOccurs=\"2\"/>"
        "</xs:sequence></xs:complexType>"
        "</xs:element>"));
    CHECK(cs.roots.count("tree") == 1);
}

TEST_CASE("build rejects malformed declarations with SCH005") {
    // element without a type
    CHECK(has_code(test::compile_xsd_fail(wrap("<xs:element name=\"e\"/>")), Code::SCH005));
    // duplicate global names
    CHECK(has_code(test::compile_xsd_fail(wrap(
                       "<xs:element name=\"e\" type=\"xs:string\"/>"
                       "<xs:element name=\"e\" type=\"xs:token\"/>")),
                   Code::SCH005));
    // unknown attribute on a declaration
    CHECK(has_code(test::compile_xsd_fail(wrap(
                       "<xs:element name=\"e\" type=\"xs:string\" nillable=\"true\"/>")),
                   Code::SCH005));
    // choice must have at least one branch
    CHECK(has_code(test::compile_xsd_fail(wrap(
                       "<xs:element name=\"r\"><xs:complexType>"
                       "<xs:choice/>"
                       "</xs:complexType></xs:element>")),
                   Code::SCH005));
    // maxOccurs zero admits nothing
    CHECK(has_code(test::compile_xsd_fail(wrap(
                       "<xs:element name=\"r\"><xs:complexType><xs:sequence>"
                       "<xs:element name=\"a\" type=\"xs:string\" maxOccurs=\"0\"/>"
                       "</xs:sequence></xs:complexType></xs:element>")),
                   Code::SCH005));
    // attribute of a non-simple type
    CHECK(has_code(test::compile_xsd_fail(wrap(
                       "<xs:complexType name=\"C\"><xs:sequence>"
                       "<xs:element name=\"x\" type=\"xs:string\"/>"
                       "</xs:sequence></xs:complexType>"
                       "<xs:element name=\"r\"><xs:complexType>"
                       "<xs:attribute name=\"a\" type=\"C\"/>"
                       "</xs:complexType></xs:element>")),
                   Code::SCH006));
}

TEST_CASE("xs:all constraints") {
    compile_xsd_ok(wrap(
        "<xs:element name=\"r\"><xs:complexType><xs:all>"
        "<xs:element name=\"a\" type=\"xs:string\"/>"
        "<xs:element name=\"b\" type=\"xs:string\" minOccurs=\"0\"/>"
        "</xs:all></xs:complexType></xs:element>"));
    // all members may not repeat
    CHECK(has_code(test::compile_xsd_fail(wrap(
                       "<xs:element name=\"r\"><xs:complexType><xs:all>"
                       "<xs:element name=\"a\" type=\"xs:string\" maxOccurs=\"2\"/>"
                       "</xs:all></xs:complexType></xs:element>")),
                   Code::SCH005));
    // no nested compositors inside all
    CHECK(has_code(test::compile_xsd_fail(wrap(
                       "<xs:element name=\"r\"><xs:complexType><xs:all>"
                       "<xs:sequence/>"
                       "</xs:all></xs:complexType></xs:element>")),
                   Code::SCH005));
}

TEST_CASE("screen-then-build soundness: build alone still rejects bans") {
    // Run build_schema without screening: the defensive check must fire.
    const XmlDocument doc = parse_ok(wrap(
        "<xs:element name=\"r\"><xs:complexType><xs:sequence>"
        "<xs:any/>"
        "</xs:sequence></xs:complexType></xs:element>"));
    auto r = build_schema(doc, Limits{});
    REQUIRE(std::holds_alternative<std::vector<Diag>>(r));
    CHECK(has_code(std::get<std::vector<Diag>>(r), Code::SCH001));
}

TEST_CASE("resolution is deterministic") {
    const std::string src = wrap(
        "<xs:simpleType name=\"Z\">"
        "<xs:restriction base=\"xs:integer\"><xs:minInclusive value=\"0\"/></xs:restriction>"
        "</xs:simpleType>"
        "<xs:element name=\"a\" type=\"Z\"/>"
        "<xs:element name=\"b\" type=\"xs:string\"/>");
    const CompiledSchema c1 = compile_xsd_ok(src);
    const CompiledSchema c2 = compile_xsd_ok(src);
    REQUIRE(c1.roots.size() == c2.roots.size());
    CHECK(c1.roots.at("a").type_index == c2.roots.at("a").type_index);
    CHECK(c1.roots.at("b").type_index == c2.roots.at("b").type_index);
    CHECK(c1.types.size() == c2.types.size());
}
