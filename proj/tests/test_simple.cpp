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

#include <algorithm>

#include "simple_cases.hpp"
#include "util.hpp"
#include "xsv/simple.hpp"

using namespace xsv;
using test::st;

namespace {

RSimple make_simple(BuiltinKind base,
                    const std::vector<std::pair<FacetKind, const char*>>& facets) {
    RSimple s;
    s.base = base;
    int line = 1;
    for (const auto& [k, v] : facets) {
        s.facets.push_back(Facet{k, st(v), ++line, 1});
    }
    return s;
}

CompiledSimple compile_ok(BuiltinKind base,
                          const std::vector<std::pair<FacetKind, const char*>>& facets) {
    auto r = CompiledSimple::compile(make_simple(base, facets), Limits{});
    REQUIRE(std::holds_alternative<CompiledSimple>(r));
    return std::get<CompiledSimple>(std::move(r));
}

std::vector<std::string> subcodes_of(const CompiledSimple& cs, std::string_view value) {
    auto r = cs.check(st(value));
    std::vector<std::string> out;
    if (const auto* vs = std::get_if<std::vector<FacetViolation>>(&r)) {
        for (const auto& v : *vs) out.push_back(v.subcode);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("expectation table") {
    const auto& cases = test::simple_cases();
    CHECK(cases.size() >= 200);
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        const CompiledSimple cs = compile_ok(c.base, c.facets);
        std::vector<std::string> want(c.expect.begin(), c.expect.end());
        std::sort(want.begin(), want.end());
        const auto got = subcodes_of(cs, c.value);
        if (got != want) {
            CAPTURE(i);
            CAPTURE(c.value);
            REQUIRE(got == want);
        }
    }
}

TEST_CASE("integer canonicalization") {
    CHECK(*parse_integer("-0") == BigInt{false, "0"});
    CHECK(*parse_integer("007") == BigInt{false, "7"});
    CHECK(*parse_integer("+12") == BigInt{false, "12"});
    CHECK(*parse_integer("-00500") == BigInt{true, "500"});
    CHECK(!parse_integer("12a"));
}

TEST_CASE("decimal canonicalization") {
    CHECK(*parse_decimal("-0.0") == BigDec{false, "0", ""});
    CHECK(*parse_decimal("2.50") == BigDec{false, "2", "5"});
    CHECK(*parse_decimal(".5") == BigDec{false, "0", "5"});
    CHECK(*parse_decimal("5.") == BigDec{false, "5", ""});
    CHECK(*parse_decimal("007.100") == BigDec{false, "7", "1"});
}

TEST_CASE("integer comparison is arbitrary precision") {
    CHECK(compare_values(*parse_integer("99999999999999999999"),
                         *parse_integer("100000000000000000000")) == Cmp::Less);
    CHECK(compare_values(*parse_integer("-3"), *parse_integer("2")) == Cmp::Less);
    CHECK(compare_values(*parse_integer("-3"), *parse_integer("-2")) == Cmp::Less);
    CHECK(compare_values(*parse_integer("0"), *parse_integer("-0")) == Cmp::Equal);
}

TEST_CASE("decimal comparison is exact") {
    CHECK(compare_values(*parse_decimal("0.1"), *parse_decimal("0.10")) == Cmp::Equal);
    CHECK(compare_values(*parse_decimal("0.1"), *parse_decimal("0.2")) == Cmp::Less);
    CHECK(compare_values(*parse_decimal("1.05"), *parse_decimal("1.5")) == Cmp::Less);
    CHECK(compare_values(*parse_decimal("-1.5"), *parse_decimal("-1.05")) == Cmp::Less);
    CHECK(compare_values(*parse_decimal("2"), *parse_decimal("1.999999999999999999")) ==
          Cmp::Greater);
    // classic float trap: 0.1 + 0.2 style rounding cannot occur
    CHECK(compare_values(*parse_decimal("0.3"), *parse_decimal("0.30000000000000004")) ==
          Cmp::Less);
}

TEST_CASE("date and dateTime comparison") {
    CHECK(compare_values(*parse_date("2000-01-01"), *parse_date("2000-01-02")) == Cmp::Less);
    CHECK(compare_values(*parse_date("2000-01-01Z"), *parse_date("2000-01-01+01:00")) ==
          Cmp::Greater);  // +01:00 starts an hour earlier
    CHECK(compare_values(*parse_date("2000-01-01Z"), *parse_date("2000-01-01")) ==
          Cmp::Indeterminate);
    CHECK(compare_values(*parse_datetime("2000-01-01T12:00:00Z"),
                         *parse_datetime("2000-01-01T13:00:00+01:00")) == Cmp::Equal);
    CHECK(compare_values(*parse_datetime("2000-01-01T00:00:00.5"),
                         *parse_datetime("2000-01-01T00:00:00.25")) == Cmp::Greater);
    CHECK(compare_values(*parse_datetime("2000-01-01T00:00:00"),
                         *parse_datetime("2000-01-01T00:00:00Z")) == Cmp::Indeterminate);
    CHECK(compare_values(*parse_datetime("1999-12-31T23:00:00-02:00"),
                         *parse_datetime("2000-01-01T01:00:00Z")) == Cmp::Equal);
}

TEST_CASE("calendar helpers") {
    CHECK(is_leap_year(2000));
    CHECK(is_leap_year(1996));
    CHECK(!is_leap_year(1900));
    CHECK(!is_leap_year(2001));
    CHECK(days_from_civil(1970, 1, 1) == 0);
    CHECK(days_from_civil(1970, 1, 2) == 1);
    CHECK(days_from_civil(1969, 12, 31) == -1);
    CHECK(days_from_civil(2000, 3, 1) - days_from_civil(2000, 2, 28) == 2);  // leap day
}

TEST_CASE("whitespace collapse") {
    CHECK(collapse_whitespace("  a \t b\n c  ") == "a b c");
    CHECK(collapse_whitespace("") == "");
    CHECK(collapse_whitespace("   ") == "");
    CHECK(collapse_whitespace("x") == "x");
}

TEST_CASE("facet value errors are schema diagnostics") {
    auto bad_bound = CompiledSimple::compile(
        make_simple(BuiltinKind::Integer, {{FacetKind::MaxInclusive, "five"}}), Limits{});
    REQUIRE(std::holds_alternative<std::vector<Diag>>(bad_bound));
    CHECK(std::get<std::vector<Diag>>(bad_bound)[0].code == Code::SCH006);

    auto bad_len = CompiledSimple::compile(
        make_simple(BuiltinKind::String, {{FacetKind::Length, "-3"}}), Limits{});
    REQUIRE(std::holds_alternative<std::vector<Diag>>(bad_len));
    CHECK(std::get<std::vector<Diag>>(bad_len)[0].code == Code::SCH006);

    auto bad_pattern = CompiledSimple::compile(
        make_simple(BuiltinKind::String, {{FacetKind::Pattern, "(a"}}), Limits{});
    REQUIRE(std::holds_alternative<std::vector<Diag>>(bad_pattern));
    CHECK(std::get<std::vector<Diag>>(bad_pattern)[0].code == Code::PAT001);

    Limits tiny;
    tiny.max_pattern_length = 2;
    auto long_pattern = CompiledSimple::compile(
        make_simple(BuiltinKind::String, {{FacetKind::Pattern, "abcdef"}}), tiny);
    REQUIRE(std::holds_alternative<std::vector<Diag>>(long_pattern));
    CHECK(std::get<std::vector<Diag>>(long_pattern)[0].code == Code::LIM008);

    auto bad_enum = CompiledSimple::compile(
        make_simple(BuiltinKind::Boolean, {{FacetKind::Enumeration, "maybe"}}), Limits{});
    REQUIRE(std::holds_alternative<std::vector<Diag>>(bad_enum));
    CHECK(std::get<std::vector<Diag>>(bad_enum)[0].code == Code::SCH006);
}

TEST_CASE("check is deterministic including violation order") {
    const CompiledSimple cs = compile_ok(
        BuiltinKind::String,
        {{FacetKind::Length, "2"}, {FacetKind::Pattern, "\\d+"}, {FacetKind::MinLength, "5"}});
    auto r1 = cs.check(st("abc"));
    auto r2 = cs.check(st("abc"));
    REQUIRE(std::holds_alternative<std::vector<FacetViolation>>(r1));
    CHECK(std::get<std::vector<FacetViolation>>(r1) ==
          std::get<std::vector<FacetViolation>>(r2));
}

TEST_CASE("canonical value comes back on success") {
    const CompiledSimple cs = compile_ok(BuiltinKind::Integer, {});
    auto r = cs.check(st(" -0042 "));
    REQUIRE(std::holds_alternative<CanonicalValue>(r));
    CHECK(std::get<BigInt>(std::get<CanonicalValue>(r).v) == BigInt{true, "42"});
}
