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

#ifndef XSV_SIMPLE_HPP
#define XSV_SIMPLE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xsv/pattern.hpp"
#include "xsv/schema.hpp"

namespace xsv {

// Canonical arbitrary-precision integer: no leading zeros, zero is
// non-negative.
struct BigInt {
    bool neg = false;
    std::string digits = "0";

    bool operator==(const BigInt&) const = default;
};

// Canonical decimal: integer digits without leading zeros, fraction
// digits without trailing zeros (empty for whole numbers), zero is
// non-negative.
struct BigDec {
    bool neg = false;
    std::string int_digits = "0";
    std::string frac_digits;

    bool operator==(const BigDec&) const = default;
};

struct DateVal {
    long long year = 1;
    int month = 1;
    int day = 1;
    std::optional<int> tz_minutes;  // offset from UTC; absent = no timezone

    bool operator==(const DateVal&) const = default;
};

struct DateTimeVal {
    long long year = 1;
    int month = 1;
    int day = 1;
    int hour = 0;
    int minute = 0;
    int second = 0;
    std::string frac;  // canonical: trailing zeros trimmed, may be empty
    std::optional<int> tz_minutes;

    bool operator==(const DateTimeVal&) const = default;
};

struct CanonicalValue {
    std::variant<SecureText, bool, BigInt, BigDec, DateVal, DateTimeVal> v;
};

// Lexical parsers per built-in grammar; nullopt on lexical failure.
std::optional<bool> parse_boolean(std::string_view s);
std::optional<BigInt> parse_integer(std::string_view s);
std::optional<BigDec> parse_decimal(std::string_view s);
std::optional<DateVal> parse_date(std::string_view s);
std::optional<DateTimeVal> parse_datetime(std::string_view s);

bool is_leap_year(long long y);

// Proleptic-Gregorian day number, used to normalize timezoned values.
long long days_from_civil(long long y, int m, int d);

enum class Cmp { Less, Equal, Greater, Indeterminate };

Cmp compare_values(const BigInt& a, const BigInt& b);
Cmp compare_values(const BigDec& a, const BigDec& b);
// Timezoned values normalize to UTC; a timezoned/naive mix is
// indeterminate and reported as a violation by the caller.
Cmp compare_values(const DateVal& a, const DateVal& b);
Cmp compare_values(const DateTimeVal& a, const DateTimeVal& b);

// XSD whitespace collapse: TAB/LF/CR to space, trim, squeeze runs.
std::string collapse_whitespace(std::string_view s);

struct FacetViolation {
    std::string subcode;  // "lexical", facet name, or "indeterminate"
    std::string message;

    bool operator==(const FacetViolation&) const = default;
};

// A simple type ready for value checking: facet values parsed into
// canonical form, patterns compiled.
class CompiledSimple {
public:
    using CheckResult = std::variant<CanonicalValue, std::vector<FacetViolation>>;

    // Compiles a flattened simple type. Diagnostics carry the facet
    // location from the schema document.
    static std::variant<CompiledSimple, std::vector<Diag>> compile(const RSimple& s,
                                                                   const Limits& limits);

    // Whitespace handling, lexical parse, then every facet; all
    // violations collected in facet order.
    CheckResult check(const SecureText& value) const;

    BuiltinKind base() const { return base_; }

private:
    BuiltinKind base_ = BuiltinKind::String;
    std::optional<std::uint64_t> length_;
    std::optional<std::uint64_t> min_length_;
    std::optional<std::uint64_t> max_length_;
    std::vector<std::string> enums_;  // whitespace-handled per base
    std::vector<CompiledPattern> patterns_;
    struct Bound {
        FacetKind kind;
        CanonicalValue value;
    };
    std::vector<Bound> bounds_;
};

}  // namespace xsv

#endif
