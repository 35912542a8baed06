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

#include "xsv/simple.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>

namespace xsv {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Strips leading zeros, keeping at least one digit.
std::string_view trim_leading_zeros(std::string_view s) {
    std::size_t i = 0;
    while (i + 1 < s.size() && s[i] == '0') ++i;
    return s.substr(i);
}

std::string_view trim_trailing_zeros(std::string_view s) {
    std::size_t n = s.size();
    while (n > 0 && s[n - 1] == '0') --n;
    return s.substr(0, n);
}

// Compares two digit strings without leading zeros.
Cmp cmp_digits(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return a.size() < b.size() ? Cmp::Less : Cmp::Greater;
    const int r = a.compare(b);
    return r < 0 ? Cmp::Less : r > 0 ? Cmp::Greater : Cmp::Equal;
}

Cmp flip(Cmp c) {
    switch (c) {
        case Cmp::Less: return Cmp::Greater;
        case Cmp::Greater: return Cmp::Less;
        case Cmp::Equal: return Cmp::Equal;
        case Cmp::Indeterminate: return Cmp::Indeterminate;
    }
    return Cmp::Indeterminate;
}

// Parses a fixed-width pair of digits.
bool two_digits(std::string_view s, std::size_t at, int& out) {
    if (at + 2 > s.size()) return false;
    if (s[at] < '0' || s[at] > '9' || s[at + 1] < '0' || s[at + 1] > '9') return false;
    out = (s[at] - '0') * 10 + (s[at + 1] - '0');
    return true;
}

// Parses and removes a trailing timezone: Z or +-HH:MM (|HH| <= 14,
// HH==14 forces MM==0).
bool split_timezone(std::string_view& s, std::optional<int>& tz) {
    tz = std::nullopt;
    if (s.empty()) return true;
    if (s.back() == 'Z') {
        tz = 0;
        s.remove_suffix(1);
        return true;
    }
    if (s.size() >= 6) {
        const std::size_t at = s.size() - 6;
        const char sign = s[at];
        if (sign == '+' || sign == '-') {
            int h = 0, m = 0;
            // A tail that does not form a legal offset is left in place; the
            // civil-part parser then rejects or accepts the whole lexeme
            // (a plain date ends in "-MM-DD", which lands here too).
            if (two_digits(s, at + 1, h) && s[at + 3] == ':' && two_digits(s, at + 4, m) &&
                (h < 14 || (h == 14 && m == 0)) && m <= 59) {
                int v = h * 60 + m;
                if (sign == '-') v = -v;
                tz = v;
                s.remove_suffix(6);
                return true;
            }
        }
    }
    return true;  // no timezone present
}

bool days_in_month(long long y, int m, int& out) {
    static const int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m < 1 || m > 12) return false;
    out = lengths[m - 1];
    if (m == 2 && is_leap_year(y)) out = 29;
    return true;
}

// Parses the YYYY-MM-DD prefix shared by date and dateTime; s must be
// exactly the date portion.
bool parse_civil(std::string_view s, long long& y, int& mo, int& d) {
    bool neg = false;
    if (!s.empty() && s[0] == '-') {
        neg = true;
        s.remove_prefix(1);
    }
    // -MM-DD is 6 chars; at least 4 year digits before it.
    if (s.size() < 10) return false;
    const std::string_view ys = s.substr(0, s.size() - 6);
    if (!all_digits(ys) || ys.size() < 4) return false;
    if (ys.size() > 4 && ys[0] == '0') return false;  // no leading zeros beyond 4 digits
    if (ys.size() > 17) return false;                 // keeps day arithmetic in range
    std::from_chars(ys.data(), ys.data() + ys.size(), y);
    if (neg) y = -y;
    if (y == 0) return false;  // year 0000 has no meaning in XSD 1.0
    const std::size_t at = ys.size();
    if (s[at] != '-' || s[at + 3] != '-') return false;
    if (!two_digits(s, at + 1, mo) || !two_digits(s, at + 4, d)) return false;
    int dim = 0;
    if (!days_in_month(y, mo, dim)) return false;
    if (d < 1 || d > dim) return false;
    return true;
}

}  // namespace

bool is_leap_year(long long y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

long long days_from_civil(long long y, int m, int d) {
    // Howard Hinnant's civil-days algorithm, epoch 1970-01-01.
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const long long yoe = y - era * 400;
    const long long doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const long long doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

std::optional<bool> parse_boolean(std::string_view s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    return std::nullopt;
}

std::optional<BigInt> parse_integer(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) return std::nullopt;
    BigInt v;
    v.digits = std::string(trim_leading_zeros(s));
    v.neg = neg && v.digits != "0";
    return v;
}

std::optional<BigDec> parse_decimal(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) return std::nullopt;
    const auto dot = s.find('.');
    std::string_view ip, fp;
    if (dot == std::string_view::npos) {
        ip = s;
    } else {
        ip = s.substr(0, dot);
        fp = s.substr(dot + 1);
        if (s.find('.', dot + 1) != std::string_view::npos) return std::nullopt;
    }
    if (ip.empty() && fp.empty()) return std::nullopt;
    if (!ip.empty() && !all_digits(ip)) return std::nullopt;
    if (!fp.empty() && !all_digits(fp)) return std::nullopt;
    BigDec v;
    v.int_digits = ip.empty() ? "0" : std::string(trim_leading_zeros(ip));
    v.frac_digits = std::string(trim_trailing_zeros(fp));
    v.neg = neg && !(v.int_digits == "0" && v.frac_digits.empty());
    return v;
}

std::optional<DateVal> parse_date(std::string_view s) {
    std::optional<int> tz;
    if (!split_timezone(s, tz)) return std::nullopt;
    DateVal v;
    if (!parse_civil(s, v.year, v.month, v.day)) return std::nullopt;
    v.tz_minutes = tz;
    return v;
}

std::optional<DateTimeVal> parse_datetime(std::string_view s) {
    std::optional<int> tz;
    if (!split_timezone(s, tz)) return std::nullopt;
    const auto t = s.find('T');
    if (t == std::string_view::npos) return std::nullopt;
    DateTimeVal v;
    if (!parse_civil(s.substr(0, t), v.year, v.month, v.day)) return std::nullopt;
    std::string_view time = s.substr(t + 1);
    if (time.size() < 8) return std::nullopt;
    if (!two_digits(time, 0, v.hour) || time[2] != ':' || !two_digits(time, 3, v.minute) ||
        time[5] != ':' || !two_digits(time, 6, v.second)) {
        return std::nullopt;
    }
    if (v.hour > 23 || v.minute > 59 || v.second > 59) return std::nullopt;
    if (time.size() > 8) {
        if (time[8] != '.') return std::nullopt;
        const std::string_view frac = time.substr(9);
        if (!all_digits(frac)) return std::nullopt;
        v.frac = std::string(trim_trailing_zeros(frac));
    }
    v.tz_minutes = tz;
    return v;
}

Cmp compare_values(const BigInt& a, const BigInt& b) {
    if (a.neg != b.neg) return a.neg ? Cmp::Less : Cmp::Greater;
    const Cmp mag = cmp_digits(a.digits, b.digits);
    return a.neg ? flip(mag) : mag;
}

Cmp compare_values(const BigDec& a, const BigDec& b) {
    if (a.neg != b.neg) return a.neg ? Cmp::Less : Cmp::Greater;
    Cmp mag = cmp_digits(a.int_digits, b.int_digits);
    if (mag == Cmp::Equal) {
        // Fractions compare lexicographically once padded to one length;
        // canonical trimming makes the shorter one the smaller on ties.
        const std::size_t n = std::max(a.frac_digits.size(), b.frac_digits.size());
        std::string fa = a.frac_digits, fb = b.frac_digits;
        fa.resize(n, '0');
        fb.resize(n, '0');
        const int r = fa.compare(fb);
        mag = r < 0 ? Cmp::Less : r > 0 ? Cmp::Greater : Cmp::Equal;
    }
    return a.neg ? flip(mag) : mag;
}

namespace {

// Instant of a date value: days and minutes with the timezone folded in.
// Only meaningful when both operands carry a timezone, or neither does.
std::pair<long long, long long> date_instant(const DateVal& v) {
    long long minutes = 0;
    if (v.tz_minutes) minutes -= *v.tz_minutes;
    return {days_from_civil(v.year, v.month, v.day), minutes};
}

}  // namespace

Cmp compare_values(const DateVal& a, const DateVal& b) {
    if (a.tz_minutes.has_value() != b.tz_minutes.has_value()) return Cmp::Indeterminate;
    const auto [da, ma] = date_instant(a);
    const auto [db, mb] = date_instant(b);
    const long long ta = da * 1440 + ma;
    const long long tb = db * 1440 + mb;
    if (ta != tb) return ta < tb ? Cmp::Less : Cmp::Greater;
    return Cmp::Equal;
}

Cmp compare_values(const DateTimeVal& a, const DateTimeVal& b) {
    if (a.tz_minutes.has_value() != b.tz_minutes.has_value()) return Cmp::Indeterminate;
    auto seconds = [](const DateTimeVal& v) {
        long long s = days_from_civil(v.year, v.month, v.day) * 86400ll;
        s += v.hour * 3600ll + v.minute * 60ll + v.second;
        if (v.tz_minutes) s -= *v.tz_minutes * 60ll;
        return s;
    };
    const long long sa = seconds(a), sb = seconds(b);
    if (sa != sb) return sa < sb ? Cmp::Less : Cmp::Greater;
    // Same whole second: canonical fractions compare lexicographically
    // after padding.
    const std::size_t n = std::max(a.frac.size(), b.frac.size());
    std::string fa = a.frac, fb = b.frac;
    fa.resize(n, '0');
    fb.resize(n, '0');
    const int r = fa.compare(fb);
    return r < 0 ? Cmp::Less : r > 0 ? Cmp::Greater : Cmp::Equal;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += c;
    }
    return out;
}

// --- CompiledSimple -------------------------------------------------------

namespace {

bool parses_as(BuiltinKind base, std::string_view text, CanonicalValue& out) {
    switch (base) {
        case BuiltinKind::String:
        case BuiltinKind::Token:
        case BuiltinKind::AnyUri:
            out.v = SecureText::from_validated_utf8(std::string(text));
            return true;
        case BuiltinKind::Boolean: {
            const auto b = parse_boolean(text);
            if (!b) return false;
            out.v = *b;
            return true;
        }
        case BuiltinKind::Integer: {
            auto i = parse_integer(text);
            if (!i) return false;
            out.v = std::move(*i);
            return true;
        }
        case BuiltinKind::Decimal: {
            auto d = parse_decimal(text);
            if (!d) return false;
            out.v = std::move(*d);
            return true;
        }
        case BuiltinKind::Date: {
            auto d = parse_date(text);
            if (!d) return false;
            out.v = *d;
            return true;
        }
        case BuiltinKind::DateTime: {
            auto d = parse_datetime(text);
            if (!d) return false;
            out.v = *d;
            return true;
        }
    }
    return false;
}

// Ordering between a value and a bound of the same base kind. The caller
// guarantees the variants line up (both parsed with the same base).
Cmp compare_canonical(const CanonicalValue& a, const CanonicalValue& b) {
    if (const auto* x = std::get_if<BigInt>(&a.v)) {
        return compare_values(*x, std::get<BigInt>(b.v));
    }
    if (const auto* x = std::get_if<BigDec>(&a.v)) {
        return compare_values(*x, std::get<BigDec>(b.v));
    }
    if (const auto* x = std::get_if<DateVal>(&a.v)) {
        return compare_values(*x, std::get<DateVal>(b.v));
    }
    if (const auto* x = std::get_if<DateTimeVal>(&a.v)) {
        return compare_values(*x, std::get<DateTimeVal>(b.v));
    }
    assert(false && "bounds only exist on ordered bases");
    return Cmp::Indeterminate;
}

}  // namespace

std::variant<CompiledSimple, std::vector<Diag>> CompiledSimple::compile(const RSimple& s,
                                                                        const Limits& limits) {
    CompiledSimple cs;
    cs.base_ = s.base;
    std::vector<Diag> diags;
    for (const auto& f : s.facets) {
        switch (f.kind) {
            case FacetKind::Length:
            case FacetKind::MinLength:
            case FacetKind::MaxLength: {
                std::uint64_t n = 0;
                const std::string_view v = f.value.bytes();
                const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
                if (ec != std::errc() || p != v.data() + v.size()) {
                    diags.push_back(Diag{Code::SCH006, f.line, f.col, "/",
                                         std::string(facet_name(f.kind)) +
                                             " requires a non-negative integer value"});
                    break;
                }
                if (f.kind == FacetKind::Length) cs.length_ = n;
                if (f.kind == FacetKind::MinLength) cs.min_length_ = n;
                if (f.kind == FacetKind::MaxLength) cs.max_length_ = n;
                break;
            }
            case FacetKind::Pattern: {
                auto r = parse_pattern(f.value, limits);
                if (auto* d = std::get_if<Diag>(&r)) {
                    d->line = f.line;
                    d->col = f.col;
                    diags.push_back(std::move(*d));
                    break;
                }
                cs.patterns_.push_back(CompiledPattern::compile(std::get<PatternAst>(r)));
                break;
            }
            case FacetKind::Enumeration: {
                // Symmetric whitespace handling with the instance side.
                const std::string text = s.base == BuiltinKind::String
                                             ? std::string(f.value.bytes())
                                             : collapse_whitespace(f.value.bytes());
                CanonicalValue ignored;
                if (!parses_as(s.base, text, ignored)) {
                    diags.push_back(Diag{Code::SCH006, f.line, f.col, "/",
                                         "enumeration value is not in the lexical space of " +
                                             std::string(builtin_name(s.base))});
                    break;
                }
                cs.enums_.push_back(text);
                break;
            }
            case FacetKind::MinInclusive:
            case FacetKind::MaxInclusive:
            case FacetKind::MinExclusive:
            case FacetKind::MaxExclusive: {
                const std::string text = collapse_whitespace(f.value.bytes());
                CanonicalValue bound;
                if (!parses_as(s.base, text, bound)) {
                    diags.push_back(Diag{Code::SCH006, f.line, f.col, "/",
                                         std::string(facet_name(f.kind)) +
                                             " value is not in the lexical space of " +
                                             std::string(builtin_name(s.base))});
                    break;
                }
                cs.bounds_.push_back(Bound{f.kind, std::move(bound)});
                break;
            }
        }
    }
    if (!diags.empty()) return diags;
    return cs;
}

CompiledSimple::CheckResult CompiledSimple::check(const SecureText& value) const {
    const std::string text = base_ == BuiltinKind::String
                                 ? std::string(value.bytes())
                                 : collapse_whitespace(value.bytes());
    std::vector<FacetViolation> violations;
    CanonicalValue canon;
    if (!parses_as(base_, text, canon)) {
        violations.push_back(FacetViolation{
            "lexical", "value is not in the lexical space of " + std::string(builtin_name(base_))});
        return violations;
    }
    const SecureText handled = SecureText::from_validated_utf8(text);
    const std::uint64_t n = handled.scalar_count();
    if (length_ && n != *length_) {
        violations.push_back(
            FacetViolation{"length", "length " + std::to_string(n) + " does not equal " +
                                         std::to_string(*length_)});
    }
    if (min_length_ && n < *min_length_) {
        violations.push_back(
            FacetViolation{"minLength", "length " + std::to_string(n) + " is below " +
                                            std::to_string(*min_length_)});
    }
    if (max_length_ && n > *max_length_) {
        violations.push_back(
            FacetViolation{"maxLength", "length " + std::to_string(n) + " exceeds " +
                                            std::to_string(*max_length_)});
    }
    if (!enums_.empty() &&
        std::find(enums_.begin(), enums_.end(), text) == enums_.end()) {
        violations.push_back(FacetViolation{"enumeration", "value is not among the enumerated values"});
    }
    for (const auto& p : patterns_) {
        if (!p.match(handled)) {
            violations.push_back(FacetViolation{"pattern", "value does not match the pattern facet"});
        }
    }
    for (const auto& b : bounds_) {
        const Cmp c = compare_canonical(canon, b.value);
        if (c == Cmp::Indeterminate) {
            violations.push_back(FacetViolation{
                "indeterminate",
                std::string("comparison with ") + facet_name(b.kind) +
                    " is indeterminate (timezoned versus naive value)"});
            continue;
        }
        bool ok = true;
        switch (b.kind) {
            case FacetKind::MinInclusive: ok = c != Cmp::Less; break;
            case FacetKind::MaxInclusive: ok = c != Cmp::Greater; break;
            case FacetKind::MinExclusive: ok = c == Cmp::Greater; break;
            case FacetKind::MaxExclusive: ok = c == Cmp::Less; break;
            case FacetKind::Length:
            case FacetKind::MinLength:
            case FacetKind::MaxLength:
            case FacetKind::Pattern:
            case FacetKind::Enumeration:
                break;  // not bounds; never stored in bounds_
        }
        if (!ok) {
            violations.push_back(FacetViolation{
                facet_name(b.kind), std::string("value violates ") + facet_name(b.kind)});
        }
    }
    if (!violations.empty()) return violations;
    return canon;
}

}  // namespace xsv
