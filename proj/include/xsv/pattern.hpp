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

#ifndef XSV_PATTERN_HPP
#define XSV_PATTERN_HPP

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "xsv/diagnostics.hpp"
#include "xsv/limits.hpp"
#include "xsv/secure_text.hpp"

namespace xsv {

// Restricted pattern language: literals, '.', a fixed escape set, character
// classes with ranges and negation, grouping, alternation and counted
// repetition with max <= 256. No backreferences or lookaround are
// representable, so matching is linear by construction. Patterns match the
// whole value (XSD semantics); '^' and '$' are ordinary characters.
struct PatternAst;

struct PLiteral {
    char32_t c;
};

struct PClass {
    std::vector<std::pair<char32_t, char32_t>> ranges;
    bool negated = false;
};

struct PSeq {
    std::vector<PatternAst> items;
};

struct PAlt {
    std::vector<PatternAst> items;  // non-empty
};

struct PRep {
    std::shared_ptr<PatternAst> node;
    std::uint32_t min = 0;
    std::optional<std::uint32_t> max;  // absent means unbounded; bounded max <= 256
};

struct PEmpty {};

struct PatternAst {
    std::variant<PLiteral, PClass, PSeq, PAlt, PRep, PEmpty> v;
};

using PatternResult = std::variant<PatternAst, Diag>;

// Parses the subset grammar. PAT001 for syntax errors and unsupported
// features (offset named in the message); LIM008 when the pattern text or
// its counted-repetition expansion exceeds limits.max_pattern_length.
PatternResult parse_pattern(const SecureText& text, const Limits& limits);

// Position-set matcher compiled once per pattern; match() runs in
// O(|value| x positions) with no backtracking.
class CompiledPattern {
public:
    // p must come from parse_pattern with the same limits (the expansion
    // bound is enforced there).
    static CompiledPattern compile(const PatternAst& p);

    bool match(const SecureText& value) const;

    std::size_t position_count() const { return positions_.size(); }

private:
    std::vector<PClass> positions_;        // leaf predicates
    std::vector<std::vector<int>> follow_;  // by position
    std::vector<int> first_;
    std::vector<char> last_;
    bool nullable_ = false;
};

// One-shot convenience over compile + match.
bool match_pattern(const PatternAst& p, const SecureText& value);

}  // namespace xsv

#endif
