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

#include "xsv/pattern.hpp"

#include <algorithm>
#include <cassert>

namespace xsv {

namespace {

constexpr std::uint32_t kMaxRep = 256;

struct ParseError {
    std::string message;
    std::size_t offset;  // scalar offset into the pattern
    Code code = Code::PAT001;
};

class PatternParser {
public:
    PatternParser(std::u32string scalars, const Limits& limits)
        : s_(std::move(scalars)), lim_(limits) {}

    std::variant<PatternAst, ParseError> run() {
        auto ast = alternation();
        if (err_) return *err_;
        if (pos_ != s_.size()) {
            return ParseError{"unexpected character", pos_};
        }
        return ast;
    }

private:
    std::u32string s_;
    const Limits& lim_;
    std::size_t pos_ = 0;
    std::optional<ParseError> err_;

    bool eof() const { return pos_ >= s_.size(); }
    char32_t peek() const { return s_[pos_]; }

    PatternAst fail(std::string msg) {
        if (!err_) err_ = ParseError{std::move(msg), pos_};
        return PatternAst{PEmpty{}};
    }

    PatternAst alternation() {
        std::vector<PatternAst> branches;
        branches.push_back(sequence());
        while (!eof() && peek() == '|' && !err_) {
            ++pos_;
            branches.push_back(sequence());
        }
        if (branches.size() == 1) return std::move(branches[0]);
        return PatternAst{PAlt{std::move(branches)}};
    }

    PatternAst sequence() {
        std::vector<PatternAst> items;
        while (!eof() && peek() != '|' && peek() != ')' && !err_) {
            items.push_back(repeated());
        }
        if (items.empty()) return PatternAst{PEmpty{}};
        if (items.size() == 1) return std::move(items[0]);
        return PatternAst{PSeq{std::move(items)}};
    }

    PatternAst repeated() {
        PatternAst a = atom();
        if (err_ || eof()) return a;
        const char32_t c = peek();
        std::uint32_t min = 0;
        std::optional<std::uint32_t> max;
        if (c == '?') {
            ++pos_;
            min = 0;
            max = 1;
        } else if (c == '*') {
            ++pos_;
            min = 0;
        } else if (c == '+') {
            ++pos_;
            min = 1;
        } else if (c == '{') {
            ++pos_;
            if (!counted(min, max)) return a;
        } else {
            return a;
        }
        if (!eof() && (peek() == '?' || peek() == '*' || peek() == '+')) {
            return fail("nested quantifier requires grouping");
        }
        return PatternAst{PRep{std::make_shared<PatternAst>(std::move(a)), min, max}};
    }

    bool counted(std::uint32_t& min, std::optional<std::uint32_t>& max) {
        if (!digits(min)) {
            fail("expected a number in counted repetition");
            return false;
        }
        if (!eof() && peek() == ',') {
            ++pos_;
            if (!eof() && peek() == '}') {
                max = std::nullopt;  // {n,}
            } else {
                std::uint32_t m = 0;
                if (!digits(m)) {
                    fail("expected a number in counted repetition");
                    return false;
                }
                if (m < min) {
                    fail("repetition maximum is below minimum");
                    return false;
                }
                max = m;
            }
        } else {
            max = min;
        }
        if (eof() || peek() != '}') {
            fail("unterminated counted repetition");
            return false;
        }
        ++pos_;
        if (min > kMaxRep || (max && *max > kMaxRep)) {
            fail("counted repetition exceeds the maximum of 256");
            return false;
        }
        return true;
    }

    bool digits(std::uint32_t& out) {
        if (eof() || peek() < '0' || peek() > '9') return false;
        std::uint64_t v = 0;
        while (!eof() && peek() >= '0' && peek() <= '9') {
            v = v * 10 + (peek() - '0');
            if (v > 1'000'000) v = 1'000'000;  // clamp; bound check follows
            ++pos_;
        }
        out = static_cast<std::uint32_t>(v);
        return true;
    }

    PatternAst atom() {
        if (eof()) return fail("expected an atom");
        const char32_t c = peek();
        switch (c) {
            case '(': {
                ++pos_;
                PatternAst inner = alternation();
                if (err_) return inner;
                if (eof() || peek() != ')') return fail("unterminated group");
                ++pos_;
                return inner;
            }
            case ')':
            case '*':
            case '+':
            case '?':
            case '{':
            case '}':
            case ']':
            case '|':
                return fail("metacharacter requires an escape here");
            case '[':
                return char_class();
            case '.':
                ++pos_;
                // Any XML Char except the two line terminators.
                return PatternAst{PClass{{{0xA, 0xA}, {0xD, 0xD}}, true}};
            case '\\':
                return escape(false);
            default:
                ++pos_;
                return PatternAst{PLiteral{c}};
        }
    }

    // Shared single-character and multi-character escapes. Inside a class,
    // multi-character escapes contribute their ranges.
    PatternAst escape(bool in_class) {
        ++pos_;  // backslash
        if (eof()) return fail("dangling escape");
        const char32_t c = peek();
        ++pos_;
        switch (c) {
            case 'n': return PatternAst{PLiteral{0xA}};
            case 't': return PatternAst{PLiteral{0x9}};
            case '\\':
            case '.':
            case '-':
            case '[':
            case ']':
            case '(':
            case ')':
            case '*':
            case '+':
            case '?':
            case '{':
            case '}':
            case '|':
                return PatternAst{PLiteral{c}};
            case 'd':
                return PatternAst{PClass{{{'0', '9'}}, false}};
            case 'w':
                return PatternAst{PClass{{{'0', '9'}, {'A', 'Z'}, {'_', '_'}, {'a', 'z'}}, false}};
            case 's':
                return PatternAst{PClass{{{0x9, 0xA}, {0xD, 0xD}, {0x20, 0x20}}, false}};
            default:
                --pos_;
                (void)in_class;
                return fail("unsupported escape");
        }
    }

    PatternAst char_class() {
        ++pos_;  // [
        PClass cls;
        if (!eof() && peek() == '^') {
            cls.negated = true;
            ++pos_;
        }
        bool any = false;
        while (!eof() && peek() != ']') {
            char32_t lo;
            if (peek() == '\\') {
                PatternAst e = escape(true);
                if (err_) return e;
                if (const auto* lit = std::get_if<PLiteral>(&e.v)) {
                    lo = lit->c;
                } else {
                    // \d \w \s contribute their ranges; no range operator on them.
                    const auto& sub = std::get<PClass>(e.v);
                    cls.ranges.insert(cls.ranges.end(), sub.ranges.begin(), sub.ranges.end());
                    any = true;
                    continue;
                }
            } else if (peek() == '[') {
                return fail("'[' inside a character class requires an escape");
            } else {
                lo = peek();
                ++pos_;
            }
            // Range when a '-' follows and is not the closing position.
            if (!eof() && peek() == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] != ']') {
                ++pos_;
                char32_t hi;
                if (peek() == '\\') {
                    PatternAst e = escape(true);
                    if (err_) return e;
                    const auto* lit = std::get_if<PLiteral>(&e.v);
                    if (!lit) return fail("range endpoint must be a single character");
                    hi = lit->c;
                } else {
                    hi = peek();
                    ++pos_;
                }
                if (hi < lo) return fail("character range is reversed");
                cls.ranges.emplace_back(lo, hi);
            } else {
                cls.ranges.emplace_back(lo, lo);
            }
            any = true;
        }
        if (eof()) return fail("unterminated character class");
        ++pos_;  // ]
        if (!any) return fail("empty character class");
        std::sort(cls.ranges.begin(), cls.ranges.end());
        return PatternAst{std::move(cls)};
    }
};

// Expanded leaf count after counted repetitions are unrolled; saturating.
constexpr std::uint64_t kCap = 1ull << 40;

std::uint64_t expanded_positions(const PatternAst& p) {
    struct V {
        std::uint64_t operator()(const PLiteral&) const { return 1; }
        std::uint64_t operator()(const PClass&) const { return 1; }
        std::uint64_t operator()(const PEmpty&) const { return 0; }
        std::uint64_t operator()(const PSeq& s) const {
            std::uint64_t n = 0;
            for (const auto& c : s.items) n = std::min(kCap, n + expanded_positions(c));
            return n;
        }
        std::uint64_t operator()(const PAlt& a) const {
            std::uint64_t n = 0;
            for (const auto& c : a.items) n = std::min(kCap, n + expanded_positions(c));
            return n;
        }
        std::uint64_t operator()(const PRep& r) const {
            const std::uint64_t inner = expanded_positions(*r.node);
            const std::uint64_t copies =
                r.max ? std::max<std::uint64_t>(*r.max, 1) : std::max<std::uint64_t>(r.min, 1);
            return std::min(kCap, inner * copies);
        }
    };
    return std::visit(V{}, p.v);
}

// Normalized form for the position construction: repetitions unrolled to
// mandatory copies plus Opt/Star tails.
struct NNode {
    enum class Kind { Leaf, Seq, Alt, Opt, Star, Eps };
    Kind kind = Kind::Eps;
    PClass leaf;             // Leaf: predicate (literal lowered to a 1-range class)
    int leaf_pos = -1;       // assigned after the tree is built
    std::vector<NNode> children;
};

NNode normalize(const PatternAst& p) {
    struct V {
        NNode operator()(const PLiteral& l) const {
            NNode n;
            n.kind = NNode::Kind::Leaf;
            n.leaf = PClass{{{l.c, l.c}}, false};
            return n;
        }
        NNode operator()(const PClass& c) const {
            NNode n;
            n.kind = NNode::Kind::Leaf;
            n.leaf = c;
            return n;
        }
        NNode operator()(const PEmpty&) const { return NNode{}; }
        NNode operator()(const PSeq& s) const {
            NNode n;
            n.kind = NNode::Kind::Seq;
            for (const auto& c : s.items) n.children.push_back(normalize(c));
            return n;
        }
        NNode operator()(const PAlt& a) const {
            NNode n;
            n.kind = NNode::Kind::Alt;
            for (const auto& c : a.items) n.children.push_back(normalize(c));
            return n;
        }
        NNode operator()(const PRep& r) const {
            const NNode inner = normalize(*r.node);
            NNode seq;
            seq.kind = NNode::Kind::Seq;
            for (std::uint32_t i = 0; i < r.min; ++i) seq.children.push_back(inner);
            if (!r.max) {
                NNode star;
                star.kind = NNode::Kind::Star;
                star.children.push_back(inner);
                seq.children.push_back(std::move(star));
            } else {
                for (std::uint32_t i = r.min; i < *r.max; ++i) {
                    NNode opt;
                    opt.kind = NNode::Kind::Opt;
                    opt.children.push_back(inner);
                    seq.children.push_back(std::move(opt));
                }
            }
            if (seq.children.size() == 1) return std::move(seq.children[0]);
            return seq;
        }
    };
    return std::visit(V{}, p.v);
}

void assign_positions(NNode& n, std::vector<PClass>& positions) {
    if (n.kind == NNode::Kind::Leaf) {
        n.leaf_pos = static_cast<int>(positions.size());
        positions.push_back(n.leaf);
        return;
    }
    for (auto& c : n.children) assign_positions(c, positions);
}

struct Glushkov {
    bool nullable = false;
    std::vector<int> first;
    std::vector<int> last;
};

void merge(std::vector<int>& into, const std::vector<int>& from) {
    into.insert(into.end(), from.begin(), from.end());
}

Glushkov analyze(const NNode& n, std::vector<std::vector<int>>& follow) {
    Glushkov g;
    switch (n.kind) {
        case NNode::Kind::Eps:
            g.nullable = true;
            return g;
        case NNode::Kind::Leaf:
            g.first = {n.leaf_pos};
            g.last = {n.leaf_pos};
            return g;
        case NNode::Kind::Alt: {
            for (const auto& c : n.children) {
                Glushkov cg = analyze(c, follow);
                g.nullable = g.nullable || cg.nullable;
                merge(g.first, cg.first);
                merge(g.last, cg.last);
            }
            return g;
        }
        case NNode::Kind::Seq: {
            g.nullable = true;
            std::vector<int> open_last;  // lasts that can still precede the next child
            for (const auto& c : n.children) {
                Glushkov cg = analyze(c, follow);
                for (int p : open_last) merge(follow[p], cg.first);
                if (g.nullable) merge(g.first, cg.first);
                if (cg.nullable) {
                    merge(open_last, cg.last);
                } else {
                    open_last = cg.last;
                }
                g.nullable = g.nullable && cg.nullable;
            }
            g.last = open_last;
            return g;
        }
        case NNode::Kind::Opt: {
            g = analyze(n.children[0], follow);
            g.nullable = true;
            return g;
        }
        case NNode::Kind::Star: {
            g = analyze(n.children[0], follow);
            g.nullable = true;
            for (int p : g.last) merge(follow[p], g.first);
            return g;
        }
    }
    return g;
}

bool class_match(const PClass& c, char32_t ch) {
    bool in = false;
    for (const auto& [lo, hi] : c.ranges) {
        if (ch >= lo && ch <= hi) {
            in = true;
            break;
        }
    }
    return c.negated ? !in : in;
}

}  // namespace

PatternResult parse_pattern(const SecureText& text, const Limits& limits) {
    if (text.byte_length() > limits.max_pattern_length) {
        return Diag{Code::LIM008, 1, 1, "/", "pattern length exceeds max_pattern_length"};
    }
    PatternParser parser(text.scalars(), limits);
    auto r = parser.run();
    if (const auto* e = std::get_if<ParseError>(&r)) {
        return Diag{Code::PAT001, 1, 1, "/",
                    e->message + " (pattern offset " + std::to_string(e->offset) + ")"};
    }
    auto ast = std::get<PatternAst>(std::move(r));
    if (expanded_positions(ast) > limits.max_pattern_length) {
        return Diag{Code::LIM008, 1, 1, "/",
                    "counted-repetition expansion exceeds max_pattern_length positions"};
    }
    return ast;
}

CompiledPattern CompiledPattern::compile(const PatternAst& p) {
    CompiledPattern cp;
    NNode root = normalize(p);
    assign_positions(root, cp.positions_);
    cp.follow_.assign(cp.positions_.size(), {});
    Glushkov g = analyze(root, cp.follow_);
    cp.nullable_ = g.nullable;
    cp.first_ = std::move(g.first);
    cp.last_.assign(cp.positions_.size(), 0);
    for (int p2 : g.last) cp.last_[p2] = 1;
    // Dedupe follow sets so the simulation does linear work per edge.
    for (auto& f : cp.follow_) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
    }
    std::sort(cp.first_.begin(), cp.first_.end());
    cp.first_.erase(std::unique(cp.first_.begin(), cp.first_.end()), cp.first_.end());
    return cp;
}

bool CompiledPattern::match(const SecureText& value) const {
    const std::string_view bytes = value.bytes();
    if (bytes.empty()) return nullable_;
    std::vector<char> active(positions_.size(), 0);
    std::vector<char> next(positions_.size(), 0);
    std::vector<int> active_list;
    bool started = false;
    std::size_t i = 0;
    while (i < bytes.size()) {
        const char32_t ch = next_scalar(bytes, i);
        std::fill(next.begin(), next.end(), 0);
        std::vector<int> next_list;
        auto offer = [&](int p) {
            if (!next[p] && class_match(positions_[p], ch)) {
                next[p] = 1;
                next_list.push_back(p);
            }
        };
        if (!started) {
            for (int p : first_) offer(p);
            started = true;
        } else {
            for (int p : active_list) {
                for (int q : follow_[p]) offer(q);
            }
        }
        active.swap(next);
        active_list.swap(next_list);
        if (active_list.empty()) return false;
    }
    for (int p : active_list) {
        if (last_[p]) return true;
    }
    return false;
}

bool match_pattern(const PatternAst& p, const SecureText& value) {
    return CompiledPattern::compile(p).match(value);
}

}  // namespace xsv
