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

#include "xsv/compile.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace xsv {

namespace {

constexpr std::uint64_t kCountCap = 1ull << 40;
constexpr std::size_t kMaxAllMembers = 16;

std::uint64_t occurs_multiplier(const Occurs& oc) {
    // m mandatory copies plus either n-m optional copies or one starred copy.
    return oc.max ? *oc.max : oc.min + 1;
}

}  // namespace

std::uint64_t expanded_position_count(const RParticle& p) {
    std::uint64_t body = 0;
    if (std::holds_alternative<RElem>(p.v)) {
        body = 1;
    } else if (const auto* seq = std::get_if<RSeq>(&p.v)) {
        for (const auto& c : seq->children) {
            body = std::min(kCountCap, body + expanded_position_count(c));
        }
    } else if (const auto* ch = std::get_if<RChoice>(&p.v)) {
        for (const auto& c : ch->children) {
            body = std::min(kCountCap, body + expanded_position_count(c));
        }
    } else {
        body = std::get<RAll>(p.v).members.size();
    }
    const std::uint64_t mult = std::max<std::uint64_t>(occurs_multiplier(p.occurs), 1);
    if (body == 0) return 0;
    if (body > kCountCap / mult) return kCountCap;
    return body * mult;
}

namespace {

NormParticle wrap_occurs(NormParticle base, const Occurs& oc) {
    if (oc.min == 1 && oc.max && *oc.max == 1) return base;
    if (oc.min == 0 && oc.max && *oc.max == 1) {
        return NormParticle{NOpt{{std::move(base)}}};
    }
    if (oc.min == 0 && !oc.max) {
        return NormParticle{NStar{{std::move(base)}}};
    }
    NSeq seq;
    for (std::uint64_t i = 0; i < oc.min; ++i) seq.children.push_back(base);
    if (!oc.max) {
        seq.children.push_back(NormParticle{NStar{{std::move(base)}}});
    } else {
        for (std::uint64_t i = oc.min; i < *oc.max; ++i) {
            seq.children.push_back(NormParticle{NOpt{{base}}});
        }
    }
    if (seq.children.size() == 1) return std::move(seq.children[0]);
    return NormParticle{std::move(seq)};
}

}  // namespace

NormParticle normalize_occurs(const RParticle& p) {
    NormParticle base;
    if (const auto* e = std::get_if<RElem>(&p.v)) {
        base.v = NElem{e->local, e->type_index, e->source_id, e->line, e->col};
    } else if (const auto* seq = std::get_if<RSeq>(&p.v)) {
        NSeq ns;
        for (const auto& c : seq->children) ns.children.push_back(normalize_occurs(c));
        base.v = std::move(ns);
    } else if (const auto* ch = std::get_if<RChoice>(&p.v)) {
        NChoice nc;
        for (const auto& c : ch->children) nc.children.push_back(normalize_occurs(c));
        base.v = std::move(nc);
    } else {
        assert(false && "xs:all groups compile to AllGroup, not to an automaton");
    }
    return wrap_occurs(std::move(base), p.occurs);
}

namespace {

struct Gl {
    bool nullable = false;
    std::vector<int> first;
    std::vector<int> last;
};

void merge(std::vector<int>& into, const std::vector<int>& from) {
    into.insert(into.end(), from.begin(), from.end());
}

Gl analyze(const NormParticle& n, PositionMachine& m) {
    Gl g;
    if (const auto* e = std::get_if<NElem>(&n.v)) {
        const int pos = static_cast<int>(m.positions.size());
        m.positions.push_back(*e);
        m.follow.emplace_back();
        g.first = {pos};
        g.last = {pos};
        return g;
    }
    if (const auto* seq = std::get_if<NSeq>(&n.v)) {
        g.nullable = true;
        std::vector<int> open_last;
        for (const auto& c : seq->children) {
            Gl cg = analyze(c, m);
            for (int p : open_last) merge(m.follow[p], cg.first);
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
    if (const auto* ch = std::get_if<NChoice>(&n.v)) {
        for (const auto& c : ch->children) {
            Gl cg = analyze(c, m);
            g.nullable = g.nullable || cg.nullable;
            merge(g.first, cg.first);
            merge(g.last, cg.last);
        }
        return g;
    }
    if (const auto* opt = std::get_if<NOpt>(&n.v)) {
        g = analyze(opt->children.front(), m);
        g.nullable = true;
        return g;
    }
    const auto& star = std::get<NStar>(n.v);
    g = analyze(star.children.front(), m);
    g.nullable = true;
    for (int p : g.last) merge(m.follow[p], g.first);
    return g;
}

void dedupe(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

PositionMachine build_position_machine(const NormParticle& p) {
    PositionMachine m;
    Gl g = analyze(p, m);
    m.nullable = g.nullable;
    m.first = std::move(g.first);
    dedupe(m.first);
    for (auto& f : m.follow) dedupe(f);
    m.last.assign(m.positions.size(), 0);
    for (int p2 : g.last) m.last[p2] = 1;
    return m;
}

std::optional<Diag> check_upa(const PositionMachine& m) {
    // A state's offer set: first for the start state, follow(p) for
    // position p. Two offered positions with the same symbol but distinct
    // source particles break unique attribution.
    auto scan = [&](const std::vector<int>& offers) -> std::optional<Diag> {
        for (std::size_t i = 0; i < offers.size(); ++i) {
            for (std::size_t j = i + 1; j < offers.size(); ++j) {
                const NElem& a = m.positions[offers[i]];
                const NElem& b = m.positions[offers[j]];
                if (a.local == b.local && a.source_id != b.source_id) {
                    return Diag{Code::SCH004, a.line, a.col, "/",
                                "content model violates unique particle attribution on element '" +
                                    a.local + "' (competing particle at " + std::to_string(b.line) +
                                    ":" + std::to_string(b.col) + ")"};
                }
            }
        }
        return std::nullopt;
    };
    if (auto d = scan(m.first)) return d;
    for (const auto& f : m.follow) {
        if (auto d = scan(f)) return d;
    }
    return std::nullopt;
}

std::vector<std::string> ContentAutomaton::expected_symbols(int state) const {
    std::vector<std::string> out;
    for (const auto& [sym, tgt] : transitions[state]) {
        (void)tgt;
        out.push_back(sym);
    }
    return out;
}

std::variant<ContentAutomaton, Diag> glushkov_compile(const NormParticle& p,
                                                      const Limits& limits) {
    PositionMachine m = build_position_machine(p);
    if (m.positions.size() + 1 > limits.max_automaton_states) {
        return Diag{Code::LIM006, 1, 1, "/",
                    "content automaton size exceeds max_automaton_states"};
    }
    // Determinize over sets of positions. Attribution stays unique: in a
    // UPA-clean model every symbol offered by a state comes from one
    // source particle, so the target type is unambiguous even when
    // occurrence-expansion copies of that particle overlap (e.g. the
    // third 'a' of (a{2,3})* may extend the current iteration or start
    // the next one, and both continuations must stay live).
    auto offers_of = [&](const std::vector<int>& state) {
        std::map<std::string, std::vector<int>> by_sym;
        if (state.empty()) {  // the start state
            for (int q : m.first) by_sym[m.positions[q].local].push_back(q);
        } else {
            for (int q : state) {
                for (int f : m.follow[q]) by_sym[m.positions[f].local].push_back(f);
            }
        }
        for (auto& [sym, ps] : by_sym) {
            (void)sym;
            std::sort(ps.begin(), ps.end());
            ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        }
        return by_sym;
    };

    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> states;
    ids.emplace(std::vector<int>{}, 0);
    states.push_back({});
    ContentAutomaton a;
    a.transitions.emplace_back();
    a.accepting.push_back(m.nullable ? 1 : 0);
    for (std::size_t s = 0; s < states.size(); ++s) {
        for (auto& [sym, ps] : offers_of(states[s])) {
            auto [it, inserted] = ids.emplace(ps, static_cast<int>(states.size()));
            if (inserted) {
                if (states.size() + 1 > limits.max_automaton_states) {
                    return Diag{Code::LIM006, 1, 1, "/",
                                "content automaton size exceeds max_automaton_states"};
                }
                states.push_back(ps);
                a.transitions.emplace_back();
                bool acc = false;
                for (int q : ps) acc = acc || m.last[q];
                a.accepting.push_back(acc ? 1 : 0);
            }
            a.transitions[s].emplace(
                sym,
                ContentAutomaton::Target{it->second, m.positions[ps.front()].type_index});
        }
    }
    return a;
}

namespace {

struct TypeCompiler {
    const ResolvedSchema& rs;
    const Limits& lim;
    std::vector<Diag> diags;

    std::vector<CompiledAttr> compile_attrs(const std::vector<RAttr>& attrs) {
        std::vector<CompiledAttr> out;
        for (const auto& a : attrs) {
            out.push_back(CompiledAttr{a.local, a.type_index, a.use});
        }
        return out;
    }

    std::optional<CompiledContent> compile_particle(const RParticle& p) {
        if (const auto* all = std::get_if<RAll>(&p.v)) {
            if (all->members.size() > kMaxAllMembers) {
                diags.push_back(Diag{Code::LIM006, p.line, p.col, "/",
                                     "xs:all supports at most 16 members"});
                return std::nullopt;
            }
            AllGroup g;
            g.group_optional = all->group_optional;
            for (const auto& mem : all->members) {
                for (const auto& existing : g.members) {
                    if (existing.local == mem.elem.local) {
                        diags.push_back(Diag{Code::SCH004, mem.elem.line, mem.elem.col, "/",
                                             "duplicate xs:all member '" + mem.elem.local + "'"});
                        return std::nullopt;
                    }
                }
                g.members.push_back(AllGroup::Member{mem.elem.local, mem.elem.type_index,
                                                     mem.required, mem.elem.line, mem.elem.col});
            }
            return CompiledContent{std::move(g)};
        }
        if (expanded_position_count(p) + 1 > lim.max_automaton_states) {
            diags.push_back(Diag{Code::LIM006, p.line, p.col, "/",
                                 "content automaton size exceeds max_automaton_states"});
            return std::nullopt;
        }
        const NormParticle norm = normalize_occurs(p);
        auto compiled = glushkov_compile(norm, lim);
        if (auto* d = std::get_if<Diag>(&compiled)) {
            d->line = p.line;
            d->col = p.col;
            diags.push_back(std::move(*d));
            return std::nullopt;
        }
        const PositionMachine m = build_position_machine(norm);
        if (auto upa = check_upa(m)) {
            diags.push_back(std::move(*upa));
            return std::nullopt;
        }
        return CompiledContent{std::get<ContentAutomaton>(std::move(compiled))};
    }

    std::optional<CompiledType> compile_type(const RType& t) {
        if (const auto* simple = std::get_if<RSimple>(&t)) {
            auto cs = CompiledSimple::compile(*simple, lim);
            if (auto* ds = std::get_if<std::vector<Diag>>(&cs)) {
                diags.insert(diags.end(), ds->begin(), ds->end());
                return std::nullopt;
            }
            return CompiledType{CtSimple{std::get<CompiledSimple>(std::move(cs)), {}}};
        }
        const auto& ct = std::get<RComplex>(t);
        auto attrs = compile_attrs(ct.attrs);
        if (!ct.particle) {
            return CompiledType{CtEmpty{std::move(attrs)}};
        }
        auto content = compile_particle(*ct.particle);
        if (!content) return std::nullopt;
        return CompiledType{CtElementOnly{std::move(*content), std::move(attrs)}};
    }
};

}  // namespace

CompileResult compile_schema(const ResolvedSchema& rs, const Limits& limits) {
    TypeCompiler tc{.rs = rs, .lim = limits, .diags = {}};
    CompiledSchema out;
    out.roots = rs.roots;
    out.types.reserve(rs.types.size());
    for (const auto& t : rs.types) {
        auto compiled = tc.compile_type(t);
        // Every diagnostic is collected; a placeholder keeps the indices
        // aligned for the remaining types.
        out.types.push_back(compiled ? std::move(*compiled) : CompiledType{CtEmpty{}});
    }
    if (!tc.diags.empty()) return std::move(tc.diags);
    return out;
}

}  // namespace xsv
