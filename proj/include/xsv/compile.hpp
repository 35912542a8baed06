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

#ifndef XSV_COMPILE_HPP
#define XSV_COMPILE_HPP

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "xsv/schema.hpp"
#include "xsv/simple.hpp"

namespace xsv {

// Occurrence-free particle: only element leaves, sequence, choice,
// optional and star survive normalization.
struct NormParticle;

struct NElem {
    std::string local;
    int type_index = -1;
    // Source-particle identity from the schema document; copies produced
    // by occurrence expansion share it.
    int source_id = -1;
    int line = 1, col = 1;
};

struct NSeq {
    std::vector<NormParticle> children;
};

struct NChoice {
    std::vector<NormParticle> children;
};

struct NOpt {
    std::vector<NormParticle> children;  // exactly one
};

struct NStar {
    std::vector<NormParticle> children;  // exactly one
};

struct NormParticle {
    std::variant<NElem, NSeq, NChoice, NOpt, NStar> v;
};

// Rewrites occurrence ranges into pure regular operators: p{m,n} becomes
// m mandatory copies then n-m optional copies; p{m,unbounded} becomes m
// mandatory copies then p*. p must not be an xs:all group (those compile
// to AllGroup instead). Total by construction; size is pre-checked by
// expanded_position_count.
NormParticle normalize_occurs(const RParticle& p);

// Number of element positions after normalization, saturating; used to
// enforce max_automaton_states before any tree is materialized.
std::uint64_t expanded_position_count(const RParticle& p);

// Deterministic automaton over child-element local names. State 0 is the
// start state; the remaining states are the reachable positions of the
// normalized particle.
struct ContentAutomaton {
    struct Target {
        int state = 0;
        int type_index = -1;
    };
    std::vector<std::map<std::string, Target>> transitions;  // indexed by state
    std::vector<char> accepting;

    std::size_t state_count() const { return transitions.size(); }
    // Outgoing symbols of a state, for "expected one of {...}" messages.
    std::vector<std::string> expected_symbols(int state) const;
};

// Position machine with provenance, shared by the determinizer and the
// attribution check.
struct PositionMachine {
    std::vector<NElem> positions;
    std::vector<int> first;
    std::vector<std::vector<int>> follow;  // by position
    std::vector<char> last;
    bool nullable = false;
};

PositionMachine build_position_machine(const NormParticle& p);

// Glushkov construction. LIM006 when 1 + positions exceeds
// limits.max_automaton_states.
std::variant<ContentAutomaton, Diag> glushkov_compile(const NormParticle& p,
                                                      const Limits& limits);

// Unique-particle-attribution check: no state may offer one symbol
// through positions of two distinct source particles. Returns the first
// violation in document order, as SCH004.
std::optional<Diag> check_upa(const PositionMachine& m);

// Order-free checker for xs:all: each member at most once, required
// members present. Bounded to 16 members.
struct AllGroup {
    struct Member {
        std::string local;
        int type_index = -1;
        bool required = true;
        int line = 1, col = 1;
    };
    std::vector<Member> members;
    bool group_optional = false;
};

using CompiledContent = std::variant<ContentAutomaton, AllGroup>;

struct CompiledAttr {
    std::string local;
    int type_index = -1;  // CompiledSchema slot holding a SimpleContent type
    AttrUse use = AttrUse::Optional;
};

struct CtEmpty {
    std::vector<CompiledAttr> attrs;
};

struct CtSimple {
    CompiledSimple simple;
    std::vector<CompiledAttr> attrs;
};

struct CtElementOnly {
    CompiledContent content;
    std::vector<CompiledAttr> attrs;
};

using CompiledType = std::variant<CtEmpty, CtSimple, CtElementOnly>;

struct CompiledSchema {
    std::vector<CompiledType> types;  // index-aligned with ResolvedSchema
    std::map<std::string, RootElem> roots;
};

// Compiles every type; all diagnostics from all types are collected, no
// fail-fast.
using CompileResult = std::variant<CompiledSchema, std::vector<Diag>>;
CompileResult compile_schema(const ResolvedSchema& rs, const Limits& limits);

}  // namespace xsv

#endif
