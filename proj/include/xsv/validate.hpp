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

#ifndef XSV_VALIDATE_HPP
#define XSV_VALIDATE_HPP

#include <string>
#include <variant>
#include <vector>

#include "xsv/compile.hpp"
#include "xsv/xml.hpp"

namespace xsv {

struct Valid {};

struct Invalid {
    std::vector<Diag> diags;  // non-empty, ordered by (line, col, code)
};

using Verdict = std::variant<Valid, Invalid>;

// At most this many diagnostics are reported; past it a single terminal
// LIM009 entry closes the list.
inline constexpr std::size_t kDiagCap = 1000;

struct ChildRef {
    std::string local;
    int line = 1, col = 1;
};

// Simulates the automaton over the child name sequence. Ok carries the
// type index matched for each child, in order. Missing transition is
// VAL001 at the offending child; a non-accepting stop is VAL002 at the
// supplied end position.
std::variant<std::vector<int>, Diag> run_content_automaton(const std::vector<ChildRef>& children,
                                                           const ContentAutomaton& a, int end_line,
                                                           int end_col);

// Attribute checks for one element: VAL003 unknown, VAL004 missing
// required, VAL005 value violations. xmlns and xmlns:* are ignored.
std::vector<Diag> validate_attributes(const Element& el, const std::vector<CompiledAttr>& specs,
                                      const CompiledSchema& cs, const std::string& path);

// Full subtree check of el against type ct. Diagnostics are returned in
// discovery order; validate_document sorts them.
std::vector<Diag> validate_element(const Element& el, int type_index, const CompiledSchema& cs,
                                   const std::string& path);

// Pure, total validation: every failure mode is a diagnostic inside
// Invalid. Diagnostics sorted by (line, col, code), capped at kDiagCap
// plus a terminal LIM009.
Verdict validate_document(const XmlDocument& doc, const CompiledSchema& cs, const Limits& limits);

}  // namespace xsv

#endif
