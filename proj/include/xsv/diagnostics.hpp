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

#ifndef XSV_DIAGNOSTICS_HPP
#define XSV_DIAGNOSTICS_HPP

#include <string>
#include <vector>

namespace xsv {

// Closed set of diagnostic codes. These strings are part of the external
// contract; new codes extend the enum, never reuse a number.
enum class Code {
    // Well-formedness
    WF001,  // numeric character reference
    WF002,  // undefined or non-predefined entity reference
    WF003,  // DOCTYPE present
    WF004,  // structural error
    WF005,  // encoding violation
    WF006,  // illegal character
    // Resource limits
    LIM001,  // depth exceeded
    LIM002,  // input size exceeded
    LIM003,  // name length exceeded
    LIM004,  // attribute limits exceeded
    LIM005,  // occurs bound exceeded
    LIM006,  // automaton size exceeded
    LIM007,  // node count exceeded
    LIM008,  // pattern length exceeded
    LIM009,  // diagnostic limit reached
    // Schema
    SCH001,  // forbidden construct
    SCH002,  // unresolved reference
    SCH003,  // definition cycle
    SCH004,  // unique particle attribution violation
    SCH005,  // unsupported construct combination
    SCH006,  // facet/base mismatch
    PAT001,  // pattern syntax error or unsupported feature
    // Validation
    VAL001,  // unexpected element
    VAL002,  // content incomplete
    VAL003,  // unknown attribute
    VAL004,  // required attribute missing
    VAL005,  // simple-type value violation
    VAL006,  // content kind mismatch
    // Input/output (CLI only)
    IO001,  // file unreadable
};

const char* code_name(Code c);

struct Diag {
    Code code;
    int line = 1;
    int col = 1;
    std::string path = "/";  // element path; "/" for document level
    std::string message;

    bool operator==(const Diag&) const = default;
};

// External ordering contract: (line, col, code).
bool diag_order(const Diag& a, const Diag& b);

// Stable line format: CODE<TAB>line:col<TAB>path<TAB>message
std::string format_diag(const Diag& d);

}  // namespace xsv

#endif
