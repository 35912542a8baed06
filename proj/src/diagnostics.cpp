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

#include "xsv/diagnostics.hpp"

#include <tuple>

namespace xsv {

const char* code_name(Code c) {
    switch (c) {
        case Code::WF001: return "WF001";
        case Code::WF002: return "WF002";
        case Code::WF003: return "WF003";
        case Code::WF004: return "WF004";
        case Code::WF005: return "WF005";
        case Code::WF006: return "WF006";
        case Code::LIM001: return "LIM001";
        case Code::LIM002: return "LIM002";
        case Code::LIM003: return "LIM003";
        case Code::LIM004: return "LIM004";
        case Code::LIM005: return "LIM005";
        case Code::LIM006: return "LIM006";
        case Code::LIM007: return "LIM007";
        case Code::LIM008: return "LIM008";
        case Code::LIM009: return "LIM009";
        case Code::SCH001: return "SCH001";
        case Code::SCH002: return "SCH002";
        case Code::SCH003: return "SCH003";
        case Code::SCH004: return "SCH004";
        case Code::SCH005: return "SCH005";
        case Code::SCH006: return "SCH006";
        case Code::PAT001: return "PAT001";
        case Code::VAL001: return "VAL001";
        case Code::VAL002: return "VAL002";
        case Code::VAL003: return "VAL003";
        case Code::VAL004: return "VAL004";
        case Code::VAL005: return "VAL005";
        case Code::VAL006: return "VAL006";
        case Code::IO001: return "IO001";
    }
    return "??????";  // unreachable, all cases covered
}

bool diag_order(const Diag& a, const Diag& b) {
    return std::tuple(a.line, a.col, static_cast<int>(a.code)) <
           std::tuple(b.line, b.col, static_cast<int>(b.code));
}

std::string format_diag(const Diag& d) {
    std::string s;
    s += code_name(d.code);
    s += '\t';
    s += std::to_string(d.line);
    s += ':';
    s += std::to_string(d.col);
    s += '\t';
    s += d.path;
    s += '\t';
    s += d.message;
    return s;
}

}  // namespace xsv
