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

#ifndef XSV_LIMITS_HPP
#define XSV_LIMITS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace xsv {

// Hard resource bounds. All fields are strictly positive. The defaults are
// the compiled-in ceiling: the CLI only lowers them unless --limit-unsafe
// is given.
struct Limits {
    std::uint64_t max_input_bytes = 64ull * 1024 * 1024;
    std::uint64_t max_depth = 256;
    std::uint64_t max_attrs_per_element = 64;
    std::uint64_t max_name_bytes = 1024;
    std::uint64_t max_attr_value_bytes = 64 * 1024;
    std::uint64_t max_total_nodes = 1'000'000;
    std::uint64_t max_occurs_bound = 1024;
    std::uint64_t max_automaton_states = 65'536;
    std::uint64_t max_pattern_length = 1024;
};

// Name table for CLI overrides and the audit report (sorted by name).
struct LimitField {
    const char* name;
    std::uint64_t Limits::* member;
};

const std::vector<LimitField>& limit_fields();

// Looks a field up by its external name.
std::optional<LimitField> find_limit_field(const std::string& name);

}  // namespace xsv

#endif
