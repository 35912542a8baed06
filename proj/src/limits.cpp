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

#include "xsv/limits.hpp"

namespace xsv {

const std::vector<LimitField>& limit_fields() {
    // Kept sorted by name; the audit report prints them in this order.
    static const std::vector<LimitField> fields = {
        {"max_attr_value_bytes", &Limits::max_attr_value_bytes},
        {"max_attrs_per_element", &Limits::max_attrs_per_element},
        {"max_automaton_states", &Limits::max_automaton_states},
        {"max_depth", &Limits::max_depth},
        {"max_input_bytes", &Limits::max_input_bytes},
        {"max_name_bytes", &Limits::max_name_bytes},
        {"max_occurs_bound", &Limits::max_occurs_bound},
        {"max_pattern_length", &Limits::max_pattern_length},
        {"max_total_nodes", &Limits::max_total_nodes},
    };
    return fields;
}

std::optional<LimitField> find_limit_field(const std::string& name) {
    for (const auto& f : limit_fields()) {
        if (name == f.name) return f;
    }
    return std::nullopt;
}

}  // namespace xsv
