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

#ifndef XSV_CLI_HPP
#define XSV_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xsv/limits.hpp"

namespace xsv {

inline constexpr const char* kToolName = "xsv-validate";
inline constexpr const char* kToolVersion = "1.0.0";

struct LimitOverride {
    std::string name;
    std::uint64_t value = 0;
    bool unsafe = false;  // --limit-unsafe: allowed to exceed the default
};

struct CheckSchemaCmd {
    std::string schema_path;
};

struct ValidateCmd {
    std::string schema_path;
    std::vector<std::string> doc_paths;  // non-empty; "-" reads standard input
    std::optional<std::string> report_path;
    std::vector<LimitOverride> overrides;
};

struct VersionCmd {};
struct HelpCmd {};

using Command = std::variant<CheckSchemaCmd, ValidateCmd, VersionCmd, HelpCmd>;

struct UsageError {
    std::string reason;  // single line
};

// Strict grammar over the arguments after the program name. No prefix
// matching, no abbreviation, no last-wins for duplicates; "--" ends flag
// parsing. Limit values must be positive integers naming a known field;
// plain --limit may only lower a default.
std::variant<Command, UsageError> parse_args(const std::vector<std::string>& args);

// Effective limits after applying overrides (parse_args has already
// vetted names, values and the downward-only rule).
Limits apply_overrides(const std::vector<LimitOverride>& overrides);

// SHA-256 digest as lowercase hex.
std::string sha256_hex(std::string_view bytes);

// RFC 3339 UTC timestamp for the report, e.g. 2026-08-23T12:00:00Z.
std::string rfc3339_utc_now();

// Whole program behind the streams: exit code in {0,1,2,3,4,5}. Verdict
// lines go to out, diagnostics to err; in backs the "-" document path.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in);

}  // namespace xsv

#endif
