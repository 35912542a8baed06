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

#include "xsv/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "xsv/compile.hpp"
#include "xsv/schema.hpp"
#include "xsv/validate.hpp"
#include "xsv/xml.hpp"

namespace xsv {

namespace {

const char* kUsage =
    "usage:\n"
    "  xsv-validate check-schema <schema.xsd>\n"
    "  xsv-validate validate --schema <schema.xsd> [--report <path>]\n"
    "               [--limit name=value]... [--limit-unsafe name=value]... <doc.xml>...\n"
    "  xsv-validate --version\n"
    "  xsv-validate --help\n"
    "\n"
    "Documents may be given as '-' to read one document from standard input.\n"
    "--limit only lowers a compiled-in default; raising one requires\n"
    "--limit-unsafe and is recorded in the audit report.\n";

std::optional<std::uint64_t> parse_positive(std::string_view s) {
    if (s.empty() || s.size() > 20) return std::nullopt;
    if (!std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return std::nullopt;
    }
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v == 0) return std::nullopt;
    return v;
}

std::optional<UsageError> add_limit(std::vector<LimitOverride>& overrides, std::string_view flag,
                                    std::string_view arg, bool unsafe) {
    const auto eq = arg.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == arg.size()) {
        return UsageError{std::string(flag) + " expects name=value"};
    }
    const std::string name(arg.substr(0, eq));
    const auto field = find_limit_field(name);
    if (!field) return UsageError{"unknown limit name '" + name + "'"};
    const auto value = parse_positive(arg.substr(eq + 1));
    if (!value) return UsageError{"limit value for '" + name + "' must be a positive integer"};
    for (const auto& o : overrides) {
        if (o.name == name) return UsageError{"duplicate limit '" + name + "'"};
    }
    const std::uint64_t dflt = Limits{}.*(field->member);
    if (!unsafe && *value > dflt) {
        return UsageError{"raising limit '" + name + "' above its default requires --limit-unsafe"};
    }
    overrides.push_back(LimitOverride{name, *value, unsafe});
    return std::nullopt;
}

}  // namespace

std::variant<Command, UsageError> parse_args(const std::vector<std::string>& args) {
    if (args.empty()) return UsageError{"missing command"};
    const std::string& cmd = args[0];
    if (cmd == "--version") {
        if (args.size() != 1) return UsageError{"--version takes no operands"};
        return Command{VersionCmd{}};
    }
    if (cmd == "--help") {
        if (args.size() != 1) return UsageError{"--help takes no operands"};
        return Command{HelpCmd{}};
    }
    if (cmd == "check-schema") {
        if (args.size() < 2) return UsageError{"check-schema requires a schema path"};
        if (args.size() > 2) return UsageError{"check-schema takes exactly one operand"};
        return Command{CheckSchemaCmd{args[1]}};
    }
    if (cmd == "validate") {
        ValidateCmd v;
        bool have_schema = false;
        bool flags_done = false;
        for (std::size_t i = 1; i < args.size(); ++i) {
            const std::string& a = args[i];
            if (!flags_done && a == "--") {
                flags_done = true;
                continue;
            }
            if (!flags_done && a.rfind("--", 0) == 0) {
                const bool takes_value =
                    a == "--schema" || a == "--report" || a == "--limit" || a == "--limit-unsafe";
                if (!takes_value) return UsageError{"unknown flag '" + a + "'"};
                if (i + 1 >= args.size()) return UsageError{a + " requires a value"};
                const std::string& val = args[++i];
                if (a == "--schema" || a == "--report") {
                    if (!val.empty() && val[0] == '-') {
                        return UsageError{a + " value '" + val + "' looks like a flag"};
                    }
                }
                if (a == "--schema") {
                    if (have_schema) return UsageError{"duplicate --schema"};
                    have_schema = true;
                    v.schema_path = val;
                } else if (a == "--report") {
                    if (v.report_path) return UsageError{"duplicate --report"};
                    v.report_path = val;
                } else {
                    if (auto e = add_limit(v.overrides, a, val, a == "--limit-unsafe")) return *e;
                }
                if (!v.doc_paths.empty()) {
                    return UsageError{"flag " + a + " after document operands"};
                }
                continue;
            }
            if (!flags_done && a != "-") {
                // Ambiguity-hardening: operands that could be mutilated
                // flags must be passed after a literal --.
                if (a.empty()) return UsageError{"empty operand; use -- to pass it verbatim"};
                const std::size_t ns = a.find_first_not_of(' ');
                if (ns != std::string::npos && a[ns] == '-') {
                    return UsageError{"operand '" + a + "' looks like a flag; use -- first"};
                }
                if (a.find('=') != std::string::npos) {
                    return UsageError{"operand '" + a + "' contains '='; use -- first"};
                }
            }
            v.doc_paths.push_back(a);
        }
        if (!have_schema) return UsageError{"validate requires --schema"};
        if (v.doc_paths.empty()) return UsageError{"validate requires at least one document"};
        return Command{std::move(v)};
    }
    return UsageError{"unknown command '" + cmd + "'"};
}

Limits apply_overrides(const std::vector<LimitOverride>& overrides) {
    Limits lim;
    for (const auto& o : overrides) {
        const auto field = find_limit_field(o.name);
        if (field) lim.*(field->member) = o.value;
    }
    return lim;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string rfc3339_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    std::ostringstream ss;
    ss << f.rdbuf();
    if (f.bad()) return std::nullopt;
    return std::move(ss).str();
}

using SchemaOutcome = std::variant<CompiledSchema, std::vector<Diag>>;

// Full schema pipeline: well-formedness, whitelist screen, model build,
// reference resolution, content compilation.
SchemaOutcome compile_schema_bytes(std::string_view bytes, const Limits& limits) {
    auto parsed = parse_document(bytes, limits);
    if (auto* wf = std::get_if<WfError>(&parsed)) return std::vector<Diag>{*wf};
    const XmlDocument& doc = std::get<XmlDocument>(parsed);
    auto screen = screen_constructs(doc);
    if (!screen.empty()) return screen;
    auto built = build_schema(doc, limits);
    if (auto* ds = std::get_if<std::vector<Diag>>(&built)) return std::move(*ds);
    auto resolved = resolve_refs(std::get<SchemaModel>(built));
    if (auto* ds = std::get_if<std::vector<Diag>>(&resolved)) return std::move(*ds);
    return compile_schema(std::get<ResolvedSchema>(resolved), limits);
}

void print_diags(std::ostream& err, const std::vector<Diag>& diags) {
    for (const auto& d : diags) err << format_diag(d) << "\n";
}

struct DocResult {
    std::string path;
    std::string digest;  // "-" when the bytes could not be read
    bool valid = false;
    int severity = 0;  // 0 valid, 1 invalid, 2 not-well-formed, 5 io
    std::vector<Diag> diags;
};

DocResult process_document(const std::string& path, const CompiledSchema& cs, const Limits& limits,
                           std::istream& in) {
    DocResult r;
    r.path = path;
    std::optional<std::string> bytes;
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        bytes = std::move(ss).str();
    } else {
        bytes = read_file(path);
    }
    if (!bytes) {
        r.digest = "-";
        r.severity = 5;
        r.diags.push_back(Diag{Code::IO001, 1, 1, "/", "cannot read " + path});
        return r;
    }
    r.digest = sha256_hex(*bytes);
    auto parsed = parse_document(*bytes, limits);
    if (auto* wf = std::get_if<WfError>(&parsed)) {
        r.severity = 2;
        r.diags.push_back(*wf);
        return r;
    }
    auto verdict = validate_document(std::get<XmlDocument>(parsed), cs, limits);
    if (auto* inv = std::get_if<Invalid>(&verdict)) {
        r.severity = 1;
        r.diags = std::move(inv->diags);
        return r;
    }
    r.valid = true;
    return r;
}

bool write_report(const std::string& path, const std::string& schema_digest,
                  const std::vector<LimitOverride>& overrides, const Limits& limits,
                  const std::vector<DocResult>& results) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) return false;
    f << "tool " << kToolVersion << "\n";
    f << "time " << rfc3339_utc_now() << "\n";
    f << "schema-sha256 " << schema_digest << "\n";
    f << "limits";
    for (const auto& field : limit_fields()) f << " " << field.name << "=" << limits.*field.member;
    f << "\n";
    std::vector<const LimitOverride*> unsafe;
    for (const auto& o : overrides) {
        if (o.unsafe) unsafe.push_back(&o);
    }
    std::sort(unsafe.begin(), unsafe.end(),
              [](const LimitOverride* a, const LimitOverride* b) { return a->name < b->name; });
    for (const auto* o : unsafe) f << "limit-unsafe " << o->name << "=" << o->value << "\n";
    for (const auto& r : results) {
        f << "doc " << r.path << " sha256=" << r.digest << " verdict="
          << (r.valid ? "VALID" : "INVALID") << "\n";
        for (const auto& d : r.diags) f << "  " << format_diag(d) << "\n";
    }
    f.flush();
    return !f.bad();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in) {
    auto parsed = parse_args(args);
    if (auto* ue = std::get_if<UsageError>(&parsed)) {
        err << "usage error: " << ue->reason << "\n";
        return 4;
    }
    const Command& cmd = std::get<Command>(parsed);

    if (std::holds_alternative<VersionCmd>(cmd)) {
        out << kToolName << " " << kToolVersion << "\n";
        return 0;
    }
    if (std::holds_alternative<HelpCmd>(cmd)) {
        out << kUsage;
        return 0;
    }
    if (const auto* cs = std::get_if<CheckSchemaCmd>(&cmd)) {
        const Limits limits;
        auto bytes = read_file(cs->schema_path);
        if (!bytes) {
            err << format_diag(Diag{Code::IO001, 1, 1, "/", "cannot read " + cs->schema_path})
                << "\n";
            return 5;
        }
        auto outcome = compile_schema_bytes(*bytes, limits);
        if (auto* ds = std::get_if<std::vector<Diag>>(&outcome)) {
            print_diags(err, *ds);
            return 3;
        }
        return 0;
    }

    const auto& v = std::get<ValidateCmd>(cmd);
    const Limits limits = apply_overrides(v.overrides);
    auto schema_bytes = read_file(v.schema_path);
    if (!schema_bytes) {
        err << format_diag(Diag{Code::IO001, 1, 1, "/", "cannot read " + v.schema_path}) << "\n";
        return 5;
    }
    auto outcome = compile_schema_bytes(*schema_bytes, limits);
    if (auto* ds = std::get_if<std::vector<Diag>>(&outcome)) {
        print_diags(err, *ds);
        return 3;
    }
    const CompiledSchema& cs = std::get<CompiledSchema>(outcome);

    std::vector<DocResult> results;
    int exit_code = 0;
    for (const auto& path : v.doc_paths) {
        DocResult r = process_document(path, cs, limits, in);
        print_diags(err, r.diags);
        out << r.path << "\t" << (r.valid ? "VALID" : "INVALID") << "\n";
        exit_code = std::max(exit_code, r.severity);
        results.push_back(std::move(r));
    }
    if (v.report_path) {
        if (!write_report(*v.report_path, sha256_hex(*schema_bytes), v.overrides, limits,
                          results)) {
            err << format_diag(Diag{Code::IO001, 1, 1, "/", "cannot write " + *v.report_path})
                << "\n";
            exit_code = std::max(exit_code, 5);
        }
    }
    return exit_code;
}

}  // namespace xsv
