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

#ifndef XSV_TESTS_UTIL_HPP
#define XSV_TESTS_UTIL_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xsv/compile.hpp"
#include "xsv/schema.hpp"
#include "xsv/validate.hpp"
#include "xsv/xml.hpp"

namespace xsv::test {

inline SecureText st(std::string_view s) {
    return std::get<SecureText>(SecureText::decode_utf8(s));
}

// Full schema pipeline as the CLI drives it.
inline std::variant<CompiledSchema, std::vector<Diag>> compile_xsd(std::string_view src,
                                                                   const Limits& lim = {}) {
    auto parsed = parse_document(src, lim);
    if (auto* wf = std::get_if<WfError>(&parsed)) return std::vector<Diag>{*wf};
    const XmlDocument& doc = std::get<XmlDocument>(parsed);
    auto screen = screen_constructs(doc);
    if (!screen.empty()) return screen;
    auto built = build_schema(doc, lim);
    if (auto* ds = std::get_if<std::vector<Diag>>(&built)) return std::move(*ds);
    auto resolved = resolve_refs(std::get<SchemaModel>(built));
    if (auto* ds = std::get_if<std::vector<Diag>>(&resolved)) return std::move(*ds);
    return compile_schema(std::get<ResolvedSchema>(resolved), lim);
}

inline CompiledSchema compile_xsd_ok(std::string_view src, const Limits& lim = {}) {
    auto r = compile_xsd(src, lim);
    if (auto* ds = std::get_if<std::vector<Diag>>(&r)) {
        std::string msg = "schema unexpectedly rejected:";
        for (const auto& d : *ds) msg += "\n  " + format_diag(d);
        throw std::runtime_error(msg);
    }
    return std::get<CompiledSchema>(std::move(r));
}

inline std::vector<Diag> compile_xsd_fail(std::string_view src, const Limits& lim = {}) {
    auto r = compile_xsd(src, lim);
    if (std::holds_alternative<CompiledSchema>(r)) {
        throw std::runtime_error("schema unexpectedly accepted");
    }
    return std::get<std::vector<Diag>>(std::move(r));
}

inline XmlDocument parse_ok(std::string_view src, const Limits& lim = {}) {
    auto r = parse_document(src, lim);
    if (auto* wf = std::get_if<WfError>(&r)) {
        throw std::runtime_error("document unexpectedly rejected: " + format_diag(*wf));
    }
    return std::get<XmlDocument>(std::move(r));
}

inline Diag parse_fail(std::string_view src, const Limits& lim = {}) {
    auto r = parse_document(src, lim);
    if (std::holds_alternative<XmlDocument>(r)) {
        throw std::runtime_error("document unexpectedly accepted");
    }
    return std::get<WfError>(std::move(r));
}

inline Verdict validate_str(std::string_view xsd, std::string_view xml, const Limits& lim = {}) {
    const CompiledSchema cs = compile_xsd_ok(xsd, lim);
    return validate_document(parse_ok(xml, lim), cs, lim);
}

inline std::vector<Diag> invalid_diags(const Verdict& v) {
    if (std::holds_alternative<Valid>(v)) {
        throw std::runtime_error("document unexpectedly valid");
    }
    return std::get<Invalid>(v).diags;
}

inline bool has_code(const std::vector<Diag>& ds, Code c) {
    for (const auto& d : ds) {
        if (d.code == c) return true;
    }
    return false;
}

}  // namespace xsv::test

#endif
