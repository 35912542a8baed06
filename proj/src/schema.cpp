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

#include "xsv/schema.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <set>
#include <unordered_map>

namespace xsv {

const char* builtin_name(BuiltinKind k) {
    switch (k) {
        case BuiltinKind::String: return "string";
        case BuiltinKind::Token: return "token";
        case BuiltinKind::Boolean: return "boolean";
        case BuiltinKind::Integer: return "integer";
        case BuiltinKind::Decimal: return "decimal";
        case BuiltinKind::Date: return "date";
        case BuiltinKind::DateTime: return "dateTime";
        case BuiltinKind::AnyUri: return "anyURI";
    }
    return "?";
}

std::optional<BuiltinKind> builtin_by_name(std::string_view local) {
    if (local == "string") return BuiltinKind::String;
    if (local == "token") return BuiltinKind::Token;
    if (local == "boolean") return BuiltinKind::Boolean;
    if (local == "integer") return BuiltinKind::Integer;
    if (local == "decimal") return BuiltinKind::Decimal;
    if (local == "date") return BuiltinKind::Date;
    if (local == "dateTime") return BuiltinKind::DateTime;
    if (local == "anyURI") return BuiltinKind::AnyUri;
    return std::nullopt;
}

const char* facet_name(FacetKind k) {
    switch (k) {
        case FacetKind::Length: return "length";
        case FacetKind::MinLength: return "minLength";
        case FacetKind::MaxLength: return "maxLength";
        case FacetKind::Pattern: return "pattern";
        case FacetKind::Enumeration: return "enumeration";
        case FacetKind::MinInclusive: return "minInclusive";
        case FacetKind::MaxInclusive: return "maxInclusive";
        case FacetKind::MinExclusive: return "minExclusive";
        case FacetKind::MaxExclusive: return "maxExclusive";
    }
    return "?";
}

namespace {

std::optional<FacetKind> facet_by_name(std::string_view local) {
    if (local == "length") return FacetKind::Length;
    if (local == "minLength") return FacetKind::MinLength;
    if (local == "maxLength") return FacetKind::MaxLength;
    if (local == "pattern") return FacetKind::Pattern;
    if (local == "enumeration") return FacetKind::Enumeration;
    if (local == "minInclusive") return FacetKind::MinInclusive;
    if (local == "maxInclusive") return FacetKind::MaxInclusive;
    if (local == "minExclusive") return FacetKind::MinExclusive;
    if (local == "maxExclusive") return FacetKind::MaxExclusive;
    return std::nullopt;
}

bool is_bound_facet(FacetKind k) {
    switch (k) {
        case FacetKind::MinInclusive:
        case FacetKind::MaxInclusive:
        case FacetKind::MinExclusive:
        case FacetKind::MaxExclusive:
            return true;
        case FacetKind::Length:
        case FacetKind::MinLength:
        case FacetKind::MaxLength:
        case FacetKind::Pattern:
        case FacetKind::Enumeration:
            return false;
    }
    return false;
}

bool is_length_facet(FacetKind k) {
    switch (k) {
        case FacetKind::Length:
        case FacetKind::MinLength:
        case FacetKind::MaxLength:
            return true;
        case FacetKind::Pattern:
        case FacetKind::Enumeration:
        case FacetKind::MinInclusive:
        case FacetKind::MaxInclusive:
        case FacetKind::MinExclusive:
        case FacetKind::MaxExclusive:
            return false;
    }
    return false;
}

// True iff the facet may constrain the given base kind.
bool facet_applicable(FacetKind f, BuiltinKind b) {
    if (is_bound_facet(f)) {
        switch (b) {
            case BuiltinKind::Integer:
            case BuiltinKind::Decimal:
            case BuiltinKind::Date:
            case BuiltinKind::DateTime:
                return true;
            case BuiltinKind::String:
            case BuiltinKind::Token:
            case BuiltinKind::Boolean:
            case BuiltinKind::AnyUri:
                return false;
        }
    }
    if (is_length_facet(f)) {
        switch (b) {
            case BuiltinKind::String:
            case BuiltinKind::Token:
            case BuiltinKind::AnyUri:
                return true;
            case BuiltinKind::Boolean:
            case BuiltinKind::Integer:
            case BuiltinKind::Decimal:
            case BuiltinKind::Date:
            case BuiltinKind::DateTime:
                return false;
        }
    }
    return true;  // pattern, enumeration
}

std::string str(const SecureText& t) { return std::string(t.bytes()); }

bool same_prefix(const std::optional<SecureText>& a, const std::optional<SecureText>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a.has_value() || *a == *b;
}

bool is_xmlns(const Attribute& a) {
    if (a.name.prefix.has_value()) return a.name.prefix->bytes() == "xmlns";
    return a.name.local.bytes() == "xmlns";
}

const Attribute* find_attr(const Element& el, std::string_view local) {
    for (const auto& a : el.attributes) {
        if (!a.name.prefix && a.name.local.bytes() == local) return &a;
    }
    return nullptr;
}

std::string child_path(const std::string& parent, const Element& el, int ordinal) {
    return parent + "/" + str(el.name.local) + "[" + std::to_string(ordinal) + "]";
}

// Recognized schema-vocabulary element names (everything the builder can
// translate, plus the silently skipped annotation family).
const std::set<std::string, std::less<>>& supported_elements() {
    static const std::set<std::string, std::less<>> s = {
        "schema",       "element",      "complexType",  "sequence",    "choice",
        "all",          "attribute",    "simpleType",   "restriction", "length",
        "minLength",    "maxLength",    "pattern",      "enumeration", "minInclusive",
        "maxInclusive", "minExclusive", "maxExclusive", "annotation",  "documentation",
        "appinfo",
    };
    return s;
}

const std::set<std::string, std::less<>>& forbidden_elements() {
    static const std::set<std::string, std::less<>> s = {
        "any", "anyAttribute", "redefine", "include", "import", "notation", "union", "list",
    };
    return s;
}

// --- Screening ------------------------------------------------------------

struct Screener {
    std::optional<SecureText> prefix;
    std::vector<Diag> diags;

    void add(Code code, const std::string& path, int line, int col, std::string msg) {
        diags.push_back(Diag{code, line, col, path, std::move(msg)});
    }

    void screen_attributes(const Element& el, const std::string& path, bool is_schema_vocab) {
        for (const auto& a : el.attributes) {
            if (is_xmlns(a)) continue;
            const std::string local = str(a.name.local);
            if (a.name.prefix && a.name.prefix->bytes() == "xsi" && local == "type") {
                add(Code::SCH001, path, a.line, a.col, "xsi:type is forbidden");
                continue;
            }
            if (!is_schema_vocab) continue;
            if (local == "substitutionGroup") {
                add(Code::SCH001, path, a.line, a.col, "substitutionGroup is forbidden");
            } else if (local == "abstract" && a.value.bytes() == "true") {
                add(Code::SCH001, path, a.line, a.col, "abstract elements are forbidden");
            } else if (local == "mixed" && a.value.bytes() == "true") {
                add(Code::SCH001, path, a.line, a.col, "mixed content is forbidden");
            } else if ((local == "default" || local == "fixed") &&
                       (el.name.local.bytes() == "element" ||
                        el.name.local.bytes() == "attribute")) {
                add(Code::SCH001, path, a.line, a.col,
                    "value injection via " + local + "= is forbidden");
            }
        }
    }

    void walk(const Element& el, const std::string& path, bool inside_annotation) {
        const bool vocab = same_prefix(el.name.prefix, prefix);
        const std::string local = str(el.name.local);
        if (!inside_annotation) {
            if (vocab) {
                if (forbidden_elements().contains(local)) {
                    add(Code::SCH001, path, el.line, el.col,
                        "forbidden schema construct <" + local + ">");
                } else if (!supported_elements().contains(local)) {
                    add(Code::SCH005, path, el.line, el.col,
                        "unsupported schema element <" + local + ">");
                }
            } else {
                add(Code::SCH005, path, el.line, el.col,
                    "element outside the schema vocabulary");
            }
        }
        screen_attributes(el, path, vocab && !inside_annotation);
        const bool annot = inside_annotation || (vocab && local == "annotation");
        int ordinal = 0;
        for (const auto& child : el.children) {
            if (const auto* ce = std::get_if<Element>(&child.v)) {
                walk(*ce, child_path(path, *ce, ++ordinal), annot);
            }
        }
    }
};

}  // namespace

std::vector<Diag> screen_constructs(const XmlDocument& doc) {
    Screener s;
    s.prefix = doc.root.name.prefix;
    const std::string root_path = child_path("", doc.root, 1);
    if (doc.root.name.local.bytes() != "schema") {
        s.add(Code::SCH005, root_path, doc.root.line, doc.root.col,
              "root element of a schema document must be <schema>");
        return s.diags;
    }
    s.walk(doc.root, root_path, false);
    return s.diags;
}

// --- Building -------------------------------------------------------------

namespace {

struct Builder {
    const Limits& lim;
    std::optional<SecureText> prefix;
    std::vector<Diag> diags;
    SchemaModel model;

    void add(Code code, const std::string& path, int line, int col, std::string msg) {
        diags.push_back(Diag{code, line, col, path, std::move(msg)});
    }

    bool vocab(const Element& el) const { return same_prefix(el.name.prefix, prefix); }

    bool is(const Element& el, std::string_view local) const {
        return vocab(el) && el.name.local.bytes() == local;
    }

    bool is_annotation(const Element& el) const { return is(el, "annotation"); }

    // Defense in depth: a banned construct reaching the builder is SCH001
    // even if the screening pass was skipped.
    void unsupported(const Element& el, const std::string& path, std::string_view context) {
        const std::string local = str(el.name.local);
        if (vocab(el) && forbidden_elements().contains(local)) {
            add(Code::SCH001, path, el.line, el.col, "forbidden schema construct <" + local + ">");
            return;
        }
        add(Code::SCH005, path, el.line, el.col,
            "unsupported " + std::string(context) + ": <" + local + ">");
    }

    // Rejects attributes outside the per-element whitelist. xmlns and id
    // are tolerated everywhere.
    void check_attrs(const Element& el, const std::string& path,
                     std::initializer_list<std::string_view> allowed) {
        for (const auto& a : el.attributes) {
            if (is_xmlns(a)) continue;
            if (a.name.prefix) {
                add(Code::SCH005, path, a.line, a.col,
                    "unsupported prefixed attribute '" + str(a.name.local) + "'");
                continue;
            }
            const std::string_view local = a.name.local.bytes();
            if (local == "id") continue;
            if (std::find(allowed.begin(), allowed.end(), local) == allowed.end()) {
                add(Code::SCH005, path, a.line, a.col,
                    "unsupported attribute '" + std::string(local) + "'");
            }
        }
    }

    // Non-whitespace text content is meaningless in the vetted vocabulary.
    void check_no_text(const Element& el, const std::string& path) {
        for (const auto& child : el.children) {
            if (const auto* t = std::get_if<TextNode>(&child.v)) {
                if (!is_xml_whitespace(t->text)) {
                    add(Code::SCH005, path, t->line, t->col,
                        "character content is not allowed here");
                }
            }
        }
    }

    std::optional<std::uint64_t> parse_uint(const SecureText& v) {
        const std::string_view s = v.bytes();
        if (s.empty() || s.size() > 18) return std::nullopt;
        std::uint64_t out = 0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
        return out;
    }

    Occurs parse_occurs(const Element& el, const std::string& path, bool* ok) {
        Occurs oc;
        *ok = true;
        if (const auto* a = find_attr(el, "minOccurs")) {
            const auto n = parse_uint(a->value);
            if (!n) {
                add(Code::SCH005, path, a->line, a->col, "invalid minOccurs value");
                *ok = false;
            } else if (*n > lim.max_occurs_bound) {
                add(Code::LIM005, path, a->line, a->col, "minOccurs exceeds max_occurs_bound");
                *ok = false;
            } else {
                oc.min = *n;
            }
        }
        if (const auto* a = find_attr(el, "maxOccurs")) {
            if (a->value.bytes() == "unbounded") {
                oc.max = std::nullopt;
            } else {
                const auto n = parse_uint(a->value);
                if (!n) {
                    add(Code::SCH005, path, a->line, a->col, "invalid maxOccurs value");
                    *ok = false;
                } else if (*n > lim.max_occurs_bound) {
                    add(Code::LIM005, path, a->line, a->col, "maxOccurs exceeds max_occurs_bound");
                    *ok = false;
                } else if (*n == 0) {
                    add(Code::SCH005, path, a->line, a->col, "maxOccurs 0 is not supported");
                    *ok = false;
                } else {
                    oc.max = *n;
                }
            }
        }
        if (*ok && oc.max && oc.min > *oc.max) {
            add(Code::SCH005, path, el.line, el.col, "minOccurs exceeds maxOccurs");
            *ok = false;
        }
        return oc;
    }

    std::optional<std::string> ncname_attr(const Element& el, const std::string& path,
                                           std::string_view attr) {
        const auto* a = find_attr(el, attr);
        if (!a) return std::nullopt;
        auto r = check_name(a->value, lim);
        if (const auto* e = std::get_if<WfError>(&r)) {
            add(e->code == Code::LIM003 ? Code::LIM003 : Code::SCH002, path, a->line, a->col,
                "invalid " + std::string(attr) + " '" + str(a->value) + "'");
            return std::nullopt;
        }
        const auto& q = std::get<QName>(r);
        if (q.prefix) {
            add(Code::SCH002, path, a->line, a->col,
                std::string(attr) + " must be an NCName (no prefix)");
            return std::nullopt;
        }
        return str(q.local);
    }

    // Parses a type= attribute into a built-in or a named reference.
    std::optional<TypeRef> type_attr(const Element& el, const std::string& path) {
        const auto* a = find_attr(el, "type");
        if (!a) return std::nullopt;
        auto r = check_name(a->value, lim);
        if (const auto* e = std::get_if<WfError>(&r)) {
            (void)e;
            add(Code::SCH002, path, a->line, a->col,
                "invalid type reference '" + str(a->value) + "'");
            return std::nullopt;
        }
        const auto& q = std::get<QName>(r);
        if (same_prefix(q.prefix, prefix) && prefix.has_value()) {
            const auto b = builtin_by_name(q.local.bytes());
            if (!b) {
                add(Code::SCH005, path, a->line, a->col,
                    "unsupported built-in type '" + str(a->value) + "'");
                return std::nullopt;
            }
            return TypeRef{*b};
        }
        if (!q.prefix && !prefix.has_value()) {
            // Unprefixed vocabulary: a built-in name wins, anything else is
            // a reference to a named type.
            if (const auto b = builtin_by_name(q.local.bytes())) return TypeRef{*b};
        }
        return TypeRef{q};
    }

    // --- simpleType -------------------------------------------------------

    std::shared_ptr<SimpleTypeDef> parse_simple_type(const Element& el, const std::string& path) {
        check_attrs(el, path, {"name"});
        check_no_text(el, path);
        auto def = std::make_shared<SimpleTypeDef>();
        def->line = el.line;
        def->col = el.col;
        const Element* restriction = nullptr;
        std::string rpath;
        int ordinal = 0;
        for (const auto& child : el.children) {
            const auto* ce = std::get_if<Element>(&child.v);
            if (!ce) continue;
            const std::string p = child_path(path, *ce, ++ordinal);
            if (is_annotation(*ce)) continue;
            if (is(*ce, "restriction")) {
                if (restriction) {
                    add(Code::SCH005, p, ce->line, ce->col, "more than one restriction");
                    continue;
                }
                restriction = ce;
                rpath = p;
                continue;
            }
            unsupported(*ce, p, "child of simpleType");
        }
        if (!restriction) {
            add(Code::SCH005, path, el.line, el.col, "simpleType requires a restriction child");
            return def;
        }
        parse_restriction(*restriction, rpath, *def);
        return def;
    }

    void parse_restriction(const Element& el, const std::string& path, SimpleTypeDef& def) {
        check_attrs(el, path, {"base"});
        check_no_text(el, path);
        const auto* base_attr = find_attr(el, "base");
        if (!base_attr) {
            add(Code::SCH005, path, el.line, el.col, "restriction requires a base attribute");
            def.base = BuiltinKind::String;
        } else {
            auto r = check_name(base_attr->value, lim);
            if (std::holds_alternative<WfError>(r)) {
                add(Code::SCH002, path, base_attr->line, base_attr->col,
                    "invalid base reference '" + str(base_attr->value) + "'");
                def.base = BuiltinKind::String;
            } else {
                const auto& q = std::get<QName>(r);
                std::optional<BuiltinKind> b;
                if (same_prefix(q.prefix, prefix) && prefix.has_value()) {
                    b = builtin_by_name(q.local.bytes());
                    if (!b) {
                        add(Code::SCH005, path, base_attr->line, base_attr->col,
                            "unsupported built-in base '" + str(base_attr->value) + "'");
                        b = BuiltinKind::String;
                    }
                } else if (!q.prefix && !prefix.has_value()) {
                    b = builtin_by_name(q.local.bytes());
                }
                if (b) {
                    def.base = *b;
                } else {
                    def.base = q;
                }
            }
        }
        std::set<FacetKind> seen;
        int ordinal = 0;
        for (const auto& child : el.children) {
            const auto* ce = std::get_if<Element>(&child.v);
            if (!ce) continue;
            const std::string p = child_path(path, *ce, ++ordinal);
            if (is_annotation(*ce)) continue;
            std::optional<FacetKind> fk;
            if (vocab(*ce)) fk = facet_by_name(ce->name.local.bytes());
            if (!fk) {
                unsupported(*ce, p, "child of restriction");
                continue;
            }
            check_attrs(*ce, p, {"value"});
            check_no_text(*ce, p);
            const auto* va = find_attr(*ce, "value");
            if (!va) {
                add(Code::SCH005, p, ce->line, ce->col, "facet requires a value attribute");
                continue;
            }
            if (*fk != FacetKind::Pattern && *fk != FacetKind::Enumeration &&
                !seen.insert(*fk).second) {
                add(Code::SCH005, p, ce->line, ce->col,
                    std::string("repeated facet ") + facet_name(*fk));
                continue;
            }
            if (is_length_facet(*fk) && !parse_uint(va->value)) {
                add(Code::SCH006, p, va->line, va->col,
                    std::string(facet_name(*fk)) + " requires a non-negative integer value");
                continue;
            }
            if (const auto* bb = std::get_if<BuiltinKind>(&def.base)) {
                if (!facet_applicable(*fk, *bb)) {
                    add(Code::SCH006, p, ce->line, ce->col,
                        std::string("facet ") + facet_name(*fk) + " is not applicable to base " +
                            builtin_name(*bb));
                    continue;
                }
            }
            def.facets.push_back(Facet{*fk, va->value, ce->line, ce->col});
        }
    }

    // --- attributes -------------------------------------------------------

    std::optional<AttrSpec> parse_attribute(const Element& el, const std::string& path) {
        check_attrs(el, path, {"name", "type", "use"});
        check_no_text(el, path);
        AttrSpec spec;
        spec.line = el.line;
        spec.col = el.col;
        const auto name = ncname_attr(el, path, "name");
        if (!find_attr(el, "name")) {
            add(Code::SCH005, path, el.line, el.col, "attribute declaration requires a name");
            return std::nullopt;
        }
        if (!name) return std::nullopt;
        spec.name.local = SecureText::from_validated_utf8(*name);
        if (const auto* u = find_attr(el, "use")) {
            const auto uv = u->value.bytes();
            if (uv == "required") {
                spec.use = AttrUse::Required;
            } else if (uv == "optional") {
                spec.use = AttrUse::Optional;
            } else {
                add(Code::SCH005, path, u->line, u->col,
                    "unsupported use value '" + str(u->value) + "'");
                return std::nullopt;
            }
        }
        auto type = type_attr(el, path);
        std::shared_ptr<SimpleTypeDef> inline_simple;
        int ordinal = 0;
        for (const auto& child : el.children) {
            const auto* ce = std::get_if<Element>(&child.v);
            if (!ce) continue;
            const std::string p = child_path(path, *ce, ++ordinal);
            if (is_annotation(*ce)) continue;
            if (is(*ce, "simpleType") && !inline_simple) {
                if (find_attr(*ce, "name")) {
                    add(Code::SCH005, p, ce->line, ce->col, "inline simpleType must be unnamed");
                }
                inline_simple = parse_simple_type(*ce, p);
                continue;
            }
            unsupported(*ce, p, "child of attribute");
        }
        if (type && inline_simple) {
            add(Code::SCH005, path, el.line, el.col,
                "attribute has both a type reference and an inline type");
            return std::nullopt;
        }
        if (inline_simple) {
            auto def = std::make_shared<TypeDef>();
            def->v = std::move(*inline_simple);
            spec.type = TypeRef{std::move(def)};
        } else if (type) {
            spec.type = std::move(*type);
        } else {
            add(Code::SCH005, path, el.line, el.col, "attribute declaration requires a type");
            return std::nullopt;
        }
        return spec;
    }

    // --- complexType ------------------------------------------------------

    std::shared_ptr<TypeDef> parse_complex_type(const Element& el, const std::string& path,
                                                bool named) {
        if (named) {
            check_attrs(el, path, {"name", "mixed"});
        } else {
            check_attrs(el, path, {"mixed"});
        }
        check_no_text(el, path);
        if (const auto* m = find_attr(el, "mixed")) {
            if (m->value.bytes() == "true") {
                add(Code::SCH001, path, m->line, m->col, "mixed content is forbidden");
            } else if (m->value.bytes() != "false") {
                add(Code::SCH005, path, m->line, m->col, "invalid mixed value");
            }
        }
        ComplexType ct;
        ct.line = el.line;
        ct.col = el.col;
        const Element* group = nullptr;
        std::string gpath;
        int ordinal = 0;
        for (const auto& child : el.children) {
            const auto* ce = std::get_if<Element>(&child.v);
            if (!ce) continue;
            const std::string p = child_path(path, *ce, ++ordinal);
            if (is_annotation(*ce)) continue;
            if (is(*ce, "sequence") || is(*ce, "choice") || is(*ce, "all")) {
                if (group) {
                    add(Code::SCH005, p, ce->line, ce->col,
                        "complexType may contain at most one content group");
                    continue;
                }
                group = ce;
                gpath = p;
                continue;
            }
            if (is(*ce, "attribute")) {
                if (auto spec = parse_attribute(*ce, p)) {
                    for (const auto& existing : ct.attributes) {
                        if (existing.name == spec->name) {
                            add(Code::SCH005, p, ce->line, ce->col,
                                "duplicate attribute declaration '" + str(spec->name.local) +
                                    "'");
                            spec.reset();
                            break;
                        }
                    }
                    if (spec) ct.attributes.push_back(std::move(*spec));
                }
                continue;
            }
            unsupported(*ce, p, "child of complexType");
        }
        if (group) {
            if (is(*group, "all")) {
                ct.content = parse_all(*group, gpath);
            } else {
                ct.content = parse_compositor(*group, gpath);
            }
        }
        auto def = std::make_shared<TypeDef>();
        def->v = std::move(ct);
        return def;
    }

    Particle parse_compositor(const Element& el, const std::string& path) {
        check_attrs(el, path, {"minOccurs", "maxOccurs"});
        check_no_text(el, path);
        const bool choice = el.name.local.bytes() == "choice";
        Particle p;
        p.line = el.line;
        p.col = el.col;
        bool ok = true;
        p.occurs = parse_occurs(el, path, &ok);
        std::vector<Particle> children;
        int ordinal = 0;
        for (const auto& child : el.children) {
            const auto* ce = std::get_if<Element>(&child.v);
            if (!ce) continue;
            const std::string cp = child_path(path, *ce, ++ordinal);
            if (is_annotation(*ce)) continue;
            if (is(*ce, "element")) {
                if (auto part = parse_local_element(*ce, cp)) children.push_back(std::move(*part));
                continue;
            }
            if (is(*ce, "sequence") || is(*ce, "choice")) {
                children.push_back(parse_compositor(*ce, cp));
                continue;
            }
            if (is(*ce, "all")) {
                add(Code::SCH005, cp, ce->line, ce->col,
                    "xs:all may only appear directly under complexType");
                continue;
            }
            unsupported(*ce, cp, "child of compositor");
        }
        if (choice && children.empty()) {
            add(Code::SCH005, path, el.line, el.col, "choice must have at least one particle");
        }
        if (choice) {
            p.v = Particle::Choice{std::move(children)};
        } else {
            p.v = Particle::Seq{std::move(children)};
        }
        return p;
    }

    Particle parse_all(const Element& el, const std::string& path) {
        check_attrs(el, path, {"minOccurs", "maxOccurs"});
        check_no_text(el, path);
        Particle p;
        p.line = el.line;
        p.col = el.col;
        bool ok = true;
        p.occurs = parse_occurs(el, path, &ok);
        if (ok && (p.occurs.min > 1 || !p.occurs.max || *p.occurs.max != 1)) {
            add(Code::SCH005, path, el.line, el.col,
                "xs:all requires minOccurs 0 or 1 and maxOccurs 1");
            p.occurs = Occurs{1, 1};
        }
        Particle::All all;
        int ordinal = 0;
        for (const auto& child : el.children) {
            const auto* ce = std::get_if<Element>(&child.v);
            if (!ce) continue;
            const std::string cp = child_path(path, *ce, ++ordinal);
            if (is_annotation(*ce)) continue;
            if (!is(*ce, "element")) {
                add(Code::SCH005, cp, ce->line, ce->col,
                    "xs:all members must be element particles");
                continue;
            }
            auto member = parse_local_element(*ce, cp);
            if (!member) continue;
            if (member->occurs.min > 1 || !member->occurs.max || *member->occurs.max != 1) {
                add(Code::SCH005, cp, ce->line, ce->col,
                    "xs:all members require minOccurs 0 or 1 and maxOccurs 1");
                continue;
            }
            all.members.push_back(std::move(*member));
        }
        p.v = std::move(all);
        return p;
    }

    std::optional<Particle> parse_local_element(const Element& el, const std::string& path) {
        check_attrs(el, path, {"name", "ref", "type", "minOccurs", "maxOccurs"});
        check_no_text(el, path);
        Particle p;
        p.line = el.line;
        p.col = el.col;
        bool ok = true;
        p.occurs = parse_occurs(el, path, &ok);
        ElementDecl decl;
        decl.line = el.line;
        decl.col = el.col;
        if (const auto* ra = find_attr(el, "ref")) {
            if (find_attr(el, "name") || find_attr(el, "type")) {
                add(Code::SCH005, path, el.line, el.col,
                    "element ref excludes name and type attributes");
                return std::nullopt;
            }
            auto r = check_name(ra->value, lim);
            if (std::holds_alternative<WfError>(r)) {
                add(Code::SCH002, path, ra->line, ra->col,
                    "invalid element reference '" + str(ra->value) + "'");
                return std::nullopt;
            }
            decl.ref = std::get<QName>(std::move(r));
            p.v = std::move(decl);
            return p;
        }
        if (!fill_named_element(el, path, decl)) return std::nullopt;
        p.v = std::move(decl);
        return p;
    }

    // Shared by global and local named element declarations: name plus
    // exactly one of type= or an inline type.
    bool fill_named_element(const Element& el, const std::string& path, ElementDecl& decl) {
        if (!find_attr(el, "name")) {
            add(Code::SCH005, path, el.line, el.col, "element declaration requires a name");
            return false;
        }
        const auto name = ncname_attr(el, path, "name");
        if (!name) return false;
        decl.name.local = SecureText::from_validated_utf8(*name);
        auto type = type_attr(el, path);
        std::shared_ptr<TypeDef> inline_type;
        int ordinal = 0;
        for (const auto& child : el.children) {
            const auto* ce = std::get_if<Element>(&child.v);
            if (!ce) continue;
            const std::string p = child_path(path, *ce, ++ordinal);
            if (is_annotation(*ce)) continue;
            if ((is(*ce, "complexType") || is(*ce, "simpleType")) && !inline_type) {
                if (find_attr(*ce, "name")) {
                    add(Code::SCH005, p, ce->line, ce->col, "inline type must be unnamed");
                }
                if (is(*ce, "complexType")) {
                    inline_type = parse_complex_type(*ce, p, false);
                } else {
                    auto simple = parse_simple_type(*ce, p);
                    inline_type = std::make_shared<TypeDef>();
                    inline_type->v = std::move(*simple);
                }
                continue;
            }
            unsupported(*ce, p, "child of element");
        }
        if (type && inline_type) {
            add(Code::SCH005, path, el.line, el.col,
                "element has both a type reference and an inline type");
            return false;
        }
        if (inline_type) {
            decl.type = TypeRef{std::move(inline_type)};
        } else if (type) {
            decl.type = std::move(*type);
        } else {
            add(Code::SCH005, path, el.line, el.col, "element declaration requires a type");
            return false;
        }
        return true;
    }

    void parse_schema_root(const Element& root, const std::string& path) {
        check_attrs(root, path,
                    {"targetNamespace", "elementFormDefault", "attributeFormDefault", "version"});
        check_no_text(root, path);
        int ordinal = 0;
        for (const auto& child : root.children) {
            const auto* ce = std::get_if<Element>(&child.v);
            if (!ce) continue;
            const std::string p = child_path(path, *ce, ++ordinal);
            if (is_annotation(*ce)) continue;
            if (is(*ce, "element")) {
                check_attrs(*ce, p, {"name", "type"});
                check_no_text(*ce, p);
                ElementDecl decl;
                decl.line = ce->line;
                decl.col = ce->col;
                if (find_attr(*ce, "ref") || find_attr(*ce, "minOccurs") ||
                    find_attr(*ce, "maxOccurs")) {
                    add(Code::SCH005, p, ce->line, ce->col,
                        "global elements take neither ref nor occurrence attributes");
                    continue;
                }
                if (!fill_named_element(*ce, p, decl)) continue;
                const std::string key = str(decl.name.local);
                if (!model.global_elements.emplace(key, std::move(decl)).second) {
                    add(Code::SCH005, p, ce->line, ce->col,
                        "duplicate global element '" + key + "'");
                }
                continue;
            }
            if (is(*ce, "complexType") || is(*ce, "simpleType")) {
                const auto name = ncname_attr(*ce, p, "name");
                if (!find_attr(*ce, "name")) {
                    add(Code::SCH005, p, ce->line, ce->col, "global types require a name");
                    continue;
                }
                if (!name) continue;
                std::shared_ptr<TypeDef> def;
                if (is(*ce, "complexType")) {
                    def = parse_complex_type(*ce, p, true);
                } else {
                    auto simple = parse_simple_type(*ce, p);
                    def = std::make_shared<TypeDef>();
                    def->v = std::move(*simple);
                }
                if (!model.global_types.emplace(*name, std::move(def)).second) {
                    add(Code::SCH005, p, ce->line, ce->col,
                        "duplicate global type '" + *name + "'");
                }
                continue;
            }
            unsupported(*ce, p, "top-level construct");
        }
    }
};

}  // namespace

BuildResult build_schema(const XmlDocument& doc, const Limits& limits) {
    Builder b{.lim = limits, .prefix = {}, .diags = {}, .model = {}};
    b.prefix = doc.root.name.prefix;
    b.model.schema_prefix = doc.root.name.prefix;
    const std::string root_path = child_path("", doc.root, 1);
    if (doc.root.name.local.bytes() != "schema") {
        b.add(Code::SCH005, root_path, doc.root.line, doc.root.col,
              "root element of a schema document must be <schema>");
        return std::move(b.diags);
    }
    b.parse_schema_root(doc.root, root_path);
    if (!b.diags.empty()) return std::move(b.diags);
    return std::move(b.model);
}

// --- Resolution -----------------------------------------------------------

namespace {

struct Resolver {
    const SchemaModel& model;
    std::vector<Diag> diags;
    ResolvedSchema out;
    int next_source_id = 0;

    // One slot per distinct TypeDef plus one shared slot per bare built-in.
    std::unordered_map<const TypeDef*, int> type_slots;
    std::map<BuiltinKind, int> builtin_slots;

    // Simple-type flattening state for cycle detection.
    enum class Mark { Visiting, Done };
    std::unordered_map<const TypeDef*, Mark> marks;

    void add(Code code, int line, int col, std::string msg) {
        diags.push_back(Diag{code, line, col, "/", std::move(msg)});
    }

    int builtin_slot(BuiltinKind b) {
        const auto it = builtin_slots.find(b);
        if (it != builtin_slots.end()) return it->second;
        const int idx = static_cast<int>(out.types.size());
        out.types.push_back(RSimple{b, {}, 1, 1});
        builtin_slots.emplace(b, idx);
        return idx;
    }

    const TypeDef* lookup_named(const QName& q, int line, int col) {
        const auto it = model.global_types.find(str(q.local));
        if (it == model.global_types.end()) {
            add(Code::SCH002, line, col, "reference to undeclared type '" + str(q.local) + "'");
            return nullptr;
        }
        return it->second.get();
    }

    // Flattens a simple type definition to (builtin base, facet chain),
    // following named bases with cycle detection.
    std::optional<RSimple> flatten_simple(const SimpleTypeDef& def) {
        RSimple out_simple;
        out_simple.line = def.line;
        out_simple.col = def.col;
        if (const auto* b = std::get_if<BuiltinKind>(&def.base)) {
            out_simple.base = *b;
        } else {
            const auto& q = std::get<QName>(def.base);
            const TypeDef* base_def = lookup_named(q, def.line, def.col);
            if (!base_def) return std::nullopt;
            const auto mark = marks.find(base_def);
            if (mark != marks.end() && mark->second == Mark::Visiting) {
                add(Code::SCH003, def.line, def.col,
                    "cyclic simple-type derivation through '" + str(q.local) + "'");
                return std::nullopt;
            }
            const auto* base_simple = std::get_if<SimpleTypeDef>(&base_def->v);
            if (!base_simple) {
                add(Code::SCH006, def.line, def.col,
                    "restriction base '" + str(q.local) + "' is not a simple type");
                return std::nullopt;
            }
            marks[base_def] = Mark::Visiting;
            auto flat = flatten_simple(*base_simple);
            marks[base_def] = Mark::Done;
            if (!flat) return std::nullopt;
            out_simple.base = flat->base;
            out_simple.facets = std::move(flat->facets);
        }
        for (const auto& f : def.facets) {
            if (!facet_applicable(f.kind, out_simple.base)) {
                add(Code::SCH006, f.line, f.col,
                    std::string("facet ") + facet_name(f.kind) + " is not applicable to base " +
                        builtin_name(out_simple.base));
                continue;
            }
            out_simple.facets.push_back(f);
        }
        return out_simple;
    }

    // Returns the table index for a TypeDef, creating and filling its slot
    // on first use.
    int resolve_typedef(const TypeDef* def) {
        const auto it = type_slots.find(def);
        if (it != type_slots.end()) return it->second;
        const int idx = static_cast<int>(out.types.size());
        // Reserve the slot first so element recursion through complex
        // types terminates.
        if (const auto* simple = std::get_if<SimpleTypeDef>(&def->v)) {
            out.types.push_back(RSimple{BuiltinKind::String, {}, simple->line, simple->col});
            type_slots.emplace(def, idx);
            marks[def] = Mark::Visiting;
            auto flat = flatten_simple(*simple);
            marks[def] = Mark::Done;
            if (flat) out.types[idx] = std::move(*flat);
            return idx;
        }
        const auto& ct = std::get<ComplexType>(def->v);
        out.types.push_back(RComplex{std::nullopt, {}, ct.line, ct.col});
        type_slots.emplace(def, idx);
        RComplex rc;
        rc.line = ct.line;
        rc.col = ct.col;
        for (const auto& spec : ct.attributes) {
            if (auto ra = resolve_attr(spec)) rc.attrs.push_back(std::move(*ra));
        }
        if (ct.content) {
            rc.particle = resolve_particle(*ct.content);
        }
        out.types[idx] = std::move(rc);
        return idx;
    }

    int resolve_type_ref(const TypeRef& ref, int line, int col) {
        if (const auto* b = std::get_if<BuiltinKind>(&ref)) return builtin_slot(*b);
        if (const auto* q = std::get_if<QName>(&ref)) {
            const TypeDef* def = lookup_named(*q, line, col);
            if (!def) return -1;
            return resolve_typedef(def);
        }
        return resolve_typedef(std::get<std::shared_ptr<TypeDef>>(ref).get());
    }

    std::optional<RAttr> resolve_attr(const AttrSpec& spec) {
        const int idx = resolve_type_ref(spec.type, spec.line, spec.col);
        if (idx < 0) return std::nullopt;
        if (!std::holds_alternative<RSimple>(out.types[idx])) {
            add(Code::SCH006, spec.line, spec.col,
                "attribute '" + str(spec.name.local) + "' requires a simple type");
            return std::nullopt;
        }
        return RAttr{str(spec.name.local), idx, spec.use, spec.line, spec.col};
    }

    std::optional<RElem> resolve_elem_decl(const ElementDecl& decl, int line, int col) {
        RElem re;
        re.line = line;
        re.col = col;
        re.source_id = next_source_id++;
        if (decl.ref) {
            const auto it = model.global_elements.find(str(decl.ref->local));
            if (it == model.global_elements.end()) {
                add(Code::SCH002, line, col,
                    "reference to undeclared element '" + str(decl.ref->local) + "'");
                return std::nullopt;
            }
            const ElementDecl& target = it->second;
            re.local = str(target.name.local);
            re.type_index = resolve_type_ref(*target.type, target.line, target.col);
        } else {
            re.local = str(decl.name.local);
            re.type_index = resolve_type_ref(*decl.type, line, col);
        }
        if (re.type_index < 0) return std::nullopt;
        return re;
    }

    std::optional<RParticle> resolve_particle(const Particle& p) {
        RParticle rp;
        rp.occurs = p.occurs;
        rp.line = p.line;
        rp.col = p.col;
        if (const auto* decl = std::get_if<ElementDecl>(&p.v)) {
            auto re = resolve_elem_decl(*decl, p.line, p.col);
            if (!re) return std::nullopt;
            rp.v = std::move(*re);
            return rp;
        }
        if (const auto* seq = std::get_if<Particle::Seq>(&p.v)) {
            RSeq rs;
            for (const auto& c : seq->children) {
                if (auto rc = resolve_particle(c)) rs.children.push_back(std::move(*rc));
            }
            rp.v = std::move(rs);
            return rp;
        }
        if (const auto* ch = std::get_if<Particle::Choice>(&p.v)) {
            RChoice rc;
            for (const auto& c : ch->children) {
                if (auto r = resolve_particle(c)) rc.children.push_back(std::move(*r));
            }
            rp.v = std::move(rc);
            return rp;
        }
        const auto& all = std::get<Particle::All>(p.v);
        RAll ra;
        ra.group_optional = p.occurs.min == 0;
        for (const auto& m : all.members) {
            const auto* decl = std::get_if<ElementDecl>(&m.v);
            assert(decl);
            auto re = resolve_elem_decl(*decl, m.line, m.col);
            if (!re) continue;
            ra.members.push_back(RAllMember{std::move(*re), m.occurs.min >= 1});
        }
        rp.occurs = Occurs{1, 1};  // optionality captured in group_optional
        rp.v = std::move(ra);
        return rp;
    }

    void run() {
        // Named types first, in name order, so indices are deterministic.
        for (const auto& [name, def] : model.global_types) {
            (void)name;
            resolve_typedef(def.get());
        }
        for (const auto& [name, decl] : model.global_elements) {
            const int idx = resolve_type_ref(*decl.type, decl.line, decl.col);
            if (idx < 0) continue;
            out.roots.emplace(name, RootElem{idx, decl.line, decl.col});
        }
    }
};

}  // namespace

ResolveResult resolve_refs(const SchemaModel& model) {
    Resolver r{.model = model,
               .diags = {},
               .out = {},
               .next_source_id = 0,
               .type_slots = {},
               .builtin_slots = {},
               .marks = {}};
    r.run();
    if (!r.diags.empty()) return std::move(r.diags);
    return std::move(r.out);
}

}  // namespace xsv
