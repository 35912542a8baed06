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

#ifndef XSV_SCHEMA_HPP
#define XSV_SCHEMA_HPP

#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "xsv/xml.hpp"

namespace xsv {

// Closed set of supported value-space kinds.
enum class BuiltinKind { String, Token, Boolean, Integer, Decimal, Date, DateTime, AnyUri };

const char* builtin_name(BuiltinKind k);
std::optional<BuiltinKind> builtin_by_name(std::string_view local);

enum class FacetKind {
    Length,
    MinLength,
    MaxLength,
    Pattern,
    Enumeration,
    MinInclusive,
    MaxInclusive,
    MinExclusive,
    MaxExclusive,
};

const char* facet_name(FacetKind k);

struct Facet {
    FacetKind kind;
    SecureText value;
    int line = 1, col = 1;
};

// Occurrence range; absent max means unbounded.
struct Occurs {
    std::uint64_t min = 1;
    std::optional<std::uint64_t> max = 1;
};

// --- Vetted schema model (pre-resolution) --------------------------------

struct TypeDef;

struct SimpleTypeDef {
    // Restriction base: a built-in, or a named simple type flattened
    // during resolution.
    std::variant<BuiltinKind, QName> base;
    std::vector<Facet> facets;
    int line = 1, col = 1;
};

// What an element or attribute declaration is typed by: a built-in, a
// reference to a named type, or an inline definition.
using TypeRef = std::variant<BuiltinKind, QName, std::shared_ptr<TypeDef>>;

struct ElementDecl {
    QName name;  // empty local for pure ref particles
    std::optional<TypeRef> type;
    std::optional<QName> ref;
    int line = 1, col = 1;
};

struct Particle {
    struct Seq {
        std::vector<Particle> children;
    };
    struct Choice {
        std::vector<Particle> children;  // non-empty
    };
    struct All {
        // Element-only members, each with maxOccurs 1.
        std::vector<Particle> members;
    };
    std::variant<ElementDecl, Seq, Choice, All> v;
    Occurs occurs;
    int line = 1, col = 1;
};

enum class AttrUse { Optional, Required };

struct AttrSpec {
    QName name;
    TypeRef type;
    AttrUse use = AttrUse::Optional;
    int line = 1, col = 1;
};

struct ComplexType {
    std::optional<Particle> content;  // absent means empty content
    std::vector<AttrSpec> attributes;
    int line = 1, col = 1;
};

struct TypeDef {
    std::variant<ComplexType, SimpleTypeDef> v;
};

struct SchemaModel {
    // Lexical prefix bound to the schema vocabulary at the root element;
    // empty when the vocabulary is unprefixed.
    std::optional<SecureText> schema_prefix;
    std::map<std::string, ElementDecl> global_elements;  // by local name
    std::map<std::string, std::shared_ptr<TypeDef>> global_types;
};

// --- Resolved schema ------------------------------------------------------

struct RParticle;

struct RElem {
    std::string local;
    int type_index = -1;
    // Identity of the source particle in the schema document; occurrence
    // expansion copies keep their source id.
    int source_id = -1;
    int line = 1, col = 1;
};

struct RSeq {
    std::vector<RParticle> children;
};

struct RChoice {
    std::vector<RParticle> children;
};

struct RAllMember {
    RElem elem;
    bool required = true;
};

struct RAll {
    std::vector<RAllMember> members;
    bool group_optional = false;
};

struct RParticle {
    std::variant<RElem, RSeq, RChoice, RAll> v;
    Occurs occurs;
    int line = 1, col = 1;
};

struct RAttr {
    std::string local;
    int type_index = -1;  // always an RSimple slot
    AttrUse use = AttrUse::Optional;
    int line = 1, col = 1;
};

struct RSimple {
    BuiltinKind base;
    std::vector<Facet> facets;  // flattened along the derivation chain
    int line = 1, col = 1;
};

struct RComplex {
    std::optional<RParticle> particle;  // absent means empty content
    std::vector<RAttr> attrs;
    int line = 1, col = 1;
};

using RType = std::variant<RSimple, RComplex>;

struct RootElem {
    int type_index = -1;
    int line = 1, col = 1;
};

struct ResolvedSchema {
    std::vector<RType> types;
    std::map<std::string, RootElem> roots;  // global elements by local name
};

// --- Operations -----------------------------------------------------------

// Whitelist screen over the schema document. Empty result means ok; every
// forbidden construct yields SCH001, every unrecognized schema-vocabulary
// element SCH005.
std::vector<Diag> screen_constructs(const XmlDocument& doc);

using BuildResult = std::variant<SchemaModel, std::vector<Diag>>;
BuildResult build_schema(const XmlDocument& doc, const Limits& limits);

using ResolveResult = std::variant<ResolvedSchema, std::vector<Diag>>;
ResolveResult resolve_refs(const SchemaModel& model);

}  // namespace xsv

#endif
