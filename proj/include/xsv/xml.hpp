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

#ifndef XSV_XML_HPP
#define XSV_XML_HPP

#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "xsv/diagnostics.hpp"
#include "xsv/limits.hpp"
#include "xsv/secure_text.hpp"

namespace xsv {

struct QName {
    SecureText local;            // NCName
    std::optional<SecureText> prefix;

    bool operator==(const QName&) const = default;
};

struct Attribute {
    QName name;
    SecureText value;  // references already resolved, whitespace normalized
    int line = 1;
    int col = 1;

    bool operator==(const Attribute&) const = default;
};

struct TextNode {
    SecureText text;
    int line = 1;
    int col = 1;

    bool operator==(const TextNode&) const = default;
};

struct Node;

struct Element {
    QName name;
    std::vector<Attribute> attributes;
    std::vector<Node> children;
    int line = 1;
    int col = 1;

    bool operator==(const Element&) const = default;
};

// Tagged union of tree content. Consumers dispatch on both cases
// explicitly; there is deliberately no third variant for comments or
// processing instructions (those are discarded at parse).
struct Node {
    std::variant<Element, TextNode> v;

    bool operator==(const Node&) const = default;
};

struct XmlDocument {
    Element root;
    std::uint64_t total_nodes = 1;  // every parsed unit, including dropped ones
    std::uint64_t max_depth = 1;

    bool operator==(const XmlDocument&) const = default;
};

using WfError = Diag;  // code from the WF/LIM set, document-level path

using ParseResult = std::variant<XmlDocument, WfError>;

// Hardened well-formedness parse of a complete document. Total: returns a
// tree or a single diagnostic for every byte sequence, in one pass, with
// iteration depth independent of input nesting.
//
// Policy baked in: UTF-8 only, optional BOM, optional XML declaration
// (version 1.0, encoding UTF-8 if present), DOCTYPE banned (WF003),
// numeric character references banned (WF001), only the five predefined
// entities (WF002 otherwise), CDATA sections banned (WF004), comments and
// processing instructions parsed then dropped.
ParseResult parse_document(std::string_view bytes, const Limits& limits);

// Resolves the name between '&' and ';'. Exactly amp, lt, gt, quot, apos
// succeed; "#..." is WF001; anything else WF002.
std::variant<char32_t, WfError> resolve_entity_ref(const SecureText& name);

// Splits on at most one ':' and checks both parts against NCName.
std::variant<QName, WfError> check_name(const SecureText& text, const Limits& limits);

// NCName character predicates (XML 1.0 NameStartChar/NameChar minus ':').
bool is_ncname_start(char32_t c);
bool is_ncname_char(char32_t c);

// True iff text consists only of XML whitespace (#x20 #x9 #xA #xD).
bool is_xml_whitespace(const SecureText& text);

}  // namespace xsv

#endif
