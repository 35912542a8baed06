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

#include "xsv/xml.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace xsv {

namespace {

struct Range {
    char32_t lo, hi;
};

// XML 1.0 (5th ed.) NameStartChar, minus ':'.
constexpr Range kNameStart[] = {
    {'A', 'Z'},       {'_', '_'},       {'a', 'z'},       {0xC0, 0xD6},
    {0xD8, 0xF6},     {0xF8, 0x2FF},    {0x370, 0x37D},   {0x37F, 0x1FFF},
    {0x200C, 0x200D}, {0x2070, 0x218F}, {0x2C00, 0x2FEF}, {0x3001, 0xD7FF},
    {0xF900, 0xFDCF}, {0xFDF0, 0xFFFD}, {0x10000, 0xEFFFF},
};

constexpr Range kNameExtra[] = {
    {'-', '-'}, {'.', '.'}, {'0', '9'}, {0xB7, 0xB7}, {0x300, 0x36F}, {0x203F, 0x2040},
};

bool in_ranges(char32_t c, const Range* rs, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (c >= rs[i].lo && c <= rs[i].hi) return true;
    }
    return false;
}

bool is_ws_byte(char b) { return b == ' ' || b == '\t' || b == '\n' || b == '\r'; }

}  // namespace

bool is_ncname_start(char32_t c) {
    return in_ranges(c, kNameStart, std::size(kNameStart));
}

bool is_ncname_char(char32_t c) {
    return is_ncname_start(c) || in_ranges(c, kNameExtra, std::size(kNameExtra));
}

bool is_xml_whitespace(const SecureText& text) {
    for (char b : text.bytes()) {
        if (!is_ws_byte(b)) return false;
    }
    return true;
}

std::variant<char32_t, WfError> resolve_entity_ref(const SecureText& name) {
    const std::string_view n = name.bytes();
    if (!n.empty() && n[0] == '#') {
        return WfError{Code::WF001, 1, 1, "/",
                       "numeric character reference &" + std::string(n) + "; is forbidden"};
    }
    if (n == "amp") return U'&';
    if (n == "lt") return U'<';
    if (n == "gt") return U'>';
    if (n == "quot") return U'"';
    if (n == "apos") return U'\'';
    return WfError{Code::WF002, 1, 1, "/",
                   "entity &" + std::string(n) + "; is not one of the five predefined entities"};
}

std::variant<QName, WfError> check_name(const SecureText& text, const Limits& limits) {
    const std::string_view s = text.bytes();
    if (s.size() > limits.max_name_bytes) {
        return WfError{Code::LIM003, 1, 1, "/", "name length exceeds max_name_bytes"};
    }
    const auto first_colon = s.find(':');
    std::string_view prefix, local;
    if (first_colon == std::string_view::npos) {
        local = s;
    } else {
        if (s.find(':', first_colon + 1) != std::string_view::npos) {
            return WfError{Code::WF004, 1, 1, "/", "name contains more than one colon"};
        }
        prefix = s.substr(0, first_colon);
        local = s.substr(first_colon + 1);
        if (prefix.empty()) {
            return WfError{Code::WF004, 1, 1, "/", "empty name prefix"};
        }
    }
    if (local.empty()) {
        return WfError{Code::WF004, 1, 1, "/", "empty name"};
    }
    auto check_part = [](std::string_view part) {
        std::size_t i = 0;
        bool first = true;
        while (i < part.size()) {
            const char32_t c = next_scalar(part, i);
            if (first ? !is_ncname_start(c) : !is_ncname_char(c)) return false;
            first = false;
        }
        return true;
    };
    if (!check_part(local) || (!prefix.empty() && !check_part(prefix))) {
        return WfError{Code::WF004, 1, 1, "/", "name violates the NCName production"};
    }
    QName q;
    q.local = SecureText::from_validated_utf8(std::string(local));
    if (!prefix.empty()) q.prefix = SecureText::from_validated_utf8(std::string(prefix));
    return q;
}

namespace {

// Single-pass iterative parser over EOL-normalized, validated UTF-8.
// Nesting is handled with an explicit stack; no recursion on input depth.
class Parser {
public:
    Parser(std::string_view s, const Limits& limits) : s_(s), lim_(limits) {}

    ParseResult run() {
        if (!prolog()) return *err_;
        if (!element_loop()) return *err_;
        if (!trailer()) return *err_;
        XmlDocument doc;
        doc.root = std::move(root_);
        doc.total_nodes = nodes_;
        doc.max_depth = max_depth_;
        return doc;
    }

private:
    struct Open {
        Element el;
        std::string text;
        int text_line = 1, text_col = 1;
    };

    std::string_view s_;
    const Limits& lim_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    std::optional<WfError> err_;
    Element root_;
    std::uint64_t nodes_ = 0;
    std::uint64_t max_depth_ = 0;

    bool eof() const { return pos_ >= s_.size(); }
    char byte() const { return s_[pos_]; }
    bool have(std::string_view lit) const { return s_.substr(pos_, lit.size()) == lit; }

    char32_t take() {
        char32_t c = next_scalar(s_, pos_);
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void take_ascii(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) take();
    }

    bool fail(Code code, std::string msg) { return fail_at(code, line_, col_, std::move(msg)); }

    bool fail_at(Code code, int line, int col, std::string msg) {
        err_ = WfError{code, line, col, "/", std::move(msg)};
        return false;
    }

    bool count_node() {
        if (++nodes_ > lim_.max_total_nodes) {
            return fail(Code::LIM007, "node count exceeds max_total_nodes");
        }
        return true;
    }

    void skip_ws() {
        while (!eof() && is_ws_byte(byte())) take();
    }

    bool expect(char c, const char* what) {
        if (eof() || byte() != c) return fail(Code::WF004, std::string("expected ") + what);
        take();
        return true;
    }

    // --- Prolog -----------------------------------------------------------

    bool prolog() {
        if (have("<?xml") && (pos_ + 5 < s_.size()) &&
            (is_ws_byte(s_[pos_ + 5]) || s_[pos_ + 5] == '?')) {
            if (!xml_decl()) return false;
        }
        for (;;) {
            skip_ws();
            if (eof()) return fail(Code::WF004, "no root element");
            if (have("<!--")) {
                if (!comment()) return false;
                continue;
            }
            if (have("<!DOCTYPE")) {
                return fail(Code::WF003, "DOCTYPE is forbidden");
            }
            if (have("<!")) return fail(Code::WF004, "illegal markup in prolog");
            if (have("<?")) {
                if (!pi()) return false;
                continue;
            }
            if (byte() == '<') return true;  // root start tag
            return fail(Code::WF004, "content before root element");
        }
    }

    bool xml_decl() {
        take_ascii(5);  // <?xml
        skip_ws();
        if (!have("version")) return fail(Code::WF004, "XML declaration must declare version");
        take_ascii(7);
        std::string v;
        if (!pseudo_attr_value(v)) return false;
        if (v != "1.0") return fail(Code::WF004, "only XML version 1.0 is accepted");
        skip_ws();
        if (have("encoding")) {
            take_ascii(8);
            std::string enc;
            if (!pseudo_attr_value(enc)) return false;
            std::transform(enc.begin(), enc.end(), enc.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            if (enc != "utf-8") {
                return fail(Code::WF005, "only the UTF-8 encoding is accepted");
            }
            skip_ws();
        }
        if (have("standalone")) {  // tolerated, ignored
            take_ascii(10);
            std::string sa;
            if (!pseudo_attr_value(sa)) return false;
            if (sa != "yes" && sa != "no") {
                return fail(Code::WF004, "standalone must be yes or no");
            }
            skip_ws();
        }
        if (!have("?>")) return fail(Code::WF004, "unterminated XML declaration");
        take_ascii(2);
        return true;
    }

    bool pseudo_attr_value(std::string& out) {
        skip_ws();
        if (!expect('=', "'='")) return false;
        skip_ws();
        if (eof() || (byte() != '"' && byte() != '\'')) {
            return fail(Code::WF004, "expected quoted value");
        }
        const char q = byte();
        take();
        while (!eof() && byte() != q) {
            std::size_t p = pos_;
            out.append(s_.substr(pos_, 1));
            take();
            (void)p;
        }
        if (eof()) return fail(Code::WF004, "unterminated quoted value");
        take();
        return true;
    }

    // --- Markup shared by prolog, content and trailer ---------------------

    bool comment() {
        take_ascii(4);  // <!--
        for (;;) {
            if (eof()) return fail(Code::WF004, "unterminated comment");
            if (have("--")) {
                if (have("-->")) {
                    take_ascii(3);
                    return count_node();
                }
                return fail(Code::WF004, "'--' is not allowed inside a comment");
            }
            take();
        }
    }

    bool pi() {
        const int l = line_, c = col_;
        take_ascii(2);  // <?
        std::string target;
        if (!raw_name(target)) return false;
        std::string lower = target;
        std::transform(lower.begin(), lower.end(), lower.begin(),
                       [](unsigned char ch) { return std::tolower(ch); });
        if (lower == "xml") {
            return fail_at(Code::WF004, l, c, "processing-instruction target 'xml' is reserved");
        }
        if (!eof() && !is_ws_byte(byte()) && !have("?>")) {
            return fail(Code::WF004, "malformed processing instruction");
        }
        for (;;) {
            if (eof()) return fail(Code::WF004, "unterminated processing instruction");
            if (have("?>")) {
                take_ascii(2);
                return count_node();
            }
            take();
        }
    }

    // Collects raw name characters (NCName chars plus ':') at the cursor.
    bool raw_name(std::string& out) {
        const std::size_t start = pos_;
        while (!eof()) {
            std::size_t p = pos_;
            const char32_t ch = next_scalar(s_, p);
            if (ch != ':' && !is_ncname_char(ch)) break;
            take();
            if (pos_ - start > lim_.max_name_bytes) {
                return fail(Code::LIM003, "name length exceeds max_name_bytes");
            }
        }
        if (pos_ == start) return fail(Code::WF004, "expected a name");
        out.assign(s_.substr(start, pos_ - start));
        return true;
    }

    bool parse_qname(QName& out) {
        const int l = line_, c = col_;
        std::string raw;
        if (!raw_name(raw)) return false;
        auto r = check_name(SecureText::from_validated_utf8(raw), lim_);
        if (auto* e = std::get_if<WfError>(&r)) {
            return fail_at(e->code, l, c, e->message);
        }
        out = std::get<QName>(std::move(r));
        return true;
    }

    // Parses &...; at the cursor and yields the referenced scalar.
    bool reference(char32_t& out) {
        const int l = line_, c = col_;
        take();  // &
        if (!eof() && byte() == '#') {
            // Consume the whole reference for a precise message, but never
            // decode it: the character must not come into existence.
            std::string body;
            while (!eof() && byte() != ';' && body.size() < 16) {
                body += byte();
                take();
            }
            return fail_at(Code::WF001, l, c,
                           "numeric character reference &" + body + "; is forbidden");
        }
        std::string name;
        while (!eof() && byte() != ';') {
            if (name.size() >= 16 || is_ws_byte(byte()) || byte() == '<' || byte() == '&') {
                return fail_at(Code::WF004, l, c, "unterminated entity reference");
            }
            name += byte();
            take();
        }
        if (eof()) return fail_at(Code::WF004, l, c, "unterminated entity reference");
        take();  // ;
        auto r = resolve_entity_ref(SecureText::from_validated_utf8(name));
        if (auto* e = std::get_if<WfError>(&r)) {
            return fail_at(e->code, l, c, e->message);
        }
        out = std::get<char32_t>(r);
        return true;
    }

    // --- Element structure ------------------------------------------------

    // Parses a start tag at '<'. On return, *closed tells whether it was
    // an empty-element tag.
    bool start_tag(Element& el, bool* closed) {
        el.line = line_;
        el.col = col_;
        take();  // <
        if (!parse_qname(el.name)) return false;
        bool saw_ws = false;
        for (;;) {
            const std::size_t before = pos_;
            skip_ws();
            saw_ws = pos_ != before;
            if (eof()) return fail(Code::WF004, "unterminated start tag");
            if (byte() == '>') {
                take();
                *closed = false;
                return true;
            }
            if (have("/>")) {
                take_ascii(2);
                *closed = true;
                return true;
            }
            if (!saw_ws) return fail(Code::WF004, "expected whitespace before attribute");
            Attribute at;
            at.line = line_;
            at.col = col_;
            if (!parse_qname(at.name)) return false;
            skip_ws();
            if (!expect('=', "'=' after attribute name")) return false;
            skip_ws();
            if (!attr_value(at.value)) return false;
            for (const auto& existing : el.attributes) {
                if (existing.name == at.name) {
                    return fail_at(Code::WF004, at.line, at.col, "duplicate attribute");
                }
            }
            el.attributes.push_back(std::move(at));
            if (el.attributes.size() > lim_.max_attrs_per_element) {
                return fail(Code::LIM004, "attribute count exceeds max_attrs_per_element");
            }
        }
    }

    bool attr_value(SecureText& out) {
        if (eof() || (byte() != '"' && byte() != '\'')) {
            return fail(Code::WF004, "attribute value must be quoted");
        }
        const char q = byte();
        take();
        std::string val;
        for (;;) {
            if (eof()) return fail(Code::WF004, "unterminated attribute value");
            if (byte() == q) {
                take();
                break;
            }
            if (byte() == '<') return fail(Code::WF004, "raw '<' in attribute value");
            if (byte() == '&') {
                char32_t c;
                if (!reference(c)) return false;
                append_utf8(val, c);
                continue;
            }
            char32_t c = take();
            // Attribute-value normalization: whitespace becomes a space.
            if (c == '\t' || c == '\n') c = ' ';
            append_utf8(val, c);
            if (val.size() > lim_.max_attr_value_bytes) {
                return fail(Code::LIM004, "attribute value length exceeds max_attr_value_bytes");
            }
        }
        out = SecureText::from_validated_utf8(std::move(val));
        return true;
    }

    bool flush_text(Open& top) {
        if (top.text.empty()) return true;
        TextNode t;
        t.text = SecureText::from_validated_utf8(std::move(top.text));
        t.line = top.text_line;
        t.col = top.text_col;
        top.text.clear();
        top.el.children.push_back(Node{std::move(t)});
        return count_node();
    }

    bool element_loop() {
        std::vector<Open> stack;
        auto open_element = [&](Element&& el, bool closed) -> bool {
            if (!count_node()) return false;
            const std::uint64_t depth = stack.size() + 1;
            if (depth > lim_.max_depth) {
                return fail_at(Code::LIM001, el.line, el.col, "nesting depth exceeds max_depth");
            }
            max_depth_ = std::max(max_depth_, depth);
            if (closed) {
                if (stack.empty()) {
                    root_ = std::move(el);
                    return true;
                }
                stack.back().el.children.push_back(Node{std::move(el)});
                return true;
            }
            Open o;
            o.el = std::move(el);
            stack.push_back(std::move(o));
            return true;
        };

        {
            Element el;
            bool closed = false;
            if (!start_tag(el, &closed)) return false;
            if (!open_element(std::move(el), closed)) return false;
            if (closed) return true;  // <root/> document
        }

        while (!stack.empty()) {
            if (eof()) {
                return fail(Code::WF004, "unclosed element '" +
                                             std::string(stack.back().el.name.local.bytes()) + "'");
            }
            Open& top = stack.back();
            const char b = byte();
            if (b == '<') {
                if (have("</")) {
                    if (!flush_text(top)) return false;
                    const int l = line_, c = col_;
                    take_ascii(2);
                    QName name;
                    if (!parse_qname(name)) return false;
                    skip_ws();
                    if (!expect('>', "'>' in end tag")) return false;
                    if (!(name == top.el.name)) {
                        return fail_at(Code::WF004, l, c,
                                       "end tag '" + std::string(name.local.bytes()) +
                                           "' does not match open element '" +
                                           std::string(top.el.name.local.bytes()) + "'");
                    }
                    Element done = std::move(top.el);
                    stack.pop_back();
                    if (stack.empty()) {
                        root_ = std::move(done);
                    } else {
                        stack.back().el.children.push_back(Node{std::move(done)});
                    }
                    continue;
                }
                if (have("<!--")) {
                    if (!comment()) return false;
                    continue;
                }
                if (have("<![")) {
                    return fail(Code::WF004, "CDATA sections are forbidden");
                }
                if (have("<!")) {
                    return fail(Code::WF004, "illegal markup in content");
                }
                if (have("<?")) {
                    if (!pi()) return false;
                    continue;
                }
                if (!flush_text(top)) return false;
                Element el;
                bool closed = false;
                if (!start_tag(el, &closed)) return false;
                if (!open_element(std::move(el), closed)) return false;
                continue;
            }
            if (b == '&') {
                if (top.text.empty()) {
                    top.text_line = line_;
                    top.text_col = col_;
                }
                char32_t c;
                if (!reference(c)) return false;
                append_utf8(top.text, c);
                continue;
            }
            if (have("]]>")) {
                return fail(Code::WF004, "']]>' is not allowed in character data");
            }
            if (top.text.empty()) {
                top.text_line = line_;
                top.text_col = col_;
            }
            append_utf8(top.text, take());
        }
        return true;
    }

    bool trailer() {
        for (;;) {
            skip_ws();
            if (eof()) return true;
            if (have("<!--")) {
                if (!comment()) return false;
                continue;
            }
            if (have("<?")) {
                if (!pi()) return false;
                continue;
            }
            return fail(Code::WF004, "content after the root element");
        }
    }
};

}  // namespace

ParseResult parse_document(std::string_view bytes, const Limits& limits) {
    if (bytes.size() > limits.max_input_bytes) {
        return WfError{Code::LIM002, 1, 1, "/", "input size exceeds max_input_bytes"};
    }
    if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);

    // One validating pass: UTF-8 and XML Char legality, plus end-of-line
    // normalization (CRLF and lone CR become LF) before any markup is read.
    std::string norm;
    norm.reserve(bytes.size());
    std::size_t i = 0;
    int line = 1, col = 1;
    while (i < bytes.size()) {
        char32_t c;
        if (!decode_scalar(bytes, i, c)) {
            return WfError{Code::WF005, line, col, "/", "invalid UTF-8 byte sequence"};
        }
        if (!is_xml_char(c)) {
            return WfError{Code::WF006, line, col, "/", "character is not a legal XML 1.0 Char"};
        }
        if (c == '\r') {
            if (i < bytes.size() && bytes[i] == '\n') ++i;
            c = '\n';
        }
        append_utf8(norm, c);
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }

    Parser p(norm, limits);
    return p.run();
}

}  // namespace xsv
