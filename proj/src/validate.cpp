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

#include "xsv/validate.hpp"

#include <algorithm>
#include <map>

namespace xsv {

namespace {

std::string brace_list(const std::vector<std::string>& symbols) {
    std::string out = "{";
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (i) out += ", ";
        out += symbols[i];
    }
    out += "}";
    return out;
}

std::string local_of(const Element& el) { return std::string(el.name.local.bytes()); }

bool is_xmlns(const Attribute& a) {
    if (a.name.prefix) return a.name.prefix->bytes() == "xmlns";
    return a.name.local.bytes() == "xmlns";
}

void report_violations(std::vector<Diag>& out, const std::vector<FacetViolation>& vs, int line,
                       int col, const std::string& path, const std::string& subject) {
    for (const auto& v : vs) {
        out.push_back(Diag{Code::VAL005, line, col, path,
                           subject + " violates " + v.subcode + ": " + v.message});
    }
}

}  // namespace

std::variant<std::vector<int>, Diag> run_content_automaton(const std::vector<ChildRef>& children,
                                                           const ContentAutomaton& a, int end_line,
                                                           int end_col) {
    std::vector<int> matched;
    matched.reserve(children.size());
    int state = 0;
    for (const auto& c : children) {
        const auto& edges = a.transitions[state];
        const auto it = edges.find(c.local);
        if (it == edges.end()) {
            return Diag{Code::VAL001, c.line, c.col, "/",
                        "unexpected element " + c.local + ", expected one of " +
                            brace_list(a.expected_symbols(state))};
        }
        matched.push_back(it->second.type_index);
        state = it->second.state;
    }
    if (!a.accepting[state]) {
        return Diag{Code::VAL002, end_line, end_col, "/",
                    "content incomplete, expected one of " +
                        brace_list(a.expected_symbols(state))};
    }
    return matched;
}

std::vector<Diag> validate_attributes(const Element& el, const std::vector<CompiledAttr>& specs,
                                      const CompiledSchema& cs, const std::string& path) {
    std::vector<Diag> out;
    for (const auto& a : el.attributes) {
        if (is_xmlns(a)) continue;
        const std::string local(a.name.local.bytes());
        const CompiledAttr* spec = nullptr;
        for (const auto& s : specs) {
            if (s.local == local) {
                spec = &s;
                break;
            }
        }
        if (!spec) {
            out.push_back(Diag{Code::VAL003, a.line, a.col, path,
                               "unknown attribute " + local});
            continue;
        }
        const auto& ct = std::get<CtSimple>(cs.types[spec->type_index]);
        auto r = ct.simple.check(a.value);
        if (const auto* vs = std::get_if<std::vector<FacetViolation>>(&r)) {
            report_violations(out, *vs, a.line, a.col, path, "attribute " + local);
        }
    }
    for (const auto& s : specs) {
        if (s.use != AttrUse::Required) continue;
        const bool present = std::any_of(
            el.attributes.begin(), el.attributes.end(),
            [&](const Attribute& a) { return !is_xmlns(a) && a.name.local.bytes() == s.local; });
        if (!present) {
            out.push_back(Diag{Code::VAL004, el.line, el.col, path,
                               "missing required attribute " + s.local});
        }
    }
    return out;
}

namespace {

struct Task {
    const Element* el;
    int type_index;
    std::string path;
};

// One element checked against its compiled type; matched children are
// appended to the work list. Iterative so adversarial limit overrides
// cannot convert document depth into machine-stack depth.
void check_one(const Task& t, const CompiledSchema& cs, std::vector<Diag>& out,
               std::vector<Task>& work) {
    const Element& el = *t.el;
    const CompiledType& ct = cs.types[t.type_index];

    const std::vector<CompiledAttr>* attrs = nullptr;
    if (const auto* e = std::get_if<CtEmpty>(&ct)) {
        attrs = &e->attrs;
    } else if (const auto* s = std::get_if<CtSimple>(&ct)) {
        attrs = &s->attrs;
    } else {
        attrs = &std::get<CtElementOnly>(ct).attrs;
    }
    auto attr_diags = validate_attributes(el, *attrs, cs, t.path);
    out.insert(out.end(), attr_diags.begin(), attr_diags.end());

    if (std::holds_alternative<CtEmpty>(ct)) {
        for (const auto& child : el.children) {
            if (const auto* txt = std::get_if<TextNode>(&child.v)) {
                if (!is_xml_whitespace(txt->text)) {
                    out.push_back(Diag{Code::VAL006, txt->line, txt->col, t.path,
                                       "text content not allowed in empty content"});
                }
            } else {
                const Element& ce = std::get<Element>(child.v);
                out.push_back(Diag{Code::VAL001, ce.line, ce.col, t.path,
                                   "unexpected element " + local_of(ce) +
                                       " in empty content"});
            }
        }
        return;
    }

    if (const auto* simple = std::get_if<CtSimple>(&ct)) {
        const TextNode* text = nullptr;
        bool bad_structure = false;
        for (const auto& child : el.children) {
            if (const auto* txt = std::get_if<TextNode>(&child.v)) {
                // The parser merges adjacent text, so at most one node.
                text = txt;
            } else {
                const Element& ce = std::get<Element>(child.v);
                out.push_back(Diag{Code::VAL006, ce.line, ce.col, t.path,
                                   "element " + local_of(ce) +
                                       " not allowed in simple content"});
                bad_structure = true;
            }
        }
        if (bad_structure) return;
        const SecureText value = text ? text->text : SecureText{};
        const int line = text ? text->line : el.line;
        const int col = text ? text->col : el.col;
        auto r = simple->simple.check(value);
        if (const auto* vs = std::get_if<std::vector<FacetViolation>>(&r)) {
            report_violations(out, *vs, line, col, t.path, "value");
        }
        return;
    }

    const auto& eo = std::get<CtElementOnly>(ct);
    std::vector<ChildRef> names;
    std::vector<const Element*> elems;
    for (const auto& child : el.children) {
        if (const auto* txt = std::get_if<TextNode>(&child.v)) {
            if (!is_xml_whitespace(txt->text)) {
                out.push_back(Diag{Code::VAL006, txt->line, txt->col, t.path,
                                   "text content not allowed in element-only content"});
            }
        } else {
            const Element& ce = std::get<Element>(child.v);
            names.push_back(ChildRef{local_of(ce), ce.line, ce.col});
            elems.push_back(&ce);
        }
    }

    // Paths use 1-based ordinals among same-named element siblings.
    std::map<std::string, int> seen;
    auto child_path = [&](std::size_t i) {
        const int ord = ++seen[names[i].local];
        return t.path + "/" + names[i].local + "[" + std::to_string(ord) + "]";
    };

    if (const auto* a = std::get_if<ContentAutomaton>(&eo.content)) {
        auto run = run_content_automaton(names, *a, el.line, el.col);
        if (auto* d = std::get_if<Diag>(&run)) {
            d->path = t.path;
            out.push_back(std::move(*d));
            return;
        }
        const auto& matched = std::get<std::vector<int>>(run);
        for (std::size_t i = 0; i < elems.size(); ++i) {
            work.push_back(Task{elems[i], matched[i], child_path(i)});
        }
        return;
    }

    const auto& all = std::get<AllGroup>(eo.content);
    std::uint32_t present = 0;
    std::vector<int> matched(elems.size(), -1);
    bool structure_ok = true;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const AllGroup::Member* mem = nullptr;
        std::size_t mi = 0;
        for (std::size_t j = 0; j < all.members.size(); ++j) {
            if (all.members[j].local == names[i].local) {
                mem = &all.members[j];
                mi = j;
                break;
            }
        }
        if (!mem) {
            out.push_back(Diag{Code::VAL001, names[i].line, names[i].col, t.path,
                               "unexpected element " + names[i].local +
                                   " in all-group content"});
            structure_ok = false;
            continue;
        }
        if (present & (1u << mi)) {
            out.push_back(Diag{Code::VAL001, names[i].line, names[i].col, t.path,
                               "element " + names[i].local +
                                   " appears more than once in all-group content"});
            structure_ok = false;
            continue;
        }
        present |= 1u << mi;
        matched[i] = mem->type_index;
    }
    if (!(all.group_optional && present == 0)) {
        for (const auto& mem : all.members) {
            const std::size_t mi = &mem - all.members.data();
            if (mem.required && !(present & (1u << mi))) {
                out.push_back(Diag{Code::VAL002, el.line, el.col, t.path,
                                   "content incomplete, expected one of {" + mem.local + "}"});
                structure_ok = false;
            }
        }
    }
    (void)structure_ok;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (matched[i] >= 0) work.push_back(Task{elems[i], matched[i], child_path(i)});
    }
}

}  // namespace

std::vector<Diag> validate_element(const Element& el, int type_index, const CompiledSchema& cs,
                                   const std::string& path) {
    std::vector<Diag> out;
    std::vector<Task> work;
    work.push_back(Task{&el, type_index, path});
    while (!work.empty()) {
        Task t = std::move(work.back());
        work.pop_back();
        check_one(t, cs, out, work);
        if (out.size() > kDiagCap) break;  // sorted and truncated by the caller
    }
    return out;
}

Verdict validate_document(const XmlDocument& doc, const CompiledSchema& cs,
                          const Limits& limits) {
    (void)limits;
    std::vector<Diag> diags;
    const std::string root_local = local_of(doc.root);
    const auto it = cs.roots.find(root_local);
    if (it == cs.roots.end()) {
        diags.push_back(Diag{Code::VAL001, doc.root.line, doc.root.col, "/",
                             "unexpected root " + root_local});
    } else {
        diags = validate_element(doc.root, it->second.type_index, cs,
                                 "/" + root_local + "[1]");
    }
    if (diags.empty()) return Valid{};
    std::stable_sort(diags.begin(), diags.end(),
                     [](const Diag& a, const Diag& b) { return diag_order(a, b); });
    if (diags.size() > kDiagCap) {
        diags.resize(kDiagCap);
        diags.push_back(Diag{Code::LIM009, diags.back().line, diags.back().col, "/",
                             "diagnostic limit reached"});
    }
    return Invalid{std::move(diags)};
}

}  // namespace xsv
