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

#ifndef XSV_SECURE_TEXT_HPP
#define XSV_SECURE_TEXT_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace xsv {

// True iff c is a legal XML 1.0 Char:
//   #x9 | #xA | #xD | [#x20-#xD7FF] | [#xE000-#xFFFD] | [#x10000-#x10FFFF]
bool is_xml_char(char32_t c);

struct TextError {
    enum class Kind { InvalidUtf8, ForbiddenChar };
    Kind kind;
    // Scalar index of the offending character (ForbiddenChar) or of the
    // scalar being decoded when the byte stream broke (InvalidUtf8).
    std::size_t position = 0;

    bool operator==(const TextError&) const = default;
};

// Immutable validated text. Every value holds well-formed UTF-8 whose
// scalars are all legal XML 1.0 Chars; the public surface derives new
// values and never mutates an existing one.
class SecureText {
public:
    SecureText() = default;  // empty text

    // The only validating entry point. Rejects malformed UTF-8 (including
    // overlong forms and surrogates) and legal UTF-8 that encodes an
    // illegal XML Char.
    static std::variant<SecureText, TextError> decode_utf8(std::string_view bytes);

    // Trusted constructor for callers that have already validated every
    // scalar (the parser builds text from checked scalars). Verified by a
    // full scan in debug builds.
    static SecureText from_validated_utf8(std::string bytes);

    // Appends a single already-checked scalar; caller guarantees
    // is_xml_char(c). Debug-asserted.
    void push_scalar_unchecked(char32_t c);

    SecureText concat(const SecureText& other) const;

    std::strong_ordering compare(const SecureText& other) const;
    bool operator==(const SecureText& other) const { return bytes_ == other.bytes_; }
    auto operator<=>(const SecureText& other) const { return compare(other); }

    std::string_view bytes() const { return bytes_; }
    std::size_t byte_length() const { return bytes_.size(); }
    bool empty() const { return bytes_.empty(); }

    // Number of Unicode scalar values.
    std::size_t scalar_count() const;
    std::u32string scalars() const;

private:
    explicit SecureText(std::string bytes) : bytes_(std::move(bytes)) {}
    std::string bytes_;
};

// Decodes one scalar starting at byte offset i of a string already known
// to be valid UTF-8. Advances i past the scalar.
char32_t next_scalar(std::string_view valid_utf8, std::size_t& i);

// Decodes one scalar from arbitrary bytes; rejects malformed, overlong
// and surrogate encodings. Advances i only on success.
bool decode_scalar(std::string_view bytes, std::size_t& i, char32_t& out);

// Encodes one scalar as UTF-8, appending to out. c must be a Unicode
// scalar value.
void append_utf8(std::string& out, char32_t c);

}  // namespace xsv

#endif
