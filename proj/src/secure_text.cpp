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

#include "xsv/secure_text.hpp"

#include <cassert>

namespace xsv {

bool is_xml_char(char32_t c) {
    if (c == 0x9 || c == 0xA || c == 0xD) return true;
    if (c >= 0x20 && c <= 0xD7FF) return true;
    if (c >= 0xE000 && c <= 0xFFFD) return true;
    if (c >= 0x10000 && c <= 0x10FFFF) return true;
    return false;
}

namespace {

// Decodes the scalar at byte offset i, enforcing shortest-form encoding
// and the surrogate ban. Returns false on malformed input.
bool decode_one(std::string_view s, std::size_t& i, char32_t& out) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        out = b0;
        i += 1;
        return true;
    }
    std::size_t len;
    char32_t c;
    char32_t min;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        c = b0 & 0x1F;
        min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        c = b0 & 0x0F;
        min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        c = b0 & 0x07;
        min = 0x10000;
    } else {
        return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) return false;
        c = (c << 6) | (b & 0x3F);
    }
    if (c < min) return false;                    // overlong
    if (c >= 0xD800 && c <= 0xDFFF) return false;  // surrogate
    if (c > 0x10FFFF) return false;
    out = c;
    i += len;
    return true;
}

}  // namespace

std::variant<SecureText, TextError> SecureText::decode_utf8(std::string_view bytes) {
    std::size_t i = 0;
    std::size_t scalar_index = 0;
    while (i < bytes.size()) {
        char32_t c;
        if (!decode_one(bytes, i, c)) {
            return TextError{TextError::Kind::InvalidUtf8, scalar_index};
        }
        if (!is_xml_char(c)) {
            return TextError{TextError::Kind::ForbiddenChar, scalar_index};
        }
        ++scalar_index;
    }
    return SecureText(std::string(bytes));
}

SecureText SecureText::from_validated_utf8(std::string bytes) {
#ifndef NDEBUG
    auto check = decode_utf8(bytes);
    assert(std::holds_alternative<SecureText>(check));
#endif
    return SecureText(std::move(bytes));
}

void SecureText::push_scalar_unchecked(char32_t c) {
    assert(is_xml_char(c));
    append_utf8(bytes_, c);
}

SecureText SecureText::concat(const SecureText& other) const {
    return SecureText(bytes_ + other.bytes_);
}

std::strong_ordering SecureText::compare(const SecureText& other) const {
    // Byte order of valid UTF-8 coincides with code-point order.
    const int r = bytes_.compare(other.bytes_);
    if (r < 0) return std::strong_ordering::less;
    if (r > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::size_t SecureText::scalar_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < bytes_.size();) {
        const auto b = static_cast<unsigned char>(bytes_[i]);
        i += b < 0x80 ? 1 : (b & 0xE0) == 0xC0 ? 2 : (b & 0xF0) == 0xE0 ? 3 : 4;
        ++n;
    }
    return n;
}

std::u32string SecureText::scalars() const {
    std::u32string out;
    out.reserve(bytes_.size());
    for (std::size_t i = 0; i < bytes_.size();) {
        out.push_back(next_scalar(bytes_, i));
    }
    return out;
}

bool decode_scalar(std::string_view bytes, std::size_t& i, char32_t& out) {
    return decode_one(bytes, i, out);
}

char32_t next_scalar(std::string_view valid_utf8, std::size_t& i) {
    char32_t c = 0;
    const bool ok = decode_one(valid_utf8, i, c);
    assert(ok);
    (void)ok;
    return c;
}

void append_utf8(std::string& out, char32_t c) {
    if (c < 0x80) {
        out += static_cast<char>(c);
    } else if (c < 0x800) {
        out += static_cast<char>(0xC0 | (c >> 6));
        out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
        out += static_cast<char>(0xE0 | (c >> 12));
        out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (c >> 18));
        out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (c & 0x3F));
    }
}

}  // namespace xsv
