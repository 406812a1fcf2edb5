// prosokit/unicode.cpp

// Copyright 2026  The prosokit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "prosokit/unicode.hpp"

#include <array>
#include <cstdint>

#include "prosokit/error.hpp"

namespace prosokit::unicode {

namespace {

[[noreturn]] void bad_utf8(size_t offset) {
  throw Error(errc::UnsupportedEncoding,
              "invalid UTF-8 byte sequence at offset " + std::to_string(offset));
}

}  // namespace

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  size_t i = 0;
  const auto* bytes = reinterpret_cast<const unsigned char*>(text.data());
  while (i < text.size()) {
    unsigned char b0 = bytes[i];
    char32_t cp = 0;
    size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      bad_utf8(i);
    }
    if (i + len > text.size()) bad_utf8(i);
    for (size_t k = 1; k < len; ++k) {
      unsigned char b = bytes[i + k];
      if ((b & 0xC0) != 0x80) bad_utf8(i + k);
      cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong encodings and surrogate codepoints.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      bad_utf8(i);
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view codepoints) {
  std::string out;
  out.reserve(codepoints.size());
  for (char32_t cp : codepoints) append_utf8(out, cp);
  return out;
}

char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  // Latin-1 Supplement capitals, skipping the multiplication sign.
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  // Latin Extended-A pairs upper/lower codepoints; handle the exceptions.
  if (cp == 0x0130) return U'i';   // I with dot above
  if (cp == 0x0178) return 0xFF;   // Y with diaeresis
  if (cp >= 0x0100 && cp <= 0x0137 && (cp % 2) == 0) return cp + 1;
  if (cp >= 0x0139 && cp <= 0x0148 && (cp % 2) == 1) return cp + 1;
  if (cp >= 0x014A && cp <= 0x0177 && (cp % 2) == 0) return cp + 1;
  if (cp >= 0x0179 && cp <= 0x017E && (cp % 2) == 1) return cp + 1;
  return cp;
}

std::u32string to_lower(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t cp : text) out.push_back(to_lower(cp));
  return out;
}

namespace {

struct Composition {
  char32_t base;
  char32_t mark;
  char32_t composed;
};

// Latin-1 Supplement and the Extended-A codepoints reachable from an
// unaccented Latin letter plus one combining mark.
constexpr std::array<Composition, 62> kCompositions{{
    {U'a', 0x0300, 0xE0}, {U'a', 0x0301, 0xE1}, {U'a', 0x0302, 0xE2},
    {U'a', 0x0303, 0xE3}, {U'a', 0x0308, 0xE4}, {U'a', 0x030A, 0xE5},
    {U'c', 0x0327, 0xE7}, {U'c', 0x0301, 0x0107}, {U'c', 0x0302, 0x0109},
    {U'e', 0x0300, 0xE8}, {U'e', 0x0301, 0xE9}, {U'e', 0x0302, 0xEA},
    {U'e', 0x0308, 0xEB}, {U'e', 0x0303, 0x1EBD},
    {U'i', 0x0300, 0xEC}, {U'i', 0x0301, 0xED}, {U'i', 0x0302, 0xEE},
    {U'i', 0x0308, 0xEF}, {U'i', 0x0303, 0x0129},
    {U'n', 0x0303, 0xF1}, {U'n', 0x0301, 0x0144},
    {U'o', 0x0300, 0xF2}, {U'o', 0x0301, 0xF3}, {U'o', 0x0302, 0xF4},
    {U'o', 0x0303, 0xF5}, {U'o', 0x0308, 0xF6},
    {U'u', 0x0300, 0xF9}, {U'u', 0x0301, 0xFA}, {U'u', 0x0302, 0xFB},
    {U'u', 0x0308, 0xFC}, {U'u', 0x0303, 0x0169},
    {U'y', 0x0301, 0xFD}, {U'y', 0x0308, 0xFF},
    {U'g', 0x0327, 0x0123}, {U's', 0x0327, 0x015F}, {U't', 0x0327, 0x0163},
    {U'A', 0x0300, 0xC0}, {U'A', 0x0301, 0xC1}, {U'A', 0x0302, 0xC2},
    {U'A', 0x0303, 0xC3}, {U'A', 0x0308, 0xC4}, {U'A', 0x030A, 0xC5},
    {U'C', 0x0327, 0xC7}, {U'E', 0x0300, 0xC8}, {U'E', 0x0301, 0xC9},
    {U'E', 0x0302, 0xCA}, {U'E', 0x0308, 0xCB},
    {U'I', 0x0300, 0xCC}, {U'I', 0x0301, 0xCD}, {U'I', 0x0302, 0xCE},
    {U'I', 0x0308, 0xCF}, {U'N', 0x0303, 0xD1},
    {U'O', 0x0300, 0xD2}, {U'O', 0x0301, 0xD3}, {U'O', 0x0302, 0xD4},
    {U'O', 0x0303, 0xD5}, {U'O', 0x0308, 0xD6},
    {U'U', 0x0300, 0xD9}, {U'U', 0x0301, 0xDA}, {U'U', 0x0302, 0xDB},
    {U'U', 0x0308, 0xDC}, {U'Y', 0x0301, 0xDD},
}};

bool lookup_composition(char32_t base, char32_t mark, char32_t& out) {
  for (const auto& c : kCompositions) {
    if (c.base == base && c.mark == mark) {
      out = c.composed;
      return true;
    }
  }
  return false;
}

bool is_combining_mark(char32_t cp) { return cp >= 0x0300 && cp <= 0x036F; }

}  // namespace

std::u32string compose_nfc_latin(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (is_combining_mark(cp) && !out.empty()) {
      char32_t composed = 0;
      if (lookup_composition(out.back(), cp, composed)) {
        out.back() = composed;
        continue;
      }
    }
    out.push_back(cp);
  }
  return out;
}

bool is_whitespace(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v' || cp == 0xA0 || cp == 0x2028 ||
         cp == 0x2029;
}

bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

}  // namespace prosokit::unicode
