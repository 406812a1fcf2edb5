// prosokit/unicode.hpp

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

#ifndef PROSOKIT_UNICODE_HPP_
#define PROSOKIT_UNICODE_HPP_

#include <string>
#include <string_view>

namespace prosokit::unicode {

// Decodes UTF-8 into codepoints. Invalid sequences throw
// Error(errc::UnsupportedEncoding).
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view codepoints);
void append_utf8(std::string& out, char32_t cp);

// Lowercases ASCII, Latin-1 Supplement and Latin Extended-A letters
// (covers Portuguese orthography). Other codepoints pass through.
char32_t to_lower(char32_t cp);
std::u32string to_lower(std::u32string_view text);

// Canonical composition limited to Latin base letters followed by the
// combining marks used in Latin-1/Extended-A (grave, acute, circumflex,
// tilde, diaeresis, ring, cedilla). Unknown base/mark pairs keep the
// combining mark as a standalone codepoint.
std::u32string compose_nfc_latin(std::u32string_view text);

bool is_whitespace(char32_t cp);
bool is_ascii_digit(char32_t cp);

}  // namespace prosokit::unicode

#endif  // PROSOKIT_UNICODE_HPP_
