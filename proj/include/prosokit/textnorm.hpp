// prosokit/textnorm.hpp

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

#ifndef PROSOKIT_TEXTNORM_HPP_
#define PROSOKIT_TEXTNORM_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prosokit::corpus {
struct Segment;
}

namespace prosokit::textnorm {

struct NormalizeOptions {
  // Codepoints replaced by a space before tokenization (UTF-8 encoded).
  // Hyphens are included, so clitics like "disse-me" split into two words.
  std::string strip_set = ".,;:?!…\"'()—-";
  // Replace all-digit tokens with their Brazilian Portuguese cardinal text.
  bool convert_numbers = true;
};

// Brazilian Portuguese cardinal for 0 <= n <= 999,999,999: lowercase words
// separated by single spaces, "e" connectors per standard orthography
// (e.g. 101 -> "cento e um", 2350 -> "dois mil trezentos e cinquenta").
// Throws Error(errc::OutOfRange) outside the supported range.
std::string number_to_words_pt(long long n);

// Lowercases (Latin ranges), strips punctuation, converts digit tokens to
// words, and splits on whitespace runs. Total: tokens that cannot be
// converted pass through verbatim and add a note to `warnings` if given.
std::vector<std::string> normalize_text(
    std::string_view raw, const NormalizeOptions& options = {},
    std::vector<std::string>* warnings = nullptr);

struct Token {
  enum class Kind { Word, Boundary };
  Kind kind = Kind::Word;
  std::string text;       // empty for boundaries
  int source_index = -1;  // position in the originating segment list

  static Token word(std::string text, int source_index = -1) {
    return Token{Kind::Word, std::move(text), source_index};
  }
  static Token boundary(int source_index = -1) {
    return Token{Kind::Boundary, {}, source_index};
  }
  bool is_word() const { return kind == Kind::Word; }
  bool operator==(const Token& other) const {
    return kind == other.kind && text == other.text;
  }
};

// Ordered tokens with adjacent boundaries collapsed at construction.
class TokenStream {
 public:
  TokenStream() = default;
  explicit TokenStream(std::vector<Token> tokens);

  const std::vector<Token>& tokens() const { return tokens_; }
  size_t size() const { return tokens_.size(); }
  size_t word_count() const { return word_count_; }
  size_t boundary_count() const { return boundary_count_; }
  std::vector<std::string> words() const;

 private:
  std::vector<Token> tokens_;
  size_t word_count_ = 0;
  size_t boundary_count_ = 0;
};

// Concatenates the normalized words of each text and appends one boundary
// token after every text that yields at least one word (including the last
// one, so segment counts stay recoverable from the stream).
TokenStream interleave_texts(std::span<const std::string> texts,
                             const NormalizeOptions& options = {},
                             std::vector<std::string>* warnings = nullptr);

TokenStream interleave_boundaries(std::span<const corpus::Segment> segments,
                                  const NormalizeOptions& options = {},
                                  std::vector<std::string>* warnings = nullptr);

// One token per line; boundaries rendered literally as "[seg]".
void write_stream(std::ostream& os, const TokenStream& stream);
TokenStream read_stream(std::string_view text);

}  // namespace prosokit::textnorm

#endif  // PROSOKIT_TEXTNORM_HPP_
