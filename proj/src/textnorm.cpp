// prosokit/textnorm.cpp

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

#include "prosokit/textnorm.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_set>

#include "prosokit/corpus.hpp"
#include "prosokit/error.hpp"
#include "prosokit/unicode.hpp"

namespace prosokit::textnorm {

namespace {

const char* kOnes[20] = {
    "zero", "um", "dois", "três", "quatro", "cinco", "seis", "sete",
    "oito", "nove", "dez", "onze", "doze", "treze", "catorze", "quinze",
    "dezesseis", "dezessete", "dezoito", "dezenove"};

const char* kTens[10] = {"", "", "vinte", "trinta", "quarenta", "cinquenta",
                         "sessenta", "setenta", "oitenta", "noventa"};

const char* kHundreds[10] = {"", "cento", "duzentos", "trezentos",
                             "quatrocentos", "quinhentos", "seiscentos",
                             "setecentos", "oitocentos", "novecentos"};

// 1..999
std::string group_words(long long g) {
  if (g == 100) return "cem";
  std::string out;
  long long h = g / 100;
  long long r = g % 100;
  if (h > 0) out = kHundreds[h];
  if (r > 0) {
    std::string rest;
    if (r < 20) {
      rest = kOnes[r];
    } else {
      rest = kTens[r / 10];
      if (r % 10 > 0) {
        rest += " e ";
        rest += kOnes[r % 10];
      }
    }
    if (!out.empty()) out += " e ";
    out += rest;
  }
  return out;
}

}  // namespace

std::string number_to_words_pt(long long n) {
  if (n < 0 || n > 999'999'999) {
    throw Error(errc::OutOfRange,
                "cardinal conversion supports 0..999999999, got " +
                    std::to_string(n));
  }
  if (n == 0) return "zero";

  long long millions = n / 1'000'000;
  long long thousands = (n / 1'000) % 1'000;
  long long units = n % 1'000;

  struct Part {
    long long value;
    std::string text;
  };
  std::vector<Part> parts;
  if (millions > 0) {
    parts.push_back({millions, group_words(millions) +
                                   (millions == 1 ? " milhão" : " milhões")});
  }
  if (thousands > 0) {
    parts.push_back(
        {thousands, thousands == 1 ? "mil" : group_words(thousands) + " mil"});
  }
  if (units > 0) parts.push_back({units, group_words(units)});

  // Standard orthography joins the final group with "e" when it is below one
  // hundred or a round hundred; other groups are juxtaposed.
  std::string out = parts[0].text;
  for (size_t i = 1; i < parts.size(); ++i) {
    bool last = (i + 1 == parts.size());
    bool connect = last && (parts[i].value < 100 || parts[i].value % 100 == 0);
    out += connect ? " e " : " ";
    out += parts[i].text;
  }
  return out;
}

std::vector<std::string> normalize_text(std::string_view raw,
                                        const NormalizeOptions& options,
                                        std::vector<std::string>* warnings) {
  std::u32string strip = unicode::decode_utf8(options.strip_set);
  std::unordered_set<char32_t> strip_set(strip.begin(), strip.end());

  std::u32string text = unicode::to_lower(unicode::decode_utf8(raw));

  // Punctuation becomes a separator so that hyphenated clitics split.
  std::vector<std::u32string> raw_tokens;
  std::u32string cur;
  for (char32_t cp : text) {
    if (unicode::is_whitespace(cp) || strip_set.count(cp)) {
      if (!cur.empty()) {
        raw_tokens.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(cp);
    }
  }
  if (!cur.empty()) raw_tokens.push_back(cur);

  std::vector<std::string> words;
  words.reserve(raw_tokens.size());
  for (const auto& tok : raw_tokens) {
    bool has_digit = std::any_of(tok.begin(), tok.end(), unicode::is_ascii_digit);
    if (options.convert_numbers && has_digit) {
      bool all_digits =
          std::all_of(tok.begin(), tok.end(), unicode::is_ascii_digit);
      if (all_digits && tok.size() <= 9) {
        long long value = 0;
        for (char32_t cp : tok) value = value * 10 + (cp - U'0');
        std::vector<std::string> number_words =
            normalize_text(number_to_words_pt(value), options, nullptr);
        words.insert(words.end(), number_words.begin(), number_words.end());
        continue;
      }
      if (warnings) {
        warnings->push_back("token '" + unicode::encode_utf8(tok) +
                            "' contains digits but is not a convertible "
                            "cardinal; kept verbatim");
      }
    }
    words.push_back(unicode::encode_utf8(tok));
  }
  return words;
}

TokenStream::TokenStream(std::vector<Token> tokens) {
  tokens_.reserve(tokens.size());
  for (auto& t : tokens) {
    if (t.kind == Token::Kind::Boundary && !tokens_.empty() &&
        tokens_.back().kind == Token::Kind::Boundary) {
      continue;  // collapse adjacent boundaries
    }
    tokens_.push_back(std::move(t));
  }
  for (const auto& t : tokens_) {
    if (t.is_word()) {
      ++word_count_;
    } else {
      ++boundary_count_;
    }
  }
}

std::vector<std::string> TokenStream::words() const {
  std::vector<std::string> out;
  out.reserve(word_count_);
  for (const auto& t : tokens_) {
    if (t.is_word()) out.push_back(t.text);
  }
  return out;
}

TokenStream interleave_texts(std::span<const std::string> texts,
                             const NormalizeOptions& options,
                             std::vector<std::string>* warnings) {
  std::vector<Token> tokens;
  for (size_t i = 0; i < texts.size(); ++i) {
    std::vector<std::string> words = normalize_text(texts[i], options, warnings);
    if (words.empty()) continue;  // no words, no boundary
    for (auto& w : words) {
      tokens.push_back(Token::word(std::move(w), static_cast<int>(i)));
    }
    tokens.push_back(Token::boundary(static_cast<int>(i)));
  }
  return TokenStream(std::move(tokens));
}

TokenStream interleave_boundaries(std::span<const corpus::Segment> segments,
                                  const NormalizeOptions& options,
                                  std::vector<std::string>* warnings) {
  std::vector<std::string> texts;
  texts.reserve(segments.size());
  for (const auto& s : segments) texts.push_back(s.text);
  return interleave_texts(texts, options, warnings);
}

void write_stream(std::ostream& os, const TokenStream& stream) {
  for (const auto& t : stream.tokens()) {
    if (t.is_word()) {
      os << t.text << '\n';
    } else {
      os << "[seg]\n";
    }
  }
}

TokenStream read_stream(std::string_view text) {
  std::vector<Token> tokens;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line = nl == std::string_view::npos
                                ? text.substr(pos)
                                : text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) {
      if (line == "[seg]") {
        tokens.push_back(Token::boundary());
      } else {
        tokens.push_back(Token::word(std::string(line)));
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return TokenStream(std::move(tokens));
}

}  // namespace prosokit::textnorm
