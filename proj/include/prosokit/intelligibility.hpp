// prosokit/intelligibility.hpp

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

#ifndef PROSOKIT_INTELLIGIBILITY_HPP_
#define PROSOKIT_INTELLIGIBILITY_HPP_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prosokit/textnorm.hpp"

namespace prosokit::intelligibility {

struct EditCounts {
  std::int64_t distance = 0;
  std::int64_t substitutions = 0;
  std::int64_t insertions = 0;
  std::int64_t deletions = 0;
};

// Unit-cost Levenshtein distance with the S/I/D decomposition of one optimal
// path; ties break Match > Substitute > Delete > Insert along the backtrace.
EditCounts edit_distance(std::span<const std::string> ref,
                         std::span<const std::string> hyp);
EditCounts edit_distance(std::u32string_view ref, std::u32string_view hyp);

struct LevelCounts {
  std::int64_t substitutions = 0;
  std::int64_t insertions = 0;
  std::int64_t deletions = 0;
  std::int64_t ref_len = 0;

  double rate() const {
    return ref_len > 0
               ? static_cast<double>(substitutions + insertions + deletions) /
                     static_cast<double>(ref_len)
               : 0.0;
  }
};

// wer = (S+I+D)/ref_len over normalized words; cer the same over the
// NFC-composed codepoints of the words joined by single spaces (so merges
// across word boundaries are penalized). Rates can exceed 1 when insertions
// dominate.
struct ErrorRates {
  double wer = 0.0;
  double cer = 0.0;
  LevelCounts words;
  LevelCounts chars;
};

// Both texts go through textnorm first; the reference must normalize to at
// least one word (errc::EmptyReference otherwise).
ErrorRates error_rates(std::string_view ref, std::string_view hyp,
                       const textnorm::NormalizeOptions& normalizer = {});
ErrorRates wer(std::string_view ref, std::string_view hyp,
               const textnorm::NormalizeOptions& normalizer = {});
ErrorRates cer(std::string_view ref, std::string_view hyp,
               const textnorm::NormalizeOptions& normalizer = {});

struct SegmentPair {
  std::string id;
  std::string reference;
  std::string hypothesis;
};

struct SegmentRates {
  std::string id;
  ErrorRates rates;
};

struct BatchRates {
  std::vector<SegmentRates> rows;  // ordered by segment id
  double mean_wer = 0.0;           // unweighted mean of per-segment rates
  double mean_cer = 0.0;
};

BatchRates batch_rates(std::span<const SegmentPair> pairs,
                       const textnorm::NormalizeOptions& normalizer = {},
                       int jobs = 1);

// Input CSV: segment_id,reference,hypothesis.
std::vector<SegmentPair> read_pairs_csv(std::string_view csv_text);
std::vector<SegmentPair> read_pairs_file(const std::string& path);

// Output CSV: segment_id,wer,cer,S,I,D,ref_len (word-level counts) plus a
// __mean__ summary row.
void write_rates_csv(std::ostream& os, const BatchRates& batch,
                     const std::string& comment = {});

}  // namespace prosokit::intelligibility

#endif  // PROSOKIT_INTELLIGIBILITY_HPP_
