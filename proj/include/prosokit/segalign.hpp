// prosokit/segalign.hpp

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

#ifndef PROSOKIT_SEGALIGN_HPP_
#define PROSOKIT_SEGALIGN_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "prosokit/corpus.hpp"
#include "prosokit/textnorm.hpp"

namespace prosokit::segalign {

using textnorm::Token;
using textnorm::TokenStream;

enum class EditKind { Match, Delete, Insert };

struct EditOp {
  EditKind kind;
  Token token;  // ref token for Match/Delete, hyp token for Insert
};

// Minimal edit script over the word tokens of both streams (boundaries are
// excluded here and re-projected onto merged gaps by boundary_confusion).
// The script is canonical: equal words always match eagerly, deletions come
// before insertions inside a run, and swapping the arguments yields the
// exact mirror script, which makes boundary scoring swap-symmetric.
std::vector<EditOp> align_token_streams(const TokenStream& ref,
                                        const TokenStream& hyp);

struct BoundaryConfusion {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t gap_instances = 0;  // word pairs of the merged alignment
};

// Scores boundary placement over the gaps of the merged alignment: a
// boundary sits in the gap right after the op that consumed its preceding
// word. Both present -> TP, reference only -> FN, hypothesis only -> FP.
// The trailing end-of-stream boundary of each stream is not scored.
BoundaryConfusion boundary_confusion(const TokenStream& ref,
                                     const TokenStream& hyp,
                                     const std::vector<EditOp>& script);

struct PrfMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

PrfMetrics precision_recall_f1(const BoundaryConfusion& c);

struct InquiryStats {
  std::string inquiry_id;
  std::int64_t tokens = 0;
  std::int64_t segments = 0;
  double tokens_per_segment_mean = 0.0;
  double tokens_per_segment_std = 0.0;
};

struct SegStats {
  std::int64_t total_tokens = 0;
  std::int64_t total_segments = 0;
  double tokens_per_segment_mean = 0.0;
  double tokens_per_segment_std = 0.0;   // sample std over segments
  double segments_per_inquiry_mean = 0.0;
  double segments_per_inquiry_std = 0.0; // sample std over inquiries
  std::vector<InquiryStats> by_inquiry;
};

// Token counts are normalized word counts; boundary tokens never count.
SegStats segment_statistics(const corpus::Corpus& corpus,
                            const textnorm::NormalizeOptions& normalizer = {});

struct InquiryMetrics {
  std::string inquiry_id;
  BoundaryConfusion confusion;
  PrfMetrics metrics;
};

struct CompareMetrics {
  std::vector<InquiryMetrics> rows;   // ascending inquiry id
  BoundaryConfusion micro;            // pooled counts
  PrfMetrics micro_metrics;
  std::vector<std::string> ref_only;  // inquiries skipped per side
  std::vector<std::string> hyp_only;
};

// One row per shared inquiry plus micro-averaged pooled counts. Inquiries
// run independently (jobs > 1 allowed); merges happen in id order.
CompareMetrics per_inquiry_metrics(
    const corpus::Corpus& ref, const corpus::Corpus& hyp,
    const textnorm::NormalizeOptions& normalizer = {}, int jobs = 1);

// inquiry_id,precision,recall,f1,tp,fp,fn with a final __micro__ row.
void write_metrics_csv(std::ostream& os, const CompareMetrics& metrics,
                       const std::string& comment = {});
// Plot-ready series: inquiry_id,precision,recall,f1.
void write_plot_csv(std::ostream& os, const CompareMetrics& metrics,
                    const std::string& comment = {});

}  // namespace prosokit::segalign

#endif  // PROSOKIT_SEGALIGN_HPP_
