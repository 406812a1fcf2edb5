// prosokit/segalign.cpp

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

#include "prosokit/segalign.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "prosokit/csv.hpp"
#include "prosokit/error.hpp"
#include "prosokit/parallel.hpp"
#include "prosokit/stats.hpp"

namespace prosokit::segalign {

namespace {

constexpr size_t kNone = std::numeric_limits<size_t>::max();

struct Step {
  EditKind kind;
  size_t a_index = kNone;
  size_t b_index = kNone;
};

// Canonical minimal edit walk: equal words match eagerly; otherwise delete
// whenever deleting preserves minimality. With this rule every non-match run
// comes out as deletions followed by insertions.
std::vector<Step> greedy_steps(const std::vector<std::string_view>& a,
                               const std::vector<std::string_view>& b) {
  const size_t n = a.size();
  const size_t m = b.size();
  constexpr size_t kMaxCells = 220'000'000;  // ~0.9 GB of uint32
  if ((n + 1) * (m + 1) > kMaxCells) {
    throw Error(errc::InvalidArgument,
                "token streams too large to align (" + std::to_string(n) +
                    " x " + std::to_string(m) +
                    " words); align per inquiry instead");
  }

  // cost[i][j] = minimal del+ins distance between suffixes a[i..], b[j..].
  std::vector<std::uint32_t> cost((n + 1) * (m + 1));
  auto at = [m](size_t i, size_t j) { return i * (m + 1) + j; };
  for (size_t j = 0; j <= m; ++j) cost[at(n, j)] = static_cast<std::uint32_t>(m - j);
  for (size_t i = n; i-- > 0;) {
    cost[at(i, m)] = static_cast<std::uint32_t>(n - i);
    for (size_t j = m; j-- > 0;) {
      if (a[i] == b[j]) {
        cost[at(i, j)] = cost[at(i + 1, j + 1)];
      } else {
        cost[at(i, j)] = 1 + std::min(cost[at(i + 1, j)], cost[at(i, j + 1)]);
      }
    }
  }

  std::vector<Step> steps;
  steps.reserve(n + m);
  size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j]) {
      steps.push_back({EditKind::Match, i, j});
      ++i;
      ++j;
    } else if (i < n && (j == m || cost[at(i + 1, j)] + 1 == cost[at(i, j)])) {
      steps.push_back({EditKind::Delete, i, kNone});
      ++i;
    } else {
      steps.push_back({EditKind::Insert, kNone, j});
      ++j;
    }
  }
  return steps;
}

// Within each run between matches, deletions precede insertions.
void normalize_runs(std::vector<Step>& steps) {
  size_t i = 0;
  while (i < steps.size()) {
    if (steps[i].kind == EditKind::Match) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < steps.size() && steps[j].kind != EditKind::Match) ++j;
    std::stable_partition(steps.begin() + i, steps.begin() + j,
                          [](const Step& s) { return s.kind == EditKind::Delete; });
    i = j;
  }
}

std::vector<const Token*> word_tokens(const TokenStream& stream) {
  std::vector<const Token*> out;
  out.reserve(stream.word_count());
  for (const auto& t : stream.tokens()) {
    if (t.is_word()) out.push_back(&t);
  }
  return out;
}

std::vector<std::string_view> texts_of(const std::vector<const Token*>& words) {
  std::vector<std::string_view> out;
  out.reserve(words.size());
  for (const auto* w : words) out.emplace_back(w->text);
  return out;
}

}  // namespace

std::vector<EditOp> align_token_streams(const TokenStream& ref,
                                        const TokenStream& hyp) {
  std::vector<const Token*> ref_words = word_tokens(ref);
  std::vector<const Token*> hyp_words = word_tokens(hyp);
  std::vector<std::string_view> ref_texts = texts_of(ref_words);
  std::vector<std::string_view> hyp_texts = texts_of(hyp_words);

  // Compute on a canonical argument order and mirror back, so that
  // align(a, b) is always the exact mirror of align(b, a).
  bool mirrored = std::lexicographical_compare(
      hyp_texts.begin(), hyp_texts.end(), ref_texts.begin(), ref_texts.end());
  std::vector<Step> steps;
  if (mirrored) {
    steps = greedy_steps(hyp_texts, ref_texts);
    for (auto& s : steps) {
      std::swap(s.a_index, s.b_index);
      if (s.kind == EditKind::Delete) {
        s.kind = EditKind::Insert;
      } else if (s.kind == EditKind::Insert) {
        s.kind = EditKind::Delete;
      }
    }
  } else {
    steps = greedy_steps(ref_texts, hyp_texts);
  }
  normalize_runs(steps);

  std::vector<EditOp> script;
  script.reserve(steps.size());
  for (const auto& s : steps) {
    switch (s.kind) {
      case EditKind::Match:
      case EditKind::Delete:
        script.push_back({s.kind, *ref_words[s.a_index]});
        break;
      case EditKind::Insert:
        script.push_back({s.kind, *hyp_words[s.b_index]});
        break;
    }
  }
  return script;
}

namespace {

// Gap index of each non-trailing boundary: a boundary that follows the g-th
// word of its stream lands in the merged gap right after the op that
// consumed that word.
std::vector<size_t> boundary_gaps(const TokenStream& stream) {
  std::vector<size_t> gaps;
  size_t words_seen = 0;
  const auto& tokens = stream.tokens();
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].is_word()) {
      ++words_seen;
    } else if (i + 1 < tokens.size()) {  // trailing boundary is not scored
      gaps.push_back(words_seen);
    }
  }
  return gaps;
}

}  // namespace

BoundaryConfusion boundary_confusion(const TokenStream& ref,
                                     const TokenStream& hyp,
                                     const std::vector<EditOp>& script) {
  // Positions (script index + 1) after each consumed word, per stream.
  std::vector<size_t> ref_word_pos, hyp_word_pos;
  for (size_t i = 0; i < script.size(); ++i) {
    const EditOp& op = script[i];
    if (op.kind != EditKind::Insert) ref_word_pos.push_back(i + 1);
    if (op.kind != EditKind::Delete) hyp_word_pos.push_back(i + 1);
  }

  auto check = [&](const TokenStream& stream, const std::vector<size_t>& pos,
                   EditKind excluded) {
    std::vector<const Token*> words = word_tokens(stream);
    if (words.size() != pos.size()) {
      throw Error(errc::ScriptMismatch,
                  "script word count does not match the stream");
    }
    size_t w = 0;
    for (const auto& op : script) {
      if (op.kind == excluded) continue;
      if (op.token.text != words[w]->text) {
        throw Error(errc::ScriptMismatch,
                    "script token '" + op.token.text +
                        "' does not match stream word '" + words[w]->text + "'");
      }
      ++w;
    }
  };
  check(ref, ref_word_pos, EditKind::Insert);
  check(hyp, hyp_word_pos, EditKind::Delete);

  auto project = [](const std::vector<size_t>& word_pos,
                    const std::vector<size_t>& gaps) {
    std::vector<size_t> out;
    out.reserve(gaps.size());
    for (size_t g : gaps) out.push_back(g == 0 ? 0 : word_pos[g - 1]);
    return out;
  };
  std::vector<size_t> ref_marks = project(ref_word_pos, boundary_gaps(ref));
  std::vector<size_t> hyp_marks = project(hyp_word_pos, boundary_gaps(hyp));

  BoundaryConfusion c;
  c.gap_instances =
      script.empty() ? 0 : static_cast<std::int64_t>(script.size()) - 1;
  size_t i = 0, j = 0;
  while (i < ref_marks.size() && j < hyp_marks.size()) {
    if (ref_marks[i] == hyp_marks[j]) {
      ++c.tp;
      ++i;
      ++j;
    } else if (ref_marks[i] < hyp_marks[j]) {
      ++c.fn;
      ++i;
    } else {
      ++c.fp;
      ++j;
    }
  }
  c.fn += static_cast<std::int64_t>(ref_marks.size() - i);
  c.fp += static_cast<std::int64_t>(hyp_marks.size() - j);
  return c;
}

PrfMetrics precision_recall_f1(const BoundaryConfusion& c) {
  PrfMetrics m;
  double tp = static_cast<double>(c.tp);
  m.precision = (c.tp + c.fp) > 0 ? tp / static_cast<double>(c.tp + c.fp) : 0.0;
  m.recall = (c.tp + c.fn) > 0 ? tp / static_cast<double>(c.tp + c.fn) : 0.0;
  double denom = m.precision + m.recall;
  m.f1 = denom > 0 ? 2.0 * m.precision * m.recall / denom : 0.0;
  return m;
}

SegStats segment_statistics(const corpus::Corpus& corpus,
                            const textnorm::NormalizeOptions& normalizer) {
  SegStats stats;
  std::vector<double> tokens_per_segment;
  std::vector<double> segments_per_inquiry;
  for (const auto& [id, inquiry] : corpus.inquiries) {
    InquiryStats is;
    is.inquiry_id = id;
    std::vector<double> counts;
    counts.reserve(inquiry.segments.size());
    for (const auto& seg : inquiry.segments) {
      auto words = textnorm::normalize_text(seg.text, normalizer);
      is.tokens += static_cast<std::int64_t>(words.size());
      counts.push_back(static_cast<double>(words.size()));
    }
    is.segments = static_cast<std::int64_t>(inquiry.segments.size());
    if (is.segments > 0) {
      auto d = stats::descriptive(counts);
      is.tokens_per_segment_mean = d.mean;
      is.tokens_per_segment_std = d.sample_std;
    }
    stats.total_tokens += is.tokens;
    stats.total_segments += is.segments;
    tokens_per_segment.insert(tokens_per_segment.end(), counts.begin(),
                              counts.end());
    segments_per_inquiry.push_back(static_cast<double>(is.segments));
    stats.by_inquiry.push_back(std::move(is));
  }
  if (stats.total_segments == 0) {
    throw Error(errc::EmptyCorpus, "corpus has no segments");
  }
  auto dt = stats::descriptive(tokens_per_segment);
  stats.tokens_per_segment_mean = dt.mean;
  stats.tokens_per_segment_std = dt.sample_std;
  auto di = stats::descriptive(segments_per_inquiry);
  stats.segments_per_inquiry_mean = di.mean;
  stats.segments_per_inquiry_std = di.sample_std;
  return stats;
}

CompareMetrics per_inquiry_metrics(const corpus::Corpus& ref,
                                   const corpus::Corpus& hyp,
                                   const textnorm::NormalizeOptions& normalizer,
                                   int jobs) {
  CompareMetrics result;
  std::vector<std::string> shared;
  for (const auto& [id, inquiry] : ref.inquiries) {
    if (hyp.inquiries.count(id)) {
      shared.push_back(id);
    } else {
      result.ref_only.push_back(id);
    }
  }
  for (const auto& [id, inquiry] : hyp.inquiries) {
    if (!ref.inquiries.count(id)) result.hyp_only.push_back(id);
  }
  if (shared.empty()) {
    throw Error(errc::NoSharedInquiries,
                "the two corpora share no inquiry ids");
  }

  result.rows.resize(shared.size());
  parallel_for(shared.size(), jobs, [&](size_t idx) {
    const std::string& id = shared[idx];
    TokenStream rs = textnorm::interleave_boundaries(
        ref.inquiries.at(id).segments, normalizer);
    TokenStream hs = textnorm::interleave_boundaries(
        hyp.inquiries.at(id).segments, normalizer);
    InquiryMetrics row;
    row.inquiry_id = id;
    row.confusion = boundary_confusion(rs, hs, align_token_streams(rs, hs));
    row.metrics = precision_recall_f1(row.confusion);
    result.rows[idx] = std::move(row);
  });

  for (const auto& row : result.rows) {
    result.micro.tp += row.confusion.tp;
    result.micro.fp += row.confusion.fp;
    result.micro.fn += row.confusion.fn;
    result.micro.gap_instances += row.confusion.gap_instances;
  }
  result.micro_metrics = precision_recall_f1(result.micro);
  return result;
}

namespace {

std::vector<std::string> metric_row(const std::string& id,
                                    const BoundaryConfusion& c,
                                    const PrfMetrics& m) {
  return {id,
          csv::format_fixed(m.precision, 6),
          csv::format_fixed(m.recall, 6),
          csv::format_fixed(m.f1, 6),
          std::to_string(c.tp),
          std::to_string(c.fp),
          std::to_string(c.fn)};
}

}  // namespace

void write_metrics_csv(std::ostream& os, const CompareMetrics& metrics,
                       const std::string& comment) {
  if (!comment.empty()) os << "# " << comment << "\n";
  csv::write_row(os, {"inquiry_id", "precision", "recall", "f1", "tp", "fp", "fn"});
  for (const auto& row : metrics.rows) {
    csv::write_row(os, metric_row(row.inquiry_id, row.confusion, row.metrics));
  }
  csv::write_row(os, metric_row("__micro__", metrics.micro, metrics.micro_metrics));
}

void write_plot_csv(std::ostream& os, const CompareMetrics& metrics,
                    const std::string& comment) {
  if (!comment.empty()) os << "# " << comment << "\n";
  csv::write_row(os, {"inquiry_id", "precision", "recall", "f1"});
  for (const auto& row : metrics.rows) {
    csv::write_row(os, {row.inquiry_id, csv::format_fixed(row.metrics.precision, 6),
                        csv::format_fixed(row.metrics.recall, 6),
                        csv::format_fixed(row.metrics.f1, 6)});
  }
}

}  // namespace prosokit::segalign
