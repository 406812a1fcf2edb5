// prosokit/intelligibility.cpp

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

#include "prosokit/intelligibility.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "prosokit/csv.hpp"
#include "prosokit/error.hpp"
#include "prosokit/parallel.hpp"
#include "prosokit/unicode.hpp"

namespace prosokit::intelligibility {

namespace {

// Full-matrix DP so the backtrace can realize the documented tie-breaking.
template <class Seq>
EditCounts edit_distance_impl(const Seq& a, const Seq& b) {
  const size_t n = a.size();
  const size_t m = b.size();
  std::vector<std::uint32_t> d((n + 1) * (m + 1));
  auto at = [m](size_t i, size_t j) { return i * (m + 1) + j; };
  for (size_t i = 0; i <= n; ++i) d[at(i, 0)] = static_cast<std::uint32_t>(i);
  for (size_t j = 0; j <= m; ++j) d[at(0, j)] = static_cast<std::uint32_t>(j);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      std::uint32_t sub = d[at(i - 1, j - 1)] + (a[i - 1] == b[j - 1] ? 0 : 1);
      std::uint32_t del = d[at(i - 1, j)] + 1;
      std::uint32_t ins = d[at(i, j - 1)] + 1;
      d[at(i, j)] = std::min({sub, del, ins});
    }
  }

  EditCounts counts;
  counts.distance = d[at(n, m)];
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && a[i - 1] == b[j - 1] &&
        d[at(i, j)] == d[at(i - 1, j - 1)]) {
      --i;
      --j;  // match
    } else if (i > 0 && j > 0 && d[at(i, j)] == d[at(i - 1, j - 1)] + 1) {
      ++counts.substitutions;
      --i;
      --j;
    } else if (i > 0 && d[at(i, j)] == d[at(i - 1, j)] + 1) {
      ++counts.deletions;
      --i;
    } else {
      ++counts.insertions;
      --j;
    }
  }
  return counts;
}

std::u32string chars_of(const std::vector<std::string>& words) {
  std::string joined;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i) joined.push_back(' ');
    joined += words[i];
  }
  return unicode::compose_nfc_latin(unicode::decode_utf8(joined));
}

}  // namespace

EditCounts edit_distance(std::span<const std::string> ref,
                         std::span<const std::string> hyp) {
  return edit_distance_impl(ref, hyp);
}

EditCounts edit_distance(std::u32string_view ref, std::u32string_view hyp) {
  return edit_distance_impl(ref, hyp);
}

ErrorRates error_rates(std::string_view ref, std::string_view hyp,
                       const textnorm::NormalizeOptions& normalizer) {
  std::vector<std::string> ref_words = textnorm::normalize_text(ref, normalizer);
  std::vector<std::string> hyp_words = textnorm::normalize_text(hyp, normalizer);
  if (ref_words.empty()) {
    throw Error(errc::EmptyReference,
                "reference normalizes to zero words: '" + std::string(ref) + "'");
  }

  ErrorRates rates;
  EditCounts w = edit_distance(ref_words, hyp_words);
  rates.words = {w.substitutions, w.insertions, w.deletions,
                 static_cast<std::int64_t>(ref_words.size())};
  rates.wer = rates.words.rate();

  std::u32string ref_chars = chars_of(ref_words);
  std::u32string hyp_chars = chars_of(hyp_words);
  EditCounts c = edit_distance(std::u32string_view(ref_chars),
                               std::u32string_view(hyp_chars));
  rates.chars = {c.substitutions, c.insertions, c.deletions,
                 static_cast<std::int64_t>(ref_chars.size())};
  rates.cer = rates.chars.rate();
  return rates;
}

ErrorRates wer(std::string_view ref, std::string_view hyp,
               const textnorm::NormalizeOptions& normalizer) {
  return error_rates(ref, hyp, normalizer);
}

ErrorRates cer(std::string_view ref, std::string_view hyp,
               const textnorm::NormalizeOptions& normalizer) {
  return error_rates(ref, hyp, normalizer);
}

BatchRates batch_rates(std::span<const SegmentPair> pairs,
                       const textnorm::NormalizeOptions& normalizer, int jobs) {
  std::set<std::string> ids;
  for (const auto& p : pairs) {
    if (!ids.insert(p.id).second) {
      throw Error(errc::DuplicateId, "segment id '" + p.id + "' repeats");
    }
  }

  BatchRates batch;
  batch.rows.resize(pairs.size());
  parallel_for(pairs.size(), jobs, [&](size_t i) {
    batch.rows[i].id = pairs[i].id;
    batch.rows[i].rates =
        error_rates(pairs[i].reference, pairs[i].hypothesis, normalizer);
  });
  std::sort(batch.rows.begin(), batch.rows.end(),
            [](const SegmentRates& a, const SegmentRates& b) { return a.id < b.id; });

  if (!batch.rows.empty()) {
    double sw = 0.0, sc = 0.0;
    for (const auto& r : batch.rows) {
      sw += r.rates.wer;
      sc += r.rates.cer;
    }
    batch.mean_wer = sw / static_cast<double>(batch.rows.size());
    batch.mean_cer = sc / static_cast<double>(batch.rows.size());
  }
  return batch;
}

std::vector<SegmentPair> read_pairs_csv(std::string_view csv_text) {
  csv::Table table = csv::parse(csv_text);
  size_t c_id = table.require_column("segment_id");
  size_t c_ref = table.require_column("reference");
  size_t c_hyp = table.require_column("hypothesis");
  std::vector<SegmentPair> pairs;
  pairs.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    if (row.fields.size() < table.header.size()) {
      throw Error(errc::UnparsableRow,
                  "line " + std::to_string(row.line) + ": too few fields");
    }
    pairs.push_back(
        {row.fields[c_id], row.fields[c_ref], row.fields[c_hyp]});
  }
  return pairs;
}

std::vector<SegmentPair> read_pairs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return read_pairs_csv(buf.str());
  } catch (Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void write_rates_csv(std::ostream& os, const BatchRates& batch,
                     const std::string& comment) {
  if (!comment.empty()) os << "# " << comment << "\n";
  csv::write_row(os, {"segment_id", "wer", "cer", "S", "I", "D", "ref_len"});
  for (const auto& row : batch.rows) {
    csv::write_row(os, {row.id,
                        csv::format_fixed(row.rates.wer, 6),
                        csv::format_fixed(row.rates.cer, 6),
                        std::to_string(row.rates.words.substitutions),
                        std::to_string(row.rates.words.insertions),
                        std::to_string(row.rates.words.deletions),
                        std::to_string(row.rates.words.ref_len)});
  }
  csv::write_row(os, {"__mean__", csv::format_fixed(batch.mean_wer, 6),
                      csv::format_fixed(batch.mean_cer, 6), "", "", "", ""});
}

}  // namespace prosokit::intelligibility
