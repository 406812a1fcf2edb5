// prosokit/corpus.hpp

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

#ifndef PROSOKIT_CORPUS_HPP_
#define PROSOKIT_CORPUS_HPP_

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "prosokit/textgrid.hpp"

namespace prosokit::corpus {

enum class BoundaryKind { Terminal, NonTerminal };

const char* boundary_kind_name(BoundaryKind kind);

// One transcribed span of speech.
struct Segment {
  std::string inquiry_id;
  std::string speaker_id;   // e.g. L1, Doc1, LA
  double t_start = 0.0;
  double t_end = 0.0;       // > t_start
  std::string text;
  BoundaryKind boundary = BoundaryKind::Terminal;
  std::string terminator;   // one of . ? ! … when known, else empty
  bool is_header = false;   // recording/speaker metadata read aloud
};

enum class Genre { EF, D2, DID };

struct Inquiry {
  std::string id;
  std::optional<Genre> genre;             // derived from the id when possible
  std::optional<std::string> audio_path;
  std::vector<Segment> segments;          // sorted by (speaker_id, t_start)
};

struct Corpus {
  std::map<std::string, Inquiry> inquiries;

  static Corpus from_segments(std::vector<Segment> segments);
  size_t segment_count() const;
};

std::optional<Genre> genre_from_inquiry_id(std::string_view inquiry_id);

// Selects the tiers that carry segments. Patterns match when their
// -/_-separated tokens appear consecutively among the tier-name tokens,
// so "TB-L1" matches "SP_EF_153-TB-L1" but never "NTB-L1".
struct TierSelector {
  std::string tb_pattern;                  // required, e.g. "TB-L1"
  std::optional<std::string> ntb_pattern;  // e.g. "NTB-L1"
  std::optional<std::string> point_suffix = "-point";
  std::optional<std::string> speaker;      // overrides the derived speaker id

  static TierSelector for_speaker(const std::string& speaker_id);
};

// Non-empty intervals on the TB tier become Terminal segments, NTB intervals
// NonTerminal ones. A TB segment picks up the terminator mark (. ? ! …) from
// the punctuation-tier interval containing its end time.
std::vector<Segment> extract_segments(const TextGridDoc& doc,
                                      const TierSelector& selector,
                                      const std::string& inquiry_id = "");

// Manifest CSV: header inquiry_id,speaker_id,t_start,t_end,text,boundary
// (boundary optional, defaults to Terminal). Optional extra columns:
// terminator, is_header, audio_path.
Corpus load_manifest(std::string_view csv_text);
Corpus load_manifest_file(const std::string& path);

struct ManifestWriteOptions {
  bool include_extras = false;  // terminator + is_header columns
  std::string comment;          // emitted first when non-empty, "# ..."
};

void write_manifest(std::ostream& os, const Corpus& corpus,
                    const ManifestWriteOptions& options = {});

struct FilterRules {
  double max_overlap_seconds = 2.0;
  double max_overlap_fraction = 0.5;  // of the shorter segment's duration
  double cer_threshold = 0.6;
  bool drop_nonspeech = true;
  // Markers whose content-free combination makes a label "non-speech",
  // e.g. "((riso))" or "...". NURC transcription conventions vary, so the
  // inventory is configurable.
  std::vector<std::pair<std::string, std::string>> nonspeech_brackets = {
      {"((", "))"}, {"[", "]"}, {"<", ">"}};
  std::vector<std::string> ellipsis_marks = {"...", "…"};
};

// True when the label consists only of bracketed annotations and/or
// ellipsis marks (plus whitespace).
bool is_non_speech(const std::string& text, const FilterRules& rules);

enum class RemovalReason {
  NonSpeech,
  CerThreshold,
  OverlapSeconds,
  OverlapFraction
};

const char* removal_reason_name(RemovalReason reason);

struct Removal {
  Segment segment;
  RemovalReason reason;
  std::string detail;
};

struct FilterResult {
  Corpus corpus;
  std::vector<Removal> removals;
};

using CerLookup = std::function<std::optional<double>(const Segment&)>;

// Applies every rule to the input set independently; both members of an
// overlapping cross-speaker pair are removed. Total and idempotent.
FilterResult filter_segments(const Corpus& corpus, const FilterRules& rules,
                             const CerLookup& cer_by_segment = nullptr);

}  // namespace prosokit::corpus

#endif  // PROSOKIT_CORPUS_HPP_
