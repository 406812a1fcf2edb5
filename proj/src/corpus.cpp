// prosokit/corpus.cpp

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

#include "prosokit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "prosokit/csv.hpp"
#include "prosokit/error.hpp"

namespace prosokit::corpus {

namespace {

constexpr double kTimeEps = 1e-9;

std::vector<std::string> name_tokens(std::string_view name) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : name) {
    if (c == '-' || c == '_' || c == ' ') {
      if (!cur.empty()) {
        tokens.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

// Pattern tokens must appear as a consecutive run of the name's tokens.
bool tokens_match(const std::vector<std::string>& name,
                  const std::vector<std::string>& pattern) {
  if (pattern.empty() || pattern.size() > name.size()) return false;
  for (size_t start = 0; start + pattern.size() <= name.size(); ++start) {
    bool all = true;
    for (size_t i = 0; i < pattern.size(); ++i) {
      if (name[start + i] != pattern[i]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

const IntervalTier* match_one_tier(const TextGridDoc& doc,
                                   const std::string& pattern) {
  std::vector<std::string> want = name_tokens(pattern);
  const IntervalTier* found = nullptr;
  for (const auto& tier : doc.tiers) {
    if (tokens_match(name_tokens(tier.name), want)) {
      if (found) {
        throw Error(errc::AmbiguousTierMatch,
                    "pattern '" + pattern + "' matches both '" + found->name +
                        "' and '" + tier.name + "'");
      }
      found = &tier;
    }
  }
  if (!found) {
    throw Error(errc::NoMatchingTier,
                "no tier matches pattern '" + pattern + "'");
  }
  return found;
}

// Speaker token = the token following TB/NTB in the tier name.
std::string speaker_from_tier(const std::string& tier_name) {
  std::vector<std::string> tokens = name_tokens(tier_name);
  for (size_t i = 0; i < tokens.size(); ++i) {
    if ((tokens[i] == "TB" || tokens[i] == "NTB") && i + 1 < tokens.size()) {
      return tokens[i + 1];
    }
  }
  return tokens.empty() ? std::string() : tokens.back();
}

bool is_terminator_mark(const std::string& label) {
  return label == "." || label == "?" || label == "!" || label == "…" ||
         label == "...";
}

std::string trim_copy(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

const char* boundary_kind_name(BoundaryKind kind) {
  return kind == BoundaryKind::Terminal ? "Terminal" : "NonTerminal";
}

const char* removal_reason_name(RemovalReason reason) {
  switch (reason) {
    case RemovalReason::NonSpeech: return "NonSpeech";
    case RemovalReason::CerThreshold: return "CerThreshold";
    case RemovalReason::OverlapSeconds: return "OverlapSeconds";
    case RemovalReason::OverlapFraction: return "OverlapFraction";
  }
  return "Unknown";
}

std::optional<Genre> genre_from_inquiry_id(std::string_view inquiry_id) {
  for (const auto& token : name_tokens(inquiry_id)) {
    if (token == "EF") return Genre::EF;
    if (token == "D2") return Genre::D2;
    if (token == "DID") return Genre::DID;
  }
  return std::nullopt;
}

Corpus Corpus::from_segments(std::vector<Segment> segments) {
  Corpus corpus;
  for (auto& seg : segments) {
    auto& inquiry = corpus.inquiries[seg.inquiry_id];
    if (inquiry.id.empty()) {
      inquiry.id = seg.inquiry_id;
      inquiry.genre = genre_from_inquiry_id(seg.inquiry_id);
    }
    inquiry.segments.push_back(std::move(seg));
  }
  for (auto& [id, inquiry] : corpus.inquiries) {
    std::stable_sort(inquiry.segments.begin(), inquiry.segments.end(),
                     [](const Segment& a, const Segment& b) {
                       if (a.speaker_id != b.speaker_id)
                         return a.speaker_id < b.speaker_id;
                       return a.t_start < b.t_start;
                     });
  }
  return corpus;
}

size_t Corpus::segment_count() const {
  size_t n = 0;
  for (const auto& [id, inquiry] : inquiries) n += inquiry.segments.size();
  return n;
}

TierSelector TierSelector::for_speaker(const std::string& speaker_id) {
  TierSelector sel;
  sel.tb_pattern = "TB-" + speaker_id;
  sel.ntb_pattern = "NTB-" + speaker_id;
  sel.speaker = speaker_id;
  return sel;
}

std::vector<Segment> extract_segments(const TextGridDoc& doc,
                                      const TierSelector& selector,
                                      const std::string& inquiry_id) {
  const IntervalTier* tb = match_one_tier(doc, selector.tb_pattern);
  const IntervalTier* ntb = nullptr;
  if (selector.ntb_pattern) ntb = match_one_tier(doc, *selector.ntb_pattern);

  const IntervalTier* point = nullptr;
  if (selector.point_suffix) {
    for (const auto& tier : doc.tiers) {
      if (tier.name.size() >= selector.point_suffix->size() &&
          tier.name.compare(tier.name.size() - selector.point_suffix->size(),
                            std::string::npos, *selector.point_suffix) == 0) {
        if (point) {
          throw Error(errc::AmbiguousTierMatch,
                      "multiple tiers end with '" + *selector.point_suffix + "'");
        }
        point = &tier;
      }
    }
  }

  auto terminator_at = [&](double t) -> std::string {
    if (!point) return {};
    for (const auto& iv : point->intervals) {
      if (iv.start - kTimeEps <= t && t <= iv.end + kTimeEps) {
        std::string label = trim_copy(iv.label);
        if (is_terminator_mark(label)) return label == "..." ? "…" : label;
      }
    }
    return {};
  };

  std::vector<Segment> out;
  auto emit = [&](const IntervalTier& tier, BoundaryKind kind) {
    std::string speaker =
        selector.speaker ? *selector.speaker : speaker_from_tier(tier.name);
    for (const auto& iv : tier.intervals) {
      if (trim_copy(iv.label).empty()) continue;
      Segment seg;
      seg.inquiry_id = inquiry_id;
      seg.speaker_id = speaker;
      seg.t_start = iv.start;
      seg.t_end = iv.end;
      seg.text = iv.label;
      seg.boundary = kind;
      if (kind == BoundaryKind::Terminal) seg.terminator = terminator_at(iv.end);
      out.push_back(std::move(seg));
    }
  };
  emit(*tb, BoundaryKind::Terminal);
  if (ntb) emit(*ntb, BoundaryKind::NonTerminal);
  return out;
}

namespace {

bool parse_bool_field(const std::string& value, size_t line) {
  std::string v = trim_copy(value);
  if (v == "1" || v == "true" || v == "True" || v == "TRUE") return true;
  if (v.empty() || v == "0" || v == "false" || v == "False" || v == "FALSE")
    return false;
  throw Error(errc::UnparsableRow,
              "line " + std::to_string(line) + ": expected boolean, got '" +
                  value + "'");
}

BoundaryKind parse_boundary_field(const std::string& value, size_t line) {
  std::string v = trim_copy(value);
  if (v.empty() || v == "Terminal" || v == "TB") return BoundaryKind::Terminal;
  if (v == "NonTerminal" || v == "NTB") return BoundaryKind::NonTerminal;
  throw Error(errc::UnparsableRow,
              "line " + std::to_string(line) +
                  ": boundary must be Terminal or NonTerminal, got '" + value +
                  "'");
}

}  // namespace

Corpus load_manifest(std::string_view csv_text) {
  csv::Table table = csv::parse(csv_text);
  size_t c_inquiry = table.require_column("inquiry_id");
  size_t c_speaker = table.require_column("speaker_id");
  size_t c_start = table.require_column("t_start");
  size_t c_end = table.require_column("t_end");
  size_t c_text = table.require_column("text");
  auto c_boundary = table.column("boundary");
  auto c_terminator = table.column("terminator");
  auto c_header = table.column("is_header");
  auto c_audio = table.column("audio_path");

  std::map<std::string, std::string> audio_paths;
  std::vector<Segment> segments;
  segments.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    if (row.fields.size() < table.header.size()) {
      throw Error(errc::UnparsableRow,
                  "line " + std::to_string(row.line) + ": expected " +
                      std::to_string(table.header.size()) + " fields, got " +
                      std::to_string(row.fields.size()));
    }
    Segment seg;
    seg.inquiry_id = row.fields[c_inquiry];
    seg.speaker_id = row.fields[c_speaker];
    seg.t_start = csv::parse_double(row.fields[c_start], row.line, "t_start");
    seg.t_end = csv::parse_double(row.fields[c_end], row.line, "t_end");
    seg.text = row.fields[c_text];
    if (seg.inquiry_id.empty()) {
      throw Error(errc::UnparsableRow,
                  "line " + std::to_string(row.line) + ": empty inquiry_id");
    }
    if (seg.t_end <= seg.t_start) {
      throw Error(errc::UnparsableRow,
                  "line " + std::to_string(row.line) +
                      ": t_end must exceed t_start");
    }
    if (trim_copy(seg.text).empty()) {
      throw Error(errc::UnparsableRow,
                  "line " + std::to_string(row.line) + ": empty text");
    }
    if (c_boundary) {
      seg.boundary = parse_boundary_field(row.fields[*c_boundary], row.line);
    }
    if (c_terminator) seg.terminator = trim_copy(row.fields[*c_terminator]);
    if (c_header) seg.is_header = parse_bool_field(row.fields[*c_header], row.line);
    if (c_audio && !row.fields[*c_audio].empty()) {
      audio_paths[seg.inquiry_id] = row.fields[*c_audio];
    }
    segments.push_back(std::move(seg));
  }

  Corpus corpus = Corpus::from_segments(std::move(segments));
  for (auto& [id, path] : audio_paths) {
    auto it = corpus.inquiries.find(id);
    if (it != corpus.inquiries.end()) it->second.audio_path = path;
  }

  // Same-speaker spans within an inquiry must not run backwards in time.
  for (const auto& [id, inquiry] : corpus.inquiries) {
    for (size_t i = 1; i < inquiry.segments.size(); ++i) {
      const Segment& prev = inquiry.segments[i - 1];
      const Segment& cur = inquiry.segments[i];
      if (prev.speaker_id == cur.speaker_id &&
          cur.t_start < prev.t_end - kTimeEps) {
        throw Error(errc::NonMonotonicTimes,
                    "inquiry '" + id + "' speaker '" + cur.speaker_id +
                        "': segment starting at " +
                        csv::format_seconds(cur.t_start) +
                        " overlaps the previous one ending at " +
                        csv::format_seconds(prev.t_end));
      }
    }
  }
  return corpus;
}

Corpus load_manifest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_manifest(buf.str());
  } catch (Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void write_manifest(std::ostream& os, const Corpus& corpus,
                    const ManifestWriteOptions& options) {
  if (!options.comment.empty()) os << "# " << options.comment << "\n";
  std::vector<std::string> header = {"inquiry_id", "speaker_id", "t_start",
                                     "t_end",      "text",       "boundary"};
  if (options.include_extras) {
    header.push_back("terminator");
    header.push_back("is_header");
  }
  csv::write_row(os, header);
  for (const auto& [id, inquiry] : corpus.inquiries) {
    for (const auto& seg : inquiry.segments) {
      std::vector<std::string> row = {
          seg.inquiry_id,
          seg.speaker_id,
          csv::format_seconds(seg.t_start),
          csv::format_seconds(seg.t_end),
          seg.text,
          boundary_kind_name(seg.boundary)};
      if (options.include_extras) {
        row.push_back(seg.terminator);
        row.push_back(seg.is_header ? "1" : "0");
      }
      csv::write_row(os, row);
    }
  }
}

bool is_non_speech(const std::string& text, const FilterRules& rules) {
  std::string s = trim_copy(text);
  if (s.empty()) return true;
  size_t pos = 0;
  bool saw_marker = false;
  while (pos < s.size()) {
    if (s[pos] == ' ' || s[pos] == '\t') {
      ++pos;
      continue;
    }
    bool matched = false;
    for (const auto& [open, close] : rules.nonspeech_brackets) {
      if (s.compare(pos, open.size(), open) == 0) {
        size_t end = s.find(close, pos + open.size());
        if (end == std::string::npos) return false;
        pos = end + close.size();
        matched = true;
        saw_marker = true;
        break;
      }
    }
    if (matched) continue;
    for (const auto& mark : rules.ellipsis_marks) {
      if (s.compare(pos, mark.size(), mark) == 0) {
        pos += mark.size();
        matched = true;
        saw_marker = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return saw_marker;
}

FilterResult filter_segments(const Corpus& corpus, const FilterRules& rules,
                             const CerLookup& cer_by_segment) {
  if (rules.max_overlap_seconds < 0 || rules.max_overlap_fraction < 0 ||
      rules.max_overlap_fraction > 1 || rules.cer_threshold < 0 ||
      rules.cer_threshold > 1) {
    throw Error(errc::InvalidRange, "filter thresholds out of range");
  }

  FilterResult result;
  for (const auto& [id, inquiry] : corpus.inquiries) {
    const auto& segs = inquiry.segments;
    std::vector<std::optional<RemovalReason>> removed(segs.size());
    std::vector<std::string> details(segs.size());

    auto mark = [&](size_t i, RemovalReason reason, const std::string& detail) {
      if (!removed[i]) {
        removed[i] = reason;
        details[i] = detail;
      }
    };

    if (rules.drop_nonspeech) {
      for (size_t i = 0; i < segs.size(); ++i) {
        if (is_non_speech(segs[i].text, rules)) {
          mark(i, RemovalReason::NonSpeech, "label '" + segs[i].text + "'");
        }
      }
    }
    if (cer_by_segment) {
      for (size_t i = 0; i < segs.size(); ++i) {
        std::optional<double> cer = cer_by_segment(segs[i]);
        if (cer && *cer > rules.cer_threshold) {
          mark(i, RemovalReason::CerThreshold,
               "cer " + csv::format_fixed(*cer, 4) + " > " +
                   csv::format_fixed(rules.cer_threshold, 4));
        }
      }
    }
    // Cross-speaker overlap: both members of a violating pair go.
    for (size_t i = 0; i < segs.size(); ++i) {
      for (size_t j = i + 1; j < segs.size(); ++j) {
        if (segs[i].speaker_id == segs[j].speaker_id) continue;
        double overlap = std::min(segs[i].t_end, segs[j].t_end) -
                         std::max(segs[i].t_start, segs[j].t_start);
        if (overlap <= 0) continue;
        double shorter = std::min(segs[i].t_end - segs[i].t_start,
                                  segs[j].t_end - segs[j].t_start);
        if (overlap > rules.max_overlap_seconds) {
          std::string detail = "overlap " + csv::format_seconds(overlap) +
                               " s > " +
                               csv::format_seconds(rules.max_overlap_seconds) +
                               " s";
          mark(i, RemovalReason::OverlapSeconds, detail);
          mark(j, RemovalReason::OverlapSeconds, detail);
        } else if (overlap > rules.max_overlap_fraction * shorter) {
          std::string detail =
              "overlap " + csv::format_seconds(overlap) + " s > " +
              csv::format_fixed(rules.max_overlap_fraction * 100, 0) +
              "% of the shorter segment (" + csv::format_seconds(shorter) +
              " s)";
          mark(i, RemovalReason::OverlapFraction, detail);
          mark(j, RemovalReason::OverlapFraction, detail);
        }
      }
    }

    for (size_t i = 0; i < segs.size(); ++i) {
      if (removed[i]) {
        result.removals.push_back(Removal{segs[i], *removed[i], details[i]});
      } else {
        auto& out = result.corpus.inquiries[id];
        if (out.id.empty()) {
          out.id = id;
          out.genre = inquiry.genre;
          out.audio_path = inquiry.audio_path;
        }
        out.segments.push_back(segs[i]);
      }
    }
  }
  return result;
}

}  // namespace prosokit::corpus
