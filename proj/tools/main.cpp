// prosokit/tools/main.cpp
//
// Command-line front end: ingest TextGrids/manifests into the unified
// manifest form, compare two segmentations, score intelligibility, and run
// the F0 contour analysis. Every output file records the tool version and a
// hash of the effective configuration so runs can be reproduced exactly.

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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prosokit/acoustics.hpp"
#include "prosokit/corpus.hpp"
#include "prosokit/csv.hpp"
#include "prosokit/error.hpp"
#include "prosokit/intelligibility.hpp"
#include "prosokit/parallel.hpp"
#include "prosokit/segalign.hpp"
#include "prosokit/stats.hpp"
#include "prosokit/textnorm.hpp"
#include "prosokit/version.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace prosokit;

namespace {

// Exit codes: 0 ok, 2 usage, then one per failure category.
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitValidation = 4;
constexpr int kExitComputation = 5;

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct RunContext {
  std::string config_hash;
  fs::path out_dir;
  int jobs = 1;

  std::string comment() const {
    return std::string("prosokit ") + kVersion + " config=" + config_hash;
  }

  json meta() const {
    return json{{"tool_version", kVersion}, {"config_hash", config_hash}};
  }

  fs::path out(const std::string& name) const { return out_dir / name; }
};

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(errc::IoError, "cannot write '" + path.string() + "'");
  return os;
}

void write_json(const fs::path& path, const json& j) {
  auto os = open_out(path);
  os << j.dump(2) << '\n';
}

// The effective configuration (defaults + config file + command line) is
// dumped next to the results; feeding it back via --config reproduces the
// run. Its FNV-1a hash tags every output file.
RunContext make_context(CLI::App& app, const std::string& out_dir, int jobs) {
  RunContext ctx;
  std::string effective = app.config_to_str(true, false);
  ctx.config_hash = hex64(fnv1a64(effective));
  ctx.out_dir = out_dir;
  ctx.jobs = jobs;
  fs::create_directories(ctx.out_dir);
  auto os = open_out(ctx.out("effective_config.ini"));
  os << effective;
  return ctx;
}

json test_result_to_json(const stats::TestResult& r) {
  json j;
  j["method"] = stats::test_method_name(r.method);
  j["statistic"] = r.statistic;
  if (r.df2) {
    j["df"] = json::array({r.df1, *r.df2});
  } else {
    j["df"] = r.df1;
  }
  j["p_value"] = r.p_value;
  if (r.zero_variance) j["zero_variance"] = true;
  return j;
}

corpus::Corpus drop_header_segments(const corpus::Corpus& in) {
  std::vector<corpus::Segment> keep;
  for (const auto& [id, inquiry] : in.inquiries) {
    for (const auto& seg : inquiry.segments) {
      if (!seg.is_header) keep.push_back(seg);
    }
  }
  return corpus::Corpus::from_segments(std::move(keep));
}

// ---------------------------------------------------------------------------
// ingest

struct IngestOptions {
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  int jobs = 1;
  std::vector<std::string> speakers;  // explicit TB-<spk>/NTB-<spk> selectors
  std::string point_suffix = "-point";
  bool tb_only = false;
  bool apply_filter = false;
  corpus::FilterRules rules;
  std::string cer_csv;
};

// Tier auto-discovery: a tier whose name tokens include TB (NTB) carries
// Terminal (NonTerminal) segments; the speaker is the following token.
std::vector<corpus::Segment> extract_auto(const corpus::TextGridDoc& doc,
                                          const IngestOptions& opt,
                                          const std::string& inquiry_id) {
  std::vector<corpus::Segment> out;
  for (const auto& tier : doc.tiers) {
    std::string kind;
    std::string token;
    std::istringstream name(tier.name);
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : tier.name) {
      if (c == '-' || c == '_' || c == ' ') {
        if (!cur.empty()) tokens.push_back(cur), cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) tokens.push_back(cur);
    bool is_tb = std::find(tokens.begin(), tokens.end(), "TB") != tokens.end();
    bool is_ntb = std::find(tokens.begin(), tokens.end(), "NTB") != tokens.end();
    if (!is_tb && !is_ntb) continue;
    if (is_ntb && opt.tb_only) continue;

    corpus::TierSelector sel;
    sel.tb_pattern = tier.name;  // exact tier, already discovered
    sel.ntb_pattern = std::nullopt;
    sel.point_suffix = opt.point_suffix;
    auto segs = corpus::extract_segments(doc, sel, inquiry_id);
    for (auto& s : segs) {
      if (is_ntb) {
        s.boundary = corpus::BoundaryKind::NonTerminal;
        s.terminator.clear();
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

corpus::CerLookup make_cer_lookup(const std::string& path,
                                  std::map<std::string, double>& store) {
  csv::Table table = csv::read_file(path);
  size_t c_inq = table.require_column("inquiry_id");
  size_t c_spk = table.require_column("speaker_id");
  size_t c_start = table.require_column("t_start");
  size_t c_cer = table.require_column("cer");
  for (const auto& row : table.rows) {
    std::string key = row.fields[c_inq] + "|" + row.fields[c_spk] + "|" +
                      std::to_string(std::llround(
                          csv::parse_double(row.fields[c_start], row.line,
                                            "t_start") * 1000.0));
    store[key] = csv::parse_double(row.fields[c_cer], row.line, "cer");
  }
  return [&store](const corpus::Segment& seg) -> std::optional<double> {
    std::string key = seg.inquiry_id + "|" + seg.speaker_id + "|" +
                      std::to_string(std::llround(seg.t_start * 1000.0));
    auto it = store.find(key);
    if (it == store.end()) return std::nullopt;
    return it->second;
  };
}

int cmd_ingest(CLI::App& app, const IngestOptions& opt) {
  RunContext ctx = make_context(app, opt.out_dir, opt.jobs);

  std::vector<corpus::Segment> segments;
  for (const auto& input : opt.inputs) {
    fs::path path(input);
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".textgrid") {
      corpus::TextGridDoc doc = corpus::parse_textgrid_file(input);
      std::string inquiry_id = path.stem().string();
      std::vector<corpus::Segment> extracted;
      if (!opt.speakers.empty()) {
        for (const auto& spk : opt.speakers) {
          auto sel = corpus::TierSelector::for_speaker(spk);
          if (opt.tb_only) sel.ntb_pattern = std::nullopt;
          sel.point_suffix = opt.point_suffix;
          auto segs = corpus::extract_segments(doc, sel, inquiry_id);
          extracted.insert(extracted.end(), segs.begin(), segs.end());
        }
      } else {
        extracted = extract_auto(doc, opt, inquiry_id);
      }
      segments.insert(segments.end(), extracted.begin(), extracted.end());
    } else if (ext == ".csv") {
      corpus::Corpus part = corpus::load_manifest_file(input);
      for (auto& [id, inquiry] : part.inquiries) {
        segments.insert(segments.end(), inquiry.segments.begin(),
                        inquiry.segments.end());
      }
    } else {
      throw Error(errc::InvalidArgument,
                  "unrecognized input '" + input +
                      "' (expected .TextGrid or .csv)");
    }
  }

  corpus::Corpus full = corpus::Corpus::from_segments(std::move(segments));

  if (opt.apply_filter) {
    std::map<std::string, double> cer_store;
    corpus::CerLookup lookup;
    if (!opt.cer_csv.empty()) lookup = make_cer_lookup(opt.cer_csv, cer_store);
    corpus::FilterResult filtered = corpus::filter_segments(full, opt.rules, lookup);

    auto os = open_out(ctx.out("removals.csv"));
    os << "# " << ctx.comment() << "\n";
    csv::write_row(os, {"inquiry_id", "speaker_id", "t_start", "t_end",
                        "reason", "detail"});
    for (const auto& removal : filtered.removals) {
      csv::write_row(os, {removal.segment.inquiry_id, removal.segment.speaker_id,
                          csv::format_seconds(removal.segment.t_start),
                          csv::format_seconds(removal.segment.t_end),
                          corpus::removal_reason_name(removal.reason),
                          removal.detail});
    }
    std::cerr << "filtered " << filtered.removals.size() << " segment(s)\n";
    full = std::move(filtered.corpus);
  }

  {
    auto os = open_out(ctx.out("manifest.csv"));
    corpus::ManifestWriteOptions wopt;
    wopt.include_extras = true;
    wopt.comment = ctx.comment();
    corpus::write_manifest(os, full, wopt);
  }

  std::set<std::string> speakers;
  for (const auto& [id, inquiry] : full.inquiries) {
    for (const auto& seg : inquiry.segments) speakers.insert(seg.speaker_id);
  }
  std::cout << "inquiries: " << full.inquiries.size()
            << "\nsegments: " << full.segment_count()
            << "\nspeakers: " << speakers.size() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// compare

struct CompareOptions {
  std::string ref_path;
  std::string hyp_path;
  std::string out_dir = ".";
  int jobs = 1;
  bool drop_headers = false;
  std::string strip_set;
};

void write_segstats(const RunContext& ctx, const segalign::SegStats& ref,
                    const segalign::SegStats& hyp) {
  auto os = open_out(ctx.out("segstats.csv"));
  os << "# " << ctx.comment() << "\n";
  csv::write_row(os, {"metric", "ref", "hyp"});
  auto num = [](double v) { return csv::format_fixed(v, 6); };
  csv::write_row(os, {"total_tokens", std::to_string(ref.total_tokens),
                      std::to_string(hyp.total_tokens)});
  csv::write_row(os, {"total_segments", std::to_string(ref.total_segments),
                      std::to_string(hyp.total_segments)});
  csv::write_row(os, {"tokens_per_segment_mean", num(ref.tokens_per_segment_mean),
                      num(hyp.tokens_per_segment_mean)});
  csv::write_row(os, {"tokens_per_segment_std", num(ref.tokens_per_segment_std),
                      num(hyp.tokens_per_segment_std)});
  csv::write_row(os, {"segments_per_inquiry_mean",
                      num(ref.segments_per_inquiry_mean),
                      num(hyp.segments_per_inquiry_mean)});
  csv::write_row(os, {"segments_per_inquiry_std",
                      num(ref.segments_per_inquiry_std),
                      num(hyp.segments_per_inquiry_std)});

  auto os2 = open_out(ctx.out("segstats_by_inquiry.csv"));
  os2 << "# " << ctx.comment() << "\n";
  csv::write_row(os2, {"corpus", "inquiry_id", "tokens", "segments",
                       "tokens_per_segment_mean", "tokens_per_segment_std"});
  auto rows = [&](const char* which, const segalign::SegStats& s) {
    for (const auto& iq : s.by_inquiry) {
      csv::write_row(os2, {which, iq.inquiry_id, std::to_string(iq.tokens),
                           std::to_string(iq.segments),
                           num(iq.tokens_per_segment_mean),
                           num(iq.tokens_per_segment_std)});
    }
  };
  rows("ref", ref);
  rows("hyp", hyp);
}

int cmd_compare(CLI::App& app, const CompareOptions& opt) {
  RunContext ctx = make_context(app, opt.out_dir, opt.jobs);
  textnorm::NormalizeOptions norm;
  if (!opt.strip_set.empty()) norm.strip_set = opt.strip_set;

  corpus::Corpus ref = corpus::load_manifest_file(opt.ref_path);
  corpus::Corpus hyp = corpus::load_manifest_file(opt.hyp_path);
  if (opt.drop_headers) {
    ref = drop_header_segments(ref);
    hyp = drop_header_segments(hyp);
  }

  segalign::SegStats ref_stats = segalign::segment_statistics(ref, norm);
  segalign::SegStats hyp_stats = segalign::segment_statistics(hyp, norm);
  write_segstats(ctx, ref_stats, hyp_stats);

  segalign::CompareMetrics metrics =
      segalign::per_inquiry_metrics(ref, hyp, norm, ctx.jobs);
  {
    auto os = open_out(ctx.out("metrics.csv"));
    segalign::write_metrics_csv(os, metrics, ctx.comment());
  }
  {
    auto os = open_out(ctx.out("plot_metrics.csv"));
    segalign::write_plot_csv(os, metrics, ctx.comment());
  }

  for (const auto& id : metrics.ref_only) {
    std::cerr << "skipped inquiry only in ref: " << id << "\n";
  }
  for (const auto& id : metrics.hyp_only) {
    std::cerr << "skipped inquiry only in hyp: " << id << "\n";
  }
  std::cout << "inquiries compared: " << metrics.rows.size() << "\n"
            << "micro precision: "
            << csv::format_fixed(metrics.micro_metrics.precision, 4) << "\n"
            << "micro recall:    "
            << csv::format_fixed(metrics.micro_metrics.recall, 4) << "\n"
            << "micro f1:        "
            << csv::format_fixed(metrics.micro_metrics.f1, 4) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// intelligibility

struct IntelligibilityOptions {
  std::vector<std::string> conditions;  // name=path
  std::string out_dir = ".";
  int jobs = 1;
  std::string test_mode = "paired";
  std::string strip_set;
};

int cmd_intelligibility(CLI::App& app, const IntelligibilityOptions& opt) {
  RunContext ctx = make_context(app, opt.out_dir, opt.jobs);
  textnorm::NormalizeOptions norm;
  if (!opt.strip_set.empty()) norm.strip_set = opt.strip_set;

  std::map<std::string, intelligibility::BatchRates> batches;
  for (const auto& spec : opt.conditions) {
    size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw Error(errc::InvalidArgument,
                  "--condition expects NAME=PATH, got '" + spec + "'");
    }
    std::string name = spec.substr(0, eq);
    std::string path = spec.substr(eq + 1);
    if (batches.count(name)) {
      throw Error(errc::DuplicateId, "condition '" + name + "' given twice");
    }
    auto pairs = intelligibility::read_pairs_file(path);
    batches[name] =
        intelligibility::batch_rates(pairs, norm, ctx.jobs);
    auto os = open_out(ctx.out("rates_" + name + ".csv"));
    intelligibility::write_rates_csv(os, batches[name], ctx.comment());
    std::cout << name << ": " << batches[name].rows.size()
              << " segments, mean WER "
              << csv::format_fixed(batches[name].mean_wer, 4) << ", mean CER "
              << csv::format_fixed(batches[name].mean_cer, 4) << "\n";
  }

  stats::TTestMode mode = opt.test_mode == "two_sample"
                              ? stats::TTestMode::TwoSample
                              : stats::TTestMode::Paired;

  // Pairwise tests over conditions, ids matched 1:1.
  for (auto a = batches.begin(); a != batches.end(); ++a) {
    for (auto b = std::next(a); b != batches.end(); ++b) {
      const auto& ra = a->second.rows;
      const auto& rb = b->second.rows;
      if (mode == stats::TTestMode::Paired) {
        bool same = ra.size() == rb.size();
        for (size_t i = 0; same && i < ra.size(); ++i) {
          same = ra[i].id == rb[i].id;
        }
        if (!same) {
          throw Error(errc::IdMismatch,
                      "conditions '" + a->first + "' and '" + b->first +
                          "' do not cover the same segment ids");
        }
      }
      std::vector<double> wa, wb, ca, cb;
      for (const auto& r : ra) {
        wa.push_back(r.rates.wer);
        ca.push_back(r.rates.cer);
      }
      for (const auto& r : rb) {
        wb.push_back(r.rates.wer);
        cb.push_back(r.rates.cer);
      }
      std::string suffix = a->first + "_vs_" + b->first;
      json jw = ctx.meta();
      jw["conditions"] = json::array({a->first, b->first});
      jw["metric"] = "wer";
      jw["test"] = test_result_to_json(stats::t_test(wa, wb, mode));
      write_json(ctx.out("ttest_wer_" + suffix + ".json"), jw);
      json jc = ctx.meta();
      jc["conditions"] = json::array({a->first, b->first});
      jc["metric"] = "cer";
      jc["test"] = test_result_to_json(stats::t_test(ca, cb, mode));
      write_json(ctx.out("ttest_cer_" + suffix + ".json"), jc);
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// f0

struct F0Options {
  std::string audio_dir;
  std::string annotations;
  std::string groups;
  std::string out_dir = ".";
  int jobs = 1;
  acoustics::F0Params params;
};

int cmd_f0(CLI::App& app, const F0Options& opt) {
  RunContext ctx = make_context(app, opt.out_dir, opt.jobs);

  auto annotations = acoustics::read_annotations_file(opt.annotations);

  // utterance -> group; defaults to a single group covering all utterances.
  std::map<std::string, std::string> group_of;
  if (!opt.groups.empty()) {
    csv::Table table = csv::read_file(opt.groups);
    size_t c_id = table.require_column("utterance_id");
    size_t c_group = table.require_column("group");
    for (const auto& row : table.rows) {
      group_of[row.fields[c_id]] = row.fields[c_group];
    }
    for (const auto& [id, group] : group_of) {
      if (!annotations.count(id)) {
        throw Error(errc::MissingAnnotation,
                    "utterance '" + id + "' has no annotation rows");
      }
    }
  } else {
    for (const auto& [id, anns] : annotations) group_of[id] = "all";
  }

  std::vector<std::string> ids;
  for (const auto& [id, group] : group_of) ids.push_back(id);

  struct PerUtterance {
    acoustics::ContourPoints contour;
    std::optional<double> variation_st;
  };
  std::vector<PerUtterance> results(ids.size());

  // Resolve audio paths up front so a missing file fails before any work.
  std::vector<fs::path> wavs(ids.size());
  for (size_t i = 0; i < ids.size(); ++i) {
    wavs[i] = fs::path(opt.audio_dir) / (ids[i] + ".wav");
    if (!fs::exists(wavs[i])) {
      throw Error(errc::MissingAudio, "no audio file '" + wavs[i].string() + "'");
    }
  }

  parallel_for(ids.size(), ctx.jobs, [&](size_t i) {
    acoustics::AudioBuffer audio = acoustics::read_wav(wavs[i].string());
    acoustics::F0Track track = acoustics::extract_f0(audio, opt.params);
    results[i].contour = acoustics::contour_points(track, annotations.at(ids[i]));
    if (results[i].contour.present().size() >= 2) {
      results[i].variation_st =
          acoustics::utterance_f0_variation_st(results[i].contour);
    }
  });

  {
    std::vector<std::pair<std::string, acoustics::ContourPoints>> rows;
    for (size_t i = 0; i < ids.size(); ++i) rows.emplace_back(ids[i], results[i].contour);
    auto os = open_out(ctx.out("contours.csv"));
    acoustics::write_contours_csv(os, rows, ctx.comment());
  }
  {
    auto os = open_out(ctx.out("variation.csv"));
    os << "# " << ctx.comment() << "\n";
    csv::write_row(os, {"utterance_id", "group", "variation_st"});
    for (size_t i = 0; i < ids.size(); ++i) {
      csv::write_row(os, {ids[i], group_of.at(ids[i]),
                          results[i].variation_st
                              ? csv::format_fixed(*results[i].variation_st, 4)
                              : std::string()});
    }
  }

  // Group aggregation (sorted names keeps every merge deterministic).
  std::map<std::string, std::vector<acoustics::ContourPoints>> contours_by_group;
  std::map<std::string, std::vector<double>> variation_by_group;
  for (size_t i = 0; i < ids.size(); ++i) {
    const std::string& g = group_of.at(ids[i]);
    contours_by_group[g].push_back(results[i].contour);
    if (results[i].variation_st) {
      variation_by_group[g].push_back(*results[i].variation_st);
    }
  }

  std::vector<std::string> group_names;
  std::map<std::string, acoustics::MeanContour> means;
  for (const auto& [g, contours] : contours_by_group) {
    group_names.push_back(g);
    means[g] = acoustics::mean_contour(contours);
  }

  {
    auto os = open_out(ctx.out("mean_contours.csv"));
    os << "# " << ctx.comment() << "\n";
    csv::write_row(os, {"group", "ons", "prnuc", "nuc", "psnuc", "n_ons",
                        "n_prnuc", "n_nuc", "n_psnuc"});
    for (const auto& g : group_names) {
      const auto& mc = means.at(g);
      auto cell = [](const std::optional<double>& v) {
        return v ? csv::format_fixed(*v, 3) : std::string();
      };
      csv::write_row(os, {g, cell(mc.means.ons), cell(mc.means.prnuc),
                          cell(mc.means.nuc), cell(mc.means.psnuc),
                          std::to_string(mc.counts[0]), std::to_string(mc.counts[1]),
                          std::to_string(mc.counts[2]), std::to_string(mc.counts[3])});
    }
  }

  {
    auto os = open_out(ctx.out("rmse_matrix.csv"));
    os << "# " << ctx.comment() << "\n";
    std::vector<std::string> header = {"group"};
    header.insert(header.end(), group_names.begin(), group_names.end());
    csv::write_row(os, header);
    for (const auto& ga : group_names) {
      std::vector<std::string> row = {ga};
      for (const auto& gb : group_names) {
        double rmse = ga == gb ? 0.0
                               : acoustics::contour_rmse(means.at(ga).means,
                                                         means.at(gb).means);
        row.push_back(csv::format_fixed(rmse, 4));
      }
      csv::write_row(os, row);
    }
  }

  // Per-point ANOVA + Tukey across groups and the same for the semitone
  // variation. With fewer than two eligible groups the test is skipped.
  json tests = ctx.meta();
  auto run_tests = [&](const std::string& name,
                       const std::map<std::string, std::vector<double>>& by_group,
                       const std::string& tukey_file) {
    std::vector<std::string> names;
    std::vector<std::vector<double>> groups;
    for (const auto& [g, values] : by_group) {
      if (values.size() >= 2) {
        names.push_back(g);
        groups.push_back(values);
      }
    }
    json entry;
    auto os = open_out(ctx.out(tukey_file));
    os << "# " << ctx.comment() << "\n";
    csv::write_row(os, {"group_a", "group_b", "mean_diff", "q", "p_value"});
    if (groups.size() < 2) {
      entry["skipped"] = "fewer than 2 groups with n >= 2";
      tests[name] = entry;
      return;
    }
    try {
      entry["anova"] = test_result_to_json(stats::one_way_anova(groups));
      stats::TukeyTable tukey = stats::tukey_hsd(groups, names);
      json rows = json::array();
      for (const auto& row : tukey.rows) {
        rows.push_back(json{{"group_a", row.group_a},
                            {"group_b", row.group_b},
                            {"mean_diff", row.mean_diff},
                            {"q", row.q},
                            {"p_value", row.p_value}});
        csv::write_row(os, {row.group_a, row.group_b,
                            csv::format_fixed(row.mean_diff, 6),
                            csv::format_fixed(row.q, 6),
                            csv::format_fixed(row.p_value, 6)});
      }
      entry["tukey"] = rows;
    } catch (const Error& e) {
      if (e.code() != errc::ZeroWithinVariance) throw;
      entry["skipped"] = e.what();
    }
    tests[name] = entry;
  };

  for (acoustics::PointLabel label :
       {acoustics::PointLabel::Ons, acoustics::PointLabel::Prnuc,
        acoustics::PointLabel::Nuc, acoustics::PointLabel::Psnuc}) {
    std::map<std::string, std::vector<double>> by_group;
    for (size_t i = 0; i < ids.size(); ++i) {
      const auto& v = results[i].contour.at(label);
      if (v) by_group[group_of.at(ids[i])].push_back(*v);
    }
    std::string name = acoustics::point_label_name(label);
    run_tests(name, by_group, "tukey_" + name + ".csv");
  }
  run_tests("semitone_variation", variation_by_group,
            "tukey_semitone_variation.csv");

  write_json(ctx.out("f0_tests.json"), tests);

  std::cout << "utterances: " << ids.size() << "\ngroups: " << group_names.size()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prosodic segmentation evaluation toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "flat key=value config file; command-line "
                                 "flags take precedence")
      ->envname("PROSOKIT_CONFIG");
  app.allow_config_extras(true);
  app.require_subcommand(1);

  IngestOptions ingest;
  auto* s_ingest = app.add_subcommand(
      "ingest", "parse TextGrid/manifest inputs into one manifest CSV");
  s_ingest->add_option("inputs,--input", ingest.inputs,
                       ".TextGrid or manifest .csv files")
      ->required()
      ->capture_default_str();
  s_ingest->add_option("--out-dir", ingest.out_dir, "output directory")
      ->capture_default_str();
  s_ingest->add_option("--jobs", ingest.jobs, "worker threads")
      ->capture_default_str();
  s_ingest->add_option("--speaker", ingest.speakers,
                       "extract TB-<spk>/NTB-<spk> tiers for these speakers "
                       "only (default: auto-discover TB/NTB tiers)")
      ->capture_default_str();
  s_ingest->add_option("--point-suffix", ingest.point_suffix,
                       "suffix of the punctuation tier")
      ->capture_default_str();
  s_ingest->add_flag("--tb-only", ingest.tb_only,
                     "skip non-terminal (NTB) tiers");
  s_ingest->add_flag("--filter", ingest.apply_filter,
                     "apply the segment filtering rules");
  s_ingest->add_option("--max-overlap-seconds", ingest.rules.max_overlap_seconds)
      ->capture_default_str();
  s_ingest
      ->add_option("--max-overlap-fraction", ingest.rules.max_overlap_fraction)
      ->capture_default_str();
  s_ingest->add_option("--cer-threshold", ingest.rules.cer_threshold)
      ->capture_default_str();
  s_ingest
      ->add_flag("--keep-nonspeech",
                 [&ingest](std::int64_t) { ingest.rules.drop_nonspeech = false; },
                 "keep laughter/unintelligible-only segments when filtering")
      ->capture_default_str();
  s_ingest->add_option("--cer-csv", ingest.cer_csv,
                       "per-segment CER table "
                       "(inquiry_id,speaker_id,t_start,cer)")
      ->capture_default_str();

  CompareOptions compare;
  auto* s_compare = app.add_subcommand(
      "compare", "score hyp segmentation against ref; Table-style stats");
  s_compare->add_option("--ref", compare.ref_path, "reference manifest CSV")
      ->required()
      ->capture_default_str();
  s_compare->add_option("--hyp", compare.hyp_path, "hypothesis manifest CSV")
      ->required()
      ->capture_default_str();
  s_compare->add_option("--out-dir", compare.out_dir, "output directory")
      ->capture_default_str();
  s_compare->add_option("--jobs", compare.jobs, "worker threads")
      ->capture_default_str();
  s_compare->add_flag("--drop-headers", compare.drop_headers,
                      "exclude segments flagged is_header");
  s_compare->add_option("--strip-set", compare.strip_set,
                        "punctuation characters removed by normalization")
      ->capture_default_str();

  IntelligibilityOptions intel;
  auto* s_intel = app.add_subcommand(
      "intelligibility", "WER/CER per condition plus per-metric t tests");
  s_intel->add_option("--condition", intel.conditions,
                      "NAME=PATH of a segment_id,reference,hypothesis CSV "
                      "(repeatable)")
      ->required()
      ->capture_default_str();
  s_intel->add_option("--out-dir", intel.out_dir, "output directory")
      ->capture_default_str();
  s_intel->add_option("--jobs", intel.jobs, "worker threads")
      ->capture_default_str();
  s_intel->add_option("--test-mode", intel.test_mode, "paired or two_sample")
      ->check(CLI::IsMember({"paired", "two_sample"}))
      ->capture_default_str();
  s_intel->add_option("--strip-set", intel.strip_set,
                      "punctuation characters removed by normalization")
      ->capture_default_str();

  F0Options f0;
  auto* s_f0 = app.add_subcommand(
      "f0", "extract F0 contours and run the group statistics");
  s_f0->add_option("--audio-dir", f0.audio_dir, "directory of <utterance>.wav")
      ->required()
      ->capture_default_str();
  s_f0->add_option("--annotations", f0.annotations,
                   "CSV utterance_id,label,t_start,t_end")
      ->required()
      ->capture_default_str();
  s_f0->add_option("--groups", f0.groups,
                   "CSV utterance_id,group (default: one group)")
      ->capture_default_str();
  s_f0->add_option("--out-dir", f0.out_dir, "output directory")
      ->capture_default_str();
  s_f0->add_option("--jobs", f0.jobs, "worker threads")->capture_default_str();
  s_f0->add_option("--f0-min", f0.params.f0_min, "search floor, Hz")
      ->capture_default_str();
  s_f0->add_option("--f0-max", f0.params.f0_max, "search ceiling, Hz")
      ->capture_default_str();
  s_f0->add_option("--hop", f0.params.frame_hop, "frame hop, seconds")
      ->capture_default_str();
  s_f0->add_option("--voicing-threshold", f0.params.voicing_threshold)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (s_ingest->parsed()) return cmd_ingest(app, ingest);
    if (s_compare->parsed()) return cmd_compare(app, compare);
    if (s_intel->parsed()) return cmd_intelligibility(app, intel);
    if (s_f0->parsed()) return cmd_f0(app, f0);
    std::cerr << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.category()) {
      case error_category::parse: return kExitParse;
      case error_category::validation: return kExitValidation;
      case error_category::computation: return kExitComputation;
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
