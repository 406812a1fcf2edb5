// prosokit/acoustics.cpp

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

#include "prosokit/acoustics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "prosokit/csv.hpp"
#include "prosokit/error.hpp"

namespace prosokit::acoustics {

namespace {

std::uint32_t read_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16le(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

}  // namespace

AudioBuffer parse_wav(std::span<const unsigned char> bytes) {
  if (bytes.size() < 12) {
    throw Error(errc::TruncatedFile, "file shorter than a RIFF header");
  }
  if (std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(errc::UnsupportedFormat, "not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::uint16_t format_tag = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  std::span<const unsigned char> data;
  bool have_data = false;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* p = bytes.data() + pos;
    std::uint32_t chunk_size = read_u32le(p + 4);
    size_t body = pos + 8;
    if (std::memcmp(p, "fmt ", 4) == 0) {
      if (body + 16 > bytes.size() || chunk_size < 16) {
        throw Error(errc::TruncatedFile, "fmt chunk truncated");
      }
      const unsigned char* f = bytes.data() + body;
      format_tag = read_u16le(f);
      channels = read_u16le(f + 2);
      sample_rate = read_u32le(f + 4);
      bits = read_u16le(f + 14);
      have_fmt = true;
    } else if (std::memcmp(p, "data", 4) == 0) {
      if (body + chunk_size > bytes.size()) {
        throw Error(errc::TruncatedFile,
                    "data chunk claims " + std::to_string(chunk_size) +
                        " bytes but only " + std::to_string(bytes.size() - body) +
                        " remain");
      }
      data = bytes.subspan(body, chunk_size);
      have_data = true;
    }
    pos = body + chunk_size + (chunk_size % 2);  // chunks are word-aligned
  }

  if (!have_fmt) throw Error(errc::TruncatedFile, "missing fmt chunk");
  if (!have_data) throw Error(errc::TruncatedFile, "missing data chunk");
  if (format_tag != 1) {
    throw Error(errc::UnsupportedFormat,
                "compression code " + std::to_string(format_tag) +
                    " (only PCM = 1 is supported)");
  }
  if (bits != 16) {
    throw Error(errc::UnsupportedFormat,
                std::to_string(bits) + "-bit samples (only 16-bit supported)");
  }
  if (channels != 1 && channels != 2) {
    throw Error(errc::UnsupportedFormat,
                std::to_string(channels) + " channels (mono or stereo only)");
  }
  if (sample_rate == 0) {
    throw Error(errc::UnsupportedFormat, "sample rate is zero");
  }

  size_t frame_bytes = 2u * channels;
  size_t frames = data.size() / frame_bytes;
  AudioBuffer audio;
  audio.sample_rate = static_cast<double>(sample_rate);
  audio.samples.resize(frames);
  for (size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (size_t c = 0; c < channels; ++c) {
      const unsigned char* s = data.data() + i * frame_bytes + 2 * c;
      auto v = static_cast<std::int16_t>(read_u16le(s));
      acc += static_cast<double>(v);
    }
    audio.samples[i] = acc / channels / 32768.0;
  }
  return audio;
}

AudioBuffer read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::IoError, "cannot open '" + path + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  try {
    return parse_wav(bytes);
  } catch (Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void write_wav(const std::string& path, const AudioBuffer& audio) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::IoError, "cannot open '" + path + "' for writing");
  auto put_u32 = [&](std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                          static_cast<unsigned char>((v >> 8) & 0xFF),
                          static_cast<unsigned char>((v >> 16) & 0xFF),
                          static_cast<unsigned char>((v >> 24) & 0xFF)};
    out.write(reinterpret_cast<char*>(b), 4);
  };
  auto put_u16 = [&](std::uint16_t v) {
    unsigned char b[2] = {static_cast<unsigned char>(v & 0xFF),
                          static_cast<unsigned char>((v >> 8) & 0xFF)};
    out.write(reinterpret_cast<char*>(b), 2);
  };
  std::uint32_t data_bytes = static_cast<std::uint32_t>(audio.samples.size() * 2);
  out.write("RIFF", 4);
  put_u32(36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_u32(16);
  put_u16(1);  // PCM
  put_u16(1);  // mono
  auto rate = static_cast<std::uint32_t>(audio.sample_rate);
  put_u32(rate);
  put_u32(rate * 2);
  put_u16(2);
  put_u16(16);
  out.write("data", 4);
  put_u32(data_bytes);
  for (double s : audio.samples) {
    double clamped = std::clamp(s, -1.0, 1.0);
    auto v = static_cast<std::int16_t>(std::lrint(clamped * 32767.0));
    put_u16(static_cast<std::uint16_t>(v));
  }
}

F0Track extract_f0(const AudioBuffer& audio, const F0Params& params) {
  if (!(params.f0_min > 0) || !(params.f0_min < params.f0_max)) {
    throw Error(errc::InvalidRange, "need 0 < f0_min < f0_max");
  }
  if (params.f0_max > audio.sample_rate / 2.0) {
    throw Error(errc::InvalidRange,
                "f0_max above Nyquist for this sample rate");
  }
  if (!(params.frame_hop > 0)) {
    throw Error(errc::InvalidRange, "frame_hop must be positive");
  }

  const double sr = audio.sample_rate;
  const double window_sec = 3.0 / params.f0_min;
  const size_t window = static_cast<size_t>(std::lround(window_sec * sr));
  if (audio.samples.size() < window) {
    throw Error(errc::AudioTooShort,
                "audio shorter than one analysis window (" +
                    csv::format_seconds(window_sec) + " s)");
  }

  const size_t lag_min = std::max<size_t>(2, static_cast<size_t>(sr / params.f0_max));
  const size_t lag_max =
      std::min(window - 2, static_cast<size_t>(std::ceil(sr / params.f0_min)));

  F0Track track;
  track.frame_hop = params.frame_hop;

  const double duration = audio.duration();
  const double half = 0.5 * window_sec;
  std::vector<double> frame(window);
  std::vector<double> energy(window + 1);
  std::vector<double> r(lag_max + 2, 0.0);

  size_t k = static_cast<size_t>(std::ceil(half / params.frame_hop));
  for (;; ++k) {
    double t = static_cast<double>(k) * params.frame_hop;
    if (t + half > duration + 1e-12) break;
    size_t start = static_cast<size_t>(std::lround((t - half) * sr));
    start = std::min(start, audio.samples.size() - window);

    double mean = 0.0;
    for (size_t i = 0; i < window; ++i) mean += audio.samples[start + i];
    mean /= static_cast<double>(window);
    for (size_t i = 0; i < window; ++i) frame[i] = audio.samples[start + i] - mean;

    energy[0] = 0.0;
    for (size_t i = 0; i < window; ++i) {
      energy[i + 1] = energy[i] + frame[i] * frame[i];
    }

    F0Frame out;
    out.time = t;
    // Normalized cross-correlation of the window with itself at each lag.
    size_t lo = lag_min > 1 ? lag_min - 1 : lag_min;
    for (size_t lag = lo; lag <= lag_max + 1 && lag < window; ++lag) {
      size_t len = window - lag;
      double num = 0.0;
      for (size_t i = 0; i < len; ++i) num += frame[i] * frame[i + lag];
      double e0 = energy[len];
      double e1 = energy[lag + len] - energy[lag];
      double denom = std::sqrt(e0 * e1);
      r[lag] = denom > 0 ? num / denom : 0.0;
    }

    double best_score = -1e9;
    double best_f0 = 0.0;
    double best_strength = 0.0;
    for (size_t lag = lag_min; lag <= lag_max; ++lag) {
      if (r[lag] < r[lag - 1] || r[lag] < r[lag + 1]) continue;  // local max only
      if (r[lag] <= 0.0) continue;
      // Parabolic interpolation around the peak.
      double denom = r[lag - 1] - 2.0 * r[lag] + r[lag + 1];
      double delta = denom != 0.0 ? 0.5 * (r[lag - 1] - r[lag + 1]) / denom : 0.0;
      delta = std::clamp(delta, -0.5, 0.5);
      double lag_refined = static_cast<double>(lag) + delta;
      lag_refined = std::clamp(lag_refined, static_cast<double>(lag_min),
                               static_cast<double>(lag_max));
      double strength = r[lag] - 0.25 * delta * (r[lag - 1] - r[lag + 1]);
      strength = std::min(strength, 1.0);
      double score = strength -
                     params.octave_cost *
                         std::log2(lag_refined / static_cast<double>(lag_min));
      if (score > best_score) {
        best_score = score;
        best_strength = strength;
        best_f0 = sr / lag_refined;
      }
    }

    if (best_f0 > 0.0 && best_strength >= params.voicing_threshold) {
      out.voiced = true;
      out.f0 = std::clamp(best_f0, params.f0_min, params.f0_max);
      out.strength = best_strength;
    } else {
      out.voiced = false;
      out.f0 = 0.0;
      out.strength = std::max(best_strength, 0.0);
    }
    track.frames.push_back(out);
  }
  return track;
}

const char* point_label_name(PointLabel label) {
  switch (label) {
    case PointLabel::Ons: return "ons";
    case PointLabel::Prnuc: return "prnuc";
    case PointLabel::Nuc: return "nuc";
    case PointLabel::Psnuc: return "psnuc";
  }
  return "?";
}

std::optional<PointLabel> point_label_from_name(std::string_view name) {
  if (name == "ons") return PointLabel::Ons;
  if (name == "prnuc") return PointLabel::Prnuc;
  if (name == "nuc") return PointLabel::Nuc;
  if (name == "psnuc") return PointLabel::Psnuc;
  return std::nullopt;
}

std::optional<double> max_f0_at_point(const F0Track& track,
                                      const PointAnnotation& annotation) {
  if (!(annotation.t_end > annotation.t_start)) {
    throw Error(errc::InvalidRange, "annotation window must have t_end > t_start");
  }
  if (track.frames.empty()) {
    throw Error(errc::WindowOutOfRange, "track has no frames");
  }
  double span_begin = track.frames.front().time;
  double span_end = track.frames.back().time;
  if (annotation.t_end <= span_begin || annotation.t_start > span_end) {
    throw Error(errc::WindowOutOfRange,
                "annotation [" + csv::format_seconds(annotation.t_start) + ", " +
                    csv::format_seconds(annotation.t_end) +
                    ") does not intersect the track span [" +
                    csv::format_seconds(span_begin) + ", " +
                    csv::format_seconds(span_end) + "]");
  }
  std::optional<double> best;
  for (const auto& frame : track.frames) {
    if (frame.time < annotation.t_start || frame.time >= annotation.t_end) continue;
    if (!frame.voiced) continue;
    if (!best || frame.f0 > *best) best = frame.f0;
  }
  return best;
}

std::optional<double>& ContourPoints::at(PointLabel label) {
  switch (label) {
    case PointLabel::Ons: return ons;
    case PointLabel::Prnuc: return prnuc;
    case PointLabel::Nuc: return nuc;
    default: return psnuc;
  }
}

const std::optional<double>& ContourPoints::at(PointLabel label) const {
  switch (label) {
    case PointLabel::Ons: return ons;
    case PointLabel::Prnuc: return prnuc;
    case PointLabel::Nuc: return nuc;
    default: return psnuc;
  }
}

std::vector<double> ContourPoints::present() const {
  std::vector<double> out;
  for (PointLabel l : {PointLabel::Ons, PointLabel::Prnuc, PointLabel::Nuc,
                       PointLabel::Psnuc}) {
    if (at(l)) out.push_back(*at(l));
  }
  return out;
}

ContourPoints contour_points(const F0Track& track,
                             std::span<const PointAnnotation> annotations) {
  bool seen[4] = {false, false, false, false};
  ContourPoints out;
  for (const auto& ann : annotations) {
    auto idx = static_cast<size_t>(ann.label);
    if (seen[idx]) {
      throw Error(errc::DuplicateLabel,
                  std::string("label '") + point_label_name(ann.label) +
                      "' annotated twice");
    }
    seen[idx] = true;
    out.at(ann.label) = max_f0_at_point(track, ann);
  }
  return out;
}

MeanContour mean_contour(std::span<const ContourPoints> utterances) {
  MeanContour mc;
  double sums[4] = {0, 0, 0, 0};
  for (const auto& u : utterances) {
    for (PointLabel l : {PointLabel::Ons, PointLabel::Prnuc, PointLabel::Nuc,
                         PointLabel::Psnuc}) {
      auto idx = static_cast<size_t>(l);
      if (u.at(l)) {
        sums[idx] += *u.at(l);
        ++mc.counts[idx];
      }
    }
  }
  bool any = false;
  for (PointLabel l : {PointLabel::Ons, PointLabel::Prnuc, PointLabel::Nuc,
                       PointLabel::Psnuc}) {
    auto idx = static_cast<size_t>(l);
    if (mc.counts[idx] > 0) {
      mc.means.at(l) = sums[idx] / static_cast<double>(mc.counts[idx]);
      any = true;
    }
  }
  if (!any) {
    throw Error(errc::NoData, "no utterance carries any contour point");
  }
  return mc;
}

double contour_rmse(const ContourPoints& a, const ContourPoints& b) {
  double ss = 0.0;
  int n = 0;
  for (PointLabel l : {PointLabel::Ons, PointLabel::Prnuc, PointLabel::Nuc,
                       PointLabel::Psnuc}) {
    if (a.at(l) && b.at(l)) {
      double d = *a.at(l) - *b.at(l);
      ss += d * d;
      ++n;
    }
  }
  if (n == 0) {
    throw Error(errc::NoSharedLabels, "contours share no annotated labels");
  }
  return std::sqrt(ss / static_cast<double>(n));
}

double semitones_re_100(double frequency_hz) {
  if (!(frequency_hz > 0)) {
    throw Error(errc::NonPositiveFrequency,
                "frequency must be positive, got " +
                    csv::format_fixed(frequency_hz, 3));
  }
  return 12.0 * std::log2(frequency_hz / 100.0);
}

double utterance_f0_variation_st(const ContourPoints& points) {
  std::vector<double> values = points.present();
  if (values.size() < 2) {
    throw Error(errc::InsufficientPoints,
                "variation needs at least 2 contour points, got " +
                    std::to_string(values.size()));
  }
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return semitones_re_100(*hi) - semitones_re_100(*lo);
}

std::map<std::string, std::vector<PointAnnotation>> read_annotations_csv(
    std::string_view csv_text) {
  csv::Table table = csv::parse(csv_text);
  size_t c_id = table.require_column("utterance_id");
  size_t c_label = table.require_column("label");
  size_t c_start = table.require_column("t_start");
  size_t c_end = table.require_column("t_end");
  std::map<std::string, std::vector<PointAnnotation>> out;
  for (const auto& row : table.rows) {
    if (row.fields.size() < table.header.size()) {
      throw Error(errc::UnparsableRow,
                  "line " + std::to_string(row.line) + ": too few fields");
    }
    auto label = point_label_from_name(row.fields[c_label]);
    if (!label) {
      throw Error(errc::UnparsableRow,
                  "line " + std::to_string(row.line) + ": unknown label '" +
                      row.fields[c_label] +
                      "' (expected ons, prnuc, nuc or psnuc)");
    }
    PointAnnotation ann;
    ann.label = *label;
    ann.t_start = csv::parse_double(row.fields[c_start], row.line, "t_start");
    ann.t_end = csv::parse_double(row.fields[c_end], row.line, "t_end");
    if (ann.t_end <= ann.t_start) {
      throw Error(errc::UnparsableRow,
                  "line " + std::to_string(row.line) +
                      ": t_end must exceed t_start");
    }
    out[row.fields[c_id]].push_back(ann);
  }
  return out;
}

std::map<std::string, std::vector<PointAnnotation>> read_annotations_file(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::IoError, "cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return read_annotations_csv(text);
  } catch (Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void write_contours_csv(
    std::ostream& os,
    const std::vector<std::pair<std::string, ContourPoints>>& contours,
    const std::string& comment) {
  if (!comment.empty()) os << "# " << comment << "\n";
  csv::write_row(os, {"utterance_id", "ons", "prnuc", "nuc", "psnuc"});
  auto cell = [](const std::optional<double>& v) {
    return v ? csv::format_fixed(*v, 3) : std::string();
  };
  for (const auto& [id, c] : contours) {
    csv::write_row(os, {id, cell(c.ons), cell(c.prnuc), cell(c.nuc), cell(c.psnuc)});
  }
}

}  // namespace prosokit::acoustics
