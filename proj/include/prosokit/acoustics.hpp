// prosokit/acoustics.hpp

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

#ifndef PROSOKIT_ACOUSTICS_HPP_
#define PROSOKIT_ACOUSTICS_HPP_

#include <array>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prosokit::acoustics {

struct AudioBuffer {
  std::vector<double> samples;  // in [-1, 1]
  double sample_rate = 0.0;

  double duration() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

// RIFF/WAVE, PCM 16-bit, mono or stereo (stereo is averaged to mono);
// samples scaled by 1/32768. Other format tags (e.g. IEEE float) raise
// UnsupportedFormat, short files TruncatedFile.
AudioBuffer read_wav(const std::string& path);
AudioBuffer parse_wav(std::span<const unsigned char> bytes);

// PCM 16-bit mono writer (fixtures and round trips).
void write_wav(const std::string& path, const AudioBuffer& audio);

struct F0Params {
  double f0_min = 75.0;    // Hz
  double f0_max = 400.0;   // Hz
  double frame_hop = 0.010;  // seconds
  double voicing_threshold = 0.45;
  // Per-octave score penalty on longer lag candidates; keeps a strong
  // subharmonic peak from beating the true period.
  double octave_cost = 0.02;
};

struct F0Frame {
  double time = 0.0;   // window center, seconds
  double f0 = 0.0;     // Hz, valid when voiced
  double strength = 0.0;
  bool voiced = false;
};

struct F0Track {
  double frame_hop = 0.0;
  std::vector<F0Frame> frames;  // uniform hop, strictly increasing times
};

// Normalized autocorrelation per frame (window = 3 / f0_min, mean removed)
// with parabolic peak interpolation; frames whose best peak falls under
// voicing_threshold are unvoiced.
F0Track extract_f0(const AudioBuffer& audio, const F0Params& params = {});

enum class PointLabel { Ons, Prnuc, Nuc, Psnuc };

const char* point_label_name(PointLabel label);
std::optional<PointLabel> point_label_from_name(std::string_view name);

struct PointAnnotation {
  PointLabel label = PointLabel::Ons;
  double t_start = 0.0;
  double t_end = 0.0;  // > t_start
};

// Maximum voiced F0 among frames with time in [t_start, t_end); absent when
// every frame in the window is unvoiced. The window must intersect the
// track's time span (errc::WindowOutOfRange).
std::optional<double> max_f0_at_point(const F0Track& track,
                                      const PointAnnotation& annotation);

struct ContourPoints {
  std::optional<double> ons;
  std::optional<double> prnuc;
  std::optional<double> nuc;
  std::optional<double> psnuc;

  std::optional<double>& at(PointLabel label);
  const std::optional<double>& at(PointLabel label) const;
  std::vector<double> present() const;
};

ContourPoints contour_points(const F0Track& track,
                             std::span<const PointAnnotation> annotations);

struct MeanContour {
  ContourPoints means;
  std::array<std::int64_t, 4> counts = {0, 0, 0, 0};  // ons, prnuc, nuc, psnuc
};

// Per-label arithmetic mean over present values; absent values are skipped,
// never treated as zero.
MeanContour mean_contour(std::span<const ContourPoints> utterances);

// Root mean square of per-label differences over the labels present in both.
double contour_rmse(const ContourPoints& a, const ContourPoints& b);

// 12 * log2(f / 100).
double semitones_re_100(double frequency_hz);

// Span between the highest and lowest present point, in semitones.
double utterance_f0_variation_st(const ContourPoints& points);

// Annotation CSV: utterance_id,label,t_start,t_end.
std::map<std::string, std::vector<PointAnnotation>> read_annotations_csv(
    std::string_view csv_text);
std::map<std::string, std::vector<PointAnnotation>> read_annotations_file(
    const std::string& path);

// Contour CSV: utterance_id,ons,prnuc,nuc,psnuc (empty cell = absent).
void write_contours_csv(
    std::ostream& os,
    const std::vector<std::pair<std::string, ContourPoints>>& contours,
    const std::string& comment = {});

}  // namespace prosokit::acoustics

#endif  // PROSOKIT_ACOUSTICS_HPP_
