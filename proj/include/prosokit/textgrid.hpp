// prosokit/textgrid.hpp

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

#ifndef PROSOKIT_TEXTGRID_HPP_
#define PROSOKIT_TEXTGRID_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace prosokit::corpus {

struct Interval {
  double start = 0.0;
  double end = 0.0;
  std::string label;
};

struct IntervalTier {
  std::string name;
  double xmin = 0.0;
  double xmax = 0.0;
  std::vector<Interval> intervals;  // sorted, non-overlapping
};

struct TextGridDoc {
  double xmin = 0.0;
  double xmax = 0.0;
  std::vector<IntervalTier> tiers;  // names unique

  const IntervalTier* find_tier(std::string_view name) const;
};

// Parses a Praat long-form TextGrid. Encoding is BOM-detected: UTF-16
// (either endianness) is converted, anything else must be valid UTF-8.
// The short text format is rejected with MalformedTextGrid; point tiers
// ("TextTier") with PointTierUnsupported. Labels are kept verbatim.
TextGridDoc parse_textgrid(std::string_view bytes);
TextGridDoc parse_textgrid_file(const std::string& path);

// Long text format, UTF-8. parse(serialize(parse(x))) is a fixed point on
// labels and times (times to 1e-6 s).
std::string serialize_textgrid(const TextGridDoc& doc);

}  // namespace prosokit::corpus

#endif  // PROSOKIT_TEXTGRID_HPP_
