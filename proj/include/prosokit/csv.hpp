// prosokit/csv.hpp

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

#ifndef PROSOKIT_CSV_HPP_
#define PROSOKIT_CSV_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace prosokit::csv {

struct Row {
  std::vector<std::string> fields;
  // 1-based physical line where the row starts (after skipped comments).
  size_t line = 0;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;

  // Index of a header column, or nullopt when absent.
  std::optional<size_t> column(std::string_view name) const;
  // Same, but throws Error(errc::MissingColumn) when absent.
  size_t require_column(std::string_view name) const;
};

// RFC-4180 parser with two extensions: leading lines that start with '#'
// are skipped (our own emitters write a metadata comment first) and a
// final newline is optional. Quoted fields may contain commas, quotes
// (doubled) and newlines.
Table parse(std::string_view text);
Table read_file(const std::string& path);

// Quotes a single field per RFC-4180 only when needed.
std::string quote_field(std::string_view field);
void write_row(std::ostream& os, const std::vector<std::string>& fields);

// Fixed-point seconds with at least 3 and at most 6 fractional digits
// (trailing zeros beyond the third are trimmed). Locale independent.
std::string format_seconds(double value);
// Shortest fixed representation with `digits` decimals, trailing zeros kept.
std::string format_fixed(double value, int digits);

double parse_double(std::string_view field, size_t line, std::string_view col);
std::int64_t parse_int(std::string_view field, size_t line, std::string_view col);

}  // namespace prosokit::csv

#endif  // PROSOKIT_CSV_HPP_
