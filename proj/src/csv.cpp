// prosokit/csv.cpp

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

#include "prosokit/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "prosokit/error.hpp"

namespace prosokit::csv {

std::optional<size_t> Table::column(std::string_view name) const {
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

size_t Table::require_column(std::string_view name) const {
  auto idx = column(name);
  if (!idx) {
    throw Error(errc::MissingColumn,
                "required column '" + std::string(name) + "' not found");
  }
  return *idx;
}

Table parse(std::string_view text) {
  Table table;
  size_t i = 0;
  size_t line = 1;

  // Skip leading comment lines.
  while (i < text.size() && text[i] == '#') {
    while (i < text.size() && text[i] != '\n') ++i;
    if (i < text.size()) ++i;
    ++line;
  }

  bool in_header = true;
  Row row;
  row.line = line;
  std::string field;
  bool row_started = false;

  auto finish_field = [&]() {
    row.fields.push_back(std::move(field));
    field.clear();
  };
  auto finish_row = [&]() {
    finish_field();
    if (in_header) {
      table.header = std::move(row.fields);
      in_header = false;
    } else {
      table.rows.push_back(std::move(row));
    }
    row = Row{};
    row.line = line;
    row_started = false;
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == '"') {
      row_started = true;
      ++i;
      while (true) {
        if (i >= text.size()) {
          throw Error(errc::UnparsableRow,
                      "unterminated quoted field starting near line " +
                          std::to_string(row.line));
        }
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field.push_back('"');
            i += 2;
          } else {
            ++i;
            break;
          }
        } else {
          if (text[i] == '\n') ++line;
          field.push_back(text[i]);
          ++i;
        }
      }
    } else if (c == ',') {
      row_started = true;
      finish_field();
      ++i;
    } else if (c == '\n' || c == '\r') {
      size_t adv = (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ? 2 : 1;
      i += adv;
      ++line;
      if (row_started || !field.empty() || !row.fields.empty()) {
        finish_row();
      } else {
        row.line = line;  // blank line; keep scanning
      }
    } else {
      row_started = true;
      field.push_back(c);
      ++i;
    }
  }
  if (row_started || !field.empty() || !row.fields.empty()) finish_row();
  return table;
}

Table read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string quote_field(std::string_view field) {
  bool needs_quote = field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quote) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << quote_field(fields[i]);
  }
  os << '\n';
}

std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

std::string format_seconds(double value) {
  std::string s = format_fixed(value, 6);
  size_t dot = s.find('.');
  size_t last = s.size();
  while (last > dot + 4 && s[last - 1] == '0') --last;
  s.resize(last);
  return s;
}

double parse_double(std::string_view field, size_t line, std::string_view col) {
  double out = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  while (ptr < end && (*ptr == ' ' || *ptr == '\t')) ++ptr;
  if (ec != std::errc() || ptr != end) {
    throw Error(errc::UnparsableRow, "line " + std::to_string(line) +
                                         ": cannot parse '" + std::string(field) +
                                         "' as number for column " + std::string(col));
  }
  return out;
}

std::int64_t parse_int(std::string_view field, size_t line, std::string_view col) {
  std::int64_t out = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  while (ptr < end && (*ptr == ' ' || *ptr == '\t')) ++ptr;
  if (ec != std::errc() || ptr != end) {
    throw Error(errc::UnparsableRow, "line " + std::to_string(line) +
                                         ": cannot parse '" + std::string(field) +
                                         "' as integer for column " + std::string(col));
  }
  return out;
}

}  // namespace prosokit::csv
