// prosokit/textgrid.cpp

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

#include "prosokit/textgrid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "prosokit/csv.hpp"
#include "prosokit/error.hpp"
#include "prosokit/unicode.hpp"

namespace prosokit::corpus {

namespace {

constexpr double kTimeEps = 1e-9;

// Praat long-form files are a sequence of "key = value" lines plus
// structural lines (`item [1]:`, `intervals [2]:`) that carry no data.
// Quoted values may span lines; Praat escapes a quote by doubling it.
class LineReader {
 public:
  explicit LineReader(std::string text) : text_(std::move(text)) {}

  bool eof() const { return pos_ >= text_.size(); }
  size_t line_no() const { return line_no_; }

  // Next non-empty, non-structural line as (key, rawvalue); returns false at
  // end of input. For `text = "..."` the full (possibly multi-line) quoted
  // string is consumed and unescaped.
  bool next(std::string& key, std::string& value) {
    while (!eof()) {
      size_t start_line = line_no_;
      std::string line = take_line();
      std::string trimmed = trim(line);
      if (trimmed.empty()) continue;
      size_t eq = find_eq(trimmed);
      if (eq == std::string::npos) {
        // Structural lines like `item []:` / `intervals [1]:` are skipped.
        if (trimmed.back() == ':') continue;
        if (trimmed.rfind("tiers?", 0) == 0) {
          key = "tiers?";
          value = trim(trimmed.substr(6));
          return true;
        }
        throw Error(errc::MalformedTextGrid,
                    "line " + std::to_string(start_line) +
                        ": expected 'key = value', got '" + trimmed + "' " +
                        "(short-format TextGrids are not supported)");
      }
      key = trim(trimmed.substr(0, eq));
      // Normalize keys like `intervals: size` -> `intervals:size`.
      key.erase(std::remove(key.begin(), key.end(), ' '), key.end());
      std::string rhs = trim(trimmed.substr(eq + 1));
      if (!rhs.empty() && rhs.front() == '"') {
        value = read_quoted(rhs, start_line);
      } else {
        value = rhs;
      }
      return true;
    }
    return false;
  }

 private:
  static std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  // The '=' separating key and value; ignores '=' inside quotes.
  static size_t find_eq(const std::string& s) {
    bool quoted = false;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '"') quoted = !quoted;
      if (s[i] == '=' && !quoted) return i;
    }
    return std::string::npos;
  }

  std::string take_line() {
    size_t nl = text_.find('\n', pos_);
    std::string line = nl == std::string::npos
                           ? text_.substr(pos_)
                           : text_.substr(pos_, nl - pos_);
    pos_ = nl == std::string::npos ? text_.size() : nl + 1;
    ++line_no_;
    return line;
  }

  // rhs begins with '"'. Praat may continue a quoted label on further
  // physical lines; consume until the closing quote.
  std::string read_quoted(std::string rhs, size_t start_line) {
    std::string buffer = std::move(rhs);
    while (true) {
      // Find an unescaped closing quote past position 0.
      size_t i = 1;
      bool closed = false;
      std::string out;
      while (i < buffer.size()) {
        if (buffer[i] == '"') {
          if (i + 1 < buffer.size() && buffer[i + 1] == '"') {
            out.push_back('"');
            i += 2;
            continue;
          }
          closed = true;
          break;
        }
        out.push_back(buffer[i]);
        ++i;
      }
      if (closed) {
        // Anything after the closing quote is ignored (Praat writes none).
        return out;
      }
      if (eof()) {
        throw Error(errc::MalformedTextGrid,
                    "line " + std::to_string(start_line) +
                        ": unterminated string");
      }
      buffer.push_back('\n');
      buffer += take_line();
    }
  }

  std::string text_;
  size_t pos_ = 0;
  size_t line_no_ = 0;
};

// BOM detection; UTF-16 of either endianness is converted to UTF-8.
std::string normalize_encoding(std::string_view bytes) {
  auto u8_valid = [](std::string_view s) {
    unicode::decode_utf8(s);  // throws on invalid input
    return std::string(s);
  };
  if (bytes.size() >= 3 && static_cast<unsigned char>(bytes[0]) == 0xEF &&
      static_cast<unsigned char>(bytes[1]) == 0xBB &&
      static_cast<unsigned char>(bytes[2]) == 0xBF) {
    return u8_valid(bytes.substr(3));
  }
  bool le = bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0xFF &&
            static_cast<unsigned char>(bytes[1]) == 0xFE;
  bool be = bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0xFE &&
            static_cast<unsigned char>(bytes[1]) == 0xFF;
  if (le || be) {
    std::string_view body = bytes.substr(2);
    if (body.size() % 2 != 0) {
      throw Error(errc::UnsupportedEncoding,
                  "UTF-16 payload has an odd byte count");
    }
    std::u32string cps;
    cps.reserve(body.size() / 2);
    for (size_t i = 0; i < body.size(); i += 2) {
      unsigned char b0 = body[i], b1 = body[i + 1];
      char32_t unit = le ? (b1 << 8 | b0) : (b0 << 8 | b1);
      if (unit >= 0xD800 && unit <= 0xDBFF) {
        if (i + 3 >= body.size()) {
          throw Error(errc::UnsupportedEncoding, "truncated UTF-16 surrogate");
        }
        i += 2;
        unsigned char c0 = body[i], c1 = body[i + 1];
        char32_t low = le ? (c1 << 8 | c0) : (c0 << 8 | c1);
        if (low < 0xDC00 || low > 0xDFFF) {
          throw Error(errc::UnsupportedEncoding, "invalid UTF-16 surrogate pair");
        }
        cps.push_back(0x10000 + ((unit - 0xD800) << 10) + (low - 0xDC00));
      } else if (unit >= 0xDC00 && unit <= 0xDFFF) {
        throw Error(errc::UnsupportedEncoding, "stray UTF-16 low surrogate");
      } else {
        cps.push_back(unit);
      }
    }
    return unicode::encode_utf8(cps);
  }
  // Heuristic: NUL bytes mean UTF-16 without a BOM.
  if (bytes.find('\0') != std::string_view::npos) {
    throw Error(errc::UnsupportedEncoding,
                "input contains NUL bytes but no UTF-16 BOM");
  }
  return u8_valid(bytes);
}

double parse_number(const std::string& value, size_t line, const char* what) {
  double out = 0.0;
  const char* b = value.data();
  const char* e = b + value.size();
  auto [ptr, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || ptr != e) {
    throw Error(errc::MalformedTextGrid, "line " + std::to_string(line) +
                                             ": cannot parse " + what +
                                             " value '" + value + "'");
  }
  return out;
}

struct Expect {
  LineReader& reader;

  std::pair<std::string, std::string> key(const char* wanted) {
    std::string k, v;
    if (!reader.next(k, v)) {
      throw Error(errc::MalformedTextGrid,
                  "unexpected end of file, expected '" + std::string(wanted) + "'");
    }
    if (k != wanted) {
      throw Error(errc::MalformedTextGrid,
                  "line " + std::to_string(reader.line_no()) + ": expected '" +
                      wanted + "', got '" + k + "'");
    }
    return {k, v};
  }

  double number(const char* wanted) {
    auto [k, v] = key(wanted);
    return parse_number(v, reader.line_no(), wanted);
  }

  std::string text(const char* wanted) { return key(wanted).second; }
};

}  // namespace

const IntervalTier* TextGridDoc::find_tier(std::string_view name) const {
  for (const auto& t : tiers) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

TextGridDoc parse_textgrid(std::string_view bytes) {
  LineReader reader(normalize_encoding(bytes));
  Expect expect{reader};

  std::string file_type = expect.text("Filetype");
  if (file_type != "ooTextFile") {
    throw Error(errc::MalformedTextGrid,
                "unsupported file type '" + file_type + "'");
  }
  std::string object_class = expect.text("Objectclass");
  if (object_class != "TextGrid") {
    throw Error(errc::MalformedTextGrid,
                "unsupported object class '" + object_class + "'");
  }

  TextGridDoc doc;
  doc.xmin = expect.number("xmin");
  doc.xmax = expect.number("xmax");
  if (doc.xmax <= doc.xmin) {
    throw Error(errc::MalformedTextGrid, "document xmax must exceed xmin");
  }
  std::string tiers_flag = expect.text("tiers?");
  if (tiers_flag.find("exists") == std::string::npos) {
    return doc;  // no tiers
  }
  double size = expect.number("size");
  auto tier_count = static_cast<size_t>(size);

  std::set<std::string> seen_names;
  for (size_t t = 0; t < tier_count; ++t) {
    std::string klass = expect.text("class");
    if (klass == "TextTier") {
      throw Error(errc::PointTierUnsupported,
                  "line " + std::to_string(reader.line_no()) +
                      ": point tiers (TextTier) are not supported");
    }
    if (klass != "IntervalTier") {
      throw Error(errc::MalformedTextGrid,
                  "line " + std::to_string(reader.line_no()) +
                      ": unknown tier class '" + klass + "'");
    }
    IntervalTier tier;
    tier.name = expect.text("name");
    if (!seen_names.insert(tier.name).second) {
      throw Error(errc::MalformedTextGrid,
                  "duplicate tier name '" + tier.name + "'");
    }
    tier.xmin = expect.number("xmin");
    tier.xmax = expect.number("xmax");
    if (tier.xmax <= tier.xmin) {
      throw Error(errc::MalformedTextGrid,
                  "tier '" + tier.name + "': xmax must exceed xmin");
    }
    if (tier.xmin < doc.xmin - kTimeEps || tier.xmax > doc.xmax + kTimeEps) {
      throw Error(errc::MalformedTextGrid,
                  "tier '" + tier.name + "' exceeds the document time range");
    }
    double isize = expect.number("intervals:size");
    auto interval_count = static_cast<size_t>(isize);
    tier.intervals.reserve(interval_count);
    for (size_t i = 0; i < interval_count; ++i) {
      Interval iv;
      iv.start = expect.number("xmin");
      iv.end = expect.number("xmax");
      size_t line = reader.line_no();
      iv.label = expect.text("text");
      if (iv.end <= iv.start) {
        throw Error(errc::MalformedTextGrid,
                    "line " + std::to_string(line) +
                        ": interval end must exceed start");
      }
      if (iv.start < tier.xmin - kTimeEps || iv.end > tier.xmax + kTimeEps) {
        throw Error(errc::MalformedTextGrid,
                    "line " + std::to_string(line) +
                        ": interval exceeds the tier time range");
      }
      if (!tier.intervals.empty() &&
          iv.start < tier.intervals.back().end - kTimeEps) {
        throw Error(errc::OverlappingIntervals,
                    "tier '" + tier.name + "': interval " +
                        std::to_string(i + 1) + " starts at " +
                        csv::format_seconds(iv.start) +
                        " before the previous interval ends at " +
                        csv::format_seconds(tier.intervals.back().end));
      }
      tier.intervals.push_back(std::move(iv));
    }
    doc.tiers.push_back(std::move(tier));
  }
  return doc;
}

TextGridDoc parse_textgrid_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_textgrid(buf.str());
  } catch (Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

namespace {

std::string quote_praat(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string serialize_textgrid(const TextGridDoc& doc) {
  std::ostringstream os;
  os << "File type = \"ooTextFile\"\n";
  os << "Object class = \"TextGrid\"\n\n";
  os << "xmin = " << csv::format_seconds(doc.xmin) << "\n";
  os << "xmax = " << csv::format_seconds(doc.xmax) << "\n";
  if (doc.tiers.empty()) {
    os << "tiers? <absent>\n";
    return os.str();
  }
  os << "tiers? <exists>\n";
  os << "size = " << doc.tiers.size() << "\n";
  os << "item []:\n";
  for (size_t t = 0; t < doc.tiers.size(); ++t) {
    const auto& tier = doc.tiers[t];
    os << "    item [" << (t + 1) << "]:\n";
    os << "        class = \"IntervalTier\"\n";
    os << "        name = " << quote_praat(tier.name) << "\n";
    os << "        xmin = " << csv::format_seconds(tier.xmin) << "\n";
    os << "        xmax = " << csv::format_seconds(tier.xmax) << "\n";
    os << "        intervals: size = " << tier.intervals.size() << "\n";
    for (size_t i = 0; i < tier.intervals.size(); ++i) {
      const auto& iv = tier.intervals[i];
      os << "        intervals [" << (i + 1) << "]:\n";
      os << "            xmin = " << csv::format_seconds(iv.start) << "\n";
      os << "            xmax = " << csv::format_seconds(iv.end) << "\n";
      os << "            text = " << quote_praat(iv.label) << "\n";
    }
  }
  return os.str();
}

}  // namespace prosokit::corpus
