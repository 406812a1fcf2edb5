// prosokit/bindings/module.cpp
//
// Python bindings for the main operations: normalization, stream alignment
// and boundary scoring, WER/CER, F0 contour analysis, and the statistical
// tests.

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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "prosokit/acoustics.hpp"
#include "prosokit/corpus.hpp"
#include "prosokit/error.hpp"
#include "prosokit/intelligibility.hpp"
#include "prosokit/segalign.hpp"
#include "prosokit/stats.hpp"
#include "prosokit/textnorm.hpp"
#include "prosokit/version.hpp"

namespace py = pybind11;
using namespace prosokit;

namespace {

// Token streams cross the boundary as lists of strings with "[seg]" markers.
textnorm::TokenStream stream_from_marked(const std::vector<std::string>& tokens) {
  std::vector<textnorm::Token> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t == "[seg]") {
      out.push_back(textnorm::Token::boundary());
    } else {
      out.push_back(textnorm::Token::word(t));
    }
  }
  return textnorm::TokenStream(std::move(out));
}

std::vector<std::string> stream_to_marked(const textnorm::TokenStream& stream) {
  std::vector<std::string> out;
  out.reserve(stream.size());
  for (const auto& t : stream.tokens()) {
    out.push_back(t.is_word() ? t.text : "[seg]");
  }
  return out;
}

const char* edit_kind_name(segalign::EditKind k) {
  switch (k) {
    case segalign::EditKind::Match: return "match";
    case segalign::EditKind::Delete: return "delete";
    case segalign::EditKind::Insert: return "insert";
  }
  return "?";
}

}  // namespace

PYBIND11_MODULE(_prosokit, m) {
  m.doc() = "prosodic segmentation evaluation toolkit";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "ProsokitError");

  // ---- textnorm
  m.def(
      "normalize_text",
      [](const std::string& raw, std::optional<std::string> strip_set,
         bool convert_numbers) {
        textnorm::NormalizeOptions opts;
        if (strip_set) opts.strip_set = *strip_set;
        opts.convert_numbers = convert_numbers;
        return textnorm::normalize_text(raw, opts);
      },
      py::arg("raw"), py::arg("strip_set") = std::nullopt,
      py::arg("convert_numbers") = true,
      "Lowercase, strip punctuation, spell out digit tokens, split on "
      "whitespace.");
  m.def("number_to_words_pt", &textnorm::number_to_words_pt, py::arg("n"));
  m.def(
      "interleave_boundaries",
      [](const std::vector<std::string>& texts) {
        return stream_to_marked(textnorm::interleave_texts(texts));
      },
      py::arg("texts"),
      "Normalized words of each text with a '[seg]' marker after each "
      "non-empty one.");

  // ---- segalign
  m.def(
      "align_token_streams",
      [](const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
        auto script = segalign::align_token_streams(stream_from_marked(ref),
                                                    stream_from_marked(hyp));
        std::vector<std::pair<std::string, std::string>> out;
        out.reserve(script.size());
        for (const auto& op : script) {
          out.emplace_back(edit_kind_name(op.kind), op.token.text);
        }
        return out;
      },
      py::arg("ref"), py::arg("hyp"),
      "Minimal edit script over word tokens as (op, token) pairs.");

  py::class_<segalign::BoundaryConfusion>(m, "BoundaryConfusion")
      .def(py::init<>())
      .def_readwrite("tp", &segalign::BoundaryConfusion::tp)
      .def_readwrite("fp", &segalign::BoundaryConfusion::fp)
      .def_readwrite("fn", &segalign::BoundaryConfusion::fn)
      .def_readwrite("gap_instances", &segalign::BoundaryConfusion::gap_instances)
      .def("__repr__", [](const segalign::BoundaryConfusion& c) {
        std::ostringstream os;
        os << "BoundaryConfusion(tp=" << c.tp << ", fp=" << c.fp
           << ", fn=" << c.fn << ")";
        return os.str();
      });

  py::class_<segalign::PrfMetrics>(m, "PrfMetrics")
      .def_readonly("precision", &segalign::PrfMetrics::precision)
      .def_readonly("recall", &segalign::PrfMetrics::recall)
      .def_readonly("f1", &segalign::PrfMetrics::f1)
      .def("__repr__", [](const segalign::PrfMetrics& p) {
        std::ostringstream os;
        os << "PrfMetrics(precision=" << p.precision << ", recall=" << p.recall
           << ", f1=" << p.f1 << ")";
        return os.str();
      });

  m.def(
      "boundary_confusion",
      [](const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
        auto rs = stream_from_marked(ref);
        auto hs = stream_from_marked(hyp);
        return segalign::boundary_confusion(rs, hs,
                                            segalign::align_token_streams(rs, hs));
      },
      py::arg("ref"), py::arg("hyp"),
      "TP/FP/FN of hypothesis boundaries against reference boundaries.");
  m.def(
      "precision_recall_f1",
      [](std::int64_t tp, std::int64_t fp, std::int64_t fn) {
        segalign::BoundaryConfusion c;
        c.tp = tp;
        c.fp = fp;
        c.fn = fn;
        return segalign::precision_recall_f1(c);
      },
      py::arg("tp"), py::arg("fp"), py::arg("fn"));

  // ---- corpus
  py::class_<corpus::Segment>(m, "Segment")
      .def(py::init<>())
      .def_readwrite("inquiry_id", &corpus::Segment::inquiry_id)
      .def_readwrite("speaker_id", &corpus::Segment::speaker_id)
      .def_readwrite("t_start", &corpus::Segment::t_start)
      .def_readwrite("t_end", &corpus::Segment::t_end)
      .def_readwrite("text", &corpus::Segment::text)
      .def_property(
          "boundary",
          [](const corpus::Segment& s) {
            return std::string(corpus::boundary_kind_name(s.boundary));
          },
          [](corpus::Segment& s, const std::string& v) {
            s.boundary = v == "NonTerminal" ? corpus::BoundaryKind::NonTerminal
                                            : corpus::BoundaryKind::Terminal;
          })
      .def_readwrite("terminator", &corpus::Segment::terminator)
      .def_readwrite("is_header", &corpus::Segment::is_header);

  m.def(
      "parse_textgrid",
      [](const std::string& text) {
        corpus::TextGridDoc doc = corpus::parse_textgrid(text);
        py::dict out;
        out["xmin"] = doc.xmin;
        out["xmax"] = doc.xmax;
        py::list tiers;
        for (const auto& tier : doc.tiers) {
          py::dict t;
          t["name"] = tier.name;
          t["xmin"] = tier.xmin;
          t["xmax"] = tier.xmax;
          py::list intervals;
          for (const auto& iv : tier.intervals) {
            intervals.append(py::make_tuple(iv.start, iv.end, iv.label));
          }
          t["intervals"] = intervals;
          tiers.append(t);
        }
        out["tiers"] = tiers;
        return out;
      },
      py::arg("text"), "Parse a long-form TextGrid document.");

  m.def(
      "load_manifest",
      [](const std::string& path) {
        corpus::Corpus c = corpus::load_manifest_file(path);
        std::vector<corpus::Segment> out;
        for (const auto& [id, inquiry] : c.inquiries) {
          out.insert(out.end(), inquiry.segments.begin(), inquiry.segments.end());
        }
        return out;
      },
      py::arg("path"), "Segments of a manifest CSV, grouped and sorted.");

  // ---- intelligibility
  py::class_<intelligibility::ErrorRates>(m, "ErrorRates")
      .def_readonly("wer", &intelligibility::ErrorRates::wer)
      .def_readonly("cer", &intelligibility::ErrorRates::cer)
      .def_property_readonly(
          "word_counts",
          [](const intelligibility::ErrorRates& r) {
            return py::make_tuple(r.words.substitutions, r.words.insertions,
                                  r.words.deletions, r.words.ref_len);
          })
      .def_property_readonly(
          "char_counts",
          [](const intelligibility::ErrorRates& r) {
            return py::make_tuple(r.chars.substitutions, r.chars.insertions,
                                  r.chars.deletions, r.chars.ref_len);
          })
      .def("__repr__", [](const intelligibility::ErrorRates& r) {
        std::ostringstream os;
        os << "ErrorRates(wer=" << r.wer << ", cer=" << r.cer << ")";
        return os.str();
      });

  m.def(
      "error_rates",
      [](const std::string& ref, const std::string& hyp) {
        return intelligibility::error_rates(ref, hyp);
      },
      py::arg("ref"), py::arg("hyp"), "WER and CER after normalization.");
  m.def(
      "edit_distance",
      [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
        auto c = intelligibility::edit_distance(a, b);
        return py::make_tuple(c.distance, c.substitutions, c.insertions,
                              c.deletions);
      },
      py::arg("a"), py::arg("b"),
      "(distance, S, I, D) between two token sequences.");

  // ---- acoustics
  py::class_<acoustics::AudioBuffer>(m, "AudioBuffer")
      .def(py::init([](std::vector<double> samples, double sample_rate) {
             return acoustics::AudioBuffer{std::move(samples), sample_rate};
           }),
           py::arg("samples"), py::arg("sample_rate"))
      .def_readwrite("samples", &acoustics::AudioBuffer::samples)
      .def_readwrite("sample_rate", &acoustics::AudioBuffer::sample_rate)
      .def_property_readonly("duration", &acoustics::AudioBuffer::duration);

  m.def("read_wav", &acoustics::read_wav, py::arg("path"));
  m.def("write_wav", &acoustics::write_wav, py::arg("path"), py::arg("audio"));

  py::class_<acoustics::F0Track>(m, "F0Track")
      .def_readonly("frame_hop", &acoustics::F0Track::frame_hop)
      .def_property_readonly("frames", [](const acoustics::F0Track& t) {
        py::list out;
        for (const auto& f : t.frames) {
          out.append(py::make_tuple(f.time, f.voiced ? py::cast(f.f0) : py::none(),
                                    f.strength));
        }
        return out;
      });

  m.def(
      "extract_f0",
      [](const acoustics::AudioBuffer& audio, double f0_min, double f0_max,
         double frame_hop, double voicing_threshold) {
        acoustics::F0Params params;
        params.f0_min = f0_min;
        params.f0_max = f0_max;
        params.frame_hop = frame_hop;
        params.voicing_threshold = voicing_threshold;
        return acoustics::extract_f0(audio, params);
      },
      py::arg("audio"), py::arg("f0_min") = 75.0, py::arg("f0_max") = 400.0,
      py::arg("frame_hop") = 0.010, py::arg("voicing_threshold") = 0.45);

  m.def("semitones_re_100", &acoustics::semitones_re_100, py::arg("frequency_hz"));

  m.def(
      "contour_rmse",
      [](const std::map<std::string, double>& a,
         const std::map<std::string, double>& b) {
        auto fill = [](const std::map<std::string, double>& src) {
          acoustics::ContourPoints c;
          for (const auto& [name, value] : src) {
            auto label = acoustics::point_label_from_name(name);
            if (!label) {
              throw Error(errc::InvalidArgument, "unknown label '" + name + "'");
            }
            c.at(*label) = value;
          }
          return c;
        };
        return acoustics::contour_rmse(fill(a), fill(b));
      },
      py::arg("a"), py::arg("b"),
      "RMSE over shared labels of two {label: Hz} contours.");

  // ---- stats
  py::class_<stats::TestResult>(m, "TestResult")
      .def_property_readonly("method",
                             [](const stats::TestResult& r) {
                               return stats::test_method_name(r.method);
                             })
      .def_readonly("statistic", &stats::TestResult::statistic)
      .def_property_readonly("df",
                             [](const stats::TestResult& r) -> py::object {
                               if (r.df2) return py::make_tuple(r.df1, *r.df2);
                               return py::cast(r.df1);
                             })
      .def_readonly("p_value", &stats::TestResult::p_value)
      .def_readonly("zero_variance", &stats::TestResult::zero_variance)
      .def("__repr__", [](const stats::TestResult& r) {
        std::ostringstream os;
        os << "TestResult(method=" << stats::test_method_name(r.method)
           << ", statistic=" << r.statistic << ", p_value=" << r.p_value << ")";
        return os.str();
      });

  m.def(
      "descriptive",
      [](const std::vector<double>& samples) {
        auto d = stats::descriptive(samples);
        return py::make_tuple(d.mean, d.sample_std, d.n);
      },
      py::arg("samples"), "(mean, sample_std, n)");
  m.def(
      "t_test",
      [](const std::vector<double>& a, const std::vector<double>& b,
         const std::string& mode) {
        if (mode != "paired" && mode != "two_sample") {
          throw Error(errc::InvalidArgument,
                      "mode must be 'paired' or 'two_sample'");
        }
        return stats::t_test(a, b,
                             mode == "paired" ? stats::TTestMode::Paired
                                              : stats::TTestMode::TwoSample);
      },
      py::arg("a"), py::arg("b"), py::arg("mode") = "paired");
  m.def("one_way_anova", &stats::one_way_anova, py::arg("groups"));
  m.def(
      "tukey_hsd",
      [](const std::vector<std::vector<double>>& groups,
         const std::vector<std::string>& names) {
        auto table = stats::tukey_hsd(groups, names);
        py::list out;
        for (const auto& row : table.rows) {
          py::dict d;
          d["group_a"] = row.group_a;
          d["group_b"] = row.group_b;
          d["mean_diff"] = row.mean_diff;
          d["q"] = row.q;
          d["p_value"] = row.p_value;
          out.append(d);
        }
        return out;
      },
      py::arg("groups"), py::arg("names") = std::vector<std::string>{});
  m.def(
      "cohens_kappa",
      [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
        return stats::cohens_kappa(a, b);
      },
      py::arg("a"), py::arg("b"));
  m.def("regularized_incomplete_beta", &stats::regularized_incomplete_beta,
        py::arg("x"), py::arg("a"), py::arg("b"));
  m.def("studentized_range_p", &stats::studentized_range_p, py::arg("q"),
        py::arg("k"), py::arg("df"));
  m.def("student_t_cdf", &stats::student_t_cdf, py::arg("t"), py::arg("df"));
}
