// prosokit/error.hpp

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

#ifndef PROSOKIT_ERROR_HPP_
#define PROSOKIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace prosokit {

// Every failure the toolkit can signal. Names are stable; the CLI maps them
// onto exit-code categories (parse / validation / computation).
enum class errc {
  // parse failures
  MalformedTextGrid,
  UnsupportedEncoding,
  OverlappingIntervals,
  PointTierUnsupported,
  MissingColumn,
  UnparsableRow,
  UnsupportedFormat,
  TruncatedFile,
  IoError,
  // validation failures
  NoMatchingTier,
  AmbiguousTierMatch,
  NonMonotonicTimes,
  EmptyCorpus,
  NoSharedInquiries,
  EmptyReference,
  DuplicateId,
  DuplicateLabel,
  IdMismatch,
  MissingAudio,
  MissingAnnotation,
  WindowOutOfRange,
  InvalidRange,
  OutOfRange,
  LengthMismatch,
  EmptyInput,
  NoData,
  NoSharedLabels,
  InvalidArgument,
  // computation failures
  ScriptMismatch,
  AudioTooShort,
  InsufficientData,
  InsufficientPoints,
  ZeroVariance,
  ZeroWithinVariance,
  NonPositiveFrequency,
  DomainError,
};

enum class error_category { parse = 0, validation = 1, computation = 2 };

const char* errc_name(errc code);
error_category errc_category(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const { return code_; }
  error_category category() const { return errc_category(code_); }

 private:
  errc code_;
};

}  // namespace prosokit

#endif  // PROSOKIT_ERROR_HPP_
