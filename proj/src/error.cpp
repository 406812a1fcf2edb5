// prosokit/error.cpp

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

#include "prosokit/error.hpp"

namespace prosokit {

const char* errc_name(errc code) {
  switch (code) {
    case errc::MalformedTextGrid: return "MalformedTextGrid";
    case errc::UnsupportedEncoding: return "UnsupportedEncoding";
    case errc::OverlappingIntervals: return "OverlappingIntervals";
    case errc::PointTierUnsupported: return "PointTierUnsupported";
    case errc::MissingColumn: return "MissingColumn";
    case errc::UnparsableRow: return "UnparsableRow";
    case errc::UnsupportedFormat: return "UnsupportedFormat";
    case errc::TruncatedFile: return "TruncatedFile";
    case errc::IoError: return "IoError";
    case errc::NoMatchingTier: return "NoMatchingTier";
    case errc::AmbiguousTierMatch: return "AmbiguousTierMatch";
    case errc::NonMonotonicTimes: return "NonMonotonicTimes";
    case errc::EmptyCorpus: return "EmptyCorpus";
    case errc::NoSharedInquiries: return "NoSharedInquiries";
    case errc::EmptyReference: return "EmptyReference";
    case errc::DuplicateId: return "DuplicateId";
    case errc::DuplicateLabel: return "DuplicateLabel";
    case errc::IdMismatch: return "IdMismatch";
    case errc::MissingAudio: return "MissingAudio";
    case errc::MissingAnnotation: return "MissingAnnotation";
    case errc::WindowOutOfRange: return "WindowOutOfRange";
    case errc::InvalidRange: return "InvalidRange";
    case errc::OutOfRange: return "OutOfRange";
    case errc::LengthMismatch: return "LengthMismatch";
    case errc::EmptyInput: return "EmptyInput";
    case errc::NoData: return "NoData";
    case errc::NoSharedLabels: return "NoSharedLabels";
    case errc::InvalidArgument: return "InvalidArgument";
    case errc::ScriptMismatch: return "ScriptMismatch";
    case errc::AudioTooShort: return "AudioTooShort";
    case errc::InsufficientData: return "InsufficientData";
    case errc::InsufficientPoints: return "InsufficientPoints";
    case errc::ZeroVariance: return "ZeroVariance";
    case errc::ZeroWithinVariance: return "ZeroWithinVariance";
    case errc::NonPositiveFrequency: return "NonPositiveFrequency";
    case errc::DomainError: return "DomainError";
  }
  return "UnknownError";
}

error_category errc_category(errc code) {
  switch (code) {
    case errc::MalformedTextGrid:
    case errc::UnsupportedEncoding:
    case errc::OverlappingIntervals:
    case errc::PointTierUnsupported:
    case errc::MissingColumn:
    case errc::UnparsableRow:
    case errc::UnsupportedFormat:
    case errc::TruncatedFile:
    case errc::IoError:
      return error_category::parse;
    case errc::NoMatchingTier:
    case errc::AmbiguousTierMatch:
    case errc::NonMonotonicTimes:
    case errc::EmptyCorpus:
    case errc::NoSharedInquiries:
    case errc::EmptyReference:
    case errc::DuplicateId:
    case errc::DuplicateLabel:
    case errc::IdMismatch:
    case errc::MissingAudio:
    case errc::MissingAnnotation:
    case errc::WindowOutOfRange:
    case errc::InvalidRange:
    case errc::OutOfRange:
    case errc::LengthMismatch:
    case errc::EmptyInput:
    case errc::NoData:
    case errc::NoSharedLabels:
    case errc::InvalidArgument:
      return error_category::validation;
    case errc::ScriptMismatch:
    case errc::AudioTooShort:
    case errc::InsufficientData:
    case errc::InsufficientPoints:
    case errc::ZeroVariance:
    case errc::ZeroWithinVariance:
    case errc::NonPositiveFrequency:
    case errc::DomainError:
      return error_category::computation;
  }
  return error_category::computation;
}

}  // namespace prosokit
