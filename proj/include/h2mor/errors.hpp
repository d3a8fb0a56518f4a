// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_ERRORS_HPP
#define H2MOR_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace h2mor
{

enum class ErrorCode
{
  DimensionMismatch,
  StructurallySingularE,
  SingularDescriptor,
  SingularShift,
  RankDeficientProjection,
  DefectiveSpectrum,
  OrderTooLarge,
  SingularEr,
  NotConjugateClosed,
  RankCollapse,
  UnstablePencil,
  CardinalityMismatch,
  ModelOrderExceeded,
  UnstableRom,
  FeedthroughMismatch,
  NegativeInput,
  ParseError,
  UnsupportedField,
  IoError,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::StructurallySingularE: return "StructurallySingularE";
    case ErrorCode::SingularDescriptor: return "SingularDescriptor";
    case ErrorCode::SingularShift: return "SingularShift";
    case ErrorCode::RankDeficientProjection: return "RankDeficientProjection";
    case ErrorCode::DefectiveSpectrum: return "DefectiveSpectrum";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::SingularEr: return "SingularEr";
    case ErrorCode::NotConjugateClosed: return "NotConjugateClosed";
    case ErrorCode::RankCollapse: return "RankCollapse";
    case ErrorCode::UnstablePencil: return "UnstablePencil";
    case ErrorCode::CardinalityMismatch: return "CardinalityMismatch";
    case ErrorCode::ModelOrderExceeded: return "ModelOrderExceeded";
    case ErrorCode::UnstableRom: return "UnstableRom";
    case ErrorCode::FeedthroughMismatch: return "FeedthroughMismatch";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what)
{
  throw Error(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string &what)
{
  if (!condition)
  {
    fail(code, what);
  }
}

}  // namespace h2mor

#endif  // H2MOR_ERRORS_HPP
