#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nccr {

enum class ErrorCode {
  NonConvex,
  NonPrimitive,
  Duplicate,
  NonPrimitiveImage,
  HeightNotPreserved,
  PrefixNotCM,
  JumpLimit,
  SlackBoundViolated,
  Disconnected,
  DegenerateLifts,
  SegmentCrossing,
  OverlappingSegments,
  FaceTooShort,
  OrientabilityFailure,
  ManifoldFailure,
  NotInterior,
  Infeasible,
  DegenerateCycles,
  PolygonMismatch,
  NotReflexive,
  TiedHeights,
  BadVertexDegree,
  LoopOrTwoCycle,
  MutatedZeroVertex,
  NotModifying,
  UnknownClass,
  InvalidInput,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonConvex: return "NonConvex";
    case ErrorCode::NonPrimitive: return "NonPrimitive";
    case ErrorCode::Duplicate: return "Duplicate";
    case ErrorCode::NonPrimitiveImage: return "NonPrimitiveImage";
    case ErrorCode::HeightNotPreserved: return "HeightNotPreserved";
    case ErrorCode::PrefixNotCM: return "PrefixNotCM";
    case ErrorCode::JumpLimit: return "JumpLimit";
    case ErrorCode::SlackBoundViolated: return "SlackBoundViolated";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::DegenerateLifts: return "DegenerateLifts";
    case ErrorCode::SegmentCrossing: return "SegmentCrossing";
    case ErrorCode::OverlappingSegments: return "OverlappingSegments";
    case ErrorCode::FaceTooShort: return "FaceTooShort";
    case ErrorCode::OrientabilityFailure: return "OrientabilityFailure";
    case ErrorCode::ManifoldFailure: return "ManifoldFailure";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::DegenerateCycles: return "DegenerateCycles";
    case ErrorCode::PolygonMismatch: return "PolygonMismatch";
    case ErrorCode::NotReflexive: return "NotReflexive";
    case ErrorCode::TiedHeights: return "TiedHeights";
    case ErrorCode::BadVertexDegree: return "BadVertexDegree";
    case ErrorCode::LoopOrTwoCycle: return "LoopOrTwoCycle";
    case ErrorCode::MutatedZeroVertex: return "MutatedZeroVertex";
    case ErrorCode::NotModifying: return "NotModifying";
    case ErrorCode::UnknownClass: return "UnknownClass";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nccr
