#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cosymp {

enum class ErrorCode {
  // structure validation
  NotAntisymmetric,
  TrivialPsi,
  Degenerate,
  EvenDimension,
  DimensionMismatch,
  // constructions
  NotIsotropic,
  NotLagrangian,
  NotLagrangianForBoth,
  NotComplement,
  NotSPD,
  NotPositive,
  // charts and flows
  NotClosed,
  PointwiseDegenerate,
  RankDeficient,
  DomainMismatch,
  StructuresDisagreeAtQ,
  DegenerateInterpolation,
  FlowEscapedBox,
  // torus pipeline
  NotCosymplectomorphism,
  TooFarFromIdentity,
  NonConstantReebShift,
  NoConvergence,
  NotCosymplectic,
  NotPeriodic,
  // input handling
  ParseError,
  InvalidArgument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorCode::TrivialPsi: return "TrivialPsi";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::EvenDimension: return "EvenDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::NotLagrangian: return "NotLagrangian";
    case ErrorCode::NotLagrangianForBoth: return "NotLagrangianForBoth";
    case ErrorCode::NotComplement: return "NotComplement";
    case ErrorCode::NotSPD: return "NotSPD";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::PointwiseDegenerate: return "PointwiseDegenerate";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::StructuresDisagreeAtQ: return "StructuresDisagreeAtQ";
    case ErrorCode::DegenerateInterpolation: return "DegenerateInterpolation";
    case ErrorCode::FlowEscapedBox: return "FlowEscapedBox";
    case ErrorCode::NotCosymplectomorphism: return "NotCosymplectomorphism";
    case ErrorCode::TooFarFromIdentity: return "TooFarFromIdentity";
    case ErrorCode::NonConstantReebShift: return "NonConstantReebShift";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotCosymplectic: return "NotCosymplectic";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cosymp
