#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace condsets {

enum class Errc {
  AlgebraMismatch,
  EmptyFamily,
  DifferentBase,
  PartitionInvalid,
  PickSupportMismatch,
  EmptyGround,
  EmptyInput,
  SupportMismatch,
  ParentMismatch,
  CarrierMismatch,
  NotTotal,
  NoBound,
  InvalidBase,
  DegenerateSystem,
  NotMaterialized,
  NotACover,
  NotFinite,
  NotInvertible,
  EpsNotPositive,
  DimMismatch,
  NotDisjoint,
  DominationViolated,
  BallNotAbsorbing,
  MalformedProblem,
  MalformedDescriptor,
  MetricAxiomViolation,
  UnknownSuite,
  ParseError,
  EvalError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::AlgebraMismatch: return "AlgebraMismatch";
    case Errc::EmptyFamily: return "EmptyFamily";
    case Errc::DifferentBase: return "DifferentBase";
    case Errc::PartitionInvalid: return "PartitionInvalid";
    case Errc::PickSupportMismatch: return "PickSupportMismatch";
    case Errc::EmptyGround: return "EmptyGround";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::SupportMismatch: return "SupportMismatch";
    case Errc::ParentMismatch: return "ParentMismatch";
    case Errc::CarrierMismatch: return "CarrierMismatch";
    case Errc::NotTotal: return "NotTotal";
    case Errc::NoBound: return "NoBound";
    case Errc::InvalidBase: return "InvalidBase";
    case Errc::DegenerateSystem: return "DegenerateSystem";
    case Errc::NotMaterialized: return "NotMaterialized";
    case Errc::NotACover: return "NotACover";
    case Errc::NotFinite: return "NotFinite";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::EpsNotPositive: return "EpsNotPositive";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::NotDisjoint: return "NotDisjoint";
    case Errc::DominationViolated: return "DominationViolated";
    case Errc::BallNotAbsorbing: return "BallNotAbsorbing";
    case Errc::MalformedProblem: return "MalformedProblem";
    case Errc::MalformedDescriptor: return "MalformedDescriptor";
    case Errc::MetricAxiomViolation: return "MetricAxiomViolation";
    case Errc::UnknownSuite: return "UnknownSuite";
    case Errc::ParseError: return "ParseError";
    case Errc::EvalError: return "EvalError";
  }
  return "?";
}

// Library-wide error. `where_mask` optionally carries the condition (as an
// atom bitmask) an error is localized to, e.g. the zero set of a failed
// inversion or the overlap of a failed separation.
struct CondError : std::runtime_error {
  Errc code;
  std::uint64_t where_mask = 0;
  bool has_where = false;

  CondError(Errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code(c) {}
  CondError(Errc c, const std::string& msg, std::uint64_t mask)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg),
        code(c), where_mask(mask), has_where(true) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) {
  throw CondError(c, msg);
}
[[noreturn]] inline void fail_at(Errc c, const std::string& msg, std::uint64_t mask) {
  throw CondError(c, msg, mask);
}

}  // namespace condsets
