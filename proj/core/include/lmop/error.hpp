#pragma once

#include <stdexcept>
#include <string>

namespace lmop {

enum class Errc {
  ParityMismatch,
  TruncationExceeded,
  Unsupported,
  Singular,
  DimensionMismatch,
  NotNormal,
  NotLaurentNormal,
  OverlappingArcs,
  AtomOnCut,
  ChebyshevSampleFailure,
  SupportOutOfRange,
  TooLarge,
  UnorderedInput,
  OrderViolation,
  DegenerateSpan,
  NearSingularPrefactor,
  InconsistentRelation,
  NoTypeIAtZero,
  ConfigError,
};

constexpr const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ParityMismatch: return "ParityMismatch";
    case Errc::TruncationExceeded: return "TruncationExceeded";
    case Errc::Unsupported: return "Unsupported";
    case Errc::Singular: return "Singular";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotNormal: return "NotNormal";
    case Errc::NotLaurentNormal: return "NotLaurentNormal";
    case Errc::OverlappingArcs: return "OverlappingArcs";
    case Errc::AtomOnCut: return "AtomOnCut";
    case Errc::ChebyshevSampleFailure: return "ChebyshevSampleFailure";
    case Errc::SupportOutOfRange: return "SupportOutOfRange";
    case Errc::TooLarge: return "TooLarge";
    case Errc::UnorderedInput: return "UnorderedInput";
    case Errc::OrderViolation: return "OrderViolation";
    case Errc::DegenerateSpan: return "DegenerateSpan";
    case Errc::NearSingularPrefactor: return "NearSingularPrefactor";
    case Errc::InconsistentRelation: return "InconsistentRelation";
    case Errc::NoTypeIAtZero: return "NoTypeIAtZero";
    case Errc::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace lmop
