#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clocklat {

enum class Errc {
  // planar-core
  MalformedInvolution,
  LoopEdge,
  DegreeTooSmall,
  NotSpherical,
  // weights-states
  MissingValue,
  InvalidWeight,
  NotConnected,
  UnknownEdge,
  NotMovable,
  NotACycle,
  EmptyStateSet,
  NotNilpotencyZero,
  // bms
  RelationViolated,
  InvisibleDimNonZero,
  NotCompatible,
  // kauffman
  NotFourRegular,
  MarkedFacesNotDistinct,
  NotApplicable,
  NotPrime,
  CertificationFailed,
  // quiver-rep
  ShapeMismatch,
  EmptySupport,
  NotCharacteristicWeight,
  CandidateSpaceTooLarge,
  // io
  ParseError,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::MalformedInvolution: return "MalformedInvolution";
    case Errc::LoopEdge: return "LoopEdge";
    case Errc::DegreeTooSmall: return "DegreeTooSmall";
    case Errc::NotSpherical: return "NotSpherical";
    case Errc::MissingValue: return "MissingValue";
    case Errc::InvalidWeight: return "InvalidWeight";
    case Errc::NotConnected: return "NotConnected";
    case Errc::UnknownEdge: return "UnknownEdge";
    case Errc::NotMovable: return "NotMovable";
    case Errc::NotACycle: return "NotACycle";
    case Errc::EmptyStateSet: return "EmptyStateSet";
    case Errc::NotNilpotencyZero: return "NotNilpotencyZero";
    case Errc::RelationViolated: return "RelationViolated";
    case Errc::InvisibleDimNonZero: return "InvisibleDimNonZero";
    case Errc::NotCompatible: return "NotCompatible";
    case Errc::NotFourRegular: return "NotFourRegular";
    case Errc::MarkedFacesNotDistinct: return "MarkedFacesNotDistinct";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::NotPrime: return "NotPrime";
    case Errc::CertificationFailed: return "CertificationFailed";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::EmptySupport: return "EmptySupport";
    case Errc::NotCharacteristicWeight: return "NotCharacteristicWeight";
    case Errc::CandidateSpaceTooLarge: return "CandidateSpaceTooLarge";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace clocklat
