#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace matlie {

/// Every failure the library reports carries one of these codes; the CLI
/// prints the code name verbatim.
enum class Errc {
  DivisionByZero,
  FieldMismatch,
  InvalidField,
  IncompatibleAutomorphism,
  DimensionMismatch,
  IndexOutOfRange,
  SingularMatrix,
  OddDimension,
  MixedShapes,
  EmptySequence,
  PreconditionViolated,
  EnumerationTooLarge,
  InvalidComposition,
  NotAnAutomorphismImagePair,
  NotAnAutomorphism,
  NotATwistedAutomorphism,
  NotAnAntiAutomorphism,
  NotATwistedAntiAutomorphism,
  NotDecomposable,
  CharacteristicDividesN,
  ResidualNotScalar,
  ParseError,
};

constexpr std::string_view name(Errc code) {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::InvalidField: return "InvalidField";
    case Errc::IncompatibleAutomorphism: return "IncompatibleAutomorphism";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::OddDimension: return "OddDimension";
    case Errc::MixedShapes: return "MixedShapes";
    case Errc::EmptySequence: return "EmptySequence";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
    case Errc::InvalidComposition: return "InvalidComposition";
    case Errc::NotAnAutomorphismImagePair: return "NotAnAutomorphismImagePair";
    case Errc::NotAnAutomorphism: return "NotAnAutomorphism";
    case Errc::NotATwistedAutomorphism: return "NotATwistedAutomorphism";
    case Errc::NotAnAntiAutomorphism: return "NotAnAntiAutomorphism";
    case Errc::NotATwistedAntiAutomorphism: return "NotATwistedAntiAutomorphism";
    case Errc::NotDecomposable: return "NotDecomposable";
    case Errc::CharacteristicDividesN: return "CharacteristicDividesN";
    case Errc::ResidualNotScalar: return "ResidualNotScalar";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }
  std::string_view code_name() const noexcept { return name(code_); }

 private:
  Errc code_;
};

}  // namespace matlie
