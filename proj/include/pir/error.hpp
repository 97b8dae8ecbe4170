#pragma once

#include <stdexcept>
#include <string>

namespace pir {

enum class Err {
  NonPrimeFactor,
  DuplicatePrime,
  Overflow,
  NonCoprimeModuli,
  NotAUnit,
  MixedAmbient,
  UnknownComponent,
  ComponentMismatch,
  NotCoprime,
  BrokenTower,
  NotADivisor,
  NotMonic,
  LengthMismatch,
  ComponentCountMismatch,
  AmbientMismatch,
  EmptySampleSet,
  NoCompliantInstance,
  IncompatibleDimensions,
  InvalidFileIndex,
  DimensionMismatch,
  NoSolution,
  AmbiguousSolution,
  ParseError,
  IoError,
};

/// Library-wide exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace pir
