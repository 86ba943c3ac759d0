#pragma once

#include <stdexcept>
#include <string>

namespace sigcount {

// Numeric values are part of the C ABI (see sigcount.h); append only.
enum class Errc : int {
  InvalidArgument = 1,
  DegenerateBasis = 2,
  NotLatticePoint = 3,
  LatticePoint = 4,
  PrecisionUnreachable = 5,
  FormulaMismatch = 6,
  ImTauTooLarge = 7,
  PositiveDiscriminant = 8,
  RootFindingFailure = 9,
  BudgetExceeded = 10,
  PrecisionTooLow = 11,
  NoKernel = 12,
  DegreeTooSmall = 13,
  ContourStuck = 14,
  WitnessNotFound = 15,
  DomainViolation = 16,
  HypothesisUnmet = 17,
  ConfigError = 18,
  IoError = 19,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// Process exit status used by the command-line front end.
int exit_code_for(Errc code) noexcept;

}  // namespace sigcount
