#include "sigcount/error.hpp"

namespace sigcount {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DegenerateBasis: return "DegenerateBasis";
    case Errc::NotLatticePoint: return "NotLatticePoint";
    case Errc::LatticePoint: return "LatticePoint";
    case Errc::PrecisionUnreachable: return "PrecisionUnreachable";
    case Errc::FormulaMismatch: return "FormulaMismatch";
    case Errc::ImTauTooLarge: return "ImTauTooLarge";
    case Errc::PositiveDiscriminant: return "PositiveDiscriminant";
    case Errc::RootFindingFailure: return "RootFindingFailure";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::PrecisionTooLow: return "PrecisionTooLow";
    case Errc::NoKernel: return "NoKernel";
    case Errc::DegreeTooSmall: return "DegreeTooSmall";
    case Errc::ContourStuck: return "ContourStuck";
    case Errc::WitnessNotFound: return "WitnessNotFound";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::HypothesisUnmet: return "HypothesisUnmet";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument:
    case Errc::ConfigError:
    case Errc::DegenerateBasis:
      return 2;
    case Errc::ImTauTooLarge:
    case Errc::PositiveDiscriminant:
    case Errc::HypothesisUnmet:
    case Errc::DomainViolation:
    case Errc::DegreeTooSmall:
      return 3;
    case Errc::PrecisionUnreachable:
    case Errc::PrecisionTooLow:
    case Errc::RootFindingFailure:
    case Errc::ContourStuck:
    case Errc::FormulaMismatch:
      return 4;
    case Errc::BudgetExceeded:
      return 5;
    default:
      return 1;
  }
}

}  // namespace sigcount
