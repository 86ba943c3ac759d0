#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sigcount/growth.hpp"

namespace sigcount {

enum class BoundId {
  Thm1,               // c d^6 (log d)(log H)^2 log log H
  Thm2,               // c d^20 (log d)^5 (log H)^2 log log H
  BessonCount,        // c R^10 (log R) d^4 (log H)^2 / log(d log H)
  BessonZero,         // c L (R + sqrt L)^2 log(R + L)
  RadiusBasic,       // A d sqrt(log H)
  RadiusRefined,       // A sqrt(d^9 (log d)^2 log H)
  RadiusException,    // -B d^9 (log d)^2 log H
  MeasureRhs,         // -c d^4 (log d)^2 (log H) |w|^2 (1 + max(0, log|w|))^3
  ExceptionalSet,     // c10 sqrt(d^5 (log d)^2 (log H) (1 + d log H)^3)
  FinalCount,          // c d^30 (log d)^6 (log H)^3
  JensenLog,         // c log((T+1)^4 H^T (cT)^T e^{c T^3})
  RadiusN,           // sqrt(d log H)
  MasserCoefficient,  // 2^{1/d} (T+1)^2 H^T
};

const std::vector<BoundId>& all_bound_ids();
std::string bound_name(BoundId id);
// Parses names as printed by bound_name; InvalidArgument on unknown names.
BoundId parse_bound_id(std::string_view name);
// Parameter and constant names used by an id, for usage messages.
std::vector<std::string> bound_parameters(BoundId id);
std::vector<std::string> bound_constants(BoundId id);

using NamedValues = std::map<std::string, double, std::less<>>;

struct BoundValue {
  double value = 0;    // may be +-inf when the magnitude exceeds the double range
  double log_abs = 0;  // log|value|, always finite for a nonzero value
  int sign = 1;
};

// Log-safe evaluation. Throws DomainViolation naming the violated constraint
// and InvalidArgument for missing parameters or constants.
BoundValue eval_bound(BoundId id, const NamedValues& params, const NamedValues& constants);

// max{ sqrt((1 + delta)/c), sqrt((2 + B)/c) }.
double lemma_common_A(double B, double c, double delta);
double lemma_common_A(double B, const GrowthCertificate& cert);

// z = z0 + m omega1 + n omega2 with z0 = exp(log_abs_z0 + i arg_z0).
struct PolarCellPoint {
  double log_abs_z0 = 0;
  double arg_z0 = 0;
  std::int64_t m = 0;
  std::int64_t n = 0;
};

struct ChainLink {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;  // rhs - lhs for "lhs <= rhs"
  bool holds = false;
};

struct RadiusVerdict {
  bool applicable = false;  // |z| >= A N
  bool holds = false;       // every link holds (only meaningful when applicable)
  double A = 0;
  double N = 0;
  double abs_z = 0;
  std::vector<ChainLink> links;
};

// Numerically walks the chain: log|sigma(z)| <= d log H, the growth inequality,
// log|sigma(z0)| <= -delta, |log|sigma(z0)| - log|z0|| <= 1, and log|z0| <= -B N^2.
// Throws HypothesisUnmet if N < sqrt(d log H) or |z| < r.
RadiusVerdict lemma_common_radius_check(const SigmaEvaluator& ev, const GrowthCertificate& cert,
                                        const PolarCellPoint& z, double sigma_height, int sigma_degree,
                                        double B, double N);
RadiusVerdict lemma_common_radius_check(const SigmaEvaluator& ev, const GrowthCertificate& cert, cplx z,
                                        double sigma_height, int sigma_degree, double B, double N);

}  // namespace sigcount
