#pragma once

#include <optional>
#include <vector>

#include "sigcount/algebraic.hpp"

namespace sigcount {

struct MasserParameters {
  int d = 1;
  int T = 3;
  double A = 1, Z = 1, M = 1, H = 1;
};

struct MasserCheck {
  bool holds = false;
  double lhs_log = 0;  // T log(AZ)
  double rhs_log = 0;  // (96 d^2/T) log(4T) + 16 d log(M+1) + 48 d^2 log H
};

// (AZ)^T > (4T)^{96 d^2/T} (M+1)^{16d} H^{48 d^2}, compared in logs.
// Throws DegreeTooSmall if T < sqrt(8d), InvalidArgument for other bad parameters.
MasserCheck masser_condition(const MasserParameters& p);

// ceil(c3 d^3 log H), at least ceil(sqrt(8d)). Needs d >= 1, H >= e.
int choose_T_alglattice(int d, double H, double c3);
// ceil(c11 d^10 (log d)^2 log H), at least ceil(sqrt(8d)).
int choose_T_alggs(int d, double H, double c11);

// Integer polynomial sum c_{ij} X^i Y^j with i + j <= T.
struct AuxPolynomial {
  int T = 0;
  // Monomials in order: total degree s = 0..T, then j = 0..s (i = s - j).
  std::vector<std::pair<int, int>> monomials;
  std::vector<BigInt> coeffs;

  BigInt max_abs_coefficient() const;
  std::string to_string() const;
};

std::vector<std::pair<int, int>> monomials_up_to(int T);

struct AlgebraicPoint {
  AlgebraicNumber x;
  AlgebraicNumber y;
};

// Nonzero integer polynomial of total degree <= T vanishing exactly at every
// point. Conditions are imposed over Q(x, y), so all conjugate points are
// covered as well. Among the kernel basis the vector with the smallest maximal
// coefficient is returned (ties: lexicographic). When masser_d is given the
// Masser requirement T >= sqrt(8d) is enforced (DegreeTooSmall).
// Throws NoKernel when the conditions have full column rank.
AuxPolynomial construct_vanishing(const std::vector<AlgebraicPoint>& points, int T,
                                  std::optional<int> masser_d = std::nullopt);

// Exact evaluation of P at the point inside Q(x, y).
bool vanishes_exactly(const AuxPolynomial& P, const AlgebraicPoint& pt);

// Q(x, y) as Q[t]/(modulus), with x and y written as polynomials in t.
struct FieldPresentation {
  QPoly modulus;
  QPoly x;
  QPoly y;
};
FieldPresentation field_presentation(const AlgebraicPoint& pt);

// log of 2^{1/d} (T+1)^2 H^T.
double log_coefficient_bound(int d, int T, double H);

struct CoefficientBoundReport {
  double log_bound = 0;
  double log_max_coefficient = 0;
  bool within = true;
};
CoefficientBoundReport coefficient_bound_check(const AuxPolynomial& P, int d, double H);

}  // namespace sigcount
