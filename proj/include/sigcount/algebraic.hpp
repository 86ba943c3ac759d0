#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigcount/poly.hpp"

namespace sigcount {

// An algebraic number given by its minimal polynomial (primitive, positive
// leading coefficient, irreducible) and one of its roots. Roots of the
// minimal polynomial are ordered by argument in (-pi, pi], then modulus;
// root_index refers to that order.
struct AlgebraicNumber {
  IntPoly minpoly;
  int root_index = 0;
  cplx approx;
  double isolation_radius = 0;  // the disk |z - approx| < radius holds no other root

  int degree() const { return sigcount::degree(minpoly); }
  bool is_rational() const { return degree() == 1; }
  // Exact value for rational numbers.
  Rational rational_value() const;
};

// Builds the number from a minimal polynomial candidate and a root index.
// Throws InvalidArgument if the polynomial is not irreducible.
AlgebraicNumber make_algebraic(const IntPoly& minpoly, int root_index);
// Nearest root of minpoly to x.
AlgebraicNumber make_algebraic_near(const IntPoly& minpoly, cplx x);
AlgebraicNumber make_rational(const Rational& q);

// Canonical root order used by AlgebraicNumber::root_index.
std::vector<cplx> ordered_roots(const IntPoly& minpoly);

// Multiplicative height: Mahler measure ^ (1/degree).
double height(const AlgebraicNumber& a);
double height_of_minpoly(const IntPoly& minpoly);

struct EnumerateOptions {
  // Maximum number of coefficient vectors examined.
  double budget = 2e9;
  // Relative slack when comparing Mahler measures with H^degree.
  double guard = 1e-9;
};

// Streams every algebraic number of degree <= d_max and height <= H_max once, in
// canonical order: degree, then coefficients leading-first lexicographically,
// then root order. Throws BudgetExceeded before emitting anything if the
// coefficient boxes exceed the budget.
void enumerate(int d_max, double H_max, const std::function<void(const AlgebraicNumber&)>& sink,
               const EnumerateOptions& opts = {});
std::vector<AlgebraicNumber> enumerate(int d_max, double H_max, const EnumerateOptions& opts = {});

// Literals: a rational "3/4", "-2", "0.5", or "{c_d,...,c_0}@k" giving the
// minimal polynomial leading coefficient first and a root index.
AlgebraicNumber parse_algebraic(std::string_view text);
std::string to_literal(const AlgebraicNumber& a);

// Size of the coefficient box searched for the given caps.
double enumeration_box_size(int d_max, double H_max);

// Candidate algebraic number of degree <= d_max and height <= H_max within tol
// of x; the closest one if several qualify. x_err is the caller's error bound
// on x; PrecisionTooLow if x_err > tol/10.
std::optional<AlgebraicNumber> detect_algebraic(cplx x, int d_max, double H_max, double tol,
                                                double x_err = 0.0);

}  // namespace sigcount
