#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sigcount/types.hpp"

namespace sigcount {

// Integer polynomial, coefficients in ascending order: p[i] is the x^i coefficient.
using IntPoly = std::vector<std::int64_t>;
// Rational polynomial, ascending order, no trailing zeros (zero polynomial is empty).
using QPoly = std::vector<Rational>;

int degree(const IntPoly& p);
void trim(IntPoly& p);
std::int64_t content(const IntPoly& p);
// Divides by the content and makes the leading coefficient positive.
IntPoly primitive_part(IntPoly p);
cplx evaluate(const IntPoly& p, cplx x);
std::string to_string(const IntPoly& p);

// All complex roots with multiplicity. Real roots of real polynomials are
// returned with zero imaginary part. Throws RootFindingFailure.
std::vector<cplx> roots(const IntPoly& p);

// Leading coefficient times the product of max(1, |root|).
double mahler_measure(const IntPoly& p);
double mahler_measure(const IntPoly& p, const std::vector<cplx>& roots);

// Distinct rational roots, by the rational-root theorem.
std::vector<Rational> rational_roots(const IntPoly& p);

// Exact division by (den x - num); the remainder must vanish.
IntPoly divide_linear(const IntPoly& p, const Rational& root);

// Irreducible over Q. Exact for degree <= 3; for higher degree only absence of
// rational roots and squarefreeness are checked.
bool is_irreducible(const IntPoly& p);

// ---- rational polynomials ----
void trim(QPoly& p);
int degree(const QPoly& p);
QPoly to_qpoly(const IntPoly& p);
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator+(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const Rational& k);
// a = q*b + r with deg r < deg b. b must be nonzero.
void divmod(const QPoly& a, const QPoly& b, QPoly& quotient, QPoly& remainder);
QPoly mod(const QPoly& a, const QPoly& b);
// Clears denominators and content: integer primitive polynomial with positive leading coefficient.
std::vector<BigInt> primitive_integer(const QPoly& p);
cplx evaluate(const QPoly& p, cplx x);

// ---- integer relations ----

// LLL-reduces the rows of a real basis (delta = 0.99). Rows are modified in place.
void lll_reduce(std::vector<std::vector<long double>>& basis, long double delta = 0.99L);

// Small integer vectors a with sum a_i v_i ~ 0 for complex v, from LLL on
// [I | W Re v | W Im v]. Rows of the reduced basis are returned shortest first.
std::vector<std::vector<std::int64_t>> integer_relations(const std::vector<cplx>& v, long double weight);

}  // namespace sigcount
