#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "sigcount/types.hpp"

namespace sigcount {

// Unimodular change of basis: (omega1, omega2) = M * (w1, w2) with rows of M.
struct BasisChange {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t determinant() const { return a * d - b * c; }
  friend bool operator==(const BasisChange&, const BasisChange&) = default;
};

// A lattice Omega = omega1 Z + omega2 Z whose basis has been reduced so that
// tau = omega2 / omega1 lies in the closed standard fundamental domain, with
// boundary ties resolved toward Re(tau) = +1/2 and, on |tau| = 1, Re(tau) >= 0.
//
// Immutable; all member functions are thread-safe.
class Lattice {
 public:
  static constexpr double kDomainSlack = 1e-12;

  const cplx& omega1() const { return omega1_; }
  const cplx& omega2() const { return omega2_; }
  const cplx& tau() const { return tau_; }
  const BasisChange& reduction() const { return reduction_; }

  // Input basis as supplied to reduce_basis.
  const std::array<cplx, 2>& input_basis() const { return input_; }

  // Exact reduced periods, present only when the lattice came from exact input.
  const std::optional<std::array<GaussianRational, 2>>& exact_periods() const { return exact_; }

  // Vertices (+-omega1 +- omega2)/2 of the closed fundamental parallelogram P,
  // counter-clockwise starting at (omega1 + omega2)/2.
  std::array<cplx, 4> cell_vertices() const;

  // max |z0| over P.
  double cell_radius() const;

  // |omega1| + |omega2|; the scale for absolute tolerances.
  double period_scale() const { return std::abs(omega1_) + std::abs(omega2_); }

  // Im(omega1 * conj(omega2)); nonzero for a valid lattice.
  double oriented_area() const;

  cplx point(std::int64_t k, std::int64_t l) const {
    return static_cast<double>(k) * omega1_ + static_cast<double>(l) * omega2_;
  }

 private:
  friend Lattice reduce_basis(cplx, cplx);
  friend Lattice reduce_basis_exact(const GaussianRational&, const GaussianRational&);
  Lattice() = default;
  void check_invariants() const;

  cplx omega1_{1.0, 0.0};
  cplx omega2_{0.0, 1.0};
  cplx tau_{0.0, 1.0};
  BasisChange reduction_{};
  std::array<cplx, 2> input_{};
  std::optional<std::array<GaussianRational, 2>> exact_;
};

// Throws DegenerateBasis when w1, w2 are zero or R-linearly dependent.
Lattice reduce_basis(cplx w1, cplx w2);

// Exact-input mode: the reduction is decided in exact arithmetic and the
// reduced periods are kept as Gaussian rationals.
Lattice reduce_basis_exact(const GaussianRational& w1, const GaussianRational& w2);

// "w1,w2" with complex literals as accepted by parse_gaussian.
Lattice parse_lattice(std::string_view spec);

struct LatticeCoords {
  std::int64_t k = 0;
  std::int64_t l = 0;
  friend bool operator==(const LatticeCoords&, const LatticeCoords&) = default;
};

// Absolute snap tolerance used by decompose.
inline constexpr double kLatticeSnap = 1e-8;

// w = k*omega1 + l*omega2; throws NotLatticePoint if w is farther than
// kLatticeSnap from the lattice.
LatticeCoords decompose(const Lattice& lat, cplx w);

// c with |k|, |l| <= c|w| for every lattice vector w = k omega1 + l omega2.
double cosine_constant(const Lattice& lat);

struct CellReduction {
  cplx z0;
  std::int64_t m = 0;
  std::int64_t n = 0;
};

// z = z0 + m*omega1 + n*omega2 with z0 in P. On the boundary of P the
// representative with lexicographically smallest (m, n) is chosen.
CellReduction reduce_to_cell(const Lattice& lat, cplx z);

// Real coordinates (s, t) with z = s*omega1 + t*omega2.
std::array<double, 2> real_coordinates(const Lattice& lat, cplx z);

}  // namespace sigcount
