#pragma once

#include <vector>

#include "sigcount/lattice.hpp"

namespace sigcount {

// Series truncation target derived from a decimal-digit precision setting.
// Arithmetic is binary64 throughout; digits beyond ~16 only tighten the
// truncation of the q-series, not the rounding of the sums.
double digits_to_tol(int digits);

inline constexpr int kDefaultDigits = 30;

// Quasi-periods are in the doubled convention: zeta(z + omega_i) = zeta(z) + eta_i,
// so that eta1*omega2 - eta2*omega1 = 2 pi i.
struct QuasiPeriodData {
  cplx eta1;
  cplx eta2;
  cplx g2;
  cplx g3;
  cplx E2;  // at the reduced tau
  cplx q;   // exp(2 pi i tau)
};

// Overflow-safe sigma value: sigma = exp(log_abs + i*arg).
struct LogSigma {
  double log_abs = 0;
  double arg = 0;  // in (-pi, pi]
};

// E2(tau) = 1 - 24 sum n q^n/(1-q^n). Requires Im(tau) >= 0.5 and 0 < tol < 1e-3.
cplx eisenstein_E2(cplx tau, double tol);
cplx eisenstein_E4(cplx tau, double tol);
cplx eisenstein_E6(cplx tau, double tol);

// Invariants of the normalized lattice Z + Z tau.
QuasiPeriodData quasi_periods_normalized(cplx tau, double tol);

// Invariants of the actual lattice (scaled from Z + Z tau by omega1).
QuasiPeriodData quasi_periods(const Lattice& lat, double tol);

// Weierstrass sigma, zeta and their log-scale forms for one lattice. The
// theta-series coefficients are computed once at construction; afterwards the
// object is immutable and safe to share between threads.
class SigmaEvaluator {
 public:
  // tol is the series-truncation target (see digits_to_tol).
  explicit SigmaEvaluator(const Lattice& lat, double tol = 1e-30);

  const Lattice& lattice() const { return lat_; }
  const QuasiPeriodData& data() const { return data_; }
  // Quasi-periods of Z + Z tau (eta_i * omega1).
  cplx eta1_normalized() const { return eta1n_; }
  cplx eta2_normalized() const { return eta2n_; }
  double tol() const { return tol_; }

  // Theta quotient at the reduced representative plus the quasi-periodicity
  // factor. Exactly zero when z reduces exactly onto a lattice point. Values
  // overflow to infinity once log|sigma| exceeds ~709; use log_sigma there.
  cplx sigma(cplx z) const;

  // Throws LatticePoint within 1e-8*(|omega1|+|omega2|) of the lattice.
  LogSigma log_sigma(cplx z) const;
  cplx zeta(cplx z) const;

  struct LogSigmaZeta {
    LogSigma log_sigma;
    cplx zeta;
  };
  LogSigmaZeta log_sigma_zeta(cplx z) const;

  // log|sigma(z)| for z given in cell form z = z0 + m omega1 + n omega2.
  double log_abs_sigma_cell(const CellReduction& cell) const;
  // Same, with z0 = exp(log_abs_z0 + i arg_z0) so that z0 may lie far below
  // the double range (sigma(z0) = z0 to working precision there).
  double log_abs_sigma_polar(double log_abs_z0, double arg_z0, std::int64_t m, std::int64_t n) const;

  // Theta quotient for Z + Z tau evaluated at u with no reduction at all.
  // Used to cross-check the reduced path; accurate for moderate |u|.
  cplx sigma_normalized_unreduced(cplx u) const;

  // sigma_{Z+Z tau}(u) and its log derivative for u near the cell.
  cplx sigma_normalized_cell(cplx u) const;

 private:
  struct ThetaValues {
    cplx theta;        // theta_1(v)
    cplx theta_prime;  // theta_1'(v)
  };
  ThetaValues theta1(cplx v) const;
  void cell_terms(cplx u0, cplx& log_sigma0, cplx& zeta0) const;

  Lattice lat_;
  QuasiPeriodData data_;
  double tol_;
  cplx eta1n_, eta2n_;
  cplx nome_;                       // exp(i pi tau)
  std::vector<cplx> theta_coeffs_;  // 2 (-1)^n nome^{(n+1/2)^2}
  cplx log_theta_prime0_pi_;        // log(pi theta_1'(0))
  double guard_;
};

cplx sigma(const Lattice& lat, cplx z, double tol);
LogSigma log_sigma(const Lattice& lat, cplx z, double tol);
cplx zeta_w(const Lattice& lat, cplx z, double tol);

}  // namespace sigcount
