#pragma once

#include <vector>

#include "sigcount/elliptic.hpp"

namespace sigcount {

// 24 e^{-2 pi y} / (1 - e^{-2 pi y})^3, for y > 0.
double phi(double y);

// y_0 = sqrt(3)/2, y_{n+1} = 6 (1 - phi(y_n)) / (pi (1 + phi(y_n))^2). Returns y_0..y_steps.
std::vector<double> threshold_iteration(int steps);

inline constexpr double kImTauLimit = 1.9;

struct Discriminant {
  double value;        // first (real-part) formula
  double alternative;  // Im(tau) (|eta1|^2 Im(tau) - 2 pi Re(eta1))
};

// Both formulas for the quasi-periods of Z + Z tau. Throws FormulaMismatch if
// they disagree by more than 1e-8 relative.
Discriminant discriminant(const QuasiPeriodData& normalized, cplx tau);

struct GrowthCertificate {
  double delta_disc = 0;   // always < 0
  double c1 = 0;
  double c2 = 0;
  double c = 0;            // |sigma(z)| >= |sigma(z0)| e^{c |z|^2} for |z| >= r
  double r = 1;
  double delta_sigma = 0;  // |log|sigma(w)| - log|w|| <= 1 on P once log|sigma(w)| <= -delta_sigma
  // |sigma(z)| <= upper_c1 e^{upper_c2 |z|^2} for all z.
  double upper_c1 = 0;
  double upper_c2 = 0;
  // Normalized-lattice values the transported constants came from.
  double c_normalized = 0;
  double r_normalized = 0;
  double cell_radius_normalized = 0;
};

struct CertificateOptions {
  bool search_delta = true;
  int grid = 400;    // cells per side for the delta search
  int refine = 4;    // verification grid = grid * refine
  int boundary_samples = 4096;
};

// Throws ImTauTooLarge if Im(tau) > 1.9 and PositiveDiscriminant if Delta >= 0.
GrowthCertificate build_certificate(const Lattice& lat, double tol,
                                    const CertificateOptions& opts = {});

// Checks c1 M^2 - c2 M >= c |z|^2 at M = (|z| - p)/(1 + |tau|) for |z| = r
// and at a spread of larger radii (normalized lattice).
bool certificate_inequality_holds(const GrowthCertificate& cert, cplx tau);

// Smallest delta of the form k/10 passing the sublevel test on a grid of P.
double search_delta_sigma(const SigmaEvaluator& ev, int grid, int refine);

struct DeltaRangeReport {
  double y_lo = 0, y_hi = 0;
  int samples = 0;
  double min_delta = 0, max_delta = 0;
  int violations = 0;                 // grid points with Delta >= -1e-6
  std::vector<cplx> violating_taus;   // first few
  bool sufficient_condition = true;   // y < 6(1-phi)/(pi(1+phi)^2) at every sampled y
  bool within_certified_range = true; // y_hi <= 1.9; beyond it results are reported, not asserted
};

// Samples tau = x + iy with x in [-1/2, 1/2], |tau| >= 1, y in [y_lo, y_hi]
// on a grid x grid mesh.
DeltaRangeReport delta_check_range(double y_lo, double y_hi, int grid);

}  // namespace sigcount
