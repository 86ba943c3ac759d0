#include "sigcount/growth.hpp"

#include <algorithm>
#include <cmath>

#include "sigcount/error.hpp"

namespace sigcount {

double phi(double y) {
  if (!(y > 0)) fail(Errc::InvalidArgument, "phi needs y > 0");
  const double e = std::exp(-2.0 * kPi * y);
  const double d = -std::expm1(-2.0 * kPi * y);
  return 24.0 * e / (d * d * d);
}

std::vector<double> threshold_iteration(int steps) {
  if (steps < 1) fail(Errc::InvalidArgument, "steps must be >= 1");
  std::vector<double> ys{std::sqrt(3.0) / 2.0};
  for (int i = 0; i < steps; ++i) {
    const double p = phi(ys.back());
    ys.push_back(6.0 * (1.0 - p) / (kPi * (1.0 + p) * (1.0 + p)));
  }
  return ys;
}

Discriminant discriminant(const QuasiPeriodData& qp, cplx tau) {
  const cplx e1 = qp.eta1, e2 = qp.eta2;
  const double a = ((e1 * tau + e2) / 2.0).real();
  const double d1 = a * a - 4.0 * (e1 / 2.0).real() * (e2 * tau / 2.0).real();
  const double y = tau.imag();
  const double d2 = y * (std::norm(e1) * y - 2.0 * kPi * e1.real());
  if (std::abs(d1 - d2) > 1e-8 * std::max({std::abs(d1), std::abs(d2), 1e-300}))
    fail(Errc::FormulaMismatch, "discriminant formulas disagree: " + std::to_string(d1) +
                                    " vs " + std::to_string(d2));
  return {d1, d2};
}

namespace {

struct NormalizedConstants {
  double c1, c2, c, r, p, k;
};

NormalizedConstants normalized_constants(double delta, const QuasiPeriodData& qp, cplx tau,
                                         double p) {
  const double c1 = std::min(std::abs(delta / (4.0 * (qp.eta2 * tau / 2.0).real())),
                             std::abs(delta / (4.0 * (qp.eta1 / 2.0).real())));
  const double a = 1.0 + std::abs(tau);
  const double c2 = a * std::max(std::abs(qp.eta1), std::abs(qp.eta2));
  const double c = c1 / (2.0 * a * a);
  // c1 M^2 - c2 M >= c x^2 at M = (x - p)/a reduces to
  // x^2 - 2(2p + k)x + 2(p^2 + kp) >= 0 with k = c2 a / c1.
  const double k = c2 * a / c1;
  const double r = (2.0 * p + k) + std::sqrt(2.0 * p * p + 2.0 * k * p + k * k);
  return {c1, c2, c, r, p, k};
}

double quadratic_margin(double c1, double c2, double c, double p, double a, double x) {
  const double m = (x - p) / a;
  return c1 * m * m - c2 * m - c * x * x;
}

}  // namespace

bool certificate_inequality_holds(const GrowthCertificate& cert, cplx tau) {
  const double a = 1.0 + std::abs(tau);
  const double p = cert.cell_radius_normalized;
  const double x0 = cert.r_normalized;
  for (int i = 0; i <= 40; ++i) {
    const double x = x0 * (1.0 + 0.25 * i * i);
    const double m = quadratic_margin(cert.c1, cert.c2, cert.c_normalized, p, a, x);
    if (m < -1e-9 * cert.c_normalized * x * x) return false;
  }
  return true;
}

double search_delta_sigma(const SigmaEvaluator& ev, int grid, int refine) {
  const Lattice& lat = ev.lattice();
  auto worst_violation = [&](int n) {
    // max of -log|sigma(w)| over grid midpoints violating |log|sigma| - log|w|| <= 1
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double s = -0.5 + (i + 0.5) / n;
      for (int j = 0; j < n; ++j) {
        const double t = -0.5 + (j + 0.5) / n;
        const cplx w = s * lat.omega1() + t * lat.omega2();
        const double ls = ev.log_sigma(w).log_abs;
        if (std::abs(ls - std::log(std::abs(w))) > 1.0) worst = std::max(worst, -ls);
      }
    }
    return worst;
  };
  auto round_up = [](double worst) {
    int k = 1;
    if (std::isfinite(worst)) k = std::max(1, static_cast<int>(std::floor(worst * 10.0)) + 1);
    return k;
  };
  int k = round_up(worst_violation(grid));
  const double fine = worst_violation(grid * refine);
  k = std::max(k, round_up(fine));
  return k / 10.0;
}

GrowthCertificate build_certificate(const Lattice& lat, double tol,
                                    const CertificateOptions& opts) {
  const cplx tau = lat.tau();
  if (tau.imag() > kImTauLimit)
    fail(Errc::ImTauTooLarge, "Im(tau) = " + std::to_string(tau.imag()) + " exceeds 1.9");
  SigmaEvaluator ev(lat, tol);
  const QuasiPeriodData qn = quasi_periods_normalized(tau, std::max(tol, 1e-30));
  const Discriminant disc = discriminant(qn, tau);
  if (!(disc.value < 0)) fail(Errc::PositiveDiscriminant, "discriminant is not negative");

  GrowthCertificate cert;
  cert.delta_disc = disc.value;
  const double p = 0.5 * std::max(std::abs(1.0 + tau), std::abs(1.0 - tau));
  const NormalizedConstants nc = normalized_constants(disc.value, qn, tau, p);
  cert.c1 = nc.c1;
  cert.c2 = nc.c2;
  cert.c_normalized = nc.c;
  cert.r_normalized = nc.r;
  cert.cell_radius_normalized = p;
  const double w = std::abs(lat.omega1());
  cert.c = nc.c / (w * w);
  cert.r = std::max(1.0, nc.r * w);
  if (!certificate_inequality_holds(cert, tau))
    fail(Errc::FormulaMismatch, "growth certificate failed its own quadratic check");

  // Upper bound: log|sigma'(u)| <= log Smax + max|eta| c_cos (2|u|^2 + 7p^2) where Smax
  // bounds sigma' on P' (maximum modulus: sampled on the boundary, 10% margin).
  double smax = 0;
  const int per_edge = std::max(16, opts.boundary_samples / 4);
  const cplx verts[4] = {(1.0 + tau) / 2.0, (-1.0 + tau) / 2.0, (-1.0 - tau) / 2.0,
                         (1.0 - tau) / 2.0};
  for (int e = 0; e < 4; ++e)
    for (int i = 0; i < per_edge; ++i) {
      const cplx u = verts[e] + (verts[(e + 1) % 4] - verts[e]) * (double(i) / per_edge);
      smax = std::max(smax, std::abs(ev.sigma_normalized_cell(u)));
    }
  smax *= 1.1;
  const double eta_max = std::max(std::abs(qn.eta1), std::abs(qn.eta2));
  const double c_cos = std::abs(tau) / tau.imag();
  cert.upper_c1 = w * smax * std::exp(eta_max * c_cos * 7.0 * p * p);
  cert.upper_c2 = 2.0 * eta_max * c_cos / (w * w);

  if (opts.search_delta) cert.delta_sigma = search_delta_sigma(ev, opts.grid, opts.refine);
  return cert;
}

DeltaRangeReport delta_check_range(double y_lo, double y_hi, int grid) {
  if (!(y_lo >= std::sqrt(3.0) / 2.0 - 1e-12) || !(y_hi >= y_lo) || grid < 1)
    fail(Errc::InvalidArgument, "need sqrt(3)/2 <= y_lo <= y_hi and grid >= 1");
  DeltaRangeReport rep;
  rep.y_lo = y_lo;
  rep.y_hi = y_hi;
  rep.within_certified_range = y_hi <= kImTauLimit;
  rep.min_delta = std::numeric_limits<double>::infinity();
  rep.max_delta = -std::numeric_limits<double>::infinity();
  for (int iy = 0; iy < grid; ++iy) {
    const double y = grid == 1 ? y_lo : y_lo + (y_hi - y_lo) * iy / (grid - 1);
    const double p = phi(y);
    if (!(y < 6.0 * (1.0 - p) / (kPi * (1.0 + p) * (1.0 + p)))) rep.sufficient_condition = false;
    for (int ix = 0; ix < grid; ++ix) {
      const double x = grid == 1 ? 0.0 : -0.5 + double(ix) / (grid - 1);
      const cplx tau{x, y};
      if (std::abs(tau) < 1.0 - 1e-12) continue;
      const double d = discriminant(quasi_periods_normalized(tau, 1e-20), tau).value;
      ++rep.samples;
      rep.min_delta = std::min(rep.min_delta, d);
      rep.max_delta = std::max(rep.max_delta, d);
      if (d >= -1e-6) {
        ++rep.violations;
        if (rep.violating_taus.size() < 16) rep.violating_taus.push_back(tau);
      }
    }
  }
  return rep;
}

}  // namespace sigcount
