#include "sigcount/elliptic.hpp"

#include <cmath>
#include <limits>

#include "sigcount/error.hpp"

namespace sigcount {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr int kMaxSeriesTerms = 100000;

void check_tau_tol(cplx tau, double tol) {
  if (!(tau.imag() >= 0.5))
    fail(Errc::InvalidArgument, "Eisenstein series need Im(tau) >= 0.5; reduce tau first");
  if (!(tol > 0 && tol < 1e-3)) fail(Errc::InvalidArgument, "tolerance must lie in (0, 1e-3)");
}

// 1 + scale * sum_{n>=1} n^k q^n / (1 - q^n), truncated once a bound on the
// remaining tail is below tol.
cplx lambert_series(cplx tau, double tol, int k, double scale) {
  check_tau_tol(tau, tol);
  const cplx q = std::exp(2.0 * kPi * kI * tau);
  const double aq = std::abs(q);
  if (aq >= 1.0 - 1e-9) fail(Errc::PrecisionUnreachable, "|q| too close to 1");
  cplx sum = 0.0;
  cplx qn = 1.0;
  for (int n = 1; n <= kMaxSeriesTerms; ++n) {
    qn *= q;
    const double nk = std::pow(static_cast<double>(n), k);
    sum += nk * qn / (1.0 - qn);
    // Tail sum_{m>n} m^k |q|^m / (1-|q|) <= first * 1/(1-ratio) when ratio < 1.
    const double next = std::pow(static_cast<double>(n + 1), k) * std::pow(aq, n + 1);
    const double ratio = std::pow(static_cast<double>(n + 2) / (n + 1), k) * aq;
    if (ratio < 1.0) {
      const double tail = std::abs(scale) * next / ((1.0 - aq) * (1.0 - ratio));
      if (tail < tol) return 1.0 + scale * sum;
    }
  }
  fail(Errc::PrecisionUnreachable, "q-series did not reach the requested tolerance");
}

double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

}  // namespace

double digits_to_tol(int digits) {
  if (digits < 4 || digits > 300) fail(Errc::InvalidArgument, "digits must lie in [4, 300]");
  return std::pow(10.0, -digits);
}

cplx eisenstein_E2(cplx tau, double tol) { return lambert_series(tau, tol, 1, -24.0); }
cplx eisenstein_E4(cplx tau, double tol) { return lambert_series(tau, tol, 3, 240.0); }
cplx eisenstein_E6(cplx tau, double tol) { return lambert_series(tau, tol, 5, -504.0); }

QuasiPeriodData quasi_periods_normalized(cplx tau, double tol) {
  QuasiPeriodData d;
  d.q = std::exp(2.0 * kPi * kI * tau);
  d.E2 = eisenstein_E2(tau, tol);
  d.eta1 = kPi * kPi / 3.0 * d.E2;
  d.eta2 = d.eta1 * tau - 2.0 * kPi * kI;
  const double pi4 = std::pow(kPi, 4), pi6 = std::pow(kPi, 6);
  d.g2 = 4.0 * pi4 / 3.0 * eisenstein_E4(tau, tol);
  d.g3 = 8.0 * pi6 / 27.0 * eisenstein_E6(tau, tol);
  return d;
}

QuasiPeriodData quasi_periods(const Lattice& lat, double tol) {
  QuasiPeriodData d = quasi_periods_normalized(lat.tau(), tol);
  const cplx w = lat.omega1();
  d.eta1 /= w;
  d.eta2 /= w;
  d.g2 /= std::pow(w, 4);
  d.g3 /= std::pow(w, 6);
  return d;
}

SigmaEvaluator::SigmaEvaluator(const Lattice& lat, double tol)
    : lat_(lat), data_(quasi_periods(lat, std::min(tol, 1e-4))), tol_(tol) {
  const cplx w = lat_.omega1();
  eta1n_ = data_.eta1 * w;
  eta2n_ = data_.eta2 * w;
  const cplx tau = lat_.tau();
  nome_ = std::exp(kPi * kI * tau);
  cplx deriv0 = 0.0;
  for (int n = 0; n < 64; ++n) {
    const double h = n + 0.5;
    const cplx c = 2.0 * (n % 2 == 0 ? 1.0 : -1.0) * std::exp(kPi * kI * tau * (h * h));
    if (std::abs(c) < 1e-300) break;
    theta_coeffs_.push_back(c);
    deriv0 += c * static_cast<double>(2 * n + 1);
  }
  log_theta_prime0_pi_ = std::log(kPi * deriv0);
  guard_ = 1e-8 * lat_.period_scale();
}

SigmaEvaluator::ThetaValues SigmaEvaluator::theta1(cplx v) const {
  ThetaValues out{0.0, 0.0};
  const double growth = std::abs(v.imag());
  for (std::size_t n = 0; n < theta_coeffs_.size(); ++n) {
    const double k = 2.0 * n + 1.0;
    const cplx kv = k * v;
    out.theta += theta_coeffs_[n] * std::sin(kv);
    out.theta_prime += theta_coeffs_[n] * k * std::cos(kv);
    const double bound = std::abs(theta_coeffs_[n]) * k * std::exp(k * growth);
    if (n > 0 && bound < 0.5 * tol_ * std::abs(out.theta)) break;
  }
  return out;
}

void SigmaEvaluator::cell_terms(cplx u0, cplx& log_sigma0, cplx& zeta0) const {
  const ThetaValues th = theta1(kPi * u0);
  log_sigma0 = eta1n_ * u0 * u0 * 0.5 + std::log(th.theta) - log_theta_prime0_pi_;
  zeta0 = eta1n_ * u0 + kPi * th.theta_prime / th.theta;
}

cplx SigmaEvaluator::sigma_normalized_cell(cplx u) const {
  const ThetaValues th = theta1(kPi * u);
  return std::exp(eta1n_ * u * u * 0.5 - log_theta_prime0_pi_) * th.theta;
}

cplx SigmaEvaluator::sigma_normalized_unreduced(cplx u) const {
  // theta_1(v) = sum_n (-1)^n / i * (e^{i pi tau h^2 + i k v} - e^{i pi tau h^2 - i k v}),
  // exponents combined before exponentiation so large |Im v| does not overflow early.
  const cplx tau = lat_.tau();
  const cplx v = kPi * u;
  const double y = tau.imag();
  const double peak = std::abs(v.imag()) / (kPi * y);
  cplx sum = 0.0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    const double h = n + 0.5;
    const double k = 2.0 * n + 1.0;
    const cplx base = kPi * kI * tau * (h * h);
    const cplx t = (std::exp(base + kI * k * v) - std::exp(base - kI * k * v)) / kI;
    sum += (n % 2 == 0 ? 1.0 : -1.0) * t;
    if (h > peak + 1 && std::abs(t) < 0.25 * tol_ * std::abs(sum)) break;
  }
  return std::exp(eta1n_ * u * u * 0.5 - log_theta_prime0_pi_) * sum;
}

namespace {

// (m eta1 + n eta2)(u0 + m/2 + n tau/2) for the normalized lattice.
cplx quasi_exponent(cplx eta1, cplx eta2, cplx tau, cplx u0, std::int64_t m, std::int64_t n) {
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  return (md * eta1 + nd * eta2) * (u0 + 0.5 * md + 0.5 * nd * tau);
}

bool odd_sign(std::int64_t m, std::int64_t n) {
  // parity of m + n + m n
  const bool mo = (m & 1) != 0, no = (n & 1) != 0;
  return (mo || no);
}

}  // namespace

cplx SigmaEvaluator::sigma(cplx z) const {
  const CellReduction cell = reduce_to_cell(lat_, z);
  if (cell.z0 == cplx(0.0, 0.0)) return 0.0;
  const cplx w = lat_.omega1();
  const cplx u0 = cell.z0 / w;
  const cplx e = quasi_exponent(eta1n_, eta2n_, lat_.tau(), u0, cell.m, cell.n);
  const cplx s = w * sigma_normalized_cell(u0) * std::exp(e);
  return odd_sign(cell.m, cell.n) ? -s : s;
}

SigmaEvaluator::LogSigmaZeta SigmaEvaluator::log_sigma_zeta(cplx z) const {
  const CellReduction cell = reduce_to_cell(lat_, z);
  if (std::abs(cell.z0) < guard_) fail(Errc::LatticePoint, "point is on (or too near) the lattice");
  const cplx w = lat_.omega1();
  const cplx u0 = cell.z0 / w;
  cplx log_s0, zeta0;
  cell_terms(u0, log_s0, zeta0);
  const cplx e = quasi_exponent(eta1n_, eta2n_, lat_.tau(), u0, cell.m, cell.n);
  const cplx total = std::log(w) + log_s0 + e;
  LogSigmaZeta out;
  out.log_sigma.log_abs = total.real();
  out.log_sigma.arg = wrap_angle(total.imag() + (odd_sign(cell.m, cell.n) ? kPi : 0.0));
  const double md = static_cast<double>(cell.m), nd = static_cast<double>(cell.n);
  out.zeta = (zeta0 + md * eta1n_ + nd * eta2n_) / w;
  return out;
}

LogSigma SigmaEvaluator::log_sigma(cplx z) const { return log_sigma_zeta(z).log_sigma; }
cplx SigmaEvaluator::zeta(cplx z) const { return log_sigma_zeta(z).zeta; }

double SigmaEvaluator::log_abs_sigma_cell(const CellReduction& cell) const {
  if (cell.z0 == cplx(0.0, 0.0)) return -std::numeric_limits<double>::infinity();
  return log_abs_sigma_polar(std::log(std::abs(cell.z0)), std::arg(cell.z0), cell.m, cell.n);
}

double SigmaEvaluator::log_abs_sigma_polar(double log_abs_z0, double arg_z0, std::int64_t m,
                                           std::int64_t n) const {
  const cplx w = lat_.omega1();
  const double log_w = std::log(std::abs(w));
  cplx u0 = 0.0;
  double log_s0;
  if (log_abs_z0 - log_w < -30.0) {
    // sigma(u) = u (1 + O(u^4)) far below double resolution; u0 -> 0 in the exponent.
    log_s0 = log_abs_z0 - log_w;
  } else {
    u0 = std::polar(std::exp(log_abs_z0), arg_z0) / w;
    cplx ls, zt;
    cell_terms(u0, ls, zt);
    log_s0 = ls.real();
  }
  const cplx e = quasi_exponent(eta1n_, eta2n_, lat_.tau(), u0, m, n);
  return log_w + log_s0 + e.real();
}

cplx sigma(const Lattice& lat, cplx z, double tol) { return SigmaEvaluator(lat, tol).sigma(z); }
LogSigma log_sigma(const Lattice& lat, cplx z, double tol) {
  return SigmaEvaluator(lat, tol).log_sigma(z);
}
cplx zeta_w(const Lattice& lat, cplx z, double tol) { return SigmaEvaluator(lat, tol).zeta(z); }

}  // namespace sigcount
