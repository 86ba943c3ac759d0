#include "sigcount/zerocount.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "sigcount/auxpoly.hpp"
#include "sigcount/error.hpp"
#include "sigcount/poly.hpp"

namespace sigcount {

namespace {
constexpr cplx kI{0.0, 1.0};
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double wrap(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}
}  // namespace

// ---------------------------------------------------------------- polynomial

BivariatePoly::BivariatePoly(std::vector<std::vector<double>> c) : c_(std::move(c)) { normalize(); }

void BivariatePoly::normalize() {
  std::size_t w = 0;
  for (auto& row : c_) w = std::max(w, row.size());
  for (auto& row : c_) row.resize(w, 0.0);
  deg_x_ = deg_y_ = -1;
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < w; ++j)
      if (c_[i][j] != 0) {
        deg_x_ = std::max(deg_x_, static_cast<int>(i));
        deg_y_ = std::max(deg_y_, static_cast<int>(j));
      }
  c_.resize(deg_x_ + 1);
  for (auto& row : c_) row.resize(deg_y_ + 1);
}

double BivariatePoly::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i > deg_x_ || j > deg_y_) return 0.0;
  return c_[i][j];
}

int BivariatePoly::total_degree() const {
  int t = -1;
  for (int i = 0; i <= deg_x_; ++i)
    for (int j = 0; j <= deg_y_; ++j)
      if (c_[i][j] != 0) t = std::max(t, i + j);
  return t;
}

bool BivariatePoly::has_integer_coefficients() const {
  for (const auto& row : c_)
    for (double v : row)
      if (v != std::round(v) || std::abs(v) > 9.0e15) return false;
  return true;
}

double BivariatePoly::max_abs_coefficient() const {
  double m = 0;
  for (const auto& row : c_)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

cplx BivariatePoly::coeff_poly(int j, cplx x) const {
  cplx acc = 0.0;
  for (int i = deg_x_; i >= 0; --i) acc = acc * x + coeff(i, j);
  return acc;
}

cplx BivariatePoly::coeff_poly_derivative(int j, cplx x) const {
  cplx acc = 0.0;
  for (int i = deg_x_; i >= 1; --i) acc = acc * x + static_cast<double>(i) * coeff(i, j);
  return acc;
}

cplx BivariatePoly::eval(cplx x, cplx y) const {
  cplx acc = 0.0;
  for (int j = deg_y_; j >= 0; --j) acc = acc * y + coeff_poly(j, x);
  return acc;
}

std::string BivariatePoly::to_string() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (int t = deg_x_ + deg_y_; t >= 0; --t)
    for (int i = std::min(t, deg_x_); i >= 0; --i) {
      const int j = t - i;
      const double v = coeff(i, j);
      if (v == 0) continue;
      if (!first) os << (v > 0 ? " + " : " - ");
      else if (v < 0) os << '-';
      first = false;
      const double a = std::abs(v);
      const bool unit = a == 1 && t > 0;
      if (!unit) os << a;
      if (i > 0) os << (unit ? "" : "*") << "X" << (i > 1 ? "^" + std::to_string(i) : "");
      if (j > 0) os << ((unit && i == 0) ? "" : "*") << "Y" << (j > 1 ? "^" + std::to_string(j) : "");
    }
  if (first) os << '0';
  return os.str();
}

BivariatePoly BivariatePoly::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto bad = [&](const std::string& why) -> BivariatePoly {
    fail(Errc::InvalidArgument, "cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  if (s.empty()) return bad("empty");
  std::vector<std::vector<double>> c;
  auto add = [&](int i, int j, double v) {
    if (static_cast<int>(c.size()) <= i) c.resize(i + 1);
    if (static_cast<int>(c[i].size()) <= j) c[i].resize(j + 1, 0.0);
    c[i][j] += v;
  };
  std::size_t pos = 0;
  auto read_int = [&]() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) bad("expected exponent");
    return std::stoi(s.substr(start, pos - start));
  };
  while (pos < s.size()) {
    double sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      return bad("expected + or -");
    }
    double coef = 1;
    int i = 0, j = 0;
    bool any = false;
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
      if (s[pos] == '*') {
        if (!any) bad("dangling *");
        ++pos;
        continue;
      }
      const char ch = static_cast<char>(std::toupper(static_cast<unsigned char>(s[pos])));
      if (ch == 'X' || ch == 'Y') {
        ++pos;
        int e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          e = read_int();
        }
        (ch == 'X' ? i : j) += e;
      } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        std::size_t used = 0;
        double v = 0;
        try {
          v = std::stod(s.substr(pos), &used);
        } catch (const std::exception&) {
          bad("bad number");
        }
        // stod would swallow an exponent marker 'e'; polynomials do not use one.
        pos += used;
        coef *= v;
      } else {
        return bad(std::string("unexpected '") + s[pos] + "'");
      }
      any = true;
    }
    if (!any) return bad("empty term");
    add(i, j, sign * coef);
  }
  BivariatePoly p(std::move(c));
  if (p.is_zero()) bad("polynomial is zero");
  return p;
}

// ---------------------------------------------------------------- F = P(z, sigma(z))

namespace {

struct FValue {
  cplx log_f;  // log F, imaginary part is an argument of F
  cplx dlog;   // F'/F
  bool near_zero = false;
};

// F and F'/F in scaled form: every term is divided by the largest one before summing.
FValue evaluate_f(const SigmaEvaluator& ev, const BivariatePoly& P, cplx z, double near_zero) {
  FValue out;
  const int k = P.deg_y();
  cplx ls = 0.0, zeta = 0.0;
  if (k > 0) {
    auto lz = ev.log_sigma_zeta(z);
    ls = {lz.log_sigma.log_abs, lz.log_sigma.arg};
    zeta = lz.zeta;
  }
  std::vector<cplx> cj(k + 1), aj(k + 1);
  double s = kNegInf;
  for (int j = 0; j <= k; ++j) {
    cj[j] = P.coeff_poly(j, z);
    aj[j] = P.coeff_poly_derivative(j, z) + static_cast<double>(j) * cj[j] * zeta;
    const double m = std::max(std::abs(cj[j]), std::abs(aj[j]));
    if (m > 0) s = std::max(s, std::log(m) + j * ls.real());
  }
  cplx f = 0.0, fp = 0.0;
  for (int j = 0; j <= k; ++j) {
    const cplx e = std::exp(static_cast<double>(j) * ls - s);
    f += cj[j] * e;
    fp += aj[j] * e;
  }
  if (f == cplx(0.0, 0.0)) {
    out.near_zero = true;
    return out;
  }
  out.log_f = s + std::log(f);
  out.dlog = fp / f;
  // |F/F'| approximates the distance to the nearest zero.
  if (std::abs(f) < near_zero * std::abs(fp)) out.near_zero = true;
  return out;
}

struct NearZero {};

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct ContourResult {
  bool ok = false;
  cplx integral{0, 0};  // integral of F'/F dz
  int panels = 0;
};

ContourResult integrate_circle(const SigmaEvaluator& ev, const BivariatePoly& P, double R, double near_zero) {
  auto f_at = [&](double th) {
    FValue v;
    try {
      v = evaluate_f(ev, P, std::polar(R, th), near_zero);
    } catch (const Error& e) {
      if (e.code() == Errc::LatticePoint) throw NearZero{};
      throw;
    }
    if (v.near_zero) throw NearZero{};
    return v;
  };
  // integrand in theta: F'/F * dz/dtheta = F'/F * i z
  auto g = [&](double th) { return f_at(th).dlog * kI * std::polar(R, th); };

  ContourResult res;
  struct Panel {
    double a, b;
    cplx log_a, log_b;
    int depth;
  };
  const int n0 = std::max(32, static_cast<int>(std::ceil(16 * R)));
  std::vector<Panel> stack;
  try {
    std::vector<cplx> logs(n0 + 1);
    for (int i = 0; i <= n0; ++i) logs[i] = f_at(2 * kPi * i / n0).log_f;
    for (int i = n0 - 1; i >= 0; --i)
      stack.push_back({2 * kPi * i / n0, 2 * kPi * (i + 1) / n0, logs[i], logs[i + 1], 0});
    while (!stack.empty()) {
      Panel p = stack.back();
      stack.pop_back();
      const double c = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
      cplx k15 = kWgk[7] * g(c), g7 = kWg[3] * g(c);
      for (int t = 0; t < 7; ++t) {
        const cplx s = g(c - h * kXgk[t]) + g(c + h * kXgk[t]);
        k15 += kWgk[t] * s;
        if (t % 2 == 1) g7 += kWg[t / 2] * s;
      }
      k15 *= h;
      g7 *= h;
      const double err = std::abs(k15 - g7);
      const cplx diff = p.log_b - p.log_a;
      const bool consistent = std::abs(k15.real() - diff.real()) <= 1e-7 * std::max(1.0, std::abs(diff.real())) &&
                              std::abs(wrap(k15.imag() - diff.imag())) <= 1e-7;
      const bool good = err <= 1e-9 * std::max(1.0, std::abs(k15)) && std::abs(k15.imag()) < kPi / 2 && consistent;
      if (good) {
        res.integral += k15;
        ++res.panels;
        continue;
      }
      if (p.depth > 40 || h < 1e-13) return res;  // not ok
      const cplx lm = f_at(c).log_f;
      stack.push_back({c, p.b, lm, p.log_b, p.depth + 1});
      stack.push_back({p.a, c, p.log_a, lm, p.depth + 1});
    }
  } catch (const NearZero&) {
    return res;
  }
  res.ok = true;
  return res;
}

}  // namespace

ZeroCountReport count_zeros(const SigmaEvaluator& ev, const BivariatePoly& P, double R, const ZeroCountOptions& opts) {
  if (!(R >= 0.1)) fail(Errc::InvalidArgument, "radius must be >= 0.1");
  if (P.is_zero()) fail(Errc::InvalidArgument, "polynomial is zero");
  ZeroCountReport rep;
  rep.requested_radius = R;
  for (int attempt = 0; attempt <= opts.max_attempts; ++attempt) {
    const double r = R + attempt * opts.perturb_step;
    ContourResult c = integrate_circle(ev, P, r, opts.near_zero);
    if (!c.ok) continue;
    rep.radius = r;
    rep.perturbations = attempt;
    rep.panels = c.panels;
    rep.winding = c.integral / (2.0 * kPi * kI);
    const double n = std::round(rep.winding.real());
    rep.winding_residual = std::abs(rep.winding - cplx(n, 0.0));
    if (rep.winding_residual < 0.05) rep.count = static_cast<int>(n);
    if (opts.besson_c && R >= 2) rep.besson_bound = besson_bound(std::max(1, P.L()), R, *opts.besson_c);
    return rep;
  }
  fail(Errc::ContourStuck, "no admissible contour in [" + std::to_string(R) + ", " +
                               std::to_string(R + opts.max_attempts * opts.perturb_step) + "]");
}

double besson_bound(int L, double R, double c) {
  if (L < 1 || !(R >= 2) || !(c > 0)) fail(Errc::InvalidArgument, "besson_bound needs L >= 1, R >= 2, c > 0");
  const double t = R + std::sqrt(static_cast<double>(L));
  return c * L * t * t * std::log(R + L);
}

// ---------------------------------------------------------------- max modulus

std::vector<CircleMaximum> circle_maxima(const SigmaEvaluator& ev, double s, int seeds, double slack) {
  if (!(s > 0)) fail(Errc::InvalidArgument, "radius must be positive");
  auto f = [&](double th) {
    try {
      return ev.log_sigma(std::polar(s, th)).log_abs;
    } catch (const Error& e) {
      if (e.code() == Errc::LatticePoint) return kNegInf;
      throw;
    }
  };
  const int n = std::max(8, seeds);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = f(2 * kPi * i / n);
  std::vector<CircleMaximum> found;
  const double gr = (std::sqrt(5.0) - 1) / 2;
  for (int i = 0; i < n; ++i) {
    const double l = v[(i + n - 1) % n], r = v[(i + 1) % n];
    if (!(v[i] >= l && v[i] >= r) || v[i] == kNegInf) continue;
    double a = 2 * kPi * (i - 1) / n, b = 2 * kPi * (i + 1) / n;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = f(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = f(x1);
      }
    }
    CircleMaximum m{0.5 * (a + b), 0};
    m.log_abs = f(m.theta);
    if (v[i] > m.log_abs) m = {2 * kPi * i / n, v[i]};
    m.theta = std::fmod(m.theta + 2 * kPi, 2 * kPi);
    found.push_back(m);
  }
  if (found.empty()) fail(Errc::PrecisionUnreachable, "no maximum found on circle");
  double best = kNegInf;
  for (auto& m : found) best = std::max(best, m.log_abs);
  std::vector<CircleMaximum> out;
  for (auto& m : found) {
    if (m.log_abs < best - slack * std::max(1.0, std::abs(best))) continue;
    bool dup = false;
    for (auto& o : out)
      if (std::abs(wrap(o.theta - m.theta)) < 1e-7) dup = true;
    if (!dup) out.push_back(m);
  }
  std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.theta < y.theta; });
  return out;
}

double log_max_modulus_sigma(const SigmaEvaluator& ev, double s) {
  double best = kNegInf;
  for (const auto& m : circle_maxima(ev, s, 720, 0.0)) best = std::max(best, m.log_abs);
  return best;
}

double max_modulus_sigma(const SigmaEvaluator& ev, double s) { return std::exp(log_max_modulus_sigma(ev, s)); }

// ---------------------------------------------------------------- Jensen pipeline

namespace {

double log_abs_sum(const std::vector<cplx>& terms_log) {
  double m = kNegInf;
  for (auto& t : terms_log) m = std::max(m, t.real());
  if (m == kNegInf) return kNegInf;
  cplx acc = 0.0;
  for (auto& t : terms_log) acc += std::exp(t - m);
  return m + std::log(std::abs(acc));
}

}  // namespace

JensenReport jensen_pipeline(const SigmaEvaluator& ev, const BivariatePoly& P, int T, double H, int d, double R1,
                             const JensenOptions& opts) {
  if (T < 1 || d < 1 || !(H >= 1) || !(R1 > 0)) fail(Errc::InvalidArgument, "need T >= 1, d >= 1, H >= 1, R1 > 0");
  if (P.is_zero() || !P.has_integer_coefficients())
    fail(Errc::HypothesisUnmet, "polynomial must be nonzero with integer coefficients");
  if (P.total_degree() > T) fail(Errc::HypothesisUnmet, "total degree exceeds T");
  JensenReport rep;
  rep.log_coefficient_bound = log_coefficient_bound(d, T, H);
  if (std::log(P.max_abs_coefficient()) > rep.log_coefficient_bound + 1e-12)
    fail(Errc::HypothesisUnmet, "coefficient exceeds 2^{1/d}(T+1)^2 H^T");

  const int k = P.deg_y();
  if (k == 0) {
    rep.k_zero = true;
    IntPoly p;
    for (int i = 0; i <= P.deg_x(); ++i) p.push_back(static_cast<std::int64_t>(P.coeff(i, 0)));
    int n = 0;
    if (degree(p) >= 1)
      for (const auto& r : roots(p))
        if (std::abs(r) <= R1 * (1 + 1e-12)) ++n;
    rep.bound = n;
    return rep;
  }

  rep.search_radius = opts.witness_c * T + T + 14;
  bool found = false;
  for (double s = opts.step; s <= rep.search_radius + 1e-12 && !found; s += opts.step) {
    for (const auto& m : circle_maxima(ev, s, opts.seeds)) {
      const cplx w = std::polar(s, m.theta);
      const auto ls = ev.log_sigma(w);
      const cplx lsc{ls.log_abs, ls.arg};
      const double r_abs = std::abs(P.coeff_poly(k, w));
      if (r_abs < 1) continue;
      // P~(w, 1/sigma) = sum_j c_j(w) sigma^{j-k}
      std::vector<cplx> terms;
      for (int j = 0; j <= k; ++j) {
        const cplx c = P.coeff_poly(j, w);
        if (c != cplx(0, 0)) terms.push_back(std::log(c) + static_cast<double>(j - k) * lsc);
      }
      const double log_pt = log_abs_sum(terms);
      const double log_f = log_pt + k * ls.log_abs;
      if (log_pt < std::log(0.5) || log_f < std::log(0.5)) continue;
      rep.witness = w;
      rep.witness_abs_R = r_abs;
      rep.witness_abs_Ptilde = std::exp(log_pt);
      rep.witness_log_abs_F = log_f;
      found = true;
      break;
    }
  }
  if (!found)
    fail(Errc::WitnessNotFound, "no witness with |R(w)| >= 1 and |P(w, sigma(w))| >= 1/2 in |w| <= " +
                                    std::to_string(rep.search_radius));

  const double aw = std::abs(rep.witness);
  rep.d2_radius = std::max(opts.disk_c * T, 2 * (aw + R1));
  rep.majorant_radius = aw + rep.d2_radius;
  const double log_s = std::log(rep.majorant_radius);
  const double log_m = log_max_modulus_sigma(ev, rep.majorant_radius);
  std::vector<cplx> terms;
  for (int i = 0; i <= P.deg_x(); ++i)
    for (int j = 0; j <= k; ++j) {
      const double c = P.coeff(i, j);
      if (c != 0) terms.emplace_back(std::log(std::abs(c)) + i * log_s + j * log_m, 0.0);
    }
  rep.log_max_on_d2 = log_abs_sum(terms);
  // Zeros in |z - w| <= rho are at most log(max_{|z-w| <= 2 rho} |F| / |F(w)|) / log 2.
  rep.bound = std::max(0.0, (rep.log_max_on_d2 - rep.witness_log_abs_F) / std::log(2.0));
  return rep;
}

}  // namespace sigcount
