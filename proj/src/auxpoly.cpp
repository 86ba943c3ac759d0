#include "sigcount/auxpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sigcount/error.hpp"

namespace sigcount {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

namespace {

// ceil with a relative slack so that values like 2*8*log(e^2) = 32 - 1ulp do not round up.
int ceil_slack(double v) { return static_cast<int>(std::ceil(v - 1e-9 * std::max(1.0, std::abs(v)))); }

int sqrt8d(int d) { return ceil_slack(std::sqrt(8.0 * d)); }

void check_dH(int d, double H) {
  if (d < 1) fail(Errc::InvalidArgument, "d must be >= 1");
  if (!(H >= std::exp(1.0) * (1 - 1e-12))) fail(Errc::InvalidArgument, "H must be >= e");
}

}  // namespace

MasserCheck masser_condition(const MasserParameters& p) {
  if (p.d < 1) fail(Errc::InvalidArgument, "d must be >= 1");
  if (!(p.A > 0 && p.Z > 0 && p.M > 0)) fail(Errc::InvalidArgument, "A, Z, M must be positive");
  if (!(p.H >= 1)) fail(Errc::InvalidArgument, "H must be >= 1");
  if (static_cast<double>(p.T) * p.T < 8.0 * p.d) fail(Errc::DegreeTooSmall, "T < sqrt(8d)");
  MasserCheck c;
  const double d = p.d, T = p.T;
  c.lhs_log = T * (std::log(p.A) + std::log(p.Z));
  c.rhs_log = 96.0 * d * d / T * std::log(4.0 * T) + 16.0 * d * std::log(p.M + 1.0) + 48.0 * d * d * std::log(p.H);
  c.holds = c.lhs_log > c.rhs_log;
  return c;
}

int choose_T_alglattice(int d, double H, double c3) {
  check_dH(d, H);
  if (!(c3 > 0)) fail(Errc::InvalidArgument, "c3 must be positive");
  return std::max(ceil_slack(c3 * std::pow(d, 3) * std::log(H)), sqrt8d(d));
}

int choose_T_alggs(int d, double H, double c11) {
  check_dH(d, H);
  if (!(c11 > 0)) fail(Errc::InvalidArgument, "c11 must be positive");
  const double ld = std::log(static_cast<double>(d));
  return std::max(ceil_slack(c11 * std::pow(d, 10) * ld * ld * std::log(H)), sqrt8d(d));
}

std::vector<std::pair<int, int>> monomials_up_to(int T) {
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s <= T; ++s)
    for (int j = 0; j <= s; ++j) out.emplace_back(s - j, j);
  return out;
}

BigInt AuxPolynomial::max_abs_coefficient() const {
  BigInt m = 0;
  for (const auto& c : coeffs) m = std::max(m, BigInt(boost::multiprecision::abs(c)));
  return m;
}

std::string AuxPolynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    const auto [i, j] = monomials[k];
    if (!first) os << (coeffs[k] > 0 ? " + " : " - ");
    else if (coeffs[k] < 0) os << '-';
    first = false;
    const BigInt a = boost::multiprecision::abs(coeffs[k]);
    const bool unit = a == 1 && (i + j) > 0;
    if (!unit) os << a;
    if (i > 0) os << (unit ? "" : "*") << "X" << (i > 1 ? "^" + std::to_string(i) : "");
    if (j > 0) os << ((unit && i == 0) ? "" : "*") << "Y" << (j > 1 ? "^" + std::to_string(j) : "");
  }
  if (first) os << '0';
  return os.str();
}

namespace {

using QMatrix = std::vector<std::vector<Rational>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMatrix& m, int ncols) {
  std::vector<int> pivots;
  int row = 0;
  const int nrows = static_cast<int>(m.size());
  for (int col = 0; col < ncols && row < nrows; ++col) {
    int p = -1;
    for (int r = row; r < nrows; ++r)
      if (m[r][col] != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(m[row], m[p]);
    const Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (int r = 0; r < nrows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Q[x,y]/(f(x), g(y)) with basis x^i y^j, i < a, j < b.
struct TensorAlgebra {
  QPoly f, g;
  int a, b;

  std::vector<Rational> zero() const { return std::vector<Rational>(a * b, Rational(0)); }

  std::vector<Rational> mul(const std::vector<Rational>& u, const std::vector<Rational>& v) const {
    const int A = 2 * a - 1, B = 2 * b - 1;
    QMatrix w(A, std::vector<Rational>(B, Rational(0)));
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j) {
        if (u[i * b + j] == 0) continue;
        for (int k = 0; k < a; ++k)
          for (int l = 0; l < b; ++l)
            if (v[k * b + l] != 0) w[i + k][j + l] += u[i * b + j] * v[k * b + l];
      }
    // x^n = -(f_0 + ... + f_{a-1} x^{a-1}) / f_a x^{n-a}
    for (int i = A - 1; i >= a; --i)
      for (int j = 0; j < B; ++j) {
        if (w[i][j] == 0) continue;
        const Rational c = w[i][j] / f[a];
        for (int t = 0; t < a; ++t) w[i - a + t][j] -= c * f[t];
        w[i][j] = 0;
      }
    for (int i = 0; i < a; ++i)
      for (int j = B - 1; j >= b; --j) {
        if (w[i][j] == 0) continue;
        const Rational c = w[i][j] / g[b];
        for (int t = 0; t < b; ++t) w[i][j - b + t] -= c * g[t];
        w[i][j] = 0;
      }
    std::vector<Rational> out = zero();
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j) out[i * b + j] = w[i][j];
    return out;
  }
};

QPoly constant(const Rational& q) {
  QPoly p{q};
  trim(p);
  return p;
}

// Divisor of mu vanishing at theta0 found by integer relation search, or mu itself.
QPoly field_factor(const QPoly& mu, cplx theta0, int step) {
  const int n = degree(mu);
  for (int j = step; j < n; j += step) {
    if (n % j != 0) continue;
    std::vector<cplx> pw(j + 1);
    pw[0] = 1.0;
    for (int i = 1; i <= j; ++i) pw[i] = pw[i - 1] * theta0;
    const long double w = 1.0L / (1e-11L * std::pow(std::max(1.0L, static_cast<long double>(std::abs(theta0))), j));
    for (const auto& rel : integer_relations(pw, w)) {
      QPoly cand;
      for (auto c : rel) cand.emplace_back(c);
      trim(cand);
      if (degree(cand) != j) continue;
      if (!mod(mu, cand).empty()) continue;
      double scale = 0;
      for (int i = 0; i <= j; ++i) scale += std::abs(to_double(cand[i])) * std::abs(pw[i]);
      if (std::abs(evaluate(cand, theta0)) > 1e-6 * scale) continue;
      return cand;
    }
  }
  return mu;
}

QPoly rational_poly(const IntPoly& p) { return to_qpoly(p); }

}  // namespace

FieldPresentation field_presentation(const AlgebraicPoint& pt) {
  const int a = pt.x.degree(), b = pt.y.degree();
  FieldPresentation fp;
  if (a == 1 && b == 1) {
    fp.modulus = {Rational(0), Rational(1)};
    fp.x = constant(pt.x.rational_value());
    fp.y = constant(pt.y.rational_value());
    return fp;
  }
  if (b == 1) {
    fp.modulus = rational_poly(pt.x.minpoly);
    fp.x = {Rational(0), Rational(1)};
    fp.y = constant(pt.y.rational_value());
    return fp;
  }
  if (a == 1) {
    fp.modulus = rational_poly(pt.y.minpoly);
    fp.x = constant(pt.x.rational_value());
    fp.y = {Rational(0), Rational(1)};
    return fp;
  }
  TensorAlgebra alg{rational_poly(pt.x.minpoly), rational_poly(pt.y.minpoly), a, b};
  const int N = a * b;
  std::vector<Rational> xv = alg.zero(), yv = alg.zero(), one = alg.zero();
  one[0] = 1;
  xv[1 * b + 0] = 1;
  yv[0 * b + 1] = 1;
  for (int k = 1; k <= 64; ++k) {
    std::vector<Rational> theta = alg.zero();
    for (int i = 0; i < N; ++i) theta[i] = xv[i] + Rational(k) * yv[i];
    std::vector<std::vector<Rational>> powers{one};
    for (int i = 1; i <= N; ++i) powers.push_back(alg.mul(powers.back(), theta));
    // columns are powers; first dependency gives the minimal polynomial
    QMatrix m(N, std::vector<Rational>(N + 1));
    for (int r = 0; r < N; ++r)
      for (int c = 0; c <= N; ++c) m[r][c] = powers[c][r];
    const auto piv = rref(m, N + 1);
    if (static_cast<int>(piv.size()) < N) continue;  // theta does not generate the algebra
    QPoly mu(N + 1, Rational(0));
    mu[N] = 1;
    for (int r = 0; r < N; ++r) mu[piv[r]] = -m[r][N];
    // Solve for x and y in the power basis.
    auto express = [&](const std::vector<Rational>& target) {
      QMatrix aug(N, std::vector<Rational>(N + 1));
      for (int r = 0; r < N; ++r) {
        for (int c = 0; c < N; ++c) aug[r][c] = powers[c][r];
        aug[r][N] = target[r];
      }
      rref(aug, N);
      QPoly out(N);
      for (int r = 0; r < N; ++r) out[r] = aug[r][N];
      trim(out);
      return out;
    };
    const cplx theta0 = pt.x.approx + static_cast<double>(k) * pt.y.approx;
    const int step = a / std::gcd(a, b) * b;  // lcm(a, b) divides [Q(x, y) : Q]
    fp.modulus = field_factor(mu, theta0, step);
    fp.x = mod(express(xv), fp.modulus);
    fp.y = mod(express(yv), fp.modulus);
    return fp;
  }
  fail(Errc::InvalidArgument, "no primitive element found");
}

namespace {

std::vector<QPoly> powers_mod(const QPoly& base, int T, const QPoly& m) {
  std::vector<QPoly> out{mod(QPoly{Rational(1)}, m)};
  for (int i = 1; i <= T; ++i) out.push_back(mod(out.back() * base, m));
  return out;
}

std::vector<BigInt> to_integer_vector(const std::vector<Rational>& v) {
  BigInt l = 1;
  for (const auto& c : v) l = boost::multiprecision::lcm(l, BigInt(denominator(c)));
  std::vector<BigInt> out;
  BigInt g = 0;
  for (const auto& c : v) {
    out.push_back(BigInt(numerator(c)) * (l / denominator(c)));
    g = boost::multiprecision::gcd(g, out.back());
  }
  BigInt sign = 1;
  for (const auto& c : out)
    if (c != 0) {
      sign = c < 0 ? -1 : 1;
      break;
    }
  for (auto& c : out) c = c / g * sign;
  return out;
}

}  // namespace

AuxPolynomial construct_vanishing(const std::vector<AlgebraicPoint>& points, int T, std::optional<int> masser_d) {
  if (T < 0) fail(Errc::InvalidArgument, "T must be >= 0");
  if (masser_d) {
    if (*masser_d < 1) fail(Errc::InvalidArgument, "d must be >= 1");
    if (static_cast<double>(T) * T < 8.0 * *masser_d) fail(Errc::DegreeTooSmall, "T < sqrt(8d)");
  }
  AuxPolynomial P;
  P.T = T;
  P.monomials = monomials_up_to(T);
  const int ncols = static_cast<int>(P.monomials.size());
  QMatrix rows;
  for (const auto& pt : points) {
    const FieldPresentation fp = field_presentation(pt);
    const int e = degree(fp.modulus);
    const auto xp = powers_mod(fp.x, T, fp.modulus);
    const auto yp = powers_mod(fp.y, T, fp.modulus);
    QMatrix block(e, std::vector<Rational>(ncols, Rational(0)));
    for (int c = 0; c < ncols; ++c) {
      const auto [i, j] = P.monomials[c];
      const QPoly v = mod(xp[i] * yp[j], fp.modulus);
      for (std::size_t r = 0; r < v.size(); ++r) block[r][c] = v[r];
    }
    for (auto& r : block)
      if (std::any_of(r.begin(), r.end(), [](const Rational& q) { return q != 0; })) rows.push_back(std::move(r));
  }
  const auto piv = rref(rows, ncols);
  if (static_cast<int>(piv.size()) == ncols) fail(Errc::NoKernel, "vanishing conditions have full rank");
  std::vector<bool> is_pivot(ncols, false);
  for (int p : piv) is_pivot[p] = true;
  std::optional<std::vector<BigInt>> best;
  BigInt best_max;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(ncols, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -rows[r][f];
    auto iv = to_integer_vector(v);
    BigInt mx = 0;
    for (const auto& c : iv) mx = std::max(mx, BigInt(boost::multiprecision::abs(c)));
    if (!best || mx < best_max || (mx == best_max && iv < *best)) {
      best = iv;
      best_max = mx;
    }
  }
  P.coeffs = *best;
  for (const auto& pt : points)
    if (!vanishes_exactly(P, pt)) fail(Errc::NoKernel, "kernel vector failed exact verification");
  return P;
}

bool vanishes_exactly(const AuxPolynomial& P, const AlgebraicPoint& pt) {
  const FieldPresentation fp = field_presentation(pt);
  const auto xp = powers_mod(fp.x, P.T, fp.modulus);
  const auto yp = powers_mod(fp.y, P.T, fp.modulus);
  QPoly acc;
  for (std::size_t k = 0; k < P.coeffs.size(); ++k) {
    if (P.coeffs[k] == 0) continue;
    const auto [i, j] = P.monomials[k];
    acc = acc + scale(xp[i] * yp[j], Rational(P.coeffs[k]));
  }
  return mod(acc, fp.modulus).empty();
}

double log_coefficient_bound(int d, int T, double H) {
  if (d < 1 || T < 0 || !(H >= 1)) fail(Errc::InvalidArgument, "need d >= 1, T >= 0, H >= 1");
  return std::log(2.0) / d + 2.0 * std::log(T + 1.0) + T * std::log(H);
}

CoefficientBoundReport coefficient_bound_check(const AuxPolynomial& P, int d, double H) {
  CoefficientBoundReport r;
  r.log_bound = log_coefficient_bound(d, P.T, H);
  const BigInt m = P.max_abs_coefficient();
  r.log_max_coefficient = m == 0 ? -std::numeric_limits<double>::infinity() : std::log(m.convert_to<double>());
  r.within = r.log_max_coefficient <= r.log_bound;
  return r;
}

}  // namespace sigcount
