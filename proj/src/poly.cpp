#include "sigcount/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sigcount/error.hpp"

namespace sigcount {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

int degree(const IntPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::int64_t content(const IntPoly& p) {
  std::int64_t g = 0;
  for (auto c : p) g = std::gcd(g, c);
  return g;
}

IntPoly primitive_part(IntPoly p) {
  trim(p);
  if (p.empty()) return p;
  std::int64_t g = content(p);
  if (p.back() < 0) g = -g;
  for (auto& c : p) c /= g;
  return p;
}

cplx evaluate(const IntPoly& p, cplx x) {
  cplx acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + static_cast<double>(*it);
  return acc;
}

std::string to_string(const IntPoly& p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ']';
  return os.str();
}

namespace {

using lcplx = std::complex<long double>;

std::vector<cplx> aberth(const IntPoly& p) {
  const int n = degree(p);
  std::vector<long double> a(p.begin(), p.begin() + n + 1);
  // Cauchy bound for the initial circle.
  long double bound = 0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(a[i] / a[n]));
  const long double rad = std::min<long double>(1 + bound, 1e6L) * 0.5L + 0.1L;
  std::vector<lcplx> z(n);
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(rad, 2.0L * std::numbers::pi_v<long double> * k / n + 0.4L);

  auto eval = [&](lcplx x, lcplx& val, lcplx& der) {
    val = a[n];
    der = 0;
    for (int i = n - 1; i >= 0; --i) {
      der = der * x + val;
      val = val * x + a[i];
    }
  };
  bool converged = false;
  for (int iter = 0; iter < 2000 && !converged; ++iter) {
    converged = true;
    for (int k = 0; k < n; ++k) {
      lcplx v, d;
      eval(z[k], v, d);
      if (v == lcplx(0)) continue;
      const lcplx ratio = v / d;
      lcplx s = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      const lcplx w = ratio / (1.0L - ratio * s);
      z[k] -= w;
      if (std::abs(w) > 1e-17L * std::max<long double>(1, std::abs(z[k]))) converged = false;
    }
  }
  if (!converged) {
    // Multiple roots converge slowly; accept if residuals are small.
    for (int k = 0; k < n; ++k) {
      lcplx v, d;
      eval(z[k], v, d);
      long double scale = 0;
      for (int i = 0; i <= n; ++i)
        scale += std::abs(a[i]) * std::pow(std::max<long double>(1, std::abs(z[k])), i);
      if (std::abs(v) > 1e-9L * scale) fail(Errc::RootFindingFailure, "Aberth iteration did not converge");
    }
  }
  std::vector<cplx> out;
  for (auto& r : z) out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  return out;
}

BigInt eval_scaled(const IntPoly& p, const BigInt& num, const BigInt& den) {
  // sum a_i num^i den^{n-i}
  const int n = degree(p);
  BigInt acc = 0, np = 1;
  std::vector<BigInt> dp(n + 1, 1);
  for (int i = 1; i <= n; ++i) dp[i] = dp[i - 1] * den;
  for (int i = 0; i <= n; ++i) {
    acc += BigInt(p[i]) * np * dp[n - i];
    np *= num;
  }
  return acc;
}

std::vector<std::int64_t> divisors(std::int64_t v) {
  v = std::abs(v);
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d * d <= v; ++d)
    if (v % d == 0) {
      out.push_back(d);
      if (d != v / d) out.push_back(v / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<cplx> roots(const IntPoly& p) {
  const int n = degree(p);
  if (n < 1) fail(Errc::InvalidArgument, "roots of a constant polynomial");
  // strip zero roots
  int low = 0;
  while (p[low] == 0) ++low;
  std::vector<cplx> out(low, cplx(0, 0));
  IntPoly q(p.begin() + low, p.begin() + n + 1);
  const int m = n - low;
  if (m == 1) {
    out.emplace_back(-static_cast<double>(q[0]) / static_cast<double>(q[1]), 0.0);
  } else if (m == 2) {
    const double a = static_cast<double>(q[2]), b = static_cast<double>(q[1]), c = static_cast<double>(q[0]);
    const __int128 disc = static_cast<__int128>(q[1]) * q[1] - static_cast<__int128>(4) * q[2] * q[0];
    if (disc >= 0) {
      const double sq = std::sqrt(static_cast<double>(disc));
      const double t = -0.5 * (b + (b >= 0 ? sq : -sq));
      out.emplace_back(t / a, 0.0);
      out.emplace_back(c / t, 0.0);
    } else {
      const double im = std::sqrt(-static_cast<double>(disc)) / (2 * a);
      out.emplace_back(-b / (2 * a), im);
      out.emplace_back(-b / (2 * a), -im);
    }
  } else if (m > 2) {
    auto r = aberth(q);
    // Snap nearly real roots; for cubics the count of real roots is known exactly.
    int real_count = -1;
    if (m == 3) {
      const BigInt a(q[3]), b(q[2]), c(q[1]), d(q[0]);
      const BigInt disc = 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c -
                          27 * a * a * d * d;
      real_count = disc >= 0 ? 3 : 1;
    }
    std::vector<int> order(r.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
      return std::abs(r[i].imag()) < std::abs(r[j].imag());
    });
    for (std::size_t k = 0; k < order.size(); ++k) {
      cplx& z = r[order[k]];
      const bool snap = real_count >= 0 ? static_cast<int>(k) < real_count
                                        : std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z));
      if (snap) z = {z.real(), 0.0};
    }
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

double mahler_measure(const IntPoly& p, const std::vector<cplx>& rs) {
  const int n = degree(p);
  double m = std::abs(static_cast<double>(p[n]));
  for (const auto& r : rs) m *= std::max(1.0, std::abs(r));
  return m;
}

double mahler_measure(const IntPoly& p) { return mahler_measure(p, roots(p)); }

std::vector<Rational> rational_roots(const IntPoly& p) {
  std::vector<Rational> out;
  const int n = degree(p);
  if (n < 1) return out;
  int low = 0;
  while (p[low] == 0) ++low;
  if (low > 0) out.emplace_back(0);
  IntPoly q(p.begin() + low, p.begin() + n + 1);
  if (degree(q) < 1) return out;
  const auto nums = divisors(q.front());
  const auto dens = divisors(q.back());
  for (auto den : dens)
    for (auto num : nums) {
      if (std::gcd(num, den) != 1) continue;
      for (int s : {1, -1}) {
        // Screen in long double; an exact zero always passes this test.
        const long double x = static_cast<long double>(s * num) / static_cast<long double>(den);
        long double v = 0, mag = 0;
        for (auto it = q.rbegin(); it != q.rend(); ++it) {
          v = v * x + static_cast<long double>(*it);
          mag = mag * std::fabs(x) + std::fabs(static_cast<long double>(*it));
        }
        if (std::fabs(v) > 1e-9L * mag) continue;
        if (eval_scaled(q, BigInt(s * num), BigInt(den)) == 0) out.emplace_back(BigInt(s * num), BigInt(den));
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

IntPoly divide_linear(const IntPoly& p, const Rational& root) {
  // p(x) = (den x - num) q(x); synthetic division from the top.
  const BigInt num = numerator(root), den = denominator(root);
  const int n = degree(p);
  std::vector<BigInt> q(n, 0);
  BigInt carry = 0;  // coefficient being formed
  std::vector<BigInt> rem(p.begin(), p.begin() + n + 1);
  for (int i = n; i >= 1; --i) {
    if (rem[i] % den != 0) fail(Errc::InvalidArgument, "non-exact linear division");
    q[i - 1] = rem[i] / den;
    rem[i - 1] += q[i - 1] * num;
    rem[i] = 0;
  }
  if (rem[0] != 0) fail(Errc::InvalidArgument, "linear factor does not divide");
  IntPoly out;
  for (auto& c : q) out.push_back(c.convert_to<std::int64_t>());
  return out;
}

namespace {

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<int>(i));
  trim(d);
  return d;
}

QPoly gcd_q(QPoly a, QPoly b) {
  while (!b.empty()) {
    QPoly r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool is_irreducible(const IntPoly& p) {
  const int n = degree(p);
  if (n < 1) return false;
  if (n == 1) return true;
  if (!rational_roots(p).empty()) return false;
  if (n <= 3) return true;
  QPoly q = to_qpoly(p);
  return degree(gcd_q(q, derivative(q))) == 0;
}

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly to_qpoly(const IntPoly& p) {
  QPoly q;
  for (auto c : p) q.emplace_back(c);
  trim(q);
  return q;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  trim(c);
  return c;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  QPoly c(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  trim(c);
  return c;
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + scale(b, Rational(-1)); }

QPoly scale(const QPoly& a, const Rational& k) {
  QPoly c;
  for (const auto& x : a) c.push_back(x * k);
  trim(c);
  return c;
}

void divmod(const QPoly& a, const QPoly& b, QPoly& quotient, QPoly& remainder) {
  if (b.empty()) fail(Errc::InvalidArgument, "polynomial division by zero");
  remainder = a;
  trim(remainder);
  const int db = degree(b);
  quotient.assign(std::max(0, degree(remainder) - db + 1), Rational(0));
  while (!remainder.empty() && degree(remainder) >= db) {
    const int shift = degree(remainder) - db;
    const Rational f = remainder.back() / b.back();
    quotient[shift] = f;
    for (int i = 0; i <= db; ++i) remainder[shift + i] -= f * b[i];
    remainder.pop_back();
    trim(remainder);
  }
  trim(quotient);
}

QPoly mod(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  divmod(a, b, q, r);
  return r;
}

std::vector<BigInt> primitive_integer(const QPoly& p) {
  BigInt l = 1;
  for (const auto& c : p) l = boost::multiprecision::lcm(l, BigInt(denominator(c)));
  std::vector<BigInt> out;
  BigInt g = 0;
  for (const auto& c : p) {
    out.push_back(BigInt(numerator(c)) * (l / denominator(c)));
    g = boost::multiprecision::gcd(g, out.back());
  }
  if (g == 0) return out;
  if (!out.empty() && out.back() < 0) g = -g;
  for (auto& c : out) c /= g;
  return out;
}

cplx evaluate(const QPoly& p, cplx x) {
  cplx acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

void lll_reduce(std::vector<std::vector<long double>>& b, long double delta) {
  const int n = static_cast<int>(b.size());
  if (n == 0) return;
  const int m = static_cast<int>(b[0].size());
  auto dot = [m](const std::vector<long double>& x, const std::vector<long double>& y) {
    long double s = 0;
    for (int i = 0; i < m; ++i) s += x[i] * y[i];
    return s;
  };
  std::vector<std::vector<long double>> bs(n, std::vector<long double>(m)), mu(n, std::vector<long double>(n));
  std::vector<long double> bn(n);
  auto gram_schmidt = [&]() {
    for (int i = 0; i < n; ++i) {
      bs[i] = b[i];
      for (int j = 0; j < i; ++j) {
        mu[i][j] = bn[j] > 0 ? dot(b[i], bs[j]) / bn[j] : 0;
        for (int t = 0; t < m; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
      }
      bn[i] = dot(bs[i], bs[i]);
    }
  };
  gram_schmidt();
  int k = 1;
  int guard = 0;
  while (k < n && guard++ < 100000) {
    for (int j = k - 1; j >= 0; --j) {
      const long double q = std::round(mu[k][j]);
      if (q != 0) {
        // Size reduction leaves b* unchanged; only row k of mu moves.
        for (int t = 0; t < m; ++t) b[k][t] -= q * b[j][t];
        for (int i = 0; i < j; ++i) mu[k][i] -= q * mu[j][i];
        mu[k][j] -= q;
      }
    }
    if (bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = std::max(k - 1, 1);
    }
  }
}

std::vector<std::vector<std::int64_t>> integer_relations(const std::vector<cplx>& v, long double weight) {
  const int n = static_cast<int>(v.size());
  std::vector<std::vector<long double>> basis(n, std::vector<long double>(n + 2, 0));
  for (int i = 0; i < n; ++i) {
    basis[i][i] = 1;
    basis[i][n] = weight * v[i].real();
    basis[i][n + 1] = weight * v[i].imag();
  }
  lll_reduce(basis);
  std::stable_sort(basis.begin(), basis.end(), [](const auto& x, const auto& y) {
    long double a = 0, b = 0;
    for (auto t : x) a += t * t;
    for (auto t : y) b += t * t;
    return a < b;
  });
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& row : basis) {
    std::vector<std::int64_t> rel(n);
    for (int i = 0; i < n; ++i) rel[i] = static_cast<std::int64_t>(std::llround(row[i]));
    out.push_back(std::move(rel));
  }
  return out;
}

}  // namespace sigcount
