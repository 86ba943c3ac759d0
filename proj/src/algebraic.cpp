#include "sigcount/algebraic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "sigcount/error.hpp"

namespace sigcount {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

Rational AlgebraicNumber::rational_value() const {
  if (!is_rational()) fail(Errc::InvalidArgument, "not a rational number");
  return Rational(BigInt(-minpoly[0]), BigInt(minpoly[1]));
}

namespace {

void sort_roots(std::vector<cplx>& rs) {
  std::sort(rs.begin(), rs.end(), [](cplx a, cplx b) {
    const double aa = std::arg(a), ab = std::arg(b);
    if (aa != ab) return aa < ab;
    return std::abs(a) < std::abs(b);
  });
}

AlgebraicNumber from_sorted_roots(const IntPoly& p, const std::vector<cplx>& rs, int idx) {
  AlgebraicNumber a;
  a.minpoly = p;
  a.root_index = idx;
  a.approx = rs[idx];
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < rs.size(); ++j)
    if (static_cast<int>(j) != idx) sep = std::min(sep, std::abs(rs[j] - rs[idx]));
  a.isolation_radius = 0.5 * sep;
  return a;
}

// arg(-0.0 i) would otherwise land on -pi.
cplx clean(cplx z) { return {z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag()}; }

}  // namespace

std::vector<cplx> ordered_roots(const IntPoly& minpoly) {
  auto rs = roots(minpoly);
  for (auto& r : rs) r = clean(r);
  sort_roots(rs);
  return rs;
}

AlgebraicNumber make_algebraic(const IntPoly& minpoly, int root_index) {
  IntPoly p = primitive_part(minpoly);
  if (!is_irreducible(p)) fail(Errc::InvalidArgument, "polynomial " + to_string(p) + " is not irreducible");
  auto rs = ordered_roots(p);
  if (root_index < 0 || root_index >= static_cast<int>(rs.size()))
    fail(Errc::InvalidArgument, "root index out of range");
  return from_sorted_roots(p, rs, root_index);
}

AlgebraicNumber make_algebraic_near(const IntPoly& minpoly, cplx x) {
  IntPoly p = primitive_part(minpoly);
  if (!is_irreducible(p)) fail(Errc::InvalidArgument, "polynomial " + to_string(p) + " is not irreducible");
  auto rs = ordered_roots(p);
  int best = 0;
  for (int i = 1; i < static_cast<int>(rs.size()); ++i)
    if (std::abs(rs[i] - x) < std::abs(rs[best] - x)) best = i;
  return from_sorted_roots(p, rs, best);
}

AlgebraicNumber make_rational(const Rational& q) {
  const BigInt num = numerator(q), den = denominator(q);
  if (boost::multiprecision::abs(num) > std::numeric_limits<std::int64_t>::max() ||
      den > std::numeric_limits<std::int64_t>::max())
    fail(Errc::InvalidArgument, "rational out of range");
  return make_algebraic({(-num).convert_to<std::int64_t>(), den.convert_to<std::int64_t>()}, 0);
}

double height_of_minpoly(const IntPoly& p) {
  const int d = degree(p);
  if (d == 1) return static_cast<double>(std::max(std::abs(p[0]), std::abs(p[1])));
  return std::pow(mahler_measure(p), 1.0 / d);
}

double height(const AlgebraicNumber& a) { return height_of_minpoly(a.minpoly); }

namespace {

std::vector<std::int64_t> coefficient_bounds(int k, double H, double guard) {
  // |a_i| <= C(k, i) M and M <= H^k
  const double hk = std::pow(H, k) * (1 + guard);
  std::vector<std::int64_t> b(k + 1);
  double binom = 1;
  for (int i = 0; i <= k; ++i) {
    b[i] = static_cast<std::int64_t>(std::floor(binom * hk));
    binom = binom * (k - i) / (i + 1);
  }
  return b;
}

bool perfect_square(__int128 v) {
  if (v < 0) return false;
  auto r = static_cast<__int128>(std::llround(std::sqrt(static_cast<double>(v))));
  for (__int128 t = std::max<__int128>(0, r - 2); t <= r + 2; ++t)
    if (t * t == v) return true;
  return false;
}

}  // namespace

double enumeration_box_size(int d_max, double H_max) {
  double total = 0;
  for (int k = 1; k <= d_max; ++k) {
    auto b = coefficient_bounds(k, H_max, 1e-9);
    double box = static_cast<double>(b[k]);
    for (int i = 0; i < k; ++i) box *= 2.0 * b[i] + 1;
    total += box;
  }
  return total;
}

void enumerate(int d_max, double H_max, const std::function<void(const AlgebraicNumber&)>& sink,
               const EnumerateOptions& opts) {
  if (d_max < 1 || d_max > 3) fail(Errc::InvalidArgument, "d_max must lie in [1, 3]");
  if (!(H_max >= 1)) fail(Errc::InvalidArgument, "H_max must be >= 1");
  const double box = enumeration_box_size(d_max, H_max);
  if (box > opts.budget)
    fail(Errc::BudgetExceeded, "coefficient box of " + std::to_string(box) + " polynomials exceeds budget " +
                                   std::to_string(opts.budget));
  for (int k = 1; k <= d_max; ++k) {
    const auto b = coefficient_bounds(k, H_max, opts.guard);
    const double limit = std::pow(H_max, k) * (1 + opts.guard);
    IntPoly p(k + 1);
    // Odometer over leading-first coefficients: a_k ascending from 1, the rest from -b_i.
    std::vector<std::int64_t> lo(k + 1), hi(k + 1);
    for (int i = 0; i <= k; ++i) {
      lo[i] = i == k ? 1 : -b[i];
      hi[i] = b[i];
    }
    if (hi[k] < 1) continue;
    for (int i = 0; i <= k; ++i) p[i] = lo[i];
    while (true) {
      bool ok = true;
      if (k >= 2 && p[0] == 0) ok = false;
      if (ok && content(p) != 1) ok = false;
      if (ok && k == 2) {
        const __int128 disc = static_cast<__int128>(p[1]) * p[1] - static_cast<__int128>(4) * p[2] * p[0];
        if (perfect_square(disc)) ok = false;
      } else if (ok && k == 3) {
        ok = rational_roots(p).empty();
      }
      if (ok) {
        auto rs = ordered_roots(p);
        const double m = k == 1 ? static_cast<double>(std::max(std::abs(p[0]), std::abs(p[1])))
                                : mahler_measure(p, rs);
        if (m <= limit)
          for (int idx = 0; idx < k; ++idx) sink(from_sorted_roots(p, rs, idx));
      }
      // advance: a_0 fastest, a_k slowest
      int i = 0;
      while (i <= k && p[i] == hi[i]) {
        p[i] = lo[i];
        ++i;
      }
      if (i > k) break;
      ++p[i];
    }
  }
}

std::vector<AlgebraicNumber> enumerate(int d_max, double H_max, const EnumerateOptions& opts) {
  std::vector<AlgebraicNumber> out;
  enumerate(d_max, H_max, [&](const AlgebraicNumber& a) { out.push_back(a); }, opts);
  return out;
}

namespace {

struct Best {
  std::optional<AlgebraicNumber> value;
  double dist = std::numeric_limits<double>::infinity();

  void offer(const AlgebraicNumber& a, cplx x, double tol) {
    const double d = std::abs(a.approx - x);
    if (d > tol) return;
    if (!value || d < dist || (d == dist && a.degree() < value->degree())) {
      value = a;
      dist = d;
    }
  }
};

// Splits an integer relation into rational roots and a remaining factor and
// offers every admissible piece.
void offer_relation(IntPoly rel, cplx x, int d_max, double H_max, double tol, Best& best) {
  trim(rel);
  if (degree(rel) < 1) return;
  rel = primitive_part(rel);
  for (const auto& r : rational_roots(rel)) {
    const double h = std::max(to_double(boost::multiprecision::abs(Rational(numerator(r)))),
                              to_double(Rational(denominator(r))));
    if (h <= H_max * (1 + 1e-9)) best.offer(make_rational(r), x, tol);
    while (degree(rel) >= 1) {
      const auto rr = rational_roots(rel);
      if (std::find(rr.begin(), rr.end(), r) == rr.end()) break;
      rel = primitive_part(divide_linear(rel, r));
    }
  }
  const int k = degree(rel);
  if (k < 2 || k > d_max || !is_irreducible(rel)) return;
  if (height_of_minpoly(rel) > H_max * (1 + 1e-9)) return;
  best.offer(make_algebraic_near(rel, x), x, tol);
}

}  // namespace

std::optional<AlgebraicNumber> detect_algebraic(cplx x, int d_max, double H_max, double tol, double x_err) {
  if (d_max < 1) fail(Errc::InvalidArgument, "d_max must be >= 1");
  if (!(H_max >= 1)) fail(Errc::InvalidArgument, "H_max must be >= 1");
  if (!(tol > 0)) fail(Errc::InvalidArgument, "tol must be positive");
  if (x_err > tol / 10) fail(Errc::PrecisionTooLow, "input error exceeds tol/10");
  if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return std::nullopt;
  Best best;

  // Degree 1 directly: p/q with max(|p|, q) <= H.
  const auto qmax = static_cast<std::int64_t>(std::floor(H_max * (1 + 1e-9)));
  if (std::abs(x.imag()) <= tol && qmax <= 10'000'000) {
    for (std::int64_t q = 1; q <= qmax; ++q) {
      const double pr = std::round(x.real() * static_cast<double>(q));
      if (std::abs(pr) > static_cast<double>(qmax)) continue;
      const auto p = static_cast<std::int64_t>(pr);
      if (std::abs(pr / static_cast<double>(q) - x.real()) > tol) continue;
      if (std::gcd(p, q) != 1) continue;
      best.offer(make_rational(Rational(BigInt(p), BigInt(q))), x, tol);
    }
  }

  const double coeff_box = std::pow(2.0 * (1.0 + H_max), 2.0 * d_max);
  for (int k = 2; k <= d_max; ++k) {
    std::vector<cplx> powers(k + 1);
    powers[0] = 1.0;
    for (int i = 1; i <= k; ++i) powers[i] = powers[i - 1] * x;
    const long double w =
        1.0L / (static_cast<long double>(std::max(tol, 1e-15)) * k * std::pow(std::max(1.0, std::abs(x)), k));
    for (const auto& rel : integer_relations(powers, w)) {
      // Any admissible factor has coefficients within C(k,i) H^k; a usable
      // relation stays inside a box of that order.
      bool small = true;
      for (auto c : rel)
        if (std::abs(static_cast<double>(c)) > coeff_box) small = false;
      if (!small) continue;
      IntPoly p(rel.begin(), rel.end());
      trim(p);
      if (degree(p) < 1) continue;
      bool near = false;
      for (cplx r : roots(p))
        if (std::abs(r - x) <= 10 * tol + 1e-12 * std::max(1.0, std::abs(x))) near = true;
      if (!near) continue;
      offer_relation(std::move(p), x, d_max, H_max, tol, best);
    }
  }
  return best.value;
}

}  // namespace sigcount

namespace sigcount {

AlgebraicNumber parse_algebraic(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) fail(Errc::InvalidArgument, "empty algebraic literal");
  if (s.front() != '{') return make_rational(parse_rational(s));

  auto close = s.find('}');
  if (close == std::string::npos || close + 1 >= s.size() || s[close + 1] != '@')
    fail(Errc::InvalidArgument, "algebraic literal must look like {c_d,...,c_0}@k: '" + s + "'");
  IntPoly p;
  std::stringstream coeffs(s.substr(1, close - 1));
  std::string item;
  while (std::getline(coeffs, item, ',')) {
    Rational q = parse_rational(item);
    if (boost::multiprecision::denominator(q) != 1 || abs(q) > std::numeric_limits<std::int64_t>::max())
      fail(Errc::InvalidArgument, "minimal polynomial coefficients must be int64 integers: '" + item + "'");
    p.push_back(boost::multiprecision::numerator(q).convert_to<std::int64_t>());
  }
  std::reverse(p.begin(), p.end());
  const std::string idx = s.substr(close + 2);
  if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    fail(Errc::InvalidArgument, "bad root index in '" + s + "'");
  trim(p);
  if (degree(p) < 1) fail(Errc::InvalidArgument, "minimal polynomial must have degree >= 1: '" + s + "'");
  const int k = std::stoi(idx);
  if (k >= degree(p)) fail(Errc::InvalidArgument, "root index out of range in '" + s + "'");
  return make_algebraic(p, k);
}

std::string to_literal(const AlgebraicNumber& a) {
  if (a.is_rational()) {
    std::ostringstream os;
    os << a.rational_value();
    return os.str();
  }
  std::string out = "{";
  for (auto it = a.minpoly.rbegin(); it != a.minpoly.rend(); ++it) {
    if (it != a.minpoly.rbegin()) out += ',';
    out += std::to_string(*it);
  }
  return out + "}@" + std::to_string(a.root_index);
}

}  // namespace sigcount
