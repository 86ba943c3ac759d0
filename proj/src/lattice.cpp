#include "sigcount/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "sigcount/error.hpp"

namespace sigcount {

namespace {

constexpr int kMaxReductionSteps = 10000;

BasisChange compose(const BasisChange& step, const BasisChange& m) {
  return {step.a * m.a + step.b * m.c, step.a * m.b + step.b * m.d,
          step.c * m.a + step.d * m.c, step.c * m.b + step.d * m.d};
}

// T^n : omega2 -> omega2 - n omega1
BasisChange translate(std::int64_t n) { return {1, 0, -n, 1}; }
// S : (omega1, omega2) -> (omega2, -omega1), tau -> -1/tau
constexpr BasisChange kInvert{0, 1, -1, 0};
constexpr BasisChange kSwap{0, 1, 1, 0};

template <class T>
std::array<T, 2> apply(const BasisChange& m, const T& w1, const T& w2) {
  using R = std::conditional_t<std::is_same_v<T, cplx>, double, Rational>;
  return {R(m.a) * w1 + R(m.b) * w2, R(m.c) * w1 + R(m.d) * w2};
}

}  // namespace

std::array<cplx, 4> Lattice::cell_vertices() const {
  return {(omega1_ + omega2_) * 0.5, (-omega1_ + omega2_) * 0.5, (-omega1_ - omega2_) * 0.5,
          (omega1_ - omega2_) * 0.5};
}

double Lattice::cell_radius() const {
  return 0.5 * std::max(std::abs(omega1_ + omega2_), std::abs(omega1_ - omega2_));
}

double Lattice::oriented_area() const { return std::imag(omega1_ * std::conj(omega2_)); }

void Lattice::check_invariants() const {
  const double eps = kDomainSlack;
  if (!(tau_.imag() > 0) || std::abs(tau_) < 1 - eps || tau_.real() < -0.5 - eps ||
      tau_.real() > 0.5 + eps)
    fail(Errc::DegenerateBasis, "basis reduction did not reach the fundamental domain");
  if (std::abs(reduction_.determinant()) != 1)
    fail(Errc::DegenerateBasis, "reduction matrix is not unimodular");
}

Lattice reduce_basis(cplx w1, cplx w2) {
  if (!std::isfinite(w1.real()) || !std::isfinite(w1.imag()) || !std::isfinite(w2.real()) ||
      !std::isfinite(w2.imag()))
    fail(Errc::DegenerateBasis, "non-finite period");
  if (std::abs(w1) == 0.0 || std::abs(w2) == 0.0) fail(Errc::DegenerateBasis, "zero period");
  const cplx ratio = w2 / w1;
  if (!(std::abs(ratio.imag()) > 1e-12 * std::abs(ratio)))
    fail(Errc::DegenerateBasis, "periods are R-linearly dependent");

  const double eps = Lattice::kDomainSlack;
  BasisChange m{};
  if (ratio.imag() < 0) m = kSwap;

  auto periods = [&] { return apply(m, w1, w2); };
  for (int step = 0;; ++step) {
    if (step > kMaxReductionSteps) fail(Errc::DegenerateBasis, "basis reduction did not converge");
    auto [o1, o2] = periods();
    cplx tau = o2 / o1;
    auto n = static_cast<std::int64_t>(std::floor(tau.real() + 0.5));
    if (n != 0) {
      m = compose(translate(n), m);
      continue;
    }
    if (std::norm(tau) < 1.0 - eps) {
      m = compose(kInvert, m);
      continue;
    }
    break;
  }
  // Boundary ties.
  {
    auto [o1, o2] = periods();
    cplx tau = o2 / o1;
    if (tau.real() < -0.5 + eps) m = compose(translate(-1), m);
  }
  {
    auto [o1, o2] = periods();
    cplx tau = o2 / o1;
    if (std::abs(std::norm(tau) - 1.0) <= eps && tau.real() < -eps) m = compose(kInvert, m);
  }

  Lattice lat;
  auto [o1, o2] = periods();
  lat.omega1_ = o1;
  lat.omega2_ = o2;
  lat.tau_ = o2 / o1;
  lat.reduction_ = m;
  lat.input_ = {w1, w2};
  lat.check_invariants();
  return lat;
}

Lattice reduce_basis_exact(const GaussianRational& w1, const GaussianRational& w2) {
  if (w1.is_zero() || w2.is_zero()) fail(Errc::DegenerateBasis, "zero period");
  const GaussianRational ratio = w2 / w1;
  if (ratio.im == 0) fail(Errc::DegenerateBasis, "periods are R-linearly dependent");

  BasisChange m{};
  if (ratio.im < 0) m = kSwap;
  auto periods = [&] { return apply(m, w1, w2); };
  const Rational half(1, 2);
  for (int step = 0;; ++step) {
    if (step > kMaxReductionSteps) fail(Errc::DegenerateBasis, "basis reduction did not converge");
    auto [o1, o2] = periods();
    GaussianRational tau = o2 / o1;
    std::int64_t n = floor_to_int64(tau.re + half);
    if (n != 0) {
      m = compose(translate(n), m);
      continue;
    }
    if (tau.norm() < 1) {
      m = compose(kInvert, m);
      continue;
    }
    break;
  }
  {
    auto [o1, o2] = periods();
    if ((o2 / o1).re == -half) m = compose(translate(-1), m);
  }
  {
    auto [o1, o2] = periods();
    GaussianRational tau = o2 / o1;
    if (tau.norm() == 1 && tau.re < 0) m = compose(kInvert, m);
  }

  Lattice lat;
  auto [o1, o2] = periods();
  lat.exact_ = std::array<GaussianRational, 2>{o1, o2};
  lat.omega1_ = o1.to_complex();
  lat.omega2_ = o2.to_complex();
  lat.tau_ = (o2 / o1).to_complex();
  lat.reduction_ = m;
  lat.input_ = {w1.to_complex(), w2.to_complex()};
  lat.check_invariants();
  return lat;
}

Lattice parse_lattice(std::string_view spec) {
  auto comma = spec.find(',');
  if (comma == std::string_view::npos)
    fail(Errc::InvalidArgument, "lattice spec must be \"<w1>,<w2>\"");
  return reduce_basis_exact(parse_gaussian(spec.substr(0, comma)),
                            parse_gaussian(spec.substr(comma + 1)));
}

std::array<double, 2> real_coordinates(const Lattice& lat, cplx z) {
  const cplx& w1 = lat.omega1();
  const cplx& w2 = lat.omega2();
  const double area = lat.oriented_area();
  const double s = std::imag(z * std::conj(w2)) / area;
  const double t = std::imag(std::conj(w1) * z) / std::imag(std::conj(w1) * w2);
  return {s, t};
}

LatticeCoords decompose(const Lattice& lat, cplx w) {
  auto [s, t] = real_coordinates(lat, w);
  if (!std::isfinite(s) || !std::isfinite(t) || std::abs(s) > 9e15 || std::abs(t) > 9e15)
    fail(Errc::NotLatticePoint, "point out of range");
  LatticeCoords kl{std::llround(s), std::llround(t)};
  const double residual = std::abs(w - lat.point(kl.k, kl.l));
  if (residual > kLatticeSnap) fail(Errc::NotLatticePoint, "point is not on the lattice");
  return kl;
}

double cosine_constant(const Lattice& lat) {
  return std::max(std::abs(lat.omega1()), std::abs(lat.omega2())) /
         std::abs(lat.oriented_area());
}

CellReduction reduce_to_cell(const Lattice& lat, cplx z) {
  auto [s, t] = real_coordinates(lat, z);
  if (!std::isfinite(s) || !std::isfinite(t) || std::abs(s) > 9e15 || std::abs(t) > 9e15)
    fail(Errc::InvalidArgument, "point out of range for cell reduction");
  // Smallest integer m with s - m <= 1/2.
  CellReduction out;
  out.m = static_cast<std::int64_t>(std::ceil(s - 0.5));
  out.n = static_cast<std::int64_t>(std::ceil(t - 0.5));
  out.z0 = z - lat.point(out.m, out.n);
  return out;
}

}  // namespace sigcount
