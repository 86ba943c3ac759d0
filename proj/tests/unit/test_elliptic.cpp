#include <cmath>
#include <random>

#include "doctest.h"
#include "sigcount/elliptic.hpp"
#include "sigcount/error.hpp"

using namespace sigcount;

namespace {
constexpr cplx I{0, 1};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// Values from tests/oracles/sigma_series_oracle.py (Taylor series in g2, g3 at 250 digits).
constexpr double kG2Square = 189.07272012923385229;
}  // namespace

TEST_CASE("E2 values") {
  CHECK(std::abs(eisenstein_E2(I, 1e-20) - 3.0 / kPi) < 1e-14);
  CHECK(std::abs(eisenstein_E2(cplx(0, 40), 1e-30) - 1.0) < 1e-15);
  const cplx rho{0.5, std::sqrt(3.0) / 2};
  CHECK(std::abs(eisenstein_E2(rho, 1e-8) - eisenstein_E2(rho, 1e-25)) < 1e-8);
  CHECK_THROWS_AS(eisenstein_E2(cplx(0, 0.4), 1e-10), Error);
  CHECK_THROWS_AS(eisenstein_E2(I, 0.5), Error);
}

TEST_CASE("quasi-periods of square lattices") {
  auto d = quasi_periods(reduce_basis(1.0, I), 1e-20);
  CHECK(std::abs(d.eta1 - kPi) < 1e-13);
  CHECK(std::abs(d.eta2 + kPi * I) < 1e-13);
  CHECK(std::abs(d.g3) < 1e-10);
  CHECK(std::abs(d.g2 - kG2Square) < 1e-10);
  auto d2 = quasi_periods(reduce_basis(2.0, 2.0 * I), 1e-20);
  CHECK(std::abs(d2.eta1 - kPi / 2) < 1e-13);
}

TEST_CASE("Legendre relation and scaling law") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(std::sqrt(3.0) / 2, 5.0);
  for (int i = 0; i < 100; ++i) {
    cplx tau{re(rng), im(rng)};
    if (std::abs(tau) < 1) continue;
    const cplx w1{1.0 + re(rng), re(rng)};
    auto lat = reduce_basis(w1, tau * w1);
    auto d = quasi_periods(lat, 1e-25);
    const cplx lhs = d.eta1 * lat.omega2() - d.eta2 * lat.omega1();
    CHECK(std::abs(lhs - 2.0 * kPi * I) <= 1e-10 * (1 + std::abs(d.eta1 * lat.omega2())));
    CHECK(std::abs(d.q) <= std::exp(-kPi * std::sqrt(3.0)) + 1e-12);
    auto dn = quasi_periods_normalized(lat.tau(), 1e-25);
    CHECK(std::abs(d.eta1 - dn.eta1 / lat.omega1()) <= 1e-10 * std::abs(d.eta1));
  }
}

TEST_CASE("sigma against the Taylor-series oracle") {
  SigmaEvaluator ev(reduce_basis(1.0, I));
  CHECK(rel(ev.sigma(cplx(0.3, 0.2)), cplx(0.3046906853087617881, 0.19905799361147396353)) < 1e-13);
  CHECK(rel(ev.sigma(0.2), 0.199747789560216144) < 1e-13);
  CHECK(rel(ev.sigma(1.2), -1.8011315334369055861) < 1e-13);
  auto ls = ev.log_sigma(cplx(10.3, 0.4));
  CHECK(ls.log_abs == doctest::Approx(165.85189556152253864).epsilon(1e-13));
  CHECK(ls.arg == doctest::Approx(0.95195802152057661572).epsilon(1e-9));
  auto l0 = ev.log_sigma(cplx(0.3, 0.2));
  CHECK(l0.log_abs == doctest::Approx(-1.0107354011356460951).epsilon(1e-13));
  CHECK(l0.arg == doctest::Approx(0.5786997923438277615).epsilon(1e-13));
}

TEST_CASE("sigma near zero, oddness and zeros") {
  SigmaEvaluator ev(reduce_basis(1.0, I));
  CHECK(ev.sigma(0.0) == cplx(0, 0));
  CHECK(std::abs(ev.sigma(1e-6) / 1e-6 - 1.0) < 1e-9);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100; ++i) {
    cplx z{u(rng), u(rng)};
    CHECK(std::abs(ev.sigma(-z) + ev.sigma(z)) <= 1e-12 * std::abs(ev.sigma(z)) + 1e-300);
  }
  for (int k = -5; k <= 5; ++k)
    for (int l = -5; l <= 5; ++l) {
      const cplx w{double(k), double(l)};
      if (std::abs(w) > 5) continue;
      CHECK(std::abs(ev.sigma(w)) < 1e-10);
      // simple zero: sigma(w + e) is linear in e
      const double eps = 1e-7;
      CHECK(std::abs(ev.sigma(w + eps) / ev.sigma(w + 2 * eps) - 0.5) < 1e-6);
    }
}

TEST_CASE("quasi-periodicity identity") {
  SigmaEvaluator ev(reduce_basis(1.0, I));
  const cplx z0 = 0.2;
  const cplx lhs = ev.sigma(z0 + 1.0);
  const cplx rhs = -ev.sigma(z0) * std::exp(kPi * (z0 + 0.5));
  CHECK(rel(lhs, rhs) < 1e-9);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> h(-0.5, 0.5);
  std::uniform_int_distribution<int> mn(-5, 5);
  for (auto lat : {reduce_basis(1.0, I), reduce_basis(1.0, cplx(0.3, 1.2))}) {
    SigmaEvaluator e(lat);
    const auto& d = e.data();
    for (int i = 0; i < 200; ++i) {
      const cplx z0c = h(rng) * lat.omega1() + h(rng) * lat.omega2();
      const int m = mn(rng), n = mn(rng);
      const cplx z = z0c + lat.point(m, n);
      const double expected =
          e.log_sigma(z0c).log_abs +
          ((double(m) * d.eta1 + double(n) * d.eta2) * (z0c + 0.5 * lat.point(m, n))).real();
      const double got = e.log_sigma(z).log_abs;
      CHECK(std::abs(got - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("reduced path agrees with the unreduced theta quotient") {
  for (auto lat : {reduce_basis(1.0, I), reduce_basis(1.0, cplx(0.3, 1.2)),
                   reduce_basis(cplx(0.7, 0.4), cplx(-0.2, 1.1))}) {
    SigmaEvaluator ev(lat);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 50; ++i) {
      const cplx un{u(rng), u(rng)};
      const cplx direct = lat.omega1() * ev.sigma_normalized_unreduced(un);
      const cplx reduced = ev.sigma(un * lat.omega1());
      CHECK(rel(reduced, direct) < 1e-9);
    }
  }
}

TEST_CASE("zeta properties") {
  SigmaEvaluator ev(reduce_basis(1.0, I));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 20; ++i) {
    cplx z{u(rng), u(rng)};
    CHECK(std::abs(ev.zeta(-z) + ev.zeta(z)) < 1e-9 * (1 + std::abs(ev.zeta(z))));
    CHECK(std::abs(ev.zeta(z + 1.0) - ev.zeta(z) - kPi) < 1e-8);
    const double h = 1e-5;
    auto a = ev.log_sigma(z + h), b = ev.log_sigma(z - h);
    cplx dlog{(a.log_abs - b.log_abs) / (2 * h), std::remainder(a.arg - b.arg, 2 * kPi) / (2 * h)};
    CHECK(std::abs(dlog - ev.zeta(z)) <= 1e-6 * (1 + std::abs(ev.zeta(z))));
  }
  CHECK(std::abs(1e-6 * ev.zeta(1e-6) - 1.0) < 1e-6);
  CHECK_THROWS_AS(ev.log_sigma(cplx(2, 3)), Error);
}

TEST_CASE("log_sigma stays finite far out") {
  SigmaEvaluator ev(reduce_basis(1.0, cplx(0.3, 1.2)));
  auto l = ev.log_sigma(cplx(7.3e5, -4.1e5));
  CHECK(std::isfinite(l.log_abs));
  CHECK(l.log_abs > 1e10);
}
