#include <cmath>
#include <random>

#include "doctest.h"
#include "sigcount/error.hpp"
#include "sigcount/growth.hpp"

using namespace sigcount;

namespace {
constexpr cplx I{0, 1};
}

TEST_CASE("phi") {
  CHECK(phi(40.0) < 1e-100);
  // direct evaluation (tests/oracles/sigma_series_oracle.py)
  CHECK(phi(std::sqrt(3.0) / 2) == doctest::Approx(0.105365949864367).epsilon(1e-12));
  CHECK(phi(1.0) > phi(1.5));
  CHECK(phi(1.5) > phi(1.9));
  CHECK_THROWS_AS(phi(0.0), Error);
}

TEST_CASE("threshold iteration") {
  auto ys = threshold_iteration(4);
  REQUIRE(ys.size() == 5);
  CHECK(ys[0] == doctest::Approx(std::sqrt(3.0) / 2));
  for (int i = 0; i < 4; ++i) CHECK(ys[i] < ys[i + 1]);
  CHECK(std::abs(ys[4] - 1.909) < 0.005);
  const double oracle[5] = {0.866025403784439, 1.39841037284584, 1.88896794411477,
                            1.90889616492403, 1.9090094931408};
  for (int i = 0; i < 5; ++i) CHECK(ys[i] == doctest::Approx(oracle[i]).epsilon(1e-12));
}

TEST_CASE("discriminant") {
  auto d = discriminant(quasi_periods_normalized(I, 1e-20), I);
  CHECK(d.value == doctest::Approx(-kPi * kPi).epsilon(1e-12));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> x(-0.5, 0.5), y(std::sqrt(3.0) / 2, 1.9);
  int n = 0;
  while (n < 100) {
    cplx tau{x(rng), y(rng)};
    if (std::abs(tau) < 1) continue;
    ++n;
    auto dd = discriminant(quasi_periods_normalized(tau, 1e-20), tau);
    CHECK(dd.value < 0);
    CHECK(std::abs(dd.value - dd.alternative) <= 1e-8 * std::abs(dd.value));
  }
  QuasiPeriodData bad = quasi_periods_normalized(I, 1e-20);
  bad.eta2 = bad.eta2 * 0.5;  // wrong convention
  CHECK_THROWS_AS(discriminant(bad, I), Error);
}

TEST_CASE("E2 bounds in terms of phi") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> x(-0.5, 0.5), y(std::sqrt(3.0) / 2, 4.0);
  int n = 0;
  while (n < 200) {
    cplx tau{x(rng), y(rng)};
    if (std::abs(tau) < 1) continue;
    ++n;
    const cplx e2 = eisenstein_E2(tau, 1e-20);
    CHECK(e2.real() >= 1 - phi(tau.imag()) - 1e-14);
    CHECK(std::abs(e2) <= 1 + phi(tau.imag()) + 1e-14);
  }
}

TEST_CASE("certificate for Z+Zi") {
  auto lat = reduce_basis(1.0, I);
  auto cert = build_certificate(lat, 1e-20);
  CHECK(cert.c1 == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(cert.c2 == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(cert.delta_disc < 0);
  CHECK(cert.c > 0);
  CHECK(cert.r >= 1);
  CHECK(cert.delta_sigma > 0);
  CHECK(certificate_inequality_holds(cert, lat.tau()));
}

TEST_CASE("certificate guards") {
  CHECK_THROWS_AS(build_certificate(reduce_basis(1.0, 2.5 * I), 1e-20), Error);
  try {
    build_certificate(reduce_basis(1.0, 2.5 * I), 1e-20);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ImTauTooLarge);
  }
  CHECK_NOTHROW(build_certificate(reduce_basis(1.0, 1.9 * I), 1e-20, {false}));
}

TEST_CASE("certificate soundness by sampling") {
  CertificateOptions quick;
  quick.grid = 60;
  quick.refine = 2;
  for (auto lat : {reduce_basis(1.0, I), reduce_basis(1.0, cplx(0.3, 1.2)),
                   reduce_basis(3.0, 3.0 * I)}) {
    auto cert = build_certificate(lat, 1e-20, quick);
    SigmaEvaluator ev(lat);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> rad(cert.r, cert.r + 20), ang(0, 2 * kPi);
    for (int i = 0; i < 1000; ++i) {
      const cplx z = std::polar(rad(rng), ang(rng));
      const auto cell = reduce_to_cell(lat, z);
      const double lhs = ev.log_sigma(z).log_abs;
      const double rhs = ev.log_sigma(cell.z0).log_abs + cert.c * std::norm(z);
      CHECK(lhs >= rhs - 1e-9 * std::abs(lhs));
      CHECK(lhs <= std::log(cert.upper_c1) + cert.upper_c2 * std::norm(z));
    }
    // delta_sigma soundness on a grid of P
    const int n = 80;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const cplx w = (-0.5 + (i + 0.5) / n) * lat.omega1() + (-0.5 + (j + 0.5) / n) * lat.omega2();
        const double ls = ev.log_sigma(w).log_abs;
        if (ls <= -cert.delta_sigma) CHECK(std::abs(ls - std::log(std::abs(w))) <= 1.0);
      }
  }
}

TEST_CASE("global upper bound on a disk") {
  auto lat = reduce_basis(1.0, I);
  auto cert = build_certificate(lat, 1e-20, {false});
  SigmaEvaluator ev(lat);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> rad(0, 30), ang(0, 2 * kPi);
  for (int i = 0; i < 1000; ++i) {
    const cplx z = std::polar(rad(rng), ang(rng));
    if (std::abs(reduce_to_cell(lat, z).z0) < 1e-6) continue;
    CHECK(ev.log_sigma(z).log_abs <= std::log(cert.upper_c1) + cert.upper_c2 * std::norm(z));
  }
}

TEST_CASE("delta_check_range") {
  auto rep = delta_check_range(std::sqrt(3.0) / 2, 1.9, 500);
  CHECK(rep.samples > 0);
  CHECK(rep.violations == 0);
  CHECK(rep.max_delta <= -1e-6);
  CHECK(rep.sufficient_condition);
  CHECK(rep.within_certified_range);
  auto probe = delta_check_range(3.0, 3.0, 1);
  CHECK(probe.samples == 1);
  CHECK_FALSE(probe.within_certified_range);
}
