#include <cmath>
#include <random>

#include "doctest.h"
#include "sigcount/error.hpp"
#include "sigcount/lattice.hpp"

using namespace sigcount;

namespace {
constexpr cplx I{0, 1};
}

TEST_CASE("reduce_basis on already-reduced and translated bases") {
  auto a = reduce_basis(1.0, I);
  CHECK(std::abs(a.tau() - I) < 1e-15);
  CHECK(a.reduction() == BasisChange{});

  auto b = reduce_basis(1.0, 1.0 + I);
  CHECK(std::abs(b.tau() - I) < 1e-15);
  CHECK(b.reduction().determinant() * b.reduction().determinant() == 1);
}

TEST_CASE("reduce_basis fixes orientation") {
  auto l = reduce_basis(2.0 * I, 2.0);
  CHECK(std::abs(l.tau() - I) < 1e-15);
  CHECK(std::abs(l.omega1() - cplx(2, 0)) < 1e-15);
  CHECK(std::abs(l.omega2() - cplx(0, 2)) < 1e-15);
}

TEST_CASE("reduce_basis boundary ties") {
  auto l = reduce_basis(1.0, cplx(-0.5, 1.2));
  CHECK(l.tau().real() == doctest::Approx(0.5));
  auto h = reduce_basis(1.0, cplx(-0.3, std::sqrt(0.91)));
  CHECK(std::abs(std::abs(h.tau()) - 1.0) < 1e-12);
  CHECK(h.tau().real() == doctest::Approx(0.3));
}

TEST_CASE("reduce_basis rejects degenerate input") {
  CHECK_THROWS_AS(reduce_basis(0.0, I), Error);
  CHECK_THROWS_AS(reduce_basis(1.0, 2.0), Error);
  try {
    reduce_basis(1.0, cplx(3, 1e-14));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateBasis);
  }
}

TEST_CASE("reduce_basis is invariant under unimodular change") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-4, 4);
  const cplx w1{1.3, 0.2}, w2{-0.4, 1.7};
  const cplx tau0 = reduce_basis(w1, w2).tau();
  int tried = 0;
  while (tried < 200) {
    int a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (a * e - b * c != 1 && a * e - b * c != -1) continue;
    ++tried;
    auto l = reduce_basis(double(a) * w1 + double(b) * w2, double(c) * w1 + double(e) * w2);
    CHECK(std::abs(l.tau() - tau0) < 1e-10);
  }
}

TEST_CASE("exact reduction reproduces the periods") {
  auto l = parse_lattice("2i,2");
  REQUIRE(l.exact_periods().has_value());
  const auto& m = l.reduction();
  GaussianRational w1 = parse_gaussian("2i"), w2 = parse_gaussian("2");
  GaussianRational r1 = GaussianRational(Rational(m.a), Rational(0)) * w1 + GaussianRational(Rational(m.b), Rational(0)) * w2;
  GaussianRational r2 = GaussianRational(Rational(m.c), Rational(0)) * w1 + GaussianRational(Rational(m.d), Rational(0)) * w2;
  CHECK(r1 == (*l.exact_periods())[0]);
  CHECK(r2 == (*l.exact_periods())[1]);
  CHECK(std::abs(l.tau() - I) < 1e-15);

  auto hex = parse_lattice("3/2+1/3i, 7/5-2i");
  CHECK(std::abs(hex.tau()) >= 1.0 - 1e-12);
  CHECK(std::abs(hex.tau().real()) <= 0.5 + 1e-12);
}

TEST_CASE("decompose examples and round trip") {
  auto sq = reduce_basis(1.0, I);
  CHECK(decompose(sq, cplx(3, 4)) == LatticeCoords{3, 4});
  CHECK(decompose(sq, 0.0) == LatticeCoords{0, 0});
  CHECK_THROWS_AS(decompose(sq, cplx(0.5, 0)), Error);

  auto l = reduce_basis(2.0, 1.0 + I);
  auto kl = decompose(l, cplx(3, 1));
  CHECK(std::abs(l.point(kl.k, kl.l) - cplx(3, 1)) < 1e-12);

  const double c = cosine_constant(l);
  for (int k = -100; k <= 100; k += 7)
    for (int j = -100; j <= 100; j += 3) {
      const cplx w = l.point(k, j);
      auto r = decompose(l, w);
      CHECK(r == LatticeCoords{k, j});
      if (k != 0 || j != 0) {
        CHECK(std::abs(k) <= c * std::abs(w) + 1e-9);
        CHECK(std::abs(j) <= c * std::abs(w) + 1e-9);
      }
    }
}

TEST_CASE("cosine_constant examples") {
  CHECK(cosine_constant(reduce_basis(1.0, I)) == doctest::Approx(1.0));
  CHECK(cosine_constant(reduce_basis(1.0, 2.0 * I)) == doctest::Approx(1.0));
  CHECK(cosine_constant(reduce_basis(1.0, cplx(0.5, std::sqrt(3.0) / 2))) ==
        doctest::Approx(2.0 / std::sqrt(3.0)));
}

TEST_CASE("reduce_to_cell examples") {
  auto sq = reduce_basis(1.0, I);
  auto a = reduce_to_cell(sq, cplx(0.2, 0.3));
  CHECK(a.m == 0);
  CHECK(a.n == 0);
  auto b = reduce_to_cell(sq, cplx(1.2, 0.3));
  CHECK(b.m == 1);
  CHECK(b.n == 0);
  CHECK(std::abs(b.z0 - cplx(0.2, 0.3)) < 1e-12);
  auto c = reduce_to_cell(sq, cplx(-2.6, -2.6));
  CHECK(c.m == -3);
  CHECK(c.n == -3);
  CHECK(std::abs(c.z0 - cplx(0.4, 0.4)) < 1e-12);
  // boundary: s = 1/2 belongs to the cell with the smaller m
  auto e = reduce_to_cell(sq, cplx(0.5, 0.0));
  CHECK(e.m == 0);
  auto f = reduce_to_cell(sq, cplx(-0.5, 0.0));
  CHECK(f.m == -1);
}

TEST_CASE("reduce_to_cell round trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50, 50);
  for (auto lat : {reduce_basis(1.0, I), reduce_basis(1.0, cplx(0.3, 1.2))}) {
    const double tolP = 1e-10 * lat.period_scale();
    for (int i = 0; i < 10000; ++i) {
      cplx z{u(rng), u(rng)};
      if (std::abs(z) > 50) continue;
      auto r = reduce_to_cell(lat, z);
      const cplx back = r.z0 + lat.point(r.m, r.n);
      CHECK(std::abs(back - z) <= 1e-12 * std::max(1.0, std::abs(z)));
      auto st = real_coordinates(lat, r.z0);
      CHECK(std::abs(st[0]) <= 0.5 + tolP);
      CHECK(std::abs(st[1]) <= 0.5 + tolP);
    }
  }
}
