#include <cmath>

#include "doctest.h"
#include "sigcount/bounds.hpp"
#include "sigcount/error.hpp"

using namespace sigcount;

namespace {
const double E = std::exp(1.0);
constexpr cplx I{0, 1};

BoundValue eval(BoundId id, NamedValues p, NamedValues c = {{"c", 1}, {"A", 1}, {"B", 1}, {"c10", 1}}) {
  return eval_bound(id, p, c);
}
}  // namespace

TEST_CASE("theorem bounds at the domain corner") {
  auto t1 = eval(BoundId::Thm1, {{"d", E}, {"H", std::exp(E)}});
  CHECK(t1.value == doctest::Approx(std::exp(8.0)).epsilon(1e-12));
  CHECK(t1.value == doctest::Approx(2980.96).epsilon(1e-6));
  auto t2 = eval(BoundId::Thm2, {{"d", E}, {"H", std::exp(E)}});
  CHECK(t2.value == doctest::Approx(std::exp(22.0)).epsilon(1e-12));
  CHECK_THROWS_AS(eval(BoundId::Thm1, {{"d", 2.0}, {"H", 100.0}}), Error);
  try {
    eval(BoundId::Thm1, {{"d", 3.0}, {"H", 10.0}});
    FAIL("expected a domain violation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DomainViolation);
    CHECK(std::string(e.what()).find("H >= e^e") != std::string::npos);
  }
  CHECK_THROWS_AS(eval_bound(BoundId::Thm1, {{"d", 3.0}, {"H", 100.0}}, {}), Error);
}

TEST_CASE("other bound examples") {
  auto bc = eval(BoundId::BessonCount, {{"d", 1}, {"H", 3}, {"R", 2}});
  const double l3 = std::log(3.0);
  CHECK(bc.value == doctest::Approx(1024 * std::log(2.0) * l3 * l3 / std::log(l3)).epsilon(1e-12));
  auto l41 = eval(BoundId::MeasureRhs, {{"d", 3}, {"H", 3}, {"omega", 1}});
  CHECK(l41.sign == -1);
  CHECK(l41.value == doctest::Approx(-107.4).epsilon(1e-3));
  auto ex = eval(BoundId::ExceptionalSet, {{"d", E}, {"H", std::exp(E)}});
  CHECK(std::isfinite(ex.value));
  CHECK(ex.value == doctest::Approx(std::sqrt(std::pow(E, 5) * E * std::pow(1 + E * E, 3))).epsilon(1e-12));
  auto bz = eval(BoundId::BessonZero, {{"L", 1}, {"R", 2}});
  CHECK(bz.value == doctest::Approx(9 * std::log(3.0)));
  CHECK(eval(BoundId::RadiusN, {{"d", 2}, {"H", E * E}}).value == doctest::Approx(2.0));
  CHECK(eval(BoundId::MasserCoefficient, {{"d", 1}, {"T", 1}, {"H", 2}}).value == doctest::Approx(16.0));
  auto j = eval(BoundId::JensenLog, {{"T", 2}, {"H", 3}});
  CHECK(j.value == doctest::Approx(std::log(81.0 * 9 * 4 * std::exp(8.0))));
}

TEST_CASE("log-safe evaluation far out") {
  for (auto id : all_bound_ids()) {
    NamedValues p{{"d", 1000}, {"H", 1e6}, {"R", 1e6}, {"L", 1000}, {"omega", 1e6}, {"T", 1000}};
    auto v = eval(id, p);
    CHECK(std::isfinite(v.log_abs));
  }
  auto t2 = eval(BoundId::FinalCount, {{"d", 1e3}, {"H", 1e6}});
  CHECK(std::isfinite(t2.log_abs));
  auto m = eval(BoundId::MasserCoefficient, {{"d", 1}, {"T", 1e3}, {"H", 1e6}});
  CHECK(std::isinf(m.value));
  CHECK(m.log_abs == doctest::Approx(std::log(2.0) + 2 * std::log(1001.0) + 1e3 * std::log(1e6)));
}

TEST_CASE("bound monotonicity") {
  // nondecreasing in d and H on the admissible domain (negative-valued ids are
  // nonincreasing, i.e. their magnitude grows)
  const std::vector<double> ds{E, 4, 6, 10, 30}, hs{std::exp(E), 20, 100, 1e4};
  for (auto id : {BoundId::Thm1, BoundId::Thm2, BoundId::RadiusBasic, BoundId::RadiusRefined,
                  BoundId::ExceptionalSet, BoundId::FinalCount, BoundId::RadiusN, BoundId::RadiusException,
                  BoundId::MeasureRhs, BoundId::BessonCount}) {
    for (std::size_t a = 0; a + 1 < ds.size(); ++a)
      for (std::size_t b = 0; b + 1 < hs.size(); ++b) {
        NamedValues p{{"d", ds[a]}, {"H", hs[b]}, {"R", 3}, {"omega", 2}};
        NamedValues pd = p, ph = p;
        pd["d"] = ds[a + 1];
        ph["H"] = hs[b + 1];
        const auto v = eval(id, p), vd = eval(id, pd), vh = eval(id, ph);
        CHECK(vd.log_abs >= v.log_abs);
        CHECK(vh.log_abs >= v.log_abs);
      }
  }
  // final_count dominates thm2 from e^3 on; the refined radius dominates the basic one
  for (double d : {std::exp(3.0), 30.0, 100.0})
    for (double H : {std::exp(3.0), 1e3, 1e8}) {
      CHECK(eval(BoundId::FinalCount, {{"d", d}, {"H", H}}).log_abs >= eval(BoundId::Thm2, {{"d", d}, {"H", H}}).log_abs);
    }
  for (double d : {E, 4.0, 9.0})
    for (double H : {3.0, 50.0})
      CHECK(eval(BoundId::RadiusRefined, {{"d", d}, {"H", H}}).value >=
            eval(BoundId::RadiusBasic, {{"d", d}, {"H", H}}).value);
}

TEST_CASE("ids round trip") {
  for (auto id : all_bound_ids()) CHECK(parse_bound_id(bound_name(id)) == id);
  CHECK_THROWS_AS(parse_bound_id("nope"), Error);
}

TEST_CASE("lemma_common_A") {
  CHECK(lemma_common_A(1, 1, 1) == doctest::Approx(std::sqrt(3.0)));
  CHECK(lemma_common_A(0.5, 4, 0) == doctest::Approx(std::sqrt(2.5) / 2));
  CHECK(lemma_common_A(2, 1, 1) >= lemma_common_A(1, 1, 1));
  CHECK(lemma_common_A(1, 1, 5) >= lemma_common_A(1, 1, 1));
  CHECK(lemma_common_A(1, 2, 1) <= lemma_common_A(1, 1, 1));
}

TEST_CASE("lemma_common_radius_check") {
  auto lat = reduce_basis(1.0, I);
  SigmaEvaluator ev(lat);
  CertificateOptions o;
  o.grid = 100;
  o.refine = 2;
  auto cert = build_certificate(lat, 1e-20, o);
  // z = z0 + 13 + 13i with log|z0| = -1000; 10 + 10i lies inside the certified radius r ~ 18.15
  PolarCellPoint z{-1000.0, 0.3, 13, 13};
  auto v = lemma_common_radius_check(ev, cert, z, std::exp(4.0), 1, 1.0, 3.0);
  CHECK(v.applicable);
  CHECK(v.holds);
  REQUIRE(v.links.size() == 5);
  for (const auto& l : v.links) CHECK(l.slack > 0);

  auto far = lemma_common_radius_check(ev, cert, PolarCellPoint{-1000.0, 0.3, 13, 13}, std::exp(4.0), 1, 1.0, 30.0);
  CHECK_FALSE(far.applicable);
  CHECK(far.links.empty());
  CHECK_THROWS_AS(lemma_common_radius_check(ev, cert, z, std::exp(4.0), 1, 1.0, 1.0), Error);
  CHECK_THROWS_AS(lemma_common_radius_check(ev, cert, PolarCellPoint{-1000.0, 0.0, 0, 0}, std::exp(4.0), 1, 1.0, 3.0),
                  Error);
}
