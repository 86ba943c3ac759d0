// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <streambuf>
#include <string>
#include <vector>

#include "sigcount/algebraic.hpp"
#include "sigcount/auxpoly.hpp"
#include "sigcount/bounds.hpp"
#include "sigcount/census.hpp"
#include "sigcount/elliptic.hpp"
#include "sigcount/error.hpp"
#include "sigcount/growth.hpp"
#include "sigcount/lattice.hpp"
#include "sigcount/zerocount.hpp"

using namespace sigcount;

namespace {

constexpr cplx I{0, 1};
constexpr double kE = 2.718281828459045235360287;

// Calibrated on 200 random cases drawn with seed 1001 (max observed ratio 1.607).
constexpr double kBessonC = 1.75;
constexpr std::uint64_t kBessonTestSeed = 2;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

int failures = 0;

void run(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const Error& e) {
    o = {false, std::string("error ") + errc_name(e.code()) + ": " + e.what()};
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= limit_s) {
    o.pass = false;
    o.detail += "; over time limit";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %-22s %8.2fs (limit %.0fs)  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, limit_s,
              o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome threshold() {
  auto ys = threshold_iteration(4);
  bool ok = ys.size() == 5 && std::abs(ys[0] - std::sqrt(3.0) / 2) < 1e-15;
  for (int i = 0; ok && i < 4; ++i) ok = ys[i] < ys[i + 1];
  ok = ok && std::abs(ys[4] - 1.909) <= 0.005;
  return {ok, fmt("y4 = %.6f", ys.back())};
}

Outcome delta_grid() {
  // 25 columns in Re tau, 20 rows from the unit-circle boundary up to 1.9.
  int n = 0, bad = 0;
  double worst_delta = -1e300, worst_agree = 0;
  for (int i = 0; i < 25; ++i) {
    const double x = -0.5 + i / 24.0;
    const double lo = std::max(std::sqrt(3.0) / 2, std::sqrt(std::max(0.0, 1 - x * x)));
    for (int j = 0; j < 20; ++j) {
      const cplx tau{x, lo + (kImTauLimit - lo) * j / 19.0};
      auto d = discriminant(quasi_periods_normalized(tau, 1e-25), tau);
      const double agree = std::abs(d.value - d.alternative) / std::abs(d.value);
      worst_delta = std::max(worst_delta, d.value);
      worst_agree = std::max(worst_agree, agree);
      if (!(d.value <= -1e-6) || agree > 1e-8) ++bad;
      ++n;
    }
  }
  return {n == 500 && bad == 0, fmt("%.0f taus, max Delta %.4g, max formula gap %.2g", n, worst_delta, worst_agree)};
}

Outcome closed_forms() {
  const double pi = kPi;
  auto lat = reduce_basis(1.0, I);
  auto q = quasi_periods(lat, 1e-25);
  auto d = discriminant(quasi_periods_normalized(I, 1e-25), I);
  CertificateOptions quick;
  quick.search_delta = false;
  auto cert = build_certificate(lat, 1e-25, quick);
  const double errs[] = {rel(eisenstein_E2(I, 1e-25), 3 / pi),
                         rel(q.eta1, pi),
                         rel(q.eta2, -pi * I),
                         rel(d.value, -pi * pi),
                         rel(cert.c1, pi / 2),
                         rel(cert.c2, 2 * pi)};
  double worst = 0;
  for (double e : errs) worst = std::max(worst, e);
  return {worst <= 1e-9, fmt("max relative error %.2g", worst)};
}

Outcome legendre_quasi() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(std::sqrt(3.0) / 2, 3.0), sc(0.5, 2.0);
  double worst_leg = 0;
  int taus = 0;
  while (taus < 100) {
    const cplx tau{re(rng), im(rng)};
    if (std::abs(tau) < 1) continue;
    const cplx w1 = std::polar(sc(rng), 2 * kPi * re(rng));
    auto lat = reduce_basis(w1, tau * w1);
    auto d = quasi_periods(lat, 1e-25);
    const cplx lhs = d.eta1 * lat.omega2() - d.eta2 * lat.omega1();
    worst_leg = std::max(worst_leg, std::abs(lhs - 2.0 * kPi * I) / (1 + std::abs(d.eta1 * lat.omega2())));
    ++taus;
  }

  // The expected side uses the unreduced theta quotient so the check does not
  // reuse the cell reduction being tested.
  double worst_q = 0;
  std::uniform_real_distribution<double> h(-0.5, 0.5);
  std::uniform_int_distribution<int> mn(-5, 5);
  for (auto lat : {reduce_basis(1.0, I), reduce_basis(1.0, cplx(0.3, 1.2))}) {
    SigmaEvaluator ev(lat);
    const auto& d = ev.data();
    for (int i = 0; i < 200; ++i) {
      const cplx z0 = h(rng) * lat.omega1() + h(rng) * lat.omega2();
      const int m = mn(rng), n = mn(rng);
      const cplx w = lat.point(m, n);
      const double base = std::log(std::abs(lat.omega1() * ev.sigma_normalized_unreduced(z0 / lat.omega1())));
      const double expected = base + ((double(m) * d.eta1 + double(n) * d.eta2) * (z0 + 0.5 * w)).real();
      const double got = ev.log_sigma(z0 + w).log_abs;
      worst_q = std::max(worst_q, std::abs(got - expected) / std::max(1.0, std::abs(expected)));
    }
  }
  return {worst_leg < 1e-10 && worst_q < 1e-9,
          fmt("Legendre residual %.2g, quasi-periodicity residual %.2g", worst_leg, worst_q)};
}

Outcome certificate_soundness() {
  int violations = 0, samples = 0;
  double min_slack = 1e300;
  for (auto lat : {reduce_basis(1.0, I), reduce_basis(1.0, cplx(0.3, 1.2))}) {
    auto cert = build_certificate(lat, 1e-25);
    SigmaEvaluator ev(lat);
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> rad(cert.r, cert.r + 20), ang(0, 2 * kPi);
    for (int i = 0; i < 1000; ++i) {
      const cplx z = std::polar(rad(rng), ang(rng));
      const auto cell = reduce_to_cell(lat, z);
      const double slack = ev.log_sigma(z).log_abs - ev.log_sigma(cell.z0).log_abs - cert.c * std::norm(z);
      min_slack = std::min(min_slack, slack);
      if (slack < 0) ++violations;
      ++samples;
    }
  }
  return {violations == 0, fmt("%.0f samples, %.0f violations, min slack %.4g", samples, violations, min_slack)};
}

int lattice_points_within(const Lattice& lat, double R) {
  int n = 0;
  for (int k = -60; k <= 60; ++k)
    for (int l = -60; l <= 60; ++l)
      if (std::abs(lat.point(k, l)) <= R) ++n;
  return n;
}

Outcome zero_counting() {
  auto lat = reduce_basis(1.0, I);
  SigmaEvaluator ev(lat);
  const auto Y = BivariatePoly::parse("Y");
  auto base = count_zeros(ev, Y, 1.5);
  bool ok = base.count && *base.count == 9 && base.winding_residual < 0.05;
  double worst = base.winding_residual;
  int mismatches = 0;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.5, 8.0);
  for (int t = 0; t < 20; ++t) {
    auto rep = count_zeros(ev, Y, u(rng));
    worst = std::max(worst, rep.winding_residual);
    if (!rep.count || *rep.count != lattice_points_within(lat, rep.radius) || rep.winding_residual >= 0.05)
      ++mismatches;
  }
  ok = ok && mismatches == 0;
  return {ok, fmt("Y@1.5 -> %.0f, %.0f mismatches over 20 radii, max residual %.2g",
                  base.count ? *base.count : -1, mismatches, worst)};
}

Outcome besson_shape() {
  ZeroExperimentConfig cfg;
  cfg.seed = kBessonTestSeed;
  cfg.random_cases = 30;
  cfg.besson_c = kBessonC;
  std::ostringstream sink;
  auto s = run_zero_experiment(cfg, sink);
  bool ok = s.rows.size() == 30 && s.besson_violations == 0 && s.jensen_violations == 0 && s.jensen_failures == 0;
  for (const auto& r : s.rows) {
    ok = ok && r.count.has_value() && r.input.R >= 2 && r.input.R <= 6 && r.L <= 4;
    ok = ok && r.jensen_bound && *r.jensen_bound >= *r.count;
  }
  return {ok, fmt("c = %.2f, max count/shape %.4f, %.0f Jensen violations", kBessonC, s.max_shape_ratio,
                  s.jensen_violations + s.jensen_failures)};
}

Outcome auxpoly() {
  std::mt19937_64 rng(88);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6), tt(1, 5);
  int bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int T = tt(rng);
    std::uniform_int_distribution<int> np(1, (T + 1) * (T + 2) / 2 - 1);
    std::vector<AlgebraicPoint> pts;
    const int n = np(rng);
    for (int k = 0; k < n; ++k)
      pts.push_back({make_rational(Rational(num(rng), den(rng))), make_rational(Rational(num(rng), den(rng)))});
    auto P = construct_vanishing(pts, T);
    if (P.max_abs_coefficient() == 0) ++bad;
    for (const auto& pt : pts)
      if (!vanishes_exactly(P, pt)) ++bad;
  }

  // Raising A or Z keeps a satisfied condition satisfied, raising M, H or d
  // keeps a failed one failed, and past the point where it first holds larger
  // T keeps it holding.
  int mono_bad = 0;
  std::uniform_real_distribution<double> u(0.5, 50);
  std::uniform_int_distribution<int> dd(1, 4), extra(0, 60);
  for (int k = 0; k < 500; ++k) {
    MasserParameters p{dd(rng), 0, u(rng), u(rng), u(rng), 1 + u(rng)};
    p.T = static_cast<int>(std::ceil(std::sqrt(8.0 * p.d))) + extra(rng);
    const bool h = masser_condition(p).holds;
    MasserParameters a = p, z = p, m = p, hh = p, d = p;
    a.A *= 1.7;
    z.Z *= 1.7;
    m.M *= 2;
    hh.H *= 2;
    d.d += 1;
    const bool d_valid = d.T >= std::sqrt(8.0 * d.d);
    if (h && !(masser_condition(a).holds && masser_condition(z).holds)) ++mono_bad;
    if (!h && (masser_condition(m).holds || masser_condition(hh).holds)) ++mono_bad;
    if (!h && d_valid && masser_condition(d).holds) ++mono_bad;
    MasserParameters t = p;
    t.T *= 2;
    if (h && p.A * p.Z > 1 && !masser_condition(t).holds) ++mono_bad;
  }
  return {bad == 0 && mono_bad == 0, fmt("%.0f vanishing failures, %.0f monotonicity failures", bad, mono_bad)};
}

Outcome heights() {
  const auto e12 = enumerate(1, 2.0);
  bool ok = e12.size() == 7;
  for (int d = 1; d <= 2; ++d) {
    std::size_t prev = 0;
    for (double H : {1.0, 1.5, 2.0, 2.5, 3.0}) {
      const auto n = enumerate(d, H).size();
      ok = ok && n >= prev;
      prev = n;
    }
  }
  for (double H : {1.0, 2.0, 3.0}) ok = ok && enumerate(1, H).size() <= enumerate(2, H).size();
  int bad_mod = 0, bad_detect = 0, checked = 0;
  for (int d = 1; d <= 2; ++d)
    for (double H : {1.0, 2.0, 3.0})
      for (const auto& a : enumerate(d, H))
        if (std::abs(a.approx) > std::pow(H, d) * (1 + 1e-12)) ++bad_mod;
  for (const auto& a : enumerate(2, 3.0)) {
    auto got = detect_algebraic(a.approx, 2, 3.0, 1e-9);
    if (!got || got->minpoly != a.minpoly || got->root_index != a.root_index) ++bad_detect;
    ++checked;
  }
  ok = ok && bad_mod == 0 && bad_detect == 0;
  return {ok, fmt("enumerate(1,2) = %.0f, %.0f round trips, %.0f failures", e12.size(), checked, bad_mod + bad_detect)};
}

Outcome bound_evaluators() {
  auto v = eval_bound(BoundId::Thm1, {{"d", kE}, {"H", std::exp(kE)}}, {{"c", 1.0}});
  bool ok = std::abs(v.value - std::exp(8.0)) <= 1e-9 * std::exp(8.0);
  bool rejected = false;
  try {
    eval_bound(BoundId::Thm1, {{"d", 2.5}, {"H", 100.0}}, {{"c", 1.0}});
  } catch (const Error& e) {
    rejected = e.code() == Errc::DomainViolation;
  }
  int non_finite = 0;
  for (auto id : all_bound_ids()) {
    NamedValues p{{"d", 1e3}, {"H", 1e6}, {"R", 1e6}, {"L", 1e3}, {"omega", 1e6}, {"T", 1e3}};
    NamedValues c;
    for (const auto& name : bound_constants(id)) c[name] = 1.0;
    NamedValues used;
    for (const auto& name : bound_parameters(id)) used[name] = p.at(name);
    if (!std::isfinite(eval_bound(id, used, c).log_abs)) ++non_finite;
  }
  ok = ok && rejected && non_finite == 0;
  return {ok, fmt("Thm1 corner %.9f, d<e rejected %.0f, non-finite logs %.0f", v.value, rejected, non_finite)};
}

// Hashes the stream line by line with FNV-1a and flags lattice records.
class HashingBuf : public std::streambuf {
 public:
  std::uint64_t hash = 1469598103934665603ull;
  std::uint64_t lines = 0;
  std::uint64_t lattice_records = 0;

 protected:
  int_type overflow(int_type ch) override {
    if (ch != traits_type::eof()) put(static_cast<char>(ch));
    return ch;
  }
  std::streamsize xsputn(const char* s, std::streamsize n) override {
    for (std::streamsize i = 0; i < n; ++i) put(s[i]);
    return n;
  }

 private:
  void put(char c) {
    line_ += c;
    if (c != '\n') return;
    for (unsigned char b : line_) {
      hash ^= b;
      hash *= 1099511628211ull;
    }
    if (line_.find("\"in_lattice\":true") != std::string::npos) ++lattice_records;
    ++lines;
    line_.clear();
  }
  std::string line_;
};

Outcome census() {
  RunManifest m;
  m.lattice = "1,i";
  m.d_max = 2;
  m.H_max = 10;
  m.constants["c"] = 1;
  HashingBuf a, b;
  std::ostream oa(&a), ob(&b);
  auto s = run_census(m, oa);
  run_census(m, ob);
  const bool ok = a.hash == b.hash && a.lines == b.lines && a.lattice_records == 0 && s.excluded_lattice > 0 &&
                  s.certified_hits == 0 && s.records + s.excluded_lattice == s.enumerated;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%llu records, %llu excluded, %llu candidates, 0 certified=%s, hashes %s",
                static_cast<unsigned long long>(s.records), static_cast<unsigned long long>(s.excluded_lattice),
                static_cast<unsigned long long>(s.candidate_hits), s.certified_hits == 0 ? "yes" : "no",
                a.hash == b.hash ? "match" : "differ");
  return {ok, buf};
}

}  // namespace

int main() {
  run(1, "threshold_iteration", 1, threshold);
  run(2, "delta_grid", 10, delta_grid);
  run(3, "zzi_closed_forms", 1, closed_forms);
  run(4, "legendre_quasiperiod", 30, legendre_quasi);
  run(5, "certificate_soundness", 60, certificate_soundness);
  run(6, "zero_counting", 60, zero_counting);
  run(7, "besson_shape", 300, besson_shape);
  run(8, "auxpoly", 60, auxpoly);
  run(9, "heights", 60, heights);
  run(10, "bound_evaluators", 1, bound_evaluators);
  run(11, "census_end_to_end", 600, census);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
