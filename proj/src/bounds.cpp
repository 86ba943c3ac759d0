#include "sigcount/bounds.hpp"

#include <cmath>
#include <sstream>

#include "sigcount/error.hpp"

namespace sigcount {

namespace {

struct IdInfo {
  BoundId id;
  const char* name;
  std::vector<std::string> params;
  std::vector<std::string> constants;
};

const std::vector<IdInfo>& table() {
  static const std::vector<IdInfo> t = {
      {BoundId::Thm1, "thm1", {"d", "H"}, {"c"}},
      {BoundId::Thm2, "thm2", {"d", "H"}, {"c"}},
      {BoundId::BessonCount, "besson_count", {"d", "H", "R"}, {"c"}},
      {BoundId::BessonZero, "besson_zero", {"L", "R"}, {"c"}},
      {BoundId::RadiusBasic, "radius_basic", {"d", "H"}, {"A"}},
      {BoundId::RadiusRefined, "radius_refined", {"d", "H"}, {"A"}},
      {BoundId::RadiusException, "radius_exception", {"d", "H"}, {"B"}},
      {BoundId::MeasureRhs, "measure_rhs", {"d", "H", "omega"}, {"c"}},
      {BoundId::ExceptionalSet, "exceptional_set", {"d", "H"}, {"c10"}},
      {BoundId::FinalCount, "final_count", {"d", "H"}, {"c"}},
      {BoundId::JensenLog, "jensen_log", {"T", "H"}, {"c"}},
      {BoundId::RadiusN, "radius_N", {"d", "H"}, {}},
      {BoundId::MasserCoefficient, "masser_coefficient", {"d", "T", "H"}, {}},
  };
  return t;
}

const IdInfo& info(BoundId id) {
  for (const auto& i : table())
    if (i.id == id) return i;
  fail(Errc::InvalidArgument, "unknown bound id");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

class Evaluator {
 public:
  Evaluator(BoundId id, const NamedValues& p, const NamedValues& c) : id_(id), p_(p), c_(c) {}

  double param(const std::string& k) const { return get(p_, k, "parameter"); }
  double constant(const std::string& k) const {
    const double v = get(c_, k, "constant");
    if (!(v > 0)) violate("constant " + k + " > 0", v);
    return v;
  }
  void require(bool ok, const std::string& constraint, double got) const {
    if (!ok) violate(constraint, got);
  }

 private:
  double get(const NamedValues& m, const std::string& k, const char* kind) const {
    auto it = m.find(k);
    if (it == m.end())
      fail(Errc::InvalidArgument, bound_name(id_) + ": missing " + kind + " '" + k + "'");
    if (!std::isfinite(it->second))
      fail(Errc::InvalidArgument, bound_name(id_) + ": " + kind + " '" + k + "' is not finite");
    return it->second;
  }
  [[noreturn]] void violate(const std::string& constraint, double got) const {
    fail(Errc::DomainViolation, bound_name(id_) + " requires " + constraint + " (got " + fmt(got) + ")");
  }
  BoundId id_;
  const NamedValues& p_;
  const NamedValues& c_;
};

constexpr double kE = 2.718281828459045;
// d >= e and H >= e^e, with a hair of slack for values typed as decimals.
constexpr double kSlack = 1e-12;

}  // namespace

const std::vector<BoundId>& all_bound_ids() {
  static const std::vector<BoundId> ids = [] {
    std::vector<BoundId> v;
    for (const auto& i : table()) v.push_back(i.id);
    return v;
  }();
  return ids;
}

std::string bound_name(BoundId id) { return info(id).name; }

BoundId parse_bound_id(std::string_view name) {
  for (const auto& i : table())
    if (name == i.name) return i.id;
  std::string known;
  for (const auto& i : table()) known += std::string(known.empty() ? "" : ", ") + i.name;
  fail(Errc::InvalidArgument, "unknown bound id '" + std::string(name) + "' (known: " + known + ")");
}

std::vector<std::string> bound_parameters(BoundId id) { return info(id).params; }
std::vector<std::string> bound_constants(BoundId id) { return info(id).constants; }

BoundValue eval_bound(BoundId id, const NamedValues& params, const NamedValues& constants) {
  Evaluator ev(id, params, constants);
  double log_abs = 0;
  int sign = 1;
  auto theorem_domain = [&](double d, double H) {
    ev.require(d >= kE * (1 - kSlack), "d >= e", d);
    ev.require(H >= std::exp(kE) * (1 - kSlack), "H >= e^e", H);
  };
  switch (id) {
    case BoundId::Thm1:
    case BoundId::Thm2: {
      const double d = ev.param("d"), H = ev.param("H"), c = ev.constant("c");
      theorem_domain(d, H);
      const double ld = std::max(std::log(d), 1.0), lH = std::log(H);
      const double llH = std::max(std::log(lH), 1.0);
      // clamp only absorbs rounding at the domain corner d = e, H = e^e
      const bool t1 = id == BoundId::Thm1;
      log_abs = std::log(c) + (t1 ? 6 : 20) * std::log(d) + (t1 ? 1 : 5) * std::log(ld) + 2 * std::log(lH) +
                std::log(llH);
      break;
    }
    case BoundId::BessonCount: {
      const double d = ev.param("d"), H = ev.param("H"), R = ev.param("R"), c = ev.constant("c");
      ev.require(d >= 1, "d >= 1", d);
      ev.require(R > 1, "R > 1", R);
      ev.require(d * std::log(H) > 1, "d log H > 1", d * std::log(std::max(H, 1e-300)));
      log_abs = std::log(c) + 10 * std::log(R) + std::log(std::log(R)) + 4 * std::log(d) + 2 * std::log(std::log(H)) -
                std::log(std::log(d * std::log(H)));
      break;
    }
    case BoundId::BessonZero: {
      const double L = ev.param("L"), R = ev.param("R"), c = ev.constant("c");
      ev.require(L >= 1, "L >= 1", L);
      ev.require(R >= 2, "R >= 2", R);
      log_abs = std::log(c) + std::log(L) + 2 * std::log(R + std::sqrt(L)) + std::log(std::log(R + L));
      break;
    }
    case BoundId::RadiusBasic:
    case BoundId::RadiusRefined:
    case BoundId::RadiusException:
    case BoundId::ExceptionalSet:
    case BoundId::FinalCount: {
      const double d = ev.param("d"), H = ev.param("H");
      ev.require(d >= 1, "d >= 1", d);
      ev.require(H > 1, "H > 1", H);
      const double ld = std::log(d), lH = std::log(H);
      if (id == BoundId::RadiusBasic) {
        log_abs = std::log(ev.constant("A")) + std::log(d) + 0.5 * std::log(lH);
      } else if (id == BoundId::RadiusRefined) {
        ev.require(d > 1, "d > 1", d);
        log_abs = std::log(ev.constant("A")) + 0.5 * (9 * std::log(d) + 2 * std::log(ld) + std::log(lH));
      } else if (id == BoundId::RadiusException) {
        ev.require(d > 1, "d > 1", d);
        log_abs = std::log(ev.constant("B")) + 9 * std::log(d) + 2 * std::log(ld) + std::log(lH);
        sign = -1;
      } else if (id == BoundId::ExceptionalSet) {
        ev.require(d > 1, "d > 1", d);
        log_abs = std::log(ev.constant("c10")) +
                  0.5 * (5 * std::log(d) + 2 * std::log(ld) + std::log(lH) + 3 * std::log1p(d * lH));
      } else {
        ev.require(d > 1, "d > 1", d);
        log_abs = std::log(ev.constant("c")) + 30 * std::log(d) + 6 * std::log(ld) + 3 * std::log(lH);
      }
      break;
    }
    case BoundId::MeasureRhs: {
      const double d = ev.param("d"), H = ev.param("H"), w = ev.param("omega"), c = ev.constant("c");
      ev.require(d > 1, "d > 1", d);
      ev.require(H > 1, "H > 1", H);
      ev.require(w > 0, "|omega| > 0", w);
      const double lw = std::log(w);
      log_abs = std::log(c) + 4 * std::log(d) + 2 * std::log(std::log(d)) + std::log(std::log(H)) + 2 * lw +
                3 * std::log1p(std::max(0.0, lw));
      sign = -1;
      break;
    }
    case BoundId::JensenLog: {
      const double T = ev.param("T"), H = ev.param("H"), c = ev.constant("c");
      ev.require(T >= 1, "T >= 1", T);
      ev.require(H >= 1, "H >= 1", H);
      // inner log: 4 log(T+1) + T log H + T log(cT) + c T^3
      const double inner = 4 * std::log(T + 1) + T * std::log(H) + T * std::log(c * T) + c * T * T * T;
      ev.require(inner > 0, "(T+1)^4 H^T (cT)^T e^{cT^3} > 1", inner);
      log_abs = std::log(c) + std::log(inner);
      break;
    }
    case BoundId::RadiusN: {
      const double d = ev.param("d"), H = ev.param("H");
      ev.require(d >= 1, "d >= 1", d);
      ev.require(H > 1, "H > 1", H);
      log_abs = 0.5 * (std::log(d) + std::log(std::log(H)));
      break;
    }
    case BoundId::MasserCoefficient: {
      const double d = ev.param("d"), T = ev.param("T"), H = ev.param("H");
      ev.require(d >= 1, "d >= 1", d);
      ev.require(T >= 0, "T >= 0", T);
      ev.require(H >= 1, "H >= 1", H);
      log_abs = std::log(2.0) / d + 2 * std::log(T + 1) + T * std::log(H);
      break;
    }
  }
  BoundValue v;
  v.log_abs = log_abs;
  v.sign = sign;
  v.value = sign * std::exp(log_abs);
  return v;
}

double lemma_common_A(double B, double c, double delta) {
  if (!(B > 0) || !(c > 0) || !(delta >= 0)) fail(Errc::InvalidArgument, "need B > 0, c > 0, delta >= 0");
  return std::max(std::sqrt((1 + delta) / c), std::sqrt((2 + B) / c));
}

double lemma_common_A(double B, const GrowthCertificate& cert) { return lemma_common_A(B, cert.c, cert.delta_sigma); }

RadiusVerdict lemma_common_radius_check(const SigmaEvaluator& ev, const GrowthCertificate& cert,
                                        const PolarCellPoint& z, double H, int d, double B, double N) {
  if (d < 1 || !(H >= 1)) fail(Errc::InvalidArgument, "need d >= 1 and H >= 1");
  if (N < std::sqrt(d * std::log(H)) * (1 - 1e-12))
    fail(Errc::HypothesisUnmet, "N = " + fmt(N) + " is below sqrt(d log H) = " + fmt(std::sqrt(d * std::log(H))));
  const Lattice& lat = ev.lattice();
  const cplx z0 = z.log_abs_z0 < -700 ? cplx(0, 0) : std::polar(std::exp(z.log_abs_z0), z.arg_z0);
  const cplx zz = z0 + lat.point(z.m, z.n);
  RadiusVerdict v;
  v.abs_z = std::abs(zz);
  if (v.abs_z < cert.r) fail(Errc::HypothesisUnmet, "|z| = " + fmt(v.abs_z) + " is below r = " + fmt(cert.r));
  v.A = lemma_common_A(B, cert);
  v.N = N;
  v.applicable = v.abs_z >= v.A * N;
  if (!v.applicable) return v;

  const double log_sz = ev.log_abs_sigma_polar(z.log_abs_z0, z.arg_z0, z.m, z.n);
  const double log_sz0 = ev.log_abs_sigma_polar(z.log_abs_z0, z.arg_z0, 0, 0);
  auto link = [&](std::string name, double lhs, double rhs) {
    v.links.push_back({std::move(name), lhs, rhs, rhs - lhs, lhs <= rhs});
  };
  link("log|sigma(z)| <= d log H", log_sz, d * std::log(H));
  link("log|sigma(z0)| + c|z|^2 <= log|sigma(z)|", log_sz0 + cert.c * v.abs_z * v.abs_z, log_sz);
  link("log|sigma(z0)| <= -delta", log_sz0, -cert.delta_sigma);
  link("|log|sigma(z0)| - log|z0|| <= 1", std::abs(log_sz0 - z.log_abs_z0), 1.0);
  link("log|z0| <= -B N^2", z.log_abs_z0, -B * N * N);
  v.holds = true;
  for (const auto& l : v.links) v.holds = v.holds && l.holds;
  return v;
}

RadiusVerdict lemma_common_radius_check(const SigmaEvaluator& ev, const GrowthCertificate& cert, cplx z,
                                        double H, int d, double B, double N) {
  const CellReduction cell = reduce_to_cell(ev.lattice(), z);
  if (cell.z0 == cplx(0, 0)) fail(Errc::LatticePoint, "z is a lattice point");
  return lemma_common_radius_check(ev, cert, PolarCellPoint{std::log(std::abs(cell.z0)), std::arg(cell.z0), cell.m, cell.n},
                                   H, d, B, N);
}

}  // namespace sigcount
