#include "sigcount/census.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "sigcount/algebraic.hpp"
#include "sigcount/bounds.hpp"
#include "sigcount/elliptic.hpp"
#include "sigcount/error.hpp"
#include "sigcount/growth.hpp"
#include "sigcount/zerocount.hpp"

#ifndef SIGCOUNT_VERSION
#define SIGCOUNT_VERSION "0.0.0"
#endif

namespace sigcount {

using ojson = nlohmann::ordered_json;

const char* version_string() noexcept { return SIGCOUNT_VERSION; }

namespace {

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void config_fail(const std::string& key, const std::string& what) {
  fail(Errc::ConfigError, "config key '" + key + "': " + what);
}

template <class Int>
Int parse_int(const std::string& key, const std::string& v) {
  Int out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) config_fail(key, "expected an integer, got '" + v + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  double out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size() || !std::isfinite(out))
    config_fail(key, "expected a real number, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  config_fail(key, "expected true or false, got '" + v + "'");
}

ojson complex_json(cplx z) {
  auto num = [](double x) -> ojson { return std::isfinite(x) ? ojson(x == 0 ? 0.0 : x) : ojson(nullptr); };
  return ojson::array({num(z.real()), num(z.imag())});
}

ojson real_or_null(std::optional<double> x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

void append_real(std::string& s, double x) {
  if (!std::isfinite(x)) {
    s += "null";
    return;
  }
  if (x == 0) x = 0;  // drop the sign of zero
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  s.append(buf, p);
  // Keep a visible fraction so the token reads as a real.
  if (std::string_view(buf, p - buf).find_first_of(".en") == std::string_view::npos) s += ".0";
}

void append_int(std::string& s, std::int64_t v) {
  char buf[24];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  s.append(buf, p);
}

void append_complex(std::string& s, cplx z) {
  s += '[';
  append_real(s, z.real());
  s += ',';
  append_real(s, z.imag());
  s += ']';
}

// Leading coefficient first, matching the enumeration order.
void append_poly(std::string& s, const IntPoly& p) {
  s += '[';
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    if (it != p.rbegin()) s += ',';
    append_int(s, *it);
  }
  s += ']';
}

// Exact membership z in Omega for lattices with Gaussian-rational periods.
// Lattice points are Gaussian rationals, so only degree 1 and the quadratics
// with discriminant -s^2 can qualify.
bool in_lattice_exact(const std::array<GaussianRational, 2>& w, const AlgebraicNumber& a) {
  GaussianRational g;
  if (a.degree() == 1) {
    g = {a.rational_value(), Rational(0)};
  } else if (a.degree() == 2) {
    const BigInt A = a.minpoly[2], B = a.minpoly[1], C = a.minpoly[0];
    const BigInt disc = B * B - 4 * A * C;
    if (disc >= 0) return false;
    const BigInt s = boost::multiprecision::sqrt(BigInt(-disc));
    if (s * s != -disc) return false;
    const Rational im(s, 2 * A);
    g = {Rational(BigInt(-B), 2 * A), a.approx.imag() > 0 ? im : Rational(-im)};
  } else {
    return false;
  }
  // g = k w1 + l w2 with k = Im(g conj w2) / Im(w1 conj w2), l = Im(conj w1 g) / Im(conj w1 w2).
  auto im_mul_conj = [](const GaussianRational& x, const GaussianRational& y) {
    return (x * y.conj()).im;
  };
  const Rational area = im_mul_conj(w[0], w[1]);
  const Rational k = im_mul_conj(g, w[1]) / area;
  const Rational l = im_mul_conj(g, w[0]) / Rational(-area);
  return boost::multiprecision::denominator(k) == 1 && boost::multiprecision::denominator(l) == 1;
}

bool in_lattice_numeric(const Lattice& lat, cplx z) {
  try {
    decompose(lat, z);
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::NotLatticePoint) return false;
    throw;
  }
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      fail(Errc::ConfigError, "line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) fail(Errc::ConfigError, "line " + std::to_string(lineno) + ": empty key");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

KeyValues read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

void apply_manifest_entry(RunManifest& m, const std::string& key, const std::string& value) {
  if (key == "lattice") {
    m.lattice = value;
  } else if (key == "d_max") {
    m.d_max = parse_int<int>(key, value);
    if (m.d_max < 1 || m.d_max > 3) config_fail(key, "must lie in [1, 3]");
  } else if (key == "H_max") {
    m.H_max = parse_real(key, value);
    if (m.H_max < 1) config_fail(key, "must be >= 1");
  } else if (key == "digits") {
    m.digits = parse_int<int>(key, value);
    if (m.digits < 4 || m.digits > 300) config_fail(key, "must lie in [4, 300]");
  } else if (key == "theorem") {
    m.theorem = parse_int<int>(key, value);
    if (m.theorem != 1 && m.theorem != 2) config_fail(key, "must be 1 or 2");
  } else if (key == "seed") {
    m.seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "budget") {
    m.budget = parse_real(key, value);
    if (m.budget <= 0) config_fail(key, "must be positive");
  } else if (key == "version") {
    if (value != version_string())
      config_fail(key, "manifest was written for " + value + ", this is " + version_string());
    m.version = value;
  } else if (key.rfind("const.", 0) == 0 && key.size() > 6) {
    m.constants[key.substr(6)] = parse_real(key, value);
  } else {
    config_fail(key, "unknown key");
  }
}

RunManifest parse_manifest(const KeyValues& entries) {
  RunManifest m;
  for (const auto& [k, v] : entries) apply_manifest_entry(m, k, v);
  return m;
}

std::pair<double, double> census_eval_point(const RunManifest& m) {
  const double e = std::numbers::e;
  return {std::max<double>(m.d_max, e), std::max(m.H_max, std::pow(e, e))};
}

CensusSummary run_census(const RunManifest& m, std::ostream& out) {
  const Lattice lat = parse_lattice(m.lattice);
  const SigmaEvaluator ev(lat, digits_to_tol(m.digits));
  const BoundId bound_id = m.theorem == 1 ? BoundId::Thm1 : BoundId::Thm2;
  const BoundId radius_id = m.theorem == 1 ? BoundId::RadiusBasic : BoundId::RadiusRefined;

  CensusSummary s;
  std::tie(s.d_eval, s.H_eval) = census_eval_point(m);
  const NamedValues params{{"d", s.d_eval}, {"H", s.H_eval}};
  NamedValues consts(m.constants.begin(), m.constants.end());
  if (consts.count("c")) {
    BoundValue b = eval_bound(bound_id, params, {{"c", consts.at("c")}});
    s.bound = b.value;
    s.bound_log_abs = b.log_abs;
  }
  if (consts.count("A")) s.radius_bound = eval_bound(radius_id, params, {{"A", consts.at("A")}}).value;

  ojson head;
  head["type"] = "manifest";
  head["version"] = m.version;
  head["lattice"] = m.lattice;
  head["omega1"] = complex_json(lat.omega1());
  head["omega2"] = complex_json(lat.omega2());
  head["tau"] = complex_json(lat.tau());
  head["exact_lattice"] = lat.exact_periods().has_value();
  head["d_max"] = m.d_max;
  head["H_max"] = m.H_max;
  head["digits"] = m.digits;
  head["theorem"] = m.theorem;
  head["seed"] = m.seed;
  head["budget"] = m.budget;
  head["constants"] = ojson::object();
  for (const auto& [k, v] : m.constants) head["constants"][k] = v;
  out << head.dump() << '\n';

  const double log_H = std::log(m.H_max);
  const double log_lo = -m.d_max * log_H, log_hi = m.d_max * log_H;
  const auto& exact = lat.exact_periods();

  const std::string radius_name = bound_name(radius_id);
  std::string line;
  EnumerateOptions eopts;
  eopts.budget = m.budget;
  enumerate(
      m.d_max, m.H_max,
      [&](const AlgebraicNumber& a) {
        ++s.enumerated;
        const cplx z = a.approx;
        const bool in_lat = exact ? in_lattice_exact(*exact, a) : in_lattice_numeric(lat, z);
        if (in_lat && m.theorem == 1) {
          ++s.excluded_lattice;
          return;
        }
        ++s.records;
        const double h = height_of_minpoly(a.minpoly);
        s.max_record_degree = std::max<std::uint64_t>(s.max_record_degree, a.degree());
        s.max_record_height = std::max(s.max_record_height, h);

        // Records are written directly; numbers use shortest round-trip form.
        std::string& r = line;
        r.assign("{\"type\":\"record\",\"z\":{\"minpoly\":");
        append_poly(r, a.minpoly);
        r += ",\"root\":";
        append_int(r, a.root_index);
        r += "},\"z_approx\":";
        append_complex(r, z);

        std::string det = "{\"status\":\"skipped_range\",\"label\":\"candidate\",\"minpoly\":null,"
                          "\"root\":null,\"degree\":null,\"height\":null}";
        r += ",\"sigma\":";
        if (in_lat) {
          ++s.lattice_zeros;
          r += "{\"log_abs\":null,\"arg\":null,\"value\":[0.0,0.0]}";
          det = "{\"status\":\"lattice_zero\",\"label\":\"candidate\",\"minpoly\":null,"
                "\"root\":null,\"degree\":null,\"height\":null}";
        } else {
          LogSigma ls;
          try {
            ls = ev.log_sigma(z);
          } catch (const Error& e) {
            fail(e.code(), "census at z = " + std::to_string(z.real()) + "+" + std::to_string(z.imag()) +
                               "i (minpoly degree " + std::to_string(a.degree()) + "): " + e.what());
          }
          const bool representable = ls.log_abs < 700;
          const cplx value = representable ? std::polar(std::exp(ls.log_abs), ls.arg) : cplx{};
          if (!representable) ++s.sigma_overflow;
          r += "{\"log_abs\":";
          append_real(r, ls.log_abs);
          r += ",\"arg\":";
          append_real(r, ls.arg);
          r += ",\"value\":";
          if (representable)
            append_complex(r, value);
          else
            r += "null";
          r += '}';

          if (representable && ls.log_abs >= log_lo && ls.log_abs <= log_hi) {
            ++s.detection_attempted;
            const double scale = std::max(1.0, std::abs(value));
            const double tol = std::max(1e-12, std::pow(10.0, -m.digits)) * scale;
            const double x_err = 5e-16 * (1 + std::abs(z)) * (1 + std::abs(z)) * scale;
            try {
              auto hit = detect_algebraic(value, m.d_max, m.H_max, tol, x_err);
              if (hit) {
                ++s.candidate_hits;
                det = "{\"status\":\"candidate\",\"label\":\"candidate\",\"minpoly\":";
                append_poly(det, hit->minpoly);
                det += ",\"root\":";
                append_int(det, hit->root_index);
                det += ",\"degree\":";
                append_int(det, hit->degree());
                det += ",\"height\":";
                append_real(det, height_of_minpoly(hit->minpoly));
                det += '}';
              } else {
                det = "{\"status\":\"none\",\"label\":\"candidate\",\"minpoly\":null,"
                      "\"root\":null,\"degree\":null,\"height\":null}";
              }
            } catch (const Error& e) {
              if (e.code() != Errc::PrecisionTooLow) throw;
              ++s.precision_too_low;
              det = "{\"status\":\"precision_too_low\",\"label\":\"candidate\",\"minpoly\":null,"
                    "\"root\":null,\"degree\":null,\"height\":null}";
            }
          } else {
            ++s.detection_skipped;
          }
        }
        r += ",\"d\":";
        append_int(r, a.degree());
        r += ",\"H_z\":";
        append_real(r, h);
        r += in_lat ? ",\"in_lattice\":true" : ",\"in_lattice\":false";
        r += ",\"radius_bound\":\"";
        r += radius_name;
        r += "\",\"radius_class\":\"";
        r += !s.radius_bound ? "unevaluated" : std::abs(z) <= *s.radius_bound ? "inside" : "outside";
        r += "\",\"detection\":";
        r += det;
        r += "}\n";
        out.write(r.data(), static_cast<std::streamsize>(r.size()));
      },
      eopts);

  ojson sum;
  sum["type"] = "summary";
  sum["enumerated"] = s.enumerated;
  sum["records"] = s.records;
  sum["excluded_lattice"] = s.excluded_lattice;
  sum["lattice_zeros"] = s.lattice_zeros;
  sum["sigma_overflow"] = s.sigma_overflow;
  sum["detection_attempted"] = s.detection_attempted;
  sum["detection_skipped"] = s.detection_skipped;
  sum["precision_too_low"] = s.precision_too_low;
  sum["candidate_hits"] = s.candidate_hits;
  sum["certified_hits"] = s.certified_hits;
  sum["max_record_degree"] = s.max_record_degree;
  sum["max_record_height"] = s.max_record_height;
  sum["bound"] = {{"id", bound_name(bound_id)},
                  {"d", s.d_eval},
                  {"H", s.H_eval},
                  {"c", consts.count("c") ? ojson(consts.at("c")) : ojson(nullptr)},
                  {"value", real_or_null(s.bound)},
                  {"log_abs", real_or_null(s.bound_log_abs)}};
  sum["radius_bound"] = {{"id", bound_name(radius_id)}, {"value", real_or_null(s.radius_bound)}};
  sum["note"] = "detections are candidates from finite-precision integer-relation search, not certificates";
  out << sum.dump() << '\n';
  out.flush();
  if (!out) fail(Errc::IoError, "failed writing census output");
  return s;
}

GrowthSuiteSummary run_growth_suite(const Lattice& lat, const GrowthSuiteOptions& opts, std::ostream& out) {
  const double tol = digits_to_tol(opts.digits);
  if (lat.tau().imag() > kImTauLimit)
    fail(Errc::ImTauTooLarge, "Im(tau) = " + std::to_string(lat.tau().imag()) + " exceeds 1.9");
  const GrowthCertificate cert = build_certificate(lat, tol);
  const SigmaEvaluator ev(lat, tol);

  ojson c;
  c["type"] = "certificate";
  c["tau"] = complex_json(lat.tau());
  c["omega1"] = complex_json(lat.omega1());
  c["omega2"] = complex_json(lat.omega2());
  c["delta_disc"] = cert.delta_disc;
  c["c1"] = cert.c1;
  c["c2"] = cert.c2;
  c["c"] = cert.c;
  c["r"] = cert.r;
  c["delta_sigma"] = cert.delta_sigma;
  c["upper_c1"] = cert.upper_c1;
  c["upper_c2"] = cert.upper_c2;
  out << c.dump() << '\n';

  const auto ys = threshold_iteration(opts.iterations);
  out << ojson{{"type", "threshold"}, {"phi_y0", phi(ys.front())}, {"y", ys}}.dump() << '\n';

  GrowthSuiteSummary s;
  const auto dr = delta_check_range(std::sqrt(3.0) / 2, kImTauLimit, opts.delta_grid);
  s.delta_violations = dr.violations;
  out << ojson{{"type", "delta_grid"},
               {"y_lo", dr.y_lo},
               {"y_hi", dr.y_hi},
               {"samples", dr.samples},
               {"min_delta", dr.min_delta},
               {"max_delta", dr.max_delta},
               {"violations", dr.violations},
               {"sufficient_condition", dr.sufficient_condition}}
             .dump()
      << '\n';

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> rad(cert.r, cert.r + opts.band), ang(-kPi, kPi);
  s.min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < opts.samples; ++i) {
    const double rr = rad(rng), th = ang(rng);
    const cplx z = std::polar(rr, th);
    const CellReduction cell = reduce_to_cell(lat, z);
    const double lhs = ev.log_sigma(z).log_abs;
    const double rhs = ev.log_sigma(cell.z0).log_abs + cert.c * rr * rr;
    const double slack = lhs - rhs;
    s.min_slack = std::min(s.min_slack, slack);
    if (slack < 0) ++s.violations;
    ++s.samples;
  }
  out << ojson{{"type", "growth_samples"},
               {"seed", opts.seed},
               {"samples", s.samples},
               {"radius_lo", cert.r},
               {"radius_hi", cert.r + opts.band},
               {"violations", s.violations},
               {"min_slack", s.min_slack}}
             .dump()
      << '\n';
  out.flush();
  return s;
}

ZeroExperimentConfig parse_zero_config(const KeyValues& entries) {
  ZeroExperimentConfig cfg;
  for (const auto& [key, v] : entries) {
    if (key == "lattice") {
      cfg.lattice = v;
    } else if (key == "digits") {
      cfg.digits = parse_int<int>(key, v);
    } else if (key == "seed") {
      cfg.seed = parse_int<std::uint64_t>(key, v);
    } else if (key == "case") {
      auto at = v.rfind('@');
      if (at == std::string::npos) config_fail(key, "expected '<polynomial> @ <radius>'");
      cfg.cases.push_back({trim(std::string_view(v).substr(0, at)), parse_real(key, trim(v.substr(at + 1)))});
    } else if (key == "random_cases") {
      cfg.random_cases = parse_int<int>(key, v);
    } else if (key == "random_L_max") {
      cfg.random_L_max = parse_int<int>(key, v);
      if (cfg.random_L_max < 1) config_fail(key, "must be >= 1");
    } else if (key == "random_R_min") {
      cfg.random_R_min = parse_real(key, v);
    } else if (key == "random_R_max") {
      cfg.random_R_max = parse_real(key, v);
    } else if (key == "random_coeff") {
      cfg.random_coeff = parse_int<int>(key, v);
      if (cfg.random_coeff < 1) config_fail(key, "must be >= 1");
    } else if (key == "besson_c") {
      cfg.besson_c = parse_real(key, v);
    } else if (key == "jensen") {
      cfg.jensen = parse_bool(key, v);
    } else {
      config_fail(key, "unknown key");
    }
  }
  if (cfg.random_R_min <= 0 || cfg.random_R_max < cfg.random_R_min)
    fail(Errc::ConfigError, "random radius range must satisfy 0 < R_min <= R_max");
  return cfg;
}

std::vector<ZeroCase> random_zero_cases(const ZeroExperimentConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> Ld(1, cfg.random_L_max), coef(-cfg.random_coeff, cfg.random_coeff);
  std::uniform_real_distribution<double> Rd(cfg.random_R_min, cfg.random_R_max);
  std::vector<ZeroCase> out;
  for (int n = 0; n < cfg.random_cases; ++n) {
    const int L = Ld(rng);
    std::vector<std::vector<double>> c(L + 1, std::vector<double>(L + 1, 0.0));
    for (auto& row : c)
      for (double& x : row) x = coef(rng);
    // Keep a Y^L term so that L is attained and sigma enters.
    if (c[0][L] == 0) c[0][L] = 1;
    const double R = std::round(Rd(rng) * 1000) / 1000;
    out.push_back({BivariatePoly(std::move(c)).to_string(), R});
  }
  return out;
}

ZeroExperimentSummary run_zero_experiment(const ZeroExperimentConfig& cfg, std::ostream& out) {
  const Lattice lat = parse_lattice(cfg.lattice);
  const SigmaEvaluator ev(lat, digits_to_tol(cfg.digits));
  std::vector<ZeroCase> cases = cfg.cases;
  for (auto& rc : random_zero_cases(cfg)) cases.push_back(std::move(rc));

  ZeroExperimentSummary s;
  for (const ZeroCase& zc : cases) {
    const BivariatePoly P = BivariatePoly::parse(zc.poly);
    ZeroRow row;
    row.input = zc;
    row.L = P.L();
    std::string count_error;
    try {
      ZeroCountReport rep = count_zeros(ev, P, zc.R);
      row.count = rep.count;
      row.radius = rep.radius;
      row.winding_residual = rep.winding_residual;
    } catch (const Error& e) {
      count_error = e.what();
    }
    if (row.L >= 1) {
      const double Lr = row.L;
      row.shape = Lr * std::pow(zc.R + std::sqrt(Lr), 2) * std::log(zc.R + Lr);
      if (cfg.besson_c && zc.R >= 2) row.besson_bound = besson_bound(row.L, zc.R, *cfg.besson_c);
    }
    if (cfg.jensen) {
      try {
        const int T = std::max(1, P.total_degree());
        const double H = std::max(2.0, P.max_abs_coefficient());
        row.jensen_bound = jensen_pipeline(ev, P, T, H, 1, zc.R).bound;
      } catch (const Error& e) {
        row.jensen_error = e.what();
        ++s.jensen_failures;
      }
    }
    if (row.count) {
      if (row.shape > 0) s.max_shape_ratio = std::max(s.max_shape_ratio, *row.count / row.shape);
      if (row.besson_bound && *row.count > *row.besson_bound) ++s.besson_violations;
      if (row.jensen_bound && *row.count > *row.jensen_bound) ++s.jensen_violations;
    }
    ojson j;
    j["type"] = "zero_case";
    j["P"] = zc.poly;
    j["L"] = row.L;
    j["R"] = zc.R;
    j["count"] = row.count ? ojson(*row.count) : ojson(nullptr);
    j["count_error"] = count_error.empty() ? ojson(nullptr) : ojson(count_error);
    j["radius"] = row.radius;
    j["winding_residual"] = row.winding_residual;
    j["shape"] = row.shape;
    j["besson_bound"] = real_or_null(row.besson_bound);
    j["jensen_bound"] = real_or_null(row.jensen_bound);
    j["jensen_error"] = row.jensen_error.empty() ? ojson(nullptr) : ojson(row.jensen_error);
    out << j.dump() << '\n';
    s.rows.push_back(std::move(row));
  }
  out << ojson{{"type", "summary"},
               {"cases", s.rows.size()},
               {"max_shape_ratio", s.max_shape_ratio},
               {"besson_c", real_or_null(cfg.besson_c)},
               {"besson_violations", s.besson_violations},
               {"jensen_violations", s.jensen_violations},
               {"jensen_failures", s.jensen_failures}}
             .dump()
      << '\n';
  out.flush();
  return s;
}

}  // namespace sigcount
