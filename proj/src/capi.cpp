#include "sigcount/sigcount.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <streambuf>
#include <string>

#include <json.hpp>

#include "sigcount/algebraic.hpp"
#include "sigcount/auxpoly.hpp"
#include "sigcount/bounds.hpp"
#include "sigcount/census.hpp"
#include "sigcount/elliptic.hpp"
#include "sigcount/error.hpp"
#include "sigcount/growth.hpp"
#include "sigcount/lattice.hpp"
#include "sigcount/zerocount.hpp"

struct sc_lattice {
  sigcount::Lattice lat;
};

struct sc_sigma {
  sigcount::SigmaEvaluator ev;
};

namespace {

using namespace sigcount;

thread_local std::string g_last_error;

template <class F>
sc_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<sc_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SC_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SC_INTERNAL_ERROR;
  }
}

void require(const void* p, const char* name) {
  if (!p) fail(Errc::InvalidArgument, std::string(name) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(double out[2], cplx z) {
  out[0] = z.real();
  out[1] = z.imag();
}

// Forwards to another buffer and remembers the last complete line.
class LastLineBuf : public std::streambuf {
 public:
  explicit LastLineBuf(std::streambuf* target) : target_(target) {}
  const std::string& last_line() const { return last_; }

 protected:
  int_type overflow(int_type ch) override {
    if (traits_type::eq_int_type(ch, traits_type::eof())) return traits_type::not_eof(ch);
    const char c = traits_type::to_char_type(ch);
    if (c == '\n') {
      last_.swap(current_);
      current_.clear();
    } else {
      current_.push_back(c);
    }
    return target_->sputc(c);
  }
  std::streamsize xsputn(const char* s, std::streamsize n) override {
    const std::string_view chunk(s, static_cast<std::size_t>(n));
    if (auto nl = chunk.rfind('\n'); nl != std::string_view::npos) {
      auto prev = chunk.substr(0, nl).rfind('\n');
      if (prev == std::string_view::npos) {
        last_ = current_;
        last_.append(chunk.substr(0, nl));
      } else {
        last_.assign(chunk.substr(prev + 1, nl - prev - 1));
      }
      current_.assign(chunk.substr(nl + 1));
    } else {
      current_.append(chunk);
    }
    return target_->sputn(s, n);
  }
  int sync() override { return target_->pubsync(); }

 private:
  std::streambuf* target_;
  std::string current_, last_;
};

// Runs `body` against out_path ("-" for stdout) and returns the last line written.
template <class Body>
std::string with_output(const char* out_path, Body&& body) {
  require(out_path, "out_path");
  std::ofstream file;
  std::streambuf* target = std::cout.rdbuf();
  if (std::strcmp(out_path, "-") != 0) {
    file.open(out_path, std::ios::binary | std::ios::trunc);
    if (!file) fail(Errc::IoError, std::string("cannot open output file '") + out_path + "'");
    target = file.rdbuf();
  }
  LastLineBuf buf(target);
  std::ostream os(&buf);
  body(os);
  os.flush();
  if (file.is_open()) {
    file.close();
    if (!file) fail(Errc::IoError, std::string("failed writing '") + out_path + "'");
  }
  return buf.last_line();
}

NamedValues named(const char* const* names, const double* values, size_t n) {
  NamedValues out;
  if (n > 0) {
    require(names, "names");
    require(values, "values");
  }
  for (size_t i = 0; i < n; ++i) {
    require(names[i], "name");
    out[names[i]] = values[i];
  }
  return out;
}

AlgebraicPoint parse_point(const char* text) {
  require(text, "point");
  std::string s(text);
  auto semi = s.find(';');
  if (semi == std::string::npos) fail(Errc::InvalidArgument, "point must be \"X;Y\": '" + s + "'");
  return {parse_algebraic(s.substr(0, semi)), parse_algebraic(s.substr(semi + 1))};
}

}  // namespace

extern "C" {

const char* sc_version(void) { return version_string(); }

const char* sc_status_name(sc_status status) {
  if (status == SC_OK) return "Ok";
  if (status == SC_INTERNAL_ERROR) return "InternalError";
  return errc_name(static_cast<Errc>(status));
}

const char* sc_last_error(void) { return g_last_error.c_str(); }

int sc_exit_code(sc_status status) {
  if (status == SC_OK) return 0;
  if (status == SC_INTERNAL_ERROR) return 1;
  return exit_code_for(static_cast<Errc>(status));
}

void sc_string_free(char* s) { std::free(s); }

sc_status sc_parse_complex(const char* text, double out[2]) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    put(out, parse_gaussian(text).to_complex());
  });
}

sc_status sc_lattice_parse(const char* spec, sc_lattice** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new sc_lattice{parse_lattice(spec)};
  });
}

sc_status sc_lattice_from_periods(double w1_re, double w1_im, double w2_re, double w2_im, sc_lattice** out) {
  return guarded([&] {
    require(out, "out");
    *out = new sc_lattice{reduce_basis({w1_re, w1_im}, {w2_re, w2_im})};
  });
}

void sc_lattice_free(sc_lattice* lat) { delete lat; }

sc_status sc_lattice_get_info(const sc_lattice* lat, sc_lattice_info* out) {
  return guarded([&] {
    require(lat, "lattice");
    require(out, "out");
    const Lattice& L = lat->lat;
    put(out->omega1, L.omega1());
    put(out->omega2, L.omega2());
    put(out->tau, L.tau());
    out->a = L.reduction().a;
    out->b = L.reduction().b;
    out->c = L.reduction().c;
    out->d = L.reduction().d;
    out->exact = L.exact_periods().has_value() ? 1 : 0;
    out->cell_radius = L.cell_radius();
  });
}

sc_status sc_lattice_decompose(const sc_lattice* lat, double re, double im, int64_t* k, int64_t* l) {
  return guarded([&] {
    require(lat, "lattice");
    require(k, "k");
    require(l, "l");
    auto kl = decompose(lat->lat, {re, im});
    *k = kl.k;
    *l = kl.l;
  });
}

sc_status sc_lattice_reduce_to_cell(const sc_lattice* lat, double re, double im, double z0[2], int64_t* m,
                                    int64_t* n) {
  return guarded([&] {
    require(lat, "lattice");
    require(z0, "z0");
    require(m, "m");
    require(n, "n");
    auto c = reduce_to_cell(lat->lat, {re, im});
    put(z0, c.z0);
    *m = c.m;
    *n = c.n;
  });
}

sc_status sc_sigma_new(const sc_lattice* lat, int digits, sc_sigma** out) {
  return guarded([&] {
    require(lat, "lattice");
    require(out, "out");
    *out = new sc_sigma{SigmaEvaluator(lat->lat, digits_to_tol(digits))};
  });
}

void sc_sigma_free(sc_sigma* ev) { delete ev; }

sc_status sc_sigma_eval(const sc_sigma* ev, double re, double im, double out[2]) {
  return guarded([&] {
    require(ev, "evaluator");
    require(out, "out");
    put(out, ev->ev.sigma({re, im}));
  });
}

sc_status sc_sigma_log(const sc_sigma* ev, double re, double im, double* log_abs, double* arg) {
  return guarded([&] {
    require(ev, "evaluator");
    require(log_abs, "log_abs");
    require(arg, "arg");
    LogSigma ls = ev->ev.log_sigma({re, im});
    *log_abs = ls.log_abs;
    *arg = ls.arg;
  });
}

sc_status sc_zeta_eval(const sc_sigma* ev, double re, double im, double out[2]) {
  return guarded([&] {
    require(ev, "evaluator");
    require(out, "out");
    put(out, ev->ev.zeta({re, im}));
  });
}

sc_status sc_sigma_invariants(const sc_sigma* ev, sc_invariants* out) {
  return guarded([&] {
    require(ev, "evaluator");
    require(out, "out");
    const QuasiPeriodData& q = ev->ev.data();
    const Lattice& L = ev->ev.lattice();
    put(out->eta1, q.eta1);
    put(out->eta2, q.eta2);
    put(out->g2, q.g2);
    put(out->g3, q.g3);
    put(out->e2, q.E2);
    out->legendre_residual = std::abs(q.eta1 * L.omega2() - q.eta2 * L.omega1() - cplx(0, 2 * kPi));
  });
}

sc_status sc_growth_certificate(const sc_lattice* lat, int digits, sc_certificate* out) {
  return guarded([&] {
    require(lat, "lattice");
    require(out, "out");
    GrowthCertificate c = build_certificate(lat->lat, digits_to_tol(digits));
    *out = {c.delta_disc, c.c1, c.c2, c.c, c.r, c.delta_sigma, c.upper_c1, c.upper_c2};
  });
}

double sc_phi(double y) { return phi(y); }

sc_status sc_threshold_iteration(int steps, double* out, size_t cap) {
  return guarded([&] {
    require(out, "out");
    if (steps < 0) fail(Errc::InvalidArgument, "steps must be >= 0");
    if (cap < static_cast<size_t>(steps) + 1) fail(Errc::InvalidArgument, "output buffer too small");
    auto ys = threshold_iteration(steps);
    std::copy(ys.begin(), ys.end(), out);
  });
}

sc_status sc_count_zeros(const sc_sigma* ev, const char* poly, double R, sc_zero_report* out) {
  return guarded([&] {
    require(ev, "evaluator");
    require(poly, "poly");
    require(out, "out");
    ZeroCountReport r = count_zeros(ev->ev, BivariatePoly::parse(poly), R);
    if (!r.count) fail(Errc::ContourStuck, "no admissible contour");
    *out = {*r.count, r.radius, r.perturbations, r.winding_residual};
  });
}

sc_status sc_besson_bound(int L, double R, double c, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = besson_bound(L, R, c);
  });
}

sc_status sc_jensen_bound(const sc_sigma* ev, const char* poly, int T, double H, int d, double R1, double* out) {
  return guarded([&] {
    require(ev, "evaluator");
    require(poly, "poly");
    require(out, "out");
    *out = jensen_pipeline(ev->ev, BivariatePoly::parse(poly), T, H, d, R1).bound;
  });
}

sc_status sc_bound_names(char** out) {
  return guarded([&] {
    require(out, "out");
    std::string s;
    for (BoundId id : all_bound_ids()) {
      if (!s.empty()) s += ',';
      s += bound_name(id);
    }
    *out = dup_string(s);
  });
}

sc_status sc_bound_signature(const char* id, char** out) {
  return guarded([&] {
    require(id, "id");
    require(out, "out");
    BoundId b = parse_bound_id(id);
    nlohmann::ordered_json j{{"id", bound_name(b)}, {"parameters", bound_parameters(b)},
                             {"constants", bound_constants(b)}};
    *out = dup_string(j.dump());
  });
}

sc_status sc_bound_eval(const char* id, const char* const* param_names, const double* param_values, size_t n_params,
                        const char* const* const_names, const double* const_values, size_t n_consts,
                        sc_bound_value* out) {
  return guarded([&] {
    require(id, "id");
    require(out, "out");
    BoundValue v = eval_bound(parse_bound_id(id), named(param_names, param_values, n_params),
                              named(const_names, const_values, n_consts));
    *out = {v.value, v.log_abs, v.sign};
  });
}

sc_status sc_auxpoly(const char* const* points, size_t n_points, int T, int masser_d, char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    if (n_points > 0) require(points, "points");
    std::vector<AlgebraicPoint> pts;
    for (size_t i = 0; i < n_points; ++i) pts.push_back(parse_point(points[i]));
    std::optional<int> md;
    if (masser_d > 0) md = masser_d;
    AuxPolynomial P = construct_vanishing(pts, T, md);

    nlohmann::ordered_json j;
    j["T"] = P.T;
    j["polynomial"] = P.to_string();
    j["terms"] = nlohmann::ordered_json::array();
    for (size_t k = 0; k < P.monomials.size(); ++k) {
      if (P.coeffs[k] == 0) continue;
      j["terms"].push_back({{"i", P.monomials[k].first}, {"j", P.monomials[k].second}, {"c", P.coeffs[k].str()}});
    }
    j["max_abs_coefficient"] = P.max_abs_coefficient().str();
    j["points"] = nlohmann::ordered_json::array();
    bool all = true;
    for (const auto& pt : pts) {
      const bool v = vanishes_exactly(P, pt);
      all = all && v;
      j["points"].push_back({{"x", to_literal(pt.x)}, {"y", to_literal(pt.y)}, {"vanishes", v}});
    }
    j["vanishes_exactly"] = all;
    if (md) {
      double H = 1;
      for (const auto& pt : pts) H = std::max({H, height(pt.x), height(pt.y)});
      auto cb = coefficient_bound_check(P, *md, H);
      j["coefficient_bound"] = {{"H", H}, {"log_bound", cb.log_bound},
                                {"log_max_coefficient", cb.log_max_coefficient}, {"within", cb.within}};
    }
    *out_json = dup_string(j.dump());
  });
}

sc_status sc_census_run(const char* manifest_text, const char* out_path, char** summary_json) {
  return guarded([&] {
    require(manifest_text, "manifest_text");
    RunManifest m = parse_manifest(parse_key_values(manifest_text));
    std::string last = with_output(out_path, [&](std::ostream& os) { run_census(m, os); });
    if (summary_json) *summary_json = dup_string(last);
  });
}

sc_status sc_growth_suite(const sc_lattice* lat, int digits, uint64_t seed, const char* out_path,
                          char** summary_json) {
  return guarded([&] {
    require(lat, "lattice");
    GrowthSuiteOptions o;
    o.digits = digits;
    o.seed = seed;
    std::string last = with_output(out_path, [&](std::ostream& os) { run_growth_suite(lat->lat, o, os); });
    if (summary_json) *summary_json = dup_string(last);
  });
}

sc_status sc_zero_experiment(const char* config_text, const char* out_path, char** summary_json) {
  return guarded([&] {
    require(config_text, "config_text");
    ZeroExperimentConfig cfg = parse_zero_config(parse_key_values(config_text));
    std::string last = with_output(out_path, [&](std::ostream& os) { run_zero_experiment(cfg, os); });
    if (summary_json) *summary_json = dup_string(last);
  });
}

}  // extern "C"
