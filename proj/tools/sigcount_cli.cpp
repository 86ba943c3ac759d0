// Command-line front end over the C API.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sigcount/sigcount.h"

namespace {

using ojson = nlohmann::ordered_json;

// Carries a library status out of a subcommand.
struct Failure {
  sc_status status;
  std::string message;
};

void check(sc_status st) {
  if (st != SC_OK) throw Failure{st, sc_last_error()};
}

struct UsageError {
  std::string message;
};

struct LatticeDeleter {
  void operator()(sc_lattice* p) const { sc_lattice_free(p); }
};
struct SigmaDeleter {
  void operator()(sc_sigma* p) const { sc_sigma_free(p); }
};
using LatticePtr = std::unique_ptr<sc_lattice, LatticeDeleter>;
using SigmaPtr = std::unique_ptr<sc_sigma, SigmaDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  sc_string_free(s);
  return out;
}

LatticePtr make_lattice(const std::string& spec) {
  sc_lattice* p = nullptr;
  check(sc_lattice_parse(spec.c_str(), &p));
  return LatticePtr(p);
}

SigmaPtr make_sigma(const sc_lattice* lat, int digits) {
  sc_sigma* p = nullptr;
  check(sc_sigma_new(lat, digits, &p));
  return SigmaPtr(p);
}

ojson num(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }
ojson cjson(const double z[2]) { return ojson::array({num(z[0]), num(z[1])}); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{SC_IO_ERROR, "cannot open config file '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
  if (!f) throw Failure{SC_IO_ERROR, "cannot open output file '" + out_path + "'"};
  f << text << '\n';
  if (!f) throw Failure{SC_IO_ERROR, "failed writing '" + out_path + "'"};
}

std::pair<std::string, double> split_kv(const std::string& s) {
  auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError{"expected name=value, got '" + s + "'"};
  std::string v = s.substr(eq + 1);
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return {s.substr(0, eq), x};
  } catch (const std::exception&) {
    throw UsageError{"'" + v + "' is not a number in '" + s + "'"};
  }
}

struct Common {
  std::string lattice = "1,i";
  int digits = 30;
  std::string config;
  std::string out = "-";
  std::uint64_t seed = 0;
};

void add_common(CLI::App* sub, Common& c, bool with_config) {
  sub->add_option("--lattice", c.lattice, "Basis \"w1,w2\" as complex literals a+bi")->capture_default_str();
  sub->add_option("--digits", c.digits, "Series truncation digits")->capture_default_str()->check(CLI::Range(4, 300));
  sub->add_option("--out", c.out, "Output path, - for stdout")->capture_default_str();
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  if (with_config) sub->add_option("--config", c.config, "key=value configuration file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting algebraic points on the graph of the Weierstrass sigma function"};
  app.set_version_flag("--version", std::string(sc_version()));
  app.require_subcommand(1);

  Common c;

  auto* reduce = app.add_subcommand("reduce", "Reduce a lattice basis to the fundamental domain");
  add_common(reduce, c, false);

  auto* invariants = app.add_subcommand("invariants", "Quasi-periods, g2, g3 and E2");
  add_common(invariants, c, false);

  std::vector<std::string> zs;
  auto* sigma = app.add_subcommand("sigma", "Evaluate sigma, log sigma and zeta");
  add_common(sigma, c, false);
  sigma->add_option("--z,z", zs, "Points a+bi")->required();

  auto* growth = app.add_subcommand("growth", "Growth certificate, threshold table, Delta grid, sampled check");
  add_common(growth, c, false);

  int steps = 4;
  auto* threshold = app.add_subcommand("threshold", "Threshold iteration y_{n+1} = sqrt3/(2(1 - phi(y_n)))");
  threshold->add_option("--steps", steps, "Iterations")->capture_default_str()->check(CLI::Range(0, 1000));
  threshold->add_option("--out", c.out, "Output path, - for stdout");

  std::string poly;
  double radius = 0;
  std::vector<std::string> cases;
  int random_cases = 0;
  double besson_c = 0;
  bool no_jensen = false;
  auto* zeros = app.add_subcommand("zeros", "Count zeros of P(z, sigma(z)) in disks");
  add_common(zeros, c, true);
  zeros->add_option("--poly", poly, "P(X, Y), e.g. \"X^2*Y - 3\"");
  zeros->add_option("--radius", radius, "Disk radius for --poly");
  zeros->add_option("--case", cases, "\"<P> @ <R>\", repeatable");
  zeros->add_option("--random", random_cases, "Number of seeded random cases");
  zeros->add_option("--besson-c", besson_c, "Constant for the Besson column");
  zeros->add_flag("--no-jensen", no_jensen, "Skip the Jensen bound");

  std::vector<std::string> points;
  int T = 1, masser_d = 0;
  auto* aux = app.add_subcommand("auxpoly", "Integer polynomial vanishing at algebraic points");
  aux->add_option("--point", points, "\"X;Y\", each a rational or {c_d,...,c_0}@k")->required();
  aux->add_option("--T", T, "Total degree")->capture_default_str();
  aux->add_option("--masser-d", masser_d, "Enforce T >= sqrt(8d) and report the coefficient bound");
  aux->add_option("--out", c.out, "Output path, - for stdout");

  std::string id;
  std::vector<std::string> params, consts;
  bool list = false;
  auto* bound = app.add_subcommand("bound", "Evaluate a named bound formula");
  bound->add_option("--id", id, "Formula id");
  bound->add_option("--param", params, "name=value");
  bound->add_option("--const", consts, "name=value");
  bound->add_flag("--list", list, "List formula ids with their parameters and constants");
  bound->add_option("--out", c.out, "Output path, - for stdout");

  std::vector<std::string> census_consts;
  std::string d_max, H_max, theorem, budget;
  auto* census = app.add_subcommand("census", "Census of algebraic z with sigma(z) tested for algebraicity");
  add_common(census, c, true);
  census->add_option("--d-max", d_max, "Maximal degree (1..3)");
  census->add_option("--H-max", H_max, "Maximal height");
  census->add_option("--theorem", theorem, "1 excludes lattice points, 2 keeps them");
  census->add_option("--budget", budget, "Enumeration budget");
  census->add_option("--const", census_consts, "name=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*reduce) {
      auto lat = make_lattice(c.lattice);
      sc_lattice_info info{};
      check(sc_lattice_get_info(lat.get(), &info));
      ojson j{{"omega1", cjson(info.omega1)},
              {"omega2", cjson(info.omega2)},
              {"tau", cjson(info.tau)},
              {"basis_change", {{info.a, info.b}, {info.c, info.d}}},
              {"exact", info.exact != 0},
              {"cell_radius", info.cell_radius}};
      emit(c.out, j.dump(2));
    } else if (*invariants) {
      auto lat = make_lattice(c.lattice);
      auto ev = make_sigma(lat.get(), c.digits);
      sc_invariants inv{};
      check(sc_sigma_invariants(ev.get(), &inv));
      ojson j{{"eta1", cjson(inv.eta1)}, {"eta2", cjson(inv.eta2)}, {"g2", cjson(inv.g2)},
              {"g3", cjson(inv.g3)},     {"E2", cjson(inv.e2)},     {"legendre_residual", inv.legendre_residual}};
      emit(c.out, j.dump(2));
    } else if (*sigma) {
      auto lat = make_lattice(c.lattice);
      auto ev = make_sigma(lat.get(), c.digits);
      std::string text;
      for (const auto& s : zs) {
        double z[2];
        check(sc_parse_complex(s.c_str(), z));
        ojson j{{"z", cjson(z)}};
        double la = 0, arg = 0;
        sc_status st = sc_sigma_log(ev.get(), z[0], z[1], &la, &arg);
        if (st == SC_LATTICE_POINT) {
          j["sigma"] = ojson::array({0.0, 0.0});
          j["log_abs"] = nullptr;
          j["arg"] = nullptr;
          j["zeta"] = nullptr;
        } else {
          check(st);
          double sv[2], zv[2];
          check(sc_sigma_eval(ev.get(), z[0], z[1], sv));
          check(sc_zeta_eval(ev.get(), z[0], z[1], zv));
          j["sigma"] = la < 700 ? cjson(sv) : ojson(nullptr);
          j["log_abs"] = la;
          j["arg"] = arg;
          j["zeta"] = cjson(zv);
        }
        text += (text.empty() ? "" : "\n") + j.dump();
      }
      emit(c.out, text);
    } else if (*growth) {
      auto lat = make_lattice(c.lattice);
      char* summary = nullptr;
      check(sc_growth_suite(lat.get(), c.digits, c.seed, c.out.c_str(), &summary));
      auto s = ojson::parse(take(summary));
      if (s.value("violations", 0) != 0) {
        std::cerr << "growth check found " << s["violations"] << " violations\n";
        return 1;
      }
    } else if (*threshold) {
      std::vector<double> ys(steps + 1);
      check(sc_threshold_iteration(steps, ys.data(), ys.size()));
      ojson j{{"phi_y0", sc_phi(ys.front())}, {"y", ys}};
      emit(c.out, j.dump(2));
    } else if (*zeros) {
      std::string cfg = c.config.empty() ? "" : read_file(c.config) + "\n";
      if (zeros->count("--lattice")) cfg += "lattice=" + c.lattice + "\n";
      if (zeros->count("--digits")) cfg += "digits=" + std::to_string(c.digits) + "\n";
      if (zeros->count("--seed")) cfg += "seed=" + std::to_string(c.seed) + "\n";
      if (c.config.empty() && !zeros->count("--lattice")) cfg += "lattice=" + c.lattice + "\n";
      if (!poly.empty()) {
        if (!zeros->count("--radius")) throw UsageError{"--poly needs --radius"};
        std::ostringstream r;
        r.precision(17);
        r << radius;
        cfg += "case=" + poly + " @ " + r.str() + "\n";
      }
      for (const auto& cs : cases) cfg += "case=" + cs + "\n";
      if (zeros->count("--random")) cfg += "random_cases=" + std::to_string(random_cases) + "\n";
      if (zeros->count("--besson-c")) {
        std::ostringstream b;
        b.precision(17);
        b << besson_c;
        cfg += "besson_c=" + b.str() + "\n";
      }
      if (no_jensen) cfg += "jensen=false\n";
      char* summary = nullptr;
      check(sc_zero_experiment(cfg.c_str(), c.out.c_str(), &summary));
      sc_string_free(summary);
    } else if (*aux) {
      std::vector<const char*> ptrs;
      for (const auto& p : points) ptrs.push_back(p.c_str());
      char* out = nullptr;
      check(sc_auxpoly(ptrs.data(), ptrs.size(), T, masser_d, &out));
      emit(c.out, ojson::parse(take(out)).dump(2));
    } else if (*bound) {
      if (list) {
        char* names = nullptr;
        check(sc_bound_names(&names));
        std::string all = take(names), text;
        std::stringstream ss(all);
        std::string name;
        while (std::getline(ss, name, ',')) {
          char* sig = nullptr;
          check(sc_bound_signature(name.c_str(), &sig));
          text += (text.empty() ? "" : "\n") + take(sig);
        }
        emit(c.out, text);
      } else {
        if (id.empty()) throw UsageError{"bound needs --id or --list"};
        std::vector<std::string> pn, cn;
        std::vector<double> pv, cv;
        for (const auto& p : params) {
          auto [k, v] = split_kv(p);
          pn.push_back(k);
          pv.push_back(v);
        }
        for (const auto& q : consts) {
          auto [k, v] = split_kv(q);
          cn.push_back(k);
          cv.push_back(v);
        }
        std::vector<const char*> pp, cp;
        for (const auto& s : pn) pp.push_back(s.c_str());
        for (const auto& s : cn) cp.push_back(s.c_str());
        sc_bound_value v{};
        check(sc_bound_eval(id.c_str(), pp.data(), pv.data(), pp.size(), cp.data(), cv.data(), cp.size(), &v));
        ojson j{{"id", id}, {"value", num(v.value)}, {"log_abs", v.log_abs}, {"sign", v.sign}};
        emit(c.out, j.dump());
      }
    } else if (*census) {
      std::string m = c.config.empty() ? "" : read_file(c.config) + "\n";
      if (census->count("--lattice")) m += "lattice=" + c.lattice + "\n";
      if (census->count("--digits")) m += "digits=" + std::to_string(c.digits) + "\n";
      if (census->count("--seed")) m += "seed=" + std::to_string(c.seed) + "\n";
      if (!d_max.empty()) m += "d_max=" + d_max + "\n";
      if (!H_max.empty()) m += "H_max=" + H_max + "\n";
      if (!theorem.empty()) m += "theorem=" + theorem + "\n";
      if (!budget.empty()) m += "budget=" + budget + "\n";
      for (const auto& q : census_consts) {
        auto eq = q.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError{"expected name=value, got '" + q + "'"};
        m += "const." + q + "\n";
      }
      char* summary = nullptr;
      check(sc_census_run(m.c_str(), c.out.c_str(), &summary));
      if (c.out != "-") std::cerr << take(summary) << '\n';
      else sc_string_free(summary);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << '\n';
    return 2;
  } catch (const Failure& f) {
    std::cerr << "error: " << sc_status_name(f.status) << ": " << f.message << '\n';
    return sc_exit_code(f.status);
  }
  return 0;
}
