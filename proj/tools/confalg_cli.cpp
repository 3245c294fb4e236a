#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "confalg/errors.hpp"
#include "confalg/harmonic.hpp"
#include "confalg/records.hpp"
#include "confalg/verify.hpp"

using namespace confalg;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct Options {
  std::optional<int> dim;
  int trunc = kDefaultOrder;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::string out;
  std::string input = "-";
  std::string suite;
  int grid = 20;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw DomainError("cannot open output file " + path);
    }
  }
  void emit(const Json& j) { stream() << j.dump() << '\n'; }

 private:
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  std::ofstream file_;
};

Json read_input(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

void check_dim(const Options& o, int d) {
  if (o.dim && *o.dim != d) {
    throw DimensionError("record has dimension " + std::to_string(d) + ", --dim is " + std::to_string(*o.dim));
  }
}

Point point_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("point must be a nonempty array");
  Point p;
  for (const Json& v : j) {
    if (!v.is_number()) throw ParseError("point coordinates must be numbers");
    p.push_back(v.get<double>());
  }
  return p;
}

// {"configuration"?, "observables": [...], "kernel"?: "green" | "normalized"}
int cmd_correlator(const Options& o, Output& out) {
  const Json in = read_input(o.input);
  std::vector<Observable> F;
  const Json& obs = field(in, "observables");
  if (!obs.is_array() || obs.empty()) throw ParseError("\"observables\" must be a nonempty array");
  for (const Json& j : obs) F.push_back(observable_from_json(j));
  const int d = F.front().dim();
  check_dim(o, d);
  bool normalized = false;
  if (in.contains("kernel")) {
    const std::string k = in.at("kernel").is_string() ? in.at("kernel").get<std::string>() : "";
    if (k != "green" && k != "normalized") throw ParseError("kernel must be \"green\" or \"normalized\"");
    normalized = k == "normalized";
  }
  Observable G(d);
  if (in.contains("configuration")) {
    G = rho(configuration_from_json(in.at("configuration")), F, {normalized});
  } else {
    if (F.size() != 1) throw ParseError("several observables need a configuration");
    G = F.front();
  }
  out.emit(to_json(vacuum_state(G, Kernel::green(d, normalized))));
  return kPass;
}

// {"phi", "psi"?}: cocycle identity on a grid, A table, Schwarzian diagonal.
int cmd_cocycle(const Options& o, Output& out) {
  const Json in = read_input(o.input);
  const ConformalMap phi = map_from_json(field(in, "phi"));
  check_dim(o, 2);
  if (phi.dim() != 2) throw DimensionError("cocycle needs d = 2 maps");
  const double tol = o.tol.value_or(1e-9);
  bool ok = true;
  const HarmonicCocycle c(phi, o.trunc);
  std::vector<Complex> grid;
  for (int i = 0; i < o.grid; ++i) {
    const double r = 0.9 * (i + 1) / o.grid;
    grid.push_back(std::polar(r, 2.0 * std::numbers::pi * (0.37 * i)));
  }
  if (in.contains("psi")) {
    const ConformalMap psi = map_from_json(in.at("psi"));
    if (psi.dim() != 2) throw DimensionError("cocycle needs d = 2 maps");
    const HarmonicCocycle cpsi(psi, o.trunc), ccomp(compose(phi, psi, o.trunc), o.trunc);
    double worst = 0.0;
    for (Complex z : grid) {
      for (Complex w : grid) {
        const Complex pz = apply_map(psi, z), pw = apply_map(psi, w);
        if (std::abs(pz) >= phi.radius() || std::abs(pw) >= phi.radius()) continue;
        worst = std::max(worst, std::abs(ccomp.H(z, w) - cpsi.H(z, w) - c.H(pz, pw)));
      }
    }
    ok = ok && worst <= tol;
    out.emit({{"report", "cocycle_identity"}, {"grid", o.grid}, {"residual", worst}, {"tolerance", tol}, {"pass", worst <= tol}});
  }
  const int top = (o.trunc - 2) / 2;
  Json table = Json::array();
  double amax = 0.0;
  for (int n = 0; n <= top; ++n) {
    Json row = Json::array();
    for (int m = 0; m <= top; ++m) {
      row.push_back(complex_json(c.A(n, m)));
      amax = std::max(amax, std::abs(c.A(n, m)));
    }
    table.push_back(row);
  }
  out.emit({{"report", "A"}, {"max_index", top}, {"max_abs", amax}, {"table", table}});
  const int deg = std::min(16, o.trunc - 4);
  const Series S = schwarzian_series(to_series(phi, o.trunc), deg + 4);
  const Series diag = c.diagonal(deg);
  double sres = 0.0;
  for (int k = 0; k <= deg; ++k) sres = std::max(sres, std::abs(diag[k] - S[k] / 6.0));
  ok = ok && sres <= tol;
  out.emit({{"report", "schwarzian_diagonal"}, {"degree", deg}, {"residual", sres}, {"tolerance", tol}, {"pass", sres <= tol}});
  return ok ? kPass : kFail;
}

// {"x", "y"}: partial sums of the Green expansion for N = 0..trunc.
int cmd_green_expand(const Options& o, Output& out) {
  const Json in = read_input(o.input);
  const Point x = point_from_json(field(in, "x")), y = point_from_json(field(in, "y"));
  if (x.size() != y.size()) throw DimensionError("x and y differ in dimension");
  const int d = static_cast<int>(x.size());
  check_dim(o, d);
  const double G = green_kernel(d, x, y);
  for (int N = 0; N <= o.trunc; ++N) {
    const double s = green_expansion_partial(d, x, y, N);
    out.emit({{"N", N}, {"partial", s}, {"exact", G}, {"error", std::abs(G - s)}});
  }
  return kPass;
}

// distribution record -> growth certificate; exit 1 when none is found.
int cmd_growth_check(const Options& o, Output& out) {
  const HarmonicDistribution T = distribution_from_json(read_input(o.input));
  check_dim(o, T.dim());
  const auto cert = growth_check(T);
  if (!cert) {
    out.emit({{"certificate", nullptr}, {"pass", false}});
    return kFail;
  }
  out.emit({{"certificate", {{"C", cert->C}, {"rho", cert->rho}}}, {"pass", true}});
  return kPass;
}

// {"outer", "i", "inner"} -> composed configuration.
int cmd_operad_compose(const Options& o, Output& out) {
  const Json in = read_input(o.input);
  const DiskConfiguration outer = configuration_from_json(field(in, "outer"));
  const DiskConfiguration inner = configuration_from_json(field(in, "inner"));
  const Json& i = field(in, "i");
  if (!i.is_number_integer()) throw ParseError("\"i\" must be an integer");
  check_dim(o, outer.dim);
  out.emit(to_json(compose_at(outer, i.get<int>(), inner)));
  return kPass;
}

int cmd_verify(const Options& o, Output& out) {
  VerifyConfig cfg;
  cfg.trunc = o.trunc;
  cfg.tol = o.tol;
  cfg.seed = o.seed;
  const SuiteResult r = run_suite(o.suite, cfg, [&](const CheckRecord& rec) { out.emit(to_json(rec)); });
  out.emit({{"suite", o.suite}, {"checks", r.checks}, {"failures", r.failures}, {"pass", r.failures == 0}});
  return r.failures == 0 ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformal harmonic algebra toolkit"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, bool takes_input) {
    sub->add_option("--dim", o.dim, "expected dimension of the input records")->check(CLI::Range(2, 64));
    sub->add_option("--trunc", o.trunc, "truncation degree N (>= 4)")->check(CLI::Range(4, 512));
    sub->add_option("--tol", o.tol, "tolerance override (> 0)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "seed for randomized suites");
    sub->add_option("--out", o.out, "output file (default stdout)");
    if (takes_input) sub->add_option("input", o.input, "input record file, - for stdin");
  };
  struct Entry {
    CLI::App* app;
    int (*run)(const Options&, Output&);
  };
  std::vector<Entry> cmds{
      {app.add_subcommand("correlator", "vacuum state of rho(configuration, observables)"), cmd_correlator},
      {app.add_subcommand("cocycle", "cocycle identity, A table and Schwarzian diagonal"), cmd_cocycle},
      {app.add_subcommand("green-expand", "partial sums of the Green kernel expansion"), cmd_green_expand},
      {app.add_subcommand("growth-check", "growth certificate of a distribution"), cmd_growth_check},
      {app.add_subcommand("operad-compose", "partial composition of configurations"), cmd_operad_compose},
      {app.add_subcommand("verify", "run an invariant suite"), cmd_verify},
  };
  for (auto& c : cmds) common(c.app, c.run != cmd_verify);
  cmds[1].app->add_option("--grid", o.grid, "grid points per axis")->check(CLI::Range(1, 400));
  cmds.back().app->add_option("suite", o.suite, "harmonic, cocycle, contraction, operad, anomaly or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_record("usage", e.what()).dump() << '\n';
    return kUsage;
  }
  try {
    Output out(o.out);
    for (auto& c : cmds) {
      if (c.app->parsed()) return c.run(o, out);
    }
  } catch (const Error& e) {
    std::cout << error_record(e.kind(), e.what()).dump() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cout << error_record("internal", e.what()).dump() << '\n';
    return kUsage;
  }
  return kUsage;
}
