#include "confalg/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "confalg/errors.hpp"
#include "confalg/fock.hpp"
#include "confalg/harmonic.hpp"
#include "confalg/operad.hpp"
#include "confalg/samplers.hpp"

namespace confalg {

namespace {

constexpr double kPi = std::numbers::pi;

// Independent stream per check family.
Rng stream(const VerifyConfig& cfg, std::uint64_t family) {
  return Rng(cfg.seed * 0x9E3779B97F4A7C15ULL + family * 0xBF58476D1CE4E5B9ULL);
}

double tol_or(const VerifyConfig& cfg, double fallback) { return cfg.tol.value_or(fallback); }

CheckRecord record(std::string name, Complex lhs, Complex rhs, double residual, double tol) {
  return {std::move(name), lhs, rhs, residual, tol, residual <= tol};
}

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

std::vector<Rational> exact(std::span<const double> x) {
  std::vector<Rational> out;
  for (double v : x) out.push_back(exact_rational(v));
  return out;
}

std::string tag(const std::string& base, int d) { return base + ".d" + std::to_string(d); }

// 20 deterministic points in the disk of radius 0.9.
std::vector<Complex> disk_grid() {
  std::vector<Complex> g;
  for (double r : {0.15, 0.4, 0.65, 0.9}) {
    for (int k = 0; k < 5; ++k) g.push_back(std::polar(r, 2.0 * kPi * (k + 0.3 * r) / 5.0));
  }
  return g;
}

Point random_direction(Rng& rng, int d) {
  Point u(d);
  for (double& v : u) v = rng.normal();
  const double n = norm(u);
  for (double& v : u) v /= n;
  return u;
}

MultiIndex random_index(Rng& rng, int d, int max_degree) {
  const int deg = rng.integer(0, max_degree);
  MultiIndex m(d);
  for (int k = 0; k < deg; ++k) {
    const int i = rng.integer(0, d - 1);
    m.set(i, m[i] + 1);
  }
  return m;
}

}  // namespace

void check_mobius_vanishing(const VerifyConfig& cfg, int maps, const RecordSink& sink) {
  Rng rng = stream(cfg, 1);
  const double tol = tol_or(cfg, 1e-9);
  const auto grid = disk_grid();
  for (int t = 0; t < maps; ++t) {
    const Mobius m = random_disk_mobius(rng);
    const HarmonicCocycle c(ConformalMap::mobius_series(m, 64), 64);
    double hmax = 0.0;
    Complex worst{};
    for (Complex z : grid) {
      for (Complex w : grid) {
        const double h = std::abs(c.H(z, w));
        if (h >= hmax) {
          hmax = h;
          worst = c.H(z, w);
        }
      }
    }
    sink(record("mobius_vanishing.H", worst, 0.0, hmax, tol));
    double amax = 0.0;
    Complex aw{};
    for (int n = 0; n <= 24; ++n) {
      for (int k = 0; k <= 24; ++k) {
        const Complex a = c.A(n, k);
        if (std::abs(a) >= amax) {
          amax = std::abs(a);
          aw = a;
        }
      }
    }
    sink(record("mobius_vanishing.A", aw, 0.0, amax, tol));
  }
}

void check_cocycle_identity(const VerifyConfig& cfg, int pairs, int points, const RecordSink& sink) {
  Rng rng = stream(cfg, 2);
  const double tol = tol_or(cfg, 1e-9);
  for (int t = 0; t < pairs; ++t) {
    const ConformalMap phi = random_univalent_series(rng, 4, 0.6);
    const ConformalMap psi = random_univalent_series(rng, 4, 0.6);
    const HarmonicCocycle cphi(phi), cpsi(psi), ccomp(compose(phi, psi));
    double worst = -1.0;
    Complex wl{}, wr{};
    for (int i = 0; i < points; ++i) {
      const Complex z = rng.in_disk(0.95), w = rng.in_disk(0.95);
      const double lhs = ccomp.H(z, w);
      const double rhs = cpsi.H(z, w) + cphi.H(apply_map(psi, z), apply_map(psi, w));
      if (std::abs(lhs - rhs) > worst) {
        worst = std::abs(lhs - rhs);
        wl = lhs;
        wr = rhs;
      }
    }
    sink(record("cocycle_identity", wl, wr, worst, tol));
  }
}

void check_schwarzian_diagonal(const VerifyConfig& cfg, int maps, int degree, const RecordSink& sink) {
  Rng rng = stream(cfg, 3);
  const double tol = tol_or(cfg, 1e-8);
  for (int t = 0; t < maps; ++t) {
    const ConformalMap phi = random_univalent_series(rng, 4, 0.6);
    const HarmonicCocycle c(phi);
    const Series S = schwarzian_series(phi.coeffs(), degree + 4);
    const Series diag = c.diagonal(degree);
    double worst = -1.0;
    Complex wl{}, wr{};
    for (int k = 0; k <= degree; ++k) {
      const double r = std::abs(diag[k] - S[k] / 6.0);
      if (r > worst) {
        worst = r;
        wl = diag[k];
        wr = S[k] / 6.0;
      }
    }
    sink(record("schwarzian_diagonal", wl, wr, worst, tol));
  }
  // worked example: z + 0.1 z^2 has A_00 = -0.01
  const HarmonicCocycle ex(ConformalMap::series(Series({0.0, 1.0, 0.1}), 1.0));
  sink(record("cocycle_example.A00", ex.A(0, 0), -0.01, std::abs(ex.A(0, 0) + 0.01), tol_or(cfg, 1e-10)));
}

void check_addition_formula(const VerifyConfig& cfg, int max_degree, int pairs, const RecordSink& sink) {
  Rng rng = stream(cfg, 4);
  const double tol = tol_or(cfg, 1e-10);
  for (int d : {3, 4}) {
    std::vector<std::pair<Point, Point>> pts;
    for (int p = 0; p < pairs; ++p) pts.emplace_back(rng.in_ball(d, 1.0), rng.in_ball(d, 1.0));
    for (int n = 0; n <= max_degree; ++n) {
      const OrthonormalBasis& B = orthonormal_basis(d, n);
      for (const auto& [x, y] : pts) {
        double lhs = 0.0;
        for (std::size_t k = 0; k < B.size(); ++k) lhs += B.value(k, x) * B.value(k, y);
        const double nx = norm(x), ny = norm(y);
        double dot = 0.0;
        for (int i = 0; i < d; ++i) dot += x[i] * y[i];
        const double pw = std::pow(nx * ny, n);
        const double rhs = gegenbauer(d, n, dot / (nx * ny)) * pw / expansion_coefficient(d, n);
        // relative to the Cauchy-Schwarz scale Z(x,x)^{1/2} Z(y,y)^{1/2}
        const double scale = static_cast<double>(dim_harm(d, n)) * pw;
        sink(record(tag("addition_formula", d) + ".n" + std::to_string(n), lhs, rhs, std::abs(lhs - rhs) / scale, tol));
      }
    }
  }
}

void check_green_decay(const VerifyConfig& cfg, const RecordSink& sink) {
  Rng rng = stream(cfg, 5);
  const double tol = tol_or(cfg, 0.1);
  for (int d : {2, 3, 4}) {
    for (double t : {0.3, 0.5, 0.7}) {
      // collinear points: the worst direction, no oscillating signs
      const Point u = random_direction(rng, d);
      Point x(d), y(d);
      for (int i = 0; i < d; ++i) {
        x[i] = 0.9 * u[i];
        y[i] = t * x[i];
      }
      const double G = green_kernel(d, x, y);
      const int n1 = static_cast<int>(std::floor(std::log(1e-10) / std::log(t)));
      const int n0 = std::max(2, n1 / 3);
      // least squares: log e_N = c0 + c1 log(N + 1) + N log r
      std::array<std::array<double, 4>, 3> A{};
      for (int N = n0; N <= n1; ++N) {
        const double e = std::abs(G - green_expansion_partial(d, x, y, N));
        const std::array<double, 3> row{1.0, std::log(N + 1.0), static_cast<double>(N)};
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) A[i][j] += row[i] * row[j];
          A[i][3] += row[i] * std::log(e);
        }
      }
      for (int c = 0; c < 3; ++c) {
        for (int r = 0; r < 3; ++r) {
          if (r == c) continue;
          const double m = A[r][c] / A[c][c];
          for (int k = c; k < 4; ++k) A[r][k] -= m * A[c][k];
        }
      }
      const double rate = std::exp(A[2][3] / A[2][2]);
      sink(record(tag("green_decay", d), rate, t, std::abs(rate - t) / t, tol));
    }
  }
}

void check_delta_reproduction(const VerifyConfig& cfg, int exact_samples, int bump_samples, const RecordSink& sink) {
  Rng rng = stream(cfg, 6);
  for (int d : {2, 3, 4}) {
    for (int s = 0; s < exact_samples; ++s) {
      const Point a = rng.in_ball(d, 0.9);
      const CPoly u = random_harmonic_poly(rng, d, 10);
      const HarmonicDistribution T = HarmonicDistribution::delta_at(a, 10);
      const CRational lhs = pair_exact(T, u);
      const CRational rhs = u.evaluate(std::span<const Rational>(exact(a)));
      const bool same = lhs == rhs;
      CheckRecord r = record(tag("delta_exact", d), lhs.to_complex(), rhs.to_complex(),
                             std::abs(lhs.to_complex() - rhs.to_complex()), 0.0);
      r.pass = same;
      sink(r);
    }
  }
  const double tol = tol_or(cfg, 1e-6);
  for (int d : {2, 3}) {
    for (int s = 0; s < bump_samples; ++s) {
      const Point a = rng.in_ball(d, 0.6);
      const double eps = rng.uniform(0.05, 0.3);
      const CPoly u = random_harmonic_poly(rng, d, 10);
      const Complex lhs = numeric_pair(bump(a, eps), u, 0.1 * tol).value;
      const Complex rhs = u.evaluate(std::span<const double>(a));
      sink(record(tag("delta_bump", d), lhs, rhs, std::abs(lhs - rhs), tol));
    }
  }
}

void check_growth(const VerifyConfig& cfg, const RecordSink& sink) {
  Rng rng = stream(cfg, 7);
  for (int d : {2, 3, 4}) {
    const Point a = rng.in_ball(d, 0.9);
    const auto ea = exact(a);
    Rational a2 = 0;
    for (const Rational& v : ea) a2 += v * v;
    const HarmonicDistribution T = HarmonicDistribution::delta_at(a, 8);
    Rational pw = 1;
    for (int n = 0; n <= 8; ++n) {
      const Rational lhs = harmonic_norm_sq(T.component(n).re) + harmonic_norm_sq(T.component(n).im);
      const Rational rhs = Rational(dim_harm(d, n)) * pw;
      CheckRecord r = record(tag("delta_norm", d) + ".n" + std::to_string(n), std::sqrt(to_double(lhs)),
                             std::sqrt(to_double(rhs)), std::abs(to_double(lhs - rhs)), 0.0);
      r.pass = lhs == rhs;
      sink(r);
      pw *= a2;
    }
  }
  const double tol = tol_or(cfg, 0.05);
  for (int d : {2, 3, 4}) {
    for (double r : {0.3, 0.7}) {
      // rational unit vector under a random signed permutation, so the
      // exact components stay cheap at high degree
      static const std::vector<std::vector<double>> units{
          {0.6, 0.8}, {2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0}, {0.5, 0.5, 0.5, 0.5}};
      std::vector<double> u = units[d - 2];
      for (int i = d - 1; i > 0; --i) std::swap(u[i], u[rng.integer(0, i)]);
      Point a(d);
      for (int i = 0; i < d; ++i) a[i] = (rng.integer(0, 1) ? r : -r) * u[i];
      const auto cert = growth_check(HarmonicDistribution::delta_at(a, std::max(cfg.trunc, 16)));
      const double rho = cert ? cert->rho : 1.0;
      sink(record(tag("growth_rate", d), rho, norm(a), std::abs(rho - norm(a)), tol));
    }
  }
}

void check_oracle_contraction(const VerifyConfig& cfg, int pairs, int derivative_pairs, const RecordSink& sink) {
  Rng rng = stream(cfg, 8);
  const double eps = 0.05;
  auto centers = [&](int d, double min_sep) {
    while (true) {
      Point a = rng.in_ball(d, 0.7), b = rng.in_ball(d, 0.7);
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
      if (std::sqrt(s) >= min_sep) return std::make_pair(a, b);
    }
  };
  const double tol = tol_or(cfg, 1e-4);
  const double dtol = tol_or(cfg, 1e-3);
  for (int d : {2, 3}) {
    const Kernel K = Kernel::green(d);
    for (int p = 0; p < pairs; ++p) {
      const auto [a, b] = centers(d, 4.0 * eps);
      const Complex lhs = numeric_contraction(bump(a, eps), bump(b, eps), K, 0.1 * tol).value;
      const double rhs = green_kernel(d, a, b);
      sink(record(tag("contraction", d), lhs, rhs, std::abs(lhs - rhs), tol));
    }
    for (int p = 0; p < derivative_pairs; ++p) {
      const auto [a, b] = centers(d, 6.0 * eps);
      MultiIndex al(d), be(d);
      while (al.degree() + be.degree() == 0) {
        al = random_index(rng, d, 2);
        be = random_index(rng, d, 2);
      }
      const HarmonicDistribution Ta = HarmonicDistribution::derivative_delta(a, al, 6);
      const HarmonicDistribution Tb = HarmonicDistribution::derivative_delta(b, be, 6);
      const Complex rhs = contraction_value(Ta, Tb, K);
      const Complex lhs = numeric_contraction(representative(Ta, eps), representative(Tb, eps), K, 0.1 * dtol).value;
      // relative to max(1, |value|): derivative values scale like dist^{-|alpha|-|beta|}
      sink(record(tag("contraction_derivative", d), lhs, rhs, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)), dtol));
    }
  }
}

void check_conformal_invariance(const VerifyConfig& cfg, int maps, int words, const RecordSink& sink) {
  Rng rng = stream(cfg, 9);
  const double tol = tol_or(cfg, 1e-9);
  const Kernel G = Kernel::green(3);
  for (int m = 0; m < maps; ++m) {
    const ConformalMap phi = random_word_embedding(rng, 3);
    const DiskConfiguration c = make_configuration(3, {make_embedding(phi)});
    for (int w = 0; w < words; ++w) {
      std::vector<HarmonicDistribution> word;
      const int len = 2 * rng.integer(1, 2);
      for (int k = 0; k < len; ++k) word.push_back(random_delta(rng, 3, 0.8, std::min(cfg.trunc, 8)));
      const Observable F = Observable::word(3, word);
      const Complex lhs = vacuum_state(rho(c, {F}), G).value;
      const Complex rhs = vacuum_state(F, G).value;
      sink(record("conformal_invariance.d3", lhs, rhs, std::abs(lhs - rhs), tol));
    }
  }
}

void check_anomaly(const VerifyConfig& cfg, int cases, int mobius_cases, const RecordSink& sink) {
  Rng rng = stream(cfg, 10);
  const double tol = tol_or(cfg, 1e-8);
  for (int t = 0; t < cases; ++t) {
    const ConformalMap phi = random_univalent_series(rng, 4, 0.5);
    const Observable F = Observable::word(2, {random_zero_mean_2d(rng), random_zero_mean_2d(rng)});
    const AnomalyReport r = anomaly_check(phi, F);
    sink(record("anomaly", r.lhs, r.rhs, r.residual, tol));
  }
  const double mtol = tol_or(cfg, 1e-9);
  for (int t = 0; t < mobius_cases; ++t) {
    const ConformalMap m = ConformalMap::mobius_series(random_disk_mobius(rng), 40);
    const Observable F = Observable::word(2, {random_zero_mean_2d(rng), random_zero_mean_2d(rng)});
    const AnomalyReport r = anomaly_check(m, F);
    sink(record("anomaly_mobius", r.uncorrected, r.rhs, std::abs(r.uncorrected - r.rhs), mtol));
  }
}

void check_operad_compatibility(const VerifyConfig& cfg, int instances, const RecordSink& sink) {
  Rng rng = stream(cfg, 11);
  const double tol = tol_or(cfg, 1e-8);
  for (int t = 0; t < instances; ++t) {
    const int d = t % 2 == 0 ? 2 : 3;
    const int n_outer = rng.integer(1, 3), n_inner = rng.integer(1, 2);
    const DiskConfiguration outer = random_ball_configuration(rng, d, n_outer);
    const DiskConfiguration inner = random_ball_configuration(rng, d, n_inner);
    const int i = rng.integer(1, n_outer);
    auto slot = [&] {
      std::vector<HarmonicDistribution> w;
      const int len = rng.integer(1, 2);
      for (int k = 0; k < len; ++k) w.push_back(d == 2 ? random_zero_mean_2d(rng) : random_delta(rng, d, 0.8, 6));
      return Observable::word(d, w);
    };
    std::vector<Observable> fin, fout, all;
    for (int k = 0; k < n_inner; ++k) fin.push_back(slot());
    for (int k = 0; k < n_outer; ++k) fout.push_back(slot());
    for (int k = 1; k <= n_outer; ++k) {
      if (k == i) {
        all.insert(all.end(), fin.begin(), fin.end());
      } else {
        all.push_back(fout[k - 1]);
      }
    }
    const Observable lhs = rho(compose_at(outer, i, inner), all);
    std::vector<Observable> nested = fout;
    nested[i - 1] = rho(inner, fin);
    const Observable rhs = rho(outer, nested);
    const ObservableResidual r = compare_observables(lhs, rhs, rng.next(), 4);
    sink(record(tag("operad_compatibility", d), r.scale, r.scale, r.abs, tol));
  }
}

void check_operad_laws(const VerifyConfig& cfg, int instances, const RecordSink& sink) {
  Rng rng = stream(cfg, 12);
  const double tol = tol_or(cfg, 1e-10);
  // max distance between corresponding embeddings on sample points
  auto distance = [&](const DiskConfiguration& a, const DiskConfiguration& b) {
    if (a.arity() != b.arity()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (int k = 0; k < a.arity(); ++k) {
      for (int s = 0; s < 8; ++s) {
        const Point x = rng.in_ball(a.dim, 0.99);
        const Point p = apply_map(a.embeddings[k].map, x), q = apply_map(b.embeddings[k].map, x);
        for (int i = 0; i < a.dim; ++i) m = std::max(m, std::abs(p[i] - q[i]));
      }
    }
    return m;
  };
  for (int t = 0; t < instances; ++t) {
    const int d = 2 + t % 2;
    const auto a = random_ball_configuration(rng, d, 2);
    const auto b = random_ball_configuration(rng, d, 2);
    const auto c = random_ball_configuration(rng, d, 2);
    const int i = rng.integer(1, 2), j = rng.integer(1, 2);
    const double assoc = distance(compose_at(compose_at(a, i, b), i + j - 1, c), compose_at(a, i, compose_at(b, j, c)));
    sink(record(tag("operad_associativity", d), assoc, 0.0, assoc, tol));
    const double unit = std::max(distance(compose_at(a, i, identity_configuration(d)), a),
                                 distance(compose_at(identity_configuration(d), 1, a), a));
    sink(record(tag("operad_unit", d), unit, 0.0, unit, tol));
  }
}

void check_wick(const VerifyConfig& cfg, int words, const RecordSink& sink) {
  Rng rng = stream(cfg, 13);
  const double tol = tol_or(cfg, 1e-12);
  using Matching = std::set<std::pair<int, int>>;
  // brute force: every ordering of six slots, read off in consecutive pairs
  std::set<Matching> brute;
  std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
  do {
    Matching m;
    for (int k = 0; k < 6; k += 2) m.insert({std::min(perm[k], perm[k + 1]), std::max(perm[k], perm[k + 1])});
    brute.insert(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::set<Matching> lib;
  for (const auto& m : perfect_matchings(6)) lib.insert(Matching(m.begin(), m.end()));
  CheckRecord sets = record("wick_matchings", static_cast<double>(perfect_matchings(6).size()),
                            static_cast<double>(brute.size()), brute == lib ? 0.0 : 1.0, 0.0);
  sets.pass = brute == lib && brute.size() == 15 && perfect_matchings(6).size() == 15;
  sink(sets);
  for (int w = 0; w < words; ++w) {
    const int d = 2 + w % 2;
    std::vector<Point> pts;
    std::vector<HarmonicDistribution> word;
    for (int k = 0; k < 6; ++k) {
      pts.push_back(rng.in_ball(d, 0.9));
      word.push_back(HarmonicDistribution::delta_at(pts.back(), std::min(cfg.trunc, 4)));
    }
    const StateValue v = vacuum_state(Observable::word(d, word), Kernel::green(d));
    double sum = 0.0;
    for (const Matching& m : brute) {
      double prod = 1.0;
      for (const auto& [p, q] : m) prod *= green_kernel(d, pts[p], pts[q]);
      sum += prod;
    }
    CheckRecord r = record(tag("wick_value", d), v.value, sum, std::abs(v.value - sum) / std::max(1.0, std::abs(sum)), tol);
    r.pass = r.pass && v.matchings == 15;
    sink(r);
  }
}

void check_oracle_identities(const VerifyConfig& cfg, const RecordSink& sink) {
  const Kernel K2 = Kernel::green(2), K3 = Kernel::green(3);
  const double t6 = tol_or(cfg, 1e-6), t4 = tol_or(cfg, 1e-4);
  sink(verify_cg_intertwine(bump(Point{-0.4, 0.0}, 0.2), Point{0.4, 0.1}, 0.2, K2, t6));
  sink(verify_cg_intertwine(bump(Point{0.1, 0.2}, 0.2), Point{0.1, 0.2}, 0.2, K2, t4));
  sink(verify_cg_intertwine(bump(Point{0.1, 0.0, 0.0}, 0.2), Point{0.2, 0.05, 0.0}, 0.2, K3, t4));
  const ConformalMap dil = ConformalMap::word(2, {Generator::dilation(0.5), Generator::translation({0.1, 0.0})});
  sink(verify_pushforward_integral(dil, bump(Point{0.1, 0.2}, 0.2), bump(Point{0.15, 0.1}, 0.25), tol_or(cfg, 1e-10)));
  Rng rng = stream(cfg, 14);
  const ConformalMap m3 = random_word_embedding(rng, 3);
  sink(verify_pushforward_integral(m3, bump(Point{0.1, 0.0, 0.1}, 0.2), bump(Point{0.0, 0.1, 0.1}, 0.25), t6));
  SmoothFunction zm = bump(Point{0.2, 0.0}, 0.15);
  zm += Complex(-1.0) * bump(Point{-0.2, 0.1}, 0.15);
  sink(verify_pushforward_mean(random_univalent_series(rng, 4, 0.5), zm, tol_or(cfg, 1e-8)));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"harmonic", "cocycle", "contraction", "operad", "anomaly", "all"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg, const RecordSink& sink) {
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
    throw DomainError("unknown suite \"" + name + "\"");
  }
  if (cfg.trunc < 4) throw DomainError("truncation must be at least 4");
  if (cfg.tol && !(*cfg.tol > 0.0)) throw DomainError("tolerance must be positive");
  SuiteResult res;
  const RecordSink counted = [&](const CheckRecord& r) {
    ++res.checks;
    if (!r.pass) ++res.failures;
    sink(r);
  };
  const bool all = name == "all";
  if (all || name == "harmonic") {
    check_addition_formula(cfg, 6, 10, counted);
    check_green_decay(cfg, counted);
    check_delta_reproduction(cfg, 10, 5, counted);
    check_growth(cfg, counted);
  }
  if (all || name == "cocycle") {
    check_mobius_vanishing(cfg, 5, counted);
    check_cocycle_identity(cfg, 5, 20, counted);
    check_schwarzian_diagonal(cfg, 5, 16, counted);
  }
  if (all || name == "contraction") {
    check_oracle_contraction(cfg, 4, 2, counted);
    check_wick(cfg, 6, counted);
    check_oracle_identities(cfg, counted);
  }
  if (all || name == "operad") {
    check_operad_laws(cfg, 6, counted);
    check_operad_compatibility(cfg, 6, counted);
  }
  if (all || name == "anomaly") {
    check_conformal_invariance(cfg, 3, 5, counted);
    check_anomaly(cfg, 6, 4, counted);
  }
  return res;
}

}  // namespace confalg
