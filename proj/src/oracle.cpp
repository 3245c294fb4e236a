#include "confalg/oracle.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "confalg/errors.hpp"
#include "confalg/harmonic.hpp"
#include "confalg/operad.hpp"

namespace confalg {

namespace {

constexpr double kPi = std::numbers::pi;

double dist(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

void check_dim(int d) {
  if (d != 2 && d != 3) throw DimensionError("quadrature supports d = 2 and d = 3");
}

// Dense truncated Taylor jets in d variables up to total degree K. The
// layout (monomial order and product table) is shared per (d, K).
struct JetLayout {
  std::vector<MultiIndex> monos;
  std::map<MultiIndex, int> index;
  std::vector<std::array<int, 3>> products;  // (i, j, k): e_i e_j = e_k
};

const JetLayout& jet_layout(int d, int K) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, JetLayout> cache;
  std::lock_guard lock(mu);
  auto it = cache.find({d, K});
  if (it != cache.end()) return it->second;
  JetLayout L;
  for (int n = 0; n <= K; ++n) {
    for (const MultiIndex& m : monomials(d, n)) {
      L.index.emplace(m, static_cast<int>(L.monos.size()));
      L.monos.push_back(m);
    }
  }
  const int N = static_cast<int>(L.monos.size());
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      if (L.monos[a].degree() + L.monos[b].degree() <= K) L.products.push_back({a, b, L.index.at(L.monos[a] + L.monos[b])});
    }
  }
  return cache.emplace(std::make_pair(d, K), std::move(L)).first->second;
}

using Jet = std::vector<double>;

Jet jet_mul(const JetLayout& L, const Jet& a, const Jet& b) {
  Jet out(a.size(), 0.0);
  for (const auto& [i, j, k] : L.products) out[k] += a[i] * b[j];
  return out;
}

// Taylor coefficients h_j of t -> exp(-1/(1 - (s0 + t)/eps^2)) at t = 0.
std::vector<double> profile_series(double s0, double eps, int K) {
  const double e2 = eps * eps;
  const double D = e2 - s0;
  std::vector<double> g(K + 1), out(K + 1, 0.0);
  double p = 1.0 / D;
  for (int j = 0; j <= K; ++j) {
    g[j] = -e2 * p;
    p /= D;
  }
  out[0] = std::exp(g[0]);
  for (int n = 1; n <= K; ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += k * g[k] * out[n - k];
    out[n] = s / n;
  }
  return out;
}

// Taylor jet of the unnormalized bump at y = x - a, truncated at degree K.
Jet bump_jet(const JetLayout& L, std::span<const double> y, double eps, int K) {
  const int d = static_cast<int>(y.size());
  double s0 = 0.0;
  for (double v : y) s0 += v * v;
  const auto h = profile_series(s0, eps, K);
  // Delta(delta) = 2 y.delta + |delta|^2
  Jet D(L.monos.size(), 0.0);
  for (int i = 0; i < d; ++i) {
    if (K >= 1) D[L.index.at(MultiIndex::unit(d, i, 1))] = 2.0 * y[i];
    if (K >= 2) D[L.index.at(MultiIndex::unit(d, i, 2))] = 1.0;
  }
  Jet out(L.monos.size(), 0.0);
  Jet pw(L.monos.size(), 0.0);
  pw[0] = 1.0;
  for (int j = 0; j <= K; ++j) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += h[j] * pw[k];
    if (j < K) pw = jet_mul(L, pw, D);
  }
  return out;
}

double multi_factorial(const MultiIndex& a) {
  double f = 1.0;
  for (int i = 0; i < a.dim(); ++i) {
    for (int k = 2; k <= a[i]; ++k) f *= k;
  }
  return f;
}

// Cartesian weights of d_z^p d_zbar^q: 2^{-p-q} sum C(p,j)(-i)^j C(q,l) i^l d_1^{p+q-j-l} d_2^{j+l}.
std::map<int, Complex> wirtinger_cartesian(int p, int q) {
  std::map<int, Complex> w;
  const double s = std::ldexp(1.0, -(p + q));
  for (int j = 0; j <= p; ++j) {
    for (int l = 0; l <= q; ++l) {
      const double c = binomial(p, j).get_d() * binomial(q, l).get_d() * s;
      w[j + l] += c * ipow(Complex(0, -1), j) * ipow(Complex(0, 1), l);
    }
  }
  return w;
}


}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw DomainError("Gauss-Legendre needs at least one node");
  GaussLegendre g;
  const auto zeros = boost::math::legendre_p_zeros<double>(n);
  auto weight = [&](double x) {
    const double dp = boost::math::legendre_p_prime<double>(n, x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  for (auto it2 = zeros.rbegin(); it2 != zeros.rend(); ++it2) {
    if (*it2 == 0.0) continue;
    g.x.push_back(-*it2);
    g.w.push_back(weight(*it2));
  }
  for (double z : zeros) {
    g.x.push_back(z);
    g.w.push_back(weight(z));
  }
  return cache.emplace(n, std::move(g)).first->second;
}

QuadratureRule ball_rule(const Ball& b, int radial, int angular) {
  const int d = static_cast<int>(b.center.size());
  check_dim(d);
  const GaussLegendre& gr = gauss_legendre(radial);
  QuadratureRule q;
  q.d = d;
  const double R = b.radius;
  if (d == 2) {
    for (std::size_t i = 0; i < gr.x.size(); ++i) {
      const double r = 0.5 * R * (gr.x[i] + 1.0);
      const double wr = 0.5 * R * gr.w[i] * r;
      for (int k = 0; k < angular; ++k) {
        const double t = 2.0 * kPi * (k + 0.5) / angular;
        q.nodes.push_back({b.center[0] + r * std::cos(t), b.center[1] + r * std::sin(t)});
        q.weights.push_back(wr * 2.0 * kPi / angular);
      }
    }
    return q;
  }
  const GaussLegendre& gc = gauss_legendre(std::max(2, angular / 2));
  for (std::size_t i = 0; i < gr.x.size(); ++i) {
    const double r = 0.5 * R * (gr.x[i] + 1.0);
    const double wr = 0.5 * R * gr.w[i] * r * r;
    for (std::size_t j = 0; j < gc.x.size(); ++j) {
      const double ct = gc.x[j];
      const double st = std::sqrt(1.0 - ct * ct);
      for (int k = 0; k < angular; ++k) {
        const double ph = 2.0 * kPi * (k + 0.5) / angular;
        q.nodes.push_back({b.center[0] + r * st * std::cos(ph), b.center[1] + r * st * std::sin(ph), b.center[2] + r * ct});
        q.weights.push_back(wr * gc.w[j] * 2.0 * kPi / angular);
      }
    }
  }
  return q;
}

Complex SmoothFunction::operator()(std::span<const double> x) const {
  Complex s{};
  for (const Piece& p : pieces) {
    if (dist(x, p.support.center) < p.support.radius) s += p.f(x);
  }
  return s;
}

SmoothFunction& SmoothFunction::operator+=(const SmoothFunction& o) {
  if (!pieces.empty() && o.d != d) throw DimensionError("adding functions of different dimension");
  d = o.d;
  pieces.insert(pieces.end(), o.pieces.begin(), o.pieces.end());
  return *this;
}

SmoothFunction operator*(Complex c, SmoothFunction f) {
  for (auto& p : f.pieces) {
    Field g = p.f;
    p.f = [g, c](std::span<const double> x) { return c * g(x); };
  }
  return f;
}

double bump_normalization(int d, double eps) {
  static std::mutex mu;
  static std::map<int, double> radial;  // int_0^1 exp(-1/(1-t^2)) t^{d-1} dt
  double I = 0.0;
  {
    std::lock_guard lock(mu);
    auto it = radial.find(d);
    if (it == radial.end()) {
      boost::math::quadrature::tanh_sinh<double> ts;
      const double v = ts.integrate(
          [d](double t) { return t >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - t * t)) * std::pow(t, d - 1); }, 0.0, 1.0);
      it = radial.emplace(d, v).first;
    }
    I = it->second;
  }
  return 1.0 / (std::pow(eps, d) * sphere_area(d) * I);
}

SmoothFunction bump(std::span<const double> a, double eps) {
  return bump_derivative(a, eps, MultiIndex(static_cast<int>(a.size())));
}

SmoothFunction bump_derivative(std::span<const double> a, double eps, const MultiIndex& alpha, bool wirtinger) {
  const int d = static_cast<int>(a.size());
  check_dim(d);
  if (!(eps > 0.0)) throw DomainError("bump radius must be positive");
  double na = 0.0;
  for (double v : a) na += v * v;
  if (!(std::sqrt(na) + eps < 1.0)) throw ContainmentError("bump support leaves the unit disk");
  const double c = bump_normalization(d, eps);
  const Point center(a.begin(), a.end());
  const int K = alpha.degree();
  const JetLayout& L = jet_layout(d, K);
  // jet slots with complex weights (including alpha!)
  std::vector<std::pair<int, Complex>> parts;
  if (wirtinger) {
    if (d != 2) throw DimensionError("Wirtinger derivatives need d = 2");
    for (const auto& [m, w] : wirtinger_cartesian(alpha[0], alpha[1])) {
      const MultiIndex c{alpha[0] + alpha[1] - m, m};
      if (w != Complex{}) parts.push_back({L.index.at(c), w * multi_factorial(c)});
    }
  } else {
    parts.push_back({L.index.at(alpha), multi_factorial(alpha)});
  }
  Field f = [center, eps, c, parts, K, &L](std::span<const double> x) -> Complex {
    Point y(x.size());
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      y[i] = x[i] - center[i];
      s += y[i] * y[i];
    }
    if (s >= eps * eps) return 0.0;
    if (K == 0) return c * std::exp(-1.0 / (1.0 - s / (eps * eps)));
    const Jet j = bump_jet(L, y, eps, K);
    Complex v{};
    for (const auto& [m, w] : parts) v += w * j[m];
    return c * v;
  };
  SmoothFunction out;
  out.d = d;
  out.pieces.push_back({Ball{center, eps}, std::move(f)});
  return out;
}

SmoothFunction bump_laplacian(std::span<const double> a, double eps) {
  const int d = static_cast<int>(a.size());
  check_dim(d);
  const double c = bump_normalization(d, eps);
  const Point center(a.begin(), a.end());
  Field f = [center, eps, c, d](std::span<const double> x) -> Complex {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - center[i]) * (x[i] - center[i]);
    if (s >= eps * eps) return 0.0;
    // h(x) = H(s): sum d_i^2 h = 2 d H' + 4 s H''
    const auto h = profile_series(s, eps, 2);
    return -c * (2.0 * d * h[1] + 4.0 * s * 2.0 * h[2]);
  };
  SmoothFunction out;
  out.d = d;
  out.pieces.push_back({Ball{center, eps}, std::move(f)});
  return out;
}

SmoothFunction representative(const HarmonicDistribution& T, double eps) {
  if (!T.has_points()) throw UnsupportedError("bump representatives need a point form");
  SmoothFunction out;
  out.d = T.dim();
  for (const PointTerm& t : T.points()) out += t.coef * bump_derivative(t.a, eps, t.alpha, t.wirtinger);
  return out;
}

namespace {

Complex integrate(const QuadratureRule& q, const Field& f) {
  Complex s{};
  for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * f(q.nodes[i]);
  return s;
}

double scale_of(Complex v) { return std::max(1.0, std::abs(v)); }

OracleOptions refine(const OracleOptions& o) {
  return {o.radial + o.radial / 2, o.angular + o.angular / 2, o.max_refinements};
}

OracleOptions resolve(const OracleOptions& o, int radial, int angular) {
  return {o.radial > 0 ? o.radial : radial, o.angular > 0 ? o.angular : angular, o.max_refinements};
}

// Refine by 3/2 until two successive levels agree to tol (relative to
// max(1, |value|)); the last level is returned.
NumericValue refine_until(const std::function<Complex(const OracleOptions&)>& eval, double tol,
                          const OracleOptions& opt, bool relative = true) {
  OracleOptions o = opt;
  Complex prev = eval(o);
  double err = 0.0;
  for (int step = 0; step < opt.max_refinements; ++step) {
    o = refine(o);
    const Complex cur = eval(o);
    err = std::abs(cur - prev);
    prev = cur;
    if (err <= tol * (relative ? scale_of(cur) : 1.0)) return {cur, err};
  }
  throw ToleranceError("quadrature error estimate exceeds tolerance");
}

// Double-precision copy of a polynomial for fast evaluation.
Field compile(const CPoly& u) {
  struct Term {
    std::vector<int> e;
    Complex c;
  };
  std::map<MultiIndex, Complex> acc;
  for (const auto& [m, c] : u.re.terms()) acc[m] += to_double(c);
  for (const auto& [m, c] : u.im.terms()) acc[m] += Complex(0, to_double(c));
  std::vector<Term> terms;
  for (const auto& [m, c] : acc) {
    std::vector<int> e(m.dim());
    for (int i = 0; i < m.dim(); ++i) e[i] = m[i];
    terms.push_back({std::move(e), c});
  }
  return [terms](std::span<const double> x) {
    Complex s{};
    for (const Term& t : terms) {
      double p = 1.0;
      for (std::size_t i = 0; i < t.e.size(); ++i) {
        for (int k = 0; k < t.e[i]; ++k) p *= x[i];
      }
      s += t.c * p;
    }
    return s;
  };
}

}  // namespace

NumericValue numeric_pair(const SmoothFunction& f, const Field& u, double tol, const OracleOptions& opt) {
  return refine_until(
      [&](const OracleOptions& o) {
        Complex s{};
        for (const auto& p : f.pieces) {
          const QuadratureRule q = ball_rule(p.support, o.radial, o.angular);
          s += integrate(q, [&](std::span<const double> x) { return p.f(x) * u(x); });
        }
        return s;
      },
      tol, resolve(opt, 24, 24));
}

NumericValue numeric_pair(const SmoothFunction& f, const CPoly& u, double tol, const OracleOptions& opt) {
  return numeric_pair(f, compile(u), tol, opt);
}

NumericValue numeric_integral(const SmoothFunction& f, double tol, const OracleOptions& opt) {
  return numeric_pair(f, [](std::span<const double>) { return Complex(1.0); }, tol, opt);
}

Complex kernel_value(const Kernel& K, std::span<const double> x, std::span<const double> y) {
  const double scale = K.normalized ? normalization_lambda_sq(K.d) : 1.0;
  Complex v{};
  if (K.kind != Kernel::Kind::Cocycle) v += green_kernel(K.d, x, y);
  if (K.kind != Kernel::Kind::Green) {
    const Complex z = to_complex(x), w = to_complex(y);
    v -= (K.tilde ? K.cocycle->H_tilde(z, w) : K.cocycle->H(z, w)) / (2.0 * kPi);
  }
  return scale * v;
}

NumericValue numeric_contraction(const SmoothFunction& f, const SmoothFunction& g, const Kernel& K, double tol,
                                 const OracleOptions& opt) {
  if (f.d != K.d || g.d != K.d) throw DimensionError("kernel and function dimensions differ");
  const OracleOptions o0 = resolve(opt, 24, K.d == 2 ? 16 : 8);
  if (K.singular()) {
    for (const auto& p : f.pieces) {
      for (const auto& r : g.pieces) {
        const double gap = dist(p.support.center, r.support.center) - p.support.radius - r.support.radius;
        const double spacing = std::max(p.support.radius, r.support.radius) / o0.radial;
        if (!(gap > 2.0 * spacing)) throw SeparationError("supports too close for a singular kernel");
      }
    }
  }
  const int d = K.d;
  const bool pure_green = K.kind == Kernel::Kind::Green;
  const double lam = K.normalized ? normalization_lambda_sq(d) : 1.0;
  // G_2 = -log(r^2) / (4 pi), G_d = r^{2-d} / ((d-2) |S^{d-1}|)
  const double c2 = -lam / (4.0 * kPi);
  const double cd = d > 2 ? lam / ((d - 2) * sphere_area(d)) : 0.0;
  return refine_until([&](const OracleOptions& o) {
    Complex s{};
    for (const auto& p : f.pieces) {
      const QuadratureRule qf = ball_rule(p.support, o.radial, o.angular);
      std::vector<Complex> fv(qf.nodes.size());
      for (std::size_t i = 0; i < fv.size(); ++i) fv[i] = qf.weights[i] * p.f(qf.nodes[i]);
      for (const auto& r : g.pieces) {
        const QuadratureRule qg = ball_rule(r.support, o.radial, o.angular);
        std::vector<Complex> gv(qg.nodes.size());
        for (std::size_t j = 0; j < gv.size(); ++j) gv[j] = qg.weights[j] * r.f(qg.nodes[j]);
        for (std::size_t i = 0; i < fv.size(); ++i) {
          if (fv[i] == Complex{}) continue;
          Complex inner{};
          if (pure_green) {
            const double* x = qf.nodes[i].data();
            for (std::size_t j = 0; j < gv.size(); ++j) {
              const double* y = qg.nodes[j].data();
              double r2 = 0.0;
              for (int c = 0; c < d; ++c) r2 += (x[c] - y[c]) * (x[c] - y[c]);
              inner += (d == 2 ? c2 * std::log(r2) : cd * std::pow(r2, -0.5 * (d - 2))) * gv[j];
            }
          } else {
            for (std::size_t j = 0; j < gv.size(); ++j) {
              if (gv[j] == Complex{}) continue;
              inner += kernel_value(K, qf.nodes[i], qg.nodes[j]) * gv[j];
            }
          }
          s += fv[i] * inner;
        }
      }
    }
    return s;
  }, tol, o0);
}

namespace {

// int G(x, y) rho(y) dy for rho supported in B_eps(b), in polar coordinates
// about x with a graded radial rule near r = 0.
Complex singular_potential(int d, std::span<const double> x, const Point& b, double eps, const Field& rho,
                           int radial, int angular) {
  const GaussLegendre& gr = gauss_legendre(radial);
  auto ray = [&](std::span<const double> dir) -> Complex {
    // intersection of x + r dir with B_eps(b)
    double bx = 0.0, c = 0.0;
    for (int i = 0; i < d; ++i) {
      bx += dir[i] * (x[i] - b[i]);
      c += (x[i] - b[i]) * (x[i] - b[i]);
    }
    c -= eps * eps;
    const double disc = bx * bx - c;
    if (disc <= 0.0) return 0.0;
    const double sq = std::sqrt(disc);
    const double r1 = std::max(0.0, -bx - sq);
    const double r2 = -bx + sq;
    if (r2 <= r1) return 0.0;
    Complex s{};
    Point y(d);
    const bool graded = r1 == 0.0;
    for (std::size_t k = 0; k < gr.x.size(); ++k) {
      double r, w;
      if (graded) {
        // r = r2 t^2, dr = 2 r2 t dt
        const double t = 0.5 * (gr.x[k] + 1.0);
        r = r2 * t * t;
        w = 0.5 * gr.w[k] * 2.0 * r2 * t;
      } else {
        r = r1 + 0.5 * (r2 - r1) * (gr.x[k] + 1.0);
        w = 0.5 * (r2 - r1) * gr.w[k];
      }
      if (r <= 0.0) continue;
      for (int i = 0; i < d; ++i) y[i] = x[i] + r * dir[i];
      const double G = d == 2 ? -std::log(r) / (2.0 * kPi) : 1.0 / ((d - 2) * sphere_area(d) * std::pow(r, d - 2));
      s += w * std::pow(r, d - 1) * G * rho(y);
    }
    return s;
  };
  Complex total{};
  double rho0 = 0.0;
  for (int i = 0; i < d; ++i) rho0 += (b[i] - x[i]) * (b[i] - x[i]);
  rho0 = std::sqrt(rho0);
  const bool outside = rho0 >= eps;
  // unit axis x -> b (arbitrary when x == b)
  Point e(d, 0.0);
  if (rho0 > 0.0) {
    for (int i = 0; i < d; ++i) e[i] = (b[i] - x[i]) / rho0;
  } else {
    e[0] = 1.0;
  }
  if (d == 2) {
    const double t0 = std::atan2(e[1], e[0]);
    if (outside) {
      // only the cone of half-angle asin(eps/rho0) sees the support
      const double half = std::asin(eps / rho0);
      const GaussLegendre& ga = gauss_legendre(angular);
      for (std::size_t k = 0; k < ga.x.size(); ++k) {
        const double t = t0 + half * ga.x[k];
        const double dir[2] = {std::cos(t), std::sin(t)};
        total += ray(dir) * (half * ga.w[k]);
      }
      return total;
    }
    for (int k = 0; k < angular; ++k) {
      const double t = t0 + 2.0 * kPi * (k + 0.5) / angular;
      const double dir[2] = {std::cos(t), std::sin(t)};
      total += ray(dir) * (2.0 * kPi / angular);
    }
    return total;
  }
  // d = 3: polar angle from the axis, azimuth about it
  Point u(3), v(3);
  Point t{0.0, 0.0, 0.0};
  t[std::abs(e[0]) < 0.9 ? 0 : 1] = 1.0;
  const double te = t[0] * e[0] + t[1] * e[1] + t[2] * e[2];
  for (int i = 0; i < 3; ++i) u[i] = t[i] - te * e[i];
  const double nu = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  for (int i = 0; i < 3; ++i) u[i] /= nu;
  v[0] = e[1] * u[2] - e[2] * u[1];
  v[1] = e[2] * u[0] - e[0] * u[2];
  v[2] = e[0] * u[1] - e[1] * u[0];
  const double top = outside ? std::asin(eps / rho0) : kPi;
  const GaussLegendre& ga = gauss_legendre(angular);
  const int naz = std::max(4, angular / 4);
  for (std::size_t k = 0; k < ga.x.size(); ++k) {
    const double th = 0.5 * top * (ga.x[k] + 1.0);
    const double w = 0.5 * top * ga.w[k] * std::sin(th);
    for (int l = 0; l < naz; ++l) {
      const double ph = 2.0 * kPi * (l + 0.5) / naz;
      double dir[3];
      for (int i = 0; i < 3; ++i) dir[i] = std::cos(th) * e[i] + std::sin(th) * (std::cos(ph) * u[i] + std::sin(ph) * v[i]);
      total += ray(dir) * (w * 2.0 * kPi / naz);
    }
  }
  return total;
}

CheckRecord make_record(std::string name, Complex lhs, Complex rhs, double tol) {
  CheckRecord r;
  r.check = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = std::abs(lhs - rhs);
  r.tolerance = tol;
  r.pass = r.residual <= tol;
  return r;
}

}  // namespace

CheckRecord verify_cg_intertwine(const SmoothFunction& f, std::span<const double> h_center, double h_eps,
                                 const Kernel& K, double tol, const OracleOptions& opt) {
  if (K.kind != Kernel::Kind::Green) throw UnsupportedError("intertwining check uses the Green kernel");
  const int d = f.d;
  check_dim(d);
  const Point b(h_center.begin(), h_center.end());
  const SmoothFunction h = bump(b, h_eps);
  const SmoothFunction lap = bump_laplacian(b, h_eps);
  const Field rho = lap.pieces[0].f;
  const double scale = K.normalized ? normalization_lambda_sq(d) : 1.0;
  Complex lhs{}, rhs{};
  // outer rule over supp f; inner (ray) resolution from opt
  const OracleOptions o = resolve(opt, d == 2 ? 96 : 64, 64);
  for (const auto& p : f.pieces) {
    const QuadratureRule q = ball_rule(p.support, d == 2 ? 16 : 8, d == 2 ? 16 : 8);
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      const Complex fx = p.f(q.nodes[i]);
      if (fx == Complex{}) continue;
      lhs += q.weights[i] * fx * scale * singular_potential(d, q.nodes[i], b, h_eps, rho, o.radial, o.angular);
      rhs += q.weights[i] * fx * h(q.nodes[i]);
    }
  }
  if (K.normalized) rhs *= scale;
  return make_record("cg_intertwine", lhs, rhs, tol);
}

std::optional<Point> invert_map(const ConformalMap& phi, std::span<const double> x, std::span<const double> y0) {
  if (!phi.is_series()) {
    try {
      return apply_map(inverse(phi), x);
    } catch (const DomainError&) {
      return std::nullopt;
    }
  }
  const Series& s = phi.coeffs();
  const Series ds = s.derivative();
  const Complex target = to_complex(x);
  Complex z = to_complex(y0);
  for (int it = 0; it < 60; ++it) {
    if (std::abs(z) >= phi.radius()) return std::nullopt;
    const Complex step = (s.eval(z) - target) / ds.eval(z);
    z -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) {
      if (std::abs(z) >= phi.radius()) return std::nullopt;
      return to_point(z);
    }
  }
  return std::nullopt;
}

namespace {

// Least-squares sphere through points: |p|^2 = 2 c.p + k. Returns the ball
// and the max deviation of the points from its boundary.
std::pair<Ball, double> fit_sphere(const std::vector<Point>& pts) {
  const int d = static_cast<int>(pts[0].size());
  const int n = d + 1;
  std::vector<std::vector<double>> A(n, std::vector<double>(n + 1, 0.0));
  for (const Point& p : pts) {
    std::vector<double> row(n);
    double r2 = 0.0;
    for (int i = 0; i < d; ++i) {
      row[i] = 2.0 * p[i];
      r2 += p[i] * p[i];
    }
    row[d] = 1.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) A[i][j] += row[i] * row[j];
      A[i][n] += row[i] * r2;
    }
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    }
    std::swap(A[c], A[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double m = A[r][c] / A[c][c];
      for (int k = c; k <= n; ++k) A[r][k] -= m * A[c][k];
    }
  }
  Point c(d);
  double cc = 0.0;
  for (int i = 0; i < d; ++i) {
    c[i] = A[i][n] / A[i][i];
    cc += c[i] * c[i];
  }
  const double R = std::sqrt(A[d][n] / A[d][d] + cc);
  double dev = 0.0;
  for (const Point& p : pts) dev = std::max(dev, std::abs(dist(p, c) - R));
  return {Ball{c, R}, dev};
}

// Ball containing phi(B). Round images (Mobius maps) get their exact
// circumscribed sphere; otherwise a padded bounding ball.
Ball image_ball(const ConformalMap& phi, const Ball& b) {
  const int d = static_cast<int>(b.center.size());
  const auto sphere = sphere_samples(d, d == 2 ? 128 : 256);
  std::vector<Point> img;
  for (const Point& s : sphere) {
    Point x(d);
    for (int i = 0; i < d; ++i) x[i] = b.center[i] + b.radius * s[i];
    img.push_back(apply_map(phi, x));
  }
  auto [ball, dev] = fit_sphere(img);
  if (dev <= 1e-10 * ball.radius) {
    ball.radius *= 1.0 + 1e-9;
    return ball;
  }
  Point c(d, 0.0);
  for (const Point& p : img) {
    for (int i = 0; i < d; ++i) c[i] += p[i] / img.size();
  }
  double R = 0.0;
  for (const Point& p : img) R = std::max(R, dist(p, c));
  return {c, 1.1 * R};
}

// Image-side integral of Omega^{-wf} f(phi^-1 x) * Omega^{-wh} h(phi^-1 x).
Complex image_integral(const ConformalMap& phi, const SmoothFunction& f, const Field& h, double wf, double wh,
                       const OracleOptions& o) {
  Complex s{};
  for (const auto& p : f.pieces) {
    const Ball B = image_ball(phi, p.support);
    const QuadratureRule q = ball_rule(B, o.radial, o.angular);
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      const auto y = invert_map(phi, q.nodes[i], p.support.center);
      if (!y || dist(*y, p.support.center) >= p.support.radius) continue;
      const Complex fy = p.f(*y);
      if (fy == Complex{}) continue;
      const double om = conformal_factor(phi, *y);
      s += q.weights[i] * std::pow(om, -wf) * fy * std::pow(om, -wh) * h(*y);
    }
  }
  return s;
}

Complex source_integral(const SmoothFunction& f, const Field& h, const OracleOptions& o) {
  Complex s{};
  for (const auto& p : f.pieces) {
    const QuadratureRule q = ball_rule(p.support, o.radial, o.angular);
    s += integrate(q, [&](std::span<const double> x) { return p.f(x) * h(x); });
  }
  return s;
}

}  // namespace

CheckRecord verify_pushforward_integral(const ConformalMap& phi, const SmoothFunction& f, const SmoothFunction& h,
                                        double tol, const OracleOptions& opt) {
  const int d = f.d;
  check_dim(d);
  if (phi.dim() != d) throw DimensionError("map and function dimensions differ");
  const Field hf = [&h](std::span<const double> y) { return h(y); };
  const OracleOptions o = resolve(opt, 32, d == 2 ? 48 : 32);
  // each side refined until its own error estimate is well under tol
  const NumericValue lhs = refine_until(
      [&](const OracleOptions& q) { return image_integral(phi, f, hf, (d + 2) / 2.0, (d - 2) / 2.0, q); },
      0.1 * tol, o, false);
  const NumericValue rhs = refine_until([&](const OracleOptions& q) { return source_integral(f, hf, q); }, 0.1 * tol, o, false);
  return make_record("pushforward_integral", lhs.value, rhs.value, tol);
}

CheckRecord verify_pushforward_mean(const ConformalMap& phi, const SmoothFunction& f, double tol,
                                    const OracleOptions& opt) {
  if (f.d != 2) throw DimensionError("the zero-mean claim is for d = 2");
  const Field one = [](std::span<const double>) { return Complex(1.0); };
  const OracleOptions o = resolve(opt, 32, 48);
  const NumericValue lhs = refine_until([&](const OracleOptions& q) { return image_integral(phi, f, one, 2.0, 0.0, q); },
                                        0.1 * tol, o, false);
  const NumericValue rhs = refine_until([&](const OracleOptions& q) { return source_integral(f, one, q); }, 0.1 * tol, o, false);
  return make_record("pushforward_mean", lhs.value, rhs.value, tol);
}

}  // namespace confalg
