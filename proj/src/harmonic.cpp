#include "confalg/harmonic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "confalg/errors.hpp"

namespace confalg {

namespace {

void check_dim(int d) {
  if (d < 2 || d > kMaxDim) throw DimensionError("dimension must lie in [2, 8]");
}

const Integer& double_factorial_odd(int k) {
  // (2k-1)!!, k >= 0
  static std::mutex mu;
  static std::vector<Integer> table{Integer(1)};
  std::lock_guard lock(mu);
  while (static_cast<int>(table.size()) <= k) {
    const int j = static_cast<int>(table.size());
    table.push_back(table.back() * (2 * j - 1));
  }
  return table[k];
}

Integer moment_denominator(int d, int K) {
  Integer den = 1;
  for (int j = 0; j < K; ++j) den *= d + 2 * j;
  return den;
}

// Terms grouped by parity bitmask.
std::map<unsigned, std::vector<std::pair<MultiIndex, const Rational*>>> by_parity(const Poly& p) {
  std::map<unsigned, std::vector<std::pair<MultiIndex, const Rational*>>> out;
  for (const auto& [alpha, c] : p.terms()) out[alpha.parity()].emplace_back(alpha, &c);
  return out;
}

}  // namespace

std::int64_t dim_harm(int d, int n) {
  if (d < 2 || n < 0) throw DomainError("dim_harm needs d >= 2, n >= 0");
  Integer a = binomial(n + d - 1, d - 1);
  if (n >= 2) a -= binomial(n + d - 3, d - 1);
  return a.get_si();
}

Rational sphere_moment(const MultiIndex& alpha) {
  if (alpha.parity() != 0) return 0;
  Integer num = 1;
  int K = 0;
  for (int i = 0; i < alpha.dim(); ++i) {
    num *= double_factorial_odd(alpha[i] / 2);
    K += alpha[i] / 2;
  }
  Rational r(num, moment_denominator(alpha.dim(), K));
  r.canonicalize();
  return r;
}

Rational sphere_inner(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return 0;
  const int d = std::max(p.dim(), q.dim());
  check_dim(d);
  auto qb = by_parity(q);
  // Moments depend only on alpha + beta; memoize within the call.
  std::map<MultiIndex, Rational> memo;
  Rational sum = 0;
  for (const auto& [alpha, c] : p.terms()) {
    auto it = qb.find(alpha.parity());
    if (it == qb.end()) continue;
    for (const auto& [beta, cq] : it->second) {
      const MultiIndex g = alpha + beta;
      auto m = memo.find(g);
      if (m == memo.end()) m = memo.emplace(g, sphere_moment(g)).first;
      sum += c * *cq * m->second;
    }
  }
  return sum;
}

CRational sphere_inner(const CPoly& p, const CPoly& q) {
  return {sphere_inner(p.re, q.re) - sphere_inner(p.im, q.im),
          sphere_inner(p.re, q.im) + sphere_inner(p.im, q.re)};
}

namespace {

double float_inner(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return 0.0;
  auto qb = by_parity(q);
  std::map<MultiIndex, double> memo;
  double sum = 0.0;
  for (const auto& [alpha, c] : p.terms()) {
    auto it = qb.find(alpha.parity());
    if (it == qb.end()) continue;
    const double cd = to_double(c);
    for (const auto& [beta, cq] : it->second) {
      const MultiIndex g = alpha + beta;
      auto m = memo.find(g);
      if (m == memo.end()) m = memo.emplace(g, to_double(sphere_moment(g))).first;
      sum += cd * to_double(*cq) * m->second;
    }
  }
  return sum;
}

}  // namespace

double sphere_norm(const Poly& p) { return std::sqrt(std::max(0.0, float_inner(p, p))); }

double sphere_norm(const CPoly& p) {
  // Hermitian norm: |p|^2 = |re|^2 + |im|^2 for real-coefficient parts.
  return std::sqrt(std::max(0.0, float_inner(p.re, p.re) + float_inner(p.im, p.im)));
}

namespace {

// d (d+2) ... (d+2n-2)
Integer fischer_denominator(int d, int n) {
  Integer out = 1;
  for (int j = 0; j < n; ++j) out *= d + 2 * j;
  return out;
}

double fischer_sum(const Poly& p) {
  double s = 0.0;
  for (const auto& [alpha, c] : p.terms()) {
    double f = 1.0;
    for (int i = 0; i < alpha.dim(); ++i) {
      for (int k = 2; k <= alpha[i]; ++k) f *= k;
    }
    const double cd = to_double(c);
    s += f * cd * cd;
  }
  return s;
}

}  // namespace

Rational harmonic_norm_sq(const Poly& p) {
  if (p.is_zero()) return 0;
  Rational s = 0;
  for (const auto& [alpha, c] : p.terms()) {
    Integer f = 1;
    for (int i = 0; i < alpha.dim(); ++i) f *= factorial(alpha[i]);
    s += Rational(f) * c * c;
  }
  Rational out = s / Rational(fischer_denominator(p.dim(), p.degree()));
  out.canonicalize();
  return out;
}

Rational harmonic_inner(const Poly& h, const Poly& u) {
  if (h.is_zero() || u.is_zero()) return 0;
  if (h.degree() != u.degree()) throw DomainError("harmonic_inner needs equal degrees");
  Rational s = 0;
  for (const auto& [alpha, c] : h.terms()) {
    const Rational cu = u.coefficient(alpha);
    if (sgn(cu) == 0) continue;
    Integer f = 1;
    for (int i = 0; i < alpha.dim(); ++i) f *= factorial(alpha[i]);
    s += Rational(f) * c * cu;
  }
  Rational out = s / Rational(fischer_denominator(h.dim(), h.degree()));
  out.canonicalize();
  return out;
}

CRational harmonic_inner(const CPoly& h, const CPoly& u) {
  return {harmonic_inner(h.re, u.re) - harmonic_inner(h.im, u.im),
          harmonic_inner(h.re, u.im) + harmonic_inner(h.im, u.re)};
}

double harmonic_norm(const Poly& p) {
  if (p.is_zero()) return 0.0;
  return std::sqrt(fischer_sum(p) / fischer_denominator(p.dim(), p.degree()).get_d());
}

double harmonic_norm(const CPoly& p) {
  if (p.is_zero()) return 0.0;
  const int n = p.degree();
  const int d = p.re.is_zero() ? p.im.dim() : p.re.dim();
  return std::sqrt((fischer_sum(p.re) + fischer_sum(p.im)) / fischer_denominator(d, n).get_d());
}

std::vector<Poly> harmonic_nullspace(int d, int n) {
  check_dim(d);
  if (n < 0) throw DomainError("negative degree");
  std::vector<Poly> out;
  for (const MultiIndex& m : monomials(d, n)) {
    if (m[0] > 1) continue;
    // x_1^k g_k with g_{k+2} = -L' g_k / ((k+1)(k+2)), L' the Euclidean
    // Laplacian in x_2..x_d.
    Poly p = Poly::monomial(m);
    Poly cur = p;
    for (int k = m[0]; k + 2 <= n; k += 2) {
      Poly next(d);
      for (const auto& [alpha, c] : cur.terms()) {
        for (int i = 1; i < d; ++i) {
          const int e = alpha[i];
          if (e < 2) continue;
          MultiIndex beta = alpha;
          beta.set(i, e - 2);
          beta.set(0, alpha[0] + 2);
          next.add_term(beta, -c * (e * (e - 1)) / ((k + 1) * (k + 2)));
        }
      }
      if (next.is_zero()) break;
      p += next;
      cur = std::move(next);
    }
    out.push_back(std::move(p));
  }
  return out;
}

double OrthonormalBasis::value(std::size_t k, std::span<const double> x) const {
  return polys[k].evaluate(x) / std::sqrt(to_double(norm_sq[k]));
}

std::vector<std::vector<double>> OrthonormalBasis::gram() const {
  const std::size_t m = size();
  std::vector<std::vector<double>> g(m, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double v = to_double(sphere_inner(polys[i], polys[j])) /
                       std::sqrt(to_double(norm_sq[i]) * to_double(norm_sq[j]));
      g[i][j] = g[j][i] = v;
    }
  }
  return g;
}

namespace {

std::unique_ptr<OrthonormalBasis> build_basis(int d, int n) {
  auto basis = std::make_unique<OrthonormalBasis>();
  basis->d = d;
  basis->n = n;
  std::vector<Poly> raw = harmonic_nullspace(d, n);
  // Different parity classes are orthogonal already, so Gram-Schmidt runs
  // per class; the output equals the full sequential process.
  std::map<unsigned, std::vector<std::size_t>> classes;
  std::vector<unsigned> parity(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    parity[k] = raw[k].terms().begin()->first.parity();
  }
  basis->polys.resize(raw.size());
  basis->norm_sq.resize(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    auto& members = classes[parity[k]];
    Poly v = raw[k];
    for (std::size_t j : members) {
      const Rational coef = sphere_inner(raw[k], basis->polys[j]) / basis->norm_sq[j];
      v -= basis->polys[j] * coef;
    }
    basis->norm_sq[k] = sphere_inner(v, v);
    basis->polys[k] = std::move(v);
    members.push_back(k);
  }
  return basis;
}

}  // namespace

const OrthonormalBasis& orthonormal_basis(int d, int n) {
  check_dim(d);
  if (n < 0) throw DomainError("negative degree");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<OrthonormalBasis>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({d, n});
    if (it != cache.end()) return *it->second;
  }
  auto built = build_basis(d, n);
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.emplace(std::make_pair(d, n), std::move(built));
  return *it->second;
}

double gegenbauer(int d, int n, double t) {
  if (d < 3) throw DimensionError("gegenbauer needs d >= 3");
  if (n < 0) throw DomainError("negative degree");
  const double lam = (d - 2) / 2.0;
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * lam * t;
  for (int k = 2; k <= n; ++k) {
    const double next = (2.0 * t * (k + lam - 1.0) * cur - (k + 2.0 * lam - 2.0) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

double expansion_coefficient(int d, int n) {
  if (d < 3) throw DimensionError("c_{d,n} needs d >= 3");
  return (d - 2.0) / (2.0 * n + d - 2.0);
}

namespace {

// Coefficients gamma_k of Z_n(a,x) = sum_k gamma_k (a.x)^{n-2k} (|a|^2|x|^2)^k.
std::vector<Rational> zonal_coefficients(int d, int n) {
  std::vector<Rational> g;
  if (n == 0) return {Rational(1)};
  for (int k = 0; 2 * k <= n; ++k) {
    Rational c;
    if (d == 2) {
      // 2 T_n(t) = n sum_k (-1)^k (n-k-1)!/(k!(n-2k)!) (2t)^{n-2k}
      c = Rational(Integer(n * factorial(n - k - 1)), Integer(factorial(k) * factorial(n - 2 * k)));
      c.canonicalize();
    } else {
      const Rational lam = make_rational(d - 2, 2);
      Rational rising = 1;
      for (int j = 0; j < n - k; ++j) rising *= lam + j;
      c = make_rational(2 * n + d - 2, d - 2) * rising / Rational(factorial(k) * factorial(n - 2 * k));
    }
    c *= Rational(Integer(1) << (n - 2 * k), 1);
    if (k % 2 == 1) c = -c;
    c.canonicalize();
    g.push_back(c);
  }
  return g;
}

Poly linear_form(int d, std::span<const Rational> a) {
  Poly p(d);
  for (int i = 0; i < d; ++i) p.add_term(MultiIndex::unit(d, i), a[i]);
  return p;
}

Poly radius_sq(int d) {
  Poly p(d);
  for (int i = 0; i < d; ++i) p.add_term(MultiIndex::unit(d, i, 2), 1);
  return p;
}

void check_point(int d, std::span<const Rational> a) {
  check_dim(d);
  if (static_cast<int>(a.size()) != d) throw DomainError("point has wrong dimension");
}

}  // namespace

Poly zonal(int d, int n, std::span<const Rational> a) {
  return zonal_derivative(d, n, a, MultiIndex(d));
}

Poly zonal_from_basis(int d, int n, std::span<const Rational> a) {
  check_point(d, a);
  const OrthonormalBasis& b = orthonormal_basis(d, n);
  Poly z(d);
  for (std::size_t k = 0; k < b.size(); ++k) z += b.polys[k] * (b.polys[k].evaluate(a) / b.norm_sq[k]);
  return z;
}

Poly zonal_derivative(int d, int n, std::span<const Rational> a, const MultiIndex& alpha) {
  check_point(d, a);
  if (alpha.dim() != d) throw DomainError("multi-index has wrong dimension");
  if (n < 0) throw DomainError("negative degree");
  Poly out(d);
  if (alpha.degree() > n) return out;
  // Work with integer data: a = A / D and gamma = gamma_int / G. The result
  // is homogeneous of degree n - |alpha| in a, so rescale once at the end.
  std::vector<Rational> gamma = zonal_coefficients(d, n);
  Integer G = 1, D = 1;
  for (const Rational& g : gamma) mpz_lcm(G.get_mpz_t(), G.get_mpz_t(), g.get_den_mpz_t());
  for (Rational& g : gamma) g *= G;
  for (const Rational& v : a) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Rational> scaled(a.begin(), a.end());
  for (Rational& v : scaled) v *= D;
  a = scaled;
  const Poly lin = linear_form(d, a);
  const Poly r2 = radius_sq(d);
  std::vector<Poly> lin_pow{Poly::constant(d, 1)};
  for (int j = 1; j <= n; ++j) lin_pow.push_back(lin_pow.back() * lin);

  // Sub-multi-indices beta <= alpha.
  std::vector<MultiIndex> betas{MultiIndex(d)};
  for (int i = 0; i < d; ++i) {
    std::vector<MultiIndex> grown;
    for (const MultiIndex& b : betas) {
      for (int e = 0; e <= alpha[i]; ++e) {
        MultiIndex c = b;
        c.set(i, e);
        grown.push_back(c);
      }
    }
    betas = std::move(grown);
  }

  Poly r2k = Poly::constant(d, 1);  // |x|^{2k}, also |a|^{2k} as a polynomial in a
  std::vector<Poly> inners;          // gamma_k * inner_k; summed by Horner in |x|^2
  for (int k = 0; 2 * k <= n; ++k) {
    if (k > 0) r2k = r2k * r2;
    const int p = n - 2 * k;
    Poly inner(d);
    for (const MultiIndex& beta : betas) {
      if (beta.degree() > p) continue;
      MultiIndex rest(d);
      Integer multinom = 1;
      for (int i = 0; i < d; ++i) {
        rest.set(i, alpha[i] - beta[i]);
        multinom *= binomial(alpha[i], beta[i]);
      }
      const Rational radial = r2k.derivative(rest).evaluate(a);
      if (sgn(radial) == 0) continue;
      const Rational falling(Integer(factorial(p) / factorial(p - beta.degree())));
      Poly term = lin_pow[p - beta.degree()] * Poly::monomial(beta, Rational(multinom) * falling * radial);
      inner += term;
    }
    inners.push_back(inner * gamma[k]);
  }
  for (auto it = inners.rbegin(); it != inners.rend(); ++it) {
    out = out * r2;
    out += *it;
  }
  Integer Dpow;
  mpz_pow_ui(Dpow.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(n - alpha.degree()));
  Rational rescale(1, 1);
  rescale /= Rational(G * Dpow);
  if (alpha.degree() % 2 == 1) rescale = -rescale;
  out *= rescale;
  return out;
}

double sphere_area(int d) {
  return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

namespace {

double distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("points of different dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

double green_kernel(int d, std::span<const double> x, std::span<const double> y) {
  check_dim(d);
  const double r = distance(x, y);
  if (r <= 1e-14) throw SingularError("green_kernel at coincident points");
  if (d == 2) return -std::log(r) / (2.0 * std::numbers::pi);
  return 1.0 / ((d - 2) * sphere_area(d) * std::pow(r, d - 2));
}

double green_expansion_partial(int d, std::span<const double> x, std::span<const double> y, int N) {
  check_dim(d);
  const double rx = norm(x);
  const double ry = norm(y);
  if (rx <= ry) throw RegionError("expansion needs |x| > |y|");
  if (ry == 0.0) return green_kernel(d, x, y);
  double dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
  const double t = std::clamp(dot / (rx * ry), -1.0, 1.0);
  const double q = ry / rx;
  if (d == 2) {
    // log|x - y| = log|x| - sum_n (1/n) q^n cos(n theta)
    const double theta = std::acos(t);
    double s = std::log(rx);
    double qn = 1.0;
    for (int n = 1; n <= N; ++n) {
      qn *= q;
      s -= qn * std::cos(n * theta) / n;
    }
    return -s / (2.0 * std::numbers::pi);
  }
  double s = 0.0;
  double qn = 1.0;
  for (int n = 0; n <= N; ++n) {
    s += gegenbauer(d, n, t) * qn;
    qn *= q;
  }
  s /= std::pow(rx, d - 2);
  return s / ((d - 2) * sphere_area(d));
}

}  // namespace confalg
