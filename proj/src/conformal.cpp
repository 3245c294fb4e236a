#include "confalg/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "confalg/errors.hpp"

namespace confalg {

namespace {

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

void check_dim(int d) {
  if (d < 2) throw DimensionError("conformal maps need d >= 2");
}

}  // namespace

Generator Generator::translation(Point a) {
  Generator g;
  g.kind = Kind::Translation;
  g.vec = std::move(a);
  return g;
}

Generator Generator::orthogonal(int d, std::vector<double> m) {
  if (static_cast<int>(m.size()) != d * d) throw DomainError("orthogonal block has wrong size");
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += m[k * d + i] * m[k * d + j];
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > 1e-12) throw DomainError("matrix is not orthogonal");
    }
  }
  // determinant by Gaussian elimination with partial pivoting
  std::vector<double> a = m;
  double det = 1.0;
  for (int c = 0; c < d; ++c) {
    int p = c;
    for (int r = c + 1; r < d; ++r) {
      if (std::abs(a[r * d + c]) > std::abs(a[p * d + c])) p = r;
    }
    if (p != c) {
      for (int k = 0; k < d; ++k) std::swap(a[p * d + k], a[c * d + k]);
      det = -det;
    }
    det *= a[c * d + c];
    for (int r = c + 1; r < d; ++r) {
      const double f = a[r * d + c] / a[c * d + c];
      for (int k = c; k < d; ++k) a[r * d + k] -= f * a[c * d + k];
    }
  }
  if (det <= 0.0) throw DomainError("orthogonal block must have det +1");
  Generator g;
  g.kind = Kind::Orthogonal;
  g.matrix = std::move(m);
  return g;
}

Generator Generator::dilation(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("dilation factor must be positive");
  Generator g;
  g.kind = Kind::Dilation;
  g.R = R;
  return g;
}

Generator Generator::special_conformal(Point b) {
  Generator g;
  g.kind = Kind::SpecialConformal;
  g.vec = std::move(b);
  return g;
}

Mobius operator*(const Mobius& f, const Mobius& g) {
  return {f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d, f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d};
}

Series Mobius::taylor_at(Complex z0, int order) const {
  // f(z0 + s) = f(z0) + sum_{k>=1} det (-c)^{k-1} / (c z0 + d)^{k+1} s^k
  const Complex den = c * z0 + d;
  if (std::abs(den) <= kSpecialConformalGuard) throw DomainError("Mobius pole at expansion point");
  Series s = Series::zero(order);
  s[0] = (*this)(z0);
  Complex term = det() / (den * den);
  for (int k = 1; k <= order; ++k) {
    s[k] = term;
    term *= -c / den;
  }
  return s;
}

ConformalMap ConformalMap::identity(int d) { return word(d, {}); }

ConformalMap ConformalMap::word(int d, std::vector<Generator> gens) {
  check_dim(d);
  for (const Generator& g : gens) {
    switch (g.kind) {
      case Generator::Kind::Translation:
      case Generator::Kind::SpecialConformal:
        if (static_cast<int>(g.vec.size()) != d) throw DomainError("generator vector has wrong dimension");
        break;
      case Generator::Kind::Orthogonal:
        if (static_cast<int>(g.matrix.size()) != d * d) throw DomainError("orthogonal block has wrong size");
        break;
      case Generator::Kind::Dilation:
        if (!(g.R > 0.0)) throw DomainError("dilation factor must be positive");
        break;
    }
  }
  ConformalMap m;
  m.dim_ = d;
  m.gens_ = std::move(gens);
  return m;
}

ConformalMap ConformalMap::series(Series coeffs, double radius) {
  if (coeffs.order() < 1 || std::abs(coeffs[1]) == 0.0) throw DegenerateError("series needs c_1 != 0");
  if (!(radius > 0.0) || radius > 1.0) throw RadiusError("validity radius must lie in (0, 1]");
  ConformalMap m;
  m.dim_ = 2;
  m.is_series_ = true;
  m.coeffs_ = std::move(coeffs);
  m.radius_ = radius;
  return m;
}

ConformalMap ConformalMap::mobius_series(const Mobius& mob, int order, double radius) {
  double r = radius;
  if (std::abs(mob.c) > 0.0) r = std::min(r, 0.999 * std::abs(mob.d / mob.c));
  return series(mob.taylor_at(0.0, order), r);
}

ConformalMap ConformalMap::with_certificate(bool flag) const {
  ConformalMap m = *this;
  m.certified_ = flag;
  return m;
}

bool ConformalMap::is_affine_ball() const {
  if (is_series_) return false;
  return std::all_of(gens_.begin(), gens_.end(), [](const Generator& g) {
    return g.kind == Generator::Kind::Translation || g.kind == Generator::Kind::Dilation;
  });
}

namespace {

// Applies one generator in place; returns its conformal factor at the input.
double step(const Generator& g, Point& x) {
  const std::size_t d = x.size();
  switch (g.kind) {
    case Generator::Kind::Translation:
      for (std::size_t i = 0; i < d; ++i) x[i] += g.vec[i];
      return 1.0;
    case Generator::Kind::Orthogonal: {
      Point y(d, 0.0);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) y[i] += g.matrix[i * d + j] * x[j];
      }
      x = std::move(y);
      return 1.0;
    }
    case Generator::Kind::Dilation:
      for (double& v : x) v *= g.R;
      return g.R;
    case Generator::Kind::SpecialConformal: {
      const double xx = dot(x, x);
      const double bb = dot(g.vec, g.vec);
      const double den = 1.0 - 2.0 * dot(x, g.vec) + xx * bb;
      if (std::abs(den) <= kSpecialConformalGuard) throw DomainError("special conformal denominator vanishes");
      for (std::size_t i = 0; i < d; ++i) x[i] = (x[i] - xx * g.vec[i]) / den;
      return 1.0 / den;
    }
  }
  return 1.0;
}

void check_series_domain(const ConformalMap& f, Complex z) {
  if (std::abs(z) >= f.radius()) throw RadiusError("point outside series validity radius");
}

}  // namespace

Point apply_map(const ConformalMap& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.dim()) throw DomainError("point has wrong dimension");
  if (f.is_series()) return to_point(apply_map(f, to_complex(x)));
  Point y(x.begin(), x.end());
  for (const Generator& g : f.generators()) step(g, y);
  return y;
}

Complex apply_map(const ConformalMap& f, Complex z) {
  if (f.dim() != 2) throw DimensionError("complex evaluation needs d = 2");
  if (f.is_series()) {
    check_series_domain(f, z);
    return f.coeffs().eval(z);
  }
  Point p = apply_map(f, std::vector<double>{z.real(), z.imag()});
  return to_complex(p);
}

double conformal_factor(const ConformalMap& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.dim()) throw DomainError("point has wrong dimension");
  if (f.is_series()) {
    const Complex z = to_complex(x);
    check_series_domain(f, z);
    return std::abs(f.coeffs().eval_derivative(z, 1));
  }
  Point y(x.begin(), x.end());
  double omega = 1.0;
  for (const Generator& g : f.generators()) omega *= step(g, y);
  return omega;
}

std::optional<Mobius> to_mobius(const ConformalMap& f) {
  if (f.dim() != 2 || f.is_series()) return std::nullopt;
  Mobius m;
  for (const Generator& g : f.generators()) {
    Mobius s;
    switch (g.kind) {
      case Generator::Kind::Translation:
        s.b = {g.vec[0], g.vec[1]};
        break;
      case Generator::Kind::Orthogonal:
        s.a = {g.matrix[0], g.matrix[2]};
        break;
      case Generator::Kind::Dilation:
        s.a = g.R;
        break;
      case Generator::Kind::SpecialConformal:
        s.c = -std::conj(Complex{g.vec[0], g.vec[1]});
        break;
    }
    m = s * m;
  }
  return m;
}

Series taylor_at(const ConformalMap& f, Complex z0, int order) {
  if (f.dim() != 2) throw DimensionError("Taylor expansion needs d = 2");
  if (f.is_series()) {
    check_series_domain(f, z0);
    return taylor_shift(f.coeffs(), z0, order);
  }
  return to_mobius(f)->taylor_at(z0, order);
}

Series to_series(const ConformalMap& f, int order) {
  if (f.is_series()) return f.coeffs().truncated(std::max(order, f.coeffs().order()));
  return taylor_at(f, 0.0, order);
}

ConformalMap compose(const ConformalMap& phi, const ConformalMap& psi, int order) {
  if (phi.dim() != psi.dim()) throw DimensionError("composing maps of different dimension");
  if (!phi.is_series() && !psi.is_series()) {
    std::vector<Generator> gens = psi.generators();
    gens.insert(gens.end(), phi.generators().begin(), phi.generators().end());
    return ConformalMap::word(phi.dim(), std::move(gens));
  }
  // At least one series: both become expansions at 0.
  const double r_psi = psi.is_series() ? psi.radius() : 1.0;
  const double r_phi = phi.is_series() ? phi.radius() : 1.0;
  const Series s_phi = to_series(phi, order);
  const Series s_psi = to_series(psi, order);
  constexpr int kSamples = 256;
  double image = 0.0;
  for (int k = 0; k < kSamples; ++k) {
    const Complex z = std::polar(r_psi * (1.0 - 1e-12), 2.0 * std::numbers::pi * k / kSamples);
    image = std::max(image, std::abs(s_psi.eval(z)));
  }
  if (image >= r_phi) throw RadiusError("inner image exceeds outer validity radius");
  ConformalMap out = ConformalMap::series(compose(s_phi, s_psi, order), r_psi);
  return out;
}

ConformalMap inverse(const ConformalMap& f) {
  if (f.is_series()) throw UnsupportedError("inverse of a series map");
  const int d = f.dim();
  std::vector<Generator> gens;
  for (auto it = f.generators().rbegin(); it != f.generators().rend(); ++it) {
    const Generator& g = *it;
    switch (g.kind) {
      case Generator::Kind::Translation: {
        Point a = g.vec;
        for (double& v : a) v = -v;
        gens.push_back(Generator::translation(a));
        break;
      }
      case Generator::Kind::Orthogonal: {
        std::vector<double> t(d * d);
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) t[i * d + j] = g.matrix[j * d + i];
        }
        Generator h;
        h.kind = Generator::Kind::Orthogonal;
        h.matrix = std::move(t);
        gens.push_back(std::move(h));
        break;
      }
      case Generator::Kind::Dilation:
        gens.push_back(Generator::dilation(1.0 / g.R));
        break;
      case Generator::Kind::SpecialConformal: {
        Point b = g.vec;
        for (double& v : b) v = -v;
        gens.push_back(Generator::special_conformal(b));
        break;
      }
    }
  }
  return ConformalMap::word(d, std::move(gens));
}

SchwarzianValue schwarzian(const ConformalMap& f, Complex z) {
  const Series t = taylor_at(f, z, 3);
  const Complex d1 = t[1];
  const Complex d2 = 2.0 * t[2];
  const Complex d3 = 6.0 * t[3];
  if (std::abs(d1) <= 1e-14) throw DegenerateError("derivative vanishes at Schwarzian basepoint");
  const Complex r = d2 / d1;
  return {d3 / d1 - 1.5 * r * r, z};
}

bool certify_injective(const ConformalMap& f, int grid_size) {
  if (grid_size < 16) throw DomainError("grid_size must be at least 16");
  if (f.dim() != 2) throw DimensionError("injectivity certificate needs d = 2");
  const double R = f.is_series() ? f.radius() : 1.0;
  std::vector<std::pair<Complex, Complex>> pts;  // (image, source)
  const Series s = to_series(f, f.is_series() ? f.coeffs().order() : kDefaultOrder);
  const Series ds = s.derivative();
  auto add = [&](Complex z) {
    if (std::abs(ds.eval(z)) <= 1e-14) return false;
    pts.emplace_back(s.eval(z), z);
    return true;
  };
  if (!add(0.0)) return false;
  for (int i = 1; i < grid_size; ++i) {
    const double r = R * i / grid_size;
    for (int k = 0; k < grid_size; ++k) {
      if (!add(std::polar(r, 2.0 * std::numbers::pi * k / grid_size))) return false;
    }
  }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first.real() < b.first.real(); });
  constexpr double kSep = 1e-12;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size() && pts[j].first.real() - pts[i].first.real() <= kSep; ++j) {
      if (std::abs(pts[j].first - pts[i].first) <= kSep) return false;
    }
  }
  return true;
}

}  // namespace confalg
