#include "confalg/samplers.hpp"

#include <cmath>
#include <numbers>

#include "confalg/errors.hpp"
#include "confalg/harmonic.hpp"

namespace confalg {

std::vector<double> random_rotation(Rng& rng, int d) {
  std::vector<std::vector<double>> cols(d, std::vector<double>(d));
  for (int j = 0; j < d; ++j) {
    for (double& v : cols[j]) v = rng.normal();
    for (int k = 0; k < j; ++k) {
      double p = 0.0;
      for (int i = 0; i < d; ++i) p += cols[j][i] * cols[k][i];
      for (int i = 0; i < d; ++i) cols[j][i] -= p * cols[k][i];
    }
    double n = 0.0;
    for (double v : cols[j]) n += v * v;
    n = std::sqrt(n);
    for (double& v : cols[j]) v /= n;
  }
  std::vector<double> m(d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m[i * d + j] = cols[j][i];
  }
  // det sign via LU-free route: flip one column if the orientation is wrong
  std::vector<double> a = m;
  double det = 1.0;
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int r = c + 1; r < d; ++r) {
      if (std::abs(a[r * d + c]) > std::abs(a[piv * d + c])) piv = r;
    }
    if (piv != c) {
      for (int k = 0; k < d; ++k) std::swap(a[c * d + k], a[piv * d + k]);
      det = -det;
    }
    det *= a[c * d + c];
    for (int r = c + 1; r < d; ++r) {
      const double f = a[r * d + c] / a[c * d + c];
      for (int k = c; k < d; ++k) a[r * d + k] -= f * a[c * d + k];
    }
  }
  if (det < 0) {
    for (int i = 0; i < d; ++i) m[i * d] = -m[i * d];
  }
  return m;
}

Mobius random_disk_mobius(Rng& rng) {
  const Complex p = rng.in_disk(0.4);
  const double r = rng.uniform(0.2, 0.6);
  const Complex q = rng.in_disk(0.95 - r);
  const Complex rot = std::polar(r, rng.uniform(0.0, 2.0 * std::numbers::pi));
  // rot (z - p) / (1 - conj(p) z) + q
  return Mobius{rot - q * std::conj(p), -rot * p + q, -std::conj(p), 1.0};
}

ConformalMap random_univalent_series(Rng& rng, int degree, double strength) {
  Series s = Series::zero(degree);
  const double r1 = rng.uniform(0.3, 0.5);
  s[1] = std::polar(r1, rng.uniform(0.0, 2.0 * std::numbers::pi));
  std::vector<double> w(degree + 1, 0.0);
  double total = 0.0;
  for (int k = 2; k <= degree; ++k) {
    w[k] = rng.uniform(0.1, 1.0);
    total += w[k];
  }
  const double budget = strength * r1;
  double image = r1;
  for (int k = 2; k <= degree; ++k) {
    const double mag = budget * w[k] / total / k;
    s[k] = std::polar(mag, rng.uniform(0.0, 2.0 * std::numbers::pi));
    image += mag;
  }
  s[0] = rng.in_disk(std::max(0.0, 0.95 - image));
  return ConformalMap::series(s, 1.0).with_certificate(true);
}

ConformalMap random_word_embedding(Rng& rng, int d, double max_scale) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Generator> g;
    g.push_back(Generator::special_conformal(rng.in_ball(d, 0.4)));
    const double R = rng.uniform(0.2, max_scale);
    g.push_back(Generator::dilation(R));
    g.push_back(Generator::orthogonal(d, random_rotation(rng, d)));
    g.push_back(Generator::translation(rng.in_ball(d, 0.9)));
    ConformalMap m = ConformalMap::word(d, std::move(g));
    try {
      make_embedding(m);
      return m;
    } catch (const ContainmentError&) {
    }
  }
  throw DomainError("could not sample an embedding");
}

DiskConfiguration random_ball_configuration(Rng& rng, int d, int n, double max_radius) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Point> centers;
    std::vector<double> radii;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const double r = rng.uniform(0.05, max_radius);
      const Point a = rng.in_ball(d, 0.95 - r);
      for (std::size_t j = 0; j < centers.size(); ++j) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) s += (a[k] - centers[j][k]) * (a[k] - centers[j][k]);
        if (std::sqrt(s) <= r + radii[j] + 0.02) ok = false;
      }
      centers.push_back(a);
      radii.push_back(r);
    }
    if (!ok) continue;
    std::vector<DiskEmbedding> e;
    for (int i = 0; i < n; ++i) e.push_back(make_ball(centers[i], radii[i]));
    return make_configuration(d, std::move(e));
  }
  throw DomainError("could not sample a ball configuration");
}

CPoly random_harmonic_poly(Rng& rng, int d, int max_degree, bool complex_coeffs) {
  CPoly out(d);
  auto coef = [&] { return make_rational(rng.integer(-4, 4), rng.integer(1, 5)); };
  for (int n = 0; n <= max_degree; ++n) {
    for (const Poly& p : orthonormal_basis(d, n).polys) {
      out.re += p * coef();
      if (complex_coeffs) out.im += p * coef();
    }
  }
  return out;
}

HarmonicDistribution random_delta(Rng& rng, int d, double rmax, int truncation) {
  std::vector<PointTerm> pts;
  const int k = rng.integer(1, 3);
  for (int i = 0; i < k; ++i) {
    pts.push_back(PointTerm{rng.in_ball(d, rmax), MultiIndex(d),
                            Complex(rng.uniform(-1.0, 1.0)), false});
  }
  return HarmonicDistribution::from_points(d, std::move(pts), truncation);
}

HarmonicDistribution random_zero_mean_2d(Rng& rng, double rmax, int max_order) {
  std::vector<PointTerm> pts;
  const int k = rng.integer(1, 2);
  for (int i = 0; i < k; ++i) {
    const Point a = to_point(rng.in_disk(rmax));
    const int n = rng.integer(1, max_order);
    const bool holo = rng.uniform() < 0.5;
    const Complex c(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    pts.push_back(PointTerm{a, holo ? MultiIndex{n, 0} : MultiIndex{0, n}, c, true});
  }
  return HarmonicDistribution::from_points(2, std::move(pts));
}

}  // namespace confalg
