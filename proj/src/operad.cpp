#include "confalg/operad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "confalg/errors.hpp"
#include "confalg/random.hpp"

namespace confalg {

namespace {

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double dist(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

double sample_radius(const ConformalMap& m) {
  double r = 1.0 - 1e-9;
  if (m.is_series()) r = std::min(r, m.radius() * (1.0 - 1e-12));
  return r;
}

std::vector<Point> boundary_image(const ConformalMap& m, const std::vector<Point>& sphere) {
  const double r = sample_radius(m);
  std::vector<Point> out;
  out.reserve(sphere.size());
  Point x;
  for (const Point& s : sphere) {
    x = s;
    for (double& v : x) v *= r;
    out.push_back(apply_map(m, x));
  }
  return out;
}

// Whether p lies in the image of the open unit disk under m.
bool inside_image(const ConformalMap& m, const std::vector<Point>& boundary, std::span<const double> p) {
  if (!m.is_series()) {
    try {
      return norm(apply_map(inverse(m), p)) < 1.0;
    } catch (const DomainError&) {
      return false;  // p is the image of infinity
    }
  }
  // Winding number of the sampled boundary curve.
  const Complex z = to_complex(p);
  double total = 0.0;
  for (std::size_t k = 0; k < boundary.size(); ++k) {
    const Complex a = to_complex(boundary[k]) - z;
    const Complex b = to_complex(boundary[(k + 1) % boundary.size()]) - z;
    total += std::arg(b / a);
  }
  return std::abs(total) > std::numbers::pi;
}

}  // namespace

std::vector<Point> sphere_samples(int d, int count) {
  std::vector<Point> out;
  out.reserve(count);
  if (d == 2) {
    for (int k = 0; k < count; ++k) {
      const double t = 2.0 * std::numbers::pi * k / count;
      out.push_back({std::cos(t), std::sin(t)});
    }
  } else if (d == 3) {
    // Fibonacci lattice plus the poles and equator axis points.
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / count;
      const double r = std::sqrt(1.0 - z * z);
      out.push_back({r * std::cos(golden * k), r * std::sin(golden * k), z});
    }
    for (int i = 0; i < 3; ++i) {
      for (double s : {1.0, -1.0}) {
        Point e(3, 0.0);
        e[i] = s;
        out.push_back(e);
      }
    }
  } else {
    Rng rng(0x5eed);
    for (int k = 0; k < count; ++k) {
      Point x(d);
      for (double& v : x) v = rng.normal();
      const double n = norm(x);
      for (double& v : x) v /= n;
      out.push_back(std::move(x));
    }
    for (int i = 0; i < d; ++i) {
      for (double s : {1.0, -1.0}) {
        Point e(d, 0.0);
        e[i] = s;
        out.push_back(e);
      }
    }
  }
  return out;
}

DiskEmbedding make_ball(std::span<const double> a, double r) {
  const int d = static_cast<int>(a.size());
  if (!(r > 0.0)) throw DomainError("ball radius must be positive");
  const double margin = 1.0 - (r + norm(a));
  if (!(margin > 0.0)) throw ContainmentError("ball is not contained in the unit disk");
  Point shift(a.begin(), a.end());
  ConformalMap m = ConformalMap::word(d, {Generator::dilation(r), Generator::translation(shift)});
  return {std::move(m), margin};
}

DiskEmbedding make_embedding(const ConformalMap& map, const SamplingConfig& cfg) {
  if (map.is_affine_ball()) {
    // Exact margin for rx + a.
    const Point zero(map.dim(), 0.0);
    const Point a = apply_map(map, zero);
    const double r = conformal_factor(map, zero);
    const double margin = 1.0 - (r + norm(a));
    if (!(margin > 0.0)) {
      // the identity word reaches the boundary; measure at 1 - 1e-9 instead
      const double sampled = 1.0 - ((1.0 - 1e-9) * r + norm(a));
      if (!(sampled > 0.0)) throw ContainmentError("embedding image leaves the unit disk");
      return {map, sampled};
    }
    return {map, margin};
  }
  const auto sphere = sphere_samples(map.dim(), cfg.samples_for(map.dim()));
  double margin = std::numeric_limits<double>::infinity();
  for (const Point& p : boundary_image(map, sphere)) margin = std::min(margin, 1.0 - norm(p));
  if (!(margin > 0.0)) throw ContainmentError("embedding image leaves the unit disk");
  return {map, margin};
}

DiskEmbedding identity_embedding(int d) { return make_embedding(ConformalMap::identity(d)); }

DiskConfiguration make_configuration(int dim, std::vector<DiskEmbedding> embeddings, const SamplingConfig& cfg) {
  DiskConfiguration c;
  c.dim = dim;
  for (const DiskEmbedding& e : embeddings) {
    if (e.map.dim() != dim) throw DimensionError("embedding dimension mismatch");
    if (!(e.containment_margin > 0.0)) throw ContainmentError("embedding has no containment margin");
  }
  c.embeddings = std::move(embeddings);
  const int n = c.arity();
  if (n < 2) {
    c.disjointness_margin = n == 0 ? 1.0 : c.embeddings[0].containment_margin;
    return c;
  }
  const auto sphere = sphere_samples(dim, cfg.samples_for(dim));
  std::vector<std::vector<Point>> images;
  std::vector<Point> centers;
  for (const DiskEmbedding& e : c.embeddings) {
    images.push_back(boundary_image(e.map, sphere));
    centers.push_back(apply_map(e.map, Point(dim, 0.0)));
  }
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::string pair = "(" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")";
      if (inside_image(c.embeddings[j].map, images[j], centers[i]) ||
          inside_image(c.embeddings[i].map, images[i], centers[j])) {
        throw DisjointnessError("embeddings " + pair + " are nested");
      }
      for (const Point& p : images[i]) {
        if (inside_image(c.embeddings[j].map, images[j], p)) {
          throw DisjointnessError("embeddings " + pair + " overlap");
        }
      }
      for (const Point& p : images[j]) {
        if (inside_image(c.embeddings[i].map, images[i], p)) {
          throw DisjointnessError("embeddings " + pair + " overlap");
        }
      }
      double m = std::numeric_limits<double>::infinity();
      for (const Point& p : images[i]) {
        for (const Point& q : images[j]) m = std::min(m, dist(p, q));
      }
      if (!(m > 0.0)) throw DisjointnessError("embeddings " + pair + " touch");
      margin = std::min(margin, m);
    }
  }
  c.disjointness_margin = margin;
  return c;
}

DiskConfiguration identity_configuration(int d) {
  DiskConfiguration c;
  c.dim = d;
  c.embeddings.push_back(identity_embedding(d));
  c.disjointness_margin = c.embeddings[0].containment_margin;
  return c;
}

DiskConfiguration compose_at(const DiskConfiguration& outer, int i, const DiskConfiguration& inner,
                             const SamplingConfig& cfg) {
  if (i < 1 || i > outer.arity()) throw IndexError("slot index out of range");
  if (outer.dim != inner.dim) throw DimensionError("configuration dimension mismatch");
  std::vector<DiskEmbedding> out;
  for (int k = 0; k < i - 1; ++k) out.push_back(outer.embeddings[k]);
  for (const DiskEmbedding& e : inner.embeddings) {
    out.push_back(make_embedding(compose(outer.embeddings[i - 1].map, e.map), cfg));
  }
  for (int k = i; k < outer.arity(); ++k) out.push_back(outer.embeddings[k]);
  return make_configuration(outer.dim, std::move(out), cfg);
}

DiskConfiguration permute(const std::vector<int>& sigma, const DiskConfiguration& c) {
  const int n = c.arity();
  if (static_cast<int>(sigma.size()) != n) throw IndexError("permutation has wrong length");
  std::vector<bool> seen(n, false);
  DiskConfiguration out;
  out.dim = c.dim;
  out.disjointness_margin = c.disjointness_margin;
  for (int s : sigma) {
    if (s < 1 || s > n || seen[s - 1]) throw IndexError("not a permutation");
    seen[s - 1] = true;
    out.embeddings.push_back(c.embeddings[s - 1]);
  }
  return out;
}

}  // namespace confalg
