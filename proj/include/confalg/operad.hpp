#pragma once

#include <vector>

#include "confalg/conformal.hpp"

namespace confalg {

struct DiskEmbedding {
  ConformalMap map;
  double containment_margin = 0.0;
};

struct DiskConfiguration {
  int dim = 2;
  std::vector<DiskEmbedding> embeddings;
  double disjointness_margin = 0.0;

  int arity() const { return static_cast<int>(embeddings.size()); }
};

struct SamplingConfig {
  int samples_2d = 256;
  int samples_3d = 512;
  int samples_for(int d) const { return d == 2 ? samples_2d : samples_3d; }
};

// x -> r x + a.
DiskEmbedding make_ball(std::span<const double> a, double r);
// General embedding; containment certified by sampling the sphere of
// radius 1 - 1e-9.
DiskEmbedding make_embedding(const ConformalMap& map, const SamplingConfig& cfg = {});
DiskEmbedding identity_embedding(int d);

DiskConfiguration make_configuration(int dim, std::vector<DiskEmbedding> embeddings,
                                     const SamplingConfig& cfg = {});
DiskConfiguration identity_configuration(int d);
// Slot index i is 1-based.
DiskConfiguration compose_at(const DiskConfiguration& outer, int i, const DiskConfiguration& inner,
                             const SamplingConfig& cfg = {});
// Result slot j holds c's embedding sigma[j] (1-based images).
DiskConfiguration permute(const std::vector<int>& sigma, const DiskConfiguration& c);

// Deterministic boundary samples of the unit sphere in R^d.
std::vector<Point> sphere_samples(int d, int count);

}  // namespace confalg
