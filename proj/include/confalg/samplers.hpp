#pragma once

#include <vector>

#include "confalg/conformal.hpp"
#include "confalg/distribution.hpp"
#include "confalg/operad.hpp"
#include "confalg/random.hpp"

namespace confalg {

// Random rotation in SO(d) (Gram-Schmidt on Gaussian columns).
std::vector<double> random_rotation(Rng& rng, int d);

// r e^{it} (z - p)/(1 - conj(p) z) + q with |p| <= 0.4 and |q| + r < 1.
Mobius random_disk_mobius(Rng& rng);

// Polynomial c0 + c1 z + ... with sum_k k|c_k| <= strength |c1| for k >= 2
// (univalent on the unit disk) and image inside the unit disk.
ConformalMap random_univalent_series(Rng& rng, int degree = 4, double strength = 0.5);

// K_b, dilation, rotation, translation; retried until the image of the unit
// ball lies in the unit ball.
ConformalMap random_word_embedding(Rng& rng, int d, double max_scale = 0.6);

// n pairwise disjoint balls inside the unit ball.
DiskConfiguration random_ball_configuration(Rng& rng, int d, int n, double max_radius = 0.35);

// Random harmonic polynomial with small rational coefficients over degrees
// 0..max_degree (combinations of the orthogonal basis polynomials).
CPoly random_harmonic_poly(Rng& rng, int d, int max_degree, bool complex_coeffs = false);

// Random point-form delta combination: one to three deltas at |a| <= rmax.
HarmonicDistribution random_delta(Rng& rng, int d, double rmax = 0.8, int truncation = kDefaultOrder);

// Zero-mean d = 2 slot: a combination of d_z^p / d_zbar^q deltas, p,q >= 1.
HarmonicDistribution random_zero_mean_2d(Rng& rng, double rmax = 0.7, int max_order = 2);

}  // namespace confalg
