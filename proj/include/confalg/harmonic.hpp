#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "confalg/polynomial.hpp"

namespace confalg {

// A_{d,n} = binom(n+d-1, d-1) - binom(n+d-3, d-1).
std::int64_t dim_harm(int d, int n);

// Normalized (mass one) sphere moment of x^alpha on S^{d-1}.
Rational sphere_moment(const MultiIndex& alpha);
Rational sphere_inner(const Poly& p, const Poly& q);
// Bilinear complexified pairing.
CRational sphere_inner(const CPoly& p, const CPoly& q);
// Float evaluation of sqrt(sphere_inner(p, p)).
double sphere_norm(const Poly& p);
double sphere_norm(const CPoly& p);
// For homogeneous harmonic p of degree n:
// ||p||^2 = sum_alpha alpha! c_alpha^2 / (d (d+2) ... (d+2n-2)).
// A sum of positive terms, so no cancellation; not valid for other p.
Rational harmonic_norm_sq(const Poly& p);
double harmonic_norm(const Poly& p);
// (h, u) on the sphere for h homogeneous harmonic of degree n and u
// homogeneous of degree n (|x|^2 multiples drop out on both sides).
Rational harmonic_inner(const Poly& h, const Poly& u);
CRational harmonic_inner(const CPoly& h, const CPoly& u);
double harmonic_norm(const CPoly& p);

// Exact basis of Harm_{d,n}, one polynomial per monomial with x_1-exponent
// at most one (the echelon free variables), in graded-lex order of those.
std::vector<Poly> harmonic_nullspace(int d, int n);

// Orthogonal rational polynomials P_k with rational squared norms N_k;
// the orthonormal basis is Y_k = P_k / sqrt(N_k).
struct OrthonormalBasis {
  int d = 0;
  int n = 0;
  std::vector<Poly> polys;
  std::vector<Rational> norm_sq;

  std::size_t size() const { return polys.size(); }
  double value(std::size_t k, std::span<const double> x) const;
  // Float Gram matrix of the Y_k; identity up to rounding.
  std::vector<std::vector<double>> gram() const;
};

// Memoized per (d, n); safe to call from several threads.
const OrthonormalBasis& orthonormal_basis(int d, int n);

// Standard C_n^lambda with lambda = (d-2)/2, d >= 3.
double gegenbauer(int d, int n, double t);
// c_{d,n} = (d-2)/(2n+d-2); d >= 3.
double expansion_coefficient(int d, int n);

// Z_n(a, .) = sum_k Y_{n,k}(a) Y_{n,k}, from the Gegenbauer closed form.
Poly zonal(int d, int n, std::span<const Rational> a);
// Same kernel assembled from the orthonormal basis; used as a cross-check.
Poly zonal_from_basis(int d, int n, std::span<const Rational> a);
// (-1)^{|alpha|} d_a^alpha Z_n(a, .).
Poly zonal_derivative(int d, int n, std::span<const Rational> a, const MultiIndex& alpha);

// Unnormalized area of S^{d-1}.
double sphere_area(int d);
double green_kernel(int d, std::span<const double> x, std::span<const double> y);
double green_expansion_partial(int d, std::span<const double> x, std::span<const double> y, int N);

}  // namespace confalg
