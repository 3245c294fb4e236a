#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "confalg/conformal.hpp"
#include "confalg/distribution.hpp"
#include "confalg/fock.hpp"

namespace confalg {

struct Ball {
  Point center;
  double radius = 0.0;
};

struct QuadratureRule {
  int d = 2;
  std::vector<Point> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussLegendre& gauss_legendre(int n);

// Ball in d = 2 (radial GL x trapezoid) or d = 3 (radial GL x GL in cos
// theta x trapezoid in phi). `angular` is the trapezoid count.
QuadratureRule ball_rule(const Ball& b, int radial, int angular);

using Field = std::function<Complex(std::span<const double>)>;

// Finite sum of smooth pieces, each supported in its own closed ball.
struct SmoothFunction {
  struct Piece {
    Ball support;
    Field f;
  };
  int d = 2;
  std::vector<Piece> pieces;

  Complex operator()(std::span<const double> x) const;
  SmoothFunction& operator+=(const SmoothFunction& o);
  friend SmoothFunction operator*(Complex c, SmoothFunction f);
};

// c exp(-1/(1 - (r/eps)^2)) on B_eps(a), mass one.
double bump_normalization(int d, double eps);
SmoothFunction bump(std::span<const double> a, double eps);
// d^alpha of the bump (Cartesian), or d_z^p d_zbar^q in Wirtinger form.
SmoothFunction bump_derivative(std::span<const double> a, double eps, const MultiIndex& alpha, bool wirtinger = false);
// -(d_1^2 + ... + d_d^2) of the bump.
SmoothFunction bump_laplacian(std::span<const double> a, double eps);
// sum coef d^alpha bump_a for a point-form distribution: pairs with
// harmonic u exactly as the distribution does.
SmoothFunction representative(const HarmonicDistribution& T, double eps);

struct NumericValue {
  Complex value;
  double error = 0.0;  // difference between the two refinement levels
};

// Starting resolution; zero picks a per-operation default. Refinement
// multiplies both counts by 3/2.
struct OracleOptions {
  int radial = 0;
  int angular = 0;
  int max_refinements = 4;
};

NumericValue numeric_integral(const SmoothFunction& f, double tol = 1e-6, const OracleOptions& opt = {});
NumericValue numeric_pair(const SmoothFunction& f, const Field& u, double tol = 1e-6, const OracleOptions& opt = {});
NumericValue numeric_pair(const SmoothFunction& f, const CPoly& u, double tol = 1e-6, const OracleOptions& opt = {});

// Pointwise kernel K(x, y) (no derivatives).
Complex kernel_value(const Kernel& K, std::span<const double> x, std::span<const double> y);

NumericValue numeric_contraction(const SmoothFunction& f, const SmoothFunction& g, const Kernel& K,
                                 double tol = 1e-4, const OracleOptions& opt = {});

struct CheckRecord {
  std::string check;
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// d_K(f, Delta h) against the integral of f h; h must be a single bump.
CheckRecord verify_cg_intertwine(const SmoothFunction& f, std::span<const double> h_center, double h_eps,
                                 const Kernel& K, double tol, const OracleOptions& opt = {});

// Pairing of W_phi f with W~_phi h against the pairing of f and h, where
// W_phi f (x) = Omega(phi^-1 x)^{-(d+2)/2} f(phi^-1 x) and
// W~_phi h (x) = Omega(phi^-1 x)^{-(d-2)/2} h(phi^-1 x).
CheckRecord verify_pushforward_integral(const ConformalMap& phi, const SmoothFunction& f, const SmoothFunction& h,
                                        double tol, const OracleOptions& opt = {});
// d = 2: the integral of W_phi f equals the integral of f (zero for f of mean zero).
CheckRecord verify_pushforward_mean(const ConformalMap& phi, const SmoothFunction& f, double tol,
                                    const OracleOptions& opt = {});

// Solve phi(y) = x near y0 (Newton); nullopt when it fails to converge.
std::optional<Point> invert_map(const ConformalMap& phi, std::span<const double> x, std::span<const double> y0);

}  // namespace confalg
