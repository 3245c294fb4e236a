#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "confalg/series.hpp"

namespace confalg {

inline constexpr int kDefaultOrder = 32;
inline constexpr double kSpecialConformalGuard = 1e-14;

using Point = std::vector<double>;

struct Generator {
  enum class Kind { Translation, Orthogonal, Dilation, SpecialConformal };
  Kind kind = Kind::Translation;
  Point vec;                   // translation a or special-conformal b
  std::vector<double> matrix;  // row-major d x d
  double R = 1.0;

  static Generator translation(Point a);
  static Generator orthogonal(int d, std::vector<double> m);
  static Generator dilation(double R);
  static Generator special_conformal(Point b);
};

// Mobius transformation (a z + b) / (c z + d).
struct Mobius {
  Complex a{1.0}, b{}, c{}, d{1.0};

  Complex operator()(Complex z) const { return (a * z + b) / (c * z + d); }
  Complex det() const { return a * d - b * c; }
  friend Mobius operator*(const Mobius& f, const Mobius& g);  // f after g
  Mobius inverse() const { return {d, -b, -c, a}; }
  // Coefficients of z0 + s -> f(z0 + s).
  Series taylor_at(Complex z0, int order) const;
};

class ConformalMap {
 public:
  static ConformalMap identity(int d);
  static ConformalMap word(int d, std::vector<Generator> gens);
  static ConformalMap series(Series coeffs, double radius);
  // Mobius map expanded at 0; radius defaults to min(1, 0.999 |d/c|).
  static ConformalMap mobius_series(const Mobius& m, int order = kDefaultOrder, double radius = 1.0);

  int dim() const { return dim_; }
  bool is_series() const { return is_series_; }
  const std::vector<Generator>& generators() const { return gens_; }
  const Series& coeffs() const { return coeffs_; }
  double radius() const { return radius_; }
  bool injectivity_certified() const { return certified_; }
  ConformalMap with_certificate(bool flag) const;

  // Only translations and dilations.
  bool is_affine_ball() const;

 private:
  int dim_ = 2;
  bool is_series_ = false;
  std::vector<Generator> gens_;
  Series coeffs_;
  double radius_ = 1.0;
  bool certified_ = false;
};

Point apply_map(const ConformalMap& f, std::span<const double> x);
Complex apply_map(const ConformalMap& f, Complex z);
double conformal_factor(const ConformalMap& f, std::span<const double> x);
// phi o psi.
ConformalMap compose(const ConformalMap& phi, const ConformalMap& psi, int order = kDefaultOrder);
// Generator words only.
ConformalMap inverse(const ConformalMap& f);

// d = 2 helpers.
std::optional<Mobius> to_mobius(const ConformalMap& f);
// Taylor coefficients of s -> f(z0 + s).
Series taylor_at(const ConformalMap& f, Complex z0, int order);
// Truncated expansion at 0; words are converted through their Mobius form.
Series to_series(const ConformalMap& f, int order = kDefaultOrder);

struct SchwarzianValue {
  Complex value;
  Complex basepoint;
};
SchwarzianValue schwarzian(const ConformalMap& f, Complex z);

// Polar grid test on the validity disk: phi' != 0 and images pairwise
// separated by more than 1e-12. A false result disproves injectivity.
bool certify_injective(const ConformalMap& f, int grid_size);

inline Complex to_complex(std::span<const double> x) { return {x[0], x[1]}; }
inline Point to_point(Complex z) { return {z.real(), z.imag()}; }

}  // namespace confalg
