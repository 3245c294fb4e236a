#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace confalg {

// mt19937_64 with explicit conversions so streams are identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  double normal() {
    // Box-Muller, one draw per call
    const double u = 1.0 - uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  }
  std::uint64_t next() { return gen_(); }

  // Uniform point in the ball of radius r in R^d.
  std::vector<double> in_ball(int d, double r) {
    std::vector<double> x(d);
    double n = 0.0;
    for (double& v : x) {
      v = normal();
      n += v * v;
    }
    n = std::sqrt(n);
    const double rad = r * std::pow(uniform(), 1.0 / d);
    for (double& v : x) v *= rad / n;
    return x;
  }

  std::complex<double> in_disk(double r) {
    const auto p = in_ball(2, r);
    return {p[0], p[1]};
  }

  // k = c e^{i t} (u + i v) with u, v orthonormal, so k . k = 0.
  std::vector<std::complex<double>> null_vector(int d, double cmin = 0.5, double cmax = 2.0) {
    std::vector<double> u(d), v(d);
    for (double& x : u) x = normal();
    for (double& x : v) x = normal();
    auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += a[i] * b[i];
      return s;
    };
    const double nu = std::sqrt(dot(u, u));
    for (double& x : u) x /= nu;
    const double p = dot(u, v);
    for (int i = 0; i < d; ++i) v[i] -= p * u[i];
    const double nv = std::sqrt(dot(v, v));
    for (double& x : v) x /= nv;
    const std::complex<double> s = std::polar(uniform(cmin, cmax), uniform(0.0, 2.0 * std::numbers::pi));
    std::vector<std::complex<double>> k(d);
    for (int i = 0; i < d; ++i) k[i] = s * std::complex<double>(u[i], v[i]);
    return k;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace confalg
