#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "confalg/conformal.hpp"
#include "confalg/polynomial.hpp"

namespace confalg {

inline constexpr double kCertificatePad = 1e-9;

// coef * d^alpha delta_a. In Wirtinger form (d = 2) alpha = (p, q) means
// d_z^p d_zbar^q.
struct PointTerm {
  Point a;
  MultiIndex alpha;
  Complex coef{1.0};
  bool wirtinger = false;
};

struct Certificate {
  double C = 0.0;
  double rho = 0.0;
};

class HarmonicDistribution {
 public:
  HarmonicDistribution() = default;

  static HarmonicDistribution delta_at(std::span<const double> a, int truncation = kDefaultOrder);
  // pair(T, u) = (-1)^{|alpha|} (d^alpha u)(a).
  static HarmonicDistribution derivative_delta(std::span<const double> a, const MultiIndex& alpha,
                                               int truncation = kDefaultOrder);
  static HarmonicDistribution wirtinger_delta(Complex a, int p, int q, int truncation = kDefaultOrder);
  static HarmonicDistribution from_points(int d, std::vector<PointTerm> points, int truncation = kDefaultOrder);
  // Explicit degrees 0..size-1. With a certificate the support is treated as
  // infinite; without one, degrees past the list are zero.
  static HarmonicDistribution from_sequence(int d, std::vector<CPoly> seq,
                                            std::optional<Certificate> cert = std::nullopt);

  int dim() const { return d_; }
  int truncation() const { return truncation_; }
  bool has_points() const { return has_points_; }
  const std::vector<PointTerm>& points() const { return points_; }
  // t_0..t_N; computed on first use for point forms.
  const std::vector<CPoly>& sequence() const;
  // t_n for any n; point forms compute on demand.
  CPoly component(int n) const;
  const std::optional<Certificate>& certificate() const { return cert_; }
  bool finitely_supported() const { return !has_points_ && !cert_; }

  friend HarmonicDistribution operator+(const HarmonicDistribution& a, const HarmonicDistribution& b);
  friend HarmonicDistribution operator*(Complex c, const HarmonicDistribution& a);
  friend HarmonicDistribution operator-(const HarmonicDistribution& a, const HarmonicDistribution& b) {
    return a + Complex(-1.0) * b;
  }

 private:
  struct Lazy;
  int d_ = 2;
  int truncation_ = kDefaultOrder;
  bool has_points_ = false;
  std::vector<PointTerm> points_;
  std::vector<CPoly> explicit_seq_;
  std::shared_ptr<Lazy> lazy_;
  std::optional<Certificate> cert_;
};

// Sum_n (t_n, u_n) with u a harmonic polynomial (all degrees).
CRational pair_exact(const HarmonicDistribution& T, const CPoly& u);
Complex pair(const HarmonicDistribution& T, const CPoly& u);
// u given degree by degree up to u.size()-1; later degrees unknown.
CRational pair_exact(const HarmonicDistribution& T, const std::vector<CPoly>& u);

std::optional<Certificate> growth_check(const HarmonicDistribution& T);

struct CftNorm {
  double value = 0.0;
  double tail_bound = 0.0;
  bool infinite = false;
};
CftNorm cft_norm_sq(const HarmonicDistribution& T);

bool is_zero_mean(const HarmonicDistribution& T);

// Point-form terms rewritten in d_z, d_zbar (d = 2).
HarmonicDistribution to_wirtinger(const HarmonicDistribution& T);

// T applied to u = exp(k . x) for complex k with k . k = 0.
Complex apply_to_exponential(const HarmonicDistribution& T, std::span<const Complex> k);

// Rigorous bound for a point form: ||t_n|| <= C rho^n for all n.
Certificate point_certificate(int d, const std::vector<PointTerm>& points);

}  // namespace confalg
