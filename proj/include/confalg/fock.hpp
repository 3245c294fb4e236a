#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "confalg/distribution.hpp"
#include "confalg/operad.hpp"

namespace confalg {

// H_phi(z,w) = log|phi(z)-phi(w)| - log|z-w| - (1/2)log|phi'(z)| - (1/2)log|phi'(w)|
// and its coefficient table A_{n,m}: sum A_{n,m} z^n w^m =
// phi'(z)phi'(w)/(phi(z)-phi(w))^2 - 1/(z-w)^2.
class HarmonicCocycle {
 public:
  explicit HarmonicCocycle(const ConformalMap& phi, int order = kDefaultOrder, int grid = 20);

  const ConformalMap& map() const { return phi_; }
  int order() const { return order_; }
  // Available for n + m <= order - 2.
  Complex A(int n, int m) const;
  double H(Complex z, Complex w) const;
  double H_tilde(Complex z, Complex w) const;
  // d_z^{p1} d_zbar^{q1} d_w^{p2} d_wbar^{q2} of H (or H~) at (a, b).
  Complex derivative(Complex a, int p1, int q1, Complex b, int p2, int q2, bool tilde = false) const;
  // sum_{n+m=k} A_{n,m} for k = 0..degree.
  Series diagonal(int degree) const;

 private:
  Complex log_q(Complex z, Complex w) const;
  Complex derivative_of(Complex z) const;
  // log of the divided difference at the origin, built on first use
  const Bivariate& table() const;

  ConformalMap phi_;
  int order_;
  std::optional<Mobius> mob_;
  Series s_;
  std::shared_ptr<std::once_flag> table_once_ = std::make_shared<std::once_flag>();
  std::shared_ptr<Bivariate> logq_ = std::make_shared<Bivariate>();
};

// S(phi) = phi'''/phi' - (3/2)(phi''/phi')^2 as a truncated series at 0.
Series schwarzian_series(const Series& phi, int order);

struct Kernel {
  enum class Kind { Green, CorrectedGreen, Cocycle };
  Kind kind = Kind::Green;
  int d = 3;
  bool tilde = false;       // use H~ instead of H
  bool normalized = false;  // scale by lambda^2
  std::shared_ptr<const HarmonicCocycle> cocycle;

  static Kernel green(int d, bool normalized = false);
  static Kernel corrected_green(std::shared_ptr<const HarmonicCocycle> c, bool tilde = false,
                                bool normalized = false);
  static Kernel cocycle_kernel(std::shared_ptr<const HarmonicCocycle> c, bool tilde = false,
                               bool normalized = false);
  bool singular() const { return kind != Kind::Cocycle; }
};

// lambda with lambda^2 = -4 pi (d = 2) or (d-2) omega_d (d >= 3).
Complex normalization_lambda(int d);
double normalization_lambda_sq(int d);

// (-1)^{|alpha|+|beta|} d_x^alpha d_y^beta K(a, b) for one pair of terms,
// coefficients included.
Complex kernel_term(const Kernel& K, const PointTerm& x, const PointTerm& y);
Complex contraction_value(const HarmonicDistribution& T, const HarmonicDistribution& S, const Kernel& K);

struct ObservableTerm {
  Complex coef{1.0};
  std::vector<HarmonicDistribution> word;
};

class Observable {
 public:
  explicit Observable(int d = 2) : d_(d) {}
  static Observable scalar(int d, Complex c);
  static Observable word(int d, std::vector<HarmonicDistribution> w, Complex coef = 1.0);

  int dim() const { return d_; }
  const std::vector<ObservableTerm>& terms() const { return terms_; }
  void add(ObservableTerm t);
  int max_degree() const;

  Observable& operator+=(const Observable& o);
  friend Observable operator+(Observable a, const Observable& b) { return a += b; }
  friend Observable operator-(Observable a, const Observable& b);
  friend Observable operator*(Complex c, Observable a);
  // Symmetric product: words concatenate.
  friend Observable operator*(const Observable& a, const Observable& b);

 private:
  int d_;
  std::vector<ObservableTerm> terms_;
};

// Degree-n part of F evaluated on u = exp(k . x), k . k = 0.
Complex evaluate_on_exponential(const Observable& F, std::span<const Complex> k, int degree);

struct ObservableResidual {
  double abs = 0.0;    // max |F_n(u) - G_n(u)|
  double scale = 0.0;  // max |F_n(u)|, |G_n(u)|
};
// Extensional comparison on random harmonic exponentials.
ObservableResidual compare_observables(const Observable& F, const Observable& G, std::uint64_t seed,
                                       int samples = 4);

HarmonicDistribution pushforward(const ConformalMap& phi, const HarmonicDistribution& T);
HarmonicDistribution pushforward(const DiskEmbedding& phi, const HarmonicDistribution& T);
Observable pushforward(const ConformalMap& phi, const Observable& F);

struct RhoOptions {
  bool normalized = false;
};
Observable rho(const DiskConfiguration& c, const std::vector<Observable>& F, const RhoOptions& opt = {});

enum class Direction { Forward, Inverse };
Observable normalize(const Observable& F, Direction dir);

// Perfect matchings of {0..n-1} in canonical order; empty for odd n.
std::vector<std::vector<std::pair<int, int>>> perfect_matchings(int n);

struct StateValue {
  Complex value;
  std::int64_t matchings = 0;
};
StateValue vacuum_state(const Observable& F, const Kernel& K);

struct AnomalyReport {
  Complex lhs;          // <F> with G_2 - (2 pi)^{-1} H~_phi
  Complex rhs;          // <W_phi F> with G_2
  double residual = 0;  // |lhs - rhs|
  Complex uncorrected;  // <F> with G_2
};
AnomalyReport anomaly_check(const ConformalMap& phi, const Observable& F);

}  // namespace confalg
