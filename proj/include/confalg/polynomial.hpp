#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "confalg/rational.hpp"

namespace confalg {

inline constexpr int kMaxDim = 8;

// Exponent vector x^alpha in at most kMaxDim variables.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dim);
  MultiIndex(std::initializer_list<int> exps);
  static MultiIndex from(std::span<const int> exps);
  static MultiIndex unit(int dim, int i, int power = 1);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int operator[](int i) const { return e_[i]; }
  void set(int i, int value);
  // Bitmask of odd exponents; sphere moments vanish unless it is zero.
  unsigned parity() const;
  std::vector<int> to_vector() const;

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;
  // Graded lexicographic: lower total degree first, then larger exponent of
  // x_1 first, and so on.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b);

 private:
  std::array<std::uint8_t, kMaxDim> e_{};
  std::uint8_t dim_ = 0;
  std::uint16_t degree_ = 0;
};

// All exponent vectors of total degree n in d variables, graded-lex order.
std::vector<MultiIndex> monomials(int dim, int degree);

// Polynomial with exact rational coefficients.
class Poly {
 public:
  using Terms = std::map<MultiIndex, Rational>;

  Poly() = default;
  explicit Poly(int dim) : dim_(dim) {}
  static Poly constant(int dim, const Rational& c);
  static Poly monomial(const MultiIndex& alpha, const Rational& c = 1);
  static Poly variable(int dim, int i);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for the zero polynomial
  bool is_homogeneous() const;
  Rational coefficient(const MultiIndex& alpha) const;

  void add_term(const MultiIndex& alpha, const Rational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  Poly derivative(int i) const;
  Poly derivative(const MultiIndex& alpha) const;
  Poly homogeneous_part(int n) const;

  Rational evaluate(std::span<const Rational> x) const;
  double evaluate(std::span<const double> x) const;

 private:
  int dim_ = 0;
  Terms terms_;
};

// Laplacian with the positive-spectrum sign convention: -(d_1^2 + ... + d_d^2).
Poly laplacian(const Poly& p);

// Complex polynomial stored as real and imaginary rational parts.
struct CPoly {
  Poly re;
  Poly im;

  CPoly() = default;
  explicit CPoly(int dim) : re(dim), im(dim) {}
  CPoly(Poly r) : re(std::move(r)), im(re.dim()) {}
  CPoly(Poly r, Poly i) : re(std::move(r)), im(std::move(i)) {}

  int dim() const { return re.dim(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  CPoly& operator+=(const CPoly& o);
  CPoly& operator*=(const CRational& c);
  CPoly homogeneous_part(int n) const { return {re.homogeneous_part(n), im.homogeneous_part(n)}; }
  int degree() const { return std::max(re.degree(), im.degree()); }
  std::complex<double> evaluate(std::span<const double> x) const {
    return {re.evaluate(x), im.evaluate(x)};
  }
  CRational evaluate(std::span<const Rational> x) const { return {re.evaluate(x), im.evaluate(x)}; }
};

}  // namespace confalg
