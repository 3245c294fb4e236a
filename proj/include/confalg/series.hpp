#pragma once

#include <complex>
#include <vector>

namespace confalg {

using Complex = std::complex<double>;

// Integer power by repeated multiplication; 0^0 = 1.
inline Complex ipow(Complex z, int k) {
  Complex r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

// Truncated power series sum_{k<=N} c_k s^k with complex coefficients.
class Series {
 public:
  Series() = default;
  explicit Series(std::vector<Complex> c) : c_(std::move(c)) {}
  static Series zero(int order) { return Series(std::vector<Complex>(order + 1)); }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  Complex operator[](int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : Complex{}; }
  Complex& operator[](int k) { return c_[k]; }
  const std::vector<Complex>& coeffs() const { return c_; }

  Complex eval(Complex z) const;
  Complex eval_derivative(Complex z, int k) const;
  Series derivative() const;
  Series truncated(int order) const;

 private:
  std::vector<Complex> c_;
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator*(Complex s, const Series& a);
Series mul(const Series& a, const Series& b, int order);
Series inverse(const Series& a, int order);  // needs a[0] != 0
Series log(const Series& a, int order);      // principal log of a[0]
Series exp(const Series& a, int order);
// f(g(s)) by truncated substitution; exact for polynomial f when order allows.
Series compose(const Series& f, const Series& g, int order);
// Coefficients of f(a + s).
Series taylor_shift(const Series& f, Complex a, int order);

// Bivariate series sum c_{ij} s^i t^j truncated to total degree i + j <= N.
class Bivariate {
 public:
  Bivariate() = default;
  explicit Bivariate(int order);

  int order() const { return n_; }
  Complex at(int i, int j) const { return (i + j <= n_ && i >= 0 && j >= 0) ? c_[idx(i, j)] : Complex{}; }
  Complex& ref(int i, int j) { return c_[idx(i, j)]; }

 private:
  int idx(int i, int j) const { return i * (n_ + 1) + j; }
  int n_ = 0;
  std::vector<Complex> c_;
};

Bivariate mul(const Bivariate& a, const Bivariate& b);
Bivariate inverse(const Bivariate& a);
Bivariate log(const Bivariate& a);
Bivariate d_s(const Bivariate& a);

// Q(s, t) = (f(s) - f(t)) / (s - t) written through complete homogeneous
// polynomials, valid on the diagonal.
Bivariate divided_difference(const Series& f, int order);

}  // namespace confalg
