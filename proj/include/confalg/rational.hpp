#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace confalg {

using Rational = mpq_class;
using Integer = mpz_class;

// Exact conversion: every finite double is a dyadic rational.
Rational exact_rational(double x);
double to_double(const Rational& q);
// n/d in lowest terms (mpq_class(n, d) does not reduce).
inline Rational make_rational(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

// Complex number with exact rational parts. Used for the complexified d = 2
// distributions (Wirtinger derivatives carry factors of i/2).
struct CRational {
  Rational re{0};
  Rational im{0};

  CRational() = default;
  CRational(Rational r) : re(std::move(r)) {}
  CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static CRational from(std::complex<double> z) {
    return {exact_rational(z.real()), exact_rational(z.imag())};
  }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  CRational& operator+=(const CRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRational& operator-=(const CRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend CRational operator+(CRational a, const CRational& b) { return a += b; }
  friend CRational operator-(CRational a, const CRational& b) { return a -= b; }
  friend CRational operator*(const CRational& a, const CRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CRational operator-(const CRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const CRational& a, const CRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

// Integers that fit in int64 are written as JSON numbers, larger ones as
// decimal strings.
std::string to_string(const Integer& z);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

}  // namespace confalg
