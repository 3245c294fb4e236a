#include "confalg/rational.hpp"

#include <cmath>
#include <vector>

#include "confalg/errors.hpp"

namespace confalg {

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw DomainError("cannot convert non-finite value to a rational");
  Rational q(x);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

std::string to_string(const Integer& z) { return z.get_str(); }

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace confalg
