#include <doctest.h>

#include "confalg/errors.hpp"
#include "confalg/polynomial.hpp"

using namespace confalg;

TEST_CASE("exact_rational is exact for dyadic doubles") {
  CHECK(exact_rational(0.5) == Rational(1, 2));
  CHECK(exact_rational(-0.375) == Rational(-3, 8));
  CHECK(to_double(exact_rational(0.1)) == 0.1);
  CHECK_THROWS_AS(exact_rational(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("graded lex order") {
  // degree first, then larger x1 exponent first
  CHECK(MultiIndex{0, 0} < MultiIndex{1, 0});
  CHECK(MultiIndex{1, 0} < MultiIndex{0, 1});
  CHECK(MultiIndex{2, 0, 0} < MultiIndex{1, 1, 0});
  const auto m = monomials(3, 2);
  REQUIRE(m.size() == 6);
  CHECK(m.front() == MultiIndex{2, 0, 0});
  CHECK(m.back() == MultiIndex{0, 0, 2});
  for (std::size_t i = 1; i < m.size(); ++i) CHECK(m[i - 1] < m[i]);
}

TEST_CASE("polynomial arithmetic and derivatives") {
  const Poly x = Poly::variable(2, 0);
  const Poly y = Poly::variable(2, 1);
  const Poly p = x * x - y * y;
  CHECK(p.is_homogeneous());
  CHECK(p.degree() == 2);
  CHECK(laplacian(p).is_zero());
  CHECK(laplacian(x * x) == Poly::constant(2, -2));
  CHECK(p.derivative(0) == x * Rational(2));
  CHECK((p - p).is_zero());
  CHECK((p - p).degree() == -1);
  const std::vector<Rational> pt{Rational(1, 3), Rational(1, 2)};
  CHECK(p.evaluate(std::span<const Rational>(pt)) == Rational(1, 9) - Rational(1, 4));
  const std::vector<double> ptd{0.25, 0.5};
  CHECK(p.evaluate(std::span<const double>(ptd)) == doctest::Approx(0.0625 - 0.25));
  CHECK(p.derivative(MultiIndex{2, 0}) == Poly::constant(2, 2));
}

TEST_CASE("complex polynomial scaling") {
  CPoly p(Poly::variable(2, 0));
  p *= CRational(0, 1);
  CHECK(p.re.is_zero());
  CHECK(p.im == Poly::variable(2, 0));
  p *= CRational(0, 1);
  CHECK(p.re == Poly::variable(2, 0) * Rational(-1));
}
