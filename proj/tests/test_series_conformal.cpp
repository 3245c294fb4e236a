#include <doctest.h>

#include <cmath>
#include <numbers>

#include "confalg/conformal.hpp"
#include "confalg/errors.hpp"
#include "confalg/random.hpp"

using namespace confalg;

namespace {

double dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double norm2(const Point& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

std::vector<double> rotation3(Rng& rng) {
  // product of two plane rotations
  const double a = rng.uniform(0, 2 * std::numbers::pi), b = rng.uniform(0, 2 * std::numbers::pi);
  const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
  // Rz(a) * Rx(b)
  return {ca, -sa * cb, sa * sb, sa, ca * cb, -ca * sb, 0.0, sb, cb};
}

ConformalMap random_word(Rng& rng, int d) {
  std::vector<Generator> g;
  g.push_back(Generator::special_conformal(rng.in_ball(d, 0.3)));
  g.push_back(Generator::dilation(rng.uniform(0.3, 0.6)));
  if (d == 3) g.push_back(Generator::orthogonal(3, rotation3(rng)));
  g.push_back(Generator::translation(rng.in_ball(d, 0.2)));
  return ConformalMap::word(d, std::move(g));
}

}  // namespace

TEST_CASE("series arithmetic") {
  const Series a({1.0, 2.0, 3.0});
  const Series inv = inverse(a, 8);
  const Series one = mul(a, inv, 8);
  CHECK(std::abs(one[0] - 1.0) < 1e-15);
  for (int k = 1; k <= 8; ++k) CHECK(std::abs(one[k]) < 1e-12);
  const Series l = log(Series({1.0, 0.5}), 10);
  for (int k = 1; k <= 10; ++k) CHECK(std::abs(l[k] - std::pow(-1.0, k + 1) * std::pow(0.5, k) / k) < 1e-15);
  const Series e = exp(l, 10);
  CHECK(std::abs(e[0] - 1.0) < 1e-15);
  CHECK(std::abs(e[1] - 0.5) < 1e-15);
  for (int k = 2; k <= 10; ++k) CHECK(std::abs(e[k]) < 1e-15);
  // (1+s)^2 composed with 2s
  const Series c = compose(Series({1.0, 2.0, 1.0}), Series({0.0, 2.0}), 4);
  CHECK(c[0] == Complex(1.0));
  CHECK(c[1] == Complex(4.0));
  CHECK(c[2] == Complex(4.0));
  const Series sh = taylor_shift(Series({0.0, 0.0, 1.0}), 0.5, 4);  // (0.5+s)^2
  CHECK(std::abs(sh[0] - 0.25) < 1e-16);
  CHECK(std::abs(sh[1] - 1.0) < 1e-16);
  CHECK(std::abs(sh[2] - 1.0) < 1e-16);
}

TEST_CASE("bivariate log of divided difference") {
  // f = s + eps s^2: Q = 1 + eps (s + t)
  const double eps = 0.1;
  const Bivariate q = divided_difference(Series({0.0, 1.0, eps}), 6);
  CHECK(q.at(0, 0) == Complex(1.0));
  CHECK(q.at(1, 0) == Complex(eps));
  CHECK(q.at(0, 1) == Complex(eps));
  const Bivariate l = log(q);
  CHECK(std::abs(l.at(1, 1) + eps * eps) < 1e-16);
  CHECK(std::abs(l.at(2, 0) + eps * eps / 2) < 1e-16);
  const Bivariate one = mul(q, inverse(q));
  CHECK(std::abs(one.at(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(one.at(2, 3)) < 1e-14);
}

TEST_CASE("apply and conformal factor examples") {
  const ConformalMap dil = ConformalMap::word(3, {Generator::dilation(2.0)});
  const Point y = apply_map(dil, std::vector<double>{0.5, 0.0, 0.0});
  CHECK(y == Point{1.0, 0.0, 0.0});
  const ConformalMap K = ConformalMap::word(2, {Generator::special_conformal({0.5, 0.0})});
  const Point k = apply_map(K, std::vector<double>{0.5, 0.0});
  CHECK(k[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(k[1] == 0.0);
  CHECK(conformal_factor(ConformalMap::identity(3), std::vector<double>{0.1, 0.2, 0.3}) == 1.0);
  CHECK(conformal_factor(ConformalMap::word(2, {Generator::dilation(3.0)}), std::vector<double>{0.1, 0.2}) == 3.0);
  // pole of K_b at x = b/|b|^2
  const ConformalMap K2 = ConformalMap::word(2, {Generator::special_conformal({1.0, 0.0})});
  CHECK_THROWS_AS(apply_map(K2, std::vector<double>{1.0, 0.0}), DomainError);
}

TEST_CASE("special conformal matches z/(1 - conj(w) z) in d = 2") {
  Rng rng(3);
  const Point b = rng.in_ball(2, 0.8);
  const Complex w(b[0], b[1]);
  const ConformalMap K = ConformalMap::word(2, {Generator::special_conformal(b)});
  for (int i = 0; i < 10; ++i) {
    const Complex z = rng.in_disk(1.0);
    const Complex expect = z / (1.0 - std::conj(w) * z);
    CHECK(std::abs(apply_map(K, z) - expect) < 1e-13);
    CHECK(std::abs(apply_map(ConformalMap::series(to_series(K, 200), 1.0), z * 0.5) -
                   (0.5 * z) / (1.0 - std::conj(w) * 0.5 * z)) < 1e-10);
  }
}

TEST_CASE("conformal identity, composition, inverse") {
  Rng rng(42);
  for (int d : {2, 3, 4}) {
    for (int trial = 0; trial < 20; ++trial) {
      const ConformalMap f = random_word(rng, d);
      const ConformalMap g = random_word(rng, d);
      const Point x = rng.in_ball(d, 0.9), y = rng.in_ball(d, 0.9);
      const Point fx = apply_map(f, x), fy = apply_map(f, y);
      const double lhs = norm2(Point{}) + dist(fx, fy) * dist(fx, fy);
      const double rhs = conformal_factor(f, x) * conformal_factor(f, y) * dist(x, y) * dist(x, y);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
      CHECK(conformal_factor(f, x) > 0.0);
      const ConformalMap fg = compose(f, g);
      CHECK(dist(apply_map(fg, x), apply_map(f, apply_map(g, x))) < 1e-12);
      CHECK(std::abs(conformal_factor(fg, x) - conformal_factor(g, x) * conformal_factor(f, apply_map(g, x))) <
            1e-10 * conformal_factor(fg, x));
      CHECK(dist(apply_map(compose(f, ConformalMap::identity(d)), x), fx) <= 1e-12);
      CHECK(dist(apply_map(inverse(f), fx), x) < 1e-10);
      const ConformalMap h = random_word(rng, d);
      CHECK(dist(apply_map(compose(compose(f, g), h), x), apply_map(compose(f, compose(g, h)), x)) < 1e-10);
    }
  }
}

TEST_CASE("words convert to Mobius maps in d = 2") {
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const double t = rng.uniform(0, 6.28);
    const ConformalMap f = ConformalMap::word(
        2, {Generator::special_conformal(rng.in_ball(2, 0.5)), Generator::dilation(0.4),
            Generator::orthogonal(2, {std::cos(t), -std::sin(t), std::sin(t), std::cos(t)}),
            Generator::translation(rng.in_ball(2, 0.3))});
    const Mobius m = *to_mobius(f);
    for (int i = 0; i < 5; ++i) {
      const Complex z = rng.in_disk(0.9);
      CHECK(std::abs(m(z) - apply_map(f, z)) < 1e-13);
      CHECK(std::abs(std::abs(m.taylor_at(z, 1)[1]) - conformal_factor(f, to_point(z))) < 1e-12);
    }
  }
}

TEST_CASE("schwarzian") {
  const ConformalMap q = ConformalMap::series(Series({0.0, 1.0, 0.1}), 1.0);
  CHECK(std::abs(schwarzian(q, 0.0).value - Complex(-0.06)) < 1e-15);
  Rng rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    const Mobius m{Complex(1.0, 0.2), rng.in_disk(0.3), rng.in_disk(0.4), Complex(1.0)};
    const ConformalMap f = ConformalMap::mobius_series(m, 12);
    CHECK(std::abs(schwarzian(f, 0.0).value) <= 1e-9);
  }
  // chain rule S(phi o psi) = S(psi) + psi'^2 S(phi)(psi)
  const ConformalMap phi = ConformalMap::series(Series({0.0, 0.5, 0.1, -0.05}), 1.0);
  const ConformalMap psi = ConformalMap::series(Series({0.1, 0.6, 0.05, 0.02}), 1.0);
  const ConformalMap comp = compose(phi, psi);
  for (int i = 0; i < 5; ++i) {
    const Complex z = rng.in_disk(0.6);
    const Complex d = taylor_at(psi, z, 1)[1];
    const Complex rhs = schwarzian(psi, z).value + d * d * schwarzian(phi, apply_map(psi, z)).value;
    CHECK(std::abs(schwarzian(comp, z).value - rhs) < 1e-8);
  }
  CHECK_THROWS_AS(schwarzian(ConformalMap::series(Series({0.0, 1.0, 0.5}), 1.0), Complex(1.5)), RadiusError);
}

TEST_CASE("injectivity certificate") {
  CHECK(certify_injective(ConformalMap::series(Series({0.0, 0.5}), 1.0), 32));
  CHECK_FALSE(certify_injective(ConformalMap::series(Series({0.0, 1.0, -1.0}), 1.0), 32));  // f'(1/2) = 0
  CHECK(certify_injective(ConformalMap::series(Series({0.0, 1.0, 0.1}), 1.0), 32));
  CHECK_THROWS_AS(certify_injective(ConformalMap::identity(2), 8), DomainError);
  const auto m = ConformalMap::series(Series({0.0, 0.5}), 1.0);
  CHECK_FALSE(m.injectivity_certified());
  CHECK(m.with_certificate(true).injectivity_certified());
}

TEST_CASE("series composition radius check") {
  const ConformalMap big = ConformalMap::series(Series({0.0, 0.95}), 1.0);
  const ConformalMap small = ConformalMap::series(Series({0.0, 1.0, 0.1}), 0.5);
  CHECK_THROWS_AS(compose(small, big), RadiusError);
  CHECK_NOTHROW(compose(big, small));
}
