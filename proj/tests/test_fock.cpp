#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <functional>
#include <numbers>

#include "confalg/errors.hpp"
#include "confalg/fock.hpp"
#include "confalg/harmonic.hpp"
#include "confalg/samplers.hpp"

using namespace confalg;

namespace {

constexpr double kPi = std::numbers::pi;

HarmonicDistribution delta(const Point& a, int trunc = 4) { return HarmonicDistribution::delta_at(a, trunc); }

HarmonicDistribution dz(Complex a, int p, int q = 0) { return HarmonicDistribution::wirtinger_delta(a, p, q, 4); }

double dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Green derivative (-1)^{|a|+|b|} d_x^a d_y^b G(x, y) by central differences.
double fd_green(int d, Point x, Point y, const MultiIndex& a, const MultiIndex& b, double h = 1e-3) {
  std::function<double(Point, Point, MultiIndex, MultiIndex)> rec = [&](Point x, Point y, MultiIndex a, MultiIndex b) {
    for (int i = 0; i < d; ++i) {
      if (a[i] > 0) {
        MultiIndex a2 = a;
        a2.set(i, a[i] - 1);
        Point xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        return (rec(xp, y, a2, b) - rec(xm, y, a2, b)) / (2 * h);
      }
      if (b[i] > 0) {
        MultiIndex b2 = b;
        b2.set(i, b[i] - 1);
        Point yp = y, ym = y;
        yp[i] += h;
        ym[i] -= h;
        return (rec(x, yp, a, b2) - rec(x, ym, a, b2)) / (2 * h);
      }
    }
    return green_kernel(d, x, y);
  };
  const double v = rec(x, y, a, b);
  return (a.degree() + b.degree()) % 2 ? -v : v;
}

}  // namespace

TEST_CASE("cocycle of z + eps z^2") {
  const ConformalMap phi = ConformalMap::series(Series({0.0, 1.0, 0.1}), 1.0);
  const HarmonicCocycle c(phi);
  CHECK(std::abs(c.A(0, 0) - Complex(-0.01)) < 1e-15);
  for (int n = 0; n <= 10; ++n) {
    for (int m = 0; m <= 10; ++m) CHECK(std::abs(c.A(n, m) - c.A(m, n)) < 1e-15);
  }
  const Series S = schwarzian_series(phi.coeffs(), 20);
  const Series diag = c.diagonal(16);
  for (int k = 0; k <= 16; ++k) CHECK(std::abs(diag[k] - S[k] / 6.0) < 1e-12);
  CHECK_THROWS_AS(c.A(20, 20), IndexError);
}

TEST_CASE("cocycle vanishes on Mobius maps") {
  Rng rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    const Mobius m = random_disk_mobius(rng);
    const HarmonicCocycle series(ConformalMap::mobius_series(m, 64), 64);
    double amax = 0.0;
    for (int n = 0; n <= 24; ++n) {
      for (int k = 0; k <= 24; ++k) amax = std::max(amax, std::abs(series.A(n, k)));
    }
    CHECK(amax <= 1e-9);
    double hmax = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Complex z = rng.in_disk(0.9), w = rng.in_disk(0.9);
      hmax = std::max(hmax, std::abs(series.H(z, w)));
      CHECK(std::abs(series.derivative(z, 1, 0, w, 1, 0)) < 1e-9);
      CHECK(std::abs(series.derivative(z, 2, 0, w, 0, 0)) < 1e-9);
    }
    CHECK(hmax <= 1e-9);
  }
  const ConformalMap w = ConformalMap::word(2, {Generator::special_conformal({0.3, 0.1}), Generator::dilation(0.5)});
  const HarmonicCocycle cw(w);
  CHECK(std::abs(cw.H(0.2, Complex(0.1, -0.4))) < 1e-14);
  CHECK(std::abs(cw.derivative(0.2, 1, 0, Complex(0.1, -0.4), 1, 0)) < 1e-14);
}

TEST_CASE("cocycle identity and continuity") {
  Rng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const ConformalMap phi = random_univalent_series(rng, 4, 0.6);
    const ConformalMap psi = random_univalent_series(rng, 4, 0.6);
    const HarmonicCocycle cphi(phi), cpsi(psi), ccomp(compose(phi, psi));
    for (int i = 0; i < 20; ++i) {
      const Complex z = rng.in_disk(0.95), w = rng.in_disk(0.95);
      const double lhs = ccomp.H(z, w);
      const double rhs = cpsi.H(z, w) + cphi.H(apply_map(psi, z), apply_map(psi, w));
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
    // H by definition away from the diagonal
    const Complex z = rng.in_disk(0.8), w = rng.in_disk(0.8);
    const Series s = phi.coeffs();
    const double direct = std::log(std::abs(s.eval(z) - s.eval(w))) - std::log(std::abs(z - w)) -
                          0.5 * std::log(std::abs(s.derivative().eval(z))) -
                          0.5 * std::log(std::abs(s.derivative().eval(w)));
    CHECK(std::abs(cphi.H(z, w) - direct) < 1e-12);
    CHECK(std::abs(cphi.H(z, z) - cphi.H(z, z + 1e-7)) < 1e-6);
  }
  CHECK_THROWS_AS(HarmonicCocycle(ConformalMap::series(Series({0.0, 1.0, -1.0}), 1.0)), DegenerateError);
}

TEST_CASE("cocycle derivatives match finite differences") {
  const ConformalMap phi = ConformalMap::series(Series({0.05, 0.6, 0.1, -0.05}), 1.0);
  const HarmonicCocycle c(phi);
  const Complex a(0.2, 0.1), b(-0.3, 0.2);
  const double h = 1e-4;
  // d_z = (d_x - i d_y)/2 in the first slot
  auto Hf = [&](Complex z, Complex w) { return c.H(z, w); };
  const Complex dx = (Hf(a + h, b) - Hf(a - h, b)) / (2 * h);
  const Complex dy = (Hf(a + Complex(0, h), b) - Hf(a - Complex(0, h), b)) / (2 * h);
  CHECK(std::abs(c.derivative(a, 1, 0, b, 0, 0) - 0.5 * (dx - Complex(0, 1) * dy)) < 1e-7);
  CHECK(std::abs(c.derivative(a, 0, 1, b, 0, 0) - 0.5 * (dx + Complex(0, 1) * dy)) < 1e-7);
  // mixed d_z d_w
  auto Dz = [&](Complex w) {
    const Complex ex = (Hf(a + h, w) - Hf(a - h, w)) / (2 * h);
    const Complex ey = (Hf(a + Complex(0, h), w) - Hf(a - Complex(0, h), w)) / (2 * h);
    return 0.5 * (ex - Complex(0, 1) * ey);
  };
  const Complex mx = (Dz(b + h) - Dz(b - h)) / (2 * h);
  const Complex my = (Dz(b + Complex(0, h)) - Dz(b - Complex(0, h))) / (2 * h);
  CHECK(std::abs(c.derivative(a, 1, 0, b, 1, 0) - 0.5 * (mx - Complex(0, 1) * my)) < 1e-6);
  CHECK(c.derivative(a, 1, 0, b, 0, 1) == Complex(0.0));
  // tilde variant differs by the log phi' term
  const Complex t = c.derivative(a, 1, 0, b, 0, 0, true) - c.derivative(a, 1, 0, b, 0, 0);
  const Series lp = log(taylor_at(phi, a, 2).derivative(), 1);
  CHECK(std::abs(t - 0.25 * lp[1]) < 1e-13);
}

TEST_CASE("Green contraction values") {
  const Point a{0.1, 0.0, 0.0}, b{-0.4, 0.0, 0.0};
  const Complex v = contraction_value(delta(a), delta(b), Kernel::green(3));
  CHECK(std::abs(v - 1.0 / (2 * kPi)) < 1e-15);
  CHECK(std::abs(contraction_value(delta(a), delta(b), Kernel::green(3, true)) - 2.0) < 1e-14);
  CHECK_THROWS_AS(contraction_value(delta(a), delta(a), Kernel::green(3)), SeparationError);
  const Point p{0.3, 0.1}, q{-0.2, 0.25};
  CHECK(std::abs(contraction_value(delta(p), delta(q), Kernel::green(2)) - green_kernel(2, p, q)) < 1e-15);

  Rng rng(5);
  for (int d : {2, 3, 4}) {
    for (int trial = 0; trial < 6; ++trial) {
      const Point x = rng.in_ball(d, 0.8), y = rng.in_ball(d, 0.8);
      if (dist(x, y) < 0.3) continue;
      MultiIndex al(d), be(d);
      for (int k = 0; k < 2; ++k) {
        al = al + MultiIndex::unit(d, rng.integer(0, d - 1), rng.integer(0, 1));
        be = be + MultiIndex::unit(d, rng.integer(0, d - 1), rng.integer(0, 1));
      }
      const auto T = HarmonicDistribution::derivative_delta(x, al, 4);
      const auto S = HarmonicDistribution::derivative_delta(y, be, 4);
      const Complex v1 = contraction_value(T, S, Kernel::green(d));
      const Complex v2 = contraction_value(S, T, Kernel::green(d));
      CHECK(std::abs(v1 - v2) < 1e-12);
      // pairing convention: T acts as (-1)^{|al|} d^al, so the kernel value
      // is (-1)^{|al|+|be|} d^al d^be G
      CHECK(std::abs(v1.real() - fd_green(d, x, y, al, be)) < 1e-4 * std::max(1.0, std::abs(v1)));
      CHECK(std::abs(v1.imag()) < 1e-15);
    }
  }
}

TEST_CASE("d = 2 Wirtinger contractions") {
  const Complex a(0.3, 0.1), b(-0.2, -0.3);
  // normalized d_z d_w: 1/(a-b)^2
  const Complex v = contraction_value(dz(a, 1), dz(b, 1), Kernel::green(2, true));
  CHECK(std::abs(v - 1.0 / ((a - b) * (a - b))) < 1e-13);
  CHECK(std::abs(contraction_value(dz(a, 1), dz(b, 0, 1), Kernel::green(2))) == 0.0);
  CHECK(std::abs(contraction_value(dz(a, 2), dz(b, 0, 1), Kernel::green(2))) == 0.0);
  const Complex vb = contraction_value(dz(a, 0, 1), dz(b, 0, 1), Kernel::green(2, true));
  CHECK(std::abs(vb - std::conj(1.0 / ((a - b) * (a - b)))) < 1e-13);
  // pushed-forward inputs give phi'(a) psi'(b) / (phi(a) - psi(b))^2
  const ConformalMap phi = ConformalMap::series(Series({0.4, 0.4, 0.05}), 1.0);
  const ConformalMap psi = ConformalMap::series(Series({-0.4, 0.3, -0.04}), 1.0);
  const Complex w = contraction_value(pushforward(phi, dz(a, 1)), pushforward(psi, dz(b, 1)), Kernel::green(2, true));
  const Complex expect = phi.coeffs().derivative().eval(a) * psi.coeffs().derivative().eval(b) /
                         std::pow(apply_map(phi, a) - apply_map(psi, b), 2);
  CHECK(std::abs(w - expect) < 1e-13);
  // corrected kernel keeps holomorphic and antiholomorphic parts apart
  auto c = std::make_shared<const HarmonicCocycle>(phi);
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 3; ++m) {
      CHECK(contraction_value(dz(a, n), dz(b, 0, m), Kernel::corrected_green(c)) == Complex(0.0));
    }
  }
  // Cartesian and Wirtinger inputs agree
  const auto T = HarmonicDistribution::derivative_delta(to_point(a), MultiIndex{1, 1}, 4);
  const auto S = HarmonicDistribution::derivative_delta(to_point(b), MultiIndex{0, 1}, 4);
  CHECK(std::abs(contraction_value(T, S, Kernel::green(2)) - contraction_value(to_wirtinger(T), to_wirtinger(S), Kernel::green(2))) < 1e-14);
  CHECK(std::abs(contraction_value(T, S, Kernel::green(2)).real() - fd_green(2, to_point(a), to_point(b), MultiIndex{1, 1}, MultiIndex{0, 1})) < 1e-5);
}

TEST_CASE("pushforward") {
  // d = 3 ball map: delta_0 -> r^{1/2} delta_b
  const DiskEmbedding B = make_ball(std::vector<double>{0.2, -0.1, 0.3}, 0.25);
  const auto P = pushforward(B, delta(Point{0.0, 0.0, 0.0}));
  REQUIRE(P.points().size() == 1);
  CHECK(std::abs(P.points()[0].coef - 0.5) < 1e-15);
  CHECK(dist(P.points()[0].a, Point{0.2, -0.1, 0.3}) < 1e-15);
  // ball maps scale derivatives by r^{|alpha|}
  const auto Q = pushforward(B, HarmonicDistribution::derivative_delta(Point{0.1, 0.0, 0.0}, MultiIndex{1, 1, 0}, 4));
  CHECK(std::abs(Q.points()[0].coef - std::pow(0.25, 2.5)) < 1e-15);
  Rng rng(9);
  const ConformalMap w3 = random_word_embedding(rng, 3);
  CHECK_THROWS_AS(pushforward(w3, HarmonicDistribution::derivative_delta(Point{0.1, 0.0, 0.0}, MultiIndex{1, 0, 0}, 4)),
                  UnsupportedError);
  // d = 2: d_z delta_a -> phi'(a) d_z delta_phi(a)
  const ConformalMap phi = random_univalent_series(rng);
  const Complex a(0.2, -0.3);
  const auto R = pushforward(phi, dz(a, 1));
  REQUIRE(R.points().size() == 1);
  CHECK(std::abs(R.points()[0].coef - phi.coeffs().derivative().eval(a)) < 1e-14);
  CHECK(std::abs(to_complex(R.points()[0].a) - apply_map(phi, a)) < 1e-15);

  // functoriality on exponentials
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 4; ++trial) {
      ConformalMap f, g;
      HarmonicDistribution T;
      if (d == 2) {
        f = random_univalent_series(rng);
        g = random_univalent_series(rng);
        T = random_zero_mean_2d(rng, 0.7, 3);
      } else {
        f = random_word_embedding(rng, 3);
        g = random_word_embedding(rng, 3);
        T = random_delta(rng, 3, 0.8, 4);
      }
      const auto lhs = pushforward(compose(f, g), T);
      const auto rhs = pushforward(f, pushforward(g, T));
      for (int s = 0; s < 4; ++s) {
        const auto k = rng.null_vector(d);
        const Complex l = apply_to_exponential(lhs, k), r = apply_to_exponential(rhs, k);
        CHECK(std::abs(l - r) <= 1e-10 * std::max(1.0, std::abs(l)));
      }
    }
  }
}

TEST_CASE("pushforward of Wirtinger deltas matches the chain rule on test functions") {
  // (W T)(u) = T(u o phi) for T = d_z^n delta_a and u = exp(k.x), k null
  Rng rng(14);
  const ConformalMap phi = random_univalent_series(rng, 5, 0.5);
  for (int n = 1; n <= 4; ++n) {
    const Complex a = rng.in_disk(0.6);
    const auto T = dz(a, n);
    const auto W = pushforward(phi, T);
    const auto k = rng.null_vector(2, 0.5, 1.0);
    // u(z) = exp(kz z + kzb zbar) with k1 x + k2 y = kz z + kzb zbar and k null -> one of them 0
    const Complex kz = 0.5 * (k[0] - Complex(0, 1) * k[1]);
    const Complex kzb = 0.5 * (k[0] + Complex(0, 1) * k[1]);
    // u o phi is holomorphic or antiholomorphic; take d_z^n of exp(kz phi(z)) numerically via series
    Series g = taylor_at(phi, a, n);
    Series e;
    if (std::abs(kzb) < 1e-12) {
      g = Complex(kz) * g;
      e = exp(g, n);
      const double fact = std::tgamma(n + 1.0);
      const Complex expect = (n % 2 ? -1.0 : 1.0) * fact * e[n];
      CHECK(std::abs(apply_to_exponential(W, k) - expect) < 1e-10 * std::max(1.0, std::abs(expect)));
    } else {
      CHECK(std::abs(apply_to_exponential(W, k)) < 1e-12 * std::max(1.0, std::abs(std::exp(kzb * std::conj(apply_map(phi, a))))));
    }
  }
}

TEST_CASE("vacuum state and Wick matchings") {
  CHECK(perfect_matchings(6).size() == 15);
  CHECK(perfect_matchings(5).empty());
  CHECK(perfect_matchings(0).size() == 1);
  const Point a{0.1, 0.2, 0.0}, b{-0.3, 0.0, 0.1}, c{0.0, -0.5, 0.2}, e{0.4, 0.4, -0.3};
  const Kernel G = Kernel::green(3);
  auto g = [&](const Point& x, const Point& y) { return green_kernel(3, x, y); };
  CHECK(vacuum_state(Observable::word(3, {delta(a)}), G).value == Complex(0.0));
  CHECK(std::abs(vacuum_state(Observable::word(3, {delta(a), delta(b)}), G).value - g(a, b)) < 1e-15);
  const StateValue four = vacuum_state(Observable::word(3, {delta(a), delta(b), delta(c), delta(e)}), G);
  CHECK(four.matchings == 3);
  CHECK(std::abs(four.value - (g(a, b) * g(c, e) + g(a, c) * g(b, e) + g(a, e) * g(b, c))) < 1e-14);
  CHECK(vacuum_state(Observable::scalar(3, 2.5), G).value == Complex(2.5));
}

TEST_CASE("normalize") {
  const Point a{0.1, 0.2, 0.0}, b{-0.3, 0.0, 0.1};
  Observable F = Observable::scalar(3, 2.0) + Observable::word(3, {delta(a), delta(b)}, 0.5);
  const Observable N = normalize(F, Direction::Forward);
  CHECK(N.terms()[0].coef == Complex(2.0));
  CHECK(std::abs(N.terms()[1].coef - 0.5 * 4.0 * kPi) < 1e-14);
  const Observable back = normalize(N, Direction::Inverse);
  CHECK(std::abs(back.terms()[1].coef - 0.5) < 1e-15);
  const Observable N2 = normalize(Observable::word(2, {dz(0.1, 1)}), Direction::Forward);
  CHECK(std::abs(N2.terms()[0].coef - Complex(0, std::sqrt(4 * kPi))) < 1e-14);
}

namespace {

// Literal injection-pair formula for two factors:
// sum_p 1/p! sum_{C1: [p] -> [n1]} sum_{C2: [p] -> [n2]} prod K(w1[C1 k], w2[C2 k]) * rest
Observable literal_two_factor(const std::vector<HarmonicDistribution>& w1, const std::vector<HarmonicDistribution>& w2,
                              const Kernel& K) {
  const int n1 = static_cast<int>(w1.size()), n2 = static_cast<int>(w2.size());
  Observable out(K.d);
  std::vector<int> c1, c2;
  std::function<void(int)> injections;
  double pfact = 1.0;
  for (int p = 0; p <= std::min(n1, n2); ++p) {
    if (p > 0) pfact *= p;
    std::vector<std::vector<int>> inj1, inj2;
    std::function<void(std::vector<int>&, int, std::vector<std::vector<int>>&)> gen =
        [&](std::vector<int>& cur, int n, std::vector<std::vector<int>>& acc) {
          if (static_cast<int>(cur.size()) == p) {
            acc.push_back(cur);
            return;
          }
          for (int i = 0; i < n; ++i) {
            if (std::find(cur.begin(), cur.end(), i) != cur.end()) continue;
            cur.push_back(i);
            gen(cur, n, acc);
            cur.pop_back();
          }
        };
    std::vector<int> cur;
    gen(cur, n1, inj1);
    gen(cur, n2, inj2);
    for (const auto& i1 : inj1) {
      for (const auto& i2 : inj2) {
        Complex w = 1.0 / pfact;
        for (int k = 0; k < p; ++k) w *= contraction_value(w1[i1[k]], w2[i2[k]], K);
        ObservableTerm t{w, {}};
        for (int i = 0; i < n1; ++i) {
          if (std::find(i1.begin(), i1.end(), i) == i1.end()) t.word.push_back(w1[i]);
        }
        for (int i = 0; i < n2; ++i) {
          if (std::find(i2.begin(), i2.end(), i) == i2.end()) t.word.push_back(w2[i]);
        }
        out.add(std::move(t));
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("rho") {
  Rng rng(10);
  // unit law
  const Observable F = Observable::word(3, {random_delta(rng, 3, 0.8, 4), random_delta(rng, 3, 0.8, 4)}, 0.7) +
                       Observable::scalar(3, 1.5);
  const Observable U = rho(identity_configuration(3), {F});
  const auto ru = compare_observables(U, F, 1);
  CHECK(ru.abs <= 1e-15 * std::max(1.0, ru.scale));

  // two deltas in two balls
  const auto c = make_configuration(3, {make_ball(std::vector<double>{-0.4, 0.1, 0.0}, 0.3),
                                        make_ball(std::vector<double>{0.45, 0.0, 0.1}, 0.2)});
  const Point a{0.1, 0.2, -0.1}, b{-0.3, 0.1, 0.2};
  const Observable R = rho(c, {Observable::word(3, {delta(a)}), Observable::word(3, {delta(b)})});
  const Point pa = apply_map(c.embeddings[0].map, a), pb = apply_map(c.embeddings[1].map, b);
  const double w = std::sqrt(0.3 * 0.2);
  const Observable expect = Observable::word(3, {delta(pa), delta(pb)}, w) + Observable::scalar(3, w * green_kernel(3, pa, pb));
  const auto r = compare_observables(R, expect, 2);
  CHECK(r.abs <= 1e-13 * r.scale);
  CHECK(std::abs(vacuum_state(R, Kernel::green(3)).value - vacuum_state(Observable::word(3, {delta(a), delta(b)}, 1.0), Kernel::green(3)).value) > 0.0);
  CHECK_THROWS_AS(rho(c, {Observable::word(3, {delta(a)})}), IndexError);

  // d = 2 needs zero-mean slots
  const auto c2 = make_configuration(2, {make_ball(std::vector<double>{-0.4, 0.0}, 0.3), make_ball(std::vector<double>{0.4, 0.0}, 0.3)});
  CHECK_THROWS_AS(rho(c2, {Observable::word(2, {delta(Point{0.1, 0.0})}), Observable::word(2, {dz(0.1, 1)})}), ZeroMeanError);
}

TEST_CASE("rho cross contractions equal the injection-pair formula") {
  Rng rng(19);
  for (int trial = 0; trial < 3; ++trial) {
    const auto c = random_ball_configuration(rng, 3, 2);
    std::vector<HarmonicDistribution> w1, w2;
    for (int i = 0; i < 3; ++i) w1.push_back(random_delta(rng, 3, 0.8, 4));
    for (int i = 0; i < 2 + trial % 2; ++i) w2.push_back(random_delta(rng, 3, 0.8, 4));
    const Observable R = rho(c, {Observable::word(3, w1), Observable::word(3, w2)});
    std::vector<HarmonicDistribution> p1, p2;
    for (const auto& T : w1) p1.push_back(pushforward(c.embeddings[0].map, T));
    for (const auto& T : w2) p2.push_back(pushforward(c.embeddings[1].map, T));
    const Observable L = literal_two_factor(p1, p2, Kernel::green(3));
    const auto r = compare_observables(R, L, 3);
    CHECK(r.abs <= 1e-12 * r.scale);
    CHECK(std::abs(vacuum_state(R, Kernel::green(3)).value - vacuum_state(L, Kernel::green(3)).value) < 1e-12);
  }
}

TEST_CASE("normalized rho is conjugation by the normalization") {
  Rng rng(23);
  for (int d : {2, 3}) {
    const auto c = random_ball_configuration(rng, d, 2);
    std::vector<Observable> F, NF;
    for (int i = 0; i < 2; ++i) {
      std::vector<HarmonicDistribution> w;
      for (int k = 0; k < 2; ++k) w.push_back(d == 2 ? random_zero_mean_2d(rng) : random_delta(rng, 3, 0.8, 4));
      F.push_back(Observable::word(d, w));
      NF.push_back(normalize(F.back(), Direction::Forward));
    }
    const Observable lhs = rho(c, F, {.normalized = true});
    const Observable rhs = normalize(rho(c, NF), Direction::Inverse);
    const auto r = compare_observables(lhs, rhs, 4);
    CHECK(r.abs <= 1e-12 * r.scale);
  }
}

TEST_CASE("rho is compatible with operad composition") {
  Rng rng(29);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto outer = random_ball_configuration(rng, d, 2);
      const auto inner = random_ball_configuration(rng, d, 2);
      const int i = rng.integer(1, 2);
      auto slot = [&] {
        std::vector<HarmonicDistribution> w{d == 2 ? random_zero_mean_2d(rng) : random_delta(rng, d, 0.8, 4)};
        return Observable::word(d, w);
      };
      std::vector<Observable> fin{slot(), slot()}, fout{slot(), slot()};
      std::vector<Observable> all;
      for (int k = 1; k <= 2; ++k) {
        if (k == i) {
          all.insert(all.end(), fin.begin(), fin.end());
        } else {
          all.push_back(fout[k - 1]);
        }
      }
      const Observable lhs = rho(compose_at(outer, i, inner), all);
      std::vector<Observable> nested = fout;
      nested[i - 1] = rho(inner, fin);
      const Observable rhs = rho(outer, nested);
      const auto r = compare_observables(lhs, rhs, 6);
      CHECK(r.abs <= 1e-10 * std::max(1.0, r.scale));
    }
  }
}

TEST_CASE("conformal invariance of d = 3 correlators") {
  Rng rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    const ConformalMap phi = random_word_embedding(rng, 3);
    std::vector<HarmonicDistribution> w;
    for (int k = 0; k < 4; ++k) w.push_back(random_delta(rng, 3, 0.8, 4));
    const Observable F = Observable::word(3, w, 0.8);
    const auto c = make_configuration(3, {make_embedding(phi)});
    const Complex lhs = vacuum_state(rho(c, {F}), Kernel::green(3)).value;
    const Complex rhs = vacuum_state(F, Kernel::green(3)).value;
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("anomaly check") {
  const Observable F = Observable::word(2, {dz(Complex(0.2), 1), dz(Complex(-0.3), 1)});
  const AnomalyReport id = anomaly_check(ConformalMap::identity(2), F);
  CHECK(id.lhs == id.rhs);
  const AnomalyReport q = anomaly_check(ConformalMap::series(Series({0.0, 1.0, 0.1}), 1.0), F);
  CHECK(q.residual <= 1e-8);
  CHECK(std::abs(q.uncorrected - q.rhs) > 1e-5);
  // the uncorrected gap is the cocycle pairing
  const auto cocycle = std::make_shared<const HarmonicCocycle>(ConformalMap::series(Series({0.0, 1.0, 0.1}), 1.0));
  const Complex gap = contraction_value(F.terms()[0].word[0], F.terms()[0].word[1], Kernel::cocycle_kernel(cocycle, true));
  CHECK(std::abs((q.lhs - q.uncorrected) - gap) < 1e-12);
  Rng rng(37);
  for (int trial = 0; trial < 3; ++trial) {
    const ConformalMap m = ConformalMap::mobius_series(random_disk_mobius(rng), 40);
    const Observable G = Observable::word(2, {random_zero_mean_2d(rng), random_zero_mean_2d(rng)});
    const AnomalyReport r = anomaly_check(m, G);
    CHECK(std::abs(r.rhs - r.uncorrected) <= 1e-9 * std::max(1.0, std::abs(r.uncorrected)));
  }
  CHECK_THROWS_AS(anomaly_check(ConformalMap::identity(2), Observable::word(2, {delta(Point{0.1, 0.0})})), ZeroMeanError);
}
