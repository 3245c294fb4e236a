#include <doctest.h>

#include "confalg/errors.hpp"
#include "confalg/harmonic.hpp"
#include "confalg/records.hpp"
#include "confalg/samplers.hpp"

using namespace confalg;

TEST_CASE("map records round-trip bit for bit") {
  Rng rng(21);
  for (int d : {2, 3, 4}) {
    const ConformalMap f = random_word_embedding(rng, d);
    const std::string text = to_json(f).dump();
    const ConformalMap g = map_from_json(Json::parse(text));
    CHECK(to_json(g).dump() == text);
    const Point x = rng.in_ball(d, 0.5);
    const Point fx = apply_map(f, x), gx = apply_map(g, x);
    for (int i = 0; i < d; ++i) CHECK(fx[i] == gx[i]);
  }
  const ConformalMap s = random_univalent_series(rng);
  const Json js = to_json(s);
  CHECK(js["dim"] == 2);
  CHECK(js.contains("series"));
  const ConformalMap t = map_from_json(Json::parse(js.dump()));
  CHECK(t.radius() == s.radius());
  CHECK(t.injectivity_certified() == s.injectivity_certified());
  for (int k = 0; k <= s.coeffs().order(); ++k) CHECK(t.coeffs()[k] == s.coeffs()[k]);

  const Json dil = Json::parse(R"({"dim": 3, "word": [{"kind": "dilation", "R": 0.5}]})");
  CHECK(apply_map(map_from_json(dil), Point{0.2, 0.0, 0.0})[0] == doctest::Approx(0.1));
}

TEST_CASE("malformed records raise parse errors") {
  for (const char* text : {R"({"word": []})", R"({"dim": 3, "word": [{"kind": "boost"}]})",
                           R"({"dim": 3, "word": [{"kind": "translation", "a": [0.1]}]})",
                           R"({"dim": 3, "series": [[0, 0], [1, 0]], "radius": 1})", R"({"dim": "two"})"}) {
    CHECK_THROWS_AS(map_from_json(Json::parse(text)), ParseError);
  }
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"({"d": 2, "terms": [{"alpha": [1, 0], "num": 1, "den": 0}]})")),
                  ParseError);
  CHECK_THROWS_AS(distribution_from_json(Json::parse(R"({"d": 2})")), ParseError);
  CHECK_THROWS_AS(observable_from_json(Json::parse(R"({"d": 2, "terms": [{"word": 3}]})")), ParseError);
}

TEST_CASE("configuration records") {
  Rng rng(22);
  const DiskConfiguration c = random_ball_configuration(rng, 3, 3);
  const Json j = to_json(c);
  CHECK(j["arity"] == 3);
  const DiskConfiguration c2 = configuration_from_json(Json::parse(j.dump()));
  CHECK(c2.arity() == 3);
  CHECK(to_json(c2).dump() == j.dump());
  // overlapping balls are rejected by the library, not the parser
  const Json bad = Json::parse(R"({"arity": 2, "embeddings": [
      {"dim": 2, "word": [{"kind": "dilation", "R": 0.4}]},
      {"dim": 2, "word": [{"kind": "dilation", "R": 0.4}, {"kind": "translation", "a": [0.1, 0.0]}]}]})");
  CHECK_THROWS_AS(configuration_from_json(bad), DisjointnessError);
  CHECK_THROWS_AS(configuration_from_json(Json::parse(R"({"arity": 1, "embeddings": []})")), ParseError);
}

TEST_CASE("polynomial records keep exact coefficients") {
  Poly p(3);
  p.add_term(MultiIndex{2, 0, 0}, make_rational(3, 7));
  p.add_term(MultiIndex{0, 2, 0}, make_rational(-3, 7));
  Rational big(Integer("123456789012345678901234567890"), Integer(11));
  big.canonicalize();
  p.add_term(MultiIndex{0, 1, 1}, big);
  const Json j = to_json(p);
  CHECK(j["n"] == 2);
  const Poly q = poly_from_json(Json::parse(j.dump()));
  CHECK(q.terms() == p.terms());
  CHECK(j.dump().find("\"123456789012345678901234567890\"") != std::string::npos);

  CPoly c(harmonic_nullspace(2, 3)[0], harmonic_nullspace(2, 3)[1]);
  const CPoly c2 = cpoly_from_json(Json::parse(to_json(c).dump()));
  CHECK(c2.re.terms() == c.re.terms());
  CHECK(c2.im.terms() == c.im.terms());
}

TEST_CASE("distribution and observable records") {
  const HarmonicDistribution T = HarmonicDistribution::from_points(
      3, {PointTerm{{0.1, 0.2, 0.3}, MultiIndex{1, 0, 0}, Complex(2.0), false},
          PointTerm{{-0.2, 0.0, 0.1}, MultiIndex{0, 0, 0}, Complex(0.5, -1.0), false}},
      12);
  const HarmonicDistribution T2 = distribution_from_json(Json::parse(to_json(T).dump()));
  CHECK(T2.truncation() == 12);
  REQUIRE(T2.points().size() == 2);
  CHECK(T2.points()[1].coef == Complex(0.5, -1.0));
  for (int n = 0; n <= 5; ++n) {
    CHECK(T2.component(n).re.terms() == T.component(n).re.terms());
    CHECK(T2.component(n).im.terms() == T.component(n).im.terms());
  }

  const HarmonicDistribution W = HarmonicDistribution::wirtinger_delta(Complex(0.1, 0.2), 2, 0, 8);
  const HarmonicDistribution W2 = distribution_from_json(Json::parse(to_json(W).dump()));
  CHECK(W2.points()[0].wirtinger);

  std::vector<CPoly> seq{CPoly(Poly::monomial(MultiIndex{0, 0}, Rational(1))), CPoly(harmonic_nullspace(2, 1)[0])};
  const HarmonicDistribution S = HarmonicDistribution::from_sequence(2, seq, Certificate{2.0, 0.5});
  const HarmonicDistribution S2 = distribution_from_json(Json::parse(to_json(S).dump()));
  REQUIRE(S2.certificate());
  CHECK(S2.certificate()->rho == 0.5);
  CHECK(S2.sequence().size() == 2);

  const HarmonicDistribution U = HarmonicDistribution::delta_at(Point{0.5, -0.3, 0.0}, 12);
  const Observable F = Observable::word(3, {T, U}, Complex(0.0, 2.0)) + Observable::scalar(3, 1.5);
  const Observable F2 = observable_from_json(Json::parse(to_json(F).dump()));
  CHECK(to_json(F2).dump() == to_json(F).dump());
  const Kernel K = Kernel::green(3);
  CHECK(vacuum_state(F2, K).value == vacuum_state(F, K).value);
}

TEST_CASE("check records") {
  CheckRecord r{"x", Complex(1.0), Complex(1.0, 2.0), 2.0, 1e-6, false};
  const Json j = to_json(r);
  CHECK(j["lhs"] == 1.0);
  CHECK(j["rhs"].is_array());
  CHECK(j["pass"] == false);
  CHECK(to_json(StateValue{Complex(0.25), 3}).dump() == R"({"matchings":3,"value":0.25})");
}
