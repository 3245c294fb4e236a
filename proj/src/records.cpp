#include "confalg/records.hpp"

#include <limits>

#include "confalg/errors.hpp"

namespace confalg {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail("expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const Json& j) {
  if (!j.is_number()) fail("expected a number");
  return j.get<double>();
}

int integer(const Json& j) {
  if (!j.is_number_integer()) fail("expected an integer");
  return j.get<int>();
}

Point point(const Json& j) {
  if (!j.is_array()) fail("expected an array of numbers");
  Point p;
  for (const Json& v : j) p.push_back(number(v));
  return p;
}

MultiIndex multi_index(const Json& j) {
  if (!j.is_array() || j.empty() || j.size() > static_cast<std::size_t>(kMaxDim)) fail("expected a multi-index");
  MultiIndex m(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const int k = integer(j[i]);
    if (k < 0 || k > 64) fail("multi-index entry out of range");
    m.set(static_cast<int>(i), k);
  }
  return m;
}

Json index_json(const MultiIndex& m) {
  Json a = Json::array();
  for (int i = 0; i < m.dim(); ++i) a.push_back(m[i]);
  return a;
}

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<long>(z.get_si());
  return to_string(z);
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) fail("bad integer string");
    return z;
  }
  fail("expected an integer or decimal string");
}

Json terms_json(const Poly& p) {
  Json t = Json::array();
  for (const auto& [m, c] : p.terms()) {
    t.push_back({{"alpha", index_json(m)}, {"num", integer_json(c.get_num())}, {"den", integer_json(c.get_den())}});
  }
  return t;
}

Poly terms_from_json(int d, const Json& t) {
  if (!t.is_array()) fail("terms must be an array");
  Poly p(d);
  for (const Json& term : t) {
    const MultiIndex m = multi_index(field(term, "alpha"));
    if (m.dim() != d) fail("multi-index has the wrong length");
    const Integer den = integer_from_json(field(term, "den"));
    if (den == 0) fail("zero denominator");
    Rational q(integer_from_json(field(term, "num")), den);
    q.canonicalize();
    p.add_term(m, q);
  }
  return p;
}

int dim_of(const Json& j, const char* key) {
  const int d = integer(field(j, key));
  if (d < 2 || d > kMaxDim) fail("dimension out of range");
  return d;
}

Json generator_json(const Generator& g) {
  switch (g.kind) {
    case Generator::Kind::Translation:
      return {{"kind", "translation"}, {"a", g.vec}};
    case Generator::Kind::Orthogonal:
      return {{"kind", "orthogonal"}, {"matrix", g.matrix}};
    case Generator::Kind::Dilation:
      return {{"kind", "dilation"}, {"R", g.R}};
    case Generator::Kind::SpecialConformal:
      return {{"kind", "special_conformal"}, {"b", g.vec}};
  }
  return {};
}

Generator generator_from_json(int d, const Json& j) {
  const Json& k = field(j, "kind");
  if (!k.is_string()) fail("generator kind must be a string");
  const std::string kind = k.get<std::string>();
  auto vec = [&](const char* key) {
    Point p = point(field(j, key));
    if (static_cast<int>(p.size()) != d) fail("generator vector has the wrong length");
    return p;
  };
  if (kind == "translation") return Generator::translation(vec("a"));
  if (kind == "special_conformal") return Generator::special_conformal(vec("b"));
  if (kind == "dilation") return Generator::dilation(number(field(j, "R")));
  if (kind == "orthogonal") {
    Point m = point(field(j, "matrix"));
    if (static_cast<int>(m.size()) != d * d) fail("orthogonal matrix has the wrong size");
    return Generator::orthogonal(d, std::move(m));
  }
  fail("unknown generator kind \"" + kind + "\"");
}

}  // namespace

Json complex_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2) return {number(j[0]), number(j[1])};
  fail("expected a number or [re, im]");
}

Json to_json(const ConformalMap& f) {
  if (f.is_series()) {
    Json s = Json::array();
    const Series& c = f.coeffs();
    for (int k = 0; k <= c.order(); ++k) s.push_back(Json::array({c[k].real(), c[k].imag()}));
    Json j = {{"dim", 2}, {"series", s}, {"radius", f.radius()}};
    if (f.injectivity_certified()) j["certified"] = true;
    return j;
  }
  Json w = Json::array();
  for (const Generator& g : f.generators()) w.push_back(generator_json(g));
  return {{"dim", f.dim()}, {"word", w}};
}

ConformalMap map_from_json(const Json& j) {
  const int d = dim_of(j, "dim");
  if (j.contains("series")) {
    if (d != 2) fail("series maps need dim 2");
    const Json& s = j["series"];
    if (!s.is_array() || s.empty()) fail("series must be a non-empty array");
    std::vector<Complex> c;
    for (const Json& v : s) c.push_back(complex_from_json(v));
    const double r = number(field(j, "radius"));
    ConformalMap f = ConformalMap::series(Series(std::move(c)), r);
    if (j.contains("certified")) {
      if (!j["certified"].is_boolean()) fail("certified must be a boolean");
      f = f.with_certificate(j["certified"].get<bool>());
    }
    return f;
  }
  const Json& w = field(j, "word");
  if (!w.is_array()) fail("word must be an array");
  std::vector<Generator> gens;
  for (const Json& g : w) gens.push_back(generator_from_json(d, g));
  return ConformalMap::word(d, std::move(gens));
}

Json to_json(const DiskConfiguration& c) {
  Json e = Json::array();
  for (const DiskEmbedding& x : c.embeddings) e.push_back(to_json(x.map));
  return {{"arity", c.arity()}, {"dim", c.dim}, {"embeddings", e}};
}

DiskConfiguration configuration_from_json(const Json& j, const SamplingConfig& cfg) {
  const int n = integer(field(j, "arity"));
  const Json& e = field(j, "embeddings");
  if (!e.is_array() || static_cast<int>(e.size()) != n) fail("arity does not match the embedding list");
  std::vector<DiskEmbedding> emb;
  for (const Json& m : e) emb.push_back(make_embedding(map_from_json(m), cfg));
  int d = 0;
  if (j.contains("dim")) {
    d = dim_of(j, "dim");
  } else if (!emb.empty()) {
    d = emb.front().map.dim();
  } else {
    fail("empty configuration needs \"dim\"");
  }
  for (const DiskEmbedding& x : emb) {
    if (x.map.dim() != d) fail("embedding dimensions differ");
  }
  return make_configuration(d, std::move(emb), cfg);
}

Json to_json(const Poly& p) { return {{"d", p.dim()}, {"n", p.degree()}, {"terms", terms_json(p)}}; }

Poly poly_from_json(const Json& j) {
  const int d = dim_of(j, "d");
  Poly p = terms_from_json(d, field(j, "terms"));
  if (j.contains("n") && integer(j["n"]) != p.degree()) fail("declared degree does not match the terms");
  return p;
}

Json to_json(const CPoly& p) {
  Json j = to_json(p.re);
  j["n"] = p.degree();
  if (!p.im.is_zero()) j["imag_terms"] = terms_json(p.im);
  return j;
}

CPoly cpoly_from_json(const Json& j) {
  const int d = dim_of(j, "d");
  CPoly p(terms_from_json(d, field(j, "terms")), j.contains("imag_terms") ? terms_from_json(d, j["imag_terms"]) : Poly(d));
  if (j.contains("n") && integer(j["n"]) != p.degree()) fail("declared degree does not match the terms");
  return p;
}

Json to_json(const HarmonicDistribution& T) {
  Json j = {{"d", T.dim()}, {"truncation", T.truncation()}};
  if (T.has_points()) {
    Json pts = Json::array();
    for (const PointTerm& t : T.points()) {
      Json x = {{"a", t.a}, {"alpha", index_json(t.alpha)}, {"coef", complex_json(t.coef)}};
      if (t.wirtinger) x["wirtinger"] = true;
      pts.push_back(x);
    }
    j["points"] = pts;
  } else {
    Json seq = Json::array();
    for (const CPoly& t : T.sequence()) seq.push_back(to_json(t));
    j["sequence"] = seq;
  }
  if (T.certificate()) j["certificate"] = {{"C", T.certificate()->C}, {"rho", T.certificate()->rho}};
  return j;
}

HarmonicDistribution distribution_from_json(const Json& j) {
  const int d = dim_of(j, "d");
  const int trunc = j.contains("truncation") ? integer(j["truncation"]) : kDefaultOrder;
  if (trunc < 0) fail("negative truncation");
  if (j.contains("points")) {
    const Json& pts = j["points"];
    if (!pts.is_array()) fail("points must be an array");
    std::vector<PointTerm> terms;
    for (const Json& x : pts) {
      PointTerm t;
      t.a = point(field(x, "a"));
      if (static_cast<int>(t.a.size()) != d) fail("point has the wrong dimension");
      t.alpha = x.contains("alpha") ? multi_index(x["alpha"]) : MultiIndex(d);
      t.coef = x.contains("coef") ? complex_from_json(x["coef"]) : Complex(1.0);
      if (x.contains("wirtinger")) {
        if (!x["wirtinger"].is_boolean()) fail("wirtinger must be a boolean");
        t.wirtinger = x["wirtinger"].get<bool>();
      }
      if (t.alpha.dim() != (t.wirtinger ? 2 : d)) fail("alpha has the wrong length");
      terms.push_back(std::move(t));
    }
    return HarmonicDistribution::from_points(d, std::move(terms), trunc);
  }
  const Json& seq = field(j, "sequence");
  if (!seq.is_array()) fail("sequence must be an array");
  std::vector<CPoly> s;
  for (const Json& p : seq) {
    s.push_back(cpoly_from_json(p));
    if (s.back().dim() != d) fail("sequence polynomial has the wrong dimension");
  }
  std::optional<Certificate> cert;
  if (j.contains("certificate")) cert = Certificate{number(field(j["certificate"], "C")), number(field(j["certificate"], "rho"))};
  return HarmonicDistribution::from_sequence(d, std::move(s), cert);
}

Json to_json(const Observable& F) {
  Json t = Json::array();
  for (const ObservableTerm& term : F.terms()) {
    Json w = Json::array();
    for (const HarmonicDistribution& T : term.word) w.push_back(to_json(T));
    t.push_back({{"coef", Json::array({term.coef.real(), term.coef.imag()})}, {"word", w}});
  }
  return {{"d", F.dim()}, {"terms", t}};
}

Observable observable_from_json(const Json& j) {
  const int d = dim_of(j, "d");
  const Json& t = field(j, "terms");
  if (!t.is_array()) fail("terms must be an array");
  Observable F(d);
  for (const Json& term : t) {
    ObservableTerm o;
    o.coef = term.contains("coef") ? complex_from_json(term["coef"]) : Complex(1.0);
    const Json& w = field(term, "word");
    if (!w.is_array()) fail("word must be an array");
    for (const Json& T : w) {
      o.word.push_back(distribution_from_json(T));
      if (o.word.back().dim() != d) fail("word entry has the wrong dimension");
    }
    F.add(std::move(o));
  }
  return F;
}

Json to_json(const StateValue& v) { return {{"value", complex_json(v.value)}, {"matchings", v.matchings}}; }

Json to_json(const CheckRecord& r) {
  return {{"check", r.check},         {"lhs", complex_json(r.lhs)},   {"rhs", complex_json(r.rhs)},
          {"residual", r.residual},   {"tolerance", r.tolerance},     {"pass", r.pass}};
}

Json error_record(const std::string& kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

}  // namespace confalg
