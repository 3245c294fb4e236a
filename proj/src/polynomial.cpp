#include "confalg/polynomial.hpp"

#include <algorithm>
#include <functional>

#include "confalg/errors.hpp"

namespace confalg {

MultiIndex::MultiIndex(int dim) : dim_(static_cast<std::uint8_t>(dim)) {
  if (dim < 1 || dim > kMaxDim) throw DimensionError("dimension out of range [1, 8]");
}

MultiIndex::MultiIndex(std::initializer_list<int> exps) : MultiIndex(static_cast<int>(exps.size())) {
  int i = 0;
  for (int e : exps) set(i++, e);
}

MultiIndex MultiIndex::from(std::span<const int> exps) {
  MultiIndex m(static_cast<int>(exps.size()));
  for (std::size_t i = 0; i < exps.size(); ++i) m.set(static_cast<int>(i), exps[i]);
  return m;
}

MultiIndex MultiIndex::unit(int dim, int i, int power) {
  MultiIndex m(dim);
  m.set(i, power);
  return m;
}

void MultiIndex::set(int i, int value) {
  if (value < 0 || value > 255) throw DomainError("exponent out of range");
  degree_ = static_cast<std::uint16_t>(degree_ - e_[i] + value);
  e_[i] = static_cast<std::uint8_t>(value);
}

unsigned MultiIndex::parity() const {
  unsigned mask = 0;
  for (int i = 0; i < dim_; ++i) mask |= (e_[i] & 1u) << i;
  return mask;
}

std::vector<int> MultiIndex::to_vector() const { return {e_.begin(), e_.begin() + dim_}; }

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r = a;
  for (int i = 0; i < a.dim_; ++i) r.set(i, a.e_[i] + b.e_[i]);
  return r;
}

bool operator<(const MultiIndex& a, const MultiIndex& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
  for (int i = 0; i < kMaxDim; ++i) {
    if (a.e_[i] != b.e_[i]) return a.e_[i] > b.e_[i];
  }
  return a.dim_ < b.dim_;
}

std::vector<MultiIndex> monomials(int dim, int degree) {
  std::vector<MultiIndex> out;
  MultiIndex cur(dim);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == dim - 1) {
      cur.set(i, left);
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur.set(i, e);
      rec(i + 1, left - e);
    }
    cur.set(i, 0);
  };
  rec(0, degree);
  return out;
}

Poly Poly::constant(int dim, const Rational& c) {
  Poly p(dim);
  p.add_term(MultiIndex(dim), c);
  return p;
}

Poly Poly::monomial(const MultiIndex& alpha, const Rational& c) {
  Poly p(alpha.dim());
  p.add_term(alpha, c);
  return p;
}

Poly Poly::variable(int dim, int i) { return monomial(MultiIndex::unit(dim, i)); }

int Poly::degree() const {
  int deg = -1;
  for (const auto& [alpha, c] : terms_) deg = std::max(deg, alpha.degree());
  return deg;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

Rational Poly::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const MultiIndex& alpha, const Rational& c) {
  if (sgn(c) == 0) return;
  if (dim_ == 0) dim_ = alpha.dim();
  Rational cc = c;
  cc.canonicalize();
  auto [it, inserted] = terms_.try_emplace(alpha, cc);
  if (!inserted) {
    it->second += cc;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

namespace {

// Adds c at alpha, walking a hint forward; keys must arrive in increasing
// order. Coefficients are already canonical.
void accumulate(Poly::Terms& t, Poly::Terms::iterator& hint, const MultiIndex& alpha, const Rational& c) {
  while (hint != t.end() && hint->first < alpha) ++hint;
  if (hint != t.end() && hint->first == alpha) {
    hint->second += c;
    if (sgn(hint->second) == 0) {
      hint = t.erase(hint);
    }
    return;
  }
  hint = t.emplace_hint(hint, alpha, c);
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  if (dim_ == 0) dim_ = o.dim_;
  if (o.terms_.size() * 16 < terms_.size()) {
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
    return *this;
  }
  auto hint = terms_.begin();
  for (const auto& [alpha, c] : o.terms_) {
    if (sgn(c) != 0) accumulate(terms_, hint, alpha, c);
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (dim_ == 0) dim_ = o.dim_;
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, coef] : terms_) coef *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r(std::max(a.dim(), b.dim()));
  // Shifting by a fixed exponent preserves the graded order, so each pass
  // over the larger factor is a sorted merge.
  const Poly& big = a.terms().size() >= b.terms().size() ? a : b;
  const Poly& small = &big == &a ? b : a;
  if (small.terms().size() > 32) {
    for (const auto& [x, cx] : a.terms()) {
      for (const auto& [y, cy] : b.terms()) r.add_term(x + y, cx * cy);
    }
    return r;
  }
  Rational prod;
  for (const auto& [y, cy] : small.terms()) {
    auto hint = r.terms_.begin();
    for (const auto& [x, cx] : big.terms()) {
      mpq_mul(prod.get_mpq_t(), cx.get_mpq_t(), cy.get_mpq_t());
      accumulate(r.terms_, hint, x + y, prod);
    }
  }
  return r;
}

Poly Poly::derivative(int i) const {
  Poly r(dim_);
  for (const auto& [alpha, c] : terms_) {
    const int e = alpha[i];
    if (e == 0) continue;
    MultiIndex beta = alpha;
    beta.set(i, e - 1);
    r.add_term(beta, c * e);
  }
  return r;
}

Poly Poly::derivative(const MultiIndex& alpha) const {
  Poly r = *this;
  for (int i = 0; i < alpha.dim(); ++i) {
    for (int k = 0; k < alpha[i]; ++k) r = r.derivative(i);
  }
  return r;
}

Poly Poly::homogeneous_part(int n) const {
  Poly r(dim_);
  for (const auto& [alpha, c] : terms_) {
    if (alpha.degree() == n) r.terms_.emplace_hint(r.terms_.end(), alpha, c);
  }
  return r;
}

Rational Poly::evaluate(std::span<const Rational> x) const {
  // Powers are cached per variable; polynomials here have modest degree.
  std::vector<std::vector<Rational>> powers(dim_);
  const int deg = std::max(degree(), 0);
  for (int i = 0; i < dim_; ++i) {
    powers[i].resize(deg + 1);
    powers[i][0] = 1;
    for (int k = 1; k <= deg; ++k) powers[i][k] = powers[i][k - 1] * x[i];
  }
  Rational sum = 0;
  Rational term;
  for (const auto& [alpha, c] : terms_) {
    term = c;
    for (int i = 0; i < dim_; ++i) {
      if (alpha[i] != 0) term *= powers[i][alpha[i]];
    }
    sum += term;
  }
  return sum;
}

double Poly::evaluate(std::span<const double> x) const {
  std::vector<std::vector<double>> powers(dim_);
  const int deg = std::max(degree(), 0);
  for (int i = 0; i < dim_; ++i) {
    powers[i].resize(deg + 1);
    powers[i][0] = 1.0;
    for (int k = 1; k <= deg; ++k) powers[i][k] = powers[i][k - 1] * x[i];
  }
  double sum = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double term = to_double(c);
    for (int i = 0; i < dim_; ++i) term *= powers[i][alpha[i]];
    sum += term;
  }
  return sum;
}

Poly laplacian(const Poly& p) {
  Poly r(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    for (int i = 0; i < p.dim(); ++i) {
      const int e = alpha[i];
      if (e < 2) continue;
      MultiIndex beta = alpha;
      beta.set(i, e - 2);
      r.add_term(beta, -c * (e * (e - 1)));
    }
  }
  return r;
}

CPoly& CPoly::operator+=(const CPoly& o) {
  re += o.re;
  im += o.im;
  return *this;
}

CPoly& CPoly::operator*=(const CRational& c) {
  if (sgn(c.im) == 0) {
    if (c.re != 1) {
      re *= c.re;
      im *= c.re;
    }
    return *this;
  }
  Poly new_re = re * c.re - im * c.im;
  Poly new_im = re * c.im + im * c.re;
  re = std::move(new_re);
  im = std::move(new_im);
  return *this;
}

}  // namespace confalg
