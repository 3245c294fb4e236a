#include "confalg/fock.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>

#include "confalg/errors.hpp"
#include "confalg/harmonic.hpp"
#include "confalg/random.hpp"

namespace confalg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeparation = 1e-10;

double factorial_d(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// Expansion of log Q(a + s, b + t) to total degree K from local Taylor data.
Bivariate local_log_q(const ConformalMap& phi, Complex a, Complex b, int K) {
  const Series ta = taylor_at(phi, a, K + 1);
  Bivariate Q(K);
  if (a == b) {
    Q = divided_difference(ta, K);
  } else {
    const Series tb = taylor_at(phi, b, K + 1);
    Bivariate num(K);
    num.ref(0, 0) = ta[0] - tb[0];
    for (int i = 1; i <= K; ++i) {
      num.ref(i, 0) += ta[i];
      num.ref(0, i) -= tb[i];
    }
    Bivariate den(K);
    den.ref(0, 0) = a - b;
    if (K >= 1) {
      den.ref(1, 0) = 1.0;
      den.ref(0, 1) = -1.0;
    }
    Q = mul(num, inverse(den));
  }
  return log(Q);
}

}  // namespace

HarmonicCocycle::HarmonicCocycle(const ConformalMap& phi, int order, int grid)
    : phi_(phi), order_(order), mob_(to_mobius(phi)) {
  if (phi.dim() != 2) throw DimensionError("the harmonic cocycle needs d = 2");
  if (order < 2) throw DomainError("cocycle order must be at least 2");
  s_ = to_series(phi, order);
  const double R = (phi.is_series() ? phi.radius() : 1.0) * (1.0 - 1e-9);
  std::vector<double> mags;
  double top = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int k = 0; k < grid; ++k) {
      const Complex z = std::polar(R * i / grid, 2.0 * kPi * k / grid);
      mags.push_back(std::abs(derivative_of(z)));
      top = std::max(top, mags.back());
    }
  }
  for (double m : mags) {
    if (m <= 1e-8 * top) throw DegenerateError("phi' vanishes on the sample grid");
  }
}

const Bivariate& HarmonicCocycle::table() const {
  std::call_once(*table_once_, [this] { *logq_ = log(divided_difference(s_, order_)); });
  return *logq_;
}

Complex HarmonicCocycle::A(int n, int m) const {
  if (n < 0 || m < 0 || n + m + 2 > order_) throw IndexError("A_{n,m} beyond the truncation order");
  return static_cast<double>((n + 1) * (m + 1)) * table().at(n + 1, m + 1);
}

Series HarmonicCocycle::diagonal(int degree) const {
  Series out = Series::zero(degree);
  for (int k = 0; k <= degree; ++k) {
    for (int n = 0; n <= k; ++n) out[k] += A(n, k - n);
  }
  return out;
}

Complex HarmonicCocycle::derivative_of(Complex z) const {
  if (mob_) {
    const Complex den = mob_->c * z + mob_->d;
    return mob_->det() / (den * den);
  }
  return s_.derivative().eval(z);
}

Complex HarmonicCocycle::log_q(Complex z, Complex w) const {
  if (mob_) return std::log(mob_->det() / ((mob_->c * z + mob_->d) * (mob_->c * w + mob_->d)));
  // sum_k c_k h_{k-1}(z, w) with h_j = z h_{j-1} + w^j
  Complex h = 1.0;
  Complex wp = 1.0;
  Complex q = s_[1];
  for (int k = 2; k <= s_.order(); ++k) {
    wp *= w;
    h = z * h + wp;
    q += s_[k] * h;
  }
  return std::log(q);
}

namespace {

void check_radius(const ConformalMap& phi, Complex z) {
  if (phi.is_series() && std::abs(z) >= phi.radius()) throw RadiusError("point outside series validity radius");
}

}  // namespace

double HarmonicCocycle::H_tilde(Complex z, Complex w) const {
  check_radius(phi_, z);
  check_radius(phi_, w);
  return log_q(z, w).real();
}

double HarmonicCocycle::H(Complex z, Complex w) const {
  return H_tilde(z, w) - 0.5 * std::log(std::abs(derivative_of(z))) - 0.5 * std::log(std::abs(derivative_of(w)));
}

Complex HarmonicCocycle::derivative(Complex a, int p1, int q1, Complex b, int p2, int q2, bool tilde) const {
  check_radius(phi_, a);
  check_radius(phi_, b);
  if (p1 + q1 + p2 + q2 == 0) return tilde ? H_tilde(a, b) : H(a, b);
  if (p1 + p2 > 0 && q1 + q2 > 0) return 0.0;
  const bool hol = q1 + q2 == 0;
  const int p = hol ? p1 : q1;
  const int q = hol ? p2 : q2;
  Complex D;
  if (mob_) {
    // log Q = log det - log(c z + d) - log(c w + d); log phi' = log det - 2 log(c z + d)
    auto one_sided = [&](Complex x, int k) {
      const Complex r = mob_->c / (mob_->c * x + mob_->d);
      return -((k % 2 == 1) ? 1.0 : -1.0) * factorial_d(k - 1) * ipow(r, k);
    };
    if (p > 0 && q > 0) {
      D = 0.0;
    } else if (q == 0) {
      const Complex x = one_sided(a, p);
      D = 0.5 * x - (tilde ? 0.0 : 0.25 * 2.0 * x);
    } else {
      const Complex x = one_sided(b, q);
      D = 0.5 * x - (tilde ? 0.0 : 0.25 * 2.0 * x);
    }
  } else {
    const Bivariate lq = local_log_q(phi_, a, b, p + q);
    D = 0.5 * factorial_d(p) * factorial_d(q) * lq.at(p, q);
    if (!tilde && (p == 0 || q == 0)) {
      const Complex x = p == 0 ? b : a;
      const int k = p == 0 ? q : p;
      const Series lp = log(taylor_at(phi_, x, k + 1).derivative(), k);
      D -= 0.25 * factorial_d(k) * lp[k];
    }
  }
  return hol ? D : std::conj(D);
}

Series schwarzian_series(const Series& phi, int order) {
  const Series d1 = phi.derivative();
  const Series d2 = d1.derivative();
  const Series d3 = d2.derivative();
  const Series inv = inverse(d1, order);
  const Series r = mul(d2, inv, order);
  return mul(d3, inv, order) - Complex(1.5) * mul(r, r, order);
}

Kernel Kernel::green(int d, bool normalized) {
  if (d < 2) throw DimensionError("kernel dimension must be >= 2");
  Kernel k;
  k.kind = Kind::Green;
  k.d = d;
  k.normalized = normalized;
  return k;
}

Kernel Kernel::corrected_green(std::shared_ptr<const HarmonicCocycle> c, bool tilde, bool normalized) {
  Kernel k;
  k.kind = Kind::CorrectedGreen;
  k.d = 2;
  k.tilde = tilde;
  k.normalized = normalized;
  k.cocycle = std::move(c);
  return k;
}

Kernel Kernel::cocycle_kernel(std::shared_ptr<const HarmonicCocycle> c, bool tilde, bool normalized) {
  Kernel k = corrected_green(std::move(c), tilde, normalized);
  k.kind = Kind::Cocycle;
  return k;
}

double normalization_lambda_sq(int d) {
  if (d == 2) return -4.0 * kPi;
  return (d - 2) * sphere_area(d);
}

Complex normalization_lambda(int d) {
  if (d == 2) return {0.0, std::sqrt(4.0 * kPi)};
  return std::sqrt(normalization_lambda_sq(d));
}

namespace {

struct RadialDerivative {
  Poly P;  // d^gamma |r|^{-m} = P(r) |r|^{-s}
  int s;
};

const RadialDerivative& radial_derivative(int d, const MultiIndex& gamma) {
  static std::mutex mu;
  static std::map<std::pair<int, MultiIndex>, RadialDerivative> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(d, gamma);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  RadialDerivative cur{Poly::constant(d, 1), d - 2};
  Poly r2(d);
  for (int i = 0; i < d; ++i) r2.add_term(MultiIndex::unit(d, i, 2), 1);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < gamma[i]; ++k) {
      // d_i (P |r|^{-s}) = (|r|^2 d_i P - s r_i P) |r|^{-s-2}
      Poly next = r2 * cur.P.derivative(i) - Poly::variable(d, i) * cur.P * Rational(cur.s);
      cur = {std::move(next), cur.s + 2};
    }
  }
  return cache.emplace(key, std::move(cur)).first->second;
}

Complex green_term_2d(Complex u, int p1, int q1, int p2, int q2) {
  if (p1 + q1 + p2 + q2 == 0) return -std::log(std::abs(u)) / (2.0 * kPi);
  if (p1 + p2 > 0 && q1 + q2 > 0) return 0.0;
  const bool hol = q1 + q2 == 0;
  const int p = hol ? p1 : q1;
  const int q = hol ? p2 : q2;
  const int k = p + q;
  // d_z^p d_w^q log(z - w) = (-1)^q f^{(k)}(z - w), f^{(k)}(u) = (-1)^{k-1}(k-1)! u^{-k}
  const Complex fk = ((k - 1) % 2 == 0 ? 1.0 : -1.0) * factorial_d(k - 1) / ipow(u, k);
  const Complex v = -(1.0 / (4.0 * kPi)) * (q % 2 == 0 ? 1.0 : -1.0) * fk;
  return hol ? v : std::conj(v);
}

std::vector<PointTerm> wirtinger_terms(const PointTerm& t) {
  if (t.wirtinger) return {t};
  return to_wirtinger(HarmonicDistribution::from_points(2, {t}, 0)).points();
}

double separation(const PointTerm& x, const PointTerm& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) s += (x.a[i] - y.a[i]) * (x.a[i] - y.a[i]);
  return std::sqrt(s);
}

}  // namespace

Complex kernel_term(const Kernel& K, const PointTerm& x, const PointTerm& y) {
  if (static_cast<int>(x.a.size()) != K.d || static_cast<int>(y.a.size()) != K.d) {
    throw DimensionError("kernel and distribution dimensions differ");
  }
  if (K.singular() && separation(x, y) <= kSeparation) throw SeparationError("coincident centers");
  const double scale = K.normalized ? normalization_lambda_sq(K.d) : 1.0;
  if (K.d >= 3) {
    if (K.kind != Kernel::Kind::Green) throw DimensionError("cocycle kernels need d = 2");
    const int d = K.d;
    const MultiIndex gamma = x.alpha + y.alpha;
    const RadialDerivative& rd = radial_derivative(d, gamma);
    Point r(d);
    double rr = 0.0;
    for (int i = 0; i < d; ++i) {
      r[i] = x.a[i] - y.a[i];
      rr += r[i] * r[i];
    }
    double v = rd.P.evaluate(std::span<const double>(r)) / std::pow(std::sqrt(rr), rd.s);
    v /= (d - 2) * sphere_area(d);
    // (-1)^{|alpha|+|beta|} (-1)^{|beta|} from d_y acting on f(x - y)
    if (x.alpha.degree() % 2 == 1) v = -v;
    return x.coef * y.coef * scale * v;
  }
  // d = 2: Wirtinger form.
  if (!x.wirtinger || !y.wirtinger) {
    Complex sum{};
    for (const PointTerm& xs : wirtinger_terms(x)) {
      for (const PointTerm& ys : wirtinger_terms(y)) sum += kernel_term(K, xs, ys);
    }
    return sum;
  }
  const Complex a = to_complex(x.a);
  const Complex b = to_complex(y.a);
  const int p1 = x.alpha[0], q1 = x.alpha[1], p2 = y.alpha[0], q2 = y.alpha[1];
  Complex v{};
  if (K.kind != Kernel::Kind::Cocycle) v += green_term_2d(a - b, p1, q1, p2, q2);
  if (K.kind != Kernel::Kind::Green) {
    v -= K.cocycle->derivative(a, p1, q1, b, p2, q2, K.tilde) / (2.0 * kPi);
  }
  if ((p1 + q1 + p2 + q2) % 2 == 1) v = -v;
  return x.coef * y.coef * scale * v;
}

Complex contraction_value(const HarmonicDistribution& T, const HarmonicDistribution& S, const Kernel& K) {
  if (!T.has_points() || !S.has_points()) throw UnsupportedError("contractions need point forms");
  Complex sum{};
  for (const PointTerm& x : T.points()) {
    for (const PointTerm& y : S.points()) sum += kernel_term(K, x, y);
  }
  return sum;
}

Observable Observable::scalar(int d, Complex c) {
  Observable o(d);
  o.add({c, {}});
  return o;
}

Observable Observable::word(int d, std::vector<HarmonicDistribution> w, Complex coef) {
  Observable o(d);
  o.add({coef, std::move(w)});
  return o;
}

void Observable::add(ObservableTerm t) {
  for (const HarmonicDistribution& T : t.word) {
    if (T.dim() != d_) throw DimensionError("observable word has wrong dimension");
  }
  terms_.push_back(std::move(t));
}

int Observable::max_degree() const {
  int m = 0;
  for (const ObservableTerm& t : terms_) m = std::max(m, static_cast<int>(t.word.size()));
  return m;
}

Observable& Observable::operator+=(const Observable& o) {
  if (o.d_ != d_) throw DimensionError("adding observables of different dimension");
  for (const ObservableTerm& t : o.terms_) terms_.push_back(t);
  return *this;
}

Observable operator-(Observable a, const Observable& b) { return a += Complex(-1.0) * b; }

Observable operator*(Complex c, Observable a) {
  for (ObservableTerm& t : a.terms_) t.coef *= c;
  return a;
}

Observable operator*(const Observable& a, const Observable& b) {
  if (a.d_ != b.d_) throw DimensionError("multiplying observables of different dimension");
  Observable out(a.d_);
  for (const ObservableTerm& x : a.terms_) {
    for (const ObservableTerm& y : b.terms_) {
      ObservableTerm t{x.coef * y.coef, x.word};
      t.word.insert(t.word.end(), y.word.begin(), y.word.end());
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

Complex evaluate_on_exponential(const Observable& F, std::span<const Complex> k, int degree) {
  Complex sum{};
  for (const ObservableTerm& t : F.terms()) {
    if (static_cast<int>(t.word.size()) != degree) continue;
    Complex v = t.coef;
    for (const HarmonicDistribution& T : t.word) v *= apply_to_exponential(T, k);
    sum += v;
  }
  return sum;
}

ObservableResidual compare_observables(const Observable& F, const Observable& G, std::uint64_t seed, int samples) {
  if (F.dim() != G.dim()) throw DimensionError("comparing observables of different dimension");
  const int d = F.dim();
  Rng rng(seed);
  ObservableResidual res;
  const int deg = std::max(F.max_degree(), G.max_degree());
  for (int s = 0; s < samples; ++s) {
    const std::vector<Complex> k = rng.null_vector(d);
    for (int n = 0; n <= deg; ++n) {
      const Complex f = evaluate_on_exponential(F, k, n);
      const Complex g = evaluate_on_exponential(G, k, n);
      res.abs = std::max(res.abs, std::abs(f - g));
      res.scale = std::max({res.scale, std::abs(f), std::abs(g)});
    }
  }
  return res;
}

HarmonicDistribution pushforward(const ConformalMap& phi, const HarmonicDistribution& T) {
  if (!T.has_points()) throw UnsupportedError("pushforward needs a point form");
  const int d = T.dim();
  if (phi.dim() != d) throw DimensionError("map and distribution dimensions differ");
  std::vector<PointTerm> out;
  for (const PointTerm& t : T.points()) {
    const Point image = apply_map(phi, t.a);
    if (t.alpha.degree() == 0) {
      const double w = std::pow(conformal_factor(phi, t.a), (d - 2) / 2.0);
      out.push_back(PointTerm{image, t.alpha, t.coef * w, t.wirtinger});
      continue;
    }
    if (d == 2) {
      for (const PointTerm& w : wirtinger_terms(t)) {
        const int p = w.alpha[0];
        const int q = w.alpha[1];
        if (p > 0 && q > 0) continue;  // annihilates harmonic functions
        const int n = p + q;
        const Series g = taylor_at(phi, to_complex(w.a), n);
        Series g0 = g;
        g0[0] = 0.0;
        // B_{n,k} = n!/k! [s^n] g0^k
        Series pw = Series::zero(n);
        pw[0] = 1.0;
        for (int k = 1; k <= n; ++k) {
          pw = mul(pw, g0, n);
          Complex B = factorial_d(n) / factorial_d(k) * pw[n];
          if ((n - k) % 2 == 1) B = -B;
          if (q > 0) B = std::conj(B);
          const MultiIndex alpha = p > 0 ? MultiIndex{k, 0} : MultiIndex{0, k};
          out.push_back(PointTerm{image, alpha, w.coef * B, true});
        }
      }
      continue;
    }
    if (!phi.is_affine_ball()) {
      throw UnsupportedError("derivative pushforward needs a ball map for d >= 3");
    }
    const double r = conformal_factor(phi, t.a);
    const double w = std::pow(r, t.alpha.degree() + (d - 2) / 2.0);
    out.push_back(PointTerm{image, t.alpha, t.coef * w, false});
  }
  return HarmonicDistribution::from_points(d, std::move(out), T.truncation());
}

HarmonicDistribution pushforward(const DiskEmbedding& phi, const HarmonicDistribution& T) {
  return pushforward(phi.map, T);
}

Observable pushforward(const ConformalMap& phi, const Observable& F) {
  Observable out(F.dim());
  for (const ObservableTerm& t : F.terms()) {
    ObservableTerm p{t.coef, {}};
    for (const HarmonicDistribution& T : t.word) p.word.push_back(pushforward(phi, T));
    out.add(std::move(p));
  }
  return out;
}

namespace {

// Partial matchings of slots where allowed(i, j) holds; calls emit(weight,
// unmatched) for each, weight being the product of pair values.
void partial_matchings(int n, const std::function<bool(int, int)>& allowed,
                       const std::function<Complex(int, int)>& value,
                       const std::function<void(Complex, const std::vector<int>&)>& emit) {
  std::vector<bool> used(n, false);
  std::vector<int> unmatched;
  std::function<void(int, Complex)> rec = [&](int i, Complex w) {
    while (i < n && used[i]) ++i;
    if (i == n) {
      emit(w, unmatched);
      return;
    }
    used[i] = true;
    unmatched.push_back(i);
    rec(i + 1, w);
    unmatched.pop_back();
    for (int j = i + 1; j < n; ++j) {
      if (used[j] || !allowed(i, j)) continue;
      used[j] = true;
      rec(i + 1, w * value(i, j));
      used[j] = false;
    }
    used[i] = false;
  };
  rec(0, 1.0);
}

}  // namespace

Observable rho(const DiskConfiguration& c, const std::vector<Observable>& F, const RhoOptions& opt) {
  const int d = c.dim;
  const int n = c.arity();
  if (static_cast<int>(F.size()) != n) throw IndexError("rho needs one observable per embedding");
  for (const Observable& f : F) {
    if (f.dim() != d) throw DimensionError("observable dimension differs from configuration");
  }
  if (n == 0) return Observable::scalar(d, 1.0);

  // (a) per-factor cocycle self-contractions (d = 2), then (b) pushforward.
  std::vector<Observable> pushed;
  for (int i = 0; i < n; ++i) {
    const ConformalMap& phi = c.embeddings[i].map;
    Observable corrected(d);
    if (d == 2) {
      for (const ObservableTerm& t : F[i].terms()) {
        for (const HarmonicDistribution& T : t.word) {
          if (!is_zero_mean(T)) throw ZeroMeanError("d = 2 inputs must be zero-mean in every slot");
        }
      }
      auto cocycle = std::make_shared<const HarmonicCocycle>(phi);
      const Kernel K = Kernel::cocycle_kernel(cocycle, false, opt.normalized);
      for (const ObservableTerm& t : F[i].terms()) {
        const int m = static_cast<int>(t.word.size());
        partial_matchings(
            m, [](int, int) { return true; },
            [&](int a, int b) { return contraction_value(t.word[a], t.word[b], K); },
            [&](Complex w, const std::vector<int>& rest) {
              ObservableTerm out{t.coef * w, {}};
              for (int k : rest) out.word.push_back(t.word[k]);
              corrected.add(std::move(out));
            });
      }
    } else {
      corrected = F[i];
    }
    pushed.push_back(pushforward(phi, corrected));
  }

  // (c) product with cross-factor Green contractions.
  const Kernel G = Kernel::green(d, opt.normalized);
  Observable result(d);
  std::vector<std::size_t> choice(n, 0);
  for (int i = 0; i < n; ++i) {
    if (pushed[i].terms().empty()) return result;
  }
  while (true) {
    Complex coef = 1.0;
    std::vector<const HarmonicDistribution*> slots;
    std::vector<int> owner;
    for (int i = 0; i < n; ++i) {
      const ObservableTerm& t = pushed[i].terms()[choice[i]];
      coef *= t.coef;
      for (const HarmonicDistribution& T : t.word) {
        slots.push_back(&T);
        owner.push_back(i);
      }
    }
    partial_matchings(
        static_cast<int>(slots.size()), [&](int a, int b) { return owner[a] != owner[b]; },
        [&](int a, int b) { return contraction_value(*slots[a], *slots[b], G); },
        [&](Complex w, const std::vector<int>& rest) {
          ObservableTerm out{coef * w, {}};
          for (int k : rest) out.word.push_back(*slots[k]);
          result.add(std::move(out));
        });
    int i = 0;
    while (i < n && ++choice[i] == pushed[i].terms().size()) {
      choice[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return result;
}

Observable normalize(const Observable& F, Direction dir) {
  const Complex lambda = normalization_lambda(F.dim());
  const Complex f = dir == Direction::Forward ? lambda : 1.0 / lambda;
  Observable out(F.dim());
  for (const ObservableTerm& t : F.terms()) {
    out.add({t.coef * ipow(f, static_cast<int>(t.word.size())), t.word});
  }
  return out;
}

std::vector<std::vector<std::pair<int, int>>> perfect_matchings(int n) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (n % 2 == 1) return out;
  std::vector<bool> used(n, false);
  std::vector<std::pair<int, int>> cur;
  std::function<void()> rec = [&] {
    int i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) {
      out.push_back(cur);
      return;
    }
    used[i] = true;
    for (int j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      cur.emplace_back(i, j);
      rec();
      cur.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  rec();
  return out;
}

StateValue vacuum_state(const Observable& F, const Kernel& K) {
  StateValue out;
  out.value = 0.0;
  std::map<int, std::vector<std::vector<std::pair<int, int>>>> by_size;
  for (const ObservableTerm& t : F.terms()) {
    const int m = static_cast<int>(t.word.size());
    if (m % 2 == 1) continue;
    auto it = by_size.find(m);
    if (it == by_size.end()) it = by_size.emplace(m, perfect_matchings(m)).first;
    std::vector<std::vector<Complex>> pair(m, std::vector<Complex>(m));
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) pair[i][j] = contraction_value(t.word[i], t.word[j], K);
    }
    for (const auto& matching : it->second) {
      Complex v = t.coef;
      for (const auto& [i, j] : matching) v *= pair[i][j];
      out.value += v;
    }
    out.matchings += static_cast<std::int64_t>(it->second.size());
  }
  return out;
}

AnomalyReport anomaly_check(const ConformalMap& phi, const Observable& F) {
  if (F.dim() != 2 || phi.dim() != 2) throw DimensionError("anomaly check needs d = 2");
  for (const ObservableTerm& t : F.terms()) {
    for (const HarmonicDistribution& T : t.word) {
      if (!is_zero_mean(T)) throw ZeroMeanError("anomaly check needs zero-mean slots");
    }
  }
  auto cocycle = std::make_shared<const HarmonicCocycle>(phi);
  AnomalyReport r;
  r.lhs = vacuum_state(F, Kernel::corrected_green(cocycle, true)).value;
  r.rhs = vacuum_state(pushforward(phi, F), Kernel::green(2)).value;
  r.uncorrected = vacuum_state(F, Kernel::green(2)).value;
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace confalg
