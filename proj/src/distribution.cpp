#include "confalg/distribution.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "confalg/errors.hpp"
#include "confalg/harmonic.hpp"

namespace confalg {

struct HarmonicDistribution::Lazy {
  std::once_flag once;
  std::vector<CPoly> seq;
};

namespace {

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

CPoly scale(const Poly& p, const CRational& c) {
  CPoly out(p);
  out *= c;
  return out;
}

// d_z^p d_zbar^q = 2^{-p-q} (d_1 - i d_2)^p (d_1 + i d_2)^q as Cartesian
// derivatives d_1^{p+q-m} d_2^m with complex weights.
std::map<int, CRational> wirtinger_weights(int p, int q) {
  std::map<int, CRational> w;
  const Rational scale_factor(Integer(1), Integer(1) << (p + q));
  for (int j = 0; j <= p; ++j) {
    // (-i)^j
    CRational left(Rational(binomial(p, j)));
    for (int t = 0; t < j; ++t) left = left * CRational(0, -1);
    for (int l = 0; l <= q; ++l) {
      CRational right(Rational(binomial(q, l)));
      for (int t = 0; t < l; ++t) right = right * CRational(0, 1);
      w[j + l] += left * right * CRational(scale_factor);
    }
  }
  return w;
}

std::vector<Rational> exact_point(std::span<const double> a) {
  std::vector<Rational> out;
  for (double v : a) out.push_back(exact_rational(v));
  return out;
}

CPoly term_component(int d, int n, const PointTerm& t) {
  const std::vector<Rational> a = exact_point(t.a);
  const CRational coef = CRational::from(t.coef);
  if (!t.wirtinger) return scale(zonal_derivative(d, n, a, t.alpha), coef);
  CPoly out(d);
  const int p = t.alpha[0];
  const int q = t.alpha[1];
  for (const auto& [m, w] : wirtinger_weights(p, q)) {
    if (w.is_zero()) continue;
    out += scale(zonal_derivative(d, n, a, MultiIndex{p + q - m, m}), coef * w);
  }
  return out;
}

// log sup_n sqrt(A_{d,n}) q^n for 0 <= q < 1.
double log_sup_growth(int d, double q) {
  if (q <= 0.0) return 0.0;
  if (d == 2) return std::max(0.0, 0.5 * std::log(2.0) + std::log(q));
  auto f = [&](double n) {
    const double logA = std::log(2.0 * n + d - 2.0) + std::lgamma(n + d - 2.0) - std::lgamma(n + 1.0) -
                        std::lgamma(d - 1.0);
    return 0.5 * logA + n * std::log(q);
  };
  // f is concave in n; integer ternary search.
  long long lo = 0;
  long long hi = 1;
  while (f(static_cast<double>(hi)) >= f(static_cast<double>(hi / 2)) && hi < (1LL << 60)) hi *= 2;
  while (hi - lo > 2) {
    const long long m1 = lo + (hi - lo) / 3;
    const long long m2 = hi - (hi - lo) / 3;
    if (f(static_cast<double>(m1)) < f(static_cast<double>(m2))) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  double best = f(0.0);
  for (long long n = lo; n <= hi; ++n) best = std::max(best, f(static_cast<double>(n)));
  return best;
}

}  // namespace

Certificate point_certificate(int d, const std::vector<PointTerm>& points) {
  double C = 0.0;
  double rho = 0.0;
  struct Part {
    double c, rho;
  };
  std::vector<Part> parts;
  for (const PointTerm& t : points) {
    const double r = norm(t.a);
    const int k = t.alpha.degree();
    double ci = 0.0;
    double ri = 0.0;
    if (k == 0) {
      ri = r + kCertificatePad;
      ci = std::exp(log_sup_growth(d, r / ri));
    } else {
      // Iterated gradient estimate on B_s(a): |d^alpha u(a)| <= (d k / s)^k sup |u|.
      const double s = (1.0 - r) / 4.0;
      ri = r + 2.0 * s;
      ci = std::pow(d * k / s, k) * std::exp(log_sup_growth(d, (r + s) / ri));
    }
    parts.push_back({std::abs(t.coef) * ci * (1.0 + 1e-12), ri});
    rho = std::max(rho, ri);
  }
  for (const Part& p : parts) C += p.c;
  if (points.empty()) rho = kCertificatePad;
  return {C, rho};
}

HarmonicDistribution HarmonicDistribution::from_points(int d, std::vector<PointTerm> points, int truncation) {
  if (d < 2 || d > kMaxDim) throw DimensionError("dimension must lie in [2, 8]");
  if (truncation < 0) throw DomainError("negative truncation");
  for (const PointTerm& t : points) {
    if (static_cast<int>(t.a.size()) != d) throw DomainError("center has wrong dimension");
    if (!(norm(t.a) < 1.0)) throw DomainError("center must lie in the open unit disk");
    if (t.wirtinger) {
      if (d != 2 || t.alpha.dim() != 2) throw DimensionError("Wirtinger terms need d = 2");
    } else if (t.alpha.dim() != d) {
      throw DomainError("multi-index has wrong dimension");
    }
  }
  HarmonicDistribution T;
  T.d_ = d;
  T.truncation_ = truncation;
  T.has_points_ = true;
  T.cert_ = point_certificate(d, points);
  T.points_ = std::move(points);
  T.lazy_ = std::make_shared<Lazy>();
  return T;
}

HarmonicDistribution HarmonicDistribution::delta_at(std::span<const double> a, int truncation) {
  const int d = static_cast<int>(a.size());
  return from_points(d, {PointTerm{Point(a.begin(), a.end()), MultiIndex(d), 1.0, false}}, truncation);
}

HarmonicDistribution HarmonicDistribution::derivative_delta(std::span<const double> a, const MultiIndex& alpha,
                                                            int truncation) {
  const int d = static_cast<int>(a.size());
  return from_points(d, {PointTerm{Point(a.begin(), a.end()), alpha, 1.0, false}}, truncation);
}

HarmonicDistribution HarmonicDistribution::wirtinger_delta(Complex a, int p, int q, int truncation) {
  return from_points(2, {PointTerm{to_point(a), MultiIndex{p, q}, 1.0, true}}, truncation);
}

HarmonicDistribution HarmonicDistribution::from_sequence(int d, std::vector<CPoly> seq,
                                                         std::optional<Certificate> cert) {
  if (d < 2 || d > kMaxDim) throw DimensionError("dimension must lie in [2, 8]");
  for (std::size_t n = 0; n < seq.size(); ++n) {
    const CPoly& t = seq[n];
    if (t.is_zero()) continue;
    if (t.dim() != d) throw DomainError("sequence polynomial has wrong dimension");
    if (!t.re.is_zero() && (!t.re.is_homogeneous() || t.re.degree() != static_cast<int>(n))) {
      throw DomainError("t_n must be homogeneous of degree n");
    }
    if (!t.im.is_zero() && (!t.im.is_homogeneous() || t.im.degree() != static_cast<int>(n))) {
      throw DomainError("t_n must be homogeneous of degree n");
    }
    if (!laplacian(t.re).is_zero() || !laplacian(t.im).is_zero()) throw DomainError("t_n must be harmonic");
  }
  if (cert && !(cert->rho > 0.0 && cert->rho < 1.0 && cert->C > 0.0)) throw DomainError("invalid certificate");
  HarmonicDistribution T;
  T.d_ = d;
  T.truncation_ = seq.empty() ? 0 : static_cast<int>(seq.size()) - 1;
  T.explicit_seq_ = std::move(seq);
  T.cert_ = cert;
  return T;
}

const std::vector<CPoly>& HarmonicDistribution::sequence() const {
  if (!has_points_) return explicit_seq_;
  std::call_once(lazy_->once, [this] {
    for (int n = 0; n <= truncation_; ++n) lazy_->seq.push_back(component(n));
  });
  return lazy_->seq;
}

CPoly HarmonicDistribution::component(int n) const {
  if (n < 0) throw DomainError("negative degree");
  if (!has_points_) {
    if (n < static_cast<int>(explicit_seq_.size())) return explicit_seq_[n];
    if (cert_) throw TruncationError("degree beyond the stored sequence");
    return CPoly(d_);
  }
  CPoly out(d_);
  for (const PointTerm& t : points_) out += term_component(d_, n, t);
  return out;
}

HarmonicDistribution operator+(const HarmonicDistribution& a, const HarmonicDistribution& b) {
  if (a.d_ != b.d_) throw DimensionError("adding distributions of different dimension");
  if (a.has_points_ && b.has_points_) {
    std::vector<PointTerm> pts = a.points_;
    pts.insert(pts.end(), b.points_.begin(), b.points_.end());
    return HarmonicDistribution::from_points(a.d_, std::move(pts), std::min(a.truncation_, b.truncation_));
  }
  const auto& sa = a.sequence();
  const auto& sb = b.sequence();
  std::vector<CPoly> seq(std::max(sa.size(), sb.size()), CPoly(a.d_));
  for (std::size_t n = 0; n < sa.size(); ++n) seq[n] += sa[n];
  for (std::size_t n = 0; n < sb.size(); ++n) seq[n] += sb[n];
  std::optional<Certificate> cert;
  if (a.cert_ || b.cert_) {
    if (!a.cert_ || !b.cert_) throw UnsupportedError("sum of certified and finitely supported sequences");
    cert = Certificate{a.cert_->C + b.cert_->C, std::max(a.cert_->rho, b.cert_->rho)};
    if (a.has_points_ || b.has_points_) {
      // a point form is infinitely supported: keep only common degrees
      const std::size_t m = std::min(sa.size(), sb.size());
      seq.resize(m);
    }
  }
  return HarmonicDistribution::from_sequence(a.d_, std::move(seq), cert);
}

HarmonicDistribution operator*(Complex c, const HarmonicDistribution& a) {
  if (a.has_points_) {
    std::vector<PointTerm> pts = a.points_;
    for (PointTerm& t : pts) t.coef *= c;
    return HarmonicDistribution::from_points(a.d_, std::move(pts), a.truncation_);
  }
  const CRational cr = CRational::from(c);
  std::vector<CPoly> seq = a.explicit_seq_;
  for (CPoly& t : seq) t *= cr;
  std::optional<Certificate> cert = a.cert_;
  if (cert) {
    cert->C *= std::abs(c);
    if (!(cert->C > 0.0)) cert->C = std::numeric_limits<double>::min();
  }
  return HarmonicDistribution::from_sequence(a.d_, std::move(seq), cert);
}

CRational pair_exact(const HarmonicDistribution& T, const CPoly& u) {
  CRational sum;
  const int deg = u.degree();
  for (int n = 0; n <= deg; ++n) {
    const CPoly un = u.homogeneous_part(n);
    if (un.is_zero()) continue;
    sum += harmonic_inner(T.component(n), un);
  }
  return sum;
}

Complex pair(const HarmonicDistribution& T, const CPoly& u) { return pair_exact(T, u).to_complex(); }

CRational pair_exact(const HarmonicDistribution& T, const std::vector<CPoly>& u) {
  const int have = static_cast<int>(u.size()) - 1;
  int upto = have;
  if (!T.finitely_supported()) {
    if (have < T.truncation()) throw TruncationError("u lacks degrees demanded by the distribution");
    upto = T.truncation();
  }
  CRational sum;
  const auto& seq = T.sequence();
  for (int n = 0; n <= upto && n < static_cast<int>(seq.size()); ++n) sum += harmonic_inner(seq[n], u[n]);
  return sum;
}

std::optional<Certificate> growth_check(const HarmonicDistribution& T) {
  const auto& seq = T.sequence();
  std::vector<double> norms;
  for (const CPoly& t : seq) norms.push_back(harmonic_norm(t));
  // Least squares of log ||t_n|| on n over the upper half of the nonzero
  // degrees; polynomial prefactors bias the slope less there.
  std::vector<std::size_t> live;
  for (std::size_t n = 0; n < norms.size(); ++n) {
    if (norms[n] > 0.0) live.push_back(n);
  }
  const std::size_t first = live.size() >= 8 ? live.size() / 2 : 0;
  double sn = 0, sy = 0, snn = 0, sny = 0;
  int count = 0;
  for (std::size_t k = first; k < live.size(); ++k) {
    const double n = static_cast<double>(live[k]);
    const double y = std::log(norms[live[k]]);
    sn += n;
    sy += y;
    snn += n * n;
    sny += n * y;
    ++count;
  }
  if (count == 0) return Certificate{std::numeric_limits<double>::min(), 0.5};
  double rho = 0.0;
  if (count == 1) {
    rho = 0.5;
  } else {
    const double slope = (count * sny - sn * sy) / (count * snn - sn * sn);
    rho = std::exp(slope);
  }
  if (!(rho < 1.0 - 1e-6)) return std::nullopt;
  double C = 0.0;
  for (std::size_t n = 0; n < norms.size(); ++n) C = std::max(C, norms[n] / std::pow(rho, n));
  C *= 1.0 + 1e-12;
  for (std::size_t n = 0; n < norms.size(); ++n) {
    if (norms[n] > C * std::pow(rho, n)) return std::nullopt;
  }
  return Certificate{C, rho};
}

CftNorm cft_norm_sq(const HarmonicDistribution& T) {
  const int d = T.dim();
  if (d == 2) throw DimensionError("the CFT inner product is undefined for d = 2");
  const auto& seq = T.sequence();
  CftNorm out;
  std::vector<double> norms;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    const double nr = harmonic_norm(seq[n]);
    norms.push_back(nr);
    out.value += (2.0 * n + d - 2.0) / (d - 2.0) * nr * nr;
  }
  if (T.finitely_supported()) return out;
  std::optional<Certificate> cert = T.certificate();
  if (!cert) cert = growth_check(T);
  if (!cert) {
    out.infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  // sum_{n >= M} (a n + 1) C^2 q^n with q = rho^2, a = 2/(d-2)
  const double q = cert->rho * cert->rho;
  const double M = static_cast<double>(seq.size());
  const double a = 2.0 / (d - 2.0);
  const double geo = std::pow(q, M) / (1.0 - q);
  const double lin = std::pow(q, M) * (M * (1.0 - q) + q) / ((1.0 - q) * (1.0 - q));
  out.tail_bound = cert->C * cert->C * (a * lin + geo);
  return out;
}

bool is_zero_mean(const HarmonicDistribution& T) {
  if (T.finitely_supported() && T.sequence().empty()) return true;
  return T.component(0).is_zero();
}

HarmonicDistribution to_wirtinger(const HarmonicDistribution& T) {
  if (T.dim() != 2) throw DimensionError("Wirtinger form needs d = 2");
  if (!T.has_points()) throw UnsupportedError("Wirtinger form needs a point form");
  std::vector<PointTerm> out;
  for (const PointTerm& t : T.points()) {
    if (t.wirtinger) {
      out.push_back(t);
      continue;
    }
    // d_1 = d_z + d_zbar, d_2 = i (d_z - d_zbar)
    const int a1 = t.alpha[0];
    const int a2 = t.alpha[1];
    std::map<std::pair<int, int>, Complex> acc;
    Complex ipow = 1.0;
    for (int k = 0; k < a2; ++k) ipow *= Complex(0, 1);
    for (int j = 0; j <= a1; ++j) {
      for (int l = 0; l <= a2; ++l) {
        const double w = binomial(a1, j).get_d() * binomial(a2, l).get_d() * (l % 2 ? -1.0 : 1.0);
        acc[{a1 - j + a2 - l, j + l}] += w * ipow;
      }
    }
    for (const auto& [pq, w] : acc) {
      if (w == Complex{}) continue;
      out.push_back(PointTerm{t.a, MultiIndex{pq.first, pq.second}, t.coef * w, true});
    }
  }
  return HarmonicDistribution::from_points(2, std::move(out), T.truncation());
}

Complex apply_to_exponential(const HarmonicDistribution& T, std::span<const Complex> k) {
  if (!T.has_points()) throw UnsupportedError("exponential test functions need a point form");
  const int d = T.dim();
  if (static_cast<int>(k.size()) != d) throw DomainError("wave vector has wrong dimension");
  Complex sum{};
  for (const PointTerm& t : T.points()) {
    Complex ka{};
    for (int i = 0; i < d; ++i) ka += k[i] * t.a[i];
    Complex mult = 1.0;
    if (t.wirtinger) {
      const Complex kz = 0.5 * (k[0] - Complex(0, 1) * k[1]);
      const Complex kzb = 0.5 * (k[0] + Complex(0, 1) * k[1]);
      mult = ipow(kz, t.alpha[0]) * ipow(kzb, t.alpha[1]);
    } else {
      for (int i = 0; i < d; ++i) mult *= ipow(k[i], t.alpha[i]);
    }
    if (t.alpha.degree() % 2 == 1) mult = -mult;
    sum += t.coef * mult * std::exp(ka);
  }
  return sum;
}

}  // namespace confalg
