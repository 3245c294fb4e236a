#include "confalg/series.hpp"

#include <algorithm>
#include <cmath>

#include "confalg/errors.hpp"

namespace confalg {

Complex Series::eval(Complex z) const {
  Complex acc{};
  for (int k = order(); k >= 0; --k) acc = acc * z + c_[k];
  return acc;
}

Complex Series::eval_derivative(Complex z, int k) const {
  Series d = *this;
  for (int i = 0; i < k; ++i) d = d.derivative();
  return d.eval(z);
}

Series Series::derivative() const {
  if (c_.size() <= 1) return Series({Complex{}});
  std::vector<Complex> out(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) out[k - 1] = static_cast<double>(k) * c_[k];
  return Series(std::move(out));
}

Series Series::truncated(int ord) const {
  std::vector<Complex> out(ord + 1);
  for (int k = 0; k <= ord && k <= order(); ++k) out[k] = c_[k];
  return Series(std::move(out));
}

Series operator+(const Series& a, const Series& b) {
  const int n = std::max(a.order(), b.order());
  Series r = Series::zero(n);
  for (int k = 0; k <= n; ++k) r[k] = a[k] + b[k];
  return r;
}

Series operator-(const Series& a, const Series& b) {
  const int n = std::max(a.order(), b.order());
  Series r = Series::zero(n);
  for (int k = 0; k <= n; ++k) r[k] = a[k] - b[k];
  return r;
}

Series operator*(Complex s, const Series& a) {
  Series r = a;
  for (int k = 0; k <= r.order(); ++k) r[k] *= s;
  return r;
}

Series mul(const Series& a, const Series& b, int order) {
  Series r = Series::zero(order);
  for (int i = 0; i <= std::min(a.order(), order); ++i) {
    if (a[i] == Complex{}) continue;
    for (int j = 0; j <= std::min(b.order(), order - i); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series inverse(const Series& a, int order) {
  if (std::abs(a[0]) == 0.0) throw DegenerateError("series inverse: zero constant term");
  Series r = Series::zero(order);
  r[0] = 1.0 / a[0];
  for (int k = 1; k <= order; ++k) {
    Complex acc{};
    for (int j = 1; j <= std::min(k, a.order()); ++j) acc += a[j] * r[k - j];
    r[k] = -acc * r[0];
  }
  return r;
}

Series log(const Series& a, int order) {
  // (log a)' = a'/a
  Series q = mul(a.derivative(), inverse(a, order), order);
  Series r = Series::zero(order);
  r[0] = std::log(a[0]);
  for (int k = 1; k <= order; ++k) r[k] = q[k - 1] / static_cast<double>(k);
  return r;
}

Series exp(const Series& a, int order) {
  // r' = a' r
  Series r = Series::zero(order);
  r[0] = std::exp(a[0]);
  for (int k = 1; k <= order; ++k) {
    Complex acc{};
    for (int j = 1; j <= std::min(k, a.order()); ++j) acc += static_cast<double>(j) * a[j] * r[k - j];
    r[k] = acc / static_cast<double>(k);
  }
  return r;
}

Series compose(const Series& f, const Series& g, int order) {
  // Horner in the outer series.
  Series r = Series::zero(order);
  for (int k = f.order(); k >= 0; --k) {
    r = mul(r, g, order);
    r[0] += f[k];
  }
  return r;
}

Series taylor_shift(const Series& f, Complex a, int order) {
  // Repeated synthetic division yields the shifted coefficients exactly.
  std::vector<Complex> c = f.coeffs();
  const int n = f.order();
  for (int i = 0; i < n; ++i) {
    for (int k = n - 1; k >= i; --k) c[k] += a * c[k + 1];
  }
  Series r = Series::zero(order);
  for (int k = 0; k <= std::min(order, n); ++k) r[k] = c[k];
  return r;
}

Bivariate::Bivariate(int order) : n_(order), c_((order + 1) * (order + 1)) {}

Bivariate mul(const Bivariate& a, const Bivariate& b) {
  const int n = std::min(a.order(), b.order());
  Bivariate r(n);
  for (int i1 = 0; i1 <= n; ++i1) {
    for (int j1 = 0; i1 + j1 <= n; ++j1) {
      const Complex x = a.at(i1, j1);
      if (x == Complex{}) continue;
      for (int i2 = 0; i1 + j1 + i2 <= n; ++i2) {
        for (int j2 = 0; i1 + j1 + i2 + j2 <= n; ++j2) r.ref(i1 + i2, j1 + j2) += x * b.at(i2, j2);
      }
    }
  }
  return r;
}

Bivariate inverse(const Bivariate& a) {
  const int n = a.order();
  const Complex a0 = a.at(0, 0);
  if (std::abs(a0) == 0.0) throw DegenerateError("bivariate inverse: zero constant term");
  Bivariate r(n);
  r.ref(0, 0) = 1.0 / a0;
  // Solve degree by degree: sum_{p<=q} a_p r_{q-p} = 0 for q != 0.
  for (int deg = 1; deg <= n; ++deg) {
    for (int i = 0; i <= deg; ++i) {
      const int j = deg - i;
      Complex acc{};
      for (int p = 0; p <= i; ++p) {
        for (int q = 0; q <= j; ++q) {
          if (p == 0 && q == 0) continue;
          acc += a.at(p, q) * r.at(i - p, j - q);
        }
      }
      r.ref(i, j) = -acc / a0;
    }
  }
  return r;
}

Bivariate d_s(const Bivariate& a) {
  Bivariate r(a.order());
  for (int i = 1; i <= a.order(); ++i) {
    for (int j = 0; i + j <= a.order(); ++j) r.ref(i - 1, j) = static_cast<double>(i) * a.at(i, j);
  }
  return r;
}

Bivariate log(const Bivariate& a) {
  const int n = a.order();
  // log a(s,t) = log a(0,t) + int_0^s a_s / a
  Series edge = Series::zero(n);
  for (int j = 0; j <= n; ++j) edge[j] = a.at(0, j);
  Series le = log(edge, n);
  Bivariate q = mul(d_s(a), inverse(a));
  Bivariate r(n);
  for (int j = 0; j <= n; ++j) r.ref(0, j) = le[j];
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) r.ref(i, j) = q.at(i - 1, j) / static_cast<double>(i);
  }
  return r;
}

Bivariate divided_difference(const Series& f, int order) {
  // sum_k f_k h_{k-1}(s,t), h_j = sum_{i=0}^j s^i t^{j-i}
  Bivariate r(order);
  for (int k = 1; k <= f.order() && k - 1 <= order; ++k) {
    for (int i = 0; i <= k - 1; ++i) r.ref(i, k - 1 - i) += f[k];
  }
  return r;
}

}  // namespace confalg
