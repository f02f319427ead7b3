#ifndef PDL_SERIES_HPP
#define PDL_SERIES_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pdl {

// Truncated power series F, stored tilted: coeffs[n] = [z^n]F * tilt^n, i.e.
// the coefficients of F(tilt*z). With tilt at the radius of convergence the
// stored values stay O(1) where the raw counts would overflow a double.
template <class T>
struct PowerSeries {
  std::vector<T> coeffs;
  T tilt = T(1);

  PowerSeries() = default;
  explicit PowerSeries(std::size_t n_max, T t = T(1)) : coeffs(n_max + 1, T(0)), tilt(t) {}
  PowerSeries(std::vector<T> c, T t) : coeffs(std::move(c)), tilt(t) {
    if (coeffs.empty()) coeffs.push_back(T(0));
  }

  std::size_t n_max() const { return coeffs.size() - 1; }
  const T& operator[](std::size_t n) const { return coeffs[n]; }
  T& operator[](std::size_t n) { return coeffs[n]; }
  T at(std::size_t n) const { return n < coeffs.size() ? coeffs[n] : T(0); }
};

using Series = PowerSeries<double>;

namespace detail {

template <class T>
bool same_tilt(const T& a, const T& b) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
  } else {
    return a == b;
  }
}

template <class T>
void require_same_tilt(const PowerSeries<T>& a, const PowerSeries<T>& b) {
  if (!same_tilt(a.tilt, b.tilt)) throw std::invalid_argument("series: tilt mismatch");
}

template <class T>
std::size_t lowest_degree(const PowerSeries<T>& a) {
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    if (a.coeffs[i] != T(0)) return i;
  return a.coeffs.size();
}

}  // namespace detail

template <class T>
PowerSeries<T> ps_add(const PowerSeries<T>& a, const PowerSeries<T>& b) {
  detail::require_same_tilt(a, b);
  std::size_t n = std::min(a.n_max(), b.n_max());
  PowerSeries<T> r(n, a.tilt);
  for (std::size_t i = 0; i <= n; ++i) r[i] = a[i] + b[i];
  return r;
}

template <class T>
PowerSeries<T> ps_scale(const PowerSeries<T>& a, const T& c) {
  PowerSeries<T> r = a;
  for (auto& x : r.coeffs) x *= c;
  return r;
}

// a + c*b
template <class T>
PowerSeries<T> ps_axpy(const PowerSeries<T>& a, const T& c, const PowerSeries<T>& b) {
  detail::require_same_tilt(a, b);
  std::size_t n = std::min(a.n_max(), b.n_max());
  PowerSeries<T> r(n, a.tilt);
  for (std::size_t i = 0; i <= n; ++i) r[i] = a[i] + c * b[i];
  return r;
}

template <class T>
PowerSeries<T> ps_mul(const PowerSeries<T>& a, const PowerSeries<T>& b) {
  detail::require_same_tilt(a, b);
  std::size_t n = std::min(a.n_max(), b.n_max());
  PowerSeries<T> r(n, a.tilt);
  std::size_t la = detail::lowest_degree(a), lb = detail::lowest_degree(b);
  for (std::size_t i = la; i <= n; ++i) {
    if (a[i] == T(0)) continue;
    for (std::size_t j = lb; i + j <= n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// z * a(z)
template <class T>
PowerSeries<T> ps_shift(const PowerSeries<T>& a) {
  PowerSeries<T> r(a.n_max(), a.tilt);
  for (std::size_t i = 1; i <= a.n_max(); ++i) r[i] = a.tilt * a[i - 1];
  return r;
}

// The series z, tilted.
template <class T>
PowerSeries<T> ps_z(std::size_t n_max, const T& tilt) {
  PowerSeries<T> r(n_max, tilt);
  if (n_max >= 1) r[1] = tilt;
  return r;
}

template <class T>
PowerSeries<T> ps_retilt(const PowerSeries<T>& a, const T& tilt) {
  PowerSeries<T> r(a.n_max(), tilt);
  T ratio = tilt / a.tilt, f = T(1);
  for (std::size_t i = 0; i <= a.n_max(); ++i) {
    r[i] = a[i] * f;
    f *= ratio;
  }
  return r;
}

// exp(a) for a with zero constant term: n f_n = sum_k k a_k f_{n-k}.
template <class T>
PowerSeries<T> ps_exp(const PowerSeries<T>& a) {
  if (a[0] != T(0)) throw std::invalid_argument("ps_exp: nonzero constant term");
  PowerSeries<T> f(a.n_max(), a.tilt);
  f[0] = T(1);
  for (std::size_t n = 1; n <= a.n_max(); ++n) {
    T s(0);
    for (std::size_t k = 1; k <= n; ++k) s += T(static_cast<long>(k)) * a[k] * f[n - k];
    f[n] = s / T(static_cast<long>(n));
  }
  return f;
}

// 1/(1-a) for a with zero constant term.
template <class T>
PowerSeries<T> ps_geometric(const PowerSeries<T>& a) {
  if (a[0] != T(0)) throw std::invalid_argument("ps_geometric: nonzero constant term");
  PowerSeries<T> q(a.n_max(), a.tilt);
  q[0] = T(1);
  for (std::size_t n = 1; n <= a.n_max(); ++n) {
    T s(0);
    for (std::size_t k = 1; k <= n; ++k) s += a[k] * q[n - k];
    q[n] = s;
  }
  return q;
}

// outer(inner(z)) by Horner over truncated powers. The result carries the
// inner tilt; inner values are rescaled by the outer tilt.
template <class T>
PowerSeries<T> ps_compose(const PowerSeries<T>& outer, const PowerSeries<T>& inner) {
  if (inner[0] != T(0)) throw std::invalid_argument("ps_compose: inner series has a constant term");
  std::size_t n = inner.n_max();
  PowerSeries<T> g = ps_scale(inner, T(1) / outer.tilt);
  std::size_t low = detail::lowest_degree(g);
  PowerSeries<T> r(n, inner.tilt);
  if (low > n) {
    r[0] = outer[0];
    return r;
  }
  std::size_t deg = std::min(outer.n_max(), n / low);
  // Horner: r = c_deg; r = r*g + c_{j}
  r[0] = outer.at(deg);
  for (std::size_t j = deg; j-- > 0;) {
    r = ps_mul(r, g);
    r[0] += outer.at(j);
  }
  return r;
}

template <class T>
T ps_eval_partial(const PowerSeries<T>& a, const T& x_over_tilt, std::size_t upto) {
  T s(0), p(1);
  for (std::size_t i = 0; i <= std::min(upto, a.n_max()); ++i) {
    s += a[i] * p;
    p *= x_over_tilt;
  }
  return s;
}

// Picard iteration X <- F(X) from X = 0; returns the fixpoint and the number
// of iterations until the truncated coefficients stopped changing.
template <class T>
std::pair<PowerSeries<T>, std::size_t> fixpoint_picard(
    const std::function<PowerSeries<T>(const PowerSeries<T>&)>& F, std::size_t n_max, const T& tilt,
    std::size_t max_iter) {
  PowerSeries<T> x(n_max, tilt);
  for (std::size_t it = 1; it <= max_iter; ++it) {
    PowerSeries<T> y = F(x);
    if (y.coeffs == x.coeffs) return {x, it - 1};
    x = std::move(y);
  }
  return {x, max_iter};
}

// T(z) = z + sum_{k>=2} T^k/k!, by Picard iteration.
template <class T>
std::pair<PowerSeries<T>, std::size_t> fixpoint_cotree_picard(std::size_t n_max, const T& tilt = T(1)) {
  auto F = [&](const PowerSeries<T>& x) {
    PowerSeries<T> e = ps_exp(x);
    PowerSeries<T> r = ps_z(n_max, tilt);
    for (std::size_t i = 2; i <= n_max; ++i) r[i] = e[i] - x[i];
    return r;
  };
  return fixpoint_picard<T>(F, n_max, tilt, n_max + 2);
}

// A(z) = z + A^2/(1-A), by Picard iteration.
template <class T>
std::pair<PowerSeries<T>, std::size_t> fixpoint_sep_picard(std::size_t n_max, const T& tilt = T(1)) {
  auto F = [&](const PowerSeries<T>& x) {
    PowerSeries<T> r = ps_mul(ps_mul(x, x), ps_geometric(x));
    r[1] += tilt;
    return r;
  };
  return fixpoint_picard<T>(F, n_max, tilt, n_max + 2);
}

// T(W) for W with zero constant term, from 2Y = W + exp(Y) - 1 solved one
// coefficient at a time: y_n = w_n + (1/n) sum_{k<n} k y_k f_{n-k}, f = exp(Y).
template <class T>
PowerSeries<T> cotree_of(const PowerSeries<T>& w) {
  std::size_t n_max = w.n_max();
  PowerSeries<T> y(n_max, w.tilt), f(n_max, w.tilt);
  f[0] = T(1);
  for (std::size_t n = 1; n <= n_max; ++n) {
    T g(0);
    for (std::size_t k = 1; k < n; ++k) g += T(static_cast<long>(k)) * y[k] * f[n - k];
    g /= T(static_cast<long>(n));
    y[n] = w[n] + g;
    f[n] = y[n] + g;
  }
  return y;
}

// A(W) from 2Y^2 - (1+W)Y + W = 0.
template <class T>
PowerSeries<T> sep_of(const PowerSeries<T>& w) {
  std::size_t n_max = w.n_max();
  PowerSeries<T> y(n_max, w.tilt);
  for (std::size_t n = 1; n <= n_max; ++n) {
    T s = w[n];
    for (std::size_t i = 1; i < n; ++i) s += T(2) * y[i] * y[n - i] - w[i] * y[n - i];
    y[n] = s;
  }
  return y;
}

template <class T>
PowerSeries<T> fixpoint_cotree(std::size_t n_max, const T& tilt = T(1)) {
  return cotree_of(ps_z(n_max, tilt));
}

template <class T>
PowerSeries<T> class_sep_A(std::size_t n_max, const T& tilt = T(1)) {
  return sep_of(ps_z(n_max, tilt));
}

// O(W) = 2T(W) - W
template <class T>
PowerSeries<T> cograph_of(const PowerSeries<T>& w) {
  return ps_axpy(ps_scale(cotree_of(w), T(2)), T(-1), w);
}

// P(W) = 2A(W) - W
template <class T>
PowerSeries<T> separable_of(const PowerSeries<T>& w) {
  return ps_axpy(ps_scale(sep_of(w), T(2)), T(-1), w);
}

template <class T>
PowerSeries<T> class_cograph_O(std::size_t n_max, const T& tilt = T(1)) {
  return cograph_of(ps_z(n_max, tilt));
}

template <class T>
PowerSeries<T> class_sep_P(std::size_t n_max, const T& tilt = T(1)) {
  return separable_of(ps_z(n_max, tilt));
}

// O_1 = O, O_d = O(z O_{d-1}).
template <class T>
PowerSeries<T> class_Od(int d, std::size_t n_max, const T& tilt = T(1)) {
  if (d < 1) throw std::invalid_argument("class_Od: d >= 1");
  PowerSeries<T> o = class_cograph_O(n_max, tilt);
  for (int i = 2; i <= d; ++i) o = cograph_of(ps_shift(o));
  return o;
}

// P_1 = P, P_d = P(P_{d-1}^2).
template <class T>
PowerSeries<T> class_Pd(int d, std::size_t n_max, const T& tilt = T(1)) {
  if (d < 1) throw std::invalid_argument("class_Pd: d >= 1");
  PowerSeries<T> p = class_sep_P(n_max, tilt);
  for (int i = 2; i <= d; ++i) p = separable_of(ps_mul(p, p));
  return p;
}

enum class BaseClass { Cograph, Separable };

// O(qO) or P(qP).
template <class T>
PowerSeries<T> class_weighted(BaseClass base, const T& q, std::size_t n_max, const T& tilt = T(1)) {
  if (!(q > T(0))) throw std::invalid_argument("class_weighted: q > 0");
  if (base == BaseClass::Cograph) return cograph_of(ps_scale(class_cograph_O(n_max, tilt), q));
  return separable_of(ps_scale(class_sep_P(n_max, tilt), q));
}

// ---- closed-form constants ----

inline double rho_O() { return 2.0 * std::log(2.0) - 1.0; }
inline double rho_P() { return 3.0 - 2.0 * std::sqrt(2.0); }
inline double O_at_rho() { return 1.0; }
inline double P_at_rho() { return std::sqrt(2.0) - 1.0; }

double proasym_const(int d);
double sepasym_const(int d);
// exponent e in [z^n] ~ C n^{-e} rho^{-n}
inline double asym_exponent(int d) { return 1.0 + std::pow(2.0, -d); }

// offspring laws of the conditioned BGW descriptions
double cotree_offspring(int k);
double decomp_offspring(int k);

}  // namespace pdl

#endif
