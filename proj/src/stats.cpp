#include "pdl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace pdl {

void EmpiricalDist::merge(const EmpiricalDist& other) {
  for (const auto& [k, c] : other.counts) counts[k] += c;
  total += other.total;
}

double EmpiricalDist::freq(const std::string& key) const {
  if (total == 0) return 0;
  auto it = counts.find(key);
  return it == counts.end() ? 0.0 : static_cast<double>(it->second) / total;
}

Law EmpiricalDist::normalized() const {
  Law out;
  for (const auto& [k, c] : counts) out[k] = static_cast<double>(c) / total;
  return out;
}

double chi_square_sf(double x, double dof) {
  if (x <= 0) return 1.0;
  if (!std::isfinite(x)) return 0.0;
  return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

ChiSquareResult chi_square(const EmpiricalDist& emp, const Law& expected,
                           double min_expected) {
  if (emp.total == 0) throw std::invalid_argument("chi_square: empty distribution");
  ChiSquareResult res;
  for (const auto& [k, c] : emp.counts) {
    auto it = expected.find(k);
    if (c > 0 && (it == expected.end() || it->second <= 0)) {
      res.statistic = std::numeric_limits<double>::infinity();
      res.p_value = 0;
      return res;
    }
  }
  const double n = static_cast<double>(emp.total);
  struct Bin {
    double e, o;
  };
  std::vector<Bin> bins;
  for (const auto& [k, p] : expected) {
    if (p <= 0) continue;
    auto it = emp.counts.find(k);
    double o = it == emp.counts.end() ? 0.0 : static_cast<double>(it->second);
    bins.push_back({p * n, o});
  }
  std::sort(bins.begin(), bins.end(), [](const Bin& a, const Bin& b) { return a.e < b.e; });
  std::vector<Bin> pooled;
  Bin acc{0, 0};
  std::size_t i = 0;
  while (i < bins.size() && bins[i].e < min_expected) {
    acc.e += bins[i].e;
    acc.o += bins[i].o;
    ++i;
  }
  // A pooled bin that is still small absorbs the next smallest regular bins.
  while (acc.e > 0 && acc.e < min_expected && i < bins.size()) {
    acc.e += bins[i].e;
    acc.o += bins[i].o;
    ++i;
  }
  if (acc.e > 0) pooled.push_back(acc);
  for (; i < bins.size(); ++i) pooled.push_back(bins[i]);
  res.bins = static_cast<int>(pooled.size());
  for (const auto& b : pooled) res.statistic += (b.o - b.e) * (b.o - b.e) / b.e;
  res.dof = std::max(0, res.bins - 1);
  res.p_value = res.dof == 0 ? 1.0 : chi_square_sf(res.statistic, res.dof);
  return res;
}

double tv_distance(const EmpiricalDist& emp, const Law& expected) {
  return tv_distance(emp.normalized(), expected);
}

double tv_distance(const Law& a, const Law& b) {
  double s = 0;
  for (const auto& [k, p] : a) {
    auto it = b.find(k);
    s += std::abs(p - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [k, p] : b)
    if (!a.count(k)) s += std::abs(p);
  return 0.5 * s;
}

double max_abs_diff(const Law& a, const Law& b) {
  double m = 0;
  for (const auto& [k, p] : a) {
    auto it = b.find(k);
    m = std::max(m, std::abs(p - (it == b.end() ? 0.0 : it->second)));
  }
  for (const auto& [k, p] : b)
    if (!a.count(k)) m = std::max(m, std::abs(p));
  return m;
}

MomentCI moment_ci(const std::vector<double>& xs, double r, double z) {
  if (xs.size() < 30) throw std::invalid_argument("moment_ci: need at least 30 samples");
  MomentCI ci;
  ci.count = xs.size();
  double s = 0, s2 = 0;
  for (double x : xs) {
    double y = r == 1.0 ? x : std::pow(x, r);
    s += y;
    s2 += y * y;
  }
  double n = static_cast<double>(xs.size());
  ci.mean = s / n;
  double var = std::max(0.0, (s2 - n * ci.mean * ci.mean) / (n - 1));
  ci.se = std::sqrt(var / n);
  ci.lo = ci.mean - z * ci.se;
  ci.hi = ci.mean + z * ci.se;
  return ci;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

}  // namespace pdl
