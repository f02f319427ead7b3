#include "pdl/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pdl {

GibbsModel::GibbsModel(Series v_, Series w_, std::string name_)
    : v(std::move(v_)), w(std::move(w_)), name(std::move(name_)) {
  for (double x : v.coeffs)
    if (!(x >= 0) || !std::isfinite(x)) throw std::invalid_argument("GibbsModel: v must be finite, >= 0");
  for (double x : w.coeffs)
    if (!(x >= 0) || !std::isfinite(x)) throw std::invalid_argument("GibbsModel: w must be finite, >= 0");
  if (!(v.tilt > 0) || !(w.tilt > 0)) throw std::invalid_argument("GibbsModel: tilts must be positive");
  if (!(w.at(0) < 1.0)) throw std::invalid_argument("GibbsModel: need w_0 < 1");
}

int GibbsModel::support_gcd() const {
  int g = 0;
  for (std::size_t k = 1; k <= w.n_max(); ++k)
    if (w[k] > 0) g = std::gcd(g, static_cast<int>(k));
  return g;
}

GibbsTable::GibbsTable(GibbsModel model, int n) : model_(std::move(model)), n_(n) {
  if (n < 0) throw std::invalid_argument("GibbsTable: n >= 0");
  if (static_cast<std::size_t>(n) > model_.n_max())
    throw std::invalid_argument("GibbsTable: n exceeds the model truncation");
  wt_.assign(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) wt_[k] = model_.comp(k);
  int lo_w = 0;
  while (lo_w <= n && wt_[lo_w] == 0) ++lo_w;

  // hard bound on the number of components that can matter
  long bound = static_cast<long>(model_.v.n_max());
  if (wt_[0] == 0) bound = std::min<long>(bound, lo_w > n ? 0 : n / lo_w);
  const std::size_t budget = 60'000'000;  // doubles in the table
  bound = std::min<long>(bound, static_cast<long>(budget / (n + 1)));

  std::vector<double> row0(n + 1, 0.0);
  row0[0] = 1.0;
  p_.push_back(std::move(row0));
  auto contribution = [&](int l) { return model_.head(l) * p_[l][n]; };

  long target = 16;
  for (;;) {
    while (static_cast<long>(p_.size()) - 1 < std::min(target, bound)) {
      const auto& prev = p_.back();
      std::vector<double> next(n + 1, 0.0);
      int lo = 0;
      while (lo <= n && prev[lo] == 0) ++lo;
      for (int i = lo; i <= n; ++i) {
        double a = prev[i];
        if (a == 0) continue;
        for (int k = lo_w; i + k <= n; ++k) next[i + k] += a * wt_[k];
      }
      for (double& x : next)
        if (x < 1e-300) x = 0;
      p_.push_back(std::move(next));
    }
    long have = static_cast<long>(p_.size()) - 1;
    if (have >= bound) {
      tail_ = 0;
      if (bound == static_cast<long>(budget / (n + 1)) && wt_[0] > 0) {
        // the budget, not the model, stopped the growth; report the last block
        double blk = 0;
        for (long l = have / 2 + 1; l <= have; ++l) blk += contribution(static_cast<int>(l));
        tail_ = blk;
      }
      break;
    }
    double total = 0, blk = 0;
    for (long l = 0; l <= have; ++l) {
      double c = contribution(static_cast<int>(l));
      total += c;
      if (l > have / 2) blk += c;
    }
    if (total > 0 && blk < 1e-12 * total) {
      tail_ = blk;
      break;
    }
    target *= 2;
  }
  u_.assign(n + 1, 0.0);
  for (int m = 0; m <= n; ++m)
    for (int l = 0; l <= cap(); ++l) u_[m] += model_.head(l) * p_[l][m];
}

double GibbsTable::tilted_u(int m) const {
  if (m < 0 || m > n_) throw std::out_of_range("GibbsTable: size outside table");
  return u_[m];
}

std::vector<double> GibbsTable::count_law(int m) const {
  double u = tilted_u(m);
  if (!(u > 0)) throw InfeasibleSize("Gibbs: u_n = 0");
  std::vector<double> law(cap() + 1, 0.0);
  for (int l = 0; l <= cap(); ++l) law[l] = model_.head(l) * p_[l][m] / u;
  return law;
}

PartitionSample GibbsTable::sample(int m, Rng& rng, bool with_size_biased) const {
  double u = tilted_u(m);
  if (!(u > 0)) throw InfeasibleSize("Gibbs: u_n = 0 for n = " + std::to_string(m));
  PartitionSample s;
  s.n = m;
  // number of components, scanning upward
  double x = uniform01(rng) * u;
  int l = -1, last = -1;
  for (int j = 0; j <= cap(); ++j) {
    double c = model_.head(j) * p_[j][m];
    if (c <= 0) continue;
    last = j;
    if (x < c) {
      l = j;
      break;
    }
    x -= c;
  }
  if (l < 0) l = last;
  s.num_components = l;
  int rest = m;
  for (int j = l; j >= 1; --j) {
    const auto& below = p_[j - 1];
    double tot = p_[j][rest];
    double y = uniform01(rng) * tot;
    int pick = -1, lastk = -1;
    for (int k = 0; k <= rest; ++k) {
      double c = wt_[k] * below[rest - k];
      if (c <= 0) continue;
      lastk = k;
      if (y < c) {
        pick = k;
        break;
      }
      y -= c;
    }
    if (pick < 0) pick = lastk;
    s.sizes.push_back(pick);
    rest -= pick;
  }
  shuffle_range(s.sizes.begin(), s.sizes.end(), rng);
  if (with_size_biased) s.size_biased = size_biased_order(s.sizes, rng);
  return s;
}

std::map<int, double> GibbsTable::size_biased_first(int m) const {
  double u = tilted_u(m);
  if (!(u > 0)) throw InfeasibleSize("Gibbs: u_n = 0");
  std::map<int, double> law;
  if (m == 0) return law;
  for (int k = 1; k <= m; ++k) {
    if (wt_[k] == 0) continue;
    double s = 0;
    for (int l = 1; l <= cap(); ++l) s += model_.head(l) * l * p_[l - 1][m - k];
    double pr = static_cast<double>(k) / m * wt_[k] * s / u;
    if (pr > 0) law[k] = pr;
  }
  return law;
}

PartitionFunction partition_function(const GibbsModel& m, int n) {
  GibbsTable t(m, n);
  PartitionFunction pf;
  pf.tilted = t.tilted_u(n);
  pf.log_value = std::log(pf.tilted) - n * std::log(m.w.tilt);
  pf.tail_mass = t.tail_mass();
  pf.warning = t.truncation_warning();
  return pf;
}

PartitionSample sample_exact(const GibbsModel& m, int n, Rng& rng) {
  GibbsTable t(m, n);
  return t.sample(n, rng);
}

std::map<int, double> size_biased_first(const GibbsModel& m, int n) {
  return GibbsTable(m, n).size_biased_first(n);
}

std::vector<int> size_biased_order(const std::vector<int>& sizes, Rng& rng) {
  std::vector<int> pool;
  for (int s : sizes)
    if (s > 0) pool.push_back(s);
  std::vector<int> out;
  long rest = std::accumulate(pool.begin(), pool.end(), 0L);
  while (!pool.empty()) {
    long x = static_cast<long>(uniform_index(static_cast<std::size_t>(rest), rng));
    std::size_t i = 0;
    while (x >= pool[i]) x -= pool[i++];
    out.push_back(pool[i]);
    rest -= pool[i];
    pool.erase(pool.begin() + static_cast<long>(i));
  }
  return out;
}

KolchinResult sample_kolchin(const GibbsModel& m, int n, std::size_t max_trials, Rng& rng,
                             double tilt_ratio) {
  if (n < 0 || static_cast<std::size_t>(n) > m.n_max())
    throw std::invalid_argument("sample_kolchin: n outside the model truncation");
  if (!(tilt_ratio > 0)) throw std::invalid_argument("sample_kolchin: tilt ratio > 0");
  int g = m.support_gcd();
  if (n > 0 && (g == 0 || n % g != 0))
    throw InfeasibleSize("sample_kolchin: n not on the support lattice (gcd " + std::to_string(g) + ")");
  // X law on 0..n and the matching normalizer for N; the consistent
  // normalizer makes the conditioned law exact despite the truncation.
  std::vector<double> xw(n + 1);
  double W = 0, f = 1;
  for (int k = 0; k <= n; ++k) {
    xw[k] = m.comp(k) * f;
    W += xw[k];
    f *= tilt_ratio;
  }
  if (!(W > 0)) throw InfeasibleSize("sample_kolchin: no component mass");
  std::size_t lmax = m.v.n_max();
  std::vector<double> nl(lmax + 1, 0.0);
  double best = -INFINITY;
  std::vector<double> lg(lmax + 1, -INFINITY);
  for (std::size_t l = 0; l <= lmax; ++l) {
    if (m.head(l) <= 0) continue;
    lg[l] = std::log(m.head(l)) + static_cast<double>(l) * std::log(W);
    best = std::max(best, lg[l]);
  }
  if (!std::isfinite(best)) throw InfeasibleSize("sample_kolchin: no head mass");
  for (std::size_t l = 0; l <= lmax; ++l) nl[l] = std::exp(lg[l] - best);
  double ntot = std::accumulate(nl.begin(), nl.end(), 0.0);

  KolchinResult res;
  for (std::size_t trial = 1; trial <= max_trials; ++trial) {
    std::size_t l = sample_discrete(nl, ntot, rng);
    std::vector<int> xs;
    long sum = 0;
    bool ok = true;
    for (std::size_t i = 0; i < l; ++i) {
      int x = static_cast<int>(sample_discrete(xw, W, rng));
      sum += x;
      if (sum > n) {
        ok = false;
        break;
      }
      xs.push_back(x);
    }
    if (ok && sum == n) {
      res.trials = trial;
      res.sample.n = n;
      res.sample.num_components = static_cast<int>(l);
      res.sample.sizes = std::move(xs);
      return res;
    }
  }
  throw KolchinExhausted("sample_kolchin: no acceptance in " + std::to_string(max_trials) + " trials",
                         max_trials);
}

GibbsModel gibbs_model_Od(int d, std::size_t n_max) {
  if (d < 2) throw std::invalid_argument("gibbs_model_Od: d >= 2");
  double r = rho_O();
  Series v = class_cograph_O(n_max, r);
  Series w = ps_shift(class_Od(d - 1, n_max, r));
  return GibbsModel(v, w, "O" + std::to_string(d));
}

GibbsModel gibbs_model_Pd(int d, std::size_t n_max) {
  if (d < 2) throw std::invalid_argument("gibbs_model_Pd: d >= 2");
  double r = rho_P();
  Series v = class_sep_P(n_max, r);
  Series p = class_Pd(d - 1, n_max, r);
  return GibbsModel(v, ps_mul(p, p), "P" + std::to_string(d));
}

GibbsModel gibbs_model_weighted(BaseClass base, double q, std::size_t n_max) {
  if (!(q > 0)) throw std::invalid_argument("gibbs_model_weighted: q > 0");
  const bool cog = base == BaseClass::Cograph;
  const double rho = cog ? rho_O() : rho_P();
  const double at = cog ? O_at_rho() : P_at_rho();
  auto make = [&](double tilt) { return cog ? class_cograph_O(n_max, tilt) : class_sep_P(n_max, tilt); };
  Series head = make(rho);
  double lambda = rho;
  if (q * at > rho) {
    // supercritical: tilt the components to the saddle point q B(lambda) = rho
    double lo = 0, hi = 1;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (q * ps_eval_partial(head, mid, n_max) > rho) hi = mid;
      else lo = mid;
    }
    lambda = rho * 0.5 * (lo + hi);
  }
  Series comp = ps_scale(make(lambda), q);
  return GibbsModel(head, comp, std::string(cog ? "wO" : "wP") + "(" + std::to_string(q) + ")");
}

}  // namespace pdl
