#include "pdl/pd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pdl {

void PDParams::validate() const {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("PDParams: need 0 < alpha < 1");
  if (!(theta > -alpha)) throw std::invalid_argument("PDParams: need theta > -alpha");
}

double pochhammer(double x, int m) { return gen_pochhammer(x, 1.0, m); }

double gen_pochhammer(double x, double d, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= x + i * d;
  return r;
}

double StickBreaker::next(Rng& rng) {
  double l = static_cast<double>(sticks_.size() + 1);
  double y = beta_draw(1.0 - p_.alpha, p_.theta + l * p_.alpha, rng);
  double v = y * residual_;
  residual_ *= 1.0 - y;
  sticks_.push_back(v);
  cum_.push_back((cum_.empty() ? 0.0 : cum_.back()) + v);
  return v;
}

std::size_t StickBreaker::locate(double u, Rng& rng) {
  auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  if (it != cum_.end()) return static_cast<std::size_t>(it - cum_.begin());
  while (cum_.empty() || cum_.back() <= u) {
    if (sticks_.size() > 100'000'000)
      throw std::runtime_error("StickBreaker: point not covered after 1e8 sticks");
    next(rng);
  }
  return sticks_.size() - 1;
}

StickSample stick_breaking(const PDParams& p, double epsilon, Rng& rng) {
  p.validate();
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("stick_breaking: epsilon in (0,1)");
  StickSample s;
  double residual = 1.0;
  for (std::size_t l = 1; residual >= epsilon; ++l) {
    double y = beta_draw(1.0 - p.alpha, p.theta + static_cast<double>(l) * p.alpha, rng);
    double v = y * residual;
    residual *= 1.0 - y;
    if (v > 0) s.weights.push_back(v);
    ++s.truncation_count;
  }
  s.residual_mass = residual;
  std::sort(s.weights.begin(), s.weights.end(), std::greater<double>());
  return s;
}

std::vector<int> SetPartition::sizes() const {
  std::vector<int> s;
  for (const auto& b : blocks) s.push_back(static_cast<int>(b.size()));
  return s;
}

std::string SetPartition::key() const {
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += '|';
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(blocks[i][j] + 1);
    }
  }
  return out;
}

void SetPartition::canonicalize() {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

std::vector<int> crp_tables(const PDParams& p, int k, Rng& rng) {
  std::vector<int> table(k);
  std::vector<int> counts;
  for (int i = 0; i < k; ++i) {
    int m = static_cast<int>(counts.size());
    if (i == 0) {
      table[0] = 0;
      counts.push_back(1);
      continue;
    }
    double total = p.theta + i;
    double u = uniform01(rng) * total;
    int chosen = m;
    for (int j = 0; j < m; ++j) {
      double wj = counts[j] - p.alpha;
      if (u < wj) {
        chosen = j;
        break;
      }
      u -= wj;
    }
    if (chosen == m) counts.push_back(1);
    else ++counts[chosen];
    table[i] = chosen;
  }
  return table;
}

SetPartition partition_from_labels(const std::vector<int>& labels) {
  SetPartition sp;
  sp.k = static_cast<int>(labels.size());
  int m = 0;
  for (int l : labels) m = std::max(m, l + 1);
  sp.blocks.assign(m, {});
  for (int i = 0; i < sp.k; ++i) sp.blocks[labels[i]].push_back(i);
  sp.blocks.erase(std::remove_if(sp.blocks.begin(), sp.blocks.end(),
                                 [](const auto& b) { return b.empty(); }),
                  sp.blocks.end());
  sp.canonicalize();
  return sp;
}

SetPartition crp_run(const PDParams& p, int k, Rng& rng) {
  p.validate();
  if (k < 1) throw std::invalid_argument("crp_run: k >= 1");
  return partition_from_labels(crp_tables(p, k, rng));
}

namespace {

// log of prod_{i=1}^{r-1}(theta+i alpha) / prod_{i=1}^{k-1}(theta+i) * prod (1-alpha)_{k_j-1};
// the common factor theta is cancelled so theta = 0 is handled.
double log_eppf(const PDParams& p, const std::vector<int>& sizes) {
  int k = std::accumulate(sizes.begin(), sizes.end(), 0);
  int r = static_cast<int>(sizes.size());
  double s = 0;
  for (int i = 1; i < r; ++i) s += std::log(p.theta + i * p.alpha);
  for (int i = 1; i < k; ++i) s -= std::log(p.theta + i);
  for (int kj : sizes)
    for (int i = 0; i < kj - 1; ++i) s += std::log(1.0 - p.alpha + i);
  return s;
}

double direct_eppf(const PDParams& p, const std::vector<int>& sizes) {
  int k = std::accumulate(sizes.begin(), sizes.end(), 0);
  int r = static_cast<int>(sizes.size());
  double num = 1, den = 1;
  for (int i = 1; i < r; ++i) num *= p.theta + i * p.alpha;
  for (int i = 1; i < k; ++i) den *= p.theta + i;
  for (int kj : sizes) num *= pochhammer(1.0 - p.alpha, kj - 1);
  return num / den;
}

double log_binom(int n, int m) {
  return std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
}

}  // namespace

double composition_multiplicity(const Composition& comp) {
  int rest = std::accumulate(comp.begin(), comp.end(), 0);
  double ls = 0;
  for (int kj : comp) {
    ls += log_binom(rest - 1, kj - 1);
    rest -= kj;
  }
  double v = std::exp(ls);
  return ls < 40 ? std::round(v) : v;
}

double eppf_exchangeable(const PDParams& p, const std::vector<int>& sizes) {
  p.validate();
  int k = 0;
  for (int s : sizes) {
    if (s < 1) throw std::invalid_argument("eppf: block sizes must be >= 1");
    k += s;
  }
  if (k == 0) return 1.0;
  return k > 30 ? std::exp(log_eppf(p, sizes)) : direct_eppf(p, sizes);
}

double composition_prob(const PDParams& p, const Composition& comp) {
  p.validate();
  int k = 0;
  for (int s : comp) {
    if (s < 1) throw std::invalid_argument("composition_prob: sizes must be >= 1");
    k += s;
  }
  if (k == 0) return 1.0;
  if (k > 30) {
    double ls = 0;
    int rest = k;
    for (int kj : comp) {
      ls += log_binom(rest - 1, kj - 1);
      rest -= kj;
    }
    return std::exp(ls + log_eppf(p, comp));
  }
  double s = 1;
  int rest = k;
  for (int kj : comp) {
    // C(rest-1, kj-1)
    double c = 1;
    for (int i = 1; i <= kj - 1; ++i) c = c * (rest - kj + i) / i;
    s *= c;
    rest -= kj;
  }
  return s * direct_eppf(p, comp);
}

void for_each_set_partition(int k, const std::function<void(const SetPartition&)>& f) {
  if (k == 0) {
    f(SetPartition{});
    return;
  }
  // restricted growth strings
  std::vector<int> a(k, 0), mx(k, 0);
  for (;;) {
    SetPartition sp;
    sp.k = k;
    int m = 0;
    for (int x : a) m = std::max(m, x + 1);
    sp.blocks.assign(m, {});
    for (int i = 0; i < k; ++i) sp.blocks[a[i]].push_back(i);
    f(sp);
    int i = k - 1;
    while (i > 0 && a[i] == mx[i - 1] + 1) --i;
    if (i == 0) return;
    ++a[i];
    mx[i] = std::max(mx[i - 1], a[i]);
    for (int j = i + 1; j < k; ++j) {
      a[j] = 0;
      mx[j] = mx[i];
    }
  }
}

void for_each_composition(int k, const std::function<void(const Composition&)>& f) {
  Composition c;
  std::function<void(int)> rec = [&](int rest) {
    if (rest == 0) {
      f(c);
      return;
    }
    for (int s = 1; s <= rest; ++s) {
      c.push_back(s);
      rec(rest - s);
      c.pop_back();
    }
  };
  if (k == 0) f(c);
  else rec(k);
}

std::string composition_key(const Composition& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  return out;
}

SetPartition NestedPartition::fine() const {
  SetPartition f;
  f.k = outer.k;
  for (const auto& in : inner)
    for (const auto& b : in.blocks) f.blocks.push_back(b);
  f.canonicalize();
  return f;
}

std::string NestedPartition::key() const { return outer.key() + "||" + fine().key(); }

namespace {

void check_duality_params(double a1, double a2, double theta) {
  if (!(a1 > 0 && a1 < 1 && a2 > 0 && a2 < 1))
    throw std::invalid_argument("duality: need 0 < alpha1, alpha2 < 1");
  if (!(theta > -a1 * a2)) throw std::invalid_argument("duality: need theta > -alpha1*alpha2");
}

NestedPartition make_nested(SetPartition outer, std::vector<SetPartition> inner) {
  // order inner to follow canonical outer order
  std::vector<std::size_t> idx(outer.blocks.size());
  std::iota(idx.begin(), idx.end(), 0);
  for (auto& b : outer.blocks) std::sort(b.begin(), b.end());
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return outer.blocks[a].front() < outer.blocks[b].front();
  });
  NestedPartition np;
  np.outer.k = outer.k;
  for (std::size_t i : idx) {
    np.outer.blocks.push_back(outer.blocks[i]);
    SetPartition in = inner[i];
    in.canonicalize();
    np.inner.push_back(in);
  }
  return np;
}

SetPartition lift(const SetPartition& local, const std::vector<int>& elems) {
  SetPartition g;
  g.k = static_cast<int>(elems.size());
  for (const auto& b : local.blocks) {
    std::vector<int> gb;
    for (int x : b) gb.push_back(elems[x]);
    g.blocks.push_back(gb);
  }
  return g;
}

}  // namespace

NestedPartition frag_sample(int k, double a1, double a2, double theta, Rng& rng) {
  check_duality_params(a1, a2, theta);
  SetPartition outer = crp_run(PDParams(a1 * a2, theta), k, rng);
  std::vector<SetPartition> inner;
  PDParams ip(a1, -a1 * a2);
  for (const auto& b : outer.blocks)
    inner.push_back(lift(crp_run(ip, static_cast<int>(b.size()), rng), b));
  return make_nested(outer, inner);
}

NestedPartition coag_sample(int k, double a1, double a2, double theta, Rng& rng) {
  check_duality_params(a1, a2, theta);
  SetPartition fine = crp_run(PDParams(a1, theta), k, rng);
  int r = static_cast<int>(fine.blocks.size());
  SetPartition groups = crp_run(PDParams(a2, theta / a1), r, rng);
  SetPartition outer;
  outer.k = k;
  std::vector<SetPartition> inner;
  for (const auto& g : groups.blocks) {
    std::vector<int> ob;
    SetPartition in;
    for (int t : g) {
      ob.insert(ob.end(), fine.blocks[t].begin(), fine.blocks[t].end());
      in.blocks.push_back(fine.blocks[t]);
    }
    outer.blocks.push_back(ob);
    inner.push_back(in);
  }
  return make_nested(outer, inner);
}

namespace {

// Enumerates nested partitions of [k]; f receives outer and the per-block inner partitions.
void for_each_nested(int k,
                     const std::function<void(const SetPartition&, const std::vector<SetPartition>&)>& f) {
  for_each_set_partition(k, [&](const SetPartition& outer) {
    std::vector<SetPartition> inner(outer.blocks.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == outer.blocks.size()) {
        f(outer, inner);
        return;
      }
      const auto& b = outer.blocks[i];
      for_each_set_partition(static_cast<int>(b.size()), [&](const SetPartition& local) {
        inner[i] = lift(local, b);
        rec(i + 1);
      });
    };
    rec(0);
  });
}

}  // namespace

Law frag_distribution(int k, double a1, double a2, double theta) {
  check_duality_params(a1, a2, theta);
  if (k < 1 || k > 7) throw std::invalid_argument("frag_distribution: 1 <= k <= 7");
  PDParams op(a1 * a2, theta), ip(a1, -a1 * a2);
  Law law;
  for_each_nested(k, [&](const SetPartition& outer, const std::vector<SetPartition>& inner) {
    double pr = eppf_exchangeable(op, outer.sizes());
    for (const auto& in : inner) pr *= eppf_exchangeable(ip, in.sizes());
    law[make_nested(outer, inner).key()] += pr;
  });
  return law;
}

Law coag_distribution(int k, double a1, double a2, double theta) {
  check_duality_params(a1, a2, theta);
  if (k < 1 || k > 7) throw std::invalid_argument("coag_distribution: 1 <= k <= 7");
  PDParams fp(a1, theta), gp(a2, theta / a1);
  Law law;
  for_each_nested(k, [&](const SetPartition& outer, const std::vector<SetPartition>& inner) {
    std::vector<int> fine_sizes, group_sizes;
    for (const auto& in : inner) {
      group_sizes.push_back(static_cast<int>(in.blocks.size()));
      for (const auto& b : in.blocks) fine_sizes.push_back(static_cast<int>(b.size()));
    }
    double pr = eppf_exchangeable(fp, fine_sizes) * eppf_exchangeable(gp, group_sizes);
    law[make_nested(outer, inner).key()] += pr;
  });
  return law;
}

}  // namespace pdl
