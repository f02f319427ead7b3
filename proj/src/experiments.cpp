#include "pdl/experiments.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pdl/cotree.hpp"
#include "pdl/gibbs.hpp"
#include "pdl/graph_kernels.hpp"
#include "pdl/pd.hpp"
#include "pdl/perm_kernels.hpp"
#include "pdl/series.hpp"
#include "pdl/stats.hpp"
#include "pdl/superperm.hpp"
#include "pdl/supergraph.hpp"

namespace pdl {

namespace {

using Rational = boost::multiprecision::cpp_rational;

const double kChiLevel = 1e-3;

std::size_t reps(double base, const ExperimentOptions& o) {
  return static_cast<std::size_t>(std::max(30.0, std::round(base * o.scale)));
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

EmpiricalDist tally(const std::vector<std::string>& keys) {
  EmpiricalDist e;
  for (const auto& k : keys) e.add(k);
  return e;
}

// ---- brute-force oracles ----

bool induced_p4(const Graph& g, int a, int b, int c, int d) {
  int v[4] = {a, b, c, d}, deg[4] = {0, 0, 0, 0}, m = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (g.adj(v[i], v[j])) {
        ++m;
        ++deg[i];
        ++deg[j];
      }
  if (m != 3) return false;
  // three edges on four vertices: the path is the only one with degrees 1,1,2,2
  return *std::min_element(deg, deg + 4) == 1 && *std::max_element(deg, deg + 4) == 2;
}

long long count_p4_free(int n) {
  int pairs = n * (n - 1) / 2;
  long long cnt = 0;
  for (long mask = 0; mask < (1L << pairs); ++mask) {
    Graph g(n);
    int b = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++b)
        if (mask >> b & 1) g.set_edge(i, j);
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b2 = a + 1; b2 < n && ok; ++b2)
        for (int c = b2 + 1; c < n && ok; ++c)
          for (int d = c + 1; d < n && ok; ++d)
            if (induced_p4(g, a, b2, c, d)) ok = false;
    if (ok) ++cnt;
  }
  return cnt;
}

bool contains4(const Permutation& s, const Permutation& pat) {
  int n = s.n();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d)
          if (pattern(s, {a, b, c, d}) == pat) return true;
  return false;
}

long long count_separable_brute(int n) {
  Permutation p1 = Permutation::from_key("2413"), p2 = Permutation::from_key("3142");
  Permutation s = Permutation::identity(n);
  long long cnt = 0;
  do {
    if (!contains4(s, p1) && !contains4(s, p2)) ++cnt;
  } while (std::next_permutation(s.v.begin(), s.v.end()));
  return cnt;
}

Rational factorial_q(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// ---- shared samplers for the marginal experiments ----

std::string induced_key(const Supergraph& s, const std::vector<int>& vs) {
  std::string k;
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b) k.push_back(s.adjacent(vs[a], vs[b]) ? '1' : '0');
  return k;
}

std::vector<int> distinct_subset(int n, int k, Rng& rng) {
  std::vector<int> out;
  while (static_cast<int>(out.size()) < k) {
    int x = static_cast<int>(uniform_index(n, rng));
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Fraction of `draws` random vertex triples (with repetition) spanning a
// triangle; unbiased for t(K_3, G).
double triangle_fraction(const Supergraph& s, int draws, Rng& rng) {
  int hits = 0;
  for (int i = 0; i < draws; ++i) {
    int a = static_cast<int>(uniform_index(s.n, rng)), b = static_cast<int>(uniform_index(s.n, rng)),
        c = static_cast<int>(uniform_index(s.n, rng));
    hits += s.adjacent(a, b) && s.adjacent(b, c) && s.adjacent(a, c);
  }
  return static_cast<double>(hits) / draws;
}

double occ_fraction(const Permutation& s, const Permutation& nu, int draws, Rng& rng) {
  int hits = 0;
  for (int i = 0; i < draws; ++i) hits += pattern(s, distinct_subset(s.n(), nu.n(), rng)) == nu;
  return static_cast<double>(hits) / draws;
}

double median(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  std::size_t m = x.size() / 2;
  return x.size() % 2 ? x[m] : 0.5 * (x[m - 1] + x[m]);
}

// ---- criteria ----

CriterionResult exact_counts(const ExperimentOptions&) {
  CriterionResult r;
  r.pass = true;
  auto O = class_cograph_O<Rational>(6, Rational(1));
  auto P = class_sep_P<Rational>(6, Rational(1));
  const long long cog_fixed[] = {1, 2, 8, 52};
  const long long sep_fixed[] = {1, 2, 6, 22, 90};
  for (int n = 1; n <= 6; ++n) {
    Rational lab = O[n] * factorial_q(n);
    long long brute = count_p4_free(n);
    bool ok = boost::multiprecision::denominator(lab) == 1 && lab == Rational(brute);
    if (n <= 4) ok = ok && brute == cog_fixed[n - 1];
    r.metric("cographs_n" + std::to_string(n), static_cast<double>(brute));
    if (!ok) {
      r.pass = false;
      r.note("cograph count mismatch at n=" + std::to_string(n));
    }
  }
  for (int n = 1; n <= 6; ++n) {
    long long brute = count_separable_brute(n);
    bool ok = P[n] == Rational(brute);
    if (n <= 5) ok = ok && brute == sep_fixed[n - 1];
    r.metric("separable_n" + std::to_string(n), static_cast<double>(brute));
    if (!ok) {
      r.pass = false;
      r.note("separable count mismatch at n=" + std::to_string(n));
    }
  }
  return r;
}

CriterionResult eppf_crp(const ExperimentOptions& opt) {
  CriterionResult r;
  const std::vector<PDParams> grid = {{0.5, 0.5}, {0.5, -0.25}, {0.3, 1.0}, {0.7, -0.6}, {0.25, -0.125}, {0.9, 3.0}};
  double worst = 0;
  for (const auto& p : grid)
    for (int k = 1; k <= 8; ++k) {
      double sc = 0, sp = 0;
      for_each_composition(k, [&](const Composition& c) { sc += composition_prob(p, c); });
      for_each_set_partition(k, [&](const SetPartition& s) { sp += eppf_exchangeable(p, s.sizes()); });
      worst = std::max({worst, std::abs(sc - 1), std::abs(sp - 1)});
    }
  r.metric("max_normalization_error", worst);
  PDParams p(0.5, 0.5);
  Law expected;
  for_each_composition(5, [&](const Composition& c) { expected[composition_key(c)] = composition_prob(p, c); });
  auto keys = run_replicas<std::string>(reps(2e5, opt), opt.threads, opt.seed, "crp-k5", [&](std::size_t, Rng& rng) {
    return composition_key(crp_run(p, 5, rng).sizes());
  });
  auto chi = chi_square(tally(keys), expected);
  r.metric("crp_chi2", chi.statistic);
  r.metric("crp_dof", chi.dof);
  r.metric("crp_p_value", chi.p_value);
  r.pass = worst < 1e-12 && chi.p_value > kChiLevel;
  return r;
}

CriterionResult duality(const ExperimentOptions&) {
  CriterionResult r;
  const double sets[2][3] = {{0.5, 0.5, -0.125}, {0.5, 0.25, 1.0 / 3.0}};
  double worst = 0, norm = 0;
  for (const auto& s : sets)
    for (int k = 1; k <= 6; ++k) {
      Law f = frag_distribution(k, s[0], s[1], s[2]);
      Law c = coag_distribution(k, s[0], s[1], s[2]);
      worst = std::max(worst, max_abs_diff(f, c));
      double tf = 0;
      for (const auto& kv : f) tf += kv.second;
      norm = std::max(norm, std::abs(tf - 1));
    }
  r.metric("max_abs_diff", worst);
  r.metric("max_normalization_error", norm);
  r.pass = worst < 1e-10 && norm < 1e-12;
  return r;
}

GibbsModel toy_model(int which, std::size_t n_max) {
  Series v(n_max, 1.0), w(n_max, 1.0);
  for (std::size_t i = 1; i <= n_max; ++i) {
    if (which == 0) {
      v[i] = 1.0;
      w[i] = 1.0 / i;
    } else {
      v[i] = std::pow(2.0, i) / std::tgamma(i + 1.0);
      w[i] = i >= 2 ? 1.0 / std::tgamma(i + 1.0) : 0.0;
    }
  }
  return GibbsModel(v, w, which == 0 ? "toyA" : "toyB");
}

std::string size_key(int N, std::vector<int> sizes) {
  std::sort(sizes.rbegin(), sizes.rend());
  std::string k = std::to_string(N) + ":";
  for (std::size_t i = 0; i < sizes.size(); ++i) k += (i ? "," : "") + std::to_string(sizes[i]);
  return k;
}

// Law of (N, sorted sizes) from all set partitions weighted by u(P).
Law set_partition_oracle(const GibbsModel& m, int n) {
  Law law;
  double total = 0;
  for_each_set_partition(n, [&](const SetPartition& sp) {
    int l = static_cast<int>(sp.blocks.size());
    double u = std::tgamma(l + 1.0) * m.v.at(l);
    for (int s : sp.sizes()) u *= std::tgamma(s + 1.0) * m.w.at(s);
    if (u <= 0) return;
    law[size_key(l, sp.sizes())] += u;
    total += u;
  });
  for (auto& kv : law) kv.second /= total;
  return law;
}

// Same law from integer partitions and the tilted weights.
Law integer_partition_oracle(const GibbsModel& m, const GibbsTable& t, int n) {
  Law law;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int rest, int maxp) {
    if (rest == 0) {
      int l = static_cast<int>(parts.size());
      double pr = m.head(l) * std::tgamma(l + 1.0) / t.tilted_u(n);
      std::map<int, int> mult;
      for (int k : parts) {
        pr *= m.comp(k);
        ++mult[k];
      }
      for (auto [k, c] : mult) pr /= std::tgamma(c + 1.0);
      if (pr > 0) law[size_key(l, parts)] += pr;
      return;
    }
    for (int k = std::min(rest, maxp); k >= 1; --k) {
      if (m.comp(k) <= 0) continue;
      parts.push_back(k);
      rec(rest - k, k);
      parts.pop_back();
    }
  };
  rec(n, n);
  return law;
}

CriterionResult gibbs_oracle(const ExperimentOptions& opt) {
  CriterionResult r;
  r.pass = true;
  for (int which = 0; which < 2; ++which)
    for (int n : {5, 8}) {
      GibbsModel m = toy_model(which, n);
      GibbsTable t(m, n);
      Law oracle = set_partition_oracle(m, n);
      auto keys = run_replicas<std::string>(reps(1e5, opt), opt.threads, opt.seed,
                                            "gibbs-toy" + std::to_string(which) + "-" + std::to_string(n),
                                            [&](std::size_t, Rng& rng) {
                                              auto s = t.sample(n, rng);
                                              return size_key(s.num_components, s.sizes);
                                            });
      auto chi = chi_square(tally(keys), oracle);
      std::string tag = std::string(which ? "toyB" : "toyA") + "_n" + std::to_string(n);
      r.metric(tag + "_p_value", chi.p_value);
      if (chi.p_value <= kChiLevel) r.pass = false;
    }
  // Kolchin against the exact sampler, both against the integer-partition law
  const int n = 30;
  GibbsModel m = gibbs_model_Od(2, n);
  GibbsTable t(m, n);
  Law oracle = integer_partition_oracle(m, t, n);
  auto ex = run_replicas<std::string>(reps(1e5, opt), opt.threads, opt.seed, "gibbs-o2-exact",
                                      [&](std::size_t, Rng& rng) {
                                        auto s = t.sample(n, rng);
                                        return size_key(s.num_components, s.sizes);
                                      });
  std::vector<std::size_t> trials(reps(1e5, opt));
  auto ko = run_replicas<std::string>(reps(1e5, opt), opt.threads, opt.seed, "gibbs-o2-kolchin",
                                      [&](std::size_t i, Rng& rng) {
                                        auto res = sample_kolchin(m, n, 100000000, rng);
                                        trials[i] = res.trials;
                                        return size_key(res.sample.num_components, res.sample.sizes);
                                      });
  auto kt = run_replicas<std::string>(reps(2e4, opt), opt.threads, opt.seed, "gibbs-o2-kolchin-tilted",
                                      [&](std::size_t, Rng& rng) {
                                        auto res = sample_kolchin(m, n, 100000000, rng, 0.95);
                                        return size_key(res.sample.num_components, res.sample.sizes);
                                      });
  auto c1 = chi_square(tally(ex), oracle), c2 = chi_square(tally(ko), oracle), c3 = chi_square(tally(kt), oracle);
  double mean_trials = std::accumulate(trials.begin(), trials.end(), 0.0) / trials.size();
  r.metric("o2_n30_exact_p_value", c1.p_value);
  r.metric("o2_n30_kolchin_p_value", c2.p_value);
  r.metric("o2_n30_kolchin_tilt095_p_value", c3.p_value);
  r.metric("o2_n30_kolchin_acceptance", 1.0 / mean_trials);
  r.pass = r.pass && c1.p_value > kChiLevel && c2.p_value > kChiLevel && c3.p_value > kChiLevel;
  return r;
}

CriterionResult asymptotics(const ExperimentOptions&) {
  CriterionResult r;
  const std::vector<int> ns = {1000, 2000, 5000};
  Series o2 = class_Od<double>(2, 5000, rho_O());
  Series p2 = class_Pd<double>(2, 5000, rho_P());
  double e = asym_exponent(2);
  bool ok = true;
  for (int cls = 0; cls < 2; ++cls) {
    const Series& s = cls ? p2 : o2;
    double c = cls ? sepasym_const(2) : proasym_const(2);
    double prev = INFINITY;
    for (int n : ns) {
      double ratio = s[n] * std::pow(n, e) / c;
      r.metric(std::string(cls ? "P2" : "O2") + "_ratio_n" + std::to_string(n), ratio);
      double dev = std::abs(ratio - 1);
      if (dev >= prev) ok = false;
      prev = dev;
    }
    if (prev >= 0.1) ok = false;
  }
  r.pass = ok;
  return r;
}

// Ranked top three atoms of PD(alpha, theta): sticks are broken until the
// unbroken rest is below the third largest stick, or below 1e-5. The third
// atom can be far smaller than that and the number of sticks needed to
// certify it is heavy tailed; the cut moves ranked values by at most 1e-5.
std::array<double, 3> pd_top3(const PDParams& p, Rng& rng) {
  StickBreaker sb(p);
  std::vector<double> top;
  for (;;) {
    double v = sb.next(rng);
    top.push_back(v);
    std::sort(top.rbegin(), top.rend());
    if (top.size() > 3) top.resize(3);
    if (top.size() == 3 && sb.residual() < std::max(top[2], 1e-5)) break;
  }
  return {top[0], top[1], top[2]};
}

CriterionResult dilute(const ExperimentOptions& opt) {
  CriterionResult r;
  const int n = 3000;
  GibbsTable t(gibbs_model_Od(2, n), n);
  auto law = t.size_biased_first(n);
  double mean = 0;
  for (auto [k, p] : law) mean += p * k / n;
  r.metric("exact_mean_K1_over_n", mean);
  for (int m : {1000, 6000}) {
    GibbsTable tm(gibbs_model_Od(2, m), m);
    double e = 0;
    for (auto [k, p] : tm.size_biased_first(m)) e += p * k / m;
    r.metric("exact_mean_K1_over_n_n" + std::to_string(m), e);
  }
  const std::size_t R = reps(2000, opt);
  struct Row {
    double k1;
    std::array<double, 3> top;
  };
  auto rows = run_replicas<Row>(R, opt.threads, opt.seed, "dilute-o2", [&](std::size_t, Rng& rng) {
    auto s = t.sample(n, rng, true);
    std::vector<int> z = s.sizes;
    std::sort(z.rbegin(), z.rend());
    z.resize(std::max<std::size_t>(z.size(), 3), 0);
    return Row{static_cast<double>(s.size_biased.at(0)) / n,
               {static_cast<double>(z[0]) / n, static_cast<double>(z[1]) / n, static_cast<double>(z[2]) / n}};
  });
  PDParams pd(0.5, -0.25);
  auto atoms = run_replicas<std::array<double, 3>>(R, opt.threads, opt.seed, "dilute-pd",
                                                   [&](std::size_t, Rng& rng) { return pd_top3(pd, rng); });
  std::vector<double> k1;
  for (const auto& row : rows) k1.push_back(row.k1);
  MomentCI ci = moment_ci(k1);
  r.metric("mc_mean_K1_over_n", ci.mean);
  r.metric("mc_mean_K1_se", ci.se);
  double worst = 0;
  for (int c = 0; c < 3; ++c) {
    std::vector<double> a, b;
    for (const auto& row : rows) a.push_back(row.top[c]);
    for (const auto& at : atoms) b.push_back(at[c]);
    double d = ks_two_sample(a, b);
    r.metric("ks_rank" + std::to_string(c + 1), d);
    worst = std::max(worst, d);
  }
  const double target = 2.0 / 3.0;
  r.pass = std::abs(mean - target) < 0.02 && std::abs(ci.mean - target) < 0.02 && worst < 0.05;
  return r;
}

CriterionResult brownian_graphon(const ExperimentOptions& opt) {
  CriterionResult r;
  const int n = 2000;
  auto sampler = shared_cograph_sampler(n);
  Law exact = brownian_marginal_distribution(3);
  struct Row {
    std::string key;
    int edge;
  };
  auto rows = run_replicas<Row>(reps(1e4, opt), opt.threads, opt.seed, "brownian-cograph", [&](std::size_t, Rng& rng) {
    SignedLeafTree t = sampler->sample(n, rng);
    auto vs = distinct_subset(n, 3, rng);
    std::string k;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) k.push_back(t.leaf_lca_sign(vs[a], vs[b]) > 0 ? '1' : '0');
    auto e = distinct_subset(n, 2, rng);
    return Row{k, t.leaf_lca_sign(e[0], e[1]) > 0 ? 1 : 0};
  });
  EmpiricalDist emp;
  std::vector<double> edges;
  for (const auto& row : rows) {
    emp.add(row.key);
    edges.push_back(row.edge);
  }
  double tv = tv_distance(emp, exact);
  double exact_edge = 0;
  for (const auto& [k, p] : brownian_marginal_distribution(2)) exact_edge += k == "1" ? p : 0;
  MomentCI ci = moment_ci(edges);
  r.metric("tv_k3", tv);
  r.metric("exact_triangle_mass", exact.at("111"));
  r.metric("exact_edge_probability", exact_edge);
  r.metric("mc_edge_density", ci.mean);
  r.metric("mc_edge_density_se", ci.se);
  r.pass = tv < 0.03 && std::abs(exact_edge - 0.5) < 1e-15 && std::abs(exact.at("111") - 0.25) < 1e-15 &&
           std::abs(ci.mean - 0.5) < 4 * ci.se + 1e-12;
  return r;
}

CriterionResult pd_marginals(const ExperimentOptions& opt) {
  CriterionResult r;
  auto g = iterated_marginal_kernel(2);
  auto p = iterated_perm_kernel(2);
  Law ge = *g->exact_distribution(3), pe = *p->exact_distribution(3);
  auto gk = run_replicas<std::string>(reps(1e5, opt), opt.threads, opt.seed, "pd-graphon-k3",
                                      [&](std::size_t, Rng& rng) { return g->sample(3, rng).key(); });
  auto pk = run_replicas<std::string>(reps(1e5, opt), opt.threads, opt.seed, "pd-permuton-k3",
                                      [&](std::size_t, Rng& rng) { return p->sample(3, rng).key(); });
  double tg = tv_distance(tally(gk), ge), tp = tv_distance(tally(pk), pe);
  r.metric("graphon_tv_k3", tg);
  r.metric("permuton_tv_k3", tp);
  r.pass = tg < 0.02 && tp < 0.02;
  return r;
}

CriterionResult char_duality(const ExperimentOptions&) {
  CriterionResult r;
  auto L2 = iterated_marginal_kernel(2);
  auto B = brownian_kernel();
  PDGraphonKernel first(PDParams(0.25, -0.125), B, L2), second(PDParams(0.5, -0.125), L2, B);
  auto M2 = iterated_perm_kernel(2);
  auto BP = brownian_perm_kernel();
  PDPermutonKernel pfirst(PDParams(0.25, -0.125), BP, M2), psecond(PDParams(0.5, -0.125), M2, BP);
  double worst = 0;
  for (int k : {3, 4}) {
    double dg = max_abs_diff(*first.exact_distribution(k), *second.exact_distribution(k));
    double dp = max_abs_diff(*pfirst.exact_distribution(k), *psecond.exact_distribution(k));
    r.metric("graphon_max_diff_k" + std::to_string(k), dg);
    r.metric("permuton_max_diff_k" + std::to_string(k), dp);
    worst = std::max({worst, dg, dp});
  }
  r.pass = worst < 1e-10;
  return r;
}

CriterionResult invariance(const ExperimentOptions& opt) {
  CriterionResult r;
  const int n = 2000;
  auto gs = SupergraphSampler::iterated(2, n);
  auto ps = SuperpermSampler::iterated(2, n);
  Law ge = *iterated_marginal_kernel(2)->exact_distribution(3);
  Law pe = *iterated_perm_kernel(2)->exact_distribution(3);
  auto gk = run_replicas<std::string>(reps(1e4, opt), opt.threads, opt.seed, "invariance-O2",
                                      [&](std::size_t, Rng& rng) {
                                        Supergraph s = gs->sample(n, rng);
                                        return induced_key(s, distinct_subset(n, 3, rng));
                                      });
  auto pk = run_replicas<std::string>(reps(1e4, opt), opt.threads, opt.seed, "invariance-P2",
                                      [&](std::size_t, Rng& rng) {
                                        Superpermutation s = ps->sample(n, rng);
                                        return pattern(s.flat, distinct_subset(n, 3, rng)).key();
                                      });
  double tg = tv_distance(tally(gk), ge), tp = tv_distance(tally(pk), pe);
  r.metric("O2_tv_k3", tg);
  r.metric("P2_tv_k3", tp);
  r.pass = tg < 0.03 && tp < 0.03;
  return r;
}

CriterionResult phase_spike(const ExperimentOptions& opt) {
  CriterionResult r;
  const int n = 2000;
  const std::size_t R = reps(1e4, opt);
  double tri_br = brownian_marginal_distribution(3).at("111");
  double tri_w2 = iterated_marginal_kernel(2)->exact_distribution(3)->at("111");
  double occ_br = brownian_perm_marginal_distribution(3).at("123");
  double occ_w2 = iterated_perm_kernel(2)->exact_distribution(3)->at("123");
  r.metric("target_triangle_brownian", tri_br);
  r.metric("target_triangle_W2", tri_w2);
  r.metric("target_occ123_brownian", occ_br);
  r.metric("target_occ123_mu2", occ_w2);
  bool ok = true;
  double max_se = 0;
  const double qc_g = rho_O(), qc_p = std::sqrt(2.0) - 1.0;
  for (double q : {0.2, qc_g, 0.6}) {
    auto s = SupergraphSampler::weighted(q, n);
    auto xs = run_replicas<double>(R, opt.threads, opt.seed, "spike-graph-" + fmt(q),
                                   [&](std::size_t, Rng& rng) { return triangle_fraction(s->sample(n, rng), 64, rng); });
    MomentCI ci = moment_ci(xs);
    double target = q == qc_g ? tri_w2 : tri_br;
    r.metric("graph_q" + fmt(q) + "_triangle", ci.mean);
    r.metric("graph_q" + fmt(q) + "_se", ci.se);
    max_se = std::max(max_se, ci.se);
    if (std::abs(ci.mean - target) >= 0.02) ok = false;
  }
  Permutation inc = Permutation::identity(3);
  for (double q : {0.2, qc_p, 0.6}) {
    auto s = SuperpermSampler::weighted(q, n);
    auto xs = run_replicas<double>(R, opt.threads, opt.seed, "spike-perm-" + fmt(q), [&](std::size_t, Rng& rng) {
      return occ_fraction(s->sample(n, rng).flat, inc, 64, rng);
    });
    MomentCI ci = moment_ci(xs);
    double target = q == qc_p ? occ_w2 : occ_br;
    r.metric("perm_q" + fmt(q) + "_occ123", ci.mean);
    r.metric("perm_q" + fmt(q) + "_se", ci.se);
    max_se = std::max(max_se, ci.se);
    if (std::abs(ci.mean - target) >= 0.02) ok = false;
  }
  bool separated = std::abs(tri_br - tri_w2) > 3 * max_se && std::abs(occ_br - occ_w2) > 3 * max_se;
  r.metric("target_gap_graph", std::abs(tri_br - tri_w2));
  r.metric("target_gap_perm", std::abs(occ_br - occ_w2));
  r.metric("three_se", 3 * max_se);
  if (!separated)
    r.note("Brownian and critical targets coincide at k=3; the separation clause cannot hold");
  // k = 4, where the two limits do differ
  r.metric("k4_tv_graph_W2_vs_brownian",
           tv_distance(*iterated_marginal_kernel(2)->exact_distribution(4), brownian_marginal_distribution(4)));
  r.metric("k4_tv_perm_mu2_vs_brownian",
           tv_distance(*iterated_perm_kernel(2)->exact_distribution(4), brownian_perm_marginal_distribution(4)));
  // condensation: n - K_max stays bounded
  bool cond_ok = true;
  for (int cls = 0; cls < 2; ++cls) {
    double q = cls ? 0.05 : 0.1;
    double prev = INFINITY;
    for (int m : {500, 1000, 2000}) {
      GibbsTable t(gibbs_model_weighted(cls ? BaseClass::Separable : BaseClass::Cograph, q, m), m);
      auto xs = run_replicas<double>(reps(2000, opt), opt.threads, opt.seed,
                                     "condensation-" + std::to_string(cls) + "-" + std::to_string(m),
                                     [&](std::size_t, Rng& rng) {
                                       auto s = t.sample(m, rng);
                                       return static_cast<double>(m - *std::max_element(s.sizes.begin(), s.sizes.end()));
                                     });
      double med = median(xs);
      r.metric(std::string(cls ? "perm" : "graph") + "_q" + fmt(q) + "_median_n" + std::to_string(m), med);
      if (med > 50 || med > prev) cond_ok = false;
      prev = med;
    }
  }
  r.pass = ok && separated && cond_ok;
  return r;
}

CriterionResult stable(const ExperimentOptions& opt) {
  CriterionResult r;
  const double pi = std::acos(-1.0);
  double dens = 0;
  for (double x : {0.5, 1.0, 2.0})
    dens = std::max(dens, std::abs(stable_density(0.5, x) - 0.5 * std::pow(x, -1.5) * std::exp(-pi / (4 * x))));
  r.metric("density_max_abs_err", dens);
  // mass on a log grid up to 1e8; the tail beyond is about x^{-1/2}
  double mass = 0;
  const int steps = 20000;
  double lo = std::log(0.05), hi = std::log(1e8);
  for (int i = 0; i <= steps; ++i) {
    double u = lo + (hi - lo) * i / steps, x = std::exp(u);
    double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    mass += w * stable_density(0.5, x) * x;
  }
  mass *= (hi - lo) / steps;
  r.metric("density_mass_0.05_1e8", mass);
  double ident = 0;
  for (double rr : {-0.25, 0.5, 1.0, 2.0, 3.0}) {
    double lhs = z_moment(0.5, 0.5, rr);
    double rhs = stable_moment(0.5, 0.5 * (0.5 - rr)) / stable_moment(0.5, 0.25);
    ident = std::max(ident, std::abs(lhs - rhs));
  }
  r.metric("z_moment_identity_err", ident);
  double target = z_moment(0.5, 0.5, 1.0);
  r.metric("z_moment_target", target);
  ScalingConsts sc = od_scaling_consts(2);
  for (int n : {1000, 2000}) {
    GibbsTable t(gibbs_model_Od(2, n), n);
    auto law = t.count_law(n);
    double m = 0;
    for (std::size_t l = 0; l < law.size(); ++l) m += law[l] * l;
    r.metric("exact_E_N_over_A_n" + std::to_string(n), m / scaling_A(sc, n));
  }
  const int n = 5000;
  GibbsTable t(gibbs_model_Od(2, n), n);
  auto law = t.count_law(n);
  double me = 0;
  for (std::size_t l = 0; l < law.size(); ++l) me += law[l] * l;
  r.metric("exact_E_N_over_A_n5000", me / scaling_A(sc, n));
  auto xs = run_replicas<double>(reps(2000, opt), opt.threads, opt.seed, "stable-N-over-A",
                                 [&](std::size_t, Rng& rng) { return t.sample(n, rng).num_components / scaling_A(sc, n); });
  MomentCI ci = moment_ci(xs);
  r.metric("mc_E_N_over_A_n5000", ci.mean);
  r.metric("mc_se", ci.se);
  r.metric("relative_error", std::abs(ci.mean / target - 1));
  r.pass = dens < 1e-6 && ident < 1e-12 && std::abs(ci.mean / target - 1) < 0.15;
  return r;
}

struct Entry {
  const char* name;
  CriterionResult (*run)(const ExperimentOptions&);
};

const Entry kEntries[] = {
    {"exact-counts", exact_counts},   {"eppf-crp", eppf_crp},         {"duality", duality},
    {"gibbs-oracle", gibbs_oracle},   {"asymptotics", asymptotics},   {"dilute", dilute},
    {"brownian-graphon", brownian_graphon}, {"pd-marginals", pd_marginals}, {"char-duality", char_duality},
    {"invariance", invariance},       {"phase-spike", phase_spike},   {"stable", stable},
};

}  // namespace

const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kEntries) v.push_back(e.name);
    return v;
  }();
  return names;
}

int criterion_id(const std::string& name) {
  const auto& names = criterion_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name || std::to_string(i + 1) == name) return static_cast<int>(i) + 1;
  throw std::invalid_argument("unknown experiment: " + name);
}

CriterionResult run_criterion(int id, const ExperimentOptions& opt) {
  if (id < 1 || id > static_cast<int>(std::size(kEntries))) throw std::invalid_argument("criterion id out of range");
  CriterionResult r = kEntries[id - 1].run(opt);
  r.id = id;
  r.name = kEntries[id - 1].name;
  return r;
}

}  // namespace pdl
