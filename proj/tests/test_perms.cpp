#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "pdl/perm_kernels.hpp"
#include "pdl/superperm.hpp"

using namespace pdl;

namespace {

bool contains(const Permutation& s, const Permutation& pat) {
  int n = s.n(), k = pat.n();
  if (k > n) return false;
  std::vector<int> I(k);
  std::iota(I.begin(), I.end(), 0);
  for (;;) {
    if (pattern(s, I) == pat) return true;
    int i = k - 1;
    while (i >= 0 && I[i] == n - k + i) --i;
    if (i < 0) return false;
    ++I[i];
    for (int j = i + 1; j < k; ++j) I[j] = I[j - 1] + 1;
  }
}

bool separable(const Permutation& s) {
  return !contains(s, Permutation::from_key("2413")) && !contains(s, Permutation::from_key("3142"));
}

std::vector<Permutation> all_separable(int n) {
  std::vector<Permutation> out;
  Permutation s = Permutation::identity(n);
  do {
    if (separable(s)) out.push_back(s);
  } while (std::next_permutation(s.v.begin(), s.v.end()));
  return out;
}

SignedLeafTree star(int sign, int k) {
  SignedLeafTree t;
  t.plane = true;
  std::vector<int> ch;
  for (int i = 0; i < k; ++i) ch.push_back(t.add_leaf(i));
  t.root = t.add_internal(sign, ch);
  t.finalize();
  return t;
}

}  // namespace

TEST_CASE("patterns and occurrences") {
  Permutation s = Permutation::from_key("231");
  CHECK(pattern(s, {0, 1, 2}) == s);
  CHECK(pattern(s, {0, 2}).key() == "21");
  CHECK(pattern(Permutation::identity(6), {1, 3, 4}) == Permutation::identity(3));
  CHECK_THROWS_AS(pattern(s, {}), std::invalid_argument);
  CHECK(occ_exact(Permutation::from_key("12"), Permutation::identity(7)) == doctest::Approx(1.0));
  CHECK(occ_exact(Permutation::from_key("21"), s) == doctest::Approx(2.0 / 3.0));
  Rng r = rng_stream(1, "occ");
  for (int t = 0; t < 10; ++t) {
    Permutation p = Permutation::identity(10);
    shuffle_range(p.v.begin(), p.v.end(), r);
    Permutation nu = Permutation::from_key(t % 2 ? "132" : "21");
    double ex = occ_exact(nu, p);
    Estimate e = occ_mc(nu, p, 20000, r);
    CHECK(std::abs(e.value - ex) <= 4 * e.se + 1e-12);
  }
  CHECK_THROWS_AS(occ_exact(Permutation::from_key("123"), Permutation::identity(2000), 1e6), std::length_error);
}

TEST_CASE("keys") {
  Permutation p = Permutation::from_key("3421");
  CHECK(p.v == std::vector<int>{2, 3, 1, 0});
  Permutation big = Permutation::identity(11);
  CHECK(Permutation::from_key(big.key()) == big);
  CHECK(big.key().substr(0, 4) == "1,2,");
  CHECK_THROWS_AS(Permutation::from_key("113"), std::invalid_argument);
  CHECK(Permutation::from_key("132").reverse_complement().key() == "213");
}

TEST_CASE("substitution") {
  Permutation th = Permutation::from_key("2413");
  std::vector<Permutation> ones(4, Permutation::identity(1));
  CHECK(substitute(th, ones) == th);
  CHECK(substitute(Permutation::from_key("21"), {Permutation::from_key("12"), Permutation::from_key("21")}).key() ==
        "3421");
  CHECK(substitute(Permutation::identity(1), {th}) == th);
  CHECK_THROWS_AS(substitute(th, {th}), std::invalid_argument);
  Permutation a = substitute(Permutation::from_key("21"), {th, Permutation::from_key("12")});
  CHECK(a.n() == 6);
  CHECK(a.valid());
}

TEST_CASE("decomposition trees to permutations") {
  CHECK(decomp_tree_to_perm(star(+1, 4)) == Permutation::identity(4));
  CHECK(decomp_tree_to_perm(star(-1, 4)).key() == "4321");
  SignedLeafTree t;
  t.plane = true;
  int a = t.add_leaf(0), b = t.add_leaf(1), c = t.add_leaf(2);
  int m = t.add_internal(+1, {b, c});
  t.root = t.add_internal(-1, {a, m});
  t.finalize();
  CHECK(decomp_tree_to_perm(t).key() == "312");
}

TEST_CASE("uniform separable permutations") {
  Rng r = rng_stream(2, "sep");
  for (int n : {3, 4}) {
    auto all = all_separable(n);
    CHECK(all.size() == (n == 3 ? 6u : 22u));
    Law uni;
    for (auto& p : all) uni[p.key()] = 1.0 / all.size();
    EmpiricalDist e;
    for (int i = 0; i < 60000; ++i) e.add(decomp_tree_to_perm(sample_decomp_tree_conditioned(n, r)).key());
    CHECK(chi_square(e, uni).p_value > 1e-3);
  }
  for (int n = 1; n <= 12; ++n) {
    SignedLeafTree t = sample_decomp_tree_conditioned(n, r);
    CHECK(t.num_leaves() == n);
    CHECK(t.is_alternating());
    CHECK(separable(decomp_tree_to_perm(t)));
  }
}

TEST_CASE("Brownian permuton marginals") {
  auto l2 = brownian_perm_marginal_distribution(2);
  CHECK(l2.at("12") == doctest::Approx(0.5));
  auto l3 = brownian_perm_marginal_distribution(3);
  for (auto k : {"132", "213", "231", "312"}) CHECK(l3.at(k) == doctest::Approx(0.125));
  for (auto k : {"123", "321"}) CHECK(l3.at(k) == doctest::Approx(0.25));
  for (int k = 2; k <= 6; ++k) {
    auto lk = brownian_perm_marginal_distribution(k);
    for (auto& [key, p] : lk) {
      CHECK(p == doctest::Approx(lk.at(Permutation::from_key(key).reverse_complement().key())));
      CHECK(separable(Permutation::from_key(key)));
    }
    if (k >= 3)
      CHECK(max_abs_diff(restrict_perm_law(lk, k), brownian_perm_marginal_distribution(k - 1)) < 1e-12);
  }
  Rng r = rng_stream(3, "bperm");
  EmpiricalDist e;
  auto l4 = brownian_perm_marginal_distribution(4);
  for (int i = 0; i < 40000; ++i) e.add(brownian_perm_marginal_sample(4, r).key());
  CHECK(chi_square(e, l4).p_value > 1e-3);
}

TEST_CASE("PD permuton marginals") {
  auto m2 = iterated_perm_kernel(2);
  Rng r = rng_stream(4, "pdperm");
  CHECK(m2->sample(1, r).n() == 1);
  CHECK(m2->exact_distribution(2)->at("12") == doctest::Approx(0.5));
  for (int d : {2, 3}) {
    auto m = iterated_perm_kernel(d);
    for (int k = 1; k <= 5; ++k) {
      double s = 0;
      Law law = *m->exact_distribution(k);
      for (auto& kv : law) s += kv.second;
      CHECK(std::abs(s - 1) < 1e-12);
    }
    for (int k = 3; k <= 5; ++k)
      CHECK(max_abs_diff(restrict_perm_law(*m->exact_distribution(k), k), *m->exact_distribution(k - 1)) < 1e-12);
  }
  // regression fixture: mu^(2) at k = 3
  auto l3 = *m2->exact_distribution(3);
  CHECK(l3.at("123") == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(l3.at("321") == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(l3.at("132") == doctest::Approx(0.125).epsilon(1e-12));
  EmpiricalDist e;
  for (int i = 0; i < 60000; ++i) e.add(m2->sample(4, r).key());
  CHECK(chi_square(e, *m2->exact_distribution(4)).p_value > 1e-3);
  CHECK(tv_distance(*m2->exact_distribution(4), brownian_perm_marginal_distribution(4)) > 0.005);
  auto alt = PDPermutonKernel(PDParams(0.5, -0.125), m2, brownian_perm_kernel());
  for (int k = 2; k <= 4; ++k)
    CHECK(max_abs_diff(*alt.exact_distribution(k), *iterated_perm_kernel(3)->exact_distribution(k)) < 1e-10);
}

namespace {

// Every P_2 structure of size n: a composition into parts >= 2, a separable
// head on the parts, each part one split id_2[P, P'] of two separable parts.
Law brute_P2(int n) {
  std::vector<std::vector<Permutation>> sep(n + 1);
  for (int m = 1; m <= n; ++m) sep[m] = all_separable(m);
  Law law;
  double total = 0;
  std::vector<int> parts;
  std::function<void(int)> comp = [&](int rest) {
    if (rest == 0) {
      int l = static_cast<int>(parts.size());
      std::vector<std::vector<Permutation>> choices(l);
      for (int i = 0; i < l; ++i)
        for (int s = 1; s < parts[i]; ++s)
          for (auto& a : sep[s])
            for (auto& b : sep[parts[i] - s]) choices[i].push_back(substitute(Permutation::identity(2), {a, b}));
      std::vector<Permutation> cur(l);
      std::function<void(int)> rec = [&](int i) {
        if (i == l) {
          for (auto& h : sep[l]) {
            law[substitute(h, cur).key()] += 1;
            total += 1;
          }
          return;
        }
        for (auto& c : choices[i]) {
          cur[i] = c;
          rec(i + 1);
        }
      };
      rec(0);
      return;
    }
    for (int k = 2; k <= rest; ++k) {
      parts.push_back(k);
      comp(rest - k);
      parts.pop_back();
    }
  };
  comp(n);
  for (auto& kv : law) kv.second /= total;
  return law;
}

}  // namespace

TEST_CASE("P_2 sampler against exhaustive structures") {
  Rng r = rng_stream(5, "p2-brute");
  for (int n : {2, 4, 5}) {
    Law law = brute_P2(n);
    auto s = SuperpermSampler::iterated(2, n);
    EmpiricalDist e;
    for (int i = 0; i < 40000; ++i) e.add(s->sample(n, r).flat.key());
    CHECK(chi_square(e, law).p_value > 1e-3);
  }
}

TEST_CASE("sampled superpermutations are consistent") {
  Rng r = rng_stream(6, "superperms");
  for (int t = 0; t < 5; ++t) {
    Superpermutation s = sample_Pd(80, 2, r);
    CHECK(s.flat.valid());
    CHECK(s.n() == 80);
    CHECK(std::accumulate(s.block_sizes.begin(), s.block_sizes.end(), 0) == 80);
    CHECK(substitute(s.head, s.components) == s.flat);
    CHECK(separable(s.head));
    for (std::size_t i = 0; i < s.components.size(); ++i) {
      // id_2[P, P']: the first split positions take the lowest values
      int sp = s.split[i];
      REQUIRE(sp >= 1);
      REQUIRE(sp < s.components[i].n());
      for (int j = 0; j < sp; ++j) CHECK(s.components[i][j] < sp);
    }
    CHECK(sample_Pd(60, 3, r).flat.valid());
    CHECK(sample_weighted_sep(60, 0.3, r).flat.valid());
  }
}
