#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "pdl/gibbs.hpp"
#include "pdl/pd.hpp"
#include "pdl/stats.hpp"

using namespace pdl;

namespace {

GibbsModel toy() {
  Series v(6), w(6);
  v[1] = v[2] = 1;
  w[1] = w[2] = 1;
  return GibbsModel(v, w, "toy");
}

std::string size_key(int l, std::vector<int> s) {
  std::sort(s.begin(), s.end());
  std::string k = std::to_string(l) + ":";
  for (int x : s) k += std::to_string(x) + ",";
  return k;
}

// (N, sorted sizes) law from every set partition of [n], weight u(P) = l! v_l prod k! w_k
// (tilts cancel up to a constant once head and comp are used)
Law brute_law(const GibbsModel& m, int n) {
  Law law;
  double total = 0;
  for_each_set_partition(n, [&](const SetPartition& sp) {
    int l = static_cast<int>(sp.blocks.size());
    double u = std::tgamma(l + 1.0) * m.head(l);
    for (int s : sp.sizes()) u *= std::tgamma(s + 1.0) * m.comp(s);
    if (u > 0) {
      law[size_key(l, sp.sizes())] += u;
      total += u;
    }
  });
  for (auto& kv : law) kv.second /= total;
  return law;
}

}  // namespace

TEST_CASE("toy model by hand") {
  GibbsModel m = toy();
  CHECK(partition_function(m, 2).tilted == doctest::Approx(2.0));
  GibbsTable t(m, 2);
  auto cl = t.count_law(2);
  CHECK(cl[1] == doctest::Approx(0.5));
  CHECK(cl[2] == doctest::Approx(0.5));
  auto sb = size_biased_first(m, 2);
  CHECK(sb[1] == doctest::Approx(0.5));
  CHECK(sb[2] == doctest::Approx(0.5));
  Rng r = rng_stream(1, "toy");
  EmpiricalDist ex, ko;
  for (int i = 0; i < 20000; ++i) {
    auto s = sample_exact(m, 2, r);
    ex.add(std::to_string(s.num_components));
    ko.add(std::to_string(sample_kolchin(m, 2, 1000000, r).sample.num_components));
  }
  Law half = {{"1", 0.5}, {"2", 0.5}};
  CHECK(chi_square(ex, half).p_value > 1e-3);
  CHECK(chi_square(ko, half).p_value > 1e-3);
}

TEST_CASE("constant term of the partition function") {
  Series v(4), w(4);
  v[0] = 0.7;
  v[1] = 1;
  w[1] = 1;
  GibbsTable t(GibbsModel(v, w), 3);
  CHECK(t.tilted_u(0) == doctest::Approx(0.7));
}

TEST_CASE("partition function of O_2 equals the class coefficients") {
  const int n = 300;
  GibbsTable t(gibbs_model_Od(2, n), n);
  Series o2 = class_Od<double>(2, n, rho_O());
  for (int m = 2; m <= n; m += 7) CHECK(std::abs(t.tilted_u(m) / o2[m] - 1) < 1e-10);
  GibbsTable tp(gibbs_model_Pd(2, n), n);
  Series p2 = class_Pd<double>(2, n, rho_P());
  for (int m = 2; m <= n; m += 7) CHECK(std::abs(tp.tilted_u(m) / p2[m] - 1) < 1e-10);
  CHECK_FALSE(t.truncation_warning());
}

TEST_CASE("exact sampler against set-partition enumeration") {
  for (auto m : {gibbs_model_Od(2, 6), gibbs_model_Pd(2, 6), toy()}) {
    for (int n : {3, m.name == "toy" ? 4 : 5}) {
      Law law = brute_law(m, n);
      GibbsTable t(m, n);
      Rng r = rng_stream(2, "exact-vs-brute", n);
      EmpiricalDist e;
      for (int i = 0; i < 30000; ++i) {
        auto s = t.sample(n, r);
        int sum = 0;
        for (int k : s.sizes) sum += k;
        REQUIRE(sum == n);
        REQUIRE(s.num_components == static_cast<int>(s.sizes.size()));
        e.add(size_key(s.num_components, s.sizes));
      }
      CHECK(chi_square(e, law).p_value > 1e-3);
    }
  }
}

TEST_CASE("Kolchin sampler diagnostics") {
  GibbsModel m = gibbs_model_Od(2, 200);
  Rng r = rng_stream(3, "kolchin");
  auto res = sample_kolchin(m, 200, 100000000, r);
  CHECK(res.trials >= 1);
  std::size_t trials = 0;
  for (int i = 0; i < 20; ++i) trials += sample_kolchin(m, 200, 100000000, r).trials;
  MESSAGE("O_2 n=200 Kolchin acceptance rate " << 20.0 / trials);
  CHECK(20.0 / trials > 0);
  bool thrown = false;
  for (int i = 0; i < 50 && !thrown; ++i) {
    try {
      sample_kolchin(m, 200, 1, r);
    } catch (const KolchinExhausted& e) {
      thrown = true;
      CHECK(e.trials == 1);
    }
  }
  CHECK(thrown);
}

TEST_CASE("Kolchin law does not depend on the tilt") {
  GibbsModel m = gibbs_model_Pd(2, 12);
  Law law = brute_law(m, 7);
  Rng r = rng_stream(4, "tilts");
  EmpiricalDist a, b;
  for (int i = 0; i < 20000; ++i) {
    auto x = sample_kolchin(m, 7, 100000000, r).sample;
    auto y = sample_kolchin(m, 7, 100000000, r, 0.6).sample;
    a.add(size_key(x.num_components, x.sizes));
    b.add(size_key(y.num_components, y.sizes));
  }
  CHECK(chi_square(a, law).p_value > 1e-3);
  CHECK(chi_square(b, law).p_value > 1e-3);
}

TEST_CASE("infeasible sizes are reported") {
  Series v(10), w(10);
  v[1] = v[2] = v[3] = 1;
  w[2] = w[4] = 1;
  GibbsModel m(v, w);
  CHECK(m.support_gcd() == 2);
  Rng r = rng_stream(5, "inf");
  CHECK_THROWS_AS(sample_exact(m, 5, r), InfeasibleSize);
  CHECK_THROWS_AS(sample_kolchin(m, 5, 100, r), InfeasibleSize);
  CHECK_NOTHROW(sample_exact(m, 6, r));
}

TEST_CASE("size-biased order") {
  Rng r = rng_stream(6, "sbo");
  int first3 = 0;
  for (int i = 0; i < 20000; ++i) first3 += size_biased_order({1, 3}, r)[0] == 3;
  CHECK(first3 / 20000.0 == doctest::Approx(0.75).epsilon(0.02));
  GibbsTable t(gibbs_model_Od(2, 50), 50);
  auto law = t.size_biased_first(50);
  EmpiricalDist e;
  Law exp;
  for (auto [k, p] : law) exp[std::to_string(k)] = p;
  for (int i = 0; i < 20000; ++i) e.add(std::to_string(t.sample(50, r, true).size_biased.at(0)));
  CHECK(chi_square(e, exp).p_value > 1e-3);
}

TEST_CASE("size-biased first component approaches Beta(1/2, 1/4)") {
  const int n = 5000;
  GibbsTable t(gibbs_model_Od(2, n), n);
  auto law = t.size_biased_first(n);
  double s = 0, m = 0, m2 = 0;
  for (auto [k, p] : law) {
    s += p;
    m += p * k / n;
    m2 += p * double(k) * k / (double(n) * n);
  }
  CHECK(std::abs(s - 1) < 1e-10);
  const double a = 0.5, b = 0.25;
  double mean = a / (a + b), var = a * b / ((a + b) * (a + b) * (a + b + 1));
  CHECK(std::abs(m / mean - 1) < 0.03);
  CHECK(std::abs((m2 - m * m) / var - 1) < 0.03);
}

TEST_CASE("stable moments") {
  CHECK(stable_moment(0.5, 0.0) == doctest::Approx(1.0));
  CHECK(stable_moment(0.5, -0.5) == doctest::Approx(2 / M_PI).epsilon(1e-13));
  // s -> log E[S^s] is convex
  for (double s = -1.9; s < 0.35; s += 0.05) {
    double lo = std::log(stable_moment(0.5, s - 0.05)), hi = std::log(stable_moment(0.5, s + 0.05));
    CHECK(std::log(stable_moment(0.5, s)) <= 0.5 * (lo + hi) + 1e-12);
  }
  CHECK_THROWS_AS(stable_moment(0.5, 0.5), std::domain_error);
}

TEST_CASE("stable density") {
  for (double x : {0.5, 1.0, 2.0, 7.0})
    CHECK(std::abs(stable_density(0.5, x) - 0.5 * std::pow(x, -1.5) * std::exp(-M_PI / (4 * x))) < 1e-6);
  for (double x = 0.05; x < 50; x *= 1.3) CHECK(stable_density(0.3, x) > 0);
  CHECK_THROWS_AS(stable_density(0.5, 0.01), std::domain_error);
  // log-grid trapezoid; the mass beyond 1e8 is about 1e-4
  double lo = std::log(0.05), hi = std::log(1e8), mass = 0;
  const int steps = 8000;
  for (int i = 0; i <= steps; ++i) {
    double x = std::exp(lo + (hi - lo) * i / steps);
    mass += (i == 0 || i == steps ? 0.5 : 1.0) * stable_density(0.5, x) * x;
  }
  mass *= (hi - lo) / steps;
  CHECK(std::abs(mass - 1) < 1e-3);
}

TEST_CASE("moments of the limit of N_n / A(n)") {
  CHECK(z_moment(0.5, 0.5, 0.0) == doctest::Approx(1.0));
  double v = std::tgamma(0.75) / (2 * std::sqrt(M_PI) * std::tgamma(1.25));
  CHECK(z_moment(0.5, 0.5, 1.0) == doctest::Approx(v).epsilon(1e-14));
  CHECK(v == doctest::Approx(0.3814).epsilon(1e-4));
  for (double a : {0.25, 0.5})
    for (double b : {-1.0, 0.0, 0.5})
      for (double r : {0.5, 1.0, 2.0})
        CHECK(std::abs(z_moment(a, b, r) - stable_moment(a, a * (b - r)) / stable_moment(a, a * b)) < 1e-12);
  CHECK_THROWS_AS(z_moment(0.5, 0.5, -0.6), std::domain_error);
}

TEST_CASE("scaling function") {
  ScalingConsts c = od_scaling_consts(2);
  for (double x : {10.0, 1000.0}) CHECK(scaling_A(c, 2 * x) / scaling_A(c, x) == doctest::Approx(std::sqrt(2.0)));
  double prev = 0;
  for (double x = 0.5; x < 1e4; x *= 1.7) {
    CHECK(scaling_A(c, x) > prev);
    prev = scaling_A(c, x);
  }
  CHECK(pd_scaling_consts(3).alpha == doctest::Approx(0.25));
}
