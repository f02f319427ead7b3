#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "pdl/stats.hpp"

using namespace pdl;

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a = rng_stream(42, "x"), b = rng_stream(42, "x"), c = rng_stream(42, "y");
  bool same = true;
  for (int i = 0; i < 10000; ++i) same = same && a() == b();
  CHECK(same);
  // birthday check: 2e4 draws from two streams, no 64-bit collision
  std::set<std::uint64_t> seen;
  Rng d = rng_stream(42, "x");
  for (int i = 0; i < 10000; ++i) seen.insert(d());
  for (int i = 0; i < 10000; ++i) seen.insert(c());
  CHECK(seen.size() == 20000);
  CHECK(stream_seed(1, "x", 0) != stream_seed(1, "x", 1));
  CHECK(stream_seed(1, "x") != stream_seed(2, "x"));
}

TEST_CASE("uniform01 and discrete sampling") {
  Rng r = rng_stream(1, "u");
  double s = 0;
  for (int i = 0; i < 100000; ++i) {
    double u = uniform01(r);
    REQUIRE(u >= 0);
    REQUIRE(u < 1);
    s += u;
  }
  CHECK(s / 100000 == doctest::Approx(0.5).epsilon(0.01));
  std::vector<double> w = {1, 0, 3};
  int hits[3] = {0, 0, 0};
  for (int i = 0; i < 40000; ++i) ++hits[sample_discrete(w, r)];
  CHECK(hits[1] == 0);
  CHECK(hits[2] / 40000.0 == doctest::Approx(0.75).epsilon(0.02));
}

TEST_CASE("gamma and beta draws have the right means") {
  Rng r = rng_stream(3, "g");
  double g = 0, b = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    g += gamma_draw(0.3, r);
    b += beta_draw(0.5, 0.25, r);
  }
  CHECK(g / n == doctest::Approx(0.3).epsilon(0.03));
  CHECK(b / n == doctest::Approx(2.0 / 3.0).epsilon(0.01));
}

TEST_CASE("chi-square basics") {
  EmpiricalDist e;
  e.add("a", 100);
  Law one = {{"a", 1.0}};
  auto r = chi_square(e, one);
  CHECK(r.statistic == 0);
  CHECK(r.p_value == 1.0);
  EmpiricalDist bad;
  bad.add("b");
  CHECK(chi_square(bad, one).p_value == 0);
  CHECK_THROWS_AS(chi_square(EmpiricalDist{}, one), std::invalid_argument);
  CHECK(chi_square_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("chi-square p-values are calibrated") {
  Law law = {{"a", 0.2}, {"b", 0.3}, {"c", 0.5}};
  std::vector<double> ps;
  for (int t = 0; t < 200; ++t) {
    Rng r = rng_stream(11, "calib", t);
    EmpiricalDist e;
    for (int i = 0; i < 500; ++i) {
      double u = uniform01(r);
      e.add(u < 0.2 ? "a" : u < 0.5 ? "b" : "c");
    }
    ps.push_back(chi_square(e, law).p_value);
  }
  // Kolmogorov distance to uniform; 0.115 is about the 1% critical value at 200
  std::sort(ps.begin(), ps.end());
  double d = 0;
  for (std::size_t i = 0; i < ps.size(); ++i)
    d = std::max({d, std::abs(ps[i] - double(i) / ps.size()), std::abs(ps[i] - double(i + 1) / ps.size())});
  CHECK(d < 0.115 + 0.01);
}

TEST_CASE("tv distance") {
  Law a = {{"x", 0.5}, {"y", 0.5}}, b = {{"z", 1.0}};
  CHECK(tv_distance(a, a) == 0);
  CHECK(tv_distance(a, b) == doctest::Approx(1.0));
  EmpiricalDist e;
  e.add("x", 3);
  e.add("y", 1);
  CHECK(tv_distance(e, a) == doctest::Approx(0.25));
  CHECK(max_abs_diff(a, b) == doctest::Approx(1.0));
}

TEST_CASE("moment confidence intervals") {
  std::vector<double> c(50, 2.5);
  auto ci = moment_ci(c);
  CHECK(ci.mean == 2.5);
  CHECK(ci.lo == ci.hi);
  CHECK_THROWS_AS(moment_ci(std::vector<double>(10, 1.0)), std::invalid_argument);
  Rng r = rng_stream(5, "ci");
  std::vector<double> u;
  for (int i = 0; i < 5000; ++i) u.push_back(uniform01(r));
  auto m = moment_ci(u);
  CHECK(m.lo < 0.5);
  CHECK(m.hi > 0.5);
  auto m2 = moment_ci(u, 2.0);
  CHECK(m2.mean == doctest::Approx(1.0 / 3.0).epsilon(0.03));
}

TEST_CASE("two-sample KS statistic") {
  CHECK(ks_two_sample({1, 2, 3}, {1, 2, 3}) == 0);
  CHECK(ks_two_sample({1, 2}, {3, 4}) == doctest::Approx(1.0));
  CHECK(ks_two_sample({1, 3}, {2, 4}) == doctest::Approx(0.5));
}

TEST_CASE("replica results do not depend on the thread count") {
  auto f = [](std::size_t i, Rng& r) { return double(i) + uniform01(r); };
  auto a = run_replicas<double>(101, 1, 9, "rep", f);
  auto b = run_replicas<double>(101, 4, 9, "rep", f);
  CHECK(a == b);
}
