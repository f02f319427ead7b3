#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "pdl/regime.hpp"
#include "pdl/series.hpp"

using namespace pdl;
using Rational = boost::multiprecision::cpp_rational;

TEST_CASE("basic series arithmetic") {
  PowerSeries<Rational> a(4);
  a[1] = 1;
  a[2] = 1;
  CHECK(ps_mul(a, a)[2] == 1);
  CHECK(ps_mul(a, a)[3] == 2);
  CHECK(ps_mul(a, a)[4] == 1);
  PowerSeries<Rational> z = ps_z<Rational>(4, Rational(1));
  auto c = ps_compose(z, a);
  CHECK(c.coeffs == a.coeffs);
  auto g = ps_geometric(z);  // 1/(1-z)
  for (int i = 0; i <= 4; ++i) CHECK(g[i] == 1);
  auto e = ps_exp(z);
  CHECK(e[3] == Rational(1, 6));
  PowerSeries<Rational> bad(3);
  bad[0] = 1;
  CHECK_THROWS_AS(ps_exp(bad), std::invalid_argument);
  CHECK_THROWS_AS(ps_compose(a, bad), std::invalid_argument);
}

TEST_CASE("retilt and tilted storage") {
  Series a = class_cograph_O<double>(30, 1.0);
  Series b = ps_retilt(a, 0.3);
  Series c = class_cograph_O<double>(30, 0.3);
  for (int i = 1; i <= 30; ++i) CHECK(b[i] == doctest::Approx(c[i]).epsilon(1e-12));
  CHECK_THROWS_AS(ps_add(a, c), std::invalid_argument);
}

TEST_CASE("cotree series by hand and by Picard iteration") {
  auto t = fixpoint_cotree<Rational>(8, Rational(1));
  CHECK(t[1] == 1);
  CHECK(t[2] == Rational(1, 2));
  CHECK(t[3] == Rational(2, 3));
  CHECK(t[4] == Rational(13, 12));
  auto [pic, iters] = fixpoint_cotree_picard<Rational>(8, Rational(1));
  CHECK(pic.coeffs == t.coeffs);
  CHECK(iters <= 8);
  Rational fact = 1;
  long long expect[] = {1, 2, 8, 52};
  auto o = class_cograph_O<Rational>(4, Rational(1));
  for (int n = 1; n <= 4; ++n) {
    fact *= n;
    CHECK(o[n] * fact == expect[n - 1]);
  }
  // 64 graphs on 4 labelled vertices, 12 of them are paths
  CHECK(o[4] * 24 == 64 - 12);
}

TEST_CASE("Schroeder series by fixpoint and by closed form") {
  auto A = class_sep_A<Rational>(12, Rational(1));
  auto [pic, iters] = fixpoint_sep_picard<Rational>(12, Rational(1));
  CHECK(pic.coeffs == A.coeffs);
  // (1 + z - sqrt(1 - 6z + z^2))/4, i.e. a_n = s_{n-1}/2 for the large Schroeder numbers
  long long large[] = {1, 2, 6, 22, 90, 394, 1806, 8558, 41586, 206098, 1037718, 5293446};
  for (int n = 2; n <= 12; ++n) CHECK(A[n] * 2 == large[n - 1]);
  auto P = class_sep_P<Rational>(5, Rational(1));
  long long sep[] = {1, 2, 6, 22, 90};
  for (int n = 1; n <= 5; ++n) CHECK(P[n] == sep[n - 1]);
}

TEST_CASE("classes at their critical points") {
  const int N = 5000;
  Series o = class_cograph_O<double>(N, rho_O());
  Series t = fixpoint_cotree<double>(N, rho_O());
  double so = 0, st = 0;
  for (int i = 0; i <= N; ++i) {
    so += o[i];
    st += t[i];
  }
  CHECK(std::abs(so - 1) < 0.02);
  CHECK(st == doctest::Approx(0.5 * (so + rho_O())).epsilon(1e-9));
  Series p = class_sep_P<double>(N, rho_P());
  double sp = 0;
  for (int i = 0; i <= N; ++i) sp += p[i];
  CHECK(std::abs(sp - P_at_rho()) < 0.01);
  for (int d : {2, 3}) {
    Series od = class_Od<double>(d, N, rho_O());
    double prev = 0, s = 0;
    bool mono = true;
    for (int i = 0; i <= N; ++i) {
      s += od[i];
      mono = mono && s >= prev;
      prev = s;
    }
    CHECK(mono);
    CHECK(s < 1);
    // partial sums converge slowly, the tail is of order N^{-2^{-d}}
    CHECK(s > 0.5);
    Series pd = class_Pd<double>(d, N, rho_P());
    double q = 0;
    for (int i = 0; i <= N; ++i) q += pd[i];
    CHECK(q * q < rho_P());
    CHECK(q * q > 0.1 * rho_P());
  }
}

TEST_CASE("online recurrences agree with composition by Horner") {
  const int N = 40;
  Series o = class_cograph_O<double>(N, rho_O());
  Series direct = class_Od<double>(2, N, rho_O());
  // O(z O(z)) through the generic composition
  Series composed = ps_compose(class_cograph_O<double>(N, 1.0), ps_shift(o));
  for (int i = 1; i <= N; ++i) CHECK(composed[i] == doctest::Approx(direct[i]).epsilon(1e-10));
  Series p2 = class_Pd<double>(2, N, rho_P());
  Series p = class_sep_P<double>(N, rho_P());
  Series pc = ps_compose(class_sep_P<double>(N, 1.0), ps_mul(p, p));
  for (int i = 1; i <= N; ++i) CHECK(pc[i] == doctest::Approx(p2[i]).epsilon(1e-10));
}

TEST_CASE("weighted classes") {
  auto w = class_weighted<Rational>(BaseClass::Separable, Rational(1), 4, Rational(1));
  CHECK(w[2] == 4);
  // q -> 0: [z^n] O(qO) / q -> [z^n] O
  auto o = class_cograph_O<double>(10, 1.0);
  auto small = class_weighted<double>(BaseClass::Cograph, 1e-7, 10, 1.0);
  for (int n = 2; n <= 10; ++n) CHECK(small[n] / 1e-7 == doctest::Approx(o[n]).epsilon(1e-5));
  // q = rho_O: head evaluated exactly at its radius
  CHECK(rho_O() * O_at_rho() == doctest::Approx(rho_O()));
  CHECK_THROWS_AS(class_weighted<double>(BaseClass::Cograph, 0.0, 5, 1.0), std::invalid_argument);
}

TEST_CASE("asymptotic constants") {
  CHECK(proasym_const(2) == doctest::Approx(0.2827).epsilon(1e-3));
  const int N = 5000;
  for (int d : {2, 3}) {
    Series od = class_Od<double>(d, N, rho_O());
    Series pd = class_Pd<double>(d, N, rho_P());
    double prev_o = 1, prev_p = 1;
    for (int n : {1000, 2000, 5000}) {
      double ro = std::abs(od[n] * std::pow(n, asym_exponent(d)) / proasym_const(d) - 1);
      double rp = std::abs(pd[n] * std::pow(n, asym_exponent(d)) / sepasym_const(d) - 1);
      CHECK(ro < prev_o);
      CHECK(rp < prev_p);
      prev_o = ro;
      prev_p = rp;
    }
    if (d == 2) {
      CHECK(prev_o < 0.1);
      CHECK(prev_p < 0.1);
    }
  }
  // d = 1 by direct Schroeder asymptotics
  double direct = std::sqrt(1 - rho_P() * rho_P()) / (4 * std::sqrt(M_PI));
  CHECK(sepasym_const(1) == doctest::Approx(direct).epsilon(1e-3));
}

TEST_CASE("offspring laws are probability distributions") {
  double a = 0, b = 0, ma = 0, mb = 0;
  for (int k = 0; k < 200; ++k) {
    a += cotree_offspring(k);
    b += decomp_offspring(k);
    ma += k * cotree_offspring(k);
    mb += k * decomp_offspring(k);
  }
  CHECK(a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ma == doctest::Approx(1.0).epsilon(1e-12));  // critical
  CHECK(mb == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("regime classification of the weighted classes") {
  auto crit = regime_classify(weighted_descriptor(BaseClass::Cograph, rho_O()));
  CHECK(crit.kind == Regime::Kind::Dilute);
  CHECK(crit.alpha == doctest::Approx(0.5));
  CHECK(crit.beta == doctest::Approx(0.5));
  CHECK(regime_classify(weighted_descriptor(BaseClass::Cograph, 0.2)).kind == Regime::Kind::CondConvergent);
  CHECK(regime_classify(weighted_descriptor(BaseClass::Cograph, 0.6)).kind == Regime::Kind::Dense);
  CHECK(regime_classify(weighted_descriptor(BaseClass::Separable, std::sqrt(2.0) - 1)).kind ==
        Regime::Kind::Dilute);
  CHECK(regime_classify(weighted_descriptor(BaseClass::Separable, 0.2)).kind == Regime::Kind::CondConvergent);
  CHECK(regime_classify(weighted_descriptor(BaseClass::Separable, 0.6)).kind == Regime::Kind::Dense);
  auto o2 = regime_classify(od_descriptor(2));
  CHECK(o2.kind == Regime::Kind::Dilute);
  CHECK(o2.alpha == doctest::Approx(0.5));
  CHECK(o2.beta == doctest::Approx(0.5));
  auto p3 = regime_classify(pd_descriptor(3));
  CHECK(p3.kind == Regime::Kind::Dilute);
  CHECK(p3.alpha == doctest::Approx(0.25));
  ModelDescriptor junk;
  junk.rho_comp = 0;
  junk.rho_head = 0;
  CHECK_THROWS_AS(regime_classify(junk), UnclassifiedRegime);
}
