#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "pdl/pd.hpp"

using namespace pdl;

TEST_CASE("Pochhammer symbols") {
  CHECK(pochhammer(3, 0) == 1);
  CHECK(pochhammer(1, 4) == doctest::Approx(24));
  CHECK(pochhammer(0.5, 2) == doctest::Approx(0.75));
  CHECK(gen_pochhammer(0.7, 0.3, 1) == doctest::Approx(0.7));
  CHECK(gen_pochhammer(0.5, 0.5, 2) == doctest::Approx(0.5));
  CHECK(gen_pochhammer(2, 0, 3) == doctest::Approx(8));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(PDParams(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PDParams(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PDParams(0.5, -0.5), std::invalid_argument);
  CHECK_NOTHROW(PDParams(0.5, -0.49));
}

TEST_CASE("composition probabilities and EPPF") {
  PDParams p(0.5, 0.5);
  CHECK(composition_prob(p, {1}) == doctest::Approx(1.0));
  CHECK(composition_prob(p, {2}) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(composition_prob(p, {1, 1}) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(eppf_exchangeable(p, {1}) == doctest::Approx(1.0));
  // composition_prob = multiplicity * EPPF
  for_each_composition(5, [&](const Composition& c) {
    CHECK(composition_prob(p, c) ==
          doctest::Approx(composition_multiplicity(c) * eppf_exchangeable(p, c)).epsilon(1e-12));
  });
  for (PDParams q : {PDParams(0.5, 0.5), PDParams(0.3, -0.2), PDParams(0.8, 4.0)}) {
    double sc = 0, sp = 0;
    for_each_composition(6, [&](const Composition& c) { sc += composition_prob(q, c); });
    for_each_set_partition(5, [&](const SetPartition& s) { sp += eppf_exchangeable(q, s.sizes()); });
    CHECK(std::abs(sc - 1) < 1e-12);
    CHECK(std::abs(sp - 1) < 1e-12);
  }
}

TEST_CASE("set partitions and compositions are enumerated completely") {
  int bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (int k = 1; k <= 6; ++k) {
    int cnt = 0;
    for_each_set_partition(k, [&](const SetPartition&) { ++cnt; });
    CHECK(cnt == bell[k]);
    int comps = 0;
    for_each_composition(k, [&](const Composition&) { ++comps; });
    CHECK(comps == (1 << (k - 1)));
  }
  SetPartition s = partition_from_labels({3, 1, 3, 1});
  CHECK(s.key() == "1 3|2 4");
}

TEST_CASE("CRP matches composition probabilities") {
  PDParams p(0.5, 0.5);
  Rng r = rng_stream(7, "crp-test");
  for (int i = 0; i < 50; ++i) CHECK(crp_run(p, 1, r).key() == "1");
  Law exp;
  for_each_composition(4, [&](const Composition& c) { exp[composition_key(c)] = composition_prob(p, c); });
  EmpiricalDist e;
  for (int i = 0; i < 40000; ++i) e.add(composition_key(crp_run(p, 4, r).sizes()));
  CHECK(chi_square(e, exp).p_value > 1e-3);
}

TEST_CASE("stick breaking") {
  PDParams p(0.5, 0.5);
  Rng r = rng_stream(8, "sticks");
  for (int t = 0; t < 20; ++t) {
    StickSample s = stick_breaking(p, 1e-6, r);
    double sum = std::accumulate(s.weights.begin(), s.weights.end(), 0.0);
    CHECK(std::abs(sum - (1 - s.residual_mass)) < 1e-12);
    CHECK(s.residual_mass < 1e-6);
    CHECK(std::is_sorted(s.weights.rbegin(), s.weights.rend()));
  }
  // first size-biased stick is Beta(1 - alpha, theta + alpha), mean (1 - alpha) / (1 + theta)
  double m = 0;
  for (int i = 0; i < 40000; ++i) {
    StickBreaker sb(p);
    m += sb.next(r);
  }
  CHECK(m / 40000 == doctest::Approx(1.0 / 3.0).epsilon(0.02));
}

TEST_CASE("points dropped on sticks follow the CRP law") {
  PDParams p(0.5, 0.5);
  Rng r = rng_stream(9, "drop");
  Law exp;
  for_each_composition(4, [&](const Composition& c) { exp[composition_key(c)] = composition_prob(p, c); });
  EmpiricalDist e;
  for (int i = 0; i < 40000; ++i) {
    StickBreaker sb(p);
    std::vector<int> labels;
    for (int j = 0; j < 4; ++j) labels.push_back(static_cast<int>(sb.locate(uniform01(r), r)));
    e.add(composition_key(partition_from_labels(labels).sizes()));
  }
  CHECK(chi_square(e, exp).p_value > 1e-3);
}

TEST_CASE("fragmentation and coagulation laws agree") {
  Law f1 = frag_distribution(1, 0.5, 0.5, -0.125);
  REQUIRE(f1.size() == 1);
  CHECK(f1.begin()->second == doctest::Approx(1.0));
  CHECK(f1.begin()->first == "1||1");
  for (int k = 2; k <= 5; ++k) {
    Law f = frag_distribution(k, 0.5, 0.25, 1.0 / 3.0), c = coag_distribution(k, 0.5, 0.25, 1.0 / 3.0);
    CHECK(max_abs_diff(f, c) < 1e-10);
    double s = 0;
    for (auto& kv : f) s += kv.second;
    CHECK(std::abs(s - 1) < 1e-12);
  }
  CHECK_THROWS_AS(frag_distribution(8, 0.5, 0.5, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(frag_distribution(3, 0.5, 0.5, -0.3), std::invalid_argument);
}

TEST_CASE("marginals of the nested samplers are CRP(alpha1 alpha2, theta) and CRP(alpha1, theta)") {
  Rng r = rng_stream(10, "coag");
  const double a1 = 0.5, a2 = 0.5, th = 0.3;
  Law coarse, fine;
  for_each_composition(4, [&](const Composition& c) {
    coarse[composition_key(c)] = composition_prob(PDParams(a1 * a2, th), c);
    fine[composition_key(c)] = composition_prob(PDParams(a1, th), c);
  });
  EmpiricalDist co, cf, fo, ff;
  for (int i = 0; i < 30000; ++i) {
    NestedPartition c = coag_sample(4, a1, a2, th, r), f = frag_sample(4, a1, a2, th, r);
    co.add(composition_key(c.outer.sizes()));
    cf.add(composition_key(c.fine().sizes()));
    fo.add(composition_key(f.outer.sizes()));
    ff.add(composition_key(f.fine().sizes()));
  }
  CHECK(chi_square(co, coarse).p_value > 1e-3);
  CHECK(chi_square(fo, coarse).p_value > 1e-3);
  CHECK(chi_square(cf, fine).p_value > 1e-3);
  CHECK(chi_square(ff, fine).p_value > 1e-3);
}

TEST_CASE("nested partition sampler matches exact laws") {
  Rng r = rng_stream(12, "nested");
  Law f = frag_distribution(3, 0.5, 0.5, -0.125);
  EmpiricalDist e;
  for (int i = 0; i < 40000; ++i) e.add(frag_sample(3, 0.5, 0.5, -0.125, r).key());
  CHECK(chi_square(e, f).p_value > 1e-3);
}
