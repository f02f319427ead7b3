#ifndef PDL_STATS_HPP
#define PDL_STATS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "pdl/rng.hpp"

namespace pdl {

// Exact law keyed by canonical strings.
using Law = std::map<std::string, double>;

struct EmpiricalDist {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(const std::string& key, std::uint64_t c = 1) {
    counts[key] += c;
    total += c;
  }
  void merge(const EmpiricalDist& other);
  double freq(const std::string& key) const;
  Law normalized() const;
};

struct ChiSquareResult {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
  int bins = 0;
};

// Pearson test; bins with expected count below `min_expected` are pooled.
// An observation on a key with zero expected mass gives p = 0.
ChiSquareResult chi_square(const EmpiricalDist& emp, const Law& expected,
                           double min_expected = 5.0);

double tv_distance(const EmpiricalDist& emp, const Law& expected);
double tv_distance(const Law& a, const Law& b);
double max_abs_diff(const Law& a, const Law& b);

struct MomentCI {
  double mean = 0;
  double se = 0;
  double lo = 0;
  double hi = 0;
  std::size_t count = 0;
};

MomentCI moment_ci(const std::vector<double>& xs, double r = 1.0, double z = 1.96);

double ks_two_sample(std::vector<double> a, std::vector<double> b);
double chi_square_sf(double x, double dof);

struct ExperimentSpec {
  std::string model;
  std::vector<int> sizes;
  std::size_t replicas = 1;
  std::uint64_t seed = 1;
  std::vector<std::string> statistics;
};

// Runs f(replica, rng) for every replica on its own substream; results are
// stored by replica index, so the output does not depend on `threads`.
template <class R, class F>
std::vector<R> run_replicas(std::size_t replicas, unsigned threads, std::uint64_t seed,
                            const std::string& stream, F&& f) {
  std::vector<R> out(replicas);
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < replicas; i += step) {
      Rng rng = rng_stream(seed, stream, i);
      out[i] = f(i, rng);
    }
  };
  if (threads <= 1 || replicas < 2) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace pdl

#endif
