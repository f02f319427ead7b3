#ifndef PDL_RNG_HPP
#define PDL_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace pdl {

using Rng = std::mt19937_64;

// Seed of the substream `name` under the master seed; FNV-1a of the name
// folded through splitmix64.
std::uint64_t stream_seed(std::uint64_t seed, std::string_view name,
                          std::uint64_t index = 0);

Rng rng_stream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0);

// 53-bit uniform in [0,1).
double uniform01(Rng& rng);
std::size_t uniform_index(std::size_t n, Rng& rng);
bool coin(Rng& rng);

double gamma_draw(double shape, Rng& rng);
// Two-gamma quotient.
double beta_draw(double a, double b, Rng& rng);

// Index drawn proportionally to w[0..w.size()); `total` may be passed when known.
std::size_t sample_discrete(const std::vector<double>& w, Rng& rng);
std::size_t sample_discrete(const std::vector<double>& w, double total, Rng& rng);

template <class It>
void shuffle_range(It first, It last, Rng& rng) {
  auto n = static_cast<std::size_t>(last - first);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = uniform_index(i, rng);
    std::swap(first[i - 1], first[j]);
  }
}

}  // namespace pdl

#endif
