#include "pdl/rng.hpp"

#include <stdexcept>

namespace pdl {

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::string_view name, std::uint64_t index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= h;
  std::uint64_t b = splitmix64(s);
  s ^= index * 0xd1b54a32d192ed03ULL;
  std::uint64_t c = splitmix64(s);
  return a ^ (b << 1) ^ (c * 3);
}

Rng rng_stream(std::uint64_t seed, std::string_view name, std::uint64_t index) {
  std::uint64_t s = stream_seed(seed, name, index);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                    static_cast<std::uint32_t>(splitmix64(s)),
                    static_cast<std::uint32_t>(splitmix64(s))};
  return Rng(seq);
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  // Lemire's multiply-shift with rejection.
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    std::uint64_t t = (0 - static_cast<std::uint64_t>(n)) % n;
    while (lo < t) {
      m = static_cast<unsigned __int128>(rng()) * n;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::size_t>(m >> 64);
}

bool coin(Rng& rng) { return (rng() >> 63) != 0; }

double gamma_draw(double shape, Rng& rng) {
  std::gamma_distribution<double> g(shape, 1.0);
  return g(rng);
}

double beta_draw(double a, double b, Rng& rng) {
  for (;;) {
    double x = gamma_draw(a, rng);
    double y = gamma_draw(b, rng);
    double s = x + y;
    if (s > 0) return x / s;
  }
}

std::size_t sample_discrete(const std::vector<double>& w, Rng& rng) {
  double total = 0;
  for (double x : w) total += x;
  return sample_discrete(w, total, rng);
}

std::size_t sample_discrete(const std::vector<double>& w, double total, Rng& rng) {
  if (!(total > 0)) throw std::invalid_argument("sample_discrete: no mass");
  double u = uniform01(rng) * total;
  std::size_t last = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0) continue;
    last = i;
    if (u < w[i]) return i;
    u -= w[i];
  }
  return last;  // rounding spill
}

}  // namespace pdl
