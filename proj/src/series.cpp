#include "pdl/series.hpp"

#include <cmath>

namespace pdl {

double proasym_const(int d) {
  if (d < 1) throw std::invalid_argument("proasym_const: d >= 1");
  double e = std::pow(2.0, -d);
  return e / std::tgamma(1.0 - e) * std::pow(2.0 * std::sqrt(rho_O()), 2.0 - std::pow(2.0, -(d - 1)));
}

double sepasym_const(int d) {
  if (d < 1) throw std::invalid_argument("sepasym_const: d >= 1");
  double e = std::pow(2.0, -d);
  return (std::sqrt(2.0) - 1.0) * std::pow(2.0, 1.5 - d - 5.0 / std::pow(2.0, d + 1)) /
         std::tgamma(1.0 - e);
}

double cotree_offspring(int k) {
  if (k < 0 || k == 1) return 0.0;
  if (k == 0) return 2.0 - 1.0 / std::log(2.0);
  return std::exp((k - 1) * std::log(std::log(2.0)) - std::lgamma(k + 1.0));
}

double decomp_offspring(int k) {
  if (k < 0 || k == 1) return 0.0;
  if (k == 0) return 2.0 - std::sqrt(2.0);
  return std::pow((2.0 - std::sqrt(2.0)) / 2.0, k - 1);
}

}  // namespace pdl
