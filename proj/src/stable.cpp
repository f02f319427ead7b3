#include <cmath>
#include <stdexcept>

#include "pdl/gibbs.hpp"

namespace pdl {

double stable_moment(double alpha, double s) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("stable_moment: 0 < alpha < 1");
  if (!(s < alpha)) throw std::domain_error("stable_moment: need s < alpha");
  return std::pow(std::tgamma(1 - alpha), s / alpha) * std::tgamma(1 - s / alpha) / std::tgamma(1 - s);
}

// Laplace transform exp(-Gamma(1-alpha) t^alpha). With c = Gamma(1-alpha)^{1/alpha},
// c f(c x) = 1/(pi x) sum_k Gamma(k alpha + 1)/k! (-x^-alpha)^k sin(-alpha k pi).
double stable_density(double alpha, double x) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("stable_density: 0 < alpha < 1");
  if (!(x >= 0.05)) throw std::domain_error("stable_density: x >= 0.05 required");
  const long double pi = 3.141592653589793238462643383279502884L;
  long double c = std::pow(static_cast<long double>(std::tgamma(1 - alpha)), 1.0L / alpha);
  long double y = x / c;
  long double ly = std::log(y);
  long double sum = 0, peak = 0;
  for (int k = 1; k < 100000; ++k) {
    // envelope without the sine, which vanishes for some k
    long double lmag = std::lgamma(static_cast<long double>(k) * alpha + 1) -
                       std::lgamma(static_cast<long double>(k) + 1) - k * alpha * ly;
    long double mag = std::exp(lmag);
    long double term = (k % 2 ? -1.0L : 1.0L) * mag * std::sin(-alpha * k * pi);
    sum += term;
    peak = std::max(peak, mag);
    if (mag < peak && mag < 1e-16L * std::abs(sum)) break;
  }
  return static_cast<double>(sum / (pi * y) / c);
}

double z_moment(double alpha, double beta, double r) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("z_moment: 0 < alpha < 1");
  if (!(beta < 1)) throw std::invalid_argument("z_moment: beta < 1");
  if (!(r > beta - 1)) throw std::domain_error("z_moment: need r > beta - 1");
  return std::pow(std::tgamma(1 - alpha), -r) * std::tgamma(1 - beta + r) * std::tgamma(1 - alpha * beta) /
         (std::tgamma(1 - beta) * std::tgamma(1 - alpha * (beta - r)));
}

double scaling_A(const ScalingConsts& c, double x) {
  if (!(x > 0)) throw std::domain_error("scaling_A: x > 0");
  return std::pow(x, c.alpha) * c.W_at_rho / c.L_w;
}

// Component tails: w_k rho^k ~ C k^{-1-alpha}, so the tail sum is C/alpha k^{-alpha}.
ScalingConsts od_scaling_consts(int d) {
  if (d < 2) throw std::invalid_argument("od_scaling_consts: d >= 2");
  ScalingConsts s;
  s.alpha = std::pow(2.0, -(d - 1));
  s.L_w = rho_O() * proasym_const(d - 1) / s.alpha;
  s.W_at_rho = rho_O() * O_at_rho();
  return s;
}

ScalingConsts pd_scaling_consts(int d) {
  if (d < 2) throw std::invalid_argument("pd_scaling_consts: d >= 2");
  ScalingConsts s;
  s.alpha = std::pow(2.0, -(d - 1));
  s.L_w = 2.0 * std::sqrt(rho_P()) * sepasym_const(d - 1) / s.alpha;
  s.W_at_rho = rho_P();
  return s;
}

}  // namespace pdl
