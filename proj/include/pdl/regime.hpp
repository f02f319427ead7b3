#ifndef PDL_REGIME_HPP
#define PDL_REGIME_HPP

#include <limits>
#include <stdexcept>
#include <string>

#include "pdl/series.hpp"

namespace pdl {

// Prefactor information the decision tables need beyond the exponents.
struct SlowlyVarying {
  double ell_head = 1.0;
  double ell_comp = 1.0;
  // Only read when both exponents coincide: -1 means ell_H = o(ell_C),
  // +1 means ell_C = o(ell_H), 0 means ell_H/ell_C -> ell_head/ell_comp.
  int ell_order = 0;
  double head_derivative = std::numeric_limits<double>::quiet_NaN();  // H'(C(rho_C))
  double mu = std::numeric_limits<double>::quiet_NaN();
  int comp_gcd = 1;
};

// Exponents follow the dilute convention: c_n rho_C^n ~ ell_C n^{-alpha-1}
// and h_n rho_H^n ~ ell_H n^{-beta-1}. The classifier never infers them.
struct ModelDescriptor {
  Series head_series;
  Series comp_series;
  double rho_head = 0;
  double rho_comp = 0;
  double comp_at_rho = 0;  // C(rho_C)
  double alpha = 0;
  double beta = 0;
  SlowlyVarying consts;
};

struct Regime {
  enum class Kind { Dilute, Dense, CondConvergent, CondSuperexponential, Mesocondensation, Mixture };
  Kind kind = Kind::Dilute;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();
  double p = std::numeric_limits<double>::quiet_NaN();

  std::string name() const;
};

struct UnclassifiedRegime : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Regime regime_classify(const ModelDescriptor& m);

ModelDescriptor weighted_descriptor(BaseClass base, double q);
ModelDescriptor od_descriptor(int d);
ModelDescriptor pd_descriptor(int d);

}  // namespace pdl

#endif
