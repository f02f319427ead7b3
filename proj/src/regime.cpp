#include "pdl/regime.hpp"

#include <cmath>

namespace pdl {

std::string Regime::name() const {
  switch (kind) {
    case Kind::Dilute: return "Dilute";
    case Kind::Dense: return "Dense";
    case Kind::CondConvergent: return "CondConvergent";
    case Kind::CondSuperexponential: return "CondSuperexponential";
    case Kind::Mesocondensation: return "Mesocondensation";
    case Kind::Mixture: return "Mixture";
  }
  return "?";
}

namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

Regime make(Regime::Kind k) {
  Regime r;
  r.kind = k;
  return r;
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0; }

}  // namespace

Regime regime_classify(const ModelDescriptor& m) {
  using K = Regime::Kind;
  const double a = m.alpha + 1.0;  // component exponent
  const double b = m.beta + 1.0;   // head exponent
  const auto& c = m.consts;

  if (m.rho_comp == 0.0) {
    if (m.rho_head > 0) return make(K::CondSuperexponential);
    throw UnclassifiedRegime("regime: rho_C = 0 needs rho_H > 0");
  }
  if (!(m.rho_comp > 0) || !(m.comp_at_rho > 0) || !(m.rho_head > 0))
    throw UnclassifiedRegime("regime: radii must be positive");

  if (close(m.rho_head, m.comp_at_rho)) {
    if (close(a, 1.0) && b > -2.0) return make(K::Mesocondensation);
    if (m.alpha > 0 && m.alpha < 1 && m.beta < 1) {
      Regime r = make(K::Dilute);
      r.alpha = m.alpha;
      r.beta = m.beta;
      return r;
    }
    if (a > 2 && close(a, b)) {
      if (c.ell_order > 0) return make(K::Dense);
      if (c.ell_order < 0) {
        if (finite_positive(c.head_derivative)) return make(K::CondConvergent);
        throw UnclassifiedRegime("regime: condensation needs 0 < H'(C(rho_C)) < inf");
      }
      if (!finite_positive(c.head_derivative) || !finite_positive(c.mu))
        throw UnclassifiedRegime("regime: mixture needs finite positive H'(C(rho_C)) and mu");
      Regime r = make(K::Mixture);
      r.p = std::pow(c.mu, a - 1.0) / c.head_derivative * (c.ell_head / c.ell_comp);
      if (!(r.p > 0 && r.p < 1)) throw UnclassifiedRegime("regime: mixture weight outside (0,1)");
      return r;
    }
    if (a > 2 && b > 1 && b < a) return make(K::Dense);
    if (b > 2 && a > 1 && a < b) {
      if (finite_positive(c.head_derivative)) return make(K::CondConvergent);
      throw UnclassifiedRegime("regime: condensation needs 0 < H'(C(rho_C)) < inf");
    }
    throw UnclassifiedRegime("regime: critical descriptor outside every table");
  }
  if (m.rho_head < m.comp_at_rho) {
    if (b > 1 && c.comp_gcd == 1) return make(K::Dense);
    throw UnclassifiedRegime("regime: supercritical case needs b > 1 and gcd 1");
  }
  // rho_H > C(rho_C)
  if (a > 1 && finite_positive(c.head_derivative)) return make(K::CondConvergent);
  throw UnclassifiedRegime("regime: subcritical case needs a > 1 and 0 < H'(C(rho_C)) < inf");
}

namespace {

double derivative_at(const Series& s, double x) {
  // s tilted at its radius; x strictly inside gives a geometric tail
  double r = x / s.tilt, sum = 0, p = 1.0 / s.tilt;
  for (std::size_t k = 1; k <= s.n_max(); ++k) {
    sum += k * s[k] * p;
    p *= r;
  }
  return sum;
}

}  // namespace

ModelDescriptor weighted_descriptor(BaseClass base, double q) {
  if (!(q > 0)) throw std::invalid_argument("weighted_descriptor: q > 0");
  const std::size_t n = 2000;
  ModelDescriptor m;
  double rho = base == BaseClass::Cograph ? rho_O() : rho_P();
  double at = base == BaseClass::Cograph ? O_at_rho() : P_at_rho();
  m.head_series = base == BaseClass::Cograph ? class_cograph_O(n, rho) : class_sep_P(n, rho);
  m.comp_series = ps_scale(m.head_series, q);
  m.rho_head = rho;
  m.rho_comp = rho;
  m.comp_at_rho = q * at;
  m.alpha = 0.5;
  m.beta = 0.5;
  m.consts.ell_head = base == BaseClass::Cograph ? proasym_const(1) : sepasym_const(1);
  m.consts.ell_comp = q * m.consts.ell_head;
  m.consts.head_derivative = m.comp_at_rho < rho ? derivative_at(m.head_series, m.comp_at_rho)
                                                 : std::numeric_limits<double>::infinity();
  return m;
}

ModelDescriptor od_descriptor(int d) {
  if (d < 2) throw std::invalid_argument("od_descriptor: d >= 2");
  const std::size_t n = 500;
  ModelDescriptor m;
  m.head_series = class_cograph_O(n, rho_O());
  m.comp_series = ps_shift(class_Od(d - 1, n, rho_O()));
  m.rho_head = rho_O();
  m.rho_comp = rho_O();
  m.comp_at_rho = rho_O() * O_at_rho();
  m.alpha = std::pow(2.0, -(d - 1));
  m.beta = 0.5;
  m.consts.head_derivative = std::numeric_limits<double>::infinity();
  return m;
}

ModelDescriptor pd_descriptor(int d) {
  if (d < 2) throw std::invalid_argument("pd_descriptor: d >= 2");
  const std::size_t n = 500;
  ModelDescriptor m;
  m.head_series = class_sep_P(n, rho_P());
  Series p = class_Pd(d - 1, n, rho_P());
  m.comp_series = ps_mul(p, p);
  m.rho_head = rho_P();
  m.rho_comp = rho_P();
  m.comp_at_rho = rho_P();  // P_{d-1}(rho_P)^2
  m.alpha = std::pow(2.0, -(d - 1));
  m.beta = 0.5;
  m.consts.head_derivative = std::numeric_limits<double>::infinity();
  return m;
}

}  // namespace pdl
