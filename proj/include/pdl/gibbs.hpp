#ifndef PDL_GIBBS_HPP
#define PDL_GIBBS_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdl/rng.hpp"
#include "pdl/series.hpp"

namespace pdl {

// Head weights v tilted at mu, component weights w tilted at lambda. Every
// sampling probability is a ratio in which the tilts cancel, so the pair only
// controls the numerical range.
struct GibbsModel {
  Series v;
  Series w;
  std::string name;

  GibbsModel() = default;
  GibbsModel(Series v_, Series w_, std::string name_ = {});

  std::size_t n_max() const { return std::min(v.n_max(), w.n_max()); }
  double head(std::size_t l) const { return v.at(l); }              // v_l mu^l
  double comp(std::size_t k) const { return w.at(k) / v.tilt; }     // w_k lambda^k / mu
  int support_gcd() const;
};

struct PartitionSample {
  int n = 0;
  int num_components = 0;
  std::vector<int> sizes;        // exchangeable order
  std::vector<int> size_biased;  // least-element order, filled on request
};

struct InfeasibleSize : std::domain_error {
  using std::domain_error::domain_error;
};

struct KolchinExhausted : std::runtime_error {
  std::size_t trials;
  KolchinExhausted(const std::string& what, std::size_t t) : std::runtime_error(what), trials(t) {}
};

// Power table p_l(m) = [z^m] W~^l for m <= n and l up to a cap grown
// geometrically until the discarded l-tail is below 1e-12 of u_n.
class GibbsTable {
 public:
  GibbsTable(GibbsModel model, int n);

  int n() const { return n_; }
  int cap() const { return static_cast<int>(p_.size()) - 1; }
  const GibbsModel& model() const { return model_; }

  double tilted_u(int m) const;  // u_m lambda^m
  double tail_mass() const { return tail_; }
  bool truncation_warning() const { return tail_ > 1e-9 * tilted_u(n_); }
  double power(int l, int m) const { return p_[l][m]; }

  std::vector<double> count_law(int m) const;  // P(N_m = l), l = 0..cap
  PartitionSample sample(int m, Rng& rng, bool with_size_biased = false) const;
  std::map<int, double> size_biased_first(int m) const;

 private:
  GibbsModel model_;
  int n_;
  std::vector<double> wt_;
  std::vector<std::vector<double>> p_;
  std::vector<double> u_;
  double tail_ = 0;
};

struct PartitionFunction {
  double tilted = 0;     // u_n lambda^n
  double log_value = 0;  // log u_n
  double tail_mass = 0;
  bool warning = false;
};

PartitionFunction partition_function(const GibbsModel& m, int n);
PartitionSample sample_exact(const GibbsModel& m, int n, Rng& rng);
std::map<int, double> size_biased_first(const GibbsModel& m, int n);

struct KolchinResult {
  PartitionSample sample;
  std::size_t trials = 0;
};

// Rejection from the tilted iid representation. `tilt_ratio` rescales the
// component tilt (1 keeps the model's own, the default rho_w).
KolchinResult sample_kolchin(const GibbsModel& m, int n, std::size_t max_trials, Rng& rng,
                             double tilt_ratio = 1.0);

// Picks components with probability proportional to size.
std::vector<int> size_biased_order(const std::vector<int>& sizes, Rng& rng);

// ---- concrete models ----
GibbsModel gibbs_model_Od(int d, std::size_t n_max);
GibbsModel gibbs_model_Pd(int d, std::size_t n_max);
GibbsModel gibbs_model_weighted(BaseClass base, double q, std::size_t n_max);

// ---- stable-law numerics ----
double stable_moment(double alpha, double s);
double stable_density(double alpha, double x);
double z_moment(double alpha, double beta, double r);

struct ScalingConsts {
  double alpha = 0.5;
  double L_w = 1.0;       // constant of the component tail sum
  double W_at_rho = 1.0;  // W(rho_w)
};

double scaling_A(const ScalingConsts& c, double x);
ScalingConsts od_scaling_consts(int d);
ScalingConsts pd_scaling_consts(int d);

}  // namespace pdl

#endif
