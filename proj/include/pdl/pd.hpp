#ifndef PDL_PD_HPP
#define PDL_PD_HPP

#include <functional>
#include <string>
#include <vector>

#include "pdl/rng.hpp"
#include "pdl/stats.hpp"

namespace pdl {

struct PDParams {
  double alpha = 0.5;
  double theta = 0.5;

  PDParams() = default;
  PDParams(double a, double t) : alpha(a), theta(t) { validate(); }
  void validate() const;
};

double pochhammer(double x, int m);
double gen_pochhammer(double x, double d, int m);

struct StickSample {
  std::vector<double> weights;  // ranked, descending
  double residual_mass = 1.0;
  std::size_t truncation_count = 0;
};

// Size-biased sticks produced on demand; `locate` finds the stick hit by a
// uniform point and extends the sequence as far as needed.
class StickBreaker {
 public:
  explicit StickBreaker(PDParams p) : p_(p) {}
  double next(Rng& rng);
  std::size_t locate(double u, Rng& rng);
  const std::vector<double>& sticks() const { return sticks_; }
  double residual() const { return residual_; }

 private:
  PDParams p_;
  double residual_ = 1.0;
  std::vector<double> sticks_;
  std::vector<double> cum_;
};

StickSample stick_breaking(const PDParams& p, double epsilon, Rng& rng);

// Blocks are 0-based element lists, sorted, ordered by least element.
struct SetPartition {
  int k = 0;
  std::vector<std::vector<int>> blocks;

  std::vector<int> sizes() const;
  // "1 3|2" with 1-based labels
  std::string key() const;
  void canonicalize();
};

using Composition = std::vector<int>;

// table[i] = index (least-element order) of the table of customer i
std::vector<int> crp_tables(const PDParams& p, int k, Rng& rng);
SetPartition crp_run(const PDParams& p, int k, Rng& rng);
SetPartition partition_from_labels(const std::vector<int>& labels);

double composition_prob(const PDParams& p, const Composition& comp);
double eppf_exchangeable(const PDParams& p, const std::vector<int>& sizes);
// number of set partitions with the given least-element size profile
double composition_multiplicity(const Composition& comp);

void for_each_set_partition(int k, const std::function<void(const SetPartition&)>& f);
void for_each_composition(int k, const std::function<void(const Composition&)>& f);
std::string composition_key(const Composition& c);

struct NestedPartition {
  SetPartition outer;
  std::vector<SetPartition> inner;  // inner[i] partitions outer.blocks[i] (global labels)

  // "<outer>||<all inner blocks by least element>", e.g. "1 3|2||1|2|3"
  std::string key() const;
  SetPartition fine() const;
};

NestedPartition frag_sample(int k, double alpha1, double alpha2, double theta, Rng& rng);
NestedPartition coag_sample(int k, double alpha1, double alpha2, double theta, Rng& rng);
Law frag_distribution(int k, double alpha1, double alpha2, double theta);
Law coag_distribution(int k, double alpha1, double alpha2, double theta);

}  // namespace pdl

#endif
