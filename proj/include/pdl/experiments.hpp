#ifndef PDL_EXPERIMENTS_HPP
#define PDL_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pdl {

struct ExperimentOptions {
  std::uint64_t seed = 20241014;
  unsigned threads = 1;
  double scale = 1.0;  // multiplies replica counts
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> notes;

  void metric(const std::string& k, double v) { metrics.emplace_back(k, v); }
  void note(const std::string& s) { notes.push_back(s); }
};

const std::vector<std::string>& criterion_names();
int criterion_id(const std::string& name);  // accepts "7" or "brownian-graphon"
CriterionResult run_criterion(int id, const ExperimentOptions& opt);

}  // namespace pdl

#endif
