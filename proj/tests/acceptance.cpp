// Runs every acceptance criterion at full scale and prints one line each.
// Usage: pdl_acceptance [--seed S] [--threads T] [--scale X] [ids...]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <vector>

#include "pdl/experiments.hpp"

int main(int argc, char** argv) {
  pdl::ExperimentOptions opt;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) {
      opt.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (!std::strcmp(argv[i], "--threads") && i + 1 < argc) {
      opt.threads = static_cast<unsigned>(std::atoi(argv[++i]));
    } else if (!std::strcmp(argv[i], "--scale") && i + 1 < argc) {
      opt.scale = std::atof(argv[++i]);
    } else {
      try {
        ids.push_back(pdl::criterion_id(argv[i]));
      } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
      }
    }
  }
  if (ids.empty())
    for (std::size_t i = 1; i <= pdl::criterion_names().size(); ++i) ids.push_back(static_cast<int>(i));

  int failed = 0;
  for (int id : ids) {
    auto t0 = std::chrono::steady_clock::now();
    pdl::CriterionResult r;
    try {
      r = pdl::run_criterion(id, opt);
    } catch (const std::exception& e) {
      r.id = id;
      r.name = pdl::criterion_names()[id - 1];
      r.pass = false;
      r.note(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& [k, v] : r.metrics) std::printf("  [%d] %s = %.10g\n", r.id, k.c_str(), v);
    for (const auto& n : r.notes) std::printf("  [%d] note: %s\n", r.id, n.c_str());
    std::printf("%s criterion %d (%s) %.1fs\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), secs);
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(ids.size()) - failed, ids.size());
  return failed ? 1 : 0;
}
