#include "commands.hpp"

#include <CLI11.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "pdl/cotree.hpp"
#include "pdl/experiments.hpp"
#include "pdl/gibbs.hpp"
#include "pdl/graph_kernels.hpp"
#include "pdl/pd.hpp"
#include "pdl/perm_kernels.hpp"
#include "pdl/regime.hpp"
#include "pdl/serialize.hpp"
#include "pdl/supergraph.hpp"
#include "pdl/superperm.hpp"

namespace {

using namespace pdl;
using Rational = boost::multiprecision::cpp_rational;

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  unsigned threads = 1;
};

// stdout unless --out is given
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open --out " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void csv_header(std::ostream& os, const Common& c, const std::string& model, const std::string& n, std::size_t reps) {
  os << "# schema_version=" << kSchemaVersion << "\n# seed=" << c.seed << "\n# model=" << model << "\n# n=" << n
     << "\n# replicas=" << reps << "\n";
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad integer list: " + s);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

GibbsModel gibbs_model(const std::string& model, int d, double q, int n) {
  if (model == "Od") return gibbs_model_Od(d, n);
  if (model == "Pd") return gibbs_model_Pd(d, n);
  if (model == "weighted-cograph") return gibbs_model_weighted(BaseClass::Cograph, q, n);
  if (model == "weighted-separable") return gibbs_model_weighted(BaseClass::Separable, q, n);
  throw std::invalid_argument("unknown model " + model);
}

const std::vector<std::string> kGibbsModels = {"Od", "Pd", "weighted-cograph", "weighted-separable"};

// ---- enumerate ----

void cmd_enumerate(const Common& c, const std::string& cls, int d, int n) {
  if (n < 1) throw std::invalid_argument("--n >= 1");
  if (d < 1) throw std::invalid_argument("--d >= 1");
  bool graphs = cls == "cograph";
  Sink sink(c.out);
  auto& os = sink.os();
  csv_header(os, c, cls + "_d" + std::to_string(d), std::to_string(n), 0);
  os << "n,coefficient,labelled_count,normalized_by_asymptotic\n";
  double rho = graphs ? rho_O() : rho_P();
  Series tilted = graphs ? class_Od<double>(d, n, rho) : class_Pd<double>(d, n, rho);
  double C = graphs ? proasym_const(d) : sepasym_const(d);
  double e = asym_exponent(d);
  const int exact_upto = 100;
  PowerSeries<Rational> exact;
  if (n <= exact_upto) exact = graphs ? class_Od<Rational>(d, n, Rational(1)) : class_Pd<Rational>(d, n, Rational(1));
  Rational fact = 1;
  for (int m = 1; m <= n; ++m) {
    fact *= m;
    std::string coef, lab;
    if (m <= exact_upto) {
      coef = exact[m].str();
      lab = graphs ? Rational(exact[m] * fact).str() : coef;
    } else {
      double lc = std::log(tilted[m]) - m * std::log(rho);
      coef = num(std::exp(lc));
      lab = graphs ? num(std::exp(lc + std::lgamma(m + 1.0))) : coef;
    }
    os << m << "," << coef << "," << lab << "," << num(tilted[m] * std::pow(m, e) / C) << "\n";
  }
}

// ---- partitions ----

void cmd_pd_sample(const Common& c, double alpha, double theta, double eps, std::size_t reps) {
  PDParams p(alpha, theta);
  auto rows = run_replicas<StickSample>(reps, c.threads, c.seed, "cli-pd-sample",
                                        [&](std::size_t, Rng& rng) { return stick_breaking(p, eps, rng); });
  Sink sink(c.out);
  auto& os = sink.os();
  csv_header(os, c, "PD(" + num(alpha) + "," + num(theta) + ")", "-", reps);
  os << "replica,rank,weight,residual_mass\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t r = 0; r < rows[i].weights.size(); ++r)
      os << i << "," << r + 1 << "," << num(rows[i].weights[r]) << "," << num(rows[i].residual_mass) << "\n";
}

void cmd_crp(const Common& c, double alpha, double theta, int k, std::size_t reps) {
  PDParams p(alpha, theta);
  if (k < 1) throw std::invalid_argument("--k >= 1");
  auto rows = run_replicas<SetPartition>(reps, c.threads, c.seed, "cli-crp",
                                         [&](std::size_t, Rng& rng) { return crp_run(p, k, rng); });
  Sink sink(c.out);
  auto& os = sink.os();
  csv_header(os, c, "CRP(" + num(alpha) + "," + num(theta) + ")", std::to_string(k), reps);
  os << "replica,partition,composition\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    os << i << "," << rows[i].key() << "," << composition_key(rows[i].sizes()) << "\n";
}

void cmd_eppf(const Common& c, double alpha, double theta, const std::string& comp, const std::string& sizes) {
  PDParams p(alpha, theta);
  if (comp.empty() == sizes.empty()) throw std::invalid_argument("give exactly one of --comp, --sizes");
  Sink sink(c.out);
  auto& os = sink.os();
  csv_header(os, c, "EPPF(" + num(alpha) + "," + num(theta) + ")", "-", 0);
  os << "quantity,value\n";
  if (!comp.empty())
    os << "composition_prob," << num(composition_prob(p, parse_ints(comp))) << "\n";
  else
    os << "eppf," << num(eppf_exchangeable(p, parse_ints(sizes))) << "\n";
}

int cmd_duality(const Common& c, int k, double a1, double a2, double theta, bool assert_) {
  Law f = frag_distribution(k, a1, a2, theta);
  Law g = coag_distribution(k, a1, a2, theta);
  double diff = max_abs_diff(f, g);
  Sink sink(c.out);
  auto& os = sink.os();
  csv_header(os, c, "duality(" + num(a1) + "," + num(a2) + "," + num(theta) + ")", std::to_string(k), 0);
  os << "k,support,max_abs_diff\n" << k << "," << f.size() << "," << num(diff) << "\n";
  return assert_ && !(diff < 1e-10) ? 3 : 0;
}

// ---- Gibbs ----

void cmd_gibbs_sample(const Common& c, const std::string& model, int d, double q, int n, std::size_t reps,
                      const std::string& sampler) {
  GibbsModel m = gibbs_model(model, d, q, n);
  std::vector<PartitionSample> rows;
  if (sampler == "exact") {
    GibbsTable t(m, n);
    rows = run_replicas<PartitionSample>(reps, c.threads, c.seed, "cli-gibbs-exact",
                                         [&](std::size_t, Rng& rng) { return t.sample(n, rng); });
  } else {
    rows = run_replicas<PartitionSample>(reps, c.threads, c.seed, "cli-gibbs-kolchin", [&](std::size_t, Rng& rng) {
      return sample_kolchin(m, n, 100000000, rng).sample;
    });
  }
  Sink sink(c.out);
  auto& os = sink.os();
  csv_header(os, c, model + "_d" + std::to_string(d) + "_q" + num(q), std::to_string(n), reps);
  os << "replica,n,N_n,sizes\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << i << "," << n << "," << rows[i].num_components << ",";
    for (std::size_t j = 0; j < rows[i].sizes.size(); ++j) os << (j ? ";" : "") << rows[i].sizes[j];
    os << "\n";
  }
}

void cmd_gibbs_law(const Common& c, const std::string& model, int d, double q, int n) {
  GibbsTable t(gibbs_model(model, d, q, n), n);
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = c.seed;
  j["model"] = model;
  j["d"] = d;
  j["q"] = q;
  j["n"] = n;
  j["tilted_partition_function"] = t.tilted_u(n);
  j["truncation_warning"] = t.truncation_warning();
  Json count = Json::object();
  auto law = t.count_law(n);
  for (std::size_t l = 0; l < law.size(); ++l)
    if (law[l] > 0) count[std::to_string(l)] = law[l];
  j["count_law"] = count;
  Json sb = Json::object();
  for (auto [k, p] : t.size_biased_first(n)) sb[std::to_string(k)] = p;
  j["size_biased_first"] = sb;
  Sink sink(c.out);
  sink.os() << j.dump(2) << "\n";
}

void cmd_regime(const Common& c, const std::string& model, int d, double q) {
  ModelDescriptor desc;
  if (model == "Od")
    desc = od_descriptor(d);
  else if (model == "Pd")
    desc = pd_descriptor(d);
  else if (model == "weighted-cograph")
    desc = weighted_descriptor(BaseClass::Cograph, q);
  else if (model == "weighted-separable")
    desc = weighted_descriptor(BaseClass::Separable, q);
  else
    throw std::invalid_argument("unknown model " + model);
  Regime r = regime_classify(desc);
  Sink sink(c.out);
  auto& os = sink.os();
  csv_header(os, c, model + "_d" + std::to_string(d) + "_q" + num(q), "-", 0);
  os << "regime,alpha,beta,p\n" << r.name() << "," << num(r.alpha) << "," << num(r.beta) << "," << num(r.p) << "\n";
}

// ---- structures ----

void cmd_sample_graph(const Common& c, const std::string& model, int d, double q, int n, std::size_t reps) {
  if (n < 1) throw std::invalid_argument("--n >= 1");
  std::vector<Graph> gs;
  if (model == "cograph") {
    auto s = shared_cograph_sampler(n);
    gs = run_replicas<Graph>(reps, c.threads, c.seed, "cli-sample-graph",
                             [&](std::size_t, Rng& rng) { return cotree_to_cograph(s->sample(n, rng)); });
  } else if (model == "Od" || model == "weighted") {
    auto s = model == "Od" ? SupergraphSampler::iterated(d, n) : SupergraphSampler::weighted(q, n);
    gs = run_replicas<Graph>(reps, c.threads, c.seed, "cli-sample-graph",
                             [&](std::size_t, Rng& rng) { return s->sample(n, rng).flatten(); });
  } else {
    throw std::invalid_argument("unknown graph model " + model);
  }
  Json j = {{"schema_version", kSchemaVersion}, {"seed", c.seed}, {"model", model}, {"n", n}};
  j["samples"] = Json::array();
  for (const auto& g : gs) j["samples"].push_back(graph_json(g));
  Sink sink(c.out);
  sink.os() << j.dump() << "\n";
}

void cmd_sample_perm(const Common& c, const std::string& model, int d, double q, int n, std::size_t reps) {
  if (n < 1) throw std::invalid_argument("--n >= 1");
  Json samples = Json::array();
  if (model == "separable") {
    auto s = shared_separable_sampler(n);
    auto ps = run_replicas<Permutation>(reps, c.threads, c.seed, "cli-sample-perm",
                                        [&](std::size_t, Rng& rng) { return s->sample(n, rng); });
    for (const auto& p : ps) samples.push_back(perm_json(p));
  } else if (model == "Pd" || model == "weighted") {
    auto s = model == "Pd" ? SuperpermSampler::iterated(d, n) : SuperpermSampler::weighted(q, n);
    auto ps = run_replicas<Superpermutation>(reps, c.threads, c.seed, "cli-sample-perm",
                                             [&](std::size_t, Rng& rng) { return s->sample(n, rng); });
    for (const auto& p : ps) samples.push_back(superperm_json(p));
  } else {
    throw std::invalid_argument("unknown permutation model " + model);
  }
  Json j = {{"schema_version", kSchemaVersion}, {"seed", c.seed}, {"model", model}, {"n", n}};
  j["samples"] = samples;
  Sink sink(c.out);
  sink.os() << j.dump() << "\n";
}

void cmd_marginal(const Common& c, const std::string& kind, const std::string& mode, int d, int k, std::size_t reps) {
  if (k < 1) throw std::invalid_argument("--k >= 1");
  Law law;
  if (kind == "graphon") {
    KernelPtr ker = iterated_marginal_kernel(d);
    if (mode == "exact") {
      auto e = ker->exact_distribution(k);
      if (!e) throw std::invalid_argument("no exact law at this k; use --mode mc");
      law = *e;
    } else {
      auto keys = run_replicas<std::string>(reps, c.threads, c.seed, "cli-marginal",
                                            [&](std::size_t, Rng& rng) { return ker->sample(k, rng).key(); });
      EmpiricalDist emp;
      for (const auto& key : keys) emp.add(key);
      law = emp.normalized();
    }
  } else {
    PermKernelPtr ker = iterated_perm_kernel(d);
    if (mode == "exact") {
      auto e = ker->exact_distribution(k);
      if (!e) throw std::invalid_argument("no exact law at this k; use --mode mc");
      law = *e;
    } else {
      auto keys = run_replicas<std::string>(reps, c.threads, c.seed, "cli-marginal",
                                            [&](std::size_t, Rng& rng) { return ker->sample(k, rng).key(); });
      EmpiricalDist emp;
      for (const auto& key : keys) emp.add(key);
      law = emp.normalized();
    }
  }
  Json j = law_json(law, kind == "graphon" ? "graph-upper-triangle" : "permutation-one-line");
  j["seed"] = c.seed;
  j["limit"] = (kind == "graphon" ? "W" : "mu") + std::string("^(") + std::to_string(d) + ")";
  j["k"] = k;
  j["mode"] = mode;
  if (mode == "mc") j["replicas"] = reps;
  Sink sink(c.out);
  sink.os() << j.dump(2) << "\n";
}

int cmd_converge(const Common& c, const std::string& experiment, double scale, bool assert_) {
  ExperimentOptions opt;
  opt.seed = c.seed;
  opt.threads = c.threads;
  opt.scale = scale;
  CriterionResult r = run_criterion(criterion_id(experiment), opt);
  Sink sink(c.out);
  auto& os = sink.os();
  csv_header(os, c, r.name, "-", 0);
  os << "# scale=" << num(scale) << "\ncriterion,metric,value\n";
  for (const auto& [k, v] : r.metrics) os << r.id << "," << k << "," << num(v) << "\n";
  for (const auto& note : r.notes) os << "# note: " << note << "\n";
  os << r.id << ",pass," << (r.pass ? 1 : 0) << "\n";
  return assert_ && !r.pass ? 3 : 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Poisson-Dirichlet limits of random graphs and permutations"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--seed", c.seed, "master seed")->capture_default_str();
  app.add_option("--out", c.out, "output file (default stdout)");
  app.add_option("--threads", c.threads, "replica threads")->capture_default_str()->check(CLI::PositiveNumber);

  int code = 0;
  std::function<void()> action;
  auto with_common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "master seed");
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_option("--threads", c.threads, "replica threads")->check(CLI::PositiveNumber);
    return sub;
  };

  std::string cls = "cograph", model, kind = "graphon", mode = "exact", sampler = "exact", experiment, comp, sizes;
  int n = 10, d = 2, d_enum = 1, k = 3;
  double alpha = 0.5, theta = 0.5, alpha1 = 0.5, alpha2 = 0.5, q = 0.2, eps = 1e-6, scale = 1.0;
  std::size_t reps = 10;
  bool assert_ = false;

  auto* en = with_common(app.add_subcommand("enumerate", "exact class counts"));
  en->add_option("--class", cls)->check(CLI::IsMember({"cograph", "separable"}))->capture_default_str();
  en->add_option("--d", d_enum, "nesting depth")->capture_default_str();
  en->add_option("--n", n, "largest size")->capture_default_str();
  en->callback([&] { action = [&] { cmd_enumerate(c, cls, d_enum, n); }; });

  auto* pds = with_common(app.add_subcommand("pd-sample", "ranked PD(alpha, theta) weights by stick breaking"));
  pds->add_option("--alpha", alpha)->capture_default_str();
  pds->add_option("--theta", theta)->capture_default_str();
  pds->add_option("--epsilon", eps, "stop once the unbroken mass is below this")->capture_default_str();
  pds->add_option("--replicas", reps)->capture_default_str();
  pds->callback([&] { action = [&] { cmd_pd_sample(c, alpha, theta, eps, reps); }; });

  auto* crp = with_common(app.add_subcommand("crp", "Chinese restaurant process partitions"));
  crp->add_option("--alpha", alpha)->capture_default_str();
  crp->add_option("--theta", theta)->capture_default_str();
  crp->add_option("--k", k, "customers")->capture_default_str();
  crp->add_option("--replicas", reps)->capture_default_str();
  crp->callback([&] { action = [&] { cmd_crp(c, alpha, theta, k, reps); }; });

  auto* ep = with_common(app.add_subcommand("eppf", "composition probability or EPPF value"));
  ep->add_option("--alpha", alpha)->capture_default_str();
  ep->add_option("--theta", theta)->capture_default_str();
  ep->add_option("--comp", comp, "block sizes in least-element order, e.g. 2,1");
  ep->add_option("--sizes", sizes, "block sizes of one set partition");
  ep->callback([&] { action = [&] { cmd_eppf(c, alpha, theta, comp, sizes); }; });

  auto* du = with_common(app.add_subcommand("duality-check", "fragmentation vs coagulation laws"));
  du->add_option("--k", k)->capture_default_str();
  du->add_option("--alpha1", alpha1)->capture_default_str();
  du->add_option("--alpha2", alpha2)->capture_default_str();
  du->add_option("--theta", theta)->capture_default_str();
  du->add_flag("--assert", assert_, "exit 3 unless the difference is below 1e-10");
  du->callback([&] { action = [&] { code = cmd_duality(c, k, alpha1, alpha2, theta, assert_); }; });

  auto* gs = with_common(app.add_subcommand("gibbs-sample", "Gibbs partition component sizes"));
  gs->add_option("--model", model)->required()->check(CLI::IsMember(kGibbsModels));
  gs->add_option("--d", d)->capture_default_str();
  gs->add_option("--q", q)->capture_default_str();
  gs->add_option("--n", n)->capture_default_str();
  gs->add_option("--replicas", reps)->capture_default_str();
  gs->add_option("--sampler", sampler)->check(CLI::IsMember({"exact", "kolchin"}))->capture_default_str();
  gs->callback([&] { action = [&] { cmd_gibbs_sample(c, model, d, q, n, reps, sampler); }; });

  auto* gl = with_common(app.add_subcommand("gibbs-law", "exact component count and size-biased laws"));
  gl->add_option("--model", model)->required()->check(CLI::IsMember(kGibbsModels));
  gl->add_option("--d", d)->capture_default_str();
  gl->add_option("--q", q)->capture_default_str();
  gl->add_option("--n", n)->capture_default_str();
  gl->callback([&] { action = [&] { cmd_gibbs_law(c, model, d, q, n); }; });

  auto* sg = with_common(app.add_subcommand("sample-graph", "uniform random graphs as edge lists"));
  sg->add_option("--model", model)->required()->check(CLI::IsMember({"cograph", "Od", "weighted"}));
  sg->add_option("--d", d)->capture_default_str();
  sg->add_option("--q", q)->capture_default_str();
  sg->add_option("--n", n)->capture_default_str();
  sg->add_option("--replicas", reps)->capture_default_str();
  sg->callback([&] { action = [&] { cmd_sample_graph(c, model, d, q, n, reps); }; });

  auto* sp = with_common(app.add_subcommand("sample-perm", "uniform random permutations"));
  sp->add_option("--model", model)->required()->check(CLI::IsMember({"separable", "Pd", "weighted"}));
  sp->add_option("--d", d)->capture_default_str();
  sp->add_option("--q", q)->capture_default_str();
  sp->add_option("--n", n)->capture_default_str();
  sp->add_option("--replicas", reps)->capture_default_str();
  sp->callback([&] { action = [&] { cmd_sample_perm(c, model, d, q, n, reps); }; });

  auto* mg = with_common(app.add_subcommand("marginal", "k-point marginal law of W^(d) or mu^(d)"));
  mg->add_option("kind", kind)->check(CLI::IsMember({"graphon", "permuton"}))->capture_default_str();
  mg->add_option("mode", mode)->check(CLI::IsMember({"exact", "mc"}))->capture_default_str();
  mg->add_option("--d", d, "1 is the Brownian limit")->capture_default_str();
  mg->add_option("--k", k)->capture_default_str();
  mg->add_option("--replicas", reps)->capture_default_str();
  mg->callback([&] { action = [&] { cmd_marginal(c, kind, mode, d, k, reps); }; });

  auto* cv = with_common(app.add_subcommand("converge", "run one acceptance experiment"));
  cv->add_option("--experiment", experiment, "name or number 1-12")->required();
  cv->add_option("--scale", scale, "replica multiplier; 1 is the acceptance size")->capture_default_str();
  cv->add_flag("--assert", assert_, "exit 3 when the criterion fails");
  cv->callback([&] { action = [&] { code = cmd_converge(c, experiment, scale, assert_); }; });

  auto* rg = with_common(app.add_subcommand("regime", "classify the asymptotic regime of a model"));
  rg->add_option("--model", model)->required()->check(CLI::IsMember(kGibbsModels));
  rg->add_option("--d", d)->capture_default_str();
  rg->add_option("--q", q)->capture_default_str();
  rg->callback([&] { action = [&] { cmd_regime(c, model, d, q); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    if (action) action();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}
