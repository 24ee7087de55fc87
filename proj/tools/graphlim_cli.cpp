#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "graphlim/convergence.hpp"
#include "graphlim/cutdist.hpp"
#include "graphlim/cutnorm.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/hom.hpp"
#include "graphlim/io.hpp"
#include "graphlim/regularity.hpp"
#include "graphlim/sampling.hpp"

namespace {

using nlohmann::json;
using namespace graphlim;

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json witness_json(const CutWitness& w) {
  return json{{"S", w.S}, {"T", w.T}, {"value", w.value}};
}

std::string kind_name(DistKind k) {
  return k == DistKind::exact ? "exact" : "upper_bound";
}

int emit(json out, const RunManifest& manifest) {
  out["manifest"] = manifest_to_json(manifest);
  std::cout << out.dump(2) << "\n";
  return 0;
}

std::string num_flag(double v) { return json(v).dump(); }

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return Seed{seed, {0x71, static_cast<std::uint64_t>(trial)}}.stream();
}

struct HomArgs {
  std::string f, g, mode = "hom";
  int catalog = 0;
};

int run_hom(const HomArgs& a) {
  RunManifest m{"hom", {}, {{"mode", a.mode}}, 0, kToolVersion};
  if (a.catalog > 0) {
    m.flags["catalog"] = std::to_string(a.catalog);
    const SmallGraphCatalog cat = enumerate_small_graphs(a.catalog);
    json entries = json::array();
    for (const CatalogEntry& e : cat.entries) {
      json edges = json::array();
      for (int i = 0; i < e.rep.n(); ++i)
        for (int j = i + 1; j < e.rep.n(); ++j)
          if (e.rep.beta(i, j) != 0.0) edges.push_back(json::array({i, j}));
      entries.push_back(json{{"key", e.key}, {"n", e.rep.n()}, {"edges", std::move(edges)}});
    }
    return emit(json{{"catalog", std::move(entries)}}, m);
  }
  if (a.f.empty() || a.g.empty())
    throw InputError("hom needs --f and --g (or --catalog)");
  m.inputs = {a.f, a.g};
  const WeightedGraph f = load_graph(a.f);
  const WeightedGraph g = load_graph(a.g);
  DensityMode mode;
  if (a.mode == "hom") {
    mode = DensityMode::hom;
  } else if (a.mode == "inj") {
    mode = DensityMode::inj;
  } else if (a.mode == "ind") {
    mode = DensityMode::ind;
  } else {
    throw InputError("mode must be hom, inj, or ind");
  }
  return emit(json{{"t_" + a.mode, t_density(f, g, mode)}}, m);
}

struct CutnormArgs {
  std::string input, method = "auto";
  std::uint64_t seed = 0;
  int restarts = 32, threads = 1;
};

int run_cutnorm(const CutnormArgs& a) {
  RunManifest m{"cutnorm",
                {a.input},
                {{"method", a.method},
                 {"restarts", std::to_string(a.restarts)},
                 {"threads", std::to_string(a.threads)}},
                a.seed,
                kToolVersion};
  const WeightedGraph g = load_graph(a.input);
  CutMethod method;
  if (a.method == "exact") {
    method = CutMethod::exact;
  } else if (a.method == "heuristic") {
    method = CutMethod::heuristic;
  } else if (a.method == "auto") {
    method = CutMethod::automatic;
  } else {
    throw InputError("method must be exact, heuristic, or auto");
  }
  CutOptions opts;
  opts.seed = a.seed;
  opts.restarts = a.restarts;
  opts.threads = a.threads;
  const auto start = std::chrono::steady_clock::now();
  const CutNormResult res = cut_norm(kernel_of(g), method, opts);
  const auto stop = std::chrono::steady_clock::now();
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  return emit(json{{"lower", res.lower},
                   {"upper", res.upper},
                   {"S", res.witness.S},
                   {"T", res.witness.T},
                   {"method", a.method},
                   {"elapsed_ms", ms}},
              m);
}

struct DistArgs {
  std::string g1, g2, mode = "delta";
  bool exact = false;
  int budget_ms = 0, threads = 1;
  std::uint64_t seed = 0;
};

int run_dist(const DistArgs& a) {
  RunManifest m{"dist",
                {a.g1, a.g2},
                {{"mode", a.mode},
                 {"exact", a.exact ? "true" : "false"},
                 {"budget-ms", std::to_string(a.budget_ms)},
                 {"threads", std::to_string(a.threads)}},
                a.seed,
                kToolVersion};
  const WeightedGraph g1 = load_graph(a.g1);
  const WeightedGraph g2 = load_graph(a.g2);
  if (a.mode == "hat") {
    AnnealOptions opts;
    opts.seed = a.seed;
    if (a.budget_ms > 0) opts.proposals = std::max(200, a.budget_ms * 20);
    const DeltaHatMethod method =
        a.exact ? DeltaHatMethod::exact : DeltaHatMethod::automatic;
    const DistanceResult res = delta_hat(g1, g2, method, opts);
    return emit(json{{"value", res.value},
                     {"kind", kind_name(res.kind)},
                     {"witness", json{{"perm", res.perm}, {"inner", witness_json(res.inner)}}}},
                m);
  }
  if (a.mode != "delta") throw InputError("mode must be hat or delta");
  DeltaOptions opts;
  opts.seed = a.seed;
  opts.threads = a.threads;
  if (a.budget_ms > 0) {
    opts.refine_iters = std::min(200, std::max(4, a.budget_ms / 50));
    opts.descent_restarts = std::min(24, std::max(2, a.budget_ms / 250));
  }
  const DistanceResult res = delta_cut(g1, g2, opts);
  return emit(json{{"value", res.value},
                   {"kind", kind_name(res.kind)},
                   {"witness", json{{"overlay", matrix_json(res.witness.X)},
                                    {"inner", witness_json(res.inner)}}}},
              m);
}

struct PartitionArgs {
  std::string input, quotient_out;
  double eps = 0.0;
  int equitable = 0, threads = 1;
  std::uint64_t seed = 0;
};

int run_partition(const PartitionArgs& a) {
  RunManifest m{"partition",
                {a.input},
                {{"eps", num_flag(a.eps)},
                 {"equitable", std::to_string(a.equitable)},
                 {"threads", std::to_string(a.threads)}},
                a.seed,
                kToolVersion};
  if (!a.quotient_out.empty()) m.flags["quotient-out"] = a.quotient_out;
  const WeightedGraph g = load_graph(a.input);
  RegularityOptions opts;
  opts.seed = a.seed;
  opts.threads = a.threads;
  const RegularityCertificate cert =
      a.equitable > 0 ? equitable_weak_partition(g, a.eps, a.equitable, opts)
                      : weak_regular_partition(g, a.eps, opts);
  json out{{"assignment", cert.partition.assignment},
           {"classes", cert.partition.q},
           {"achieved", cert.achieved},
           {"iterations", cert.iterations},
           {"class_bound_ok", cert.class_bound_ok},
           {"energies", cert.energies},
           {"witness_values", cert.witness_values}};
  if (a.equitable > 0) {
    out["inner_achieved"] = cert.inner_achieved;
    out["rebalance_slack"] = cert.rebalance_slack;
  }
  if (!a.quotient_out.empty())
    save_graph(a.quotient_out, quotient(g, cert.partition, false));
  return emit(std::move(out), m);
}

struct SampleArgs {
  std::string input, model;
  int k = 0, trials = 1;
  std::uint64_t seed = 0;
};

int run_sample(const SampleArgs& a) {
  RunManifest m{"sample",
                {a.input},
                {{"model", a.model},
                 {"k", std::to_string(a.k)},
                 {"trials", std::to_string(a.trials)}},
                a.seed,
                kToolVersion};
  if (a.trials < 1) throw InputError("trials must be positive");
  const WeightedGraph g = load_graph(a.input);
  json graphs = json::array();
  for (int t = 0; t < a.trials; ++t) {
    const std::uint64_t s = trial_seed(a.seed, t);
    if (a.model == "induce") {
      graphs.push_back(graph_to_json(induce_sample(g, a.k, s)));
    } else if (a.model == "randomize") {
      graphs.push_back(graph_to_json(randomize(g, s)));
    } else {
      throw InputError("sample model must be induce or randomize");
    }
  }
  return emit(json{{"model", a.model}, {"graphs", std::move(graphs)}}, m);
}

struct GenerateArgs {
  std::string input, model;
  int n = 0, trials = 1;
  std::uint64_t seed = 0;
};

int run_generate(const GenerateArgs& a) {
  RunManifest m{"generate",
                {},
                {{"model", a.model},
                 {"n", std::to_string(a.n)},
                 {"trials", std::to_string(a.trials)}},
                a.seed,
                kToolVersion};
  if (a.trials < 1) throw InputError("trials must be positive");
  json graphs = json::array();
  if (a.model == "uniform-attach") {
    for (int t = 0; t < a.trials; ++t)
      graphs.push_back(graph_to_json(uniform_attachment_graph(a.n, trial_seed(a.seed, t))));
  } else if (a.model == "wrand-weighted" || a.model == "wrand-simple") {
    if (a.input.empty()) throw InputError("model needs a graphon file");
    m.inputs = {a.input};
    const Graphon w = load_graphon(a.input);
    for (int t = 0; t < a.trials; ++t) {
      const std::uint64_t s = trial_seed(a.seed, t);
      graphs.push_back(graph_to_json(a.model == "wrand-weighted"
                                         ? w_random_weighted(w, a.n, s)
                                         : w_random_simple(w, a.n, s)));
    }
  } else {
    throw InputError("generate model must be wrand-weighted, wrand-simple, or uniform-attach");
  }
  return emit(json{{"model", a.model}, {"graphs", std::move(graphs)}}, m);
}

struct VerifyArgs {
  std::string theorem;
  int trials = 200;
  std::uint64_t seed = 0;
  ConcentrationParams params;
};

int run_verify(const VerifyArgs& a) {
  RunManifest m{"verify",
                {},
                {{"theorem", a.theorem},
                 {"trials", std::to_string(a.trials)},
                 {"n", std::to_string(a.params.n)},
                 {"k", std::to_string(a.params.k)},
                 {"eps", num_flag(a.params.eps)},
                 {"p", num_flag(a.params.p)},
                 {"f-nodes", std::to_string(a.params.f_nodes)}},
                a.seed,
                kToolVersion};
  const ConcentrationReport rep =
      concentration_experiment(theorem_from_name(a.theorem), a.params, a.trials, a.seed);
  return emit(json{{"theorem", rep.theorem},
                   {"trials", rep.trials},
                   {"bound", rep.bound},
                   {"failure_prob", rep.failure_prob},
                   {"alt_bound", rep.alt_bound},
                   {"pass", rep.pass},
                   {"inconclusive", rep.inconclusive},
                   {"fail", rep.fail},
                   {"vacuous", rep.vacuous},
                   {"verdict_pass", rep.verdict_pass},
                   {"quantiles", rep.quantiles},
                   {"note", rep.note}},
              m);
}

struct ConvergeArgs {
  std::string manifest;
  int k = 3;
  std::uint64_t seed = 0;
};

int run_converge(const ConvergeArgs& a) {
  RunManifest m{"converge", {a.manifest}, {{"k", std::to_string(a.k)}}, a.seed,
                kToolVersion};
  std::ifstream in(a.manifest);
  if (!in) throw InputError("cannot open " + a.manifest);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("graphs") ||
      !doc["graphs"].is_array())
    throw InputError(a.manifest + ": expected {\"graphs\": [paths...]}");
  const auto base = std::filesystem::path(a.manifest).parent_path();
  std::vector<WeightedGraph> sequence;
  for (const json& p : doc["graphs"]) {
    if (!p.is_string()) throw InputError(a.manifest + ": graphs entries must be paths");
    std::filesystem::path gp(p.get<std::string>());
    if (gp.is_relative()) gp = base / gp;
    sequence.push_back(load_graph(gp.string()));
  }
  DeltaOptions dopts;
  dopts.seed = a.seed;
  const CauchyReport rep = cauchy_diagnostic(sequence, a.k, dopts);
  json profiles = json::array();
  for (const DensityProfile& p : rep.profiles)
    profiles.push_back(json{{"keys", p.keys}, {"nodes", p.nodes}, {"values", p.values}});
  return emit(json{{"k", rep.k},
                   {"profiles", std::move(profiles)},
                   {"profile_dmax", matrix_json(rep.profile_dmax)},
                   {"delta_upper", matrix_json(rep.delta_upper)},
                   {"consecutive_dmax", rep.consecutive_dmax},
                   {"consecutive_delta", rep.consecutive_delta},
                   {"dmax_nonincreasing", rep.dmax_nonincreasing},
                   {"delta_nonincreasing", rep.delta_nonincreasing}},
              m);
}

struct EstimateArgs {
  std::string input, param;
  int k = 0, reps = 50;
  std::uint64_t seed = 0;
};

int run_estimate(const EstimateArgs& a) {
  RunManifest m{"estimate",
                {a.input},
                {{"param", a.param},
                 {"k", std::to_string(a.k)},
                 {"reps", std::to_string(a.reps)}},
                a.seed,
                kToolVersion};
  const WeightedGraph g = load_graph(a.input);
  const TestableParameter f = parameter_from_name(a.param);
  const ParameterEstimate est = estimate_parameter(f, g, a.k, a.reps, a.seed);
  return emit(json{{"param", a.param},
                   {"estimate", est.estimate},
                   {"min", est.min},
                   {"max", est.max},
                   {"stdev", est.stdev},
                   {"samples", est.samples}},
              m);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dense graph limit numerics: densities, cut metrics, regularity, sampling"};
  app.require_subcommand(1);

  HomArgs hom_args;
  CLI::App* hom = app.add_subcommand("hom", "Homomorphism density t(F,G)");
  hom->add_option("--f", hom_args.f, "pattern graph file");
  hom->add_option("--g", hom_args.g, "host graph file");
  hom->add_option("--mode", hom_args.mode, "hom, inj, or ind");
  hom->add_option("--catalog", hom_args.catalog, "emit the small-graph catalog up to k nodes");

  CutnormArgs cut_args;
  CLI::App* cutnorm = app.add_subcommand("cutnorm", "Cut norm of a graph kernel");
  cutnorm->add_option("input", cut_args.input, "graph file")->required();
  cutnorm->add_option("--method", cut_args.method, "exact, heuristic, or auto");
  cutnorm->add_option("--seed", cut_args.seed, "random seed");
  cutnorm->add_option("--restarts", cut_args.restarts, "heuristic restarts");
  cutnorm->add_option("--threads", cut_args.threads, "worker threads");

  DistArgs dist_args;
  CLI::App* dist = app.add_subcommand("dist", "Cut distance between two graphs");
  dist->add_option("g1", dist_args.g1, "first graph file")->required();
  dist->add_option("g2", dist_args.g2, "second graph file")->required();
  dist->add_option("--mode", dist_args.mode, "hat (same size) or delta (fractional)");
  dist->add_flag("--exact", dist_args.exact, "force the exact method");
  dist->add_option("--budget-ms", dist_args.budget_ms,
                   "search effort knob (deterministic, not a timer)");
  dist->add_option("--seed", dist_args.seed, "random seed");
  dist->add_option("--threads", dist_args.threads, "worker threads");

  PartitionArgs part_args;
  CLI::App* partition = app.add_subcommand("partition", "Weak regularity partition");
  partition->add_option("input", part_args.input, "graph file")->required();
  partition->add_option("--eps", part_args.eps, "target eps in (0,1]")->required();
  partition->add_option("--equitable", part_args.equitable, "rebalance into q classes");
  partition->add_option("--seed", part_args.seed, "random seed");
  partition->add_option("--threads", part_args.threads, "worker threads");
  partition->add_option("--quotient-out", part_args.quotient_out,
                        "write the quotient graph to this file");

  SampleArgs sample_args;
  CLI::App* sample = app.add_subcommand("sample", "Sample from a graph");
  sample->add_option("input", sample_args.input, "graph file")->required();
  sample->add_option("--model", sample_args.model, "induce or randomize")->required();
  sample->add_option("--k", sample_args.k, "induced sample size");
  sample->add_option("--seed", sample_args.seed, "random seed");
  sample->add_option("--trials", sample_args.trials, "number of samples");

  GenerateArgs gen_args;
  CLI::App* generate = app.add_subcommand("generate", "Generate graphs from a graphon or growth process");
  generate->add_option("input", gen_args.input, "graphon file (wrand models)");
  generate->add_option("--model", gen_args.model,
                       "wrand-weighted, wrand-simple, or uniform-attach")
      ->required();
  generate->add_option("--n", gen_args.n, "number of nodes")->required();
  generate->add_option("--seed", gen_args.seed, "random seed");
  generate->add_option("--trials", gen_args.trials, "number of samples");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "Concentration experiment for a sampling theorem");
  verify->add_option("--theorem", verify_args.theorem,
                     "sample_dist, dist_test, norm_sample, t_conc, or gh_close")
      ->required();
  verify->add_option("--trials", verify_args.trials, "number of trials");
  verify->add_option("--seed", verify_args.seed, "random seed");
  verify->add_option("--n", verify_args.params.n, "base graph size");
  verify->add_option("--k", verify_args.params.k, "sample size");
  verify->add_option("--eps", verify_args.params.eps, "deviation threshold (t_conc)");
  verify->add_option("--p", verify_args.params.p, "constant graphon parameter");
  verify->add_option("--f-nodes", verify_args.params.f_nodes, "t_conc pattern size");

  ConvergeArgs conv_args;
  CLI::App* converge = app.add_subcommand("converge", "Convergence evidence for a graph sequence");
  converge->add_option("manifest", conv_args.manifest, "JSON file {\"graphs\": [paths...]}")
      ->required();
  converge->add_option("--k", conv_args.k, "profile order (<= 5)");
  converge->add_option("--seed", conv_args.seed, "random seed");

  EstimateArgs est_args;
  CLI::App* estimate = app.add_subcommand("estimate", "Parameter estimate from induced samples");
  estimate->add_option("input", est_args.input, "graph file")->required();
  estimate->add_option("--param", est_args.param,
                       "edge_density, triangle_density, or maxcut_density")
      ->required();
  estimate->add_option("--k", est_args.k, "sample size")->required();
  estimate->add_option("--reps", est_args.reps, "number of samples");
  estimate->add_option("--seed", est_args.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << std::flush;
    return 64;
  }

  try {
    if (app.got_subcommand(hom)) return run_hom(hom_args);
    if (app.got_subcommand(cutnorm)) return run_cutnorm(cut_args);
    if (app.got_subcommand(dist)) return run_dist(dist_args);
    if (app.got_subcommand(partition)) return run_partition(part_args);
    if (app.got_subcommand(sample)) return run_sample(sample_args);
    if (app.got_subcommand(generate)) return run_generate(gen_args);
    if (app.got_subcommand(verify)) return run_verify(verify_args);
    if (app.got_subcommand(converge)) return run_converge(conv_args);
    if (app.got_subcommand(estimate)) return run_estimate(est_args);
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
