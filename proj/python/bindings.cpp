#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "graphlim/convergence.hpp"
#include "graphlim/cutdist.hpp"
#include "graphlim/cutnorm.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/hom.hpp"
#include "graphlim/io.hpp"
#include "graphlim/regularity.hpp"
#include "graphlim/sampling.hpp"

namespace py = pybind11;
using namespace graphlim;

namespace {

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r > 0 ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw InputError("matrix rows differ in length");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> from_matrix(const Matrix& m) {
  std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

DensityMode density_mode(const std::string& mode) {
  if (mode == "hom") return DensityMode::hom;
  if (mode == "inj") return DensityMode::inj;
  if (mode == "ind") return DensityMode::ind;
  throw InputError("mode must be hom, inj, or ind");
}

CutMethod cut_method(const std::string& method) {
  if (method == "exact") return CutMethod::exact;
  if (method == "heuristic") return CutMethod::heuristic;
  if (method == "auto") return CutMethod::automatic;
  throw InputError("method must be exact, heuristic, or auto");
}

py::dict witness_dict(const CutWitness& w) {
  py::dict d;
  d["S"] = w.S;
  d["T"] = w.T;
  d["value"] = w.value;
  return d;
}

py::dict cut_result_dict(const CutNormResult& r) {
  py::dict d;
  d["lower"] = r.lower;
  d["upper"] = r.upper;
  d["witness"] = witness_dict(r.witness);
  return d;
}

py::dict certificate_dict(const RegularityCertificate& c, bool equitable) {
  py::dict d;
  d["assignment"] = c.partition.assignment;
  d["classes"] = c.partition.q;
  d["achieved"] = c.achieved;
  d["iterations"] = c.iterations;
  d["class_bound_ok"] = c.class_bound_ok;
  d["energies"] = c.energies;
  d["witness_values"] = c.witness_values;
  if (equitable) {
    d["inner_achieved"] = c.inner_achieved;
    d["rebalance_slack"] = c.rebalance_slack;
  }
  return d;
}

NodePartition partition_of(std::vector<int> assignment) {
  return NodePartition::from_assignment(std::move(assignment));
}

// std::variant parameters bind poorly (the caster wants a default-constructible
// first alternative), so graphon arguments cross the boundary as py::object.
Graphon graphon_from_py(const py::object& o) {
  if (py::isinstance<StepGraphon>(o)) return o.cast<StepGraphon>();
  if (py::isinstance<AnalyticGraphon>(o)) return o.cast<AnalyticGraphon>();
  throw InputError("expected a StepGraphon or AnalyticGraphon");
}

py::object graphon_to_py(const Graphon& w) {
  if (const StepGraphon* s = std::get_if<StepGraphon>(&w)) return py::cast(*s);
  return py::cast(std::get<AnalyticGraphon>(w));
}

}  // namespace

PYBIND11_MODULE(_graphlim, m) {
  m.doc() = "Dense graph limit numerics: densities, cut metrics, regularity, sampling";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

  py::class_<WeightedGraph>(m, "WeightedGraph")
      .def(py::init([](const std::vector<double>& alpha,
                       const std::vector<std::vector<double>>& beta) {
             return WeightedGraph(alpha, to_matrix(beta));
           }),
           py::arg("alpha"), py::arg("beta"))
      .def_static(
          "simple",
          [](int n, const std::vector<std::pair<int, int>>& edges) {
            return WeightedGraph::simple(n, edges);
          },
          py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &WeightedGraph::n)
      .def("alpha", [](const WeightedGraph& g, int i) { return g.alpha(i); }, py::arg("i"))
      .def_property_readonly("alphas", &WeightedGraph::alphas)
      .def("beta", [](const WeightedGraph& g, int i, int j) { return g.beta(i, j); },
           py::arg("i"), py::arg("j"))
      .def_property_readonly("betas", [](const WeightedGraph& g) { return from_matrix(g.betas()); })
      .def_property_readonly("total_weight", &WeightedGraph::total_weight)
      .def_property_readonly("is_simple", &WeightedGraph::is_simple)
      .def_property_readonly("normalized_alphas", &WeightedGraph::normalized_alphas)
      .def("__eq__", [](const WeightedGraph& a, const WeightedGraph& b) { return a == b; })
      .def("__repr__", [](const WeightedGraph& g) {
        return "WeightedGraph(n=" + std::to_string(g.n()) + ")";
      });

  py::class_<StepGraphon>(m, "StepGraphon")
      .def(py::init([](const std::vector<double>& measures,
                       const std::vector<std::vector<double>>& values) {
             return StepGraphon(measures, to_matrix(values));
           }),
           py::arg("measures"), py::arg("values"))
      .def_property_readonly("q", &StepGraphon::q)
      .def_property_readonly("measures", &StepGraphon::measures)
      .def_property_readonly("values", [](const StepGraphon& w) { return from_matrix(w.values()); })
      .def("value_at", &StepGraphon::value_at, py::arg("x"), py::arg("y"))
      .def("graph", &StepGraphon::graph)
      .def("__repr__",
           [](const StepGraphon& w) { return "StepGraphon(q=" + std::to_string(w.q()) + ")"; });

  py::class_<AnalyticGraphon>(m, "AnalyticGraphon")
      .def("__call__", &AnalyticGraphon::operator(), py::arg("x"), py::arg("y"));
  m.def("constant_graphon", &AnalyticGraphon::constant, py::arg("p"));
  m.def("min_graphon", &AnalyticGraphon::min_xy);
  m.def("halfgraph_graphon", &AnalyticGraphon::halfgraph);
  m.def(
      "graphon_value",
      [](const py::object& w, double x, double y) {
        return graphon_value(graphon_from_py(w), x, y);
      },
      py::arg("w"), py::arg("x"), py::arg("y"));
  m.def("step_from_graph", &step_from_graph, py::arg("g"));
  m.def("discretize", &discretize, py::arg("w"), py::arg("n"));

  m.def(
      "cut_value",
      [](const WeightedGraph& g, const std::vector<int>& S, const std::vector<int>& T) {
        return cut_value(g, S, T);
      },
      py::arg("g"), py::arg("S"), py::arg("T"));
  m.def("graph_norms", [](const WeightedGraph& g) {
    const GraphNorms n = graph_norms(g);
    py::dict d;
    d["linf"] = n.linf;
    d["l2"] = n.l2;
    return d;
  });
  m.def("blow_up", &blow_up, py::arg("g"), py::arg("k"));
  m.def("split_node", &split_node, py::arg("g"), py::arg("i"), py::arg("fractions"));
  m.def(
      "quotient",
      [](const WeightedGraph& g, const std::vector<int>& assignment, bool unit_weights) {
        return quotient(g, partition_of(assignment), unit_weights);
      },
      py::arg("g"), py::arg("assignment"), py::arg("unit_weights") = false);
  m.def(
      "averaged",
      [](const WeightedGraph& g, const std::vector<int>& assignment) {
        return averaged(g, partition_of(assignment));
      },
      py::arg("g"), py::arg("assignment"));
  m.def("edit_distance", &edit_distance, py::arg("h1"), py::arg("h2"));
  m.def("disjoint_union", &disjoint_union, py::arg("g"), py::arg("gp"));
  m.def("canonical_form", &canonical_form, py::arg("f"));
  m.def("graph_from_canonical", &graph_from_canonical, py::arg("key"));
  m.def("permuted", &permuted, py::arg("g"), py::arg("perm"));

  m.def(
      "t_density",
      [](const WeightedGraph& f, const WeightedGraph& g, const std::string& mode) {
        return t_density(f, g, density_mode(mode));
      },
      py::arg("f"), py::arg("g"), py::arg("mode") = "hom");
  m.def("hom_count", &hom_count, py::arg("f"), py::arg("g"));
  m.def(
      "small_graph_catalog",
      [](int k) {
        const SmallGraphCatalog cat = enumerate_small_graphs(k);
        py::list out;
        for (const CatalogEntry& e : cat.entries) {
          py::dict d;
          d["key"] = e.key;
          d["graph"] = e.rep;
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("k"));

  m.def(
      "cut_norm",
      [](const WeightedGraph& g, const std::string& method, std::uint64_t seed, int restarts,
         int threads) {
        CutOptions opts;
        opts.seed = seed;
        opts.restarts = restarts;
        opts.threads = threads;
        return cut_result_dict(cut_norm(kernel_of(g), cut_method(method), opts));
      },
      py::arg("g"), py::arg("method") = "auto", py::arg("seed") = 0, py::arg("restarts") = 32,
      py::arg("threads") = 1);
  m.def(
      "d_cut",
      [](const WeightedGraph& g, const WeightedGraph& gp, const std::string& method,
         std::uint64_t seed) {
        CutOptions opts;
        opts.seed = seed;
        return cut_result_dict(d_cut(g, gp, cut_method(method), opts));
      },
      py::arg("g"), py::arg("gp"), py::arg("method") = "auto", py::arg("seed") = 0);
  m.def(
      "inf_to_one_norm",
      [](const WeightedGraph& g) { return inf_to_one_norm(kernel_of(g)); }, py::arg("g"));
  m.def(
      "trace_c4_norm", [](const WeightedGraph& g) { return trace_c4_norm(kernel_of(g)); },
      py::arg("g"));
  m.def(
      "restricted_cut_norm",
      [](const WeightedGraph& g, const std::string& variant) {
        RestrictVariant v;
        if (variant == "equal") {
          v = RestrictVariant::equal;
        } else if (variant == "disjoint") {
          v = RestrictVariant::disjoint;
        } else if (variant == "complement") {
          v = RestrictVariant::complement;
        } else {
          throw InputError("variant must be equal, disjoint, or complement");
        }
        return restricted_cut_norm(kernel_of(g), v);
      },
      py::arg("g"), py::arg("variant"));

  m.def(
      "delta_hat",
      [](const WeightedGraph& g, const WeightedGraph& gp, const std::string& method,
         std::uint64_t seed, long long proposals) {
        DeltaHatMethod hm;
        if (method == "exact") {
          hm = DeltaHatMethod::exact;
        } else if (method == "anneal") {
          hm = DeltaHatMethod::anneal;
        } else if (method == "auto") {
          hm = DeltaHatMethod::automatic;
        } else {
          throw InputError("method must be exact, anneal, or auto");
        }
        AnnealOptions opts;
        opts.seed = seed;
        opts.proposals = proposals;
        const DistanceResult r = delta_hat(g, gp, hm, opts);
        py::dict d;
        d["value"] = r.value;
        d["kind"] = r.kind == DistKind::exact ? "exact" : "upper_bound";
        d["perm"] = r.perm;
        d["inner"] = witness_dict(r.inner);
        return d;
      },
      py::arg("g"), py::arg("gp"), py::arg("method") = "auto", py::arg("seed") = 0,
      py::arg("proposals") = -1);
  m.def(
      "delta_cut",
      [](const WeightedGraph& g, const WeightedGraph& gp, std::uint64_t seed, int refine_iters,
         int max_blowup_nodes, int descent_restarts, bool confirm_with_oracle, int threads) {
        DeltaOptions opts;
        opts.seed = seed;
        opts.refine_iters = refine_iters;
        opts.max_blowup_nodes = max_blowup_nodes;
        opts.descent_restarts = descent_restarts;
        opts.confirm_with_oracle = confirm_with_oracle;
        opts.threads = threads;
        const DistanceResult r = delta_cut(g, gp, opts);
        py::dict d;
        d["value"] = r.value;
        d["kind"] = r.kind == DistKind::exact ? "exact" : "upper_bound";
        d["overlay"] = from_matrix(r.witness.X);
        d["inner"] = witness_dict(r.inner);
        return d;
      },
      py::arg("g"), py::arg("gp"), py::arg("seed") = 0, py::arg("refine_iters") = 24,
      py::arg("max_blowup_nodes") = 12, py::arg("descent_restarts") = 6,
      py::arg("confirm_with_oracle") = true, py::arg("threads") = 1);
  m.def(
      "overlay_cost",
      [](const WeightedGraph& g, const WeightedGraph& gp,
         const std::vector<std::vector<double>>& x) {
        return cut_result_dict(overlay_cost(g, gp, FractionalOverlay(to_matrix(x))));
      },
      py::arg("g"), py::arg("gp"), py::arg("overlay"));

  m.def(
      "weak_regular_partition",
      [](const WeightedGraph& g, double eps, std::uint64_t seed, int threads) {
        RegularityOptions opts;
        opts.seed = seed;
        opts.threads = threads;
        return certificate_dict(weak_regular_partition(g, eps, opts), false);
      },
      py::arg("g"), py::arg("eps"), py::arg("seed") = 0, py::arg("threads") = 1);
  m.def(
      "equitable_weak_partition",
      [](const WeightedGraph& g, double eps, int q, std::uint64_t seed, int threads) {
        RegularityOptions opts;
        opts.seed = seed;
        opts.threads = threads;
        return certificate_dict(equitable_weak_partition(g, eps, q, opts), true);
      },
      py::arg("g"), py::arg("eps"), py::arg("q"), py::arg("seed") = 0, py::arg("threads") = 1);
  m.def(
      "simple_approximation",
      [](const WeightedGraph& g, int q, std::uint64_t seed) {
        const SimpleApproximation a = simple_approximation(g, q, seed);
        py::dict d;
        d["h"] = a.h;
        d["delta_ub"] = a.delta_ub;
        d["partition_cost"] = a.partition_cost;
        d["reweight_cost"] = a.reweight_cost;
        d["rounding_cost"] = a.rounding_cost;
        d["certificate"] = certificate_dict(a.cert, true);
        return d;
      },
      py::arg("g"), py::arg("q"), py::arg("seed") = 0);
  m.def(
      "is_regular_pair",
      [](const WeightedGraph& g, const std::vector<int>& vi, const std::vector<int>& vj,
         double eps, int k, const std::string& mode, std::uint64_t seed) {
        const PairMode pm = mode == "randomized" ? PairMode::randomized : PairMode::exact;
        const RegularPairResult r = is_regular_pair(g, vi, vj, eps, k, pm, seed);
        py::dict d;
        d["verdict"] = r.verdict == PairVerdict::regular
                           ? "regular"
                           : (r.verdict == PairVerdict::counterexample ? "counterexample"
                                                                       : "unknown");
        d["X"] = r.X;
        d["Y"] = r.Y;
        d["deviation"] = r.deviation;
        return d;
      },
      py::arg("g"), py::arg("vi"), py::arg("vj"), py::arg("eps"), py::arg("k"),
      py::arg("mode") = "exact", py::arg("seed") = 0);
  m.def(
      "is_regular_partition",
      [](const WeightedGraph& g, const std::vector<int>& assignment, double eps,
         const std::string& mode, std::uint64_t seed) {
        const PairMode pm = mode == "randomized" ? PairMode::randomized : PairMode::exact;
        const RegularPartitionResult r =
            is_regular_partition(g, partition_of(assignment), eps, pm, seed);
        py::dict d;
        d["regular"] = r.regular;
        d["irregular_pair_count"] = r.irregular_pair_count;
        d["checked_pairs"] = r.checked_pairs;
        return d;
      },
      py::arg("g"), py::arg("assignment"), py::arg("eps"), py::arg("mode") = "exact",
      py::arg("seed") = 0);

  m.def("induce_sample", &induce_sample, py::arg("g"), py::arg("k"), py::arg("seed"));
  m.def(
      "w_random_weighted",
      [](const py::object& w, int n, std::uint64_t seed) {
        return w_random_weighted(graphon_from_py(w), n, seed);
      },
      py::arg("w"), py::arg("n"), py::arg("seed"));
  m.def(
      "w_random_simple",
      [](const py::object& w, int n, std::uint64_t seed) {
        return w_random_simple(graphon_from_py(w), n, seed);
      },
      py::arg("w"), py::arg("n"), py::arg("seed"));
  m.def("randomize", &randomize, py::arg("h"), py::arg("seed"));
  m.def("coupled_randomize", &coupled_randomize, py::arg("h1"), py::arg("h2"), py::arg("seed"));
  m.def(
      "coupled_w_random",
      [](const py::object& u1, const py::object& u2, int n, std::uint64_t seed) {
        return coupled_w_random(graphon_from_py(u1), graphon_from_py(u2), n, seed);
      },
      py::arg("u1"), py::arg("u2"), py::arg("n"), py::arg("seed"));
  m.def("uniform_attachment_graph", &uniform_attachment_graph, py::arg("n"), py::arg("seed"));

  m.def(
      "t_graphon",
      [](const WeightedGraph& f, const StepGraphon& w) {
        const McEstimate e = t_graphon(f, w);
        py::dict d;
        d["value"] = e.value;
        d["se"] = e.se;
        return d;
      },
      py::arg("f"), py::arg("w"));
  m.def(
      "t_graphon_mc",
      [](const WeightedGraph& f, const AnalyticGraphon& w, long long samples, std::uint64_t seed) {
        const McEstimate e = t_graphon(f, w, samples, seed);
        py::dict d;
        d["value"] = e.value;
        d["se"] = e.se;
        return d;
      },
      py::arg("f"), py::arg("w"), py::arg("samples") = 100000, py::arg("seed") = 0);
  m.def(
      "graphon_norms",
      [](const StepGraphon& w) {
        const GraphonNorms n = graphon_norms(w);
        py::dict d;
        d["l1"] = n.l1;
        d["l2"] = n.l2;
        d["cut_lower"] = n.cut_lower;
        d["cut_upper"] = n.cut_upper;
        return d;
      },
      py::arg("w"));

  m.def(
      "concentration_experiment",
      [](const std::string& theorem, int trials, std::uint64_t seed, int n, int k, double eps,
         double p, int f_nodes) {
        ConcentrationParams params;
        params.n = n;
        params.k = k;
        params.eps = eps;
        params.p = p;
        params.f_nodes = f_nodes;
        const ConcentrationReport r =
            concentration_experiment(theorem_from_name(theorem), params, trials, seed);
        py::dict d;
        d["theorem"] = r.theorem;
        d["trials"] = r.trials;
        d["bound"] = r.bound;
        d["failure_prob"] = r.failure_prob;
        d["alt_bound"] = r.alt_bound;
        d["pass"] = r.pass;
        d["inconclusive"] = r.inconclusive;
        d["fail"] = r.fail;
        d["vacuous"] = r.vacuous;
        d["verdict_pass"] = r.verdict_pass;
        d["deviations"] = r.deviations;
        d["quantiles"] = r.quantiles;
        d["note"] = r.note;
        return d;
      },
      py::arg("theorem"), py::arg("trials") = 200, py::arg("seed") = 0, py::arg("n") = 20,
      py::arg("k") = 16, py::arg("eps") = 0.15, py::arg("p") = 0.5, py::arg("f_nodes") = 3);

  m.def(
      "density_profile",
      [](const WeightedGraph& g, int k) {
        const DensityProfile p = density_profile(g, k);
        py::dict d;
        d["k"] = p.k;
        d["keys"] = p.keys;
        d["nodes"] = p.nodes;
        d["values"] = p.values;
        return d;
      },
      py::arg("g"), py::arg("k"));
  m.def(
      "profile_distance",
      [](const WeightedGraph& g1, const WeightedGraph& g2, int k, double c) {
        const ProfileDistance r = profile_distance(density_profile(g1, k), density_profile(g2, k), c);
        py::dict d;
        d["dmax"] = r.dmax;
        d["delta_bound"] = r.delta_bound;
        d["applicable"] = r.applicable;
        d["vacuous"] = r.vacuous;
        return d;
      },
      py::arg("g1"), py::arg("g2"), py::arg("k"), py::arg("c") = 1.0);
  m.def(
      "estimate_parameter",
      [](const std::string& param, const WeightedGraph& g, int k, int reps, std::uint64_t seed) {
        const ParameterEstimate e = estimate_parameter(parameter_from_name(param), g, k, reps, seed);
        py::dict d;
        d["estimate"] = e.estimate;
        d["min"] = e.min;
        d["max"] = e.max;
        d["stdev"] = e.stdev;
        d["samples"] = e.samples;
        return d;
      },
      py::arg("param"), py::arg("g"), py::arg("k"), py::arg("reps") = 50, py::arg("seed") = 0);
  m.def(
      "evaluate_parameter",
      [](const std::string& param, const WeightedGraph& g) {
        return parameter_from_name(param).eval(g);
      },
      py::arg("param"), py::arg("g"));
  m.def(
      "hat_f",
      [](const std::string& param, const WeightedGraph& h, int reps, std::uint64_t seed) {
        const HatEstimate e = hat_f(parameter_from_name(param), h, reps, seed);
        py::dict d;
        d["estimate"] = e.estimate;
        d["se"] = e.se;
        return d;
      },
      py::arg("param"), py::arg("h"), py::arg("reps") = 50, py::arg("seed") = 0);
  m.def("maxcut_density", &maxcut_density, py::arg("g"), py::arg("seed") = 0);

  m.def("load_graph", &load_graph, py::arg("path"));
  m.def("save_graph", &save_graph, py::arg("path"), py::arg("g"));
  m.def(
      "load_graphon",
      [](const std::string& path) { return graphon_to_py(load_graphon(path)); },
      py::arg("path"));
  m.def(
      "save_graphon",
      [](const std::string& path, const py::object& w) { save_graphon(path, graphon_from_py(w)); },
      py::arg("path"), py::arg("w"));

  m.attr("TOOL_VERSION") = kToolVersion;
  m.attr("CUT_EXACT_CAP") = kCutExactCap;
  m.attr("RESTRICTED_EXACT_CAP") = kRestrictedExactCap;
}
