#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "graphlim/cutdist.hpp"
#include "graphlim/graph.hpp"

namespace graphlim {

// Homomorphism-density fingerprint: t(F, G, hom) for one representative per
// isomorphism class of simple graphs on 1..k nodes.
struct DensityProfile {
  int k = 0;
  std::vector<std::string> keys;  // canonical keys, (node count, key) order
  std::vector<int> nodes;         // node count per entry
  std::vector<double> values;     // t(F, G, hom) per entry
};

DensityProfile density_profile(const WeightedGraph& g, int k);

struct ProfileDistance {
  double dmax = 0.0;         // max |t1 - t2| over classes on exactly k nodes
  double delta_bound = 0.0;  // 22c/sqrt(log2 k)
  bool applicable = false;   // k >= 2 and dmax <= 3^(-k^2)
  bool vacuous = false;      // delta_bound >= 1 proves nothing
};

// The k-node classes include every smaller pattern padded with isolated
// nodes, so dmax over them dominates all lower-order differences. c scales
// the bound for weighted inputs (1 for simple graphs).
ProfileDistance profile_distance(const DensityProfile& p1, const DensityProfile& p2,
                                 double c = 1.0);

// Evidence tables for convergence of a finite sequence; deliberately carries
// no binary verdict.
struct CauchyReport {
  int k = 0;
  std::vector<DensityProfile> profiles;
  Matrix profile_dmax;  // pairwise dmax
  Matrix delta_upper;   // pairwise certified delta_cut upper bounds
  std::vector<double> consecutive_dmax;
  std::vector<double> consecutive_delta;
  bool dmax_nonincreasing = false;
  bool delta_nonincreasing = false;
};

CauchyReport cauchy_diagnostic(const std::vector<WeightedGraph>& sequence, int k,
                               const DeltaOptions& dopts = {});

// Graph parameter evaluated on samples; eval maps a simple graph to a real.
// exact is false when large inputs fall back to a heuristic evaluator.
struct TestableParameter {
  std::string name;
  std::function<double(const WeightedGraph&)> eval;
  bool exact = true;
};

// Densities are normalized by n^2 throughout (e_G(V,V)/n^2 for edges), so
// the max-cut density of K_n tends to 1/4, not 1/2.
TestableParameter edge_density_parameter();
TestableParameter triangle_density_parameter();
TestableParameter maxcut_density_parameter();
TestableParameter parameter_from_name(const std::string& name);

// max_S e_G(S, V\S)/n^2: exact subset enumeration for n <= 20, local-search
// lower bound beyond (seed drives the restarts).
double maxcut_density(const WeightedGraph& g, std::uint64_t seed = 0);

struct ParameterEstimate {
  double estimate = 0.0;  // mean over reps
  double min = 0.0;
  double max = 0.0;
  double stdev = 0.0;
  std::vector<double> samples;
};

// f evaluated on reps independent induced samples of k nodes.
ParameterEstimate estimate_parameter(const TestableParameter& f, const WeightedGraph& g,
                                     int k, int reps, std::uint64_t seed);

struct HatEstimate {
  double estimate = 0.0;
  double se = 0.0;
};

// Monte Carlo mean of f over independent randomizations of H.
HatEstimate hat_f(const TestableParameter& f, const WeightedGraph& h, int reps,
                  std::uint64_t seed);

// Growth process: start from one node; each step appends an isolated node
// after connecting every nonadjacent pair of previously existing nodes with
// probability 1/(current size). Edge {i,j} (0-based, i<j) ends up present
// with probability (n-1-j)/(n-1); the expected edge density is (n-2)/(3n).
WeightedGraph uniform_attachment_graph(int n, std::uint64_t seed);

}  // namespace graphlim
