#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"

namespace graphlim {

// Uniform induced subgraph on k of the nodes (without replacement, shuffle
// prefix). Requires unit node weights.
WeightedGraph induce_sample(const WeightedGraph& g, int k, std::uint64_t seed);

// W-random weighted graph H(n, W): X_i i.i.d. uniform, beta_ij = W(X_i, X_j)
// including the diagonal, unit node weights.
WeightedGraph w_random_weighted(const Graphon& w, int n, std::uint64_t seed);

// W-random simple graph G(n, W): edge ij present iff Y_ij < W(X_i, X_j)
// (strict), no loops. W must take values in [0,1].
WeightedGraph w_random_simple(const Graphon& w, int n, std::uint64_t seed);

// Random simple graph G(H): each non-loop edge ij appears independently with
// probability beta_ij(H). Requires unit node weights and beta in [0,1] off
// the diagonal (diagonal ignored).
WeightedGraph randomize(const WeightedGraph& h, std::uint64_t seed);

// G(H1), G(H2) driven by one shared uniform per edge, so the edge disagrees
// between the two with probability |beta_1 - beta_2|. Marginals equal
// randomize(H_m, seed) exactly.
std::pair<WeightedGraph, WeightedGraph> coupled_randomize(const WeightedGraph& h1,
                                                          const WeightedGraph& h2,
                                                          std::uint64_t seed);

// G(n, U1), G(n, U2) sharing the X's and the per-edge Y's. Marginals equal
// w_random_simple(U_m, n, seed) exactly.
std::pair<WeightedGraph, WeightedGraph> coupled_w_random(const Graphon& u1,
                                                         const Graphon& u2, int n,
                                                         std::uint64_t seed);

enum class ConcTheorem { sample_dist, dist_test, norm_sample, t_conc, gh_close };

std::string theorem_name(ConcTheorem t);
ConcTheorem theorem_from_name(const std::string& name);

struct ConcentrationParams {
  int n = 20;        // base graph size
  int k = 16;        // sample size
  double eps = 0.15; // deviation threshold for t_conc
  double p = 0.5;    // constant-graphon parameter
  int f_nodes = 3;   // t_conc pattern: complete graph on this many nodes
};

// Per-trial outcomes are tri-state: pass when the certified deviation bracket
// lies within the bound, fail when it lies entirely outside, inconclusive
// when the bracket straddles the bound (an upper bound above the bound proves
// nothing). The verdict allows the theorem's stated failure probability plus
// binomial 3 sigma slack.
struct ConcentrationReport {
  std::string theorem;
  int trials = 0;
  double bound = 0.0;
  double failure_prob = 0.0;
  double alt_bound = 0.0;  // sharper known constant where one exists
  int pass = 0;
  int inconclusive = 0;
  int fail = 0;
  bool vacuous = false;  // bound at or above the maximum possible deviation
  bool verdict_pass = false;
  std::vector<double> deviations;  // certified worst-case deviation per trial, sorted
  std::vector<double> quantiles;   // min, 25%, median, 75%, max
  std::string note;
};

ConcentrationReport concentration_experiment(ConcTheorem theorem,
                                             const ConcentrationParams& params,
                                             int trials, std::uint64_t seed);

}  // namespace graphlim
