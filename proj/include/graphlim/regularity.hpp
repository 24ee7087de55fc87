#pragma once

#include <cstdint>
#include <vector>

#include "graphlim/graph.hpp"

namespace graphlim {

struct RegularityOptions {
  std::uint64_t seed = 0;
  int threads = 1;
};

// Certificate for a weak regularity partition. achieved is a certified upper
// bound on d_cut(G, G_P) / ||G||_2, recomputable from G and the partition.
// energies holds ||G_P||_2^2 after each refinement (front entry = starting
// partition); witness_values holds the certified witness lower bound that
// drove each refinement, so energies[i+1] - energies[i] >= witness^2 up to
// roundoff. The equitable variant also reports the pre-rebalancing bound and
// the certified d_cut between the two averaged graphs.
struct RegularityCertificate {
  NodePartition partition;
  double achieved = 0.0;
  int iterations = 0;
  bool class_bound_ok = false;  // classes <= 4^(ceil(1/eps^2) - 1)
  std::vector<double> energies;
  std::vector<double> witness_values;
  double inner_achieved = 0.0;
  double rebalance_slack = 0.0;
};

// Energy-increment refinement: start from one class, repeatedly cut the
// residual kernel beta - beta(G_P) and split every class by the witness pair
// (S, T). Stops once the certified cut-norm upper bound drops to eps*||G||_2,
// the refinement stalls, or 4*ceil(1/eps^2) iterations pass.
RegularityCertificate weak_regular_partition(const WeightedGraph& g, double eps,
                                             const RegularityOptions& opts = {});

// Weak partition rebalanced into exactly q classes whose weights stay within
// alpha_max(G) of alpha_G/q. Requires q between the weak partition's class
// count and |V(G)|.
RegularityCertificate equitable_weak_partition(const WeightedGraph& g, double eps, int q,
                                               const RegularityOptions& opts = {});

struct SimpleApproximation {
  WeightedGraph h;           // simple graph on q nodes
  double delta_ub = 0.0;     // certified upper bound on delta_cut(G, H)
  RegularityCertificate cert;
  double partition_cost = 0.0;  // G vs weighted quotient, membership coupling
  double reweight_cost = 0.0;   // weighted quotient vs unit-weight quotient
  double rounding_cost = 0.0;   // unit-weight quotient vs its randomization
};

// Compress G (beta in [0,1]) to a simple graph on q <= 2*10^4 nodes:
// equitable weak partition -> unit-weight quotient -> randomize. delta_ub is
// the sum of three certified legs.
SimpleApproximation simple_approximation(const WeightedGraph& g, int q,
                                         std::uint64_t seed);

enum class PairVerdict { regular, counterexample, unknown };
enum class PairMode { exact, randomized };

struct RegularPairResult {
  PairVerdict verdict = PairVerdict::regular;
  std::vector<int> X, Y;   // witness subsets when verdict == counterexample
  double deviation = 0.0;  // largest density deviation encountered
};

// eps-regular pair test for a simple graph: all X in Vi, Y in Vj with
// |X|, |Y| >= eps*|V(G)|/k (k = ambient class count, passed explicitly) must
// satisfy |e(X,Y)/(|X||Y|) - e(Vi,Vj)/(|Vi||Vj|)| <= eps. Exact mode
// enumerates (|Vi|, |Vj| <= 15); randomized mode samples 10^4 pairs and can
// only answer counterexample or unknown.
RegularPairResult is_regular_pair(const WeightedGraph& g, const std::vector<int>& vi,
                                  const std::vector<int>& vj, double eps, int k,
                                  PairMode mode, std::uint64_t seed = 0);

struct RegularPartitionResult {
  bool regular = false;
  int irregular_pair_count = 0;  // ordered pairs (each unordered pair twice)
  int checked_pairs = 0;         // unordered pairs examined
};

// P must be equitable (class sizes floor(n/k) or ceil(n/k)). Counts pairs
// found irregular; regular iff that count is at most eps*k^2.
RegularPartitionResult is_regular_partition(const WeightedGraph& g, const NodePartition& p,
                                            double eps, PairMode mode,
                                            std::uint64_t seed = 0);

}  // namespace graphlim
