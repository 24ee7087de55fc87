#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "graphlim/cutnorm.hpp"
#include "graphlim/graph.hpp"

namespace graphlim {

// Fractional overlay of two node sets: entries of X are nonnegative, row i
// sums to the normalized weight of node i in the first graph and column u to
// the normalized weight of node u in the second (tolerance 1e-9).
struct FractionalOverlay {
  Matrix X;

  FractionalOverlay() : X(0, 0) {}
  explicit FractionalOverlay(Matrix x) : X(std::move(x)) {}
  int rows() const { return X.rows(); }
  int cols() const { return X.cols(); }
};

inline constexpr double kOverlayTol = 1e-9;

// Throws InputError unless X is a valid overlay of the two graphs.
void validate_overlay(const FractionalOverlay& x, const WeightedGraph& g,
                      const WeightedGraph& gp);

// The two graphs rebuilt on the common node set of the overlay: one node per
// pair (i, u) with X(i, u) > 0, weight X(i, u), beta copied from the
// respective factor. labels[c] = (i, u) for common node c.
struct OverlayPair {
  WeightedGraph first;
  WeightedGraph second;
  std::vector<std::pair<int, int>> labels;
};

OverlayPair overlay_graphs(const WeightedGraph& g, const WeightedGraph& gp,
                           const FractionalOverlay& x);

// Cut norm of the difference of the two overlaid graphs; the objective that
// delta_cut minimizes over overlays.
CutNormResult overlay_cost(const WeightedGraph& g, const WeightedGraph& gp,
                           const FractionalOverlay& x,
                           CutMethod method = CutMethod::automatic,
                           const CutOptions& opts = {});

enum class DistKind { exact, upper_bound };

struct DistanceResult {
  double value = 0.0;
  DistKind kind = DistKind::upper_bound;
  FractionalOverlay witness;
  std::vector<int> perm;  // set for permutation distances: node i pairs with perm[i]
  CutWitness inner;       // cut pair on the common node set realizing value
};

enum class DeltaHatMethod { exact, anneal, automatic };

struct AnnealOptions {
  std::uint64_t seed = 0;
  int temp_levels = 12;
  double cooling = 0.8;
  double t0 = -1.0;            // < 0: start at a quarter of the initial cost
  long long proposals = -1;    // < 0: 50 n^2 per temperature level
};

// Distance over node relabelings of graphs with equal size and uniform node
// weights. exact enumerates all n! permutations (n <= 8) with an exact inner
// cut norm; anneal runs seeded simulated annealing over swaps and certifies
// the final permutation with a full cut-norm call.
DistanceResult delta_hat(const WeightedGraph& g, const WeightedGraph& gp,
                         DeltaHatMethod method = DeltaHatMethod::automatic,
                         const AnnealOptions& opts = {});

struct DeltaOptions {
  std::uint64_t seed = 0;
  int refine_iters = 24;
  int max_blowup_nodes = 12;  // cap on blown-up size for permutation couplings
  int descent_restarts = 6;
  bool confirm_with_oracle = true;  // grid check for kind = exact (n, n' <= 3)
  int threads = 1;
  std::vector<Matrix> extra_couplings;
};

// Cut distance: minimum overlay cost over a portfolio of couplings (product,
// diagonal plus northwest residual fill, blow-up permutations, subgradient
// refinement against active cut witnesses, caller extras). kind = exact only
// when a dense grid oracle confirms the value within 1e-3.
DistanceResult delta_cut(const WeightedGraph& g, const WeightedGraph& gp,
                         const DeltaOptions& opts = {});

struct OracleResult {
  double upper = 0.0;     // best grid value
  double bracket = 0.0;   // Lipschitz bound on the gap to the true minimum
  FractionalOverlay argmin;
};

// Exhaustive grid search over the free entries of the overlay polytope,
// completing the last row and column from the marginals. Capacity: n, n' <= 3.
OracleResult delta_cut_oracle(const WeightedGraph& g, const WeightedGraph& gp,
                              int grid_steps);

// Overlay composition: X_ac = X_ab diag(1/b) X_bc with b the normalized
// weights of the middle graph. Triangle-inequality style certificates.
FractionalOverlay compose_overlays(const FractionalOverlay& xab,
                                   const std::vector<double>& middle_normalized,
                                   const FractionalOverlay& xbc);

}  // namespace graphlim
