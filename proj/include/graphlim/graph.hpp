#pragma once

#include <string>
#include <utility>
#include <vector>

#include "graphlim/common.hpp"

namespace graphlim {

// Weighted graph: positive node weights alpha, symmetric edge-weight matrix
// beta whose diagonal holds loop weights. Node order is preserved by every
// constructor and operation.
class WeightedGraph {
 public:
  WeightedGraph(std::vector<double> alpha, Matrix beta);

  // Simple graph with unit node weights from an edge list (0-based, no loops).
  static WeightedGraph simple(int n, const std::vector<std::pair<int, int>>& edges);
  // Unit-weight graph with the given beta matrix (need not be 0/1).
  static WeightedGraph unit(Matrix beta);

  int n() const { return static_cast<int>(alpha_.size()); }
  double alpha(int i) const { return alpha_[i]; }
  const std::vector<double>& alphas() const { return alpha_; }
  double beta(int i, int j) const { return beta_(i, j); }
  const Matrix& betas() const { return beta_; }
  double total_weight() const { return total_; }
  bool is_simple() const { return simple_; }
  // Node weights divided by total weight (sums to 1).
  std::vector<double> normalized_alphas() const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.alpha_ == b.alpha_ && a.beta_ == b.beta_;
  }

 private:
  std::vector<double> alpha_;
  Matrix beta_;
  double total_ = 0.0;
  bool simple_ = false;
};

// Partition of [0,n) into q nonempty classes.
struct NodePartition {
  std::vector<int> assignment;
  int q = 0;

  static NodePartition from_assignment(std::vector<int> assignment);
  void validate(int n) const;
  std::vector<std::vector<int>> classes() const;
};

// e_G(S,T) = sum over i in S, j in T of alpha_i alpha_j beta_ij.
// S and T are index sets (duplicates rejected); they may overlap each other.
double cut_value(const WeightedGraph& g, const std::vector<int>& S, const std::vector<int>& T);

struct GraphNorms {
  double linf = 0.0;
  double l2 = 0.0;
};
GraphNorms graph_norms(const WeightedGraph& g);

// k-fold blow-up: node (i,u) -> index i*k+u, weight alpha_i, beta copied.
WeightedGraph blow_up(const WeightedGraph& g, int k);

// Replace node i by one node per fraction (weights = fractions, edges copied);
// the new nodes occupy positions i .. i+len-1.
WeightedGraph split_node(const WeightedGraph& g, int i, const std::vector<double>& fractions);

// Quotient graph G/P: class weights alpha(V_i)/alpha_G (or 1 with
// unit_weights), edge weights e_G(V_i,V_j)/(alpha(V_i) alpha(V_j)).
WeightedGraph quotient(const WeightedGraph& g, const NodePartition& p, bool unit_weights = false);

// G_P: same nodes and weights as G, beta replaced by its class-block averages.
WeightedGraph averaged(const WeightedGraph& g, const NodePartition& p);

// d_1: normalized L1 difference of beta matrices (unit node weights required).
double edit_distance(const WeightedGraph& h1, const WeightedGraph& h2);

WeightedGraph disjoint_union(const WeightedGraph& g, const WeightedGraph& gp);

// Isomorphism-class key for simple graphs with n <= 8: the adjacency bitstring
// is minimized over all n! node orders and encoded in graph6 format, so equal
// strings correspond exactly to isomorphic graphs.
std::string canonical_form(const WeightedGraph& f);

// Rebuild the canonical representative graph from a canonical_form key.
WeightedGraph graph_from_canonical(const std::string& key);

// Apply a node relabeling: node i of the result is node perm[i] of g.
WeightedGraph permuted(const WeightedGraph& g, const std::vector<int>& perm);

}  // namespace graphlim
