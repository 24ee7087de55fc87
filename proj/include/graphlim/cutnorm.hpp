#pragma once

#include <cstdint>
#include <vector>

#include "graphlim/graph.hpp"

namespace graphlim {

// Symmetric kernel: node weights plus a symmetric value matrix, typically the
// difference of two graphs' beta on shared weights. Cut-type norms normalize
// by the squared total weight.
struct Kernel {
  std::vector<double> alpha;
  Matrix values;

  Kernel(std::vector<double> a, Matrix v);
  int n() const { return static_cast<int>(alpha.size()); }
  double total_weight() const;
  // alpha / total, so the scaled matrix w_i w_j values(i,j) sums cuts directly.
  std::vector<double> normalized_alphas() const;
  double linf() const { return values.max_abs(); }
};

Kernel kernel_of(const WeightedGraph& g);
// Kernel (alpha, beta - beta'); node weights must agree within 1e-12.
Kernel difference_kernel(const WeightedGraph& g, const WeightedGraph& gp);

struct CutWitness {
  std::vector<int> S;
  std::vector<int> T;
  double value = 0.0;  // achieved |normalized cut|
};

struct CutNormResult {
  double lower = 0.0;
  double upper = 0.0;
  CutWitness witness;
  bool exact() const { return upper == lower; }
};

enum class CutMethod { exact, heuristic, automatic };

struct CutOptions {
  std::uint64_t seed = 0;
  int restarts = 32;
  int threads = 1;
};

inline constexpr int kCutExactCap = 26;        // 2^n enumeration limit
inline constexpr int kRestrictedExactCap = 12;

// Cut norm with witness. exact enumerates all S (Gray code) choosing T in
// closed form; heuristic reports a local-search lower bound and the certified
// upper bound min(sum |w_i w_j v_ij|, t(C4,K)^(1/4)). automatic picks exact
// when n <= 26.
CutNormResult cut_norm(const Kernel& k, CutMethod method = CutMethod::automatic,
                       const CutOptions& opts = {});

// max over sign vectors x,y in {-1,+1}^n of the normalized bilinear form.
double inf_to_one_norm(const Kernel& k);

// t(C4, K)^(1/4) via trace((D^1/2 V D^1/2)^4), D = diag(normalized weights).
double trace_c4_norm(const Kernel& k);

enum class RestrictVariant { equal, disjoint, complement };

// Cut norm with the pair (S, T) restricted to S=T, disjoint S,T, or
// T = complement(S). Sets live in the step embedding of the kernel, so a node
// may belong to S or T fractionally; the supremum is computed exactly by
// enumerating facial patterns of the resulting box quadratics. Exponential in
// n (worst case 4^n patterns for the disjoint variant), capped at 12 nodes.
// With fractional membership the comparison factors 1/2 (equal), 1/4
// (disjoint) and 2/3 (complement vs disjoint) hold for every kernel; over
// whole-node subsets alone the disjoint bound can fail on kernels with large
// diagonal entries.
double restricted_cut_norm(const Kernel& k, RestrictVariant variant);

// Cut norm of the difference kernel of two graphs on shared node weights.
CutNormResult d_cut(const WeightedGraph& g, const WeightedGraph& gp,
                    CutMethod method = CutMethod::automatic, const CutOptions& opts = {});

namespace detail {

// Core routines on a pre-scaled matrix m(i,j) = w_i w_j v_ij, so the value of
// a cut pair (S,T) is the plain sum over S x T. Used by the distance searches,
// which evaluate many permuted difference kernels.
Matrix scaled_matrix(const Kernel& k);
double exact_cut_value(const Matrix& m);
CutNormResult exact_cut(const Matrix& m, int threads);
CutWitness local_search_cut(const Matrix& m, std::uint64_t seed, int restarts);

}  // namespace detail

}  // namespace graphlim
