#include "graphlim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace graphlim {

namespace {

constexpr double kSymTol = 1e-12;

bool beta_is_01(const Matrix& beta) {
  for (int i = 0; i < beta.rows(); ++i)
    for (int j = 0; j < beta.cols(); ++j)
      if (beta(i, j) != 0.0 && beta(i, j) != 1.0) return false;
  return true;
}

}  // namespace

WeightedGraph::WeightedGraph(std::vector<double> alpha, Matrix beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  const int n = static_cast<int>(alpha_.size());
  if (n < 1) throw InputError("WeightedGraph: need at least one node");
  if (beta_.rows() != n || beta_.cols() != n)
    throw InputError("WeightedGraph: beta must be n x n");
  for (int i = 0; i < n; ++i) {
    if (!(alpha_[i] > 0.0) || !std::isfinite(alpha_[i]))
      throw InputError("WeightedGraph: node weights must be positive and finite");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(beta_(i, j) - beta_(j, i)) > kSymTol)
        throw InputError("WeightedGraph: beta not symmetric at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      beta_(j, i) = beta_(i, j);
    }
    if (!std::isfinite(beta_(i, i))) throw InputError("WeightedGraph: non-finite edge weight");
  }
  total_ = std::accumulate(alpha_.begin(), alpha_.end(), 0.0);
  if (!std::isfinite(total_) || !(total_ > 0.0))
    throw InputError("WeightedGraph: total weight must be positive and finite");

  simple_ = true;
  for (double a : alpha_)
    if (a != 1.0) simple_ = false;
  if (simple_) {
    for (int i = 0; i < n && simple_; ++i)
      if (beta_(i, i) != 0.0) simple_ = false;
    if (simple_ && !beta_is_01(beta_)) simple_ = false;
  }
}

WeightedGraph WeightedGraph::simple(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) throw InputError("simple: need at least one node");
  Matrix beta(n, n, 0.0);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw InputError("simple: edge endpoint out of range");
    if (u == v) throw InputError("simple: loops not allowed in a simple graph");
    beta(u, v) = 1.0;
    beta(v, u) = 1.0;
  }
  return WeightedGraph(std::vector<double>(n, 1.0), std::move(beta));
}

WeightedGraph WeightedGraph::unit(Matrix beta) {
  const int n = beta.rows();
  return WeightedGraph(std::vector<double>(n, 1.0), std::move(beta));
}

std::vector<double> WeightedGraph::normalized_alphas() const {
  std::vector<double> w(alpha_);
  for (double& x : w) x /= total_;
  return w;
}

NodePartition NodePartition::from_assignment(std::vector<int> assignment) {
  NodePartition p;
  p.assignment = std::move(assignment);
  int q = 0;
  for (int c : p.assignment) q = std::max(q, c + 1);
  p.q = q;
  p.validate(static_cast<int>(p.assignment.size()));
  return p;
}

void NodePartition::validate(int n) const {
  if (static_cast<int>(assignment.size()) != n)
    throw InputError("NodePartition: assignment length mismatch");
  if (q < 1) throw InputError("NodePartition: need at least one class");
  std::vector<char> seen(q, 0);
  for (int c : assignment) {
    if (c < 0 || c >= q) throw InputError("NodePartition: class index out of range");
    seen[c] = 1;
  }
  for (int c = 0; c < q; ++c)
    if (!seen[c]) throw InputError("NodePartition: class " + std::to_string(c) + " is empty");
}

std::vector<std::vector<int>> NodePartition::classes() const {
  std::vector<std::vector<int>> cls(q);
  for (int i = 0; i < static_cast<int>(assignment.size()); ++i)
    cls[assignment[i]].push_back(i);
  return cls;
}

namespace {

void check_index_set(const std::vector<int>& s, int n, const char* name) {
  std::set<int> seen;
  for (int i : s) {
    if (i < 0 || i >= n)
      throw InputError(std::string(name) + ": index out of range");
    if (!seen.insert(i).second)
      throw InputError(std::string(name) + ": duplicate index");
  }
}

}  // namespace

double cut_value(const WeightedGraph& g, const std::vector<int>& S, const std::vector<int>& T) {
  check_index_set(S, g.n(), "cut_value S");
  check_index_set(T, g.n(), "cut_value T");
  double sum = 0.0;
  for (int i : S)
    for (int j : T) sum += g.alpha(i) * g.alpha(j) * g.beta(i, j);
  return sum;
}

GraphNorms graph_norms(const WeightedGraph& g) {
  GraphNorms out;
  const int n = g.n();
  const double tot = g.total_weight();
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double b = g.beta(i, j);
      out.linf = std::max(out.linf, std::abs(b));
      s2 += g.alpha(i) * g.alpha(j) * b * b;
    }
  }
  out.l2 = std::sqrt(s2 / (tot * tot));
  return out;
}

WeightedGraph blow_up(const WeightedGraph& g, int k) {
  if (k < 1) throw InputError("blow_up: k must be >= 1");
  const int n = g.n();
  std::vector<double> alpha(static_cast<std::size_t>(n) * k);
  Matrix beta(n * k, n * k);
  for (int i = 0; i < n; ++i)
    for (int u = 0; u < k; ++u) alpha[static_cast<std::size_t>(i) * k + u] = g.alpha(i);
  for (int i = 0; i < n; ++i)
    for (int u = 0; u < k; ++u)
      for (int j = 0; j < n; ++j)
        for (int v = 0; v < k; ++v) beta(i * k + u, j * k + v) = g.beta(i, j);
  return WeightedGraph(std::move(alpha), std::move(beta));
}

WeightedGraph split_node(const WeightedGraph& g, int node, const std::vector<double>& fractions) {
  const int n = g.n();
  if (node < 0 || node >= n) throw InputError("split_node: index out of range");
  if (fractions.empty()) throw InputError("split_node: need at least one fraction");
  double sum = 0.0;
  for (double f : fractions) {
    if (!(f > 0.0)) throw InputError("split_node: fractions must be positive");
    sum += f;
  }
  if (std::abs(sum - g.alpha(node)) > 1e-12 * std::max(1.0, std::abs(g.alpha(node))))
    throw InputError("split_node: fractions must sum to the node weight");

  const int f = static_cast<int>(fractions.size());
  const int m = n + f - 1;
  // Old node j maps to new index j (j < node) or j + f - 1 (j > node); the
  // split copies occupy node .. node+f-1.
  auto remap = [&](int j) { return j < node ? j : j + f - 1; };
  std::vector<double> alpha(m);
  Matrix beta(m, m);
  for (int j = 0; j < n; ++j)
    if (j != node) alpha[remap(j)] = g.alpha(j);
  for (int u = 0; u < f; ++u) alpha[node + u] = fractions[u];

  auto source = [&](int x) {
    if (x >= node && x < node + f) return node;
    return x < node ? x : x - f + 1;
  };
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) beta(x, y) = g.beta(source(x), source(y));
  return WeightedGraph(std::move(alpha), std::move(beta));
}

WeightedGraph quotient(const WeightedGraph& g, const NodePartition& p, bool unit_weights) {
  p.validate(g.n());
  const auto cls = p.classes();
  const int q = p.q;
  std::vector<double> class_weight(q, 0.0);
  for (int c = 0; c < q; ++c)
    for (int x : cls[c]) class_weight[c] += g.alpha(x);

  Matrix beta(q, q);
  for (int a = 0; a < q; ++a) {
    for (int b = a; b < q; ++b) {
      double e = 0.0;
      for (int x : cls[a])
        for (int y : cls[b]) e += g.alpha(x) * g.alpha(y) * g.beta(x, y);
      const double v = e / (class_weight[a] * class_weight[b]);
      beta(a, b) = v;
      beta(b, a) = v;
    }
  }
  std::vector<double> alpha(q);
  for (int c = 0; c < q; ++c)
    alpha[c] = unit_weights ? 1.0 : class_weight[c] / g.total_weight();
  return WeightedGraph(std::move(alpha), std::move(beta));
}

WeightedGraph averaged(const WeightedGraph& g, const NodePartition& p) {
  const WeightedGraph gq = quotient(g, p);
  const int n = g.n();
  Matrix beta(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) beta(x, y) = gq.beta(p.assignment[x], p.assignment[y]);
  return WeightedGraph(g.alphas(), std::move(beta));
}

double edit_distance(const WeightedGraph& h1, const WeightedGraph& h2) {
  const int n = h1.n();
  if (h2.n() != n) throw InputError("edit_distance: node counts differ");
  for (int i = 0; i < n; ++i)
    if (h1.alpha(i) != 1.0 || h2.alpha(i) != 1.0)
      throw InputError("edit_distance: unit node weights required");
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sum += std::abs(h1.beta(i, j) - h2.beta(i, j));
  return sum / (static_cast<double>(n) * n);
}

WeightedGraph disjoint_union(const WeightedGraph& g, const WeightedGraph& gp) {
  if (!g.is_simple() || !gp.is_simple())
    throw InputError("disjoint_union: both graphs must be simple");
  const int n = g.n(), m = gp.n();
  Matrix beta(n + m, n + m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) beta(i, j) = g.beta(i, j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) beta(n + i, n + j) = gp.beta(i, j);
  return WeightedGraph::unit(std::move(beta));
}

namespace {

// Upper-triangle bit order shared with graph6: (0,1),(0,2),(1,2),(0,3),...
int pair_rank(int i, int j) { return j * (j - 1) / 2 + i; }

std::uint64_t adjacency_bits(const WeightedGraph& g, const std::vector<int>& perm) {
  std::uint64_t bits = 0;
  const int n = g.n();
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (g.beta(perm[i], perm[j]) != 0.0) bits |= 1ULL << pair_rank(i, j);
  return bits;
}

std::string graph6_encode(int n, std::uint64_t bits) {
  std::string out;
  out.push_back(static_cast<char>(63 + n));
  const int nbits = n * (n - 1) / 2;
  const int groups = (nbits + 5) / 6;
  for (int gi = 0; gi < groups; ++gi) {
    int v = 0;
    for (int b = 0; b < 6; ++b) {
      const int idx = gi * 6 + b;
      if (idx < nbits && (bits >> idx & 1)) v |= 1 << (5 - b);
    }
    out.push_back(static_cast<char>(63 + v));
  }
  return out;
}

}  // namespace

std::string canonical_form(const WeightedGraph& f) {
  if (!f.is_simple()) throw InputError("canonical_form: graph must be simple");
  const int n = f.n();
  if (n > 8) throw CapacityError("canonical_form: n > 8");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~0ULL;
  do {
    best = std::min(best, adjacency_bits(f, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return graph6_encode(n, best);
}

WeightedGraph graph_from_canonical(const std::string& key) {
  if (key.empty()) throw InputError("graph_from_canonical: empty key");
  const int n = key[0] - 63;
  if (n < 1 || n > 8) throw InputError("graph_from_canonical: bad node count");
  const int nbits = n * (n - 1) / 2;
  if (static_cast<int>(key.size()) != 1 + (nbits + 5) / 6)
    throw InputError("graph_from_canonical: bad key length");
  std::vector<std::pair<int, int>> edges;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      const int idx = pair_rank(i, j);
      const int v = key[1 + idx / 6] - 63;
      if (v >> (5 - idx % 6) & 1) edges.emplace_back(i, j);
    }
  }
  return WeightedGraph::simple(n, edges);
}

WeightedGraph permuted(const WeightedGraph& g, const std::vector<int>& perm) {
  const int n = g.n();
  check_index_set(perm, n, "permuted");
  if (static_cast<int>(perm.size()) != n) throw InputError("permuted: wrong permutation length");
  std::vector<double> alpha(n);
  Matrix beta(n, n);
  for (int i = 0; i < n; ++i) {
    alpha[i] = g.alpha(perm[i]);
    for (int j = 0; j < n; ++j) beta(i, j) = g.beta(perm[i], perm[j]);
  }
  return WeightedGraph(std::move(alpha), std::move(beta));
}

}  // namespace graphlim
