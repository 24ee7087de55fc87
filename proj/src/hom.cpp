#include "graphlim/hom.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace graphlim {

namespace {

constexpr double kHomCapacity = 1e9;

// Nodes of F ordered so each new node sees as many already-placed neighbours
// as possible (greedy), which lets zero products prune early.
struct FPlan {
  int k = 0;
  std::vector<int> order;
  // back_edges[s]: nodes among order[0..s-1] adjacent to order[s], as
  // positions in the order.
  std::vector<std::vector<int>> back_edges;
  std::vector<std::vector<int>> non_edges;  // same, for non-adjacent pairs
};

FPlan plan_for(const WeightedGraph& f) {
  if (!f.is_simple()) throw InputError("hom: F must be a simple graph");
  const int k = f.n();
  FPlan plan;
  plan.k = k;
  std::vector<char> placed(k, 0);
  std::vector<int> pos(k, -1);
  for (int s = 0; s < k; ++s) {
    int best = -1, best_links = -1, best_deg = -1;
    for (int v = 0; v < k; ++v) {
      if (placed[v]) continue;
      int links = 0, deg = 0;
      for (int u = 0; u < k; ++u) {
        if (f.beta(v, u) != 0.0) {
          ++deg;
          if (placed[u]) ++links;
        }
      }
      if (links > best_links || (links == best_links && deg > best_deg)) {
        best = v;
        best_links = links;
        best_deg = deg;
      }
    }
    placed[best] = 1;
    pos[best] = s;
    plan.order.push_back(best);
    std::vector<int> back, non;
    for (int u = 0; u < k; ++u) {
      if (pos[u] >= 0 && u != best) {
        if (f.beta(best, u) != 0.0)
          back.push_back(pos[u]);
        else
          non.push_back(pos[u]);
      }
    }
    plan.back_edges.push_back(std::move(back));
    plan.non_edges.push_back(std::move(non));
  }
  return plan;
}

void check_capacity(int k, int n) {
  if (std::pow(static_cast<double>(n), k) > kHomCapacity)
    throw CapacityError("hom: |V(G)|^|V(F)| exceeds capacity");
}

double hom_recurse(const FPlan& plan, const WeightedGraph& g, int s, std::vector<int>& image,
                   double partial) {
  if (s == plan.k) return partial;
  const int n = g.n();
  double sum = 0.0;
  for (int x = 0; x < n; ++x) {
    double w = partial * g.alpha(x);
    for (int p : plan.back_edges[s]) w *= g.beta(image[p], x);
    if (w == 0.0) continue;
    image[s] = x;
    sum += hom_recurse(plan, g, s + 1, image, w);
  }
  return sum;
}

enum class InjKind { inj, ind };

double inj_recurse(const FPlan& plan, const WeightedGraph& g, InjKind kind, int s,
                   std::vector<int>& image, std::vector<char>& used, double partial) {
  if (s == plan.k) return partial;
  const int n = g.n();
  double sum = 0.0;
  for (int x = 0; x < n; ++x) {
    if (used[x]) continue;
    double w = partial;
    for (int p : plan.back_edges[s]) w *= g.beta(image[p], x);
    if (kind == InjKind::ind)
      for (int p : plan.non_edges[s]) w *= 1.0 - g.beta(image[p], x);
    if (w == 0.0) continue;
    image[s] = x;
    used[x] = 1;
    sum += inj_recurse(plan, g, kind, s + 1, image, used, w);
    used[x] = 0;
  }
  return sum;
}

double falling_factorial(int n, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= n - i;
  return v;
}

}  // namespace

double hom_count(const WeightedGraph& f, const WeightedGraph& g) {
  const FPlan plan = plan_for(f);
  check_capacity(plan.k, g.n());
  std::vector<int> image(plan.k, -1);
  return hom_recurse(plan, g, 0, image, 1.0);
}

double t_density(const WeightedGraph& f, const WeightedGraph& g, DensityMode mode) {
  const FPlan plan = plan_for(f);
  const int k = plan.k;
  const int n = g.n();
  if (mode == DensityMode::hom) {
    check_capacity(k, n);
    std::vector<int> image(k, -1);
    return hom_recurse(plan, g, 0, image, 1.0) / std::pow(g.total_weight(), k);
  }
  if (n < k) throw InputError("t_density: inj/ind need |V(G)| >= |V(F)|");
  for (int i = 0; i < n; ++i)
    if (g.alpha(i) != 1.0) throw InputError("t_density: inj/ind need unit node weights");
  check_capacity(k, n);
  std::vector<int> image(k, -1);
  std::vector<char> used(n, 0);
  const InjKind kind = mode == DensityMode::inj ? InjKind::inj : InjKind::ind;
  const double sum = inj_recurse(plan, g, kind, 0, image, used, 1.0);
  return sum / falling_factorial(n, k);
}

std::uint64_t edge_mask(const WeightedGraph& f) {
  if (!f.is_simple()) throw InputError("edge_mask: graph must be simple");
  std::uint64_t mask = 0;
  for (int j = 1; j < f.n(); ++j)
    for (int i = 0; i < j; ++i)
      if (f.beta(i, j) != 0.0) mask |= 1ULL << (j * (j - 1) / 2 + i);
  return mask;
}

WeightedGraph graph_from_mask(int n, std::uint64_t mask) {
  std::vector<std::pair<int, int>> edges;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (mask >> (j * (j - 1) / 2 + i) & 1) edges.emplace_back(i, j);
  return WeightedGraph::simple(n, edges);
}

std::map<std::uint64_t, double> inj_ind_convert(int n,
                                                const std::map<std::uint64_t, double>& values,
                                                ConvertDirection direction) {
  if (n < 1 || n > 8) throw InputError("inj_ind_convert: n out of range");
  if (values.empty()) throw InputError("inj_ind_convert: empty map");
  const int npairs = n * (n - 1) / 2;
  const std::uint64_t full = npairs == 0 ? 0 : (1ULL << npairs) - 1;
  for (const auto& [key, _] : values) {
    if (key & ~full) throw InputError("inj_ind_convert: key has bits outside the node set");
    // Every supergraph of every key must be present.
    std::uint64_t rest = full & ~key;
    for (std::uint64_t sup = rest;; sup = (sup - 1) & rest) {
      if (!values.count(key | sup))
        throw InputError("inj_ind_convert: missing supergraph key");
      if (sup == 0) break;
    }
  }
  std::map<std::uint64_t, double> out;
  for (const auto& [key, _] : values) {
    const std::uint64_t rest = full & ~key;
    double sum = 0.0;
    for (std::uint64_t sup = rest;; sup = (sup - 1) & rest) {
      const double term = values.at(key | sup);
      if (direction == ConvertDirection::ind_to_inj)
        sum += term;
      else
        sum += (std::popcount(sup) % 2 == 0 ? term : -term);
      if (sup == 0) break;
    }
    out[key] = sum;
  }
  return out;
}

SmallGraphCatalog enumerate_small_graphs(int k) {
  if (k < 1) throw InputError("enumerate_small_graphs: k must be >= 1");
  if (k > 6) throw CapacityError("enumerate_small_graphs: k > 6");
  SmallGraphCatalog cat;
  cat.k = k;
  for (int n = 1; n <= k; ++n) {
    const int npairs = n * (n - 1) / 2;
    std::vector<std::string> keys;
    for (std::uint64_t mask = 0; mask < (1ULL << npairs); ++mask)
      keys.push_back(canonical_form(graph_from_mask(n, mask)));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (const std::string& key : keys) cat.entries.push_back({key, graph_from_canonical(key)});
  }
  return cat;
}

}  // namespace graphlim
