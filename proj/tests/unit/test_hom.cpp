#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "graphlim/graph.hpp"
#include "graphlim/hom.hpp"

using namespace graphlim;

namespace {

const WeightedGraph kK2 = WeightedGraph::simple(2, {{0, 1}});
const WeightedGraph kK3 = WeightedGraph::simple(3, {{0, 1}, {1, 2}, {0, 2}});
const WeightedGraph kP3 = WeightedGraph::simple(3, {{0, 1}, {1, 2}});
const WeightedGraph kC4 = WeightedGraph::simple(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});

// Independent oracle: iterate over every map [k] -> [n] and accumulate the
// weighted product directly, no recursion or pruning.
double brute_t_hom(const WeightedGraph& f, const WeightedGraph& g) {
  const int k = f.n(), n = g.n();
  std::vector<int> phi(k, 0);
  double total = 0.0;
  while (true) {
    double term = 1.0;
    for (int v = 0; v < k; ++v) term *= g.alpha(phi[v]);
    for (int u = 0; u < k; ++u)
      for (int v = u + 1; v < k; ++v)
        if (f.beta(u, v) != 0.0) term *= g.beta(phi[u], phi[v]);
    total += term;
    int pos = k - 1;
    while (pos >= 0 && phi[pos] == n - 1) phi[pos--] = 0;
    if (pos < 0) break;
    ++phi[pos];
  }
  double norm = 1.0;
  for (int v = 0; v < k; ++v) norm *= g.total_weight();
  return total / norm;
}

WeightedGraph random_host(std::mt19937_64& rng, int n, bool unit_alpha) {
  std::uniform_real_distribution<double> wdist(0.3, 1.7), bdist(0.0, 1.0);
  std::vector<double> alpha(n, 1.0);
  if (!unit_alpha)
    for (double& a : alpha) a = wdist(rng);
  Matrix beta(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double b = bdist(rng);
      beta(i, j) = b;
      beta(j, i) = b;
    }
  return WeightedGraph(std::move(alpha), std::move(beta));
}

WeightedGraph random_pattern(std::mt19937_64& rng, int k) {
  std::bernoulli_distribution edge(0.5);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (edge(rng)) edges.emplace_back(i, j);
  return WeightedGraph::simple(k, edges);
}

}  // namespace

TEST_CASE("worked densities") {
  CHECK(t_density(kK2, kK3, DensityMode::hom) == doctest::Approx(2.0 / 3.0));
  CHECK(t_density(kK3, kK3, DensityMode::hom) == doctest::Approx(6.0 / 27.0));
  CHECK(t_density(kK3, kK3, DensityMode::inj) == doctest::Approx(1.0));
  CHECK(t_density(kK2, kK3, DensityMode::inj) == doctest::Approx(1.0));
  CHECK(t_density(kP3, kK3, DensityMode::ind) == doctest::Approx(0.0));
  CHECK(t_density(kK3, kK3, DensityMode::ind) == doctest::Approx(1.0));
  CHECK(hom_count(kK2, kK3) == doctest::Approx(6.0));
  CHECK(hom_count(kK3, kK3) == doctest::Approx(6.0));
  // Triangle-free host kills the triangle density.
  CHECK(t_density(kK3, kC4, DensityMode::hom) == doctest::Approx(0.0));
}

TEST_CASE("hom density matches the brute oracle") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const int kf = 2 + static_cast<int>(rng() % 2);
    const int ng = 2 + static_cast<int>(rng() % 4);
    const WeightedGraph f = random_pattern(rng, kf);
    const WeightedGraph g = random_host(rng, ng, trial % 2 == 0);
    CHECK(t_density(f, g, DensityMode::hom) ==
          doctest::Approx(brute_t_hom(f, g)).epsilon(1e-11));
  }
}

TEST_CASE("density mode relations on simple hosts") {
  std::mt19937_64 rng(29);
  std::bernoulli_distribution edge(0.5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 3);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (edge(rng)) edges.emplace_back(i, j);
    const WeightedGraph g = WeightedGraph::simple(n, edges);
    const WeightedGraph f = random_pattern(rng, 3);
    const double ti = t_density(f, g, DensityMode::inj);
    CHECK(ti >= -1e-12);
    CHECK(ti <= 1.0 + 1e-12);
    // t_inj sums the induced densities of all supergraphs of f.
    const std::uint64_t base = edge_mask(f);
    double sum = 0.0;
    const std::uint64_t full = (1ULL << (3 * 2 / 2)) - 1;
    for (std::uint64_t mask = 0; mask <= full; ++mask)
      if ((mask & base) == base)
        sum += t_density(graph_from_mask(3, mask), g, DensityMode::ind);
    CHECK(ti == doctest::Approx(sum).epsilon(1e-10));
  }
}

TEST_CASE("inj ind conversion round trips") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const int k = 3 + static_cast<int>(trial % 2);
    const int n = 5 + static_cast<int>(rng() % 3);
    const WeightedGraph g = random_host(rng, n, true);
    const int pairs = k * (k - 1) / 2;
    std::map<std::uint64_t, double> inj, ind;
    for (std::uint64_t mask = 0; mask < (1ULL << pairs); ++mask) {
      const WeightedGraph f = graph_from_mask(k, mask);
      inj[mask] = t_density(f, g, DensityMode::inj);
      ind[mask] = t_density(f, g, DensityMode::ind);
    }
    const auto from_ind = inj_ind_convert(k, ind, ConvertDirection::ind_to_inj);
    const auto from_inj = inj_ind_convert(k, inj, ConvertDirection::inj_to_ind);
    for (const auto& [mask, v] : inj)
      CHECK(from_ind.at(mask) == doctest::Approx(v).epsilon(1e-10));
    for (const auto& [mask, v] : ind)
      CHECK(from_inj.at(mask) == doctest::Approx(v).epsilon(1e-10));
  }
}

TEST_CASE("hom and inj are close on large hosts") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 12 + static_cast<int>(rng() % 8);
    const WeightedGraph g = random_host(rng, n, true);
    const WeightedGraph f = random_pattern(rng, 3);
    const double gap =
        std::abs(t_density(f, g, DensityMode::hom) - t_density(f, g, DensityMode::inj));
    CHECK(gap < 3.0 / n);
  }
}

TEST_CASE("catalog counts and keys") {
  const std::vector<int> counts = {1, 2, 4, 11, 34};
  const SmallGraphCatalog cat = enumerate_small_graphs(5);
  CHECK(static_cast<int>(cat.entries.size()) == 52);
  std::set<std::string> keys;
  std::vector<int> per_size(6, 0);
  for (const CatalogEntry& e : cat.entries) {
    CHECK(keys.insert(e.key).second);
    CHECK(canonical_form(e.rep) == e.key);
    ++per_size[e.rep.n()];
  }
  for (int k = 1; k <= 5; ++k) CHECK(per_size[k] == counts[k - 1]);
  CHECK(enumerate_small_graphs(6).entries.size() > 52);
  CHECK_THROWS_AS(enumerate_small_graphs(7), CapacityError);
  CHECK_THROWS_AS(enumerate_small_graphs(0), InputError);
}

TEST_CASE("edge mask round trip") {
  // Pair order (0,1),(0,2),(1,2): the path 0-1-2 uses the first and last.
  CHECK(edge_mask(kK3) == 0b111);
  CHECK(edge_mask(kP3) == 0b101);
  for (std::uint64_t mask = 0; mask < 64; ++mask)
    CHECK(edge_mask(graph_from_mask(4, mask)) == mask);
}

TEST_CASE("density input checks") {
  CHECK_THROWS_AS(t_density(kK3, kK2, DensityMode::inj), InputError);
  const WeightedGraph w({1.0, 2.0}, [] {
    Matrix b(2, 2);
    b(0, 1) = b(1, 0) = 1.0;
    return b;
  }());
  CHECK_THROWS_AS(t_density(w, kK3, DensityMode::hom), InputError);
  CHECK_THROWS_AS(t_density(kK2, w, DensityMode::ind), InputError);
}
