#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "graphlim/convergence.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/hom.hpp"

using namespace graphlim;

namespace {

WeightedGraph complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return WeightedGraph::simple(n, edges);
}

WeightedGraph random_simple(std::mt19937_64& rng, int n, double p = 0.5) {
  std::bernoulli_distribution edge(p);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng)) edges.emplace_back(i, j);
  return WeightedGraph::simple(n, edges);
}

}  // namespace

TEST_CASE("density profiles list catalog densities") {
  const WeightedGraph k5 = complete(5);
  const DensityProfile p = density_profile(k5, 3);
  CHECK(p.k == 3);
  CHECK(p.keys.size() == 7);  // 1 + 2 + 4 isomorphism classes
  CHECK(p.values.size() == p.keys.size());
  CHECK(p.nodes.size() == p.keys.size());
  CHECK(std::is_sorted(p.nodes.begin(), p.nodes.end()));
  for (size_t i = 0; i < p.keys.size(); ++i) {
    const WeightedGraph rep = graph_from_canonical(p.keys[i]);
    CHECK(rep.n() == p.nodes[i]);
    CHECK(p.values[i] ==
          doctest::Approx(t_density(rep, k5, DensityMode::hom)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(density_profile(k5, 0), InputError);
}

TEST_CASE("profiles are blow up invariant") {
  std::mt19937_64 rng(131);
  const WeightedGraph g = random_simple(rng, 5);
  const DensityProfile a = density_profile(g, 4);
  const DensityProfile b = density_profile(blow_up(g, 3), 4);
  CHECK(profile_distance(a, b).dmax <= 1e-10);
}

TEST_CASE("profile distance between extremes") {
  const int n = 9;
  const DensityProfile full = density_profile(complete(n), 2);
  const DensityProfile empty = density_profile(WeightedGraph::simple(n, {}), 2);
  const ProfileDistance d = profile_distance(full, empty);
  // The only 2-node discriminator is the edge density (n-1)/n.
  CHECK(d.dmax == doctest::Approx((n - 1.0) / n));
  CHECK(d.delta_bound == doctest::Approx(22.0));
  CHECK(d.vacuous);
  CHECK_FALSE(d.applicable);

  const DensityProfile same = density_profile(complete(n), 4);
  const ProfileDistance zero = profile_distance(same, same);
  CHECK(zero.dmax == 0.0);
  CHECK(zero.applicable);  // dmax 0 passes the 3^(-k^2) premise
  CHECK(zero.delta_bound == doctest::Approx(22.0 / std::sqrt(2.0)));
  CHECK(zero.vacuous);  // the bound still proves nothing at this order

  // Mismatched orders cannot be compared.
  CHECK_THROWS_AS(profile_distance(full, same), InputError);
}

TEST_CASE("profile distance obeys the triangle inequality") {
  std::mt19937_64 rng(139);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityProfile a = density_profile(random_simple(rng, 6), 3);
    const DensityProfile b = density_profile(random_simple(rng, 6), 3);
    const DensityProfile c = density_profile(random_simple(rng, 6), 3);
    const double ab = profile_distance(a, b).dmax;
    const double bc = profile_distance(b, c).dmax;
    const double ac = profile_distance(a, c).dmax;
    CHECK(ac <= ab + bc + 1e-12);
  }
}

TEST_CASE("testable parameters on worked graphs") {
  const TestableParameter edge = edge_density_parameter();
  const TestableParameter tri = triangle_density_parameter();
  const TestableParameter cut = maxcut_density_parameter();
  const WeightedGraph k16 = complete(16);
  CHECK(edge.eval(k16) == doctest::Approx(15.0 / 16.0));
  CHECK(tri.eval(k16) == doctest::Approx((15.0 * 14.0) / (16.0 * 16.0)));
  CHECK(cut.eval(k16) == doctest::Approx(0.25));
  // Bipartite graphs carry no triangles and cut everything.
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) edges.emplace_back(i, 4 + j);
  const WeightedGraph k44 = WeightedGraph::simple(8, edges);
  CHECK(tri.eval(k44) == doctest::Approx(0.0));
  CHECK(cut.eval(k44) == doctest::Approx(16.0 / 64.0));
  CHECK(maxcut_density(k44) == doctest::Approx(0.25));
  for (const char* name : {"edge_density", "triangle_density", "maxcut_density"})
    CHECK(parameter_from_name(name).name == name);
  CHECK_THROWS_AS(parameter_from_name("girth"), InputError);
}

TEST_CASE("maxcut local search stays below the exact optimum") {
  std::mt19937_64 rng(149);
  for (int trial = 0; trial < 5; ++trial) {
    const WeightedGraph g = random_simple(rng, 12);
    const double exact = maxcut_density(g);  // n <= 20: exact enumeration
    // Local search on a blow-up can only realize achievable cuts of the same
    // kernel, scaled exactly by the preserved densities.
    const double approx = maxcut_density(blow_up(g, 2), 3);
    CHECK(approx <= exact + 1e-9);
    CHECK(approx >= 0.5 * exact);
  }
}

TEST_CASE("parameter estimates from induced samples") {
  const WeightedGraph k12 = complete(12);
  const TestableParameter edge = edge_density_parameter();
  // Sampling k nodes from K_n always yields K_k.
  const ParameterEstimate est = estimate_parameter(edge, k12, 6, 30, 7);
  CHECK(est.estimate == doctest::Approx(5.0 / 6.0));
  CHECK(est.stdev == doctest::Approx(0.0));
  CHECK(est.min == est.max);
  CHECK(est.samples.size() == 30);
  // Sampling the whole graph reproduces the parameter exactly.
  const ParameterEstimate full = estimate_parameter(edge, k12, 12, 5, 7);
  CHECK(full.estimate == doctest::Approx(11.0 / 12.0));
  CHECK(full.stdev == 0.0);
  // Determinism per seed.
  const ParameterEstimate again = estimate_parameter(edge, k12, 6, 30, 7);
  CHECK(again.samples == est.samples);
  CHECK_THROWS_AS(estimate_parameter(edge, k12, 13, 5, 7), InputError);
  CHECK_THROWS_AS(estimate_parameter(edge, k12, 6, 0, 7), InputError);

  std::mt19937_64 rng(151);
  const WeightedGraph g = random_simple(rng, 30);
  const double truth = edge.eval(g);
  const ParameterEstimate noisy = estimate_parameter(edge, g, 15, 60, 11);
  CHECK(std::abs(noisy.estimate - truth) <
        0.05 + 3.0 * noisy.stdev / std::sqrt(60.0));
}

TEST_CASE("hat estimates over randomizations") {
  const TestableParameter edge = edge_density_parameter();
  // A simple graph randomizes to itself.
  const WeightedGraph k8 = complete(8);
  const HatEstimate fixed = hat_f(edge, k8, 20, 3);
  CHECK(fixed.estimate == doctest::Approx(7.0 / 8.0));
  CHECK(fixed.se == doctest::Approx(0.0));
  // Constant half: each ordered off-diagonal pair contributes 1/2 in
  // expectation, so the expected edge density is (n-1)/(2n) = 0.475 at n = 20.
  const int n = 20;
  Matrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b(i, j) = b(j, i) = 0.5;
  const WeightedGraph h(std::vector<double>(n, 1.0), b);
  const HatEstimate est = hat_f(edge, h, 60, 5);
  CHECK(est.se > 0.0);
  CHECK(std::abs(est.estimate - 0.475) < 3.0 * est.se);
  CHECK_THROWS_AS(hat_f(edge, h, 0, 5), InputError);
}

TEST_CASE("cauchy diagnostic on a blow up sequence") {
  std::mt19937_64 rng(157);
  // Keep every pairwise lcm of orders at most 8 so the blow-up alignment
  // search inside delta_cut is exhaustive and certifies zero exactly.
  const WeightedGraph base = random_simple(rng, 4);
  const WeightedGraph twice = blow_up(base, 2);
  const std::vector<WeightedGraph> seq = {base, twice, twice};
  const CauchyReport rep = cauchy_diagnostic(seq, 3);
  CHECK(rep.k == 3);
  CHECK(rep.profiles.size() == 3);
  CHECK(rep.profile_dmax.rows() == 3);
  CHECK(rep.delta_upper.rows() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(rep.profile_dmax(i, j) <= 1e-10);
      CHECK(rep.delta_upper(i, j) <= 1e-9);
    }
  CHECK(rep.consecutive_dmax.size() == 2);
  CHECK(rep.consecutive_delta.size() == 2);
  CHECK(rep.dmax_nonincreasing);
  CHECK(rep.delta_nonincreasing);
  CHECK_THROWS_AS(cauchy_diagnostic({}, 3), InputError);
}
