#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "graphlim/graphon.hpp"
#include "graphlim/hom.hpp"

using namespace graphlim;

namespace {

const WeightedGraph kK2 = WeightedGraph::simple(2, {{0, 1}});
const WeightedGraph kK3 = WeightedGraph::simple(3, {{0, 1}, {1, 2}, {0, 2}});
const WeightedGraph kP3 = WeightedGraph::simple(3, {{0, 1}, {1, 2}});

StepGraphon random_step(std::mt19937_64& rng, int q) {
  std::uniform_real_distribution<double> mdist(0.2, 1.0), vdist(0.0, 1.0);
  std::vector<double> measures(q);
  double total = 0.0;
  for (double& m : measures) total += (m = mdist(rng));
  for (double& m : measures) m /= total;
  Matrix values(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = i; j < q; ++j) {
      const double v = vdist(rng);
      values(i, j) = v;
      values(j, i) = v;
    }
  return StepGraphon(std::move(measures), std::move(values));
}

}  // namespace

TEST_CASE("builtin values") {
  const AnalyticGraphon c = AnalyticGraphon::constant(0.3);
  CHECK(c(0.1, 0.9) == doctest::Approx(0.3));
  const AnalyticGraphon m = AnalyticGraphon::min_xy();
  CHECK(m(0.2, 0.7) == doctest::Approx(0.2));
  CHECK(m(0.7, 0.2) == doctest::Approx(0.2));
  const AnalyticGraphon h = AnalyticGraphon::halfgraph();
  CHECK(h(0.1, 0.8) == doctest::Approx(1.0));
  CHECK(h(0.1, 0.4) == doctest::Approx(0.0));
  const Graphon w = m;
  CHECK(graphon_value(w, 0.3, 0.6) == doctest::Approx(0.3));
}

TEST_CASE("step graphon evaluation and validation") {
  Matrix v(2, 2);
  v(0, 0) = 0.1;
  v(0, 1) = v(1, 0) = 0.8;
  v(1, 1) = 0.3;
  const StepGraphon w({0.25, 0.75}, v);
  CHECK(w.value_at(0.1, 0.1) == doctest::Approx(0.1));
  CHECK(w.value_at(0.1, 0.9) == doctest::Approx(0.8));
  CHECK(w.value_at(0.9, 0.9) == doctest::Approx(0.3));
  const WeightedGraph g = w.graph();
  CHECK(g.n() == 2);
  CHECK(g.alpha(0) == doctest::Approx(0.25));
  CHECK(g.beta(0, 1) == doctest::Approx(0.8));
  CHECK_THROWS_AS(StepGraphon({0.5, 0.6}, v), InputError);
  CHECK_THROWS_AS(StepGraphon({1.0}, v), InputError);
}

TEST_CASE("exact densities in step graphons") {
  // One-block graphon: every density is a power of the constant.
  Matrix c(1, 1);
  c(0, 0) = 0.4;
  const StepGraphon constant({1.0}, c);
  CHECK(t_graphon(kK2, constant).value == doctest::Approx(0.4));
  CHECK(t_graphon(kK3, constant).value == doctest::Approx(std::pow(0.4, 3)));
  CHECK(t_graphon(kP3, constant).value == doctest::Approx(std::pow(0.4, 2)));
  CHECK(t_graphon(kK2, constant).se == 0.0);

  // Step densities agree with graph densities of the underlying graph.
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const StepGraphon w = random_step(rng, 2 + static_cast<int>(rng() % 3));
    for (const WeightedGraph* f : {&kK2, &kK3, &kP3})
      CHECK(t_graphon(*f, w).value ==
            doctest::Approx(t_density(*f, w.graph(), DensityMode::hom)).epsilon(1e-12));
  }
}

TEST_CASE("closed form densities of the builtins") {
  // Discretized min graphon converges to the analytic density 1/3.
  const StepGraphon fine = discretize(AnalyticGraphon::min_xy(), 200);
  CHECK(t_graphon(kK2, fine).value == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
  const McEstimate mc = t_graphon(kK2, AnalyticGraphon::min_xy(), 200000, 5);
  CHECK(mc.se > 0.0);
  CHECK(std::abs(mc.value - 1.0 / 3.0) < 4.0 * mc.se);
  const McEstimate tri = t_graphon(kK3, AnalyticGraphon::min_xy(), 200000, 7);
  CHECK(std::abs(tri.value - 1.0 / 15.0) < 4.0 * tri.se);
  const McEstimate half = t_graphon(kK2, AnalyticGraphon::halfgraph(), 200000, 9);
  CHECK(std::abs(half.value - 1.0 / 4.0) < 4.0 * half.se);
  // Constant graphon needs no sampling slack at all.
  const McEstimate cp = t_graphon(kK3, AnalyticGraphon::constant(0.5), 1000, 3);
  CHECK(cp.value == doctest::Approx(0.125).epsilon(1e-9));
  CHECK_THROWS_AS(t_graphon(kK2, AnalyticGraphon::min_xy(), 10, 1), InputError);
}

TEST_CASE("discretize uses exact block averages") {
  const StepGraphon d = discretize(AnalyticGraphon::min_xy(), 4);
  CHECK(d.q() == 4);
  // Off-diagonal block average of min(x, y) is the smaller block's midpoint.
  CHECK(d.value(0, 2) == doctest::Approx(1.0 / 8.0));
  CHECK(d.value(3, 1) == doctest::Approx(3.0 / 8.0));
  // Diagonal block on [a, a+h]: average of min over the square is a + h/3.
  CHECK(d.value(1, 1) == doctest::Approx(0.25 + 0.25 / 3.0));
  const StepGraphon dc = discretize(AnalyticGraphon::constant(0.6), 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(dc.value(i, j) == doctest::Approx(0.6));
}

TEST_CASE("quotient and average against interval partitions") {
  std::mt19937_64 rng(103);
  const StepGraphon w = random_step(rng, 4);
  const IntervalPartition p = IntervalPartition::equal(2);
  const StepGraphon a = average(w, p);
  CHECK(a.q() == 2);
  const WeightedGraph q = quotient(w, p);
  CHECK(q.n() == 2);
  CHECK(q.alpha(0) == doctest::Approx(0.5));
  // Averaging cannot raise the edge density error: densities agree exactly
  // for the edge because averaging preserves the integral.
  CHECK(t_graphon(kK2, a).value == doctest::Approx(t_graphon(kK2, w).value).epsilon(1e-12));
  CHECK(t_density(kK2, q, DensityMode::hom) ==
        doctest::Approx(t_graphon(kK2, w).value).epsilon(1e-12));
  const IntervalPartition dup{{0.5, 0.5}};
  CHECK_THROWS_AS(dup.validate(), InputError);
  const IntervalPartition zero{{0.0}};
  CHECK_THROWS_AS(zero.validate(), InputError);
}

TEST_CASE("graphon norms") {
  Matrix v(2, 2);
  v(0, 1) = v(1, 0) = 1.0;
  const StepGraphon checker({0.5, 0.5}, v);
  const GraphonNorms n = graphon_norms(checker, CutMethod::exact);
  CHECK(n.l1 == doctest::Approx(0.5));
  CHECK(n.l2 == doctest::Approx(std::sqrt(0.5)));
  // Taking S = T = [0,1] captures the whole nonnegative integral.
  CHECK(n.cut_lower == doctest::Approx(0.5));
  CHECK(n.cut_upper == doctest::Approx(0.5));
  Matrix c(1, 1);
  c(0, 0) = 0.7;
  const GraphonNorms nc = graphon_norms(StepGraphon({1.0}, c), CutMethod::exact);
  CHECK(nc.l1 == doctest::Approx(0.7));
  CHECK(nc.cut_upper == doctest::Approx(0.7));
}

TEST_CASE("interval permutations preserve densities") {
  std::mt19937_64 rng(107);
  const StepGraphon w = [&] {
    // Equal steps required for a step relabeling.
    Matrix values(4, 4);
    std::uniform_real_distribution<double> vdist(0.0, 1.0);
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        const double v = vdist(rng);
        values(i, j) = v;
        values(j, i) = v;
      }
    return StepGraphon(std::vector<double>(4, 0.25), values);
  }();
  const std::vector<int> pi = {2, 0, 3, 1};
  const StepGraphon wp = interval_permutation_apply(w, pi);
  CHECK(wp.value(0, 1) == doctest::Approx(w.value(2, 0)));
  for (const WeightedGraph* f : {&kK2, &kK3})
    CHECK(t_graphon(*f, wp).value ==
          doctest::Approx(t_graphon(*f, w).value).epsilon(1e-12));
  CHECK(delta_graphon(w, wp).value <= 1e-9);
}

TEST_CASE("graphon distance via underlying graphs") {
  Matrix a(1, 1), b(1, 1);
  a(0, 0) = 0.2;
  b(0, 0) = 0.9;
  const DistanceResult r = delta_graphon(StepGraphon({1.0}, a), StepGraphon({1.0}, b));
  CHECK(r.value == doctest::Approx(0.7).epsilon(1e-9));
}
