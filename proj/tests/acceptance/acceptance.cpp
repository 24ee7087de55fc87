#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "graphlim/convergence.hpp"
#include "graphlim/cutdist.hpp"
#include "graphlim/cutnorm.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/hom.hpp"
#include "graphlim/regularity.hpp"
#include "graphlim/sampling.hpp"

using namespace graphlim;

namespace {

int failures = 0;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// budget 0 means the criterion carries no runtime limit.
void report(int id, bool pass, double elapsed, double budget, const std::string& detail) {
  const bool ok = pass && (budget <= 0.0 || elapsed < budget);
  if (!ok) ++failures;
  if (budget > 0.0)
    std::printf("criterion %2d: %s  %s  [%.2f s / %.0f s]\n", id, ok ? "PASS" : "FAIL",
                detail.c_str(), elapsed, budget);
  else
    std::printf("criterion %2d: %s  %s  [%.2f s]\n", id, ok ? "PASS" : "FAIL",
                detail.c_str(), elapsed);
  std::fflush(stdout);
}

WeightedGraph random_weighted(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b(i, j) = b(j, i) = u(rng);
  return WeightedGraph(std::vector<double>(n, 1.0), b);
}

WeightedGraph random_simple_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution edge(p);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng)) edges.emplace_back(i, j);
  return WeightedGraph::simple(n, edges);
}

Kernel random_kernel(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> a(0.5, 2.0);
  Matrix v(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) v(i, j) = v(j, i) = u(rng);
  std::vector<double> alpha(n);
  for (double& w : alpha) w = a(rng);
  return Kernel(std::move(alpha), std::move(v));
}

Matrix scaled_of(const Kernel& k) {
  const std::vector<double> w = k.normalized_alphas();
  Matrix m(k.n(), k.n());
  for (int i = 0; i < k.n(); ++i)
    for (int j = 0; j < k.n(); ++j) m(i, j) = w[i] * w[j] * k.values(i, j);
  return m;
}

// Max over all S of the closed-form max over all T, covering every (S,T).
double brute_cut_norm(const Kernel& k) {
  const Matrix m = scaled_of(k);
  const int n = k.n();
  double best = 0.0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    double pos = 0.0, neg = 0.0;
    for (int j = 0; j < n; ++j) {
      double c = 0.0;
      for (int i = 0; i < n; ++i)
        if (s >> i & 1) c += m(i, j);
      if (c > 0.0)
        pos += c;
      else
        neg += c;
    }
    best = std::max({best, pos, -neg});
  }
  return best;
}

// Fully nested 4^n loop, feasible for small n; validates the closed form.
double nested_cut_norm(const Kernel& k) {
  const Matrix m = scaled_of(k);
  const int n = k.n();
  double best = 0.0;
  for (std::uint32_t s = 0; s < (1u << n); ++s)
    for (std::uint32_t t = 0; t < (1u << n); ++t) {
      double v = 0.0;
      for (int i = 0; i < n; ++i) {
        if (!(s >> i & 1)) continue;
        for (int j = 0; j < n; ++j)
          if (t >> j & 1) v += m(i, j);
      }
      best = std::max(best, std::abs(v));
    }
  return best;
}

double brute_inf_to_one(const Kernel& k) {
  const Matrix m = scaled_of(k);
  const int n = k.n();
  double best = 0.0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      double c = 0.0;
      for (int i = 0; i < n; ++i) c += (s >> i & 1) ? m(i, j) : -m(i, j);
      total += std::abs(c);
    }
    best = std::max(best, total);
  }
  return best;
}

// t(C4, K) = trace(M^4) with M_ij = sqrt(w_i w_j) v_ij.
double brute_c4_density(const Kernel& k) {
  const std::vector<double> w = k.normalized_alphas();
  const int n = k.n();
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = std::sqrt(w[i] * w[j]) * k.values(i, j);
  Matrix sq(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int l = 0; l < n; ++l) s += m(i, l) * m(l, j);
      sq(i, j) = s;
    }
  double tr = 0.0;
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) tr += sq(i, l) * sq(l, i);
  return std::max(tr, 0.0);
}

int edge_count_of(const WeightedGraph& g) {
  double s = 0.0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j) s += g.beta(i, j);
  return static_cast<int>(std::lround(s));
}

WeightedGraph complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return WeightedGraph::simple(n, edges);
}

WeightedGraph two_loops() {
  Matrix b(2, 2);
  b(0, 0) = b(1, 1) = 1.0;
  return WeightedGraph({1.0, 1.0}, b);
}

WeightedGraph k33() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) edges.emplace_back(i, j);
  return WeightedGraph::simple(6, edges);
}

WeightedGraph two_triangles() {
  return WeightedGraph::simple(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
}

// 1. Two-node worked example: exact hat distance 1/4, fractional 1/8.
void criterion1() {
  const Timer t;
  const WeightedGraph k2 = complete(2);
  const WeightedGraph loops = two_loops();
  const DistanceResult hat = delta_hat(k2, loops, DeltaHatMethod::exact);
  const DistanceResult d = delta_cut(k2, loops);
  const bool pass = hat.kind == DistKind::exact &&
                    std::abs(hat.value - 0.25) <= 1e-12 &&
                    std::abs(d.value - 0.125) <= 1e-6;
  report(1, pass, t.seconds(), 1.0,
         fmt("K2 vs two loops: hat %.12f (pinned 0.25 +- 1e-12), delta %.9f "
             "(pinned 0.125 +- 1e-6)",
             hat.value, d.value));
}

// 2. Six-node worked example with pinned targets 5/36 and <= 1/8.
void criterion2() {
  const Timer t;
  const DistanceResult hat = delta_hat(k33(), two_triangles(), DeltaHatMethod::exact);
  DeltaOptions opts;
  opts.seed = 2;
  opts.descent_restarts = 24;
  const DistanceResult d = delta_cut(k33(), two_triangles(), opts);
  const bool pass = hat.kind == DistKind::exact &&
                    std::abs(hat.value - 5.0 / 36.0) <= 1e-9 &&
                    d.value <= 0.125 + 1e-6;
  report(2, pass, t.seconds(), 30.0,
         fmt("K33 vs two triangles: hat %.9f (pinned 5/36 = %.9f +- 1e-9), delta "
             "%.9f (pinned <= 0.125 + 1e-6)",
             hat.value, 5.0 / 36.0, d.value));
  std::printf(
      "              note: the graphs carry 18 vs 12 ordered edge units, so S = T = V\n"
      "              certifies |18 - 12|/36 = 1/6 under every labeling and every\n"
      "              fractional coupling; both pinned targets sit below that floor,\n"
      "              and independent 720-permutation enumeration confirms the minimum\n"
      "              is exactly 1/6. The targets are unattainable as stated.\n");
}

// 3. Exact cut norm against the full (S,T) enumeration.
void criterion3() {
  const Timer t;
  std::mt19937_64 rng(301);
  int bad = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 12;
    const Kernel k = random_kernel(rng, n);
    const double oracle = brute_cut_norm(k);
    if (n <= 7 && std::abs(nested_cut_norm(k) - oracle) > 1e-15) ++bad;
    const CutNormResult r = cut_norm(k, CutMethod::exact);
    const double diff = std::abs(r.upper - oracle);
    worst = std::max(worst, diff);
    if (!r.exact() || diff > 1e-12) ++bad;
  }
  report(3, bad == 0, t.seconds(), 120.0,
         fmt("exact cut norm vs 4^n brute force, 200 kernels n <= 12: %d mismatches, "
             "max |diff| %.2e (tol 1e-12)",
             bad, worst));
}

// 4. Norm sandwiches and restricted-variant factor chains.
void criterion4() {
  const Timer t;
  std::mt19937_64 rng(401);
  const double tol = 1e-9;
  int bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 10;
    const Kernel k = random_kernel(rng, n);
    const double cn = cut_norm(k, CutMethod::exact).upper;
    const double io = brute_inf_to_one(k);
    if (std::abs(inf_to_one_norm(k) - io) > 1e-12) ++bad;
    const double c4 = brute_c4_density(k);
    if (0.25 * io > cn + tol || cn > io + tol) ++bad;
    if (0.25 * c4 > cn + tol || cn > std::pow(c4, 0.25) + tol) ++bad;
    const double eq = restricted_cut_norm(k, RestrictVariant::equal);
    const double dis = restricted_cut_norm(k, RestrictVariant::disjoint);
    const double comp = restricted_cut_norm(k, RestrictVariant::complement);
    if (0.5 * cn > eq + tol || eq > cn + tol) ++bad;
    if (0.25 * cn > dis + tol || dis > cn + tol) ++bad;
    if (2.0 / 3.0 * dis > comp + tol || comp > dis + tol) ++bad;
  }
  report(4, bad == 0, t.seconds(), 120.0,
         fmt("inf-to-one, C4 and equal/disjoint/complement sandwiches, 500 kernels "
             "n <= 10: %d violations (tol 1e-9)",
             bad));
}

// 5. Counting lemma with the certified distance upper bound.
void criterion5() {
  const Timer t;
  std::mt19937_64 rng(501);
  const SmallGraphCatalog cat = enumerate_small_graphs(4);
  int bad = 0;
  double slack = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const int n1 = 2 + static_cast<int>(rng() % 7);
    const int n2 = 2 + static_cast<int>(rng() % 7);
    const WeightedGraph g1 = random_weighted(rng, n1);
    const WeightedGraph g2 = random_weighted(rng, n2);
    DeltaOptions opts;
    opts.seed = trial;
    const double d = delta_cut(g1, g2, opts).value;
    for (const CatalogEntry& e : cat.entries) {
      const int m = edge_count_of(e.rep);
      const double lhs = std::abs(t_density(e.rep, g1, DensityMode::hom) -
                                  t_density(e.rep, g2, DensityMode::hom));
      const double rhs = 4.0 * m * d + 1e-9;
      if (lhs > rhs) ++bad;
      slack = std::min(slack, rhs - lhs);
    }
  }
  report(5, bad == 0, t.seconds(), 0.0,
         fmt("|t(F,G1)-t(F,G2)| <= 4|E(F)| delta, 100 pairs x 18 patterns: %d "
             "violations, min slack %.3e",
             bad, slack));
}

// 6. Weak regularity certificates at eps = 0.5 on 50 graphs.
void criterion6() {
  const Timer t;
  std::mt19937_64 rng(601);
  int bad = 0;
  int max_classes = 0;
  double worst_achieved = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const WeightedGraph g = random_simple_graph(rng, 60, 0.5);
    RegularityOptions opts;
    opts.seed = trial;
    const RegularityCertificate cert = weak_regular_partition(g, 0.5, opts);
    max_classes = std::max(max_classes, cert.partition.q);
    worst_achieved = std::max(worst_achieved, cert.achieved);
    bool ok = cert.achieved <= 0.5 + 1e-12 && cert.partition.q <= 64 &&
              cert.class_bound_ok &&
              cert.energies.size() == static_cast<size_t>(cert.iterations) + 1 &&
              cert.witness_values.size() == static_cast<size_t>(cert.iterations);
    for (int i = 0; ok && i < cert.iterations; ++i)
      ok = cert.energies[i + 1] - cert.energies[i] >=
           cert.witness_values[i] * cert.witness_values[i] - 1e-10;
    if (!ok) ++bad;
  }
  report(6, bad == 0, t.seconds(), 300.0,
         fmt("50 graphs n=60 eps=0.5: %d bad certificates, worst achieved %.4f, max "
             "classes %d (cap 64), energy increments >= witness^2",
             bad, worst_achieved, max_classes));
}

// 7. Sampling statistics: closeness, concentration, unbiasedness.
void criterion7() {
  const Timer t;
  ConcentrationParams pa;
  pa.n = 20;
  const ConcentrationReport ra = concentration_experiment(ConcTheorem::gh_close, pa, 300, 7001);
  const bool oka = ra.fail == 0 && std::abs(ra.bound - 4.0 / std::sqrt(20.0)) <= 1e-12;

  ConcentrationParams pb;
  pb.n = 100;
  pb.eps = 0.15;
  pb.p = 0.5;
  pb.f_nodes = 3;
  const ConcentrationReport rb = concentration_experiment(ConcTheorem::t_conc, pb, 500, 7002);
  const bool okb = rb.verdict_pass;

  const WeightedGraph k3 = complete(3);
  const Graphon half = AnalyticGraphon::constant(0.5);
  double sum = 0.0, sumsq = 0.0;
  const int draws = 500;
  for (int i = 0; i < draws; ++i) {
    const WeightedGraph g = w_random_simple(half, 20, 7100 + i);
    const double x = t_density(k3, g, DensityMode::inj);
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / draws;
  const double sd = std::sqrt(std::max(0.0, sumsq / draws - mean * mean));
  const double se = sd / std::sqrt(static_cast<double>(draws));
  const bool okc = std::abs(mean - 0.125) <= 3.0 * se;

  report(7, oka && okb && okc, t.seconds(), 600.0,
         fmt("closeness n=20: %d/300 violations (bound %.3f); concentration K3 n=100 "
             "eps=0.15: fail frac %.4f, verdict %s; t_inj mean %.6f vs 1/8 within 3 se "
             "(se %.2e)",
             ra.fail, ra.bound, static_cast<double>(rb.fail) / rb.trials,
             okb ? "pass" : "fail", mean, se));
}

// 8. Limit examples: min graphon, constant powers, attachment trend.
void criterion8() {
  const Timer t;
  const WeightedGraph k2 = complete(2);
  const McEstimate mc = t_graphon(k2, AnalyticGraphon::min_xy(), 1000000, 801);
  const bool oka = mc.se > 0.0 && std::abs(mc.value - 1.0 / 3.0) <= 3.0 * mc.se;

  const double p = 0.37;
  const StepGraphon step = discretize(AnalyticGraphon::constant(p), 1);
  const SmallGraphCatalog cat = enumerate_small_graphs(5);
  int badb = 0;
  for (const CatalogEntry& e : cat.entries) {
    const McEstimate r = t_graphon(e.rep, step);
    if (r.se != 0.0 ||
        std::abs(r.value - std::pow(p, edge_count_of(e.rep))) > 1e-12)
      ++badb;
  }

  int badc = 0;
  double worst_err = 0.0;
  for (std::uint64_t seed = 21; seed <= 23; ++seed) {
    double prev = -1.0;
    for (const int n : {50, 100, 200}) {
      const WeightedGraph g = uniform_attachment_graph(n, seed);
      const double d = t_density(k2, g, DensityMode::hom);
      const double expect = (n - 2.0) / (3.0 * n);
      worst_err = std::max(worst_err, std::abs(d - expect));
      if (std::abs(d - expect) > 0.05) ++badc;
      if (prev >= 0.0 && d < prev - 0.05) ++badc;
      prev = d;
    }
  }
  report(8, oka && badb == 0 && badc == 0, t.seconds(), 0.0,
         fmt("t(K2,min) %.6f vs 1/3 within 3 se (se %.1e); constant powers: %d/%zu "
             "off; attachment trend to 1/3: %d violations, max |err| %.4f",
             mc.value, mc.se, badb, cat.entries.size(), badc, worst_err));
}

// 9. Hat versus fractional distance consistency on 100 pairs.
void criterion9() {
  const Timer t;
  std::mt19937_64 rng(901);
  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    const WeightedGraph g1 = random_weighted(rng, n);
    const WeightedGraph g2 = random_weighted(rng, n);
    const double hat = delta_hat(g1, g2, DeltaHatMethod::exact).value;
    DeltaOptions opts;
    opts.seed = trial;
    const double dc = delta_cut(g1, g2, opts).value;
    if (dc > hat + 1e-9) ++bad;
    if (hat > 32.0 * std::pow(dc, 1.0 / 67.0) + 1e-9) ++bad;
  }
  report(9, bad == 0, t.seconds(), 0.0,
         fmt("delta <= hat and hat <= 32 delta^(1/67), 100 pairs n <= 6: %d "
             "violations (tol 1e-9)",
             bad));
}

// 10. Inclusion-exclusion roundtrip and the injective density gap bound.
void criterion10() {
  const Timer t;
  std::mt19937_64 rng(1001);
  int bad = 0;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 3 + trial % 2;
    const int n = k + 2 + trial % 5;
    Matrix b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) b(i, j) = b(j, i) = u01(rng);
    const WeightedGraph g(std::vector<double>(n, 1.0), b);
    const int pairs = k * (k - 1) / 2;
    std::map<std::uint64_t, double> ind, inj;
    for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
      const WeightedGraph f = graph_from_mask(k, mask);
      ind[mask] = t_density(f, g, DensityMode::ind);
      inj[mask] = t_density(f, g, DensityMode::inj);
    }
    const auto to_inj = inj_ind_convert(k, ind, ConvertDirection::ind_to_inj);
    const auto to_ind = inj_ind_convert(k, inj, ConvertDirection::inj_to_ind);
    for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
      if (std::abs(to_inj.at(mask) - inj[mask]) > 1e-10) ++bad;
      if (std::abs(to_ind.at(mask) - ind[mask]) > 1e-10) ++bad;
      const WeightedGraph f = graph_from_mask(k, mask);
      const double gap =
          std::abs(t_density(f, g, DensityMode::hom) - inj[mask]);
      if (gap > static_cast<double>(pairs) / n + 1e-10) ++bad;
    }
  }
  report(10, bad == 0, t.seconds(), 0.0,
         fmt("inclusion-exclusion roundtrips and |t - t_inj| <= binom(k,2)/n, 200 "
             "instances k in {3,4}: %d violations (tol 1e-10)",
             bad));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
