#include "graphlim/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "graphlim/cutdist.hpp"
#include "graphlim/cutnorm.hpp"
#include "graphlim/sampling.hpp"

namespace graphlim {

namespace {

double class_bound(double eps) {
  return std::pow(4.0, std::ceil(1.0 / (eps * eps)) - 1.0);
}

CutOptions witness_options(const RegularityOptions& opts, std::uint64_t step) {
  CutOptions c;
  c.seed = Seed{opts.seed, {0x5e9, step}}.stream();
  c.threads = opts.threads;
  return c;
}

// Split every class by membership in S and in T (at most 4 ways), with
// compact relabeling in order of first appearance.
NodePartition refine_by_witness(const NodePartition& p, int n, const std::vector<int>& s,
                                const std::vector<int>& t) {
  std::vector<int> key(n, 0);
  for (int v : s) key[v] |= 1;
  for (int v : t) key[v] |= 2;
  std::map<std::pair<int, int>, int> relabel;
  std::vector<int> assignment(n);
  for (int v = 0; v < n; ++v) {
    const auto k = std::make_pair(p.assignment[v], key[v]);
    const auto it = relabel.find(k);
    if (it == relabel.end()) {
      const int id = static_cast<int>(relabel.size());
      relabel.emplace(k, id);
      assignment[v] = id;
    } else {
      assignment[v] = it->second;
    }
  }
  return NodePartition::from_assignment(std::move(assignment));
}

double l2_energy(const WeightedGraph& g) {
  const double l2 = graph_norms(g).l2;
  return l2 * l2;
}

double residual_upper(const WeightedGraph& g, const NodePartition& p, const CutOptions& opts) {
  return cut_norm(difference_kernel(g, averaged(g, p)), CutMethod::automatic, opts).upper;
}

// Rebalance into exactly q buckets along a class-sorted node order: close
// bucket j once the weight prefix reaches j*t - alpha_max/2, and force one
// node per bucket when the remaining nodes run short.
NodePartition equitable_split(const WeightedGraph& g, const NodePartition& inner, int q) {
  const int n = g.n();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (inner.assignment[a] != inner.assignment[b])
      return inner.assignment[a] < inner.assignment[b];
    return a < b;
  });
  const double target = g.total_weight() / q;
  double amax = 0.0;
  for (int v = 0; v < n; ++v) amax = std::max(amax, g.alpha(v));
  std::vector<int> assignment(n);
  double prefix = 0.0;
  int bucket = 0;
  for (int idx = 0; idx < n; ++idx) {
    const int v = order[idx];
    assignment[v] = bucket;
    prefix += g.alpha(v);
    if (bucket == q - 1) continue;
    const int remaining = n - idx - 1;
    const bool forced = remaining == q - 1 - bucket;
    if (forced || prefix >= (bucket + 1) * target - 0.5 * amax) ++bucket;
  }
  return NodePartition::from_assignment(std::move(assignment));
}

void require_unit_simple(const WeightedGraph& g, const char* what) {
  if (!g.is_simple()) throw InputError(std::string(what) + " requires a simple graph");
}

void check_node_set(const std::vector<int>& s, int n, const char* name) {
  std::set<int> seen;
  for (int v : s) {
    if (v < 0 || v >= n) throw InputError(std::string(name) + ": node index out of range");
    if (!seen.insert(v).second)
      throw InputError(std::string(name) + ": duplicate node index");
  }
  if (s.empty()) throw InputError(std::string(name) + ": empty node set");
}

double bipartite_edges(const WeightedGraph& g, const std::vector<int>& x,
                       const std::vector<int>& y) {
  double e = 0.0;
  for (int u : x)
    for (int v : y) e += g.beta(u, v);
  return e;
}

int size_threshold(double eps, int n, int k) {
  const double raw = eps * n / k;
  return std::max(1, static_cast<int>(std::ceil(raw - 1e-12)));
}

struct PrefixDev {
  double dev = 0.0;
  int size = 0;
  bool top = false;
};

// Worst density deviation over Y of each qualifying size, given degrees of
// Vj-nodes into a fixed X: extremal Y's are the top-s or bottom-s by degree.
PrefixDev worst_prefix_deviation(std::vector<std::pair<double, int>>& deg, int m,
                                 double base, int xsize) {
  std::sort(deg.begin(), deg.end());
  PrefixDev best;
  double sum = 0.0;
  const int nj = static_cast<int>(deg.size());
  for (int s = 1; s <= nj; ++s) {
    sum += deg[nj - s].first;
    if (s < m) continue;
    const double dev = sum / (static_cast<double>(xsize) * s) - base;
    if (dev > best.dev) best = {dev, s, true};
  }
  sum = 0.0;
  for (int s = 1; s <= nj; ++s) {
    sum += deg[s - 1].first;
    if (s < m) continue;
    const double dev = base - sum / (static_cast<double>(xsize) * s);
    if (dev > best.dev) best = {dev, s, false};
  }
  return best;
}

std::vector<int> prefix_set(const std::vector<std::pair<double, int>>& sorted_deg,
                            int size, bool top) {
  std::vector<int> out;
  const int nj = static_cast<int>(sorted_deg.size());
  for (int s = 0; s < size; ++s)
    out.push_back(sorted_deg[top ? nj - 1 - s : s].second);
  std::sort(out.begin(), out.end());
  return out;
}

RegularPairResult exact_pair_check(const WeightedGraph& g, const std::vector<int>& vi,
                                   const std::vector<int>& vj, double eps, int m) {
  const int ni = static_cast<int>(vi.size());
  const int nj = static_cast<int>(vj.size());
  const double base =
      bipartite_edges(g, vi, vj) / (static_cast<double>(ni) * nj);
  RegularPairResult result;
  std::vector<double> deg(nj, 0.0);
  std::uint64_t state = 0;
  const std::uint64_t total = std::uint64_t{1} << ni;
  for (std::uint64_t code = 1; code < total; ++code) {
    const std::uint64_t gray = code ^ (code >> 1);
    const std::uint64_t prev = (code - 1) ^ ((code - 1) >> 1);
    const int flip = std::countr_zero(gray ^ prev);
    const double sign = (gray >> flip) & 1 ? 1.0 : -1.0;
    for (int t = 0; t < nj; ++t) deg[t] += sign * g.beta(vi[flip], vj[t]);
    state = gray;
    const int xsize = std::popcount(state);
    if (xsize < m) continue;
    std::vector<std::pair<double, int>> tagged(nj);
    for (int t = 0; t < nj; ++t) tagged[t] = {deg[t], vj[t]};
    const PrefixDev worst = worst_prefix_deviation(tagged, m, base, xsize);
    if (worst.dev > result.deviation) result.deviation = worst.dev;
    if (worst.dev > eps + 1e-12) {
      result.verdict = PairVerdict::counterexample;
      for (int b = 0; b < ni; ++b)
        if ((state >> b) & 1) result.X.push_back(vi[b]);
      result.Y = prefix_set(tagged, worst.size, worst.top);
      return result;
    }
  }
  result.verdict = PairVerdict::regular;
  return result;
}

std::vector<int> sample_subset(const std::vector<int>& pool, int size,
                               std::mt19937_64& rng) {
  std::vector<int> idx(pool.begin(), pool.end());
  for (int i = 0; i < size; ++i) {
    std::uniform_int_distribution<int> pick(i, static_cast<int>(idx.size()) - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(size);
  std::sort(idx.begin(), idx.end());
  return idx;
}

RegularPairResult randomized_pair_check(const WeightedGraph& g, const std::vector<int>& vi,
                                        const std::vector<int>& vj, double eps, int m,
                                        std::uint64_t seed) {
  const int ni = static_cast<int>(vi.size());
  const int nj = static_cast<int>(vj.size());
  const double base =
      bipartite_edges(g, vi, vj) / (static_cast<double>(ni) * nj);
  RegularPairResult result;
  result.verdict = PairVerdict::unknown;
  auto rng = Seed{seed, {0x9a1}}.rng();
  std::uniform_int_distribution<int> size_x(m, ni), size_y(m, nj);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::vector<int> x = sample_subset(vi, size_x(rng), rng);
    const std::vector<int> y = sample_subset(vj, size_y(rng), rng);
    const double dens =
        bipartite_edges(g, x, y) / (static_cast<double>(x.size()) * y.size());
    const double dev = std::abs(dens - base);
    if (dev > result.deviation) result.deviation = dev;
    if (dev > eps + 1e-12) {
      result.verdict = PairVerdict::counterexample;
      result.X = x;
      result.Y = y;
      return result;
    }
  }
  return result;
}

}  // namespace

RegularityCertificate weak_regular_partition(const WeightedGraph& g, double eps,
                                             const RegularityOptions& opts) {
  if (eps <= 0.0 || eps > 1.0) throw InputError("eps must lie in (0,1]");
  const int n = g.n();
  RegularityCertificate cert;
  cert.partition = NodePartition::from_assignment(std::vector<int>(n, 0));
  const double l2 = graph_norms(g).l2;
  if (l2 <= 0.0) {
    cert.class_bound_ok = true;
    cert.energies.push_back(0.0);
    return cert;
  }
  const int cap = 4 * static_cast<int>(std::ceil(1.0 / (eps * eps)));
  for (int iter = 0;; ++iter) {
    cert.energies.push_back(l2_energy(averaged(g, cert.partition)));
    const CutOptions copts = witness_options(opts, static_cast<std::uint64_t>(iter));
    const CutNormResult res =
        cut_norm(difference_kernel(g, averaged(g, cert.partition)),
                 CutMethod::automatic, copts);
    cert.achieved = res.upper / l2;
    if (res.upper <= eps * l2 || iter >= cap) break;
    NodePartition next =
        refine_by_witness(cert.partition, n, res.witness.S, res.witness.T);
    if (next.assignment == cert.partition.assignment) break;
    cert.witness_values.push_back(res.lower);
    cert.partition = std::move(next);
    ++cert.iterations;
  }
  cert.class_bound_ok = cert.partition.q <= class_bound(eps);
  return cert;
}

RegularityCertificate equitable_weak_partition(const WeightedGraph& g, double eps, int q,
                                               const RegularityOptions& opts) {
  if (q > g.n()) throw InputError("more classes requested than nodes");
  RegularityCertificate inner = weak_regular_partition(g, eps, opts);
  if (q < inner.partition.q)
    throw InputError("q is below the weak partition's class count");
  RegularityCertificate cert = std::move(inner);
  cert.inner_achieved = cert.achieved;
  const NodePartition before = cert.partition;
  cert.partition = equitable_split(g, before, q);
  const double l2 = graph_norms(g).l2;
  const CutOptions copts = witness_options(opts, 0xeb);
  if (l2 > 0.0) {
    cert.achieved = residual_upper(g, cert.partition, copts) / l2;
    cert.rebalance_slack =
        cut_norm(difference_kernel(averaged(g, before), averaged(g, cert.partition)),
                 CutMethod::automatic, copts)
            .upper;
  } else {
    cert.achieved = 0.0;
  }
  cert.class_bound_ok = q <= class_bound(eps);
  return cert;
}

SimpleApproximation simple_approximation(const WeightedGraph& g, int q,
                                         std::uint64_t seed) {
  if (q < 1 || q > 20000) throw InputError("q must lie in [1, 20000]");
  if (q > g.n()) throw InputError("more classes requested than nodes");
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      if (g.beta(i, j) < 0.0 || g.beta(i, j) > 1.0)
        throw InputError("simple_approximation needs edge weights in [0,1]");
  const double eps =
      q >= 2 ? std::min(1.0, std::sqrt(20.0 / std::log2(static_cast<double>(q)))) : 1.0;
  RegularityOptions ropts;
  ropts.seed = seed;
  SimpleApproximation out{WeightedGraph::simple(1, {}), 0.0, {}, 0.0, 0.0, 0.0};
  out.cert = equitable_weak_partition(g, eps, q, ropts);
  const NodePartition& p = out.cert.partition;
  const WeightedGraph hw = quotient(g, p, false);
  Matrix b0 = quotient(g, p, true).betas();
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) b0(i, j) = std::clamp(b0(i, j), 0.0, 1.0);
  const WeightedGraph h0 = WeightedGraph::unit(std::move(b0));
  out.h = randomize(h0, seed);
  CutOptions copts;
  copts.seed = Seed{seed, {0x5a}}.stream();

  Matrix membership(g.n(), q);
  const std::vector<double> ga = g.normalized_alphas();
  for (int v = 0; v < g.n(); ++v) membership(v, p.assignment[v]) = ga[v];
  out.partition_cost =
      overlay_cost(g, hw, FractionalOverlay{membership}, CutMethod::automatic, copts)
          .upper;

  // Weighted vs uniform class masses: diagonal-min coupling with the excess
  // moved northwest-corner style. Same beta both sides, so only off-diagonal
  // couple mass contributes.
  const std::vector<double> a = hw.normalized_alphas();
  const std::vector<double> b(q, 1.0 / q);
  std::vector<std::pair<std::pair<int, int>, double>> couple;
  {
    std::vector<double> ra = a, rb = b;
    for (int i = 0; i < q; ++i) {
      const double m = std::min(ra[i], rb[i]);
      if (m > 0.0) couple.push_back({{i, i}, m});
      ra[i] -= m;
      rb[i] -= m;
    }
    int i = 0, u = 0;
    while (i < q && u < q) {
      if (ra[i] <= 1e-15) {
        ++i;
        continue;
      }
      if (rb[u] <= 1e-15) {
        ++u;
        continue;
      }
      const double m = std::min(ra[i], rb[u]);
      couple.push_back({{i, u}, m});
      ra[i] -= m;
      rb[u] -= m;
    }
  }
  if (3 * q <= kCutExactCap) {
    Matrix x(q, q);
    for (const auto& [iu, m] : couple) x(iu.first, iu.second) += m;
    out.reweight_cost =
        overlay_cost(hw, h0, FractionalOverlay{x}, CutMethod::automatic, copts).upper;
  } else {
    double l1 = 0.0;
    for (const auto& [iu, mi] : couple)
      for (const auto& [jv, mj] : couple)
        l1 += mi * mj *
              std::abs(hw.beta(iu.first, jv.first) - hw.beta(iu.second, jv.second));
    out.reweight_cost = l1;
  }

  out.rounding_cost =
      cut_norm(difference_kernel(h0, out.h), CutMethod::automatic, copts).upper;
  out.delta_ub = out.partition_cost + out.reweight_cost + out.rounding_cost;
  return out;
}

RegularPairResult is_regular_pair(const WeightedGraph& g, const std::vector<int>& vi,
                                  const std::vector<int>& vj, double eps, int k,
                                  PairMode mode, std::uint64_t seed) {
  require_unit_simple(g, "is_regular_pair");
  check_node_set(vi, g.n(), "Vi");
  check_node_set(vj, g.n(), "Vj");
  for (int v : vj)
    if (std::find(vi.begin(), vi.end(), v) != vi.end())
      throw InputError("Vi and Vj must be disjoint");
  if (eps <= 0.0) throw InputError("eps must be positive");
  if (k < 1) throw InputError("class count must be positive");
  const int m = size_threshold(eps, g.n(), k);
  if (m > static_cast<int>(vi.size()) || m > static_cast<int>(vj.size())) {
    RegularPairResult r;
    r.verdict = PairVerdict::regular;  // no qualifying subsets
    return r;
  }
  if (mode == PairMode::exact) {
    if (vi.size() > 15 || vj.size() > 15)
      throw CapacityError("exact pair check limited to classes of 15 nodes");
    return exact_pair_check(g, vi, vj, eps, m);
  }
  return randomized_pair_check(g, vi, vj, eps, m, seed);
}

RegularPartitionResult is_regular_partition(const WeightedGraph& g, const NodePartition& p,
                                            double eps, PairMode mode,
                                            std::uint64_t seed) {
  require_unit_simple(g, "is_regular_partition");
  p.validate(g.n());
  const int k = p.q;
  const auto classes = p.classes();
  const int lo = g.n() / k, hi = (g.n() + k - 1) / k;
  for (const auto& cls : classes) {
    const int sz = static_cast<int>(cls.size());
    if (sz < lo || sz > hi) throw InputError("partition is not equitable");
  }
  RegularPartitionResult out;
  int irregular = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const std::uint64_t pair_seed =
          Seed{seed, {0x9a2, static_cast<std::uint64_t>(i) * k + j}}.stream();
      const RegularPairResult r =
          is_regular_pair(g, classes[i], classes[j], eps, k, mode, pair_seed);
      if (r.verdict == PairVerdict::counterexample) ++irregular;
      ++out.checked_pairs;
    }
  out.irregular_pair_count = 2 * irregular;
  out.regular = out.irregular_pair_count <= eps * k * k + 1e-12;
  return out;
}

}  // namespace graphlim
