#include "graphlim/cutdist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace graphlim {

namespace {

constexpr double kUniformTol = 1e-12;

bool uniform_weights(const WeightedGraph& g) {
  for (int i = 1; i < g.n(); ++i)
    if (std::abs(g.alpha(i) - g.alpha(0)) > kUniformTol * std::max(1.0, g.alpha(0)))
      return false;
  return true;
}

WeightedGraph unit_weighted(const WeightedGraph& g) {
  return WeightedGraph(std::vector<double>(g.n(), 1.0), g.betas());
}

// Scaled difference matrix of g against gp relabeled by perm, on uniform
// normalized weights 1/n. Cut values are plain sums over S x T.
Matrix perm_diff_scaled(const WeightedGraph& g, const WeightedGraph& gp,
                        const std::vector<int>& perm) {
  const int n = g.n();
  const double ww = 1.0 / (static_cast<double>(n) * n);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = ww * (g.beta(i, j) - gp.beta(perm[i], perm[j]));
  return m;
}

double perm_cost(const WeightedGraph& g, const WeightedGraph& gp,
                 const std::vector<int>& perm, std::uint64_t seed) {
  const Matrix m = perm_diff_scaled(g, gp, perm);
  if (m.rows() <= 12) return detail::exact_cut_value(m);
  return detail::local_search_cut(m, seed, 2).value;
}

// First-improvement sweeps over transpositions until no swap lowers the cost.
double swap_descent(const WeightedGraph& g, const WeightedGraph& gp,
                    std::vector<int>& perm, double cur, std::uint64_t seed) {
  const int n = static_cast<int>(perm.size());
  bool improved = true;
  while (improved) {
    improved = false;
    for (int a = 0; a + 1 < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        std::swap(perm[a], perm[b]);
        const double v = perm_cost(g, gp, perm, seed);
        if (v < cur - 1e-15) {
          cur = v;
          improved = true;
        } else {
          std::swap(perm[a], perm[b]);
        }
      }
    }
  }
  return cur;
}

FractionalOverlay perm_overlay(int n, const std::vector<int>& perm) {
  Matrix x(n, n);
  for (int i = 0; i < n; ++i) x(i, perm[i]) = 1.0 / n;
  return FractionalOverlay(std::move(x));
}

void check_hat_inputs(const WeightedGraph& g, const WeightedGraph& gp) {
  if (g.n() != gp.n())
    throw InputError("permutation distance needs graphs of equal size");
  if (!uniform_weights(g) || !uniform_weights(gp))
    throw InputError("permutation distance needs uniform node weights");
}

DistanceResult finish_hat(const WeightedGraph& ug, const WeightedGraph& ugp,
                          std::vector<int> perm, DistKind kind, int threads) {
  CutOptions copts;
  copts.threads = threads;
  const CutNormResult cert = d_cut(ug, permuted(ugp, perm), CutMethod::automatic, copts);
  DistanceResult out;
  out.value = cert.upper;
  out.kind = cert.exact() ? kind : DistKind::upper_bound;
  out.witness = perm_overlay(ug.n(), perm);
  out.perm = std::move(perm);
  out.inner = cert.witness;
  return out;
}

DistanceResult delta_hat_exact(const WeightedGraph& ug, const WeightedGraph& ugp) {
  const int n = ug.n();
  if (n > 8) throw CapacityError("exact permutation distance limited to 8 nodes");
  std::vector<int> perm(n), best_perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  best_perm = perm;
  double best = perm_cost(ug, ugp, perm, 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    const double v = detail::exact_cut_value(perm_diff_scaled(ug, ugp, perm));
    if (v < best) {
      best = v;
      best_perm = perm;
    }
  }
  return finish_hat(ug, ugp, std::move(best_perm), DistKind::exact, 1);
}

DistanceResult delta_hat_anneal(const WeightedGraph& ug, const WeightedGraph& ugp,
                                const AnnealOptions& opts) {
  const int n = ug.n();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double cur = perm_cost(ug, ugp, perm, opts.seed);
  double best = cur;
  std::vector<int> best_perm = perm;

  Seed seed{opts.seed, {0xa11e}};
  auto rng = seed.rng();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, std::max(0, n - 1));
  const long long proposals =
      opts.proposals >= 0 ? opts.proposals : 50LL * n * n;
  double temp = opts.t0 > 0 ? opts.t0 : std::max(0.25 * cur, 1e-4);

  if (n >= 2) {
    for (int level = 0; level < opts.temp_levels; ++level) {
      for (long long p = 0; p < proposals; ++p) {
        const int a = pick(rng);
        int b = pick(rng);
        while (b == a) b = pick(rng);
        std::swap(perm[a], perm[b]);
        const double v = perm_cost(ug, ugp, perm, opts.seed);
        if (v <= cur || unif(rng) < std::exp((cur - v) / temp)) {
          cur = v;
          if (v < best) {
            best = v;
            best_perm = perm;
          }
        } else {
          std::swap(perm[a], perm[b]);
        }
      }
      temp *= opts.cooling;
    }
  }
  swap_descent(ug, ugp, best_perm, best, opts.seed);
  return finish_hat(ug, ugp, std::move(best_perm), DistKind::upper_bound, 1);
}

// Deterministic orientation for the symmetric distance: true when (g, gp) is
// already in canonical order.
bool ordered_pair(const WeightedGraph& g, const WeightedGraph& gp) {
  if (g.n() != gp.n()) return g.n() < gp.n();
  const std::vector<double> a = g.normalized_alphas();
  const std::vector<double> b = gp.normalized_alphas();
  for (int i = 0; i < g.n(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      if (g.beta(i, j) != gp.beta(i, j)) return g.beta(i, j) < gp.beta(i, j);
    }
  return true;
}

Matrix transposed(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Matrix product_coupling(const std::vector<double>& a, const std::vector<double>& b) {
  Matrix x(static_cast<int>(a.size()), static_cast<int>(b.size()));
  for (int i = 0; i < x.rows(); ++i)
    for (int u = 0; u < x.cols(); ++u) x(i, u) = a[i] * b[u];
  return x;
}

// Shared mass on the diagonal, leftovers routed by the northwest corner rule.
Matrix diagonal_nw_coupling(const std::vector<double>& a, const std::vector<double>& b) {
  const int n = static_cast<int>(a.size());
  Matrix x(n, n);
  std::vector<double> r = a, c = b;
  for (int i = 0; i < n; ++i) {
    const double d = std::min(r[i], c[i]);
    x(i, i) = d;
    r[i] -= d;
    c[i] -= d;
  }
  int i = 0, u = 0;
  while (i < n && u < n) {
    if (r[i] <= 1e-15) {
      ++i;
      continue;
    }
    if (c[u] <= 1e-15) {
      ++u;
      continue;
    }
    const double t = std::min(r[i], c[u]);
    x(i, u) += t;
    r[i] -= t;
    c[u] -= t;
  }
  return x;
}

struct PermSearch {
  std::vector<int> perm;
  double value = 0.0;
};

PermSearch blowup_perm_search(const WeightedGraph& gb, const WeightedGraph& gpb,
                              std::uint64_t seed, int restarts) {
  const int n = gb.n();
  PermSearch out;
  out.perm.resize(n);
  std::iota(out.perm.begin(), out.perm.end(), 0);
  if (n <= 8) {
    std::vector<int> perm = out.perm;
    out.value = detail::exact_cut_value(perm_diff_scaled(gb, gpb, perm));
    while (std::next_permutation(perm.begin(), perm.end())) {
      const double v = detail::exact_cut_value(perm_diff_scaled(gb, gpb, perm));
      if (v < out.value) {
        out.value = v;
        out.perm = perm;
      }
    }
    return out;
  }
  Seed s{seed, {0xb10b}};
  auto rng = s.rng();
  out.value = swap_descent(gb, gpb, out.perm, perm_cost(gb, gpb, out.perm, seed), seed);
  for (int r = 1; r < std::max(1, restarts); ++r) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const double v =
        swap_descent(gb, gpb, perm, perm_cost(gb, gpb, perm, seed), seed);
    if (v < out.value) {
      out.value = v;
      out.perm = std::move(perm);
    }
  }
  return out;
}

struct Candidate {
  std::string name;
  Matrix X;
};

void add_blowup_candidates(const WeightedGraph& g, const WeightedGraph& gp,
                           const DeltaOptions& opts, std::vector<Candidate>& out) {
  if (!uniform_weights(g) || !uniform_weights(gp)) return;
  const int n = g.n(), np = gp.n();
  const long long lcm = std::lcm(static_cast<long long>(n), static_cast<long long>(np));
  const long long cap = std::min(opts.max_blowup_nodes, 12);
  for (long long size = lcm; size <= cap; size += lcm) {
    const int k = static_cast<int>(size / n);
    const int kp = static_cast<int>(size / np);
    const WeightedGraph gb = blow_up(unit_weighted(g), k);
    const WeightedGraph gpb = blow_up(unit_weighted(gp), kp);
    const PermSearch found =
        blowup_perm_search(gb, gpb, opts.seed + static_cast<std::uint64_t>(size),
                           opts.descent_restarts);
    Matrix x(n, np);
    const double mass = 1.0 / static_cast<double>(size);
    for (int node = 0; node < static_cast<int>(size); ++node)
      x(node / k, found.perm[node] / kp) += mass;
    out.push_back({"blowup" + std::to_string(size), std::move(x)});
  }
}

struct WitnessSets {
  std::vector<char> in_s, in_t;  // over the full (i, u) grid, index i * np + u

  bool operator==(const WitnessSets& o) const { return in_s == o.in_s && in_t == o.in_t; }
};

double witness_form(const Matrix& x, const WeightedGraph& g, const WeightedGraph& gp,
                    const WitnessSets& w) {
  const int n = x.rows(), np = x.cols();
  std::vector<double> p(n, 0.0), q(n, 0.0), r(np, 0.0), s(np, 0.0);
  for (int i = 0; i < n; ++i)
    for (int u = 0; u < np; ++u) {
      const int idx = i * np + u;
      if (w.in_s[idx]) {
        p[i] += x(i, u);
        r[u] += x(i, u);
      }
      if (w.in_t[idx]) {
        q[i] += x(i, u);
        s[u] += x(i, u);
      }
    }
  double first = 0.0, second = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) first += g.beta(i, j) * p[i] * q[j];
  for (int u = 0; u < np; ++u)
    for (int v = 0; v < np; ++v) second += gp.beta(u, v) * r[u] * s[v];
  return first - second;
}

Matrix witness_gradient(const Matrix& x, const WeightedGraph& g, const WeightedGraph& gp,
                        const WitnessSets& w) {
  const int n = x.rows(), np = x.cols();
  std::vector<double> p(n, 0.0), q(n, 0.0), r(np, 0.0), s(np, 0.0);
  for (int i = 0; i < n; ++i)
    for (int u = 0; u < np; ++u) {
      const int idx = i * np + u;
      if (w.in_s[idx]) {
        p[i] += x(i, u);
        r[u] += x(i, u);
      }
      if (w.in_t[idx]) {
        q[i] += x(i, u);
        s[u] += x(i, u);
      }
    }
  std::vector<double> gq(n, 0.0), gp_(n, 0.0), hs(np, 0.0), hr(np, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      gq[i] += g.beta(i, j) * q[j];
      gp_[i] += g.beta(i, j) * p[j];
    }
  for (int u = 0; u < np; ++u)
    for (int v = 0; v < np; ++v) {
      hs[u] += gp.beta(u, v) * s[v];
      hr[u] += gp.beta(u, v) * r[v];
    }
  Matrix grad(n, np);
  for (int i = 0; i < n; ++i)
    for (int u = 0; u < np; ++u) {
      const int idx = i * np + u;
      double v = 0.0;
      if (w.in_s[idx]) v += gq[i] - hs[u];
      if (w.in_t[idx]) v += gp_[i] - hr[u];
      grad(i, u) = v;
    }
  return grad;
}

// Project back onto the transportation polytope: alternating affine row and
// column corrections with clipping, then a Sinkhorn polish on a positive
// blend if the marginals are still off.
bool repair_marginals(Matrix& x, const std::vector<double>& a, const std::vector<double>& b) {
  const int n = x.rows(), np = x.cols();
  auto marginal_error = [&] {
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int u = 0; u < np; ++u) row += x(i, u);
      err = std::max(err, std::abs(row - a[i]));
    }
    for (int u = 0; u < np; ++u) {
      double col = 0.0;
      for (int i = 0; i < n; ++i) col += x(i, u);
      err = std::max(err, std::abs(col - b[u]));
    }
    return err;
  };
  for (int round = 0; round < 60; ++round) {
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int u = 0; u < np; ++u) row += x(i, u);
      const double fix = (a[i] - row) / np;
      for (int u = 0; u < np; ++u) x(i, u) += fix;
    }
    for (int u = 0; u < np; ++u) {
      double col = 0.0;
      for (int i = 0; i < n; ++i) col += x(i, u);
      const double fix = (b[u] - col) / n;
      for (int i = 0; i < n; ++i) x(i, u) += fix;
    }
    for (int i = 0; i < n; ++i)
      for (int u = 0; u < np; ++u) x(i, u) = std::max(x(i, u), 0.0);
    if (marginal_error() < 1e-13) return true;
  }
  if (marginal_error() < 1e-10) return true;
  for (int i = 0; i < n; ++i)
    for (int u = 0; u < np; ++u)
      x(i, u) = 0.999 * std::max(x(i, u), 0.0) + 0.001 * a[i] * b[u];
  for (int round = 0; round < 2000; ++round) {
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int u = 0; u < np; ++u) row += x(i, u);
      if (row > 0) {
        const double f = a[i] / row;
        for (int u = 0; u < np; ++u) x(i, u) *= f;
      }
    }
    for (int u = 0; u < np; ++u) {
      double col = 0.0;
      for (int i = 0; i < n; ++i) col += x(i, u);
      if (col > 0) {
        const double f = b[u] / col;
        for (int i = 0; i < n; ++i) x(i, u) *= f;
      }
    }
    if (marginal_error() < 1e-12) return true;
  }
  return marginal_error() < 1e-9;
}

struct Evaluated {
  double value = 0.0;
  Matrix X{0, 0};
};

// Subgradient descent on the maximum of the active cut witnesses, repaired to
// the polytope each step; keeps whichever iterate certifies best.
Evaluated refine_coupling(const WeightedGraph& g, const WeightedGraph& gp, Matrix x,
                          double start_value, const DeltaOptions& opts) {
  const std::vector<double> a = g.normalized_alphas();
  const std::vector<double> b = gp.normalized_alphas();
  const int n = g.n(), np = gp.n();
  Evaluated best{start_value, x};
  std::vector<WitnessSets> active;
  CutOptions copts;
  copts.seed = opts.seed;
  copts.threads = opts.threads;
  int stall = 0;
  for (int iter = 0; iter < opts.refine_iters; ++iter) {
    const OverlayPair pair = overlay_graphs(g, gp, FractionalOverlay(x));
    const CutNormResult res =
        cut_norm(difference_kernel(pair.first, pair.second), CutMethod::automatic, copts);
    if (res.upper < best.value - 1e-12) {
      best.value = res.upper;
      best.X = x;
      stall = 0;
    } else if (++stall > 5) {
      break;
    }
    WitnessSets w;
    w.in_s.assign(static_cast<size_t>(n) * np, 0);
    w.in_t.assign(static_cast<size_t>(n) * np, 0);
    for (const int c : res.witness.S) {
      const auto [i, u] = pair.labels[c];
      w.in_s[i * np + u] = 1;
    }
    for (const int c : res.witness.T) {
      const auto [i, u] = pair.labels[c];
      w.in_t[i * np + u] = 1;
    }
    if (std::find(active.begin(), active.end(), w) == active.end()) {
      active.push_back(std::move(w));
      if (active.size() > 8) active.erase(active.begin());
    }

    int star = 0;
    double phi = -1.0;
    for (size_t wi = 0; wi < active.size(); ++wi) {
      const double f = std::abs(witness_form(x, g, gp, active[wi]));
      if (f > phi) {
        phi = f;
        star = static_cast<int>(wi);
      }
    }
    if (phi < 1e-14) break;
    const double fstar = witness_form(x, g, gp, active[star]);
    Matrix grad = witness_gradient(x, g, gp, active[star]);
    const double sgn = fstar >= 0 ? 1.0 : -1.0;
    double gnorm2 = 0.0;
    for (int i = 0; i < n; ++i)
      for (int u = 0; u < np; ++u) gnorm2 += grad(i, u) * grad(i, u);
    if (gnorm2 < 1e-18) break;
    double eta = 0.5 * phi / gnorm2;
    bool stepped = false;
    for (int tries = 0; tries < 7 && !stepped; ++tries, eta *= 0.5) {
      Matrix xn = x;
      for (int i = 0; i < n; ++i)
        for (int u = 0; u < np; ++u) xn(i, u) -= eta * sgn * grad(i, u);
      if (!repair_marginals(xn, a, b)) continue;
      double phin = 0.0;
      for (const auto& w : active)
        phin = std::max(phin, std::abs(witness_form(xn, g, gp, w)));
      if (phin < phi - 1e-12) {
        x = std::move(xn);
        stepped = true;
      }
    }
    if (!stepped) break;
  }
  return best;
}

int oracle_auto_steps(int n, int np) {
  const int d = (n - 1) * (np - 1);
  if (d <= 0) return 1;
  if (d == 1) return 2000;
  if (d == 2) return 160;
  return 14;
}

DistanceResult delta_cut_oriented(const WeightedGraph& g, const WeightedGraph& gp,
                                  const DeltaOptions& opts, Matrix& chosen) {
  const std::vector<double> a = g.normalized_alphas();
  const std::vector<double> b = gp.normalized_alphas();

  std::vector<Candidate> candidates;
  candidates.push_back({"product", product_coupling(a, b)});
  if (g.n() == gp.n()) candidates.push_back({"diagonal", diagonal_nw_coupling(a, b)});
  add_blowup_candidates(g, gp, opts, candidates);
  for (size_t e = 0; e < opts.extra_couplings.size(); ++e) {
    FractionalOverlay x(opts.extra_couplings[e]);
    validate_overlay(x, g, gp);
    candidates.push_back({"extra" + std::to_string(e), std::move(x.X)});
  }

  CutOptions copts;
  copts.seed = opts.seed;
  copts.threads = opts.threads;
  double best = 0.0;
  int best_idx = -1;
  for (size_t ci = 0; ci < candidates.size(); ++ci) {
    const CutNormResult res =
        overlay_cost(g, gp, FractionalOverlay(candidates[ci].X), CutMethod::automatic, copts);
    if (best_idx < 0 || res.upper < best) {
      best = res.upper;
      best_idx = static_cast<int>(ci);
    }
  }

  Evaluated refined{best, candidates[best_idx].X};
  if (opts.refine_iters > 0)
    refined = refine_coupling(g, gp, candidates[best_idx].X, best, opts);

  chosen = std::move(refined.X);
  DistanceResult out;
  out.value = refined.value;
  return out;
}

}  // namespace

void validate_overlay(const FractionalOverlay& x, const WeightedGraph& g,
                      const WeightedGraph& gp) {
  if (x.rows() != g.n() || x.cols() != gp.n())
    throw InputError("overlay dimensions do not match the graphs");
  const std::vector<double> a = g.normalized_alphas();
  const std::vector<double> b = gp.normalized_alphas();
  for (int i = 0; i < x.rows(); ++i)
    for (int u = 0; u < x.cols(); ++u)
      if (x.X(i, u) < -kOverlayTol) throw InputError("overlay entry is negative");
  for (int i = 0; i < x.rows(); ++i) {
    double row = 0.0;
    for (int u = 0; u < x.cols(); ++u) row += x.X(i, u);
    if (std::abs(row - a[i]) > kOverlayTol)
      throw InputError("overlay row sum does not match the node weight");
  }
  for (int u = 0; u < x.cols(); ++u) {
    double col = 0.0;
    for (int i = 0; i < x.rows(); ++i) col += x.X(i, u);
    if (std::abs(col - b[u]) > kOverlayTol)
      throw InputError("overlay column sum does not match the node weight");
  }
}

OverlayPair overlay_graphs(const WeightedGraph& g, const WeightedGraph& gp,
                           const FractionalOverlay& x) {
  validate_overlay(x, g, gp);
  std::vector<std::pair<int, int>> labels;
  std::vector<double> weights;
  for (int i = 0; i < x.rows(); ++i)
    for (int u = 0; u < x.cols(); ++u)
      if (x.X(i, u) > 0.0) {
        labels.emplace_back(i, u);
        weights.push_back(x.X(i, u));
      }
  const int m = static_cast<int>(labels.size());
  if (m == 0) throw InputError("overlay has no positive entries");
  Matrix bg(m, m), bgp(m, m);
  for (int c = 0; c < m; ++c)
    for (int d = 0; d < m; ++d) {
      bg(c, d) = g.beta(labels[c].first, labels[d].first);
      bgp(c, d) = gp.beta(labels[c].second, labels[d].second);
    }
  OverlayPair out{WeightedGraph(weights, std::move(bg)),
                  WeightedGraph(weights, std::move(bgp)), std::move(labels)};
  return out;
}

CutNormResult overlay_cost(const WeightedGraph& g, const WeightedGraph& gp,
                           const FractionalOverlay& x, CutMethod method,
                           const CutOptions& opts) {
  const OverlayPair pair = overlay_graphs(g, gp, x);
  return cut_norm(difference_kernel(pair.first, pair.second), method, opts);
}

DistanceResult delta_hat(const WeightedGraph& g, const WeightedGraph& gp,
                         DeltaHatMethod method, const AnnealOptions& opts) {
  check_hat_inputs(g, gp);
  const WeightedGraph ug = unit_weighted(g);
  const WeightedGraph ugp = unit_weighted(gp);
  if (method == DeltaHatMethod::automatic)
    method = ug.n() <= 8 ? DeltaHatMethod::exact : DeltaHatMethod::anneal;
  if (method == DeltaHatMethod::exact) return delta_hat_exact(ug, ugp);
  return delta_hat_anneal(ug, ugp, opts);
}

DistanceResult delta_cut(const WeightedGraph& g, const WeightedGraph& gp,
                         const DeltaOptions& opts) {
  const bool keep = ordered_pair(g, gp);
  Matrix chosen(0, 0);
  if (keep) {
    delta_cut_oriented(g, gp, opts, chosen);
  } else {
    DeltaOptions swapped = opts;
    swapped.extra_couplings.clear();
    for (const Matrix& m : opts.extra_couplings) swapped.extra_couplings.push_back(transposed(m));
    delta_cut_oriented(gp, g, swapped, chosen);
    chosen = transposed(chosen);
  }

  CutOptions copts;
  copts.seed = opts.seed;
  copts.threads = opts.threads;
  const FractionalOverlay witness(std::move(chosen));
  const CutNormResult final_res = overlay_cost(g, gp, witness, CutMethod::automatic, copts);

  DistanceResult out;
  out.value = final_res.upper;
  out.witness = witness;
  out.inner = final_res.witness;
  out.kind = DistKind::upper_bound;
  if (opts.confirm_with_oracle && g.n() <= 3 && gp.n() <= 3) {
    const OracleResult oracle =
        delta_cut_oracle(g, gp, oracle_auto_steps(g.n(), gp.n()));
    if (std::abs(out.value - oracle.upper) <= 1e-3) out.kind = DistKind::exact;
  }
  return out;
}

OracleResult delta_cut_oracle(const WeightedGraph& g, const WeightedGraph& gp,
                              int grid_steps) {
  if (g.n() > 3 || gp.n() > 3)
    throw CapacityError("overlay grid oracle limited to 3 nodes per side");
  if (grid_steps < 1) throw InputError("grid_steps must be positive");
  const int n = g.n(), np = gp.n();
  const std::vector<double> a = g.normalized_alphas();
  const std::vector<double> b = gp.normalized_alphas();

  std::vector<std::pair<int, int>> free_vars;
  for (int i = 0; i + 1 < n; ++i)
    for (int u = 0; u + 1 < np; ++u) free_vars.emplace_back(i, u);
  const int d = static_cast<int>(free_vars.size());
  std::vector<double> step(d);
  double step_sum = 0.0;
  for (int f = 0; f < d; ++f) {
    const auto [i, u] = free_vars[f];
    step[f] = std::min(a[i], b[u]) / grid_steps;
    step_sum += step[f];
  }
  const double slack = 0.5 * step_sum + 1e-12;

  double max_beta = -1e300, min_beta = 1e300, max_betap = -1e300, min_betap = 1e300;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      max_beta = std::max(max_beta, g.beta(i, j));
      min_beta = std::min(min_beta, g.beta(i, j));
    }
  for (int u = 0; u < np; ++u)
    for (int v = 0; v < np; ++v) {
      max_betap = std::max(max_betap, gp.beta(u, v));
      min_betap = std::min(min_betap, gp.beta(u, v));
    }
  const double max_diff = std::max(max_beta - min_betap, max_betap - min_beta);

  OracleResult out;
  out.upper = 1e300;
  std::vector<int> idx(d, 0);
  Matrix x(n, np);
  while (true) {
    bool feasible = true;
    for (int i = 0; i < n; ++i)
      for (int u = 0; u < np; ++u) x(i, u) = 0.0;
    for (int f = 0; f < d; ++f) x(free_vars[f].first, free_vars[f].second) = idx[f] * step[f];
    for (int i = 0; i + 1 < n; ++i) {
      double row = 0.0;
      for (int u = 0; u + 1 < np; ++u) row += x(i, u);
      x(i, np - 1) = a[i] - row;
      if (x(i, np - 1) < -slack) feasible = false;
    }
    for (int u = 0; u + 1 < np; ++u) {
      double col = 0.0;
      for (int i = 0; i + 1 < n; ++i) col += x(i, u);
      x(n - 1, u) = b[u] - col;
      if (x(n - 1, u) < -slack) feasible = false;
    }
    {
      double row = 0.0;
      for (int u = 0; u + 1 < np; ++u) row += x(n - 1, u);
      x(n - 1, np - 1) = a[n - 1] - row;
      if (x(n - 1, np - 1) < -slack) feasible = false;
    }
    if (feasible) {
      std::vector<double> w;
      std::vector<int> li, lu;
      double total = 0.0;
      for (int i = 0; i < n; ++i)
        for (int u = 0; u < np; ++u)
          if (x(i, u) > 0.0) {
            w.push_back(x(i, u));
            li.push_back(i);
            lu.push_back(u);
            total += x(i, u);
          }
      const int m = static_cast<int>(w.size());
      if (m > 0 && total > 0.0) {
        Matrix sm(m, m);
        for (int c = 0; c < m; ++c)
          for (int e = 0; e < m; ++e)
            sm(c, e) = (w[c] / total) * (w[e] / total) *
                       (g.beta(li[c], li[e]) - gp.beta(lu[c], lu[e]));
        const double v = detail::exact_cut_value(sm);
        if (v < out.upper) {
          out.upper = v;
          Matrix clamped = x;
          for (int i = 0; i < n; ++i)
            for (int u = 0; u < np; ++u) clamped(i, u) = std::max(clamped(i, u), 0.0);
          out.argmin = FractionalOverlay(std::move(clamped));
        }
      }
    }
    int f = 0;
    while (f < d && ++idx[f] > grid_steps) idx[f++] = 0;
    if (f == d) break;
    if (d == 0) break;
  }
  const double e = 5.0 * step_sum;
  out.bracket = std::max(0.0, max_diff) * e * (2.0 + e);
  return out;
}

FractionalOverlay compose_overlays(const FractionalOverlay& xab,
                                   const std::vector<double>& middle_normalized,
                                   const FractionalOverlay& xbc) {
  if (xab.cols() != static_cast<int>(middle_normalized.size()) ||
      xbc.rows() != static_cast<int>(middle_normalized.size()))
    throw InputError("overlay composition dimensions do not match");
  for (const double w : middle_normalized)
    if (!(w > 0)) throw InputError("middle weights must be positive");
  Matrix x(xab.rows(), xbc.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int w = 0; w < x.cols(); ++w) {
      double s = 0.0;
      for (int u = 0; u < xab.cols(); ++u)
        s += xab.X(i, u) * xbc.X(u, w) / middle_normalized[u];
      x(i, w) = s;
    }
  return FractionalOverlay(std::move(x));
}

}  // namespace graphlim
