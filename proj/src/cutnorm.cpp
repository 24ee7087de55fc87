#include "graphlim/cutnorm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <numeric>

namespace graphlim {

namespace {

constexpr double kWeightMatchTol = 1e-12;

Matrix scaled_matrix(const Kernel& k) {
  const int n = k.n();
  const std::vector<double> w = k.normalized_alphas();
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = w[i] * w[j] * k.values(i, j);
  return m;
}

struct ScanBest {
  double value = 0.0;
  std::uint64_t gray = 0;  // subset S as a bitmask
  int sign = 1;            // +1: positive-part T, -1: negative-part T

  void offer(double v, std::uint64_t g, int s) {
    if (v > value || (v == value && g < gray)) {
      value = v;
      gray = g;
      sign = s;
    }
  }
};

// Scan Gray-code steps g in [lo, hi) starting from subset state gray(lo-1).
ScanBest scan_subsets(const Matrix& m, std::uint64_t lo, std::uint64_t hi) {
  const int n = m.rows();
  std::vector<double> c(n, 0.0);
  std::uint64_t state = (lo - 1) ^ ((lo - 1) >> 1);
  for (int i = 0; i < n; ++i)
    if (state >> i & 1)
      for (int j = 0; j < n; ++j) c[j] += m(i, j);

  ScanBest best;
  if (lo == 1) {  // account for the empty set (value 0, gray 0)
    best.offer(0.0, 0, 1);
  } else {
    double p = 0.0, q = 0.0;
    for (int j = 0; j < n; ++j) c[j] > 0 ? p += c[j] : q -= c[j];
    best.offer(p, state, 1);
    best.offer(q, state, -1);
  }
  for (std::uint64_t g = lo; g < hi; ++g) {
    const int flip = std::countr_zero(g);
    state ^= 1ULL << flip;
    const double sgn = (state >> flip & 1) ? 1.0 : -1.0;
    double p = 0.0, q = 0.0;
    for (int j = 0; j < n; ++j) {
      c[j] += sgn * m(flip, j);
      c[j] > 0 ? p += c[j] : q -= c[j];
    }
    best.offer(p, state, 1);
    best.offer(q, state, -1);
  }
  return best;
}

CutWitness witness_from_state(const Matrix& m, const ScanBest& best) {
  const int n = m.rows();
  CutWitness w;
  std::vector<double> c(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (best.gray >> i & 1) {
      w.S.push_back(i);
      for (int j = 0; j < n; ++j) c[j] += m(i, j);
    }
  }
  for (int j = 0; j < n; ++j)
    if (best.sign * c[j] > 0) w.T.push_back(j);
  w.value = best.value;
  return w;
}

CutNormResult exact_cut_scaled(const Matrix& m, int threads) {
  const int n = m.rows();
  const std::uint64_t total = 1ULL << n;
  ScanBest best;
  threads = std::max(1, threads);
  if (threads == 1 || total < 1024) {
    best = scan_subsets(m, 1, total);
  } else {
    const std::uint64_t chunk = (total - 1) / threads + 1;
    std::vector<std::future<ScanBest>> futs;
    for (int t = 0; t < threads; ++t) {
      const std::uint64_t lo = std::max<std::uint64_t>(1, t * chunk);
      const std::uint64_t hi = std::min(total, (t + 1) * chunk);
      if (lo >= hi) continue;
      futs.push_back(std::async(std::launch::async,
                                [&m, lo, hi] { return scan_subsets(m, lo, hi); }));
    }
    for (auto& f : futs) {
      const ScanBest b = f.get();
      best.offer(b.value, b.gray, b.sign);
    }
  }
  CutNormResult out;
  out.witness = witness_from_state(m, best);
  out.lower = out.upper = best.value;
  return out;
}

// Local search over single-node flips of (S, T), maximizing |cut|.
struct LocalState {
  const Matrix& m;
  int n;
  std::vector<char> in_s, in_t;
  std::vector<double> row_t, col_s;  // row_t[i] = sum_{j in T} m(i,j)
  double val = 0.0;

  explicit LocalState(const Matrix& mm)
      : m(mm), n(mm.rows()), in_s(n, 0), in_t(n, 0), row_t(n, 0.0), col_s(n, 0.0) {}

  void reset(const std::vector<char>& s, const std::vector<char>& t) {
    in_s = s;
    in_t = t;
    std::fill(row_t.begin(), row_t.end(), 0.0);
    std::fill(col_s.begin(), col_s.end(), 0.0);
    val = 0.0;
    for (int i = 0; i < n; ++i)
      if (in_s[i])
        for (int j = 0; j < n; ++j) col_s[j] += m(i, j);
    for (int j = 0; j < n; ++j)
      if (in_t[j]) {
        for (int i = 0; i < n; ++i) row_t[i] += m(i, j);
        val += col_s[j];
      }
  }

  void flip_s(int i) {
    const double sgn = in_s[i] ? -1.0 : 1.0;
    in_s[i] ^= 1;
    val += sgn * row_t[i];
    for (int j = 0; j < n; ++j) col_s[j] += sgn * m(i, j);
  }

  void flip_t(int j) {
    const double sgn = in_t[j] ? -1.0 : 1.0;
    in_t[j] ^= 1;
    val += sgn * col_s[j];
    for (int i = 0; i < n; ++i) row_t[i] += sgn * m(i, j);
  }

  // First-improvement sweeps until a local optimum of |val|.
  void descend() {
    for (int sweep = 0; sweep < 4 * n + 64; ++sweep) {
      bool improved = false;
      for (int i = 0; i < n; ++i) {
        const double d = (in_s[i] ? -1.0 : 1.0) * row_t[i];
        if (std::abs(val + d) > std::abs(val) + 1e-15) {
          flip_s(i);
          improved = true;
        }
      }
      for (int j = 0; j < n; ++j) {
        const double d = (in_t[j] ? -1.0 : 1.0) * col_s[j];
        if (std::abs(val + d) > std::abs(val) + 1e-15) {
          flip_t(j);
          improved = true;
        }
      }
      if (!improved) break;
    }
  }
};

std::vector<double> top_eigenvector(const Matrix& m) {
  const int n = m.rows();
  std::vector<double> v(n), next(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.01 * ((i * 2654435761u >> 16 & 0xff) / 255.0);
  for (int it = 0; it < 60; ++it) {
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += m(i, j) * v[j];
      next[i] = s;
      norm += s * s;
    }
    norm = std::sqrt(norm);
    if (norm < 1e-300) break;
    for (int i = 0; i < n; ++i) v[i] = next[i] / norm;
  }
  return v;
}

CutWitness heuristic_lower_scaled(const Matrix& m, const CutOptions& opts) {
  const int n = m.rows();
  LocalState ls(m);
  CutWitness best;
  auto consider = [&](const std::vector<char>& s0, const std::vector<char>& t0) {
    ls.reset(s0, t0);
    ls.descend();
    if (std::abs(ls.val) > best.value) {
      best.value = std::abs(ls.val);
      best.S.clear();
      best.T.clear();
      for (int i = 0; i < n; ++i) {
        if (ls.in_s[i]) best.S.push_back(i);
        if (ls.in_t[i]) best.T.push_back(i);
      }
    }
  };

  const std::vector<double> v = top_eigenvector(m);
  std::vector<char> pos(n, 0), neg(n, 0), all(n, 1);
  for (int i = 0; i < n; ++i) {
    pos[i] = v[i] > 0;
    neg[i] = v[i] < 0;
  }
  consider(pos, pos);
  consider(pos, neg);
  consider(neg, neg);
  consider(all, all);

  std::mt19937_64 rng = Seed{opts.seed, {0x6c75}}.rng();
  std::vector<char> s(n), t(n);
  for (int r = 0; r < opts.restarts; ++r) {
    for (int i = 0; i < n; ++i) {
      s[i] = static_cast<char>(rng() & 1);
      t[i] = static_cast<char>(rng() & 1);
    }
    consider(s, t);
  }
  return best;
}

double l1_scaled(const Matrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += std::abs(m(i, j));
  return s;
}

}  // namespace

Kernel::Kernel(std::vector<double> a, Matrix v) : alpha(std::move(a)), values(std::move(v)) {
  const int n = static_cast<int>(alpha.size());
  if (n < 1) throw InputError("Kernel: need at least one node");
  if (values.rows() != n || values.cols() != n) throw InputError("Kernel: values must be n x n");
  for (double x : alpha)
    if (!(x > 0.0) || !std::isfinite(x)) throw InputError("Kernel: weights must be positive");
  if (!values.is_symmetric(1e-12)) throw InputError("Kernel: values not symmetric");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) values(j, i) = values(i, j);
}

double Kernel::total_weight() const {
  return std::accumulate(alpha.begin(), alpha.end(), 0.0);
}

std::vector<double> Kernel::normalized_alphas() const {
  const double tot = total_weight();
  std::vector<double> w(alpha);
  for (double& x : w) x /= tot;
  return w;
}

Kernel kernel_of(const WeightedGraph& g) { return Kernel(g.alphas(), g.betas()); }

Kernel difference_kernel(const WeightedGraph& g, const WeightedGraph& gp) {
  const int n = g.n();
  if (gp.n() != n) throw InputError("difference_kernel: node counts differ");
  for (int i = 0; i < n; ++i)
    if (std::abs(g.alpha(i) - gp.alpha(i)) > kWeightMatchTol)
      throw InputError("difference_kernel: node weights differ");
  Matrix d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d(i, j) = g.beta(i, j) - gp.beta(i, j);
  return Kernel(g.alphas(), std::move(d));
}

CutNormResult cut_norm(const Kernel& k, CutMethod method, const CutOptions& opts) {
  const int n = k.n();
  if (method == CutMethod::automatic)
    method = n <= kCutExactCap ? CutMethod::exact : CutMethod::heuristic;
  const Matrix m = scaled_matrix(k);
  if (method == CutMethod::exact) {
    if (n > kCutExactCap) throw CapacityError("cut_norm: exact method requires n <= 26");
    return exact_cut_scaled(m, opts.threads);
  }
  CutNormResult out;
  out.witness = heuristic_lower_scaled(m, opts);
  out.lower = out.witness.value;
  out.upper = std::min(l1_scaled(m), trace_c4_norm(k));
  out.upper = std::max(out.upper, out.lower);
  return out;
}

double inf_to_one_norm(const Kernel& k) {
  const int n = k.n();
  if (n > kCutExactCap) throw CapacityError("inf_to_one_norm: n <= 26 required");
  const Matrix m = scaled_matrix(k);
  std::vector<double> c(n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) c[j] += m(i, j);  // x = all +1
  double best = 0.0;
  {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += std::abs(c[j]);
    best = s;
  }
  std::uint64_t state = 0;  // bit i set: x_i = -1
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t g = 1; g < total; ++g) {
    const int flip = std::countr_zero(g);
    state ^= 1ULL << flip;
    const double sgn = (state >> flip & 1) ? -2.0 : 2.0;
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      c[j] += sgn * m(flip, j);
      s += std::abs(c[j]);
    }
    best = std::max(best, s);
  }
  return best;
}

double trace_c4_norm(const Kernel& k) {
  const int n = k.n();
  const std::vector<double> w = k.normalized_alphas();
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const double si = std::sqrt(w[i]);
    for (int j = 0; j < n; ++j) m(i, j) = si * std::sqrt(w[j]) * k.values(i, j);
  }
  Matrix a(n, n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      const double mil = m(i, l);
      if (mil == 0.0) continue;
      for (int j = 0; j < n; ++j) a(i, j) += mil * m(l, j);
    }
  double tr = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) tr += a(i, j) * a(i, j);
  return std::pow(std::max(tr, 0.0), 0.25);
}

namespace {

// Invert the minor P[F][F] by Gauss-Jordan with partial pivoting; false when
// the minor is numerically singular (the caller then skips that face, whose
// optima are matched on subfaces).
bool invert_minor(const Matrix& P, const std::vector<int>& F, Matrix& inv) {
  const int k = static_cast<int>(F.size());
  Matrix a(k, 2 * k);
  double scale = 1e-300;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      a(i, j) = P(F[i], F[j]);
      scale = std::max(scale, std::abs(a(i, j)));
    }
    a(i, k + i) = 1.0;
  }
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) < 1e-11 * scale) return false;
    if (piv != col)
      for (int j = 0; j < 2 * k; ++j) std::swap(a(piv, j), a(col, j));
    const double d = a(col, col);
    for (int j = 0; j < 2 * k; ++j) a(col, j) /= d;
    for (int r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < 2 * k; ++j) a(r, j) -= f * a(col, j);
    }
  }
  inv = Matrix(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) inv(i, j) = a(i, k + j);
  return true;
}

// Exact max of s^T P s + q^T s over the box [0,1]^n, P symmetric. Some global
// optimum keeps its fractional coordinates F inside {i : P(i,i) < 0} and is
// stationary on F with an invertible minor (zero-curvature directions slide to
// the boundary at constant value), so enumerating F together with the 0/1
// assignment of the remaining coordinates is exhaustive.
double box_quad_best(const Matrix& P, const std::vector<double>& q) {
  const int n = P.rows();
  std::vector<int> neg;
  for (int i = 0; i < n; ++i)
    if (P(i, i) < 0.0) neg.push_back(i);
  const int dn = static_cast<int>(neg.size());
  double best = 0.0;
  std::vector<int> F, rest;
  std::vector<char> in_f(n);
  std::vector<double> colsum(n), b, x;
  Matrix inv(0, 0);
  for (std::uint32_t fm = 0; fm < (1u << dn); ++fm) {
    F.clear();
    rest.clear();
    std::fill(in_f.begin(), in_f.end(), 0);
    for (int i = 0; i < dn; ++i)
      if (fm >> i & 1) {
        F.push_back(neg[i]);
        in_f[neg[i]] = 1;
      }
    for (int i = 0; i < n; ++i)
      if (!in_f[i]) rest.push_back(i);
    const int k = static_cast<int>(F.size());
    if (k > 0 && !invert_minor(P, F, inv)) continue;
    b.assign(k, 0.0);
    x.assign(k, 0.0);
    std::fill(colsum.begin(), colsum.end(), 0.0);
    double cvert = 0.0;
    const int r = static_cast<int>(rest.size());
    std::uint64_t state = 0;
    const std::uint64_t total = 1ULL << r;
    for (std::uint64_t g = 0; g < total; ++g) {
      if (g > 0) {
        const int flip = std::countr_zero(g);
        const int v = rest[flip];
        if (state >> flip & 1) {
          for (int i = 0; i < n; ++i) colsum[i] -= P(i, v);
          cvert -= 2.0 * colsum[v] + P(v, v) + q[v];
        } else {
          cvert += 2.0 * colsum[v] + P(v, v) + q[v];
          for (int i = 0; i < n; ++i) colsum[i] += P(i, v);
        }
        state ^= 1ULL << flip;
      }
      if (k == 0) {
        best = std::max(best, cvert);
        continue;
      }
      for (int i = 0; i < k; ++i) b[i] = colsum[F[i]] + 0.5 * q[F[i]];
      bool feasible = true;
      for (int i = 0; i < k; ++i) {
        double s = 0.0;
        for (int j = 0; j < k; ++j) s -= inv(i, j) * b[j];
        if (s < -1e-9 || s > 1.0 + 1e-9) {
          feasible = false;
          break;
        }
        x[i] = std::clamp(s, 0.0, 1.0);
      }
      if (!feasible) continue;
      double val = cvert;
      for (int i = 0; i < k; ++i) val += 2.0 * b[i] * x[i];
      for (int i = 0; i < k; ++i) {
        double s = 0.0;
        for (int j = 0; j < k; ++j) s += P(F[i], F[j]) * x[j];
        val += x[i] * s;
      }
      best = std::max(best, val);
    }
  }
  return best;
}

// Exact max over fractional disjoint (S, T) of |sum m(i,j) s_i t_j| where per
// node (s_i, t_i) ranges over the triangle s,t >= 0, s+t <= 1. At an optimum
// of the signed objective each node is out, fully in S, fully in T, or split
// as (x, 1-x) with a sign-matching diagonal entry and stationary x, so the
// state patterns below are exhaustive.
double disjoint_best(const Matrix& m) {
  const int n = m.rows();
  double best = 0.0;
  std::vector<int> F, rest, pos;
  std::vector<char> in_f(n);
  std::vector<double> sb(n), tb(n), rf, b, x;
  std::vector<int> digit, dir;
  Matrix inv(0, 0);
  for (int sgn = 0; sgn < 2; ++sgn) {
    const double sigma = sgn ? -1.0 : 1.0;
    pos.clear();
    for (int i = 0; i < n; ++i)
      if (sigma * m(i, i) > 0.0) pos.push_back(i);
    const int dn = static_cast<int>(pos.size());
    for (std::uint32_t fm = 0; fm < (1u << dn); ++fm) {
      F.clear();
      rest.clear();
      std::fill(in_f.begin(), in_f.end(), 0);
      for (int i = 0; i < dn; ++i)
        if (fm >> i & 1) {
          F.push_back(pos[i]);
          in_f[pos[i]] = 1;
        }
      for (int i = 0; i < n; ++i)
        if (!in_f[i]) rest.push_back(i);
      const int k = static_cast<int>(F.size());
      if (k > 0 && !invert_minor(m, F, inv)) continue;
      rf.assign(k, 0.0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) rf[i] += m(F[i], F[j]);
      b.assign(k, 0.0);
      x.assign(k, 0.0);
      std::fill(sb.begin(), sb.end(), 0.0);
      std::fill(tb.begin(), tb.end(), 0.0);
      double c0 = 0.0;
      const int r = static_cast<int>(rest.size());
      digit.assign(r, 0);
      dir.assign(r, 1);
      const auto consider = [&]() {
        double cc = c0;
        for (int i = 0; i < k; ++i) cc += sb[F[i]];
        if (k == 0) {
          best = std::max(best, sigma * cc);
          return;
        }
        for (int i = 0; i < k; ++i) b[i] = 0.5 * (tb[F[i]] + rf[i] - sb[F[i]]);
        bool feasible = true;
        for (int i = 0; i < k; ++i) {
          double s = 0.0;
          for (int j = 0; j < k; ++j) s += inv(i, j) * b[j];
          if (s < -1e-9 || s > 1.0 + 1e-9) {
            feasible = false;
            break;
          }
          x[i] = std::clamp(s, 0.0, 1.0);
        }
        if (!feasible) return;
        double val = cc;
        for (int i = 0; i < k; ++i) val += 2.0 * b[i] * x[i];
        for (int i = 0; i < k; ++i) {
          double s = 0.0;
          for (int j = 0; j < k; ++j) s += m(F[i], F[j]) * x[j];
          val -= x[i] * s;
        }
        best = std::max(best, sigma * val);
      };
      consider();
      while (r > 0) {
        int i = r - 1;
        while (i >= 0 && (digit[i] + dir[i] < 0 || digit[i] + dir[i] > 2)) {
          dir[i] = -dir[i];
          --i;
        }
        if (i < 0) break;
        const int v = rest[i];
        const int from = digit[i];
        const int to = from + dir[i];
        if (from == 1) {
          c0 -= tb[v];
          for (int j = 0; j < n; ++j) sb[j] -= m(j, v);
        } else if (from == 2) {
          c0 -= sb[v];
          for (int j = 0; j < n; ++j) tb[j] -= m(j, v);
        }
        if (to == 1) {
          c0 += tb[v];
          for (int j = 0; j < n; ++j) sb[j] += m(j, v);
        } else if (to == 2) {
          c0 += sb[v];
          for (int j = 0; j < n; ++j) tb[j] += m(j, v);
        }
        digit[i] = to;
        consider();
      }
    }
  }
  return best;
}

}  // namespace

double restricted_cut_norm(const Kernel& k, RestrictVariant variant) {
  const int n = k.n();
  if (n > kRestrictedExactCap)
    throw CapacityError("restricted_cut_norm: n <= 12 required");
  const Matrix m = scaled_matrix(k);
  switch (variant) {
    case RestrictVariant::equal: {
      Matrix neg(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) neg(i, j) = -m(i, j);
      const std::vector<double> q(n, 0.0);
      return std::max(box_quad_best(m, q), box_quad_best(neg, q));
    }
    case RestrictVariant::complement: {
      Matrix neg(n, n);
      std::vector<double> row(n, 0.0), nrow(n, 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          neg(i, j) = -m(i, j);
          row[i] += m(i, j);
        }
      for (int i = 0; i < n; ++i) nrow[i] = -row[i];
      return std::max(box_quad_best(neg, row), box_quad_best(m, nrow));
    }
    case RestrictVariant::disjoint:
      return disjoint_best(m);
  }
  return 0.0;
}

namespace detail {

Matrix scaled_matrix(const Kernel& k) { return graphlim::scaled_matrix(k); }

double exact_cut_value(const Matrix& m) {
  const int n = m.rows();
  if (n > kCutExactCap) throw CapacityError("exact cut value limited to 26 nodes");
  const std::uint64_t states = std::uint64_t{1} << n;
  return scan_subsets(m, 1, states).value;
}

CutNormResult exact_cut(const Matrix& m, int threads) { return exact_cut_scaled(m, threads); }

CutWitness local_search_cut(const Matrix& m, std::uint64_t seed, int restarts) {
  CutOptions opts;
  opts.seed = seed;
  opts.restarts = restarts;
  return heuristic_lower_scaled(m, opts);
}

}  // namespace detail

CutNormResult d_cut(const WeightedGraph& g, const WeightedGraph& gp, CutMethod method,
                    const CutOptions& opts) {
  return cut_norm(difference_kernel(g, gp), method, opts);
}

}  // namespace graphlim
