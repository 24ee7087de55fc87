#include "graphlim/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "graphlim/hom.hpp"

namespace graphlim {

namespace {

constexpr double kMergeTol = 1e-12;

// Cumulative bounds 0 = c_0 < c_1 < ... < c_q = 1 of a step graphon.
std::vector<double> cumulative(const std::vector<double>& measures) {
  std::vector<double> c(measures.size() + 1, 0.0);
  for (size_t i = 0; i < measures.size(); ++i) c[i + 1] = c[i] + measures[i];
  c.back() = 1.0;
  return c;
}

// Area of {(x, y) in [a,b] x [c,d] : y - x >= s}, in closed form. The slice
// length d - max(c, x + s) is constant for x <= c - s, linear down to zero at
// x = d - s.
double area_above(double a, double b, double c, double d, double s) {
  const double x1 = c - s;
  const double x2 = d - s;
  double area = 0.0;
  const double flat_hi = std::min(b, x1);
  if (flat_hi > a) area += (flat_hi - a) * (d - c);
  const double lin_lo = std::max(a, x1);
  const double lin_hi = std::min(b, x2);
  if (lin_hi > lin_lo) {
    auto anti = [&](double x) { return (d - s) * x - 0.5 * x * x; };
    area += anti(lin_hi) - anti(lin_lo);
  }
  return std::max(area, 0.0);
}

// Average of min(x, y) over [a,b] x [c,d] for blocks of an equal grid: either
// the same interval twice or disjoint intervals.
double min_block_average(double a, double b, double c, double d) {
  if (b <= c + kMergeTol) {  // x below y throughout: min = x
    return 0.5 * (a + b);
  }
  if (d <= a + kMergeTol) {
    return 0.5 * (c + d);
  }
  // same interval [a,b]^2
  const double len = b - a;
  const double integral = (b * b * b - a * a * a) / 3.0 - a * a * len;
  return integral / (len * len);
}

struct RefinedGrid {
  std::vector<double> lengths;
  std::vector<int> wstep;   // step of the graphon containing each cell
  std::vector<int> pclass;  // partition class containing each cell
};

RefinedGrid refine(const StepGraphon& w, const std::vector<double>& pbounds) {
  const std::vector<double> wb = cumulative(w.measures());
  std::vector<double> merged = wb;
  merged.insert(merged.end(), pbounds.begin(), pbounds.end());
  std::sort(merged.begin(), merged.end());
  std::vector<double> bounds;
  for (const double x : merged)
    if (bounds.empty() || x - bounds.back() > kMergeTol) bounds.push_back(x);
  bounds.front() = 0.0;
  bounds.back() = 1.0;

  RefinedGrid grid;
  size_t wi = 0, pi = 0;
  for (size_t c = 0; c + 1 < bounds.size(); ++c) {
    const double mid = 0.5 * (bounds[c] + bounds[c + 1]);
    while (wi + 1 < wb.size() - 1 && wb[wi + 1] <= mid) ++wi;
    while (pi + 1 < pbounds.size() - 1 && pbounds[pi + 1] <= mid) ++pi;
    grid.lengths.push_back(bounds[c + 1] - bounds[c]);
    grid.wstep.push_back(static_cast<int>(wi));
    grid.pclass.push_back(static_cast<int>(pi));
  }
  return grid;
}

Matrix block_averages(const StepGraphon& w, const RefinedGrid& grid,
                      const std::vector<double>& lambda) {
  const int q = static_cast<int>(lambda.size());
  const int cells = static_cast<int>(grid.lengths.size());
  Matrix beta(q, q);
  for (int c = 0; c < q; ++c)
    for (int d = c; d < q; ++d) {
      double sum = 0.0;
      double first = 0.0;
      bool constant = true, seen = false;
      for (int i = 0; i < cells; ++i) {
        if (grid.pclass[i] != c) continue;
        for (int j = 0; j < cells; ++j) {
          if (grid.pclass[j] != d) continue;
          const double v = w.value(grid.wstep[i], grid.wstep[j]);
          if (!seen) {
            first = v;
            seen = true;
          } else if (v != first) {
            constant = false;
          }
          sum += grid.lengths[i] * grid.lengths[j] * v;
        }
      }
      const double v = constant && seen ? first : sum / (lambda[c] * lambda[d]);
      beta(c, d) = v;
      beta(d, c) = v;
    }
  return beta;
}

}  // namespace

StepGraphon::StepGraphon(std::vector<double> measures, Matrix values)
    : measures_(std::move(measures)), values_(std::move(values)) {
  const int q = static_cast<int>(measures_.size());
  if (q < 1) throw InputError("step graphon needs at least one step");
  if (values_.rows() != q || values_.cols() != q)
    throw InputError("step graphon value matrix must be q x q");
  double total = 0.0;
  for (const double m : measures_) {
    if (!(m > 0)) throw InputError("step lengths must be positive");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InputError("step lengths must sum to 1");
  if (!values_.is_symmetric(1e-12))
    throw InputError("step graphon values must be symmetric");
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j) values_(j, i) = values_(i, j);
}

double StepGraphon::value_at(double x, double y) const {
  const std::vector<double> c = cumulative(measures_);
  auto locate = [&](double t) {
    const int q = static_cast<int>(measures_.size());
    int lo = 0;
    while (lo + 1 < q && c[lo + 1] <= t) ++lo;
    return lo;
  };
  return values_(locate(x), locate(y));
}

WeightedGraph StepGraphon::graph() const { return WeightedGraph(measures_, values_); }

double AnalyticGraphon::operator()(double x, double y) const {
  switch (id) {
    case BuiltinGraphon::constant:
      return p;
    case BuiltinGraphon::min_xy:
      return std::min(x, y);
    case BuiltinGraphon::halfgraph:
      return std::abs(x - y) >= 0.5 ? 1.0 : 0.0;
  }
  return 0.0;
}

IntervalPartition IntervalPartition::equal(int q) {
  if (q < 1) throw InputError("partition needs at least one class");
  IntervalPartition p;
  for (int i = 1; i < q; ++i)
    p.breakpoints.push_back(static_cast<double>(i) / q);
  return p;
}

void IntervalPartition::validate() const {
  double prev = 0.0;
  for (const double b : breakpoints) {
    if (!(b > prev + kMergeTol) || !(b < 1.0 - kMergeTol))
      throw InputError("breakpoints must be strictly increasing inside (0,1)");
    prev = b;
  }
}

std::vector<double> IntervalPartition::bounds() const {
  std::vector<double> b;
  b.push_back(0.0);
  b.insert(b.end(), breakpoints.begin(), breakpoints.end());
  b.push_back(1.0);
  return b;
}

StepGraphon step_from_graph(const WeightedGraph& g) {
  return StepGraphon(g.normalized_alphas(), g.betas());
}

McEstimate t_graphon(const WeightedGraph& f, const StepGraphon& w) {
  if (!f.is_simple()) throw InputError("density requires a simple graph");
  return {t_density(f, w.graph(), DensityMode::hom), 0.0};
}

McEstimate t_graphon(const WeightedGraph& f, const AnalyticGraphon& w,
                     long long mc_samples, std::uint64_t seed) {
  if (!f.is_simple()) throw InputError("density requires a simple graph");
  if (mc_samples < 1000) throw InputError("mc_samples must be at least 1000");
  const int k = f.n();
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (f.beta(i, j) != 0.0) edges.emplace_back(i, j);

  constexpr long long kChunk = 8192;
  double sum = 0.0, sumsq = 0.0;
  std::vector<double> x(k);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  long long done = 0;
  for (std::uint64_t chunk = 0; done < mc_samples; ++chunk) {
    auto rng = Seed{seed, {0x7c, chunk}}.rng();
    const long long take = std::min(kChunk, mc_samples - done);
    for (long long s = 0; s < take; ++s) {
      for (int i = 0; i < k; ++i) x[i] = unif(rng);
      double prod = 1.0;
      for (const auto& [i, j] : edges) prod *= w(x[i], x[j]);
      sum += prod;
      sumsq += prod * prod;
    }
    done += take;
  }
  const double n = static_cast<double>(mc_samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

WeightedGraph quotient(const StepGraphon& w, const IntervalPartition& p) {
  p.validate();
  const std::vector<double> pb = p.bounds();
  std::vector<double> lambda;
  for (size_t c = 0; c + 1 < pb.size(); ++c) {
    const double len = pb[c + 1] - pb[c];
    if (len <= kMergeTol) throw InputError("degenerate partition class");
    lambda.push_back(len);
  }
  const RefinedGrid grid = refine(w, pb);
  Matrix beta = block_averages(w, grid, lambda);
  return WeightedGraph(lambda, std::move(beta));
}

StepGraphon average(const StepGraphon& w, const IntervalPartition& p) {
  const WeightedGraph q = quotient(w, p);
  return StepGraphon(q.alphas(), q.betas());
}

StepGraphon discretize(const AnalyticGraphon& w, int n) {
  if (n < 1) throw InputError("discretization needs at least one step");
  std::vector<double> measures(n, 1.0 / n);
  Matrix values(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double a = static_cast<double>(i) / n, b = static_cast<double>(i + 1) / n;
      const double c = static_cast<double>(j) / n, d = static_cast<double>(j + 1) / n;
      double v = 0.0;
      switch (w.id) {
        case BuiltinGraphon::constant:
          v = w.p;
          break;
        case BuiltinGraphon::min_xy:
          v = min_block_average(a, b, c, d);
          break;
        case BuiltinGraphon::halfgraph:
          v = (area_above(a, b, c, d, 0.5) + area_above(c, d, a, b, 0.5)) /
              ((b - a) * (d - c));
          break;
      }
      values(i, j) = v;
      values(j, i) = v;
    }
  return StepGraphon(std::move(measures), std::move(values));
}

GraphonNorms graphon_norms(const StepGraphon& w, CutMethod method, const CutOptions& opts) {
  const Kernel k(w.measures(), w.values());
  const std::vector<double> nw = k.normalized_alphas();
  GraphonNorms out;
  double l2sq = 0.0;
  for (int i = 0; i < k.n(); ++i)
    for (int j = 0; j < k.n(); ++j) {
      const double m = nw[i] * nw[j];
      out.l1 += m * std::abs(k.values(i, j));
      l2sq += m * k.values(i, j) * k.values(i, j);
    }
  out.l2 = std::sqrt(l2sq);
  const CutNormResult cut = cut_norm(k, method, opts);
  out.cut_lower = cut.lower;
  out.cut_upper = cut.upper;
  return out;
}

StepGraphon interval_permutation_apply(const StepGraphon& w, const std::vector<int>& pi) {
  const int q = w.q();
  for (int i = 1; i < q; ++i)
    if (std::abs(w.measures()[i] - w.measures()[0]) > kMergeTol)
      throw InputError("interval permutation needs equal steps");
  if (static_cast<int>(pi.size()) != q)
    throw InputError("permutation size must match the step count");
  std::vector<int> sorted = pi;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < q; ++i)
    if (sorted[i] != i) throw InputError("not a permutation");
  Matrix values(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) values(i, j) = w.value(pi[i], pi[j]);
  return StepGraphon(w.measures(), std::move(values));
}

DistanceResult delta_graphon(const StepGraphon& w, const StepGraphon& wp,
                             const DeltaOptions& opts) {
  return delta_cut(w.graph(), wp.graph(), opts);
}

double graphon_value(const Graphon& w, double x, double y) {
  if (const auto* step = std::get_if<StepGraphon>(&w)) return step->value_at(x, y);
  return std::get<AnalyticGraphon>(w)(x, y);
}

}  // namespace graphlim
