#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "graphlim/cutdist.hpp"
#include "graphlim/cutnorm.hpp"
#include "graphlim/graph.hpp"

namespace graphlim {

// Step function on [0,1]^2: q consecutive intervals with positive lengths
// summing to 1 and a symmetric q x q value matrix.
class StepGraphon {
 public:
  StepGraphon(std::vector<double> measures, Matrix values);

  int q() const { return static_cast<int>(measures_.size()); }
  const std::vector<double>& measures() const { return measures_; }
  const Matrix& values() const { return values_; }
  double value(int i, int j) const { return values_(i, j); }
  double value_at(double x, double y) const;
  // Weighted graph with alpha = measures, beta = values; t(F, this) equals
  // the homomorphism density into it.
  WeightedGraph graph() const;
  bool operator==(const StepGraphon& o) const {
    return measures_ == o.measures_ && values_ == o.values_;
  }

 private:
  std::vector<double> measures_;
  Matrix values_;
};

enum class BuiltinGraphon { constant, min_xy, halfgraph };

// The built-in analytic graphons: constant(p), min(x, y), and the half graphon
// (1 where |x - y| >= 1/2).
struct AnalyticGraphon {
  BuiltinGraphon id = BuiltinGraphon::constant;
  double p = 0.0;

  static AnalyticGraphon constant(double p) { return {BuiltinGraphon::constant, p}; }
  static AnalyticGraphon min_xy() { return {BuiltinGraphon::min_xy, 0.0}; }
  static AnalyticGraphon halfgraph() { return {BuiltinGraphon::halfgraph, 0.0}; }
  double operator()(double x, double y) const;
};

// Partition of [0,1] into consecutive intervals given by interior breakpoints,
// strictly increasing within (0,1).
struct IntervalPartition {
  std::vector<double> breakpoints;

  static IntervalPartition equal(int q);
  int q() const { return static_cast<int>(breakpoints.size()) + 1; }
  void validate() const;
  // Interval bounds including 0 and 1.
  std::vector<double> bounds() const;
};

StepGraphon step_from_graph(const WeightedGraph& g);

struct McEstimate {
  double value = 0.0;
  double se = 0.0;  // standard error (0 for exact evaluations)
};

// Exact density of a simple graph F in a step graphon.
McEstimate t_graphon(const WeightedGraph& f, const StepGraphon& w);
// Monte Carlo density in a built-in graphon; mc_samples >= 1000.
McEstimate t_graphon(const WeightedGraph& f, const AnalyticGraphon& w,
                     long long mc_samples, std::uint64_t seed);

// Block averages of w against the partition: quotient returns the weighted
// graph (alpha = interval lengths), average the step graphon constant on the
// partition's blocks.
WeightedGraph quotient(const StepGraphon& w, const IntervalPartition& p);
StepGraphon average(const StepGraphon& w, const IntervalPartition& p);

// Equal-step graphon whose values are the exact block averages of the
// built-in (closed forms, no quadrature).
StepGraphon discretize(const AnalyticGraphon& w, int n);

struct GraphonNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double cut_lower = 0.0;
  double cut_upper = 0.0;
};

GraphonNorms graphon_norms(const StepGraphon& w, CutMethod method = CutMethod::automatic,
                           const CutOptions& opts = {});

// Relabel the steps of an equal-step graphon: output value (i,j) is the input
// value (pi[i], pi[j]).
StepGraphon interval_permutation_apply(const StepGraphon& w, const std::vector<int>& pi);

// Cut distance of two step graphons via their underlying weighted graphs.
DistanceResult delta_graphon(const StepGraphon& w, const StepGraphon& wp,
                             const DeltaOptions& opts = {});

// Either representation, for samplers and file formats.
using Graphon = std::variant<StepGraphon, AnalyticGraphon>;

double graphon_value(const Graphon& w, double x, double y);

}  // namespace graphlim
