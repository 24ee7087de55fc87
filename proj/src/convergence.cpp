#include "graphlim/convergence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "graphlim/hom.hpp"
#include "graphlim/sampling.hpp"

namespace graphlim {

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stdev_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / (static_cast<double>(v.size()) - 1.0));
}

bool nonincreasing(const std::vector<double>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] + 1e-12) return false;
  return !v.empty();
}

double exact_maxcut(const WeightedGraph& g) {
  const int n = g.n();
  std::vector<double> rowsum(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rowsum[i] += g.beta(i, j);
  std::vector<double> deg_s(n, 0.0);
  double cut = 0.0, best = 0.0;
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t state = 0;
  for (std::uint64_t code = 1; code < total; ++code) {
    const std::uint64_t gray = code ^ (code >> 1);
    const int v = std::countr_zero(gray ^ state);
    if ((gray >> v) & 1) {
      cut += rowsum[v] - g.beta(v, v) - 2.0 * deg_s[v];
      for (int j = 0; j < n; ++j) deg_s[j] += g.beta(v, j);
    } else {
      for (int j = 0; j < n; ++j) deg_s[j] -= g.beta(v, j);
      cut -= rowsum[v] - g.beta(v, v) - 2.0 * deg_s[v];
    }
    state = gray;
    best = std::max(best, cut);
  }
  return best / (static_cast<double>(n) * n);
}

double local_search_maxcut(const WeightedGraph& g, std::uint64_t seed) {
  const int n = g.n();
  std::vector<double> rowsum(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rowsum[i] += g.beta(i, j);
  auto rng = Seed{seed, {0x3c}}.rng();
  double best = 0.0;
  for (int restart = 0; restart < 8; ++restart) {
    std::vector<char> in_s(n);
    std::vector<double> deg_s(n, 0.0);
    double cut = 0.0;
    for (int v = 0; v < n; ++v) {
      if (!(rng() & 1)) continue;
      in_s[v] = 1;
      cut += rowsum[v] - g.beta(v, v) - 2.0 * deg_s[v];
      for (int j = 0; j < n; ++j) deg_s[j] += g.beta(v, j);
    }
    bool improved = true;
    while (improved) {
      improved = false;
      for (int v = 0; v < n; ++v) {
        double gain;
        if (in_s[v]) {
          gain = -(rowsum[v] - g.beta(v, v) - 2.0 * (deg_s[v] - g.beta(v, v)));
        } else {
          gain = rowsum[v] - g.beta(v, v) - 2.0 * deg_s[v];
        }
        if (gain <= 1e-15) continue;
        cut += gain;
        const double sign = in_s[v] ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) deg_s[j] += sign * g.beta(v, j);
        in_s[v] = !in_s[v];
        improved = true;
      }
    }
    best = std::max(best, cut);
  }
  return best / (static_cast<double>(n) * n);
}

}  // namespace

DensityProfile density_profile(const WeightedGraph& g, int k) {
  const SmallGraphCatalog catalog = enumerate_small_graphs(k);
  DensityProfile p;
  p.k = k;
  for (const CatalogEntry& entry : catalog.entries) {
    p.keys.push_back(entry.key);
    p.nodes.push_back(entry.rep.n());
    p.values.push_back(t_density(entry.rep, g, DensityMode::hom));
  }
  return p;
}

ProfileDistance profile_distance(const DensityProfile& p1, const DensityProfile& p2,
                                 double c) {
  if (p1.k != p2.k || p1.keys != p2.keys)
    throw InputError("profiles have different orders");
  ProfileDistance out;
  for (size_t i = 0; i < p1.values.size(); ++i) {
    if (p1.nodes[i] != p1.k) continue;
    out.dmax = std::max(out.dmax, std::abs(p1.values[i] - p2.values[i]));
  }
  if (p1.k >= 2) {
    out.delta_bound = 22.0 * c / std::sqrt(std::log2(static_cast<double>(p1.k)));
    out.applicable =
        out.dmax <= std::pow(3.0, -static_cast<double>(p1.k) * p1.k);
    out.vacuous = out.delta_bound >= 1.0;
  }
  return out;
}

CauchyReport cauchy_diagnostic(const std::vector<WeightedGraph>& sequence, int k,
                               const DeltaOptions& dopts) {
  const int m = static_cast<int>(sequence.size());
  if (m < 2) throw InputError("need at least two graphs");
  CauchyReport report;
  report.k = k;
  for (const WeightedGraph& g : sequence) report.profiles.push_back(density_profile(g, k));
  report.profile_dmax = Matrix(m, m);
  report.delta_upper = Matrix(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double d = profile_distance(report.profiles[i], report.profiles[j]).dmax;
      report.profile_dmax(i, j) = report.profile_dmax(j, i) = d;
      const double del = delta_cut(sequence[i], sequence[j], dopts).value;
      report.delta_upper(i, j) = report.delta_upper(j, i) = del;
    }
  for (int i = 0; i + 1 < m; ++i) {
    report.consecutive_dmax.push_back(report.profile_dmax(i, i + 1));
    report.consecutive_delta.push_back(report.delta_upper(i, i + 1));
  }
  report.dmax_nonincreasing = nonincreasing(report.consecutive_dmax);
  report.delta_nonincreasing = nonincreasing(report.consecutive_delta);
  return report;
}

TestableParameter edge_density_parameter() {
  return {"edge_density",
          [](const WeightedGraph& g) {
            double e = 0.0;
            for (int i = 0; i < g.n(); ++i)
              for (int j = 0; j < g.n(); ++j) e += g.beta(i, j);
            return e / (static_cast<double>(g.n()) * g.n());
          },
          true};
}

TestableParameter triangle_density_parameter() {
  return {"triangle_density",
          [](const WeightedGraph& g) {
            const WeightedGraph k3 = WeightedGraph::simple(3, {{0, 1}, {1, 2}, {0, 2}});
            return t_density(k3, g, DensityMode::hom);
          },
          true};
}

TestableParameter maxcut_density_parameter() {
  return {"maxcut_density", [](const WeightedGraph& g) { return maxcut_density(g); },
          false};
}

TestableParameter parameter_from_name(const std::string& name) {
  if (name == "edge_density") return edge_density_parameter();
  if (name == "triangle_density") return triangle_density_parameter();
  if (name == "maxcut_density") return maxcut_density_parameter();
  throw InputError("unknown parameter: " + name);
}

double maxcut_density(const WeightedGraph& g, std::uint64_t seed) {
  if (g.n() <= 20) return exact_maxcut(g);
  return local_search_maxcut(g, seed);
}

ParameterEstimate estimate_parameter(const TestableParameter& f, const WeightedGraph& g,
                                     int k, int reps, std::uint64_t seed) {
  if (reps < 1) throw InputError("reps must be positive");
  ParameterEstimate out;
  for (int r = 0; r < reps; ++r) {
    const WeightedGraph sample =
        induce_sample(g, k, Seed{seed, {0xe5, static_cast<std::uint64_t>(r)}}.stream());
    out.samples.push_back(f.eval(sample));
  }
  out.estimate = mean_of(out.samples);
  out.min = *std::min_element(out.samples.begin(), out.samples.end());
  out.max = *std::max_element(out.samples.begin(), out.samples.end());
  out.stdev = stdev_of(out.samples, out.estimate);
  return out;
}

HatEstimate hat_f(const TestableParameter& f, const WeightedGraph& h, int reps,
                  std::uint64_t seed) {
  if (reps < 1) throw InputError("reps must be positive");
  std::vector<double> samples;
  for (int r = 0; r < reps; ++r)
    samples.push_back(
        f.eval(randomize(h, Seed{seed, {0xf4, static_cast<std::uint64_t>(r)}}.stream())));
  HatEstimate out;
  out.estimate = mean_of(samples);
  out.se = stdev_of(samples, out.estimate) / std::sqrt(static_cast<double>(reps));
  return out;
}

WeightedGraph uniform_attachment_graph(int n, std::uint64_t seed) {
  if (n < 1) throw InputError("need at least one node");
  auto rng = Seed{seed, {0x06}}.rng();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix beta(n, n);
  for (int s = 1; s < n; ++s) {
    const double p = 1.0 / s;
    for (int i = 0; i < s; ++i)
      for (int j = i + 1; j < s; ++j) {
        if (beta(i, j) != 0.0) continue;
        if (unif(rng) < p) beta(i, j) = beta(j, i) = 1.0;
      }
  }
  return WeightedGraph(std::vector<double>(n, 1.0), std::move(beta));
}

}  // namespace graphlim
