#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graphlim/graph.hpp"

namespace graphlim {

enum class DensityMode { hom, inj, ind };

// hom(F,G): sum over all maps V(F) -> V(G) of node-weight and edge-weight
// products. F must be simple; capacity |V(G)|^|V(F)| <= 1e9.
double hom_count(const WeightedGraph& f, const WeightedGraph& g);

// t(F,G): hom mode normalizes by alpha_G^k; inj and ind enumerate injective
// maps and normalize by the falling factorial (n)_k (unit node weights
// required, n >= k).
double t_density(const WeightedGraph& f, const WeightedGraph& g, DensityMode mode);

// Keys for inj_ind_convert: bitmask over node pairs of [0,n), bit j(j-1)/2+i
// set when {i,j} (i<j) is an edge.
std::uint64_t edge_mask(const WeightedGraph& f);
WeightedGraph graph_from_mask(int n, std::uint64_t mask);

enum class ConvertDirection { ind_to_inj, inj_to_ind };

// Inclusion-exclusion between t_inj and t_ind vectors. The map must be keyed
// by every supergraph (on the same node set) of its minimal key.
std::map<std::uint64_t, double> inj_ind_convert(int n, const std::map<std::uint64_t, double>& values,
                                                ConvertDirection direction);

struct CatalogEntry {
  std::string key;       // canonical_form of the representative
  WeightedGraph rep;     // canonically labeled representative
};

// One representative per isomorphism class of simple graphs on 1..k nodes,
// ordered by (node count, key).
struct SmallGraphCatalog {
  int k = 0;
  std::vector<CatalogEntry> entries;
};

SmallGraphCatalog enumerate_small_graphs(int k);

}  // namespace graphlim
