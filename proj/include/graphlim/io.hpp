#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"

namespace graphlim {

inline constexpr const char* kToolVersion = "0.1.0";

// Weighted graph JSON: {"alpha": [...], "beta": [[...]]} with a full
// symmetric matrix. Validation errors name the offending field or entry.
nlohmann::json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const nlohmann::json& j, const std::string& where);

// Graphon JSON: {"type": "step", "measures": [...], "values": [[...]]} or
// {"type": "builtin", "name": "constant|min|halfgraph", "p": ...} (p only
// for constant).
nlohmann::json graphon_to_json(const Graphon& w);
Graphon graphon_from_json(const nlohmann::json& j, const std::string& where);

// Simple-graph TSV: header "n=<count>", one "u<TAB>v" edge per line,
// 0-based, no loops. Errors name the line number.
WeightedGraph graph_from_tsv(const std::string& text, const std::string& where);
std::string graph_to_tsv(const WeightedGraph& g);

// Files: a leading '{' selects JSON, anything else TSV (graphs only).
WeightedGraph load_graph(const std::string& path);
Graphon load_graphon(const std::string& path);
void save_graph(const std::string& path, const WeightedGraph& g);
void save_graphon(const std::string& path, const Graphon& w);

// Reproducibility block embedded verbatim in every CLI output document.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::map<std::string, std::string> flags;
  std::uint64_t seed = 0;
  std::string version = kToolVersion;
};

nlohmann::json manifest_to_json(const RunManifest& m);

}  // namespace graphlim
