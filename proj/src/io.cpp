#include "graphlim/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace graphlim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

double number_at(const json& j, const std::string& where, const std::string& field) {
  if (!j.is_number()) fail(where, field + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, field + " must be finite");
  return v;
}

std::string entry(const std::string& field, int i) {
  return field + "[" + std::to_string(i) + "]";
}

std::string entry(const std::string& field, int i, int j) {
  return field + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

Matrix matrix_field(const json& j, const std::string& where, const std::string& field,
                    int n, bool symmetric) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    fail(where, field + " must be an array of " + std::to_string(n) + " rows");
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      fail(where, entry(field, r) + " must be an array of " + std::to_string(n) + " numbers");
    for (int c = 0; c < n; ++c) m(r, c) = number_at(row[c], where, entry(field, r, c));
  }
  if (symmetric)
    for (int r = 0; r < n; ++r)
      for (int c = r + 1; c < n; ++c)
        if (m(r, c) != m(c, r))
          fail(where, entry(field, r, c) + " != " + entry(field, c, r));
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(const std::string& text, const std::string& where) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(where, "malformed JSON");
  return j;
}

}  // namespace

json graph_to_json(const WeightedGraph& g) {
  json alpha = json::array(), beta = json::array();
  for (int i = 0; i < g.n(); ++i) {
    alpha.push_back(g.alpha(i));
    json row = json::array();
    for (int j = 0; j < g.n(); ++j) row.push_back(g.beta(i, j));
    beta.push_back(std::move(row));
  }
  return json{{"alpha", std::move(alpha)}, {"beta", std::move(beta)}};
}

WeightedGraph graph_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "graph must be a JSON object");
  if (!j.contains("alpha")) fail(where, "missing field alpha");
  if (!j.contains("beta")) fail(where, "missing field beta");
  const json& ja = j["alpha"];
  if (!ja.is_array() || ja.empty()) fail(where, "alpha must be a nonempty array");
  const int n = static_cast<int>(ja.size());
  std::vector<double> alpha(n);
  for (int i = 0; i < n; ++i) {
    alpha[i] = number_at(ja[i], where, entry("alpha", i));
    if (alpha[i] <= 0.0) fail(where, entry("alpha", i) + " must be positive");
  }
  Matrix beta = matrix_field(j["beta"], where, "beta", n, true);
  return WeightedGraph(std::move(alpha), std::move(beta));
}

json graphon_to_json(const Graphon& w) {
  if (const StepGraphon* step = std::get_if<StepGraphon>(&w)) {
    json measures = json::array(), values = json::array();
    for (int i = 0; i < step->q(); ++i) {
      measures.push_back(step->measures()[i]);
      json row = json::array();
      for (int j = 0; j < step->q(); ++j) row.push_back(step->value(i, j));
      values.push_back(std::move(row));
    }
    return json{{"type", "step"}, {"measures", std::move(measures)},
                {"values", std::move(values)}};
  }
  const AnalyticGraphon& a = std::get<AnalyticGraphon>(w);
  switch (a.id) {
    case BuiltinGraphon::constant:
      return json{{"type", "builtin"}, {"name", "constant"}, {"p", a.p}};
    case BuiltinGraphon::min_xy:
      return json{{"type", "builtin"}, {"name", "min"}};
    case BuiltinGraphon::halfgraph:
      break;
  }
  return json{{"type", "builtin"}, {"name", "halfgraph"}};
}

Graphon graphon_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "graphon must be a JSON object");
  if (!j.contains("type") || !j["type"].is_string())
    fail(where, "missing string field type");
  const std::string type = j["type"].get<std::string>();
  if (type == "step") {
    if (!j.contains("measures")) fail(where, "missing field measures");
    if (!j.contains("values")) fail(where, "missing field values");
    const json& jm = j["measures"];
    if (!jm.is_array() || jm.empty()) fail(where, "measures must be a nonempty array");
    const int q = static_cast<int>(jm.size());
    std::vector<double> measures(q);
    for (int i = 0; i < q; ++i) {
      measures[i] = number_at(jm[i], where, entry("measures", i));
      if (measures[i] <= 0.0) fail(where, entry("measures", i) + " must be positive");
    }
    Matrix values = matrix_field(j["values"], where, "values", q, true);
    return StepGraphon(std::move(measures), std::move(values));
  }
  if (type == "builtin") {
    if (!j.contains("name") || !j["name"].is_string())
      fail(where, "missing string field name");
    const std::string name = j["name"].get<std::string>();
    if (name == "constant") {
      if (!j.contains("p")) fail(where, "builtin constant needs field p");
      return AnalyticGraphon::constant(number_at(j["p"], where, "p"));
    }
    if (name == "min") return AnalyticGraphon::min_xy();
    if (name == "halfgraph") return AnalyticGraphon::halfgraph();
    fail(where, "unknown builtin name " + name);
  }
  fail(where, "type must be step or builtin");
}

WeightedGraph graph_from_tsv(const std::string& text, const std::string& where) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0, n = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string loc = where + " line " + std::to_string(lineno);
    if (n < 0) {
      if (line.rfind("n=", 0) != 0) fail(loc, "expected header n=<count>");
      try {
        n = std::stoi(line.substr(2));
      } catch (const std::exception&) {
        fail(loc, "expected header n=<count>");
      }
      if (n < 1) fail(loc, "node count must be positive");
      continue;
    }
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) fail(loc, "expected u<TAB>v");
    int u = 0, v = 0;
    try {
      u = std::stoi(line.substr(0, tab));
      v = std::stoi(line.substr(tab + 1));
    } catch (const std::exception&) {
      fail(loc, "expected u<TAB>v");
    }
    if (u < 0 || u >= n || v < 0 || v >= n) fail(loc, "node index out of range");
    if (u == v) fail(loc, "loops are not allowed");
    edges.emplace_back(u, v);
  }
  if (n < 0) fail(where, "missing header n=<count>");
  return WeightedGraph::simple(n, edges);
}

std::string graph_to_tsv(const WeightedGraph& g) {
  if (!g.is_simple()) throw InputError("TSV export requires a simple graph");
  std::ostringstream out;
  out << "n=" << g.n() << "\n";
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (g.beta(i, j) != 0.0) out << i << "\t" << j << "\n";
  return out.str();
}

WeightedGraph load_graph(const std::string& path) {
  const std::string text = read_file(path);
  const size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return graph_from_json(parse_json(text, path), path);
  return graph_from_tsv(text, path);
}

Graphon load_graphon(const std::string& path) {
  return graphon_from_json(parse_json(read_file(path), path), path);
}

void save_graph(const std::string& path, const WeightedGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << graph_to_json(g).dump(2) << "\n";
}

void save_graphon(const std::string& path, const Graphon& w) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << graphon_to_json(w).dump(2) << "\n";
}

json manifest_to_json(const RunManifest& m) {
  json flags = json::object();
  for (const auto& [k, v] : m.flags) flags[k] = v;
  return json{{"command", m.command},
              {"inputs", m.inputs},
              {"flags", std::move(flags)},
              {"seed", m.seed},
              {"version", m.version}};
}

}  // namespace graphlim
