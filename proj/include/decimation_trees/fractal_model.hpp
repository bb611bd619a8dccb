#pragma once

// Combinatorial description of fully symmetric finitely ramified self-similar
// structures and the approximating graphs G_n built from them.
//
// A structure is given by its level-1 graph G_1, the boundary V_0 (a list of
// G_1 vertices) and, for each of the m cells, the G_1 vertices occupied by
// that cell's copy of the boundary. G_0 is always the complete graph on V_0.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "decimation_trees/exact/rational.hpp"

namespace dtrees {

using VertexId = std::size_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  std::uint64_t mult = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected loopless multigraph. Edges are stored once with u < v.
struct Graph {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;

  std::uint64_t edge_count() const {
    std::uint64_t total = 0;
    for (const auto& e : edges) total += e.mult;
    return total;
  }

  std::vector<std::uint64_t> degrees() const {
    std::vector<std::uint64_t> d(vertex_count, 0);
    for (const auto& e : edges) {
      d[e.u] += e.mult;
      d[e.v] += e.mult;
    }
    return d;
  }

  bool connected() const {
    if (vertex_count == 0) return false;
    std::vector<std::vector<VertexId>> adj(vertex_count);
    for (const auto& e : edges) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    std::vector<bool> seen(vertex_count, false);
    std::vector<VertexId> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (VertexId y : adj[x]) {
        if (seen[y]) continue;
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
    }
    return count == vertex_count;
  }
};

/// Normalizes an edge list: orients u < v, merges parallel entries, sorts.
/// Throws on loops or out-of-range ids.
inline std::vector<Edge> normalize_edges(const std::vector<Edge>& raw, std::size_t vertex_count) {
  std::map<std::pair<VertexId, VertexId>, std::uint64_t> acc;
  for (const auto& e : raw) {
    if (e.u >= vertex_count || e.v >= vertex_count) throw std::invalid_argument("edge vertex out of range");
    if (e.u == e.v) throw std::invalid_argument("loop created at vertex " + std::to_string(e.u));
    if (e.mult == 0) continue;
    acc[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.mult;
  }
  std::vector<Edge> out;
  out.reserve(acc.size());
  for (const auto& [k, m] : acc) out.push_back({k.first, k.second, m});
  return out;
}

inline Graph make_graph(std::size_t vertex_count, const std::vector<Edge>& edges) {
  return Graph{vertex_count, normalize_edges(edges, vertex_count)};
}

inline Graph complete_graph(std::size_t k) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < k; ++i)
    for (VertexId j = i + 1; j < k; ++j) e.push_back({i, j, 1});
  return Graph{k, e};
}

/// G_n together with the ids of its global boundary vertices.
struct LevelGraph : Graph {
  int level = 0;
  std::vector<VertexId> corners;
};

struct SelfSimilarStructure {
  std::string name;
  std::size_t m = 0;
  std::size_t v0_size = 0;
  std::size_t v1_size = 0;
  std::vector<Edge> edges1;
  std::vector<VertexId> boundary;
  std::vector<std::vector<VertexId>> cell_maps;
};

struct Violation {
  std::string name;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& name) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.name == name; });
  }
};

/// Checks the combinatorial conditions every supported structure must meet.
/// Never throws; each failed condition is reported once by name.
inline ValidationReport validate(const SelfSimilarStructure& s) {
  ValidationReport r;
  auto add = [&](const std::string& name, const std::string& detail) {
    if (!r.has(name)) r.violations.push_back({name, detail});
  };
  if (s.m < 2) add("too few cells", "need at least 2 cells, got " + std::to_string(s.m));
  if (s.v0_size < 2) add("boundary too small", "need at least 2 boundary vertices");
  if (s.v1_size == 0) add("empty level-1 graph", "v1_size is 0");
  if (s.boundary.size() != s.v0_size)
    add("boundary size", "expected " + std::to_string(s.v0_size) + " boundary ids, got " + std::to_string(s.boundary.size()));
  if (s.cell_maps.size() != s.m)
    add("cell map size", "expected " + std::to_string(s.m) + " cell maps, got " + std::to_string(s.cell_maps.size()));

  bool ids_ok = true;
  for (const auto& e : s.edges1) {
    if (e.u >= s.v1_size || e.v >= s.v1_size) {
      add("vertex out of range", "edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
      ids_ok = false;
    } else if (e.u == e.v) {
      add("loop", "loop at vertex " + std::to_string(e.u));
      ids_ok = false;
    }
    if (e.mult == 0) add("zero multiplicity", "edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
  }
  for (VertexId b : s.boundary) {
    if (b >= s.v1_size) {
      add("vertex out of range", "boundary id " + std::to_string(b));
      ids_ok = false;
    }
  }
  if (std::set<VertexId>(s.boundary.begin(), s.boundary.end()).size() != s.boundary.size())
    add("boundary not distinct", "boundary ids repeat");
  for (std::size_t i = 0; i < s.cell_maps.size(); ++i) {
    const auto& cm = s.cell_maps[i];
    if (cm.size() != s.v0_size) {
      add("cell map size", "cell " + std::to_string(i) + " has " + std::to_string(cm.size()) + " entries");
      ids_ok = false;
      continue;
    }
    for (VertexId x : cm) {
      if (x >= s.v1_size) {
        add("vertex out of range", "cell " + std::to_string(i) + " maps to " + std::to_string(x));
        ids_ok = false;
      }
    }
    if (std::set<VertexId>(cm.begin(), cm.end()).size() != cm.size())
      add("non-injective cell map", "cell " + std::to_string(i));
  }
  if (!ids_ok || s.boundary.size() != s.v0_size || s.cell_maps.size() != s.m) return r;

  // Fixed-point condition and each boundary vertex being fixed by some cell.
  for (std::size_t j = 0; j < s.v0_size; ++j) {
    bool fixed = false;
    for (std::size_t i = 0; i < s.m; ++i) {
      for (std::size_t k = 0; k < s.v0_size; ++k) {
        if (s.cell_maps[i][k] != s.boundary[j]) continue;
        if (k != j)
          add("fixed-point", "boundary vertex " + std::to_string(j) + " is corner " + std::to_string(k) + " of cell " +
                                 std::to_string(i));
        else
          fixed = true;
      }
    }
    if (!fixed) add("boundary corner not fixed", "no cell fixes boundary vertex " + std::to_string(j));
  }

  std::set<VertexId> bset(s.boundary.begin(), s.boundary.end());
  for (const auto& e : s.edges1) {
    if (bset.count(e.u) && bset.count(e.v))
      add("boundary-boundary edge", "edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
  }

  std::vector<bool> covered(s.v1_size, false);
  for (const auto& cm : s.cell_maps)
    for (VertexId x : cm) covered[x] = true;
  for (VertexId x = 0; x < s.v1_size; ++x) {
    if (!covered[x]) add("uncovered vertex", "vertex " + std::to_string(x) + " lies in no cell");
  }

  Graph g1 = make_graph(s.v1_size, s.edges1);
  if (!g1.connected()) add("disconnected", "level-1 graph is not connected");

  std::vector<Edge> from_cells;
  for (const auto& cm : s.cell_maps)
    for (std::size_t a = 0; a < cm.size(); ++a)
      for (std::size_t b = a + 1; b < cm.size(); ++b) from_cells.push_back({cm[a], cm[b], 1});
  if (r.ok() && normalize_edges(from_cells, s.v1_size) != g1.edges)
    add("edges inconsistent with cell maps", "level-1 edges differ from the union of complete graphs on the cells");
  return r;
}

inline void require_valid(const SelfSimilarStructure& s) {
  ValidationReport r = validate(s);
  if (r.ok()) return;
  std::string msg = "invalid structure '" + s.name + "':";
  for (const auto& v : r.violations) msg += " [" + v.name + ": " + v.detail + "]";
  throw std::invalid_argument(msg);
}

/// |V_n| from |V_n| = m|V_{n-1}| - m|V_0| + |V_1|.
inline Integer vertex_count(const SelfSimilarStructure& s, int n) {
  if (n < 0) throw std::invalid_argument("negative level");
  Integer v(static_cast<unsigned long>(s.v0_size));
  for (int k = 1; k <= n; ++k) {
    v = v * static_cast<unsigned long>(s.m) - Integer(static_cast<unsigned long>(s.m * s.v0_size)) +
        static_cast<unsigned long>(s.v1_size);
  }
  return v;
}

/// True when the bipartite cell/vertex incidence graph of G_1 is a tree, i.e.
/// cells are glued without cycles.
inline bool cells_form_tree(const SelfSimilarStructure& s) {
  std::vector<std::size_t> parent(s.m + s.v1_size);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < s.m; ++i) {
    for (VertexId x : s.cell_maps[i]) {
      std::size_t a = find(i);
      std::size_t b = find(s.m + x);
      if (a == b) return false;
      parent[a] = b;
    }
  }
  return true;
}

/// Builds G_n by gluing m copies of G_{n-1}. Vertex order: global corners in
/// boundary order, then first appearance scanning copies and their vertices.
inline LevelGraph build_level(const SelfSimilarStructure& s, int n) {
  if (n < 0) throw std::invalid_argument("negative level");
  require_valid(s);
  LevelGraph g;
  static_cast<Graph&>(g) = complete_graph(s.v0_size);
  g.level = 0;
  g.corners.resize(s.v0_size);
  std::iota(g.corners.begin(), g.corners.end(), 0);

  for (int level = 1; level <= n; ++level) {
    std::vector<std::optional<VertexId>> site(s.v1_size);
    for (std::size_t j = 0; j < s.v0_size; ++j) site[s.boundary[j]] = j;
    VertexId next = s.v0_size;
    std::vector<std::optional<std::size_t>> corner_index(g.vertex_count);
    for (std::size_t j = 0; j < s.v0_size; ++j) corner_index[g.corners[j]] = j;

    std::vector<std::vector<VertexId>> ids(s.m, std::vector<VertexId>(g.vertex_count));
    for (std::size_t i = 0; i < s.m; ++i) {
      for (VertexId y = 0; y < g.vertex_count; ++y) {
        if (corner_index[y]) {
          VertexId x = s.cell_maps[i][*corner_index[y]];
          if (!site[x]) site[x] = next++;
          ids[i][y] = *site[x];
        } else {
          ids[i][y] = next++;
        }
      }
    }
    std::vector<Edge> raw;
    raw.reserve(g.edges.size() * s.m);
    for (std::size_t i = 0; i < s.m; ++i)
      for (const auto& e : g.edges) raw.push_back({ids[i][e.u], ids[i][e.v], e.mult});
    LevelGraph h;
    h.vertex_count = next;
    h.edges = normalize_edges(raw, next);
    h.level = level;
    h.corners.resize(s.v0_size);
    std::iota(h.corners.begin(), h.corners.end(), 0);
    g = std::move(h);
  }
  return g;
}

/// Degrees of G_n: the v0 corner degrees plus a histogram of all other vertices.
struct DegreeStats {
  std::vector<Integer> corner_degrees;
  std::map<Integer, Integer> interior_histogram;

  Integer vertex_total() const {
    Integer t(static_cast<unsigned long>(corner_degrees.size()));
    for (const auto& [d, c] : interior_histogram) t += c;
    return t;
  }
  Integer degree_sum() const {
    Integer t(0);
    for (const auto& d : corner_degrees) t += d;
    for (const auto& [d, c] : interior_histogram) t += d * c;
    return t;
  }

  friend bool operator==(const DegreeStats&, const DegreeStats&) = default;
};

/// Degree statistics of G_n computed by recursion, without building G_n.
inline DegreeStats degree_stats(const SelfSimilarStructure& s, int n) {
  if (n < 0) throw std::invalid_argument("negative level");
  require_valid(s);
  DegreeStats st;
  st.corner_degrees.assign(s.v0_size, Integer(static_cast<unsigned long>(s.v0_size - 1)));
  std::vector<unsigned long> kappa(s.v0_size, 0);
  for (std::size_t j = 0; j < s.v0_size; ++j)
    for (const auto& cm : s.cell_maps)
      if (cm[j] == s.boundary[j]) ++kappa[j];
  std::set<VertexId> bset(s.boundary.begin(), s.boundary.end());
  for (int level = 1; level <= n; ++level) {
    std::map<VertexId, Integer> sites;
    for (const auto& cm : s.cell_maps)
      for (std::size_t y = 0; y < s.v0_size; ++y)
        if (!bset.count(cm[y])) sites[cm[y]] += st.corner_degrees[y];
    DegreeStats next;
    for (auto& [d, c] : st.interior_histogram) next.interior_histogram[d] = c * static_cast<unsigned long>(s.m);
    for (const auto& [x, d] : sites) next.interior_histogram[d] += 1;
    next.corner_degrees.resize(s.v0_size);
    for (std::size_t j = 0; j < s.v0_size; ++j) next.corner_degrees[j] = st.corner_degrees[j] * kappa[j];
    st = std::move(next);
  }
  return st;
}

/// Degree statistics read off an explicit level graph.
inline DegreeStats degree_stats(const LevelGraph& g) {
  DegreeStats st;
  auto deg = g.degrees();
  std::vector<bool> is_corner(g.vertex_count, false);
  for (VertexId c : g.corners) {
    is_corner[c] = true;
    st.corner_degrees.emplace_back(static_cast<unsigned long>(deg[c]));
  }
  for (VertexId x = 0; x < g.vertex_count; ++x)
    if (!is_corner[x]) st.interior_histogram[Integer(static_cast<unsigned long>(deg[x]))] += 1;
  return st;
}

namespace detail {

inline SelfSimilarStructure from_cells(std::string name, std::size_t v1, std::vector<VertexId> boundary,
                                       std::vector<std::vector<VertexId>> maps) {
  SelfSimilarStructure s;
  s.name = std::move(name);
  s.m = maps.size();
  s.v0_size = boundary.size();
  s.v1_size = v1;
  s.boundary = std::move(boundary);
  s.cell_maps = std::move(maps);
  std::vector<Edge> e;
  for (const auto& cm : s.cell_maps)
    for (std::size_t a = 0; a < cm.size(); ++a)
      for (std::size_t b = a + 1; b < cm.size(); ++b) e.push_back({cm[a], cm[b], 1});
  s.edges1 = normalize_edges(e, v1);
  return s;
}

}  // namespace detail

inline std::vector<std::string> builtin_names() {
  return {"sierpinski", "nonpcf_sg", "diamond", "hexagasket", "interval", "tree3"};
}

inline SelfSimilarStructure builtin(const std::string& name) {
  if (name == "sierpinski") return detail::from_cells(name, 6, {0, 1, 2}, {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}});
  if (name == "nonpcf_sg") {
    // Six triangles around a shared centre (vertex 6); each global corner is
    // shared by two cells.
    return detail::from_cells(name, 7, {0, 1, 2},
                              {{0, 3, 6}, {0, 6, 5}, {6, 1, 3}, {4, 1, 6}, {5, 6, 2}, {6, 4, 2}});
  }
  if (name == "diamond") return detail::from_cells(name, 4, {0, 1}, {{0, 2}, {2, 1}, {0, 3}, {3, 1}});
  if (name == "hexagasket") {
    return detail::from_cells(name, 12, {0, 1, 2},
                              {{0, 6, 7}, {3, 7, 8}, {8, 1, 9}, {4, 9, 10}, {10, 11, 2}, {5, 11, 6}});
  }
  if (name == "interval") return detail::from_cells(name, 3, {0, 1}, {{0, 2}, {2, 1}});
  if (name == "tree3") return detail::from_cells(name, 7, {0, 1, 2}, {{0, 3, 4}, {5, 1, 3}, {3, 6, 2}});
  std::string names;
  for (const auto& n : builtin_names()) names += (names.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown fractal '" + name + "' (builtins: " + names + ")");
}

inline bool is_builtin(const std::string& name) {
  auto names = builtin_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

// JSON definition files.

inline SelfSimilarStructure structure_from_json(const nlohmann::json& j) {
  try {
    SelfSimilarStructure s;
    s.name = j.value("name", std::string("unnamed"));
    s.m = j.at("cells").get<std::size_t>();
    s.v0_size = j.at("boundary_size").get<std::size_t>();
    s.v1_size = j.at("v1_size").get<std::size_t>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) throw std::invalid_argument("edge entries are [u, v] or [u, v, mult]");
      s.edges1.push_back({e[0].get<VertexId>(), e[1].get<VertexId>(), e.size() == 3 ? e[2].get<std::uint64_t>() : 1});
    }
    s.boundary = j.at("boundary").get<std::vector<VertexId>>();
    s.cell_maps = j.at("cell_maps").get<std::vector<std::vector<VertexId>>>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed fractal definition: ") + e.what());
  }
}

inline nlohmann::json structure_to_json(const SelfSimilarStructure& s) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : s.edges1) {
    if (e.mult == 1)
      edges.push_back({e.u, e.v});
    else
      edges.push_back({e.u, e.v, e.mult});
  }
  return {{"name", s.name},         {"cells", s.m},       {"boundary_size", s.v0_size}, {"v1_size", s.v1_size},
          {"edges", edges},         {"boundary", s.boundary}, {"cell_maps", s.cell_maps}};
}

inline SelfSimilarStructure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open fractal file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("cannot parse " + path + ": " + e.what());
  }
  return structure_from_json(j);
}

/// A builtin name or the path of a JSON definition file.
inline SelfSimilarStructure resolve_structure(const std::string& name_or_path) {
  if (is_builtin(name_or_path)) return builtin(name_or_path);
  if (name_or_path.find('/') != std::string::npos || name_or_path.find(".json") != std::string::npos)
    return load_structure(name_or_path);
  return builtin(name_or_path);
}

// Graph export.

inline nlohmann::json graph_to_json(const LevelGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.mult});
  return {{"level", g.level}, {"vertices", g.vertex_count}, {"corners", g.corners}, {"edges", edges}};
}

/// DOT text; parallel edges are written as repeated lines.
inline std::string graph_to_dot(const LevelGraph& g, const std::string& name = "G") {
  std::ostringstream os;
  os << "graph " << name << "_" << g.level << " {\n";
  std::vector<bool> is_corner(g.vertex_count, false);
  for (VertexId c : g.corners) is_corner[c] = true;
  for (VertexId x = 0; x < g.vertex_count; ++x) {
    os << "  " << x;
    if (is_corner[x]) os << " [shape=box]";
    os << ";\n";
  }
  for (const auto& e : g.edges)
    for (std::uint64_t k = 0; k < e.mult; ++k) os << "  " << e.u << " -- " << e.v << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string export_graph(const LevelGraph& g, const std::string& format, const std::string& name = "G") {
  if (format == "dot") return graph_to_dot(g, name);
  if (format == "json") return graph_to_json(g).dump() + "\n";
  throw std::invalid_argument("unsupported export format '" + format + "' (use dot or json)");
}

}  // namespace dtrees
