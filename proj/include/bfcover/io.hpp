#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bfcover/butterfly.hpp"
#include "bfcover/edge_partition.hpp"
#include "bfcover/graph.hpp"
#include "bfcover/solver.hpp"

namespace bfcover {

using json = nlohmann::json;

// ---------------------------------------------------------------- files ----

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("short write to " + path);
}

// ----------------------------------------------------------- edge lists ----

/// Plain text: `# vertices N` header comment, then one `u v` line per edge in
/// sorted order. Re-serializing a parsed list is byte-identical.
inline std::string graph_to_edgelist(const Graph& g) {
  std::ostringstream out;
  out << "# vertices " << g.vertex_count() << "\n";
  for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
  return out.str();
}

inline Graph graph_from_edgelist(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  int line_no = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hdr(line.substr(1));
      std::string word;
      long value;
      if (hdr >> word >> value && word == "vertices") n = static_cast<int>(value);
      continue;
    }
    std::istringstream fields(line);
    int u, v;
    if (!(fields >> u >> v))
      throw std::runtime_error("edge list line " + std::to_string(line_no) +
                               ": expected two vertex ids, got \"" + line + "\"");
    std::string extra;
    if (fields >> extra)
      throw std::runtime_error("edge list line " + std::to_string(line_no) +
                               ": trailing content \"" + extra + "\"");
    edges.emplace_back(u, v);
    n = std::max({n, u + 1, v + 1});
  }
  if (n < 0) throw std::runtime_error("edge list is empty and has no vertices header");
  return Graph(n, edges);
}

// ------------------------------------------------------ butterfly export ----

/// {"r": r, "vertices": count, "edges": [[u,v],...]} with sorted edges.
inline json butterfly_topology_json(const Butterfly& bf) {
  json j;
  j["r"] = bf.r();
  j["vertices"] = bf.graph().vertex_count();
  json edges = json::array();
  for (const auto& [u, v] : bf.graph().edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  return j;
}

/// Graphviz text with L<j>R<s> node ids and one same-rank block per level.
inline std::string butterfly_to_dot(const Butterfly& bf) {
  const Graph& g = bf.graph();
  std::ostringstream out;
  out << "graph bf" << bf.r() << " {\n";
  out << "  rankdir=TB;\n";
  for (int j = 0; j <= bf.r(); ++j) {
    out << "  { rank=same;";
    for (int s = 0; s < bf.rows(); ++s) out << " " << g.label(bf.id(j, s)) << ";";
    out << " }\n";
  }
  for (const auto& [u, v] : g.edges()) out << "  " << g.label(u) << " -- " << g.label(v) << ";\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------- covers ----

namespace detail {

// r >= 1 serializes vertices as [level,row] pairs; r < 1 as raw ids.
inline json path_to_json(const Path& p, int r) {
  json arr = json::array();
  for (int v : p) {
    if (r >= 1) {
      arr.push_back({v >> r, v & ((1 << r) - 1)});
    } else {
      arr.push_back(v);
    }
  }
  return arr;
}

inline Path path_from_json(const json& arr, int r) {
  if (!arr.is_array()) throw std::runtime_error("path entry is not an array");
  Path p;
  for (const auto& item : arr) {
    if (r >= 1) {
      if (!item.is_array() || item.size() != 2)
        throw std::runtime_error("coordinate entry must be a [level,row] pair");
      int j = item[0].get<int>();
      int s = item[1].get<int>();
      if (j < 0 || j > r || s < 0 || s >= (1 << r))
        throw std::runtime_error("coordinate [" + std::to_string(j) + "," + std::to_string(s) +
                                 "] out of range for r=" + std::to_string(r));
      p.push_back((j << r) | s);
    } else {
      if (!item.is_number_integer())
        throw std::runtime_error("vertex entry must be an integer id");
      p.push_back(item.get<int>());
    }
  }
  return p;
}

}  // namespace detail

/// {"r":N, "mode":"vertex"|"edge", "size":K, "paths":[...]}; paths hold
/// [level,row] pairs when r >= 0, raw vertex ids otherwise.
inline json cover_to_json(const Cover& cover) {
  json j;
  j["r"] = cover.r;
  j["mode"] = to_string(cover.mode);
  j["size"] = cover.size();
  json paths = json::array();
  for (const auto& p : cover.paths) paths.push_back(detail::path_to_json(p, cover.r));
  j["paths"] = std::move(paths);
  return j;
}

inline Cover cover_from_json(const json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("mode") || !j.contains("paths"))
    throw std::runtime_error("cover JSON must carry r, mode, and paths");
  Cover cover;
  cover.r = j.at("r").get<int>();
  std::string mode = j.at("mode").get<std::string>();
  if (mode == "vertex")
    cover.mode = CoverMode::Vertex;
  else if (mode == "edge")
    cover.mode = CoverMode::Edge;
  else
    throw std::runtime_error("cover mode must be \"vertex\" or \"edge\", got \"" + mode + "\"");
  for (const auto& entry : j.at("paths"))
    cover.paths.push_back(detail::path_from_json(entry, cover.r));
  if (j.contains("size") && j.at("size").get<int>() != cover.size())
    throw std::runtime_error("cover JSON size field disagrees with its path count");
  return cover;
}

// ------------------------------------------------------------ partitions ----

/// {"r":N, "cycles":[...]?, "diametrals":[...]?}; cycles are emitted in their
/// canonical rotation (smaller anchor first, toward its smaller neighbor).
inline json partition_to_json(const CyclePartition& part, bool with_cycles,
                              bool with_diametrals) {
  json j;
  j["r"] = part.r;
  if (with_cycles) {
    json cycles = json::array();
    for (const auto& cyc : part.cycles)
      cycles.push_back(detail::path_to_json(cyc.vertices, part.r));
    j["cycles"] = std::move(cycles);
  }
  if (with_diametrals) {
    json paths = json::array();
    for (const auto& p : split_to_diametrals(part).paths)
      paths.push_back(detail::path_to_json(p, part.r));
    j["diametrals"] = std::move(paths);
  }
  return j;
}

inline CyclePartition partition_from_json(const json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("cycles"))
    throw std::runtime_error("partition JSON must carry r and cycles");
  CyclePartition part;
  part.r = j.at("r").get<int>();
  if (part.r < 1) throw std::runtime_error("partition JSON r must be positive");
  for (const auto& entry : j.at("cycles")) {
    std::vector<int> vertices = detail::path_from_json(entry, part.r);
    if (vertices.size() != static_cast<std::size_t>(4 * part.r))
      throw std::runtime_error("cycle length must be 4r");
    IsoCycle cyc;
    cyc.vertices = std::move(vertices);
    if (cyc.vertices[0] >> part.r != 0 || cyc.vertices[2 * part.r] >> part.r != 0)
      throw std::runtime_error("cycle anchors must sit at positions 0 and 2r");
    cyc.anchors = {cyc.vertices[0], cyc.vertices[2 * part.r]};
    part.cycles.push_back(std::move(cyc));
  }
  return part;
}

// -------------------------------------------------- solver instances/results

/// {"graph": {"vertices":N, "edges":[[u,v],...]} | "graph_file": "path",
///  "mode": "vertex"|"edge", "candidates": [[ids],...]?, "targets": [ids]?}
inline CoverInstance instance_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("instance JSON must be an object");
  Graph g;
  if (j.contains("graph_file")) {
    g = graph_from_edgelist(read_text_file(j.at("graph_file").get<std::string>()));
  } else if (j.contains("graph")) {
    const json& gj = j.at("graph");
    std::vector<Edge> edges;
    for (const auto& e : gj.at("edges")) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    g = Graph(gj.at("vertices").get<int>(), edges);
  } else {
    throw std::runtime_error("instance JSON needs \"graph\" or \"graph_file\"");
  }
  CoverMode mode = CoverMode::Vertex;
  if (j.contains("mode")) {
    std::string m = j.at("mode").get<std::string>();
    if (m == "edge")
      mode = CoverMode::Edge;
    else if (m != "vertex")
      throw std::runtime_error("instance mode must be \"vertex\" or \"edge\"");
  }
  std::optional<std::vector<Path>> candidates;
  if (j.contains("candidates")) {
    candidates.emplace();
    for (const auto& entry : j.at("candidates"))
      candidates->push_back(detail::path_from_json(entry, -1));
  }
  std::optional<std::vector<int>> targets;
  if (j.contains("targets")) targets = j.at("targets").get<std::vector<int>>();
  return make_instance(g, mode, std::move(candidates), std::move(targets));
}

/// Mirrors SolveResult; paths as raw ids (solver results are graph-generic).
inline json result_to_json(const SolveResult& res) {
  json j;
  j["status"] = to_string(res.status);
  j["size"] = res.cover.size();
  j["lower_bound"] = res.lower_bound;
  j["nodes_explored"] = res.nodes_explored;
  json paths = json::array();
  for (const auto& p : res.cover.paths) paths.push_back(detail::path_to_json(p, res.cover.r));
  j["paths"] = std::move(paths);
  return j;
}

}  // namespace bfcover
