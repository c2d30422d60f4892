#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bfcover {

/// A path is an ordered vertex-id sequence; whether it is a geodesic is a
/// property checked against a graph, not a property of the container.
using Path = std::vector<int>;

using Edge = std::pair<int, int>;

inline constexpr std::size_t kDefaultEnumGuard = 1'000'000;

enum class CoverMode { Vertex, Edge };

inline const char* to_string(CoverMode m) {
  return m == CoverMode::Vertex ? "vertex" : "edge";
}

/// Thrown when maximal-geodesic enumeration would emit more paths than the
/// caller's guard allows. Callers that hit this must supply an explicit
/// candidate list instead of relying on enumeration.
class EnumerationGuardError : public std::runtime_error {
public:
  EnumerationGuardError(std::size_t guard, std::size_t emitted)
      : std::runtime_error("geodesic enumeration exceeded the guard of " +
                           std::to_string(guard) + " paths (partial result discarded)"),
        guard_(guard),
        emitted_(emitted) {}

  std::size_t guard() const { return guard_; }
  std::size_t emitted() const { return emitted_; }

private:
  std::size_t guard_;
  std::size_t emitted_;
};

/// Immutable undirected graph over dense vertex ids [0, n) with sorted
/// adjacency and a memoized BFS distance oracle.
///
/// All operations are pure reads and safe for concurrent callers; the
/// distance cache is the only mutable state and is internally synchronized.
/// Copies share the cache (same topology, same distances).
class Graph {
public:
  Graph() : cache_(std::make_shared<DistanceCache>(0)) {}

  Graph(int n, const std::vector<Edge>& edges, std::vector<std::string> labels = {})
      : n_(n), labels_(std::move(labels)) {
    if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
    if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
      throw std::invalid_argument("label map size does not match vertex count");

    edges_.reserve(edges.size());
    for (const auto& [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") has an endpoint outside [0," + std::to_string(n) + ")");
      if (u == v)
        throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
      edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : edges_) {
      ++offsets_[u + 1];
      ++offsets_[v + 1];
    }
    for (int i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    adj_.resize(edges_.size() * 2);
    std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges_) {
      adj_[fill[u]++] = v;
      adj_[fill[v]++] = u;
    }
    // counting sort by endpoint already leaves each list sorted

    connected_ = compute_connected();
    cache_ = std::make_shared<DistanceCache>(n_);
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  std::span<const int> neighbors(int v) const {
    check_vertex(v);
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  int degree(int v) const {
    check_vertex(v);
    return offsets_[v + 1] - offsets_[v];
  }

  bool has_edge(int u, int v) const {
    auto nb = neighbors(u);
    check_vertex(v);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Edges as (min,max) pairs in lexicographic order; index into this list is
  /// the edge id used by edge-mode coverage and the solver.
  const std::vector<Edge>& edges() const { return edges_; }

  int edge_index(int u, int v) const {
    Edge e{std::min(u, v), std::max(u, v)};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return -1;
    return static_cast<int>(it - edges_.begin());
  }

  bool connected() const { return connected_; }

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label(int v) const {
    check_vertex(v);
    if (labels_.empty()) throw std::logic_error("graph has no labels");
    return labels_[v];
  }

  /// Cached BFS distance vector from src; -1 marks unreachable vertices.
  std::shared_ptr<const std::vector<int>> distances_from(int src) const {
    check_vertex(src);
    return cache_->get(*this, src);
  }

private:
  // FIFO-capped per-source cache. The cap scales inversely with n so the
  // memo stays bounded (~tens of MB) even on the largest graphs handled here.
  struct DistanceCache {
    explicit DistanceCache(int n)
        : cap(std::max<std::size_t>(16, (std::size_t{1} << 24) / std::max(n, 1))) {}

    std::shared_ptr<const std::vector<int>> get(const Graph& g, int src) {
      std::lock_guard<std::mutex> lock(mu);
      if (auto it = memo.find(src); it != memo.end()) return it->second;
      auto dist = std::make_shared<const std::vector<int>>(g.bfs(src));
      memo.emplace(src, dist);
      order.push_back(src);
      while (memo.size() > cap) {
        memo.erase(order.front());
        order.pop_front();
      }
      return dist;
    }

    std::mutex mu;
    std::unordered_map<int, std::shared_ptr<const std::vector<int>>> memo;
    std::deque<int> order;
    std::size_t cap;
  };

  void check_vertex(int v) const {
    if (v < 0 || v >= n_)
      throw std::out_of_range("vertex id " + std::to_string(v) + " outside [0," +
                              std::to_string(n_) + ")");
  }

  std::vector<int> bfs(int src) const {
    std::vector<int> dist(n_, -1);
    std::vector<int> queue;
    queue.reserve(n_);
    dist[src] = 0;
    queue.push_back(src);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int x = queue[head];
      int dx = dist[x];
      for (int y : neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = dx + 1;
          queue.push_back(y);
        }
      }
    }
    return dist;
  }

  bool compute_connected() const {
    if (n_ <= 1) return true;
    auto dist = bfs(0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
  }

  int n_ = 0;
  std::vector<int> offsets_{0};
  std::vector<int> adj_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  bool connected_ = true;
  std::shared_ptr<DistanceCache> cache_;

  friend struct DistanceCache;
};

inline Graph build_graph(int n, const std::vector<Edge>& edges) { return Graph(n, edges); }

/// K_{a,b}: left side ids [0,a), right side ids [a,a+b).
inline Graph complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("complete_bipartite needs both sides non-empty");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(a) * b);
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) edges.emplace_back(u, a + v);
  return Graph(a + b, edges);
}

/// Fresh (uncached) single-source BFS distances; -1 marks unreachable.
inline std::vector<int> bfs_distances(const Graph& g, int src) {
  return *g.distances_from(src);
}

/// Memoized distance query; -1 if v is unreachable from u.
inline int distance(const Graph& g, int u, int v) {
  auto d = g.distances_from(u);
  if (v < 0 || v >= g.vertex_count())
    throw std::out_of_range("vertex id " + std::to_string(v) + " out of range");
  return (*d)[v];
}

enum class PathDefect {
  None,
  Empty,
  VertexOutOfRange,
  RepeatedVertex,
  NotAdjacent,
  NotShortest,
};

inline const char* to_string(PathDefect d) {
  switch (d) {
    case PathDefect::None: return "ok";
    case PathDefect::Empty: return "empty path";
    case PathDefect::VertexOutOfRange: return "vertex id out of range";
    case PathDefect::RepeatedVertex: return "repeated vertex";
    case PathDefect::NotAdjacent: return "consecutive vertices not adjacent";
    case PathDefect::NotShortest: return "length exceeds endpoint distance";
  }
  return "?";
}

/// Classifies why p fails to be a geodesic in g (or PathDefect::None).
/// Accepts any sequence; a single vertex is a length-0 geodesic.
inline PathDefect check_geodesic(const Graph& g, const Path& p) {
  if (p.empty()) return PathDefect::Empty;
  for (int v : p)
    if (v < 0 || v >= g.vertex_count()) return PathDefect::VertexOutOfRange;
  std::vector<int> seen(p);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    return PathDefect::RepeatedVertex;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (!g.has_edge(p[i], p[i + 1])) return PathDefect::NotAdjacent;
  int len = static_cast<int>(p.size()) - 1;
  if (distance(g, p.front(), p.back()) != len) return PathDefect::NotShortest;
  return PathDefect::None;
}

inline bool is_geodesic(const Graph& g, const Path& p) {
  return check_geodesic(g, p) == PathDefect::None;
}

namespace detail {

/// Endpoint-extension criterion. Maximality of a geodesic depends only on its
/// endpoints: a u,v-geodesic of length d extends iff some neighbor x of one
/// endpoint satisfies d(x, other) = d + 1.
inline bool pair_is_maximal(const Graph& g, int u, int v) {
  auto du = g.distances_from(u);
  auto dv = g.distances_from(v);
  int d = (*du)[v];
  for (int x : g.neighbors(u))
    if ((*dv)[x] == d + 1) return false;
  for (int y : g.neighbors(v))
    if ((*du)[y] == d + 1) return false;
  return true;
}

}  // namespace detail

/// True iff p is a geodesic not extendable at either end. Throws if p is not
/// a geodesic at all.
inline bool is_maximal_geodesic(const Graph& g, const Path& p) {
  if (PathDefect d = check_geodesic(g, p); d != PathDefect::None)
    throw std::invalid_argument(std::string("is_maximal_geodesic: not a geodesic (") +
                                to_string(d) + ")");
  return detail::pair_is_maximal(g, p.front(), p.back());
}

/// Canonical direction: lexicographically smaller endpoint first.
inline Path canonical_path(Path p) {
  if (!p.empty() && p.back() < p.front()) std::reverse(p.begin(), p.end());
  return p;
}

/// All u,v-geodesics, DFS over the shortest-path DAG, emitted in
/// lexicographic neighbor order starting at u. Throws EnumerationGuardError
/// once more than guard paths have been produced.
inline std::vector<Path> geodesics_between(const Graph& g, int u, int v,
                                           std::size_t guard = kDefaultEnumGuard) {
  auto du = g.distances_from(u);
  auto dv = g.distances_from(v);
  int d = (*du)[v];
  std::vector<Path> out;
  if (d < 0) return out;

  Path cur{u};
  auto dfs = [&](auto&& self, int x) -> void {
    if (x == v) {
      if (out.size() >= guard) throw EnumerationGuardError(guard, out.size());
      out.push_back(cur);
      return;
    }
    for (int y : g.neighbors(x)) {
      if ((*du)[y] == (*du)[x] + 1 && (*du)[y] + (*dv)[y] == d) {
        cur.push_back(y);
        self(self, y);
        cur.pop_back();
      }
    }
  };
  dfs(dfs, u);
  return out;
}

/// Number of distinct u,v-geodesics (DP over the shortest-path DAG).
inline std::uint64_t count_geodesics(const Graph& g, int u, int v) {
  auto du = g.distances_from(u);
  auto dv = g.distances_from(v);
  int d = (*du)[v];
  if (d < 0) return 0;
  // on-geodesic vertices bucketed by distance from u
  std::vector<std::vector<int>> levels(d + 1);
  for (int x = 0; x < g.vertex_count(); ++x)
    if ((*du)[x] >= 0 && (*du)[x] + (*dv)[x] == d) levels[(*du)[x]].push_back(x);
  std::vector<std::uint64_t> cnt(g.vertex_count(), 0);
  cnt[u] = 1;
  for (int k = 0; k < d; ++k) {
    for (int x : levels[k]) {
      for (int y : g.neighbors(x))
        if ((*du)[y] == k + 1 && (*du)[y] + (*dv)[y] == d) cnt[y] += cnt[x];
    }
  }
  return cnt[v];
}

/// Every maximal geodesic of g, one entry per direction-canonical form
/// (smaller endpoint first). Guard bounds the total number of emitted paths.
inline std::vector<Path> enumerate_maximal_geodesics(const Graph& g,
                                                     std::size_t guard = kDefaultEnumGuard) {
  if (!g.connected())
    throw std::invalid_argument("enumerate_maximal_geodesics requires a connected graph");
  std::vector<Path> result;
  if (g.vertex_count() == 1) {
    result.push_back({0});
    return result;
  }
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (int v = u + 1; v < g.vertex_count(); ++v) {
      if (!detail::pair_is_maximal(g, u, v)) continue;
      std::size_t room = guard - result.size();
      std::vector<Path> paths;
      try {
        paths = geodesics_between(g, u, v, room);
      } catch (const EnumerationGuardError&) {
        throw EnumerationGuardError(guard, result.size() + room);
      }
      result.insert(result.end(), std::make_move_iterator(paths.begin()),
                    std::make_move_iterator(paths.end()));
    }
  }
  return result;
}

/// True iff the closed sequence c is an isometric cycle: for every vertex
/// pair on c, the shorter arc equals the graph distance. Throws if c is not
/// a simple cycle (a single vertex or an edge is not a cycle).
inline bool is_isometric_cycle(const Graph& g, const std::vector<int>& c) {
  int len = static_cast<int>(c.size());
  if (len < 3) throw std::invalid_argument("is_isometric_cycle: need at least 3 vertices");
  for (int v : c)
    if (v < 0 || v >= g.vertex_count())
      throw std::invalid_argument("is_isometric_cycle: vertex id out of range");
  std::vector<int> seen(c);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("is_isometric_cycle: repeated vertex");
  for (int i = 0; i < len; ++i)
    if (!g.has_edge(c[i], c[(i + 1) % len]))
      throw std::invalid_argument("is_isometric_cycle: consecutive vertices not adjacent");

  for (int i = 0; i < len; ++i) {
    auto di = g.distances_from(c[i]);
    for (int j = i + 1; j < len; ++j) {
      int arc = std::min(j - i, len - (j - i));
      if ((*di)[c[j]] != arc) return false;
    }
  }
  return true;
}

/// A set of paths asserted to cover a target universe. r >= 0 tags covers of
/// a butterfly of that dimension (enables coordinate serialization).
struct Cover {
  CoverMode mode = CoverMode::Vertex;
  int r = -1;
  std::vector<Path> paths;

  int size() const { return static_cast<int>(paths.size()); }
};

struct CoverageReport {
  CoverMode mode = CoverMode::Vertex;
  int total_targets = 0;
  int covered = 0;
  std::vector<int> missing;        // uncovered target ids (vertex or edge ids)
  std::vector<int> invalid_paths;  // indices of paths failing the geodesic check
  int path_count = 0;
  bool pairwise_edge_disjoint = true;

  bool valid() const { return missing.empty() && invalid_paths.empty(); }
};

/// Checks which targets the paths cover. Targets default to all vertices
/// (vertex mode) or all edge ids (edge mode). Edge mode also reports whether
/// the paths are pairwise edge-disjoint.
inline CoverageReport coverage_report(const Graph& g, const std::vector<Path>& paths,
                                      CoverMode mode,
                                      const std::optional<std::vector<int>>& targets = std::nullopt) {
  CoverageReport rep;
  rep.mode = mode;
  rep.path_count = static_cast<int>(paths.size());

  int universe = mode == CoverMode::Vertex ? g.vertex_count() : g.edge_count();
  std::vector<int> target_list;
  if (targets) {
    target_list = *targets;
    for (int t : target_list)
      if (t < 0 || t >= universe)
        throw std::out_of_range("coverage target " + std::to_string(t) + " out of range");
  } else {
    target_list.resize(universe);
    for (int i = 0; i < universe; ++i) target_list[i] = i;
  }
  rep.total_targets = static_cast<int>(target_list.size());

  std::vector<char> hit(universe, 0);
  std::vector<int> edge_use;
  if (mode == CoverMode::Edge) edge_use.assign(g.edge_count(), 0);

  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (check_geodesic(g, paths[i]) != PathDefect::None)
      rep.invalid_paths.push_back(static_cast<int>(i));
    const Path& p = paths[i];
    if (mode == CoverMode::Vertex) {
      for (int v : p)
        if (v >= 0 && v < universe) hit[v] = 1;
    } else {
      for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        int e = g.edge_index(p[k], p[k + 1]);
        if (e >= 0) {
          hit[e] = 1;
          ++edge_use[e];
        }
      }
    }
  }

  if (mode == CoverMode::Edge)
    rep.pairwise_edge_disjoint =
        std::none_of(edge_use.begin(), edge_use.end(), [](int c) { return c > 1; });

  for (int t : target_list) {
    if (hit[t])
      ++rep.covered;
    else
      rep.missing.push_back(t);
  }
  return rep;
}

}  // namespace bfcover
