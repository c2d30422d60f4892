// Brute-force reference implementations used only by tests. Everything here
// is written against the raw adjacency structure so that library results are
// checked by independent code paths, not by the code under test.
#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

#include "bfcover/graph.hpp"

namespace oracle {

// Plain BFS, no caching, no reliance on Graph's distance machinery.
inline std::vector<int> bfs(const bfcover::Graph& g, int src) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : g.neighbors(x))
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
  }
  return dist;
}

// All u,v-geodesics by exhaustive DFS over simple paths, pruned only by the
// target length (computed here by oracle::bfs).
inline std::vector<bfcover::Path> all_geodesics(const bfcover::Graph& g, int u, int v) {
  auto du = bfs(g, u);
  int d = du[v];
  std::vector<bfcover::Path> out;
  if (d < 0) return out;
  std::vector<char> used(g.vertex_count(), 0);
  bfcover::Path cur{u};
  used[u] = 1;
  auto dfs = [&](auto&& self, int x) -> void {
    if (static_cast<int>(cur.size()) - 1 == d) {
      if (x == v) out.push_back(cur);
      return;
    }
    for (int y : g.neighbors(x)) {
      if (used[y]) continue;
      used[y] = 1;
      cur.push_back(y);
      self(self, y);
      cur.pop_back();
      used[y] = 0;
    }
  };
  dfs(dfs, u);
  return out;
}

inline bool contains_subpath(const bfcover::Path& big, const bfcover::Path& small) {
  if (small.size() > big.size()) return false;
  auto rev = small;
  std::reverse(rev.begin(), rev.end());
  for (std::size_t i = 0; i + small.size() <= big.size(); ++i) {
    if (std::equal(small.begin(), small.end(), big.begin() + i)) return true;
    if (std::equal(rev.begin(), rev.end(), big.begin() + i)) return true;
  }
  return false;
}

// Every geodesic of a small graph (all vertex pairs), each in one direction.
inline std::vector<bfcover::Path> every_geodesic(const bfcover::Graph& g) {
  std::vector<bfcover::Path> all;
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u; v < g.vertex_count(); ++v) {
      auto paths = all_geodesics(g, u, v);
      all.insert(all.end(), paths.begin(), paths.end());
    }
  return all;
}

// Maximal <=> no strictly longer geodesic contains p as a contiguous subpath.
inline bool brute_force_maximal(const bfcover::Path& p,
                                const std::vector<bfcover::Path>& every) {
  for (const auto& q : every)
    if (q.size() > p.size() && contains_subpath(q, p)) return false;
  return true;
}

// Exact minimum set cover by DP over target subsets (targets.size() <= ~20).
// Returns -1 if infeasible.
inline int min_cover_dp(int target_count, const std::vector<std::vector<int>>& sets) {
  if (target_count > 20) throw std::invalid_argument("dp oracle limited to 20 targets");
  std::uint32_t full = (target_count == 0) ? 0 : ((1u << target_count) - 1);
  std::vector<std::uint32_t> masks;
  masks.reserve(sets.size());
  for (const auto& s : sets) {
    std::uint32_t m = 0;
    for (int t : s)
      if (t >= 0 && t < target_count) m |= (1u << t);
    masks.push_back(m);
  }
  std::vector<int> best(full + 1, -1);
  best[0] = 0;
  for (std::uint32_t state = 0; state <= full; ++state) {
    if (best[state] < 0) continue;
    for (std::uint32_t m : masks) {
      std::uint32_t next = state | m;
      if (best[next] < 0 || best[next] > best[state] + 1) best[next] = best[state] + 1;
    }
    if (state == full) break;
  }
  return best[full];
}

// Connected graph: random spanning tree plus extra random non-edges.
inline bfcover::Graph random_connected_graph(int n, int extra_edges, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<bfcover::Edge> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    edges.emplace_back(pick(rng), v);
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  int attempts = 0;
  while (extra_edges > 0 && attempts < 1000) {
    ++attempts;
    int u = pick(rng), v = pick(rng);
    if (u == v) continue;
    bfcover::Edge e{std::min(u, v), std::max(u, v)};
    if (std::find(edges.begin(), edges.end(), e) != edges.end()) continue;
    edges.push_back(e);
    --extra_edges;
  }
  return bfcover::Graph(n, edges);
}

}  // namespace oracle
