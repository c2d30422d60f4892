#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bfcover/butterfly.hpp"
#include "bfcover/graph.hpp"

namespace bfcover {

/// An isometric cycle of length 4r in BF(r). Vertices are stored in canonical
/// rotation: position 0 holds the smaller of the two level-0 anchors, the
/// other anchor sits antipodally at position 2r, and position 1 holds the
/// smaller of the first anchor's two cycle neighbors.
struct IsoCycle {
  std::vector<int> vertices;
  std::pair<int, int> anchors;  // (vertices[0], vertices[2r])
};

/// 2^{r-1} edge-disjoint isometric 4r-cycles that exactly partition E(BF(r)).
struct CyclePartition {
  int r = 0;
  std::vector<IsoCycle> cycles;
};

namespace detail {

inline IsoCycle canonicalize_cycle(std::vector<int> cyc, const Butterfly& bf) {
  int len = static_cast<int>(cyc.size());
  std::vector<int> anchor_pos;
  for (int i = 0; i < len; ++i)
    if (bf.coord(cyc[i]).j == 0) anchor_pos.push_back(i);
  if (anchor_pos.size() != 2)
    throw std::logic_error("cycle has " + std::to_string(anchor_pos.size()) +
                           " level-0 vertices, expected 2");
  int start = cyc[anchor_pos[0]] < cyc[anchor_pos[1]] ? anchor_pos[0] : anchor_pos[1];
  std::rotate(cyc.begin(), cyc.begin() + start, cyc.end());
  if (cyc.back() < cyc[1]) {  // direction: smaller neighbor of the head first
    std::reverse(cyc.begin() + 1, cyc.end());
  }
  int other = -1;
  for (int i = 1; i < len; ++i)
    if (bf.coord(cyc[i]).j == 0) other = i;
  if (other != len / 2)
    throw std::logic_error("cycle anchors are not antipodal (positions 0 and " +
                           std::to_string(other) + " of " + std::to_string(len) + ")");
  IsoCycle out;
  out.anchors = {cyc[0], cyc[other]};
  out.vertices = std::move(cyc);
  return out;
}

/// Structural invariants every partition must satisfy; isometry is checked
/// for all cycles when full_isometry, else for a deterministic 10% sample.
inline void verify_partition(const CyclePartition& part, const Butterfly& bf,
                             bool full_isometry) {
  int r = bf.r();
  if (part.r != r) throw std::logic_error("partition dimension mismatch");
  if (part.cycles.size() != (std::size_t{1} << (r - 1)))
    throw std::logic_error("expected " + std::to_string(1 << (r - 1)) + " cycles, have " +
                           std::to_string(part.cycles.size()));
  const Graph& g = bf.graph();
  std::vector<char> edge_used(g.edge_count(), 0);
  for (std::size_t ci = 0; ci < part.cycles.size(); ++ci) {
    const IsoCycle& cyc = part.cycles[ci];
    int len = static_cast<int>(cyc.vertices.size());
    if (len != 4 * r)
      throw std::logic_error("cycle " + std::to_string(ci) + " has length " +
                             std::to_string(len) + ", expected " + std::to_string(4 * r));
    if (cyc.anchors.first != cyc.vertices[0] || cyc.anchors.second != cyc.vertices[2 * r] ||
        bf.coord(cyc.anchors.first).j != 0 || bf.coord(cyc.anchors.second).j != 0)
      throw std::logic_error("cycle " + std::to_string(ci) + " anchors are inconsistent");
    for (int i = 0; i < len; ++i) {
      int u = cyc.vertices[i], v = cyc.vertices[(i + 1) % len];
      int e = g.edge_index(u, v);
      if (e < 0)
        throw std::logic_error("cycle " + std::to_string(ci) +
                               " contains a non-edge between ids " + std::to_string(u) + " and " +
                               std::to_string(v));
      if (edge_used[e])
        throw std::logic_error("edge id " + std::to_string(e) + " appears in two cycles");
      edge_used[e] = 1;
    }
    if (full_isometry || ci % 10 == 0) {
      if (!is_isometric_cycle(g, cyc.vertices))
        throw std::logic_error("cycle " + std::to_string(ci) + " is not isometric");
    }
  }
  if (std::count(edge_used.begin(), edge_used.end(), 1) != g.edge_count())
    throw std::logic_error("cycles do not exhaust the edge set");
}

/// Backtracking oracle for the BF(3) base case: assemble candidate isometric
/// 12-cycles from pairs of disjoint geodesics between diametral level-0
/// pairs, then search for 4 of them partitioning all 48 edges.
inline CyclePartition search_base_bf3() {
  Butterfly bf(3);
  const Graph& g = bf.graph();

  std::vector<IsoCycle> candidates;
  std::vector<std::uint64_t> masks;
  for (int a = 0; a < 8; ++a) {
    for (int b = a + 1; b < 8; ++b) {
      if (((a ^ b) & 1) == 0) continue;  // need a diametral (opposite parity) pair
      auto geos = geodesics_between(g, bf.id(0, a), bf.id(0, b));
      for (std::size_t i = 0; i < geos.size(); ++i) {
        for (std::size_t j = i + 1; j < geos.size(); ++j) {
          const Path& p = geos[i];
          const Path& q = geos[j];
          bool disjoint = true;
          for (std::size_t k = 1; k + 1 < q.size() && disjoint; ++k)
            disjoint = std::find(p.begin(), p.end(), q[k]) == p.end();
          if (!disjoint) continue;
          std::vector<int> cyc(p);
          for (std::size_t k = q.size() - 2; k >= 1; --k) cyc.push_back(q[k]);
          if (!is_isometric_cycle(g, cyc)) continue;
          std::uint64_t mask = 0;
          for (std::size_t k = 0; k < cyc.size(); ++k)
            mask |= std::uint64_t{1} << g.edge_index(cyc[k], cyc[(k + 1) % cyc.size()]);
          candidates.push_back(canonicalize_cycle(std::move(cyc), bf));
          masks.push_back(mask);
        }
      }
    }
  }

  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t rr) {
    return candidates[l].vertices < candidates[rr].vertices;
  });

  const std::uint64_t full = (std::uint64_t{1} << 48) - 1;
  std::vector<std::size_t> chosen;
  auto dfs = [&](auto&& self, std::uint64_t covered) -> bool {
    if (covered == full) return chosen.size() == 4;
    if (chosen.size() == 4) return false;
    int edge = std::countr_one(covered);  // lowest uncovered edge id
    for (std::size_t idx : order) {
      std::uint64_t m = masks[idx];
      if (!(m >> edge & 1) || (m & covered)) continue;
      chosen.push_back(idx);
      if (self(self, covered | m)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!dfs(dfs, 0))
    throw std::logic_error("no 4-cycle partition of BF(3) found; construction premise broken");

  CyclePartition part;
  part.r = 3;
  for (std::size_t idx : chosen) part.cycles.push_back(candidates[idx]);
  std::sort(part.cycles.begin(), part.cycles.end(),
            [](const IsoCycle& l, const IsoCycle& rr) { return l.anchors < rr.anchors; });
  verify_partition(part, bf, true);
  return part;
}

}  // namespace detail

/// The BF(3) partition into 4 isometric 12-cycles, derived once by search and
/// memoized for the process lifetime.
inline const CyclePartition& base_cycles_bf3() {
  static const CyclePartition memo = detail::search_base_bf3();
  return memo;
}

/// One step of the inductive construction: BF(r) contains two copies of
/// BF(r-1) (copy' at rows [0, 2^{r-1}), copy'' shifted up by 2^{r-1}, both
/// one level down). Each cycle u-P-w-Q-u of the previous partition yields
/// two cycles: C1 stitches P' and P'' through the level-0 rows of u and w,
/// C2 stitches Q' and Q'' through the shifted rows.
inline CyclePartition lift_partition(const CyclePartition& prev, const Butterfly& bf) {
  int r = bf.r();
  if (r < 4) throw std::invalid_argument("lift_partition needs target dimension >= 4");
  if (prev.r != r - 1)
    throw std::invalid_argument("lift_partition: previous partition has dimension " +
                                std::to_string(prev.r) + ", expected " + std::to_string(r - 1));
  int half = 1 << (r - 1);
  auto lift = [&](int vid, int shift) {
    int j = vid / half, s = vid % half;  // coordinates within BF(r-1)
    return bf.id(j + 1, s + shift);
  };

  CyclePartition out;
  out.r = r;
  out.cycles.reserve(prev.cycles.size() * 2);
  for (const IsoCycle& cyc : prev.cycles) {
    int prev_len = static_cast<int>(cyc.vertices.size());
    int su = cyc.vertices[0] % half;
    int sw = cyc.vertices[prev_len / 2] % half;
    // arcs of the previous cycle, both oriented u -> w
    std::vector<int> arc_p(cyc.vertices.begin(), cyc.vertices.begin() + prev_len / 2 + 1);
    std::vector<int> arc_q(cyc.vertices.begin() + prev_len / 2, cyc.vertices.end());
    arc_q.push_back(cyc.vertices[0]);
    std::reverse(arc_q.begin(), arc_q.end());

    auto stitch = [&](const std::vector<int>& arc, int entry_row, int exit_row) {
      std::vector<int> c;
      c.reserve(4 * r);
      c.push_back(bf.id(0, entry_row));
      for (int v : arc) c.push_back(lift(v, 0));
      c.push_back(bf.id(0, exit_row));
      for (auto it = arc.rbegin(); it != arc.rend(); ++it) c.push_back(lift(*it, half));
      return c;
    };
    out.cycles.push_back(detail::canonicalize_cycle(stitch(arc_p, su, sw), bf));
    out.cycles.push_back(detail::canonicalize_cycle(stitch(arc_q, su + half, sw + half), bf));
  }

  // adjacency of every stitched edge is re-checked here (hard error)
  const Graph& g = bf.graph();
  for (const IsoCycle& cyc : out.cycles)
    for (std::size_t i = 0; i < cyc.vertices.size(); ++i)
      if (!g.has_edge(cyc.vertices[i], cyc.vertices[(i + 1) % cyc.vertices.size()]))
        throw std::logic_error("lifted cycle contains a non-edge; embedding is broken");
  return out;
}

/// Full partition of E(BF(r)) into 2^{r-1} isometric 4r-cycles: the BF(3)
/// base lifted r-3 times, with structural invariants verified at every
/// dimension (isometry fully up to dimension 8, sampled above).
inline CyclePartition edge_cycle_partition(int r) {
  if (r < 3) throw std::invalid_argument("edge_cycle_partition needs r >= 3");
  if (r > 16) throw std::invalid_argument("edge_cycle_partition capped at r = 16");
  CyclePartition part = base_cycles_bf3();
  for (int k = 4; k <= r; ++k) {
    Butterfly bf(k);
    part = lift_partition(part, bf);
    detail::verify_partition(part, bf, k <= 8);
  }
  return part;
}

/// Each cycle breaks at its two anchors into two length-2r geodesics,
/// giving 2^r edge-disjoint diametrals covering E.
inline Cover split_to_diametrals(const CyclePartition& part) {
  Cover cover;
  cover.mode = CoverMode::Edge;
  cover.r = part.r;
  int len = 4 * part.r;
  for (const IsoCycle& cyc : part.cycles) {
    if (static_cast<int>(cyc.vertices.size()) != len ||
        cyc.vertices[0] != cyc.anchors.first || cyc.vertices[len / 2] != cyc.anchors.second)
      throw std::invalid_argument("split_to_diametrals: cycle anchors are not antipodal");
    Path first(cyc.vertices.begin(), cyc.vertices.begin() + len / 2 + 1);
    Path second(cyc.vertices.begin() + len / 2, cyc.vertices.end());
    second.push_back(cyc.vertices[0]);
    cover.paths.push_back(std::move(first));
    cover.paths.push_back(std::move(second));
  }
  return cover;
}

}  // namespace bfcover
