#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bfcover/graph.hpp"

namespace bfcover {

/// Dynamic bitset sized at construction; just enough surface for the solver.
class Bitset {
public:
  explicit Bitset(int n = 0) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }

  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  int count() const {
    int c = 0;
    for (auto word : w_) c += std::popcount(word);
    return c;
  }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }

  bool operator==(const Bitset&) const = default;

private:
  int n_;
  std::vector<std::uint64_t> w_;
};

/// A set-cover problem over geodesic candidates: pick the fewest candidates
/// whose union covers every target (vertex ids or edge ids, per mode).
struct CoverInstance {
  Graph graph;
  CoverMode mode = CoverMode::Vertex;
  std::vector<Path> candidates;
  std::vector<int> targets;
};

/// Builds an instance; candidates default to all maximal geodesics, targets
/// default to the whole universe (vertices or edges). Explicitly empty
/// targets are allowed and make the instance trivially satisfied.
inline CoverInstance make_instance(const Graph& g, CoverMode mode,
                                   std::optional<std::vector<Path>> candidates = std::nullopt,
                                   std::optional<std::vector<int>> targets = std::nullopt,
                                   std::size_t guard = kDefaultEnumGuard) {
  CoverInstance inst;
  inst.graph = g;
  inst.mode = mode;
  inst.candidates = candidates ? std::move(*candidates) : enumerate_maximal_geodesics(g, guard);
  for (std::size_t i = 0; i < inst.candidates.size(); ++i)
    if (PathDefect d = check_geodesic(g, inst.candidates[i]); d != PathDefect::None)
      throw std::invalid_argument("candidate " + std::to_string(i) + " is not a geodesic (" +
                                  to_string(d) + ")");
  int universe = mode == CoverMode::Vertex ? g.vertex_count() : g.edge_count();
  if (targets) {
    inst.targets = std::move(*targets);
    for (int t : inst.targets)
      if (t < 0 || t >= universe)
        throw std::out_of_range("target " + std::to_string(t) + " outside universe of " +
                                std::to_string(universe));
  } else {
    inst.targets.resize(universe);
    for (int i = 0; i < universe; ++i) inst.targets[i] = i;
  }
  return inst;
}

enum class SolveStatus { Optimal, Feasible, Infeasible, BudgetExceeded };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

struct SolveResult {
  Cover cover;
  SolveStatus status = SolveStatus::Infeasible;
  int lower_bound = 0;
  std::uint64_t nodes_explored = 0;
};

namespace detail {

/// Per-candidate coverage masks over target positions, plus per-target lists
/// of covering candidates. Shared by greedy and exact search.
struct InstanceIndex {
  int t = 0;                                   // target count
  std::vector<Bitset> mask;                    // candidate -> covered targets
  std::vector<int> mask_count;                 // popcount per candidate
  std::vector<std::vector<int>> covered_by;    // target position -> candidate ids
  int max_cover = 1;                           // max targets any candidate covers

  explicit InstanceIndex(const CoverInstance& inst) {
    t = static_cast<int>(inst.targets.size());
    std::unordered_map<int, int> pos;
    pos.reserve(inst.targets.size());
    for (int i = 0; i < t; ++i) pos.emplace(inst.targets[i], i);
    covered_by.assign(t, {});
    mask.reserve(inst.candidates.size());
    for (std::size_t c = 0; c < inst.candidates.size(); ++c) {
      Bitset m(t);
      const Path& p = inst.candidates[c];
      if (inst.mode == CoverMode::Vertex) {
        for (int v : p)
          if (auto it = pos.find(v); it != pos.end()) m.set(it->second);
      } else {
        for (std::size_t k = 0; k + 1 < p.size(); ++k) {
          int e = inst.graph.edge_index(p[k], p[k + 1]);
          if (auto it = pos.find(e); it != pos.end()) m.set(it->second);
        }
      }
      mask_count.push_back(m.count());
      for (int i = 0; i < t; ++i)
        if (m.test(i)) covered_by[i].push_back(static_cast<int>(c));
      mask.push_back(std::move(m));
    }
    for (int c : mask_count) max_cover = std::max(max_cover, c);
  }

  bool feasible() const {
    for (const auto& list : covered_by)
      if (list.empty()) return false;
    return true;
  }
};

inline Cover make_cover(const CoverInstance& inst, const std::vector<int>& chosen) {
  Cover cover;
  cover.mode = inst.mode;
  for (int c : chosen) cover.paths.push_back(inst.candidates[c]);
  return cover;
}

/// Greedy selection by candidate index; requires idx.feasible().
inline std::vector<int> greedy_indices(const InstanceIndex& idx) {
  Bitset covered(idx.t);
  std::vector<int> chosen;
  int have = 0;
  while (have < idx.t) {
    int best = -1, gain = 0;
    for (std::size_t c = 0; c < idx.mask.size(); ++c) {
      int g = 0;
      for (int i = 0; i < idx.t; ++i)
        if (idx.mask[c].test(i) && !covered.test(i)) ++g;
      if (g > gain) {
        gain = g;
        best = static_cast<int>(c);
      }
    }
    covered |= idx.mask[best];
    have = covered.count();
    chosen.push_back(best);
  }
  return chosen;
}

}  // namespace detail

/// Standard greedy: repeatedly take the candidate covering the most uncovered
/// targets (ties to the lower candidate index). Status Feasible on success.
inline SolveResult greedy_cover(const CoverInstance& inst) {
  detail::InstanceIndex idx(inst);
  SolveResult res;
  if (!idx.feasible()) {
    res.status = SolveStatus::Infeasible;
    res.cover.mode = inst.mode;
    return res;
  }
  res.cover = detail::make_cover(inst, detail::greedy_indices(idx));
  res.status = SolveStatus::Feasible;
  res.lower_bound = idx.t == 0 ? 0 : (idx.t + idx.max_cover - 1) / idx.max_cover;
  return res;
}

inline constexpr std::uint64_t kDefaultNodeBudget = 20'000'000;

/// Exact branch and bound. Branches on the uncovered target with the fewest
/// remaining covering candidates (ties to the lowest target index), trying
/// those candidates in ascending index; a candidate tried at a node is banned
/// in the later siblings' subtrees, so no cover is enumerated twice. Bound:
/// |chosen| + ceil(uncovered / max_cover). Initial incumbent from greedy.
/// Within budget: Optimal. Budget hit: best incumbent + proven lower bound.
inline SolveResult exact_cover(const CoverInstance& inst,
                               std::uint64_t budget = kDefaultNodeBudget) {
  detail::InstanceIndex idx(inst);
  SolveResult res;
  if (!idx.feasible()) {
    res.status = SolveStatus::Infeasible;
    res.cover.mode = inst.mode;
    return res;
  }

  std::vector<int> best = detail::greedy_indices(idx);

  int root_bound = idx.t == 0 ? 0 : (idx.t + idx.max_cover - 1) / idx.max_cover;
  std::vector<char> banned(inst.candidates.size(), 0);
  Bitset covered(idx.t);
  std::vector<int> chosen;
  std::uint64_t nodes = 0;
  bool exhausted = true;

  auto dfs = [&](auto&& self) -> void {
    if (++nodes > budget) {
      exhausted = false;
      return;
    }
    int rem = idx.t - covered.count();
    if (rem == 0) {
      if (chosen.size() < best.size()) best = chosen;
      return;
    }
    int bound = static_cast<int>(chosen.size()) + (rem + idx.max_cover - 1) / idx.max_cover;
    if (bound >= static_cast<int>(best.size())) return;

    int target = -1, fewest = std::numeric_limits<int>::max();
    for (int i = 0; i < idx.t; ++i) {
      if (covered.test(i)) continue;
      int avail = 0;
      for (int c : idx.covered_by[i])
        if (!banned[c]) ++avail;
      if (avail == 0) return;  // dead branch
      if (avail < fewest) {
        fewest = avail;
        target = i;
      }
    }

    std::vector<int> kids;
    kids.reserve(fewest);
    for (int c : idx.covered_by[target])
      if (!banned[c]) kids.push_back(c);

    Bitset saved = covered;
    for (int c : kids) {
      chosen.push_back(c);
      covered |= idx.mask[c];
      self(self);
      covered = saved;
      chosen.pop_back();
      banned[c] = 1;
      if (!exhausted) break;
    }
    for (int c : kids) banned[c] = 0;
  };
  dfs(dfs);

  res.cover = detail::make_cover(inst, best);
  res.nodes_explored = nodes;
  if (exhausted) {
    res.status = SolveStatus::Optimal;
    res.lower_bound = static_cast<int>(best.size());
  } else {
    res.status = SolveStatus::BudgetExceeded;
    res.lower_bound = root_bound;
  }
  return res;
}

/// ceil(|special| / per_path_max), valid because no candidate covers more
/// than per_path_max of the special targets (verified against the list).
inline int counting_lower_bound(const CoverInstance& inst, const std::vector<int>& special_targets,
                                int per_path_max) {
  if (per_path_max < 1) throw std::invalid_argument("per_path_max must be >= 1");
  int universe = inst.mode == CoverMode::Vertex ? inst.graph.vertex_count()
                                                : inst.graph.edge_count();
  std::vector<char> special(universe, 0);
  for (int t : special_targets) {
    if (t < 0 || t >= universe)
      throw std::out_of_range("special target " + std::to_string(t) + " out of range");
    special[t] = 1;
  }
  for (std::size_t c = 0; c < inst.candidates.size(); ++c) {
    const Path& p = inst.candidates[c];
    int hits = 0;
    if (inst.mode == CoverMode::Vertex) {
      for (int v : p) hits += special[v];
    } else {
      for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        int e = inst.graph.edge_index(p[k], p[k + 1]);
        if (e >= 0) hits += special[e];
      }
    }
    if (hits > per_path_max)
      throw std::invalid_argument("candidate " + std::to_string(c) + " covers " +
                                  std::to_string(hits) + " special targets, above the premise " +
                                  std::to_string(per_path_max));
  }
  int s = static_cast<int>(special_targets.size());
  return (s + per_path_max - 1) / per_path_max;
}

/// Closed-form lower bounds for BF(r): (ceil((2/3)*2^r) vertex paths,
/// 2^r edge paths).
inline std::pair<int, int> bf_lower_bounds(int r) {
  if (r < 2) throw std::invalid_argument("bf_lower_bounds needs r >= 2");
  if (r > 30) throw std::invalid_argument("bf_lower_bounds capped at r = 30");
  int pow = 1 << r;
  return {(2 * pow + 2) / 3, pow};
}

/// Explicit cover of K_{r,r} (left ids [0,r), right ids [r,2r)) by
/// ceil(2r/3) maximal geodesics: path centers alternate sides; each path
/// takes the next uncovered center and the next two uncovered far-side ends,
/// reusing covered vertices once a side runs dry.
inline Cover krr_cover(int r) {
  if (r < 2) throw std::invalid_argument("krr_cover needs r >= 2");
  Graph g = complete_bipartite(r, r);
  std::vector<char> covered(2 * r, 0);
  int done = 0;
  auto next_uncovered = [&](int lo, int hi, int fallback) {
    for (int v = lo; v < hi; ++v)
      if (!covered[v]) return v;
    return fallback;  // side exhausted: reuse a covered vertex
  };
  auto mark = [&](int v) {
    if (!covered[v]) {
      covered[v] = 1;
      ++done;
    }
  };

  Cover cover;
  cover.mode = CoverMode::Vertex;
  for (int p = 0; done < 2 * r; ++p) {
    bool left_center = (p % 2 == 0);
    int clo = left_center ? 0 : r;
    int elo = left_center ? r : 0;
    int center = next_uncovered(clo, clo + r, clo);
    int e1 = next_uncovered(elo, elo + r, elo);
    mark(center);
    mark(e1);
    int e2 = next_uncovered(elo, elo + r, e1 == elo ? elo + 1 : elo);
    mark(e2);
    cover.paths.push_back({e1, center, e2});
  }

  auto rep = coverage_report(g, cover.paths, CoverMode::Vertex);
  if (!rep.valid())
    throw std::logic_error("krr_cover produced an invalid cover for r = " + std::to_string(r));
  int want = (2 * r + 2) / 3;
  if (cover.size() != want)
    throw std::logic_error("krr_cover size " + std::to_string(cover.size()) +
                           " differs from ceil(2r/3) = " + std::to_string(want));
  return cover;
}

}  // namespace bfcover
