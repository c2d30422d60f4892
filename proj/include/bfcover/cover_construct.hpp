#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bfcover/butterfly.hpp"
#include "bfcover/graph.hpp"

namespace bfcover {

/// Boundary vertices still uncovered after the first two stages, by quadrant.
struct BoundaryRemainder {
  std::vector<Coord> a_prime, b_prime, c_prime, d_prime;
};

/// Full trace of the three-stage cover construction, kept for inspection and
/// testing; construct_cover flattens stage1 ++ stage2 ++ stage3.
struct StagePlan {
  std::vector<Path> stage1, stage2, stage3;
  BoundaryRemainder uncovered;
  int case_id = 1;  // 1: 2^{r-3} = 3l+1 (r odd), 2: 2^{r-3} = 3l+2 (r even)
  int ell = 0;      // floor(2^{r-3} / 3)
};

namespace detail {

inline void require_stage_dim(const Butterfly& bf, int min_r, const char* what) {
  if (bf.r() < min_r)
    throw std::invalid_argument(std::string(what) + " needs dimension >= " +
                                std::to_string(min_r) + ", got " + std::to_string(bf.r()));
}

}  // namespace detail

/// Stage 1: diametrals through the outermost quarters of the level-0 row
/// range. With q = 2^{r-3}: P_{u_i}(w_i, w_{i+2^{r-1}}) for i = 1..q, then
/// P_{u_i}(w_i, w_{i-2^{r-1}}) for i = 2^r down to 7q+1.
inline std::vector<Path> stage1(const Butterfly& bf) {
  detail::require_stage_dim(bf, 4, "stage1");
  int q = 1 << (bf.r() - 3);
  int half = 1 << (bf.r() - 1);
  std::vector<Path> out;
  out.reserve(2 * q);
  for (int i = 1; i <= q; ++i) out.push_back(bf.diametral(bf.u(i), bf.w(i), bf.w(i + half)));
  for (int i = 8 * q; i >= 7 * q + 1; --i)
    out.push_back(bf.diametral(bf.u(i), bf.w(i), bf.w(i - half)));
  return out;
}

/// Stage 2: diametrals with level-r middles over the second and sixth
/// eighths: P_{w_i}(u_i, u_{i+1}) for i = q+1, q+3, ..., 3q-1 and
/// P_{w_i}(u_i, u_{i-1}) for i = 7q, 7q-2, ..., 5q+2.
inline std::vector<Path> stage2(const Butterfly& bf) {
  detail::require_stage_dim(bf, 4, "stage2");
  int q = 1 << (bf.r() - 3);
  std::vector<Path> out;
  out.reserve(2 * q);
  for (int i = q + 1; i <= 3 * q - 1; i += 2)
    out.push_back(bf.diametral(bf.w(i), bf.u(i), bf.u(i + 1)));
  for (int i = 7 * q; i >= 5 * q + 2; i -= 2)
    out.push_back(bf.diametral(bf.w(i), bf.u(i), bf.u(i - 1)));
  return out;
}

/// Boundary vertices missed by stages 1 and 2, straight from the closed
/// forms, then cross-checked against the actual stage coverage; any
/// discrepancy is a hard error.
inline BoundaryRemainder uncovered_after_12(const Butterfly& bf) {
  detail::require_stage_dim(bf, 4, "uncovered_after_12");
  int q = 1 << (bf.r() - 3);
  BoundaryRemainder rem;
  for (int i = 3 * q + 1; i <= 4 * q; ++i) rem.a_prime.push_back(bf.u(i));
  for (int i = 4 * q + 1; i <= 5 * q; ++i) rem.b_prime.push_back(bf.u(i));
  for (int i = q + 2; i <= 3 * q; i += 2) rem.c_prime.push_back(bf.w(i));
  for (int i = 5 * q + 1; i <= 7 * q - 1; i += 2) rem.d_prime.push_back(bf.w(i));

  std::vector<char> covered(bf.graph().vertex_count(), 0);
  for (const auto& paths : {stage1(bf), stage2(bf)})
    for (const Path& p : paths)
      for (int v : p) covered[v] = 1;
  std::vector<char> formula(bf.graph().vertex_count(), 0);
  for (const auto* part : {&rem.a_prime, &rem.b_prime, &rem.c_prime, &rem.d_prime})
    for (Coord c : *part) formula[bf.id(c)] = 1;
  for (Coord c : bf.U()) {
    int v = bf.id(c);
    if (covered[v] == formula[v])
      throw std::logic_error("uncovered_after_12: formula mismatch at level-0 row " +
                             std::to_string(c.s));
  }
  for (Coord c : bf.W()) {
    int v = bf.id(c);
    if (covered[v] == formula[v])
      throw std::logic_error("uncovered_after_12: formula mismatch at level-r row " +
                             std::to_string(c.s));
  }
  return rem;
}

/// Stage 3: cover the remainder with opposite-color diametrals. The red and
/// blue vertices of A' u B' (ascending row) become u^r/u^b; C' and D' become
/// w^r/w^b. Blocks of size l = floor(2^{r-3}/3) are matched by the four
/// families below; the 1 or 2 leftover columns get bespoke paths.
inline std::vector<Path> stage3(const Butterfly& bf) {
  detail::require_stage_dim(bf, 4, "stage3");
  BoundaryRemainder rem = uncovered_after_12(bf);
  int q = 1 << (bf.r() - 3);
  int ell = q / 3;

  std::vector<Coord> ur, ub;
  for (const auto* part : {&rem.a_prime, &rem.b_prime})
    for (Coord c : *part) (bf.color(c) == Color::Red ? ur : ub).push_back(c);
  const std::vector<Coord>& wr = rem.c_prime;
  const std::vector<Coord>& wb = rem.d_prime;

  // 1-indexed accessors to mirror the u^r_i / w^b_i naming
  auto at = [](const std::vector<Coord>& v, int i) { return v[i - 1]; };

  std::vector<Path> out;
  for (int i = 1; i <= ell; ++i)
    out.push_back(bf.diametral(at(ur, i), at(wr, i), at(wb, i)));
  for (int i = 1; i <= ell; ++i)
    out.push_back(bf.diametral(at(wr, ell + i), at(ur, ell + i), at(ub, i)));
  for (int i = 1; i <= ell; ++i)
    out.push_back(bf.diametral(at(wb, 2 * ell + i), at(ub, 2 * ell + i), at(ur, 2 * ell + i)));
  for (int i = 1; i <= ell; ++i)
    out.push_back(bf.diametral(at(ub, ell + i), at(wb, ell + i), at(wr, 2 * ell + i)));

  int x = 3 * ell + 1;
  out.push_back(bf.diametral(at(ur, x), at(wr, x), at(wb, x)));
  if (q == 3 * ell + 1) {
    // one leftover column: u^b_x still lacks coverage
    out.push_back(bf.diametral(bf.w(1), at(ub, x), at(ur, x)));
  } else {
    // two leftover columns (q = 3l + 2)
    int y = x + 1;
    out.push_back(bf.diametral(at(ub, x), at(wr, y), at(wb, y)));
    out.push_back(bf.diametral(bf.w(1), at(ur, y), at(ub, y)));
  }
  return out;
}

inline StagePlan build_stage_plan(const Butterfly& bf) {
  detail::require_stage_dim(bf, 4, "build_stage_plan");
  int q = 1 << (bf.r() - 3);
  StagePlan plan;
  plan.stage1 = stage1(bf);
  plan.stage2 = stage2(bf);
  plan.stage3 = stage3(bf);
  plan.uncovered = uncovered_after_12(bf);
  plan.ell = q / 3;
  plan.case_id = (q == 3 * plan.ell + 1) ? 1 : 2;
  return plan;
}

/// The optimal vertex geodesic cover of BF(r), r >= 5: exactly
/// ceil((2/3)*2^r) diametrals from the three stages. Coverage and size are
/// re-verified before returning; failure of either is a hard error.
inline Cover construct_cover(const Butterfly& bf) {
  if (bf.r() < 5)
    throw std::invalid_argument(
        "construct_cover needs dimension >= 5 (use the exact solver for smaller instances)");
  StagePlan plan = build_stage_plan(bf);
  Cover cover;
  cover.mode = CoverMode::Vertex;
  cover.r = bf.r();
  for (auto* stage : {&plan.stage1, &plan.stage2, &plan.stage3})
    cover.paths.insert(cover.paths.end(), stage->begin(), stage->end());

  int want = (2 * (1 << bf.r()) + 2) / 3;  // ceil((2/3)*2^r)
  if (cover.size() != want)
    throw std::logic_error("construct_cover emitted " + std::to_string(cover.size()) +
                           " paths, expected " + std::to_string(want));
  auto rep = coverage_report(bf.graph(), cover.paths, CoverMode::Vertex);
  if (!rep.valid())
    throw std::logic_error("construct_cover left " + std::to_string(rep.missing.size()) +
                           " vertices uncovered");
  return cover;
}

}  // namespace bfcover
