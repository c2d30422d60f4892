#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "bfcover/graph.hpp"

namespace bfcover {

/// Butterfly vertex: level j in [0,r], row s in [0,2^r).
struct Coord {
  int j = 0;
  int s = 0;
  auto operator<=>(const Coord&) const = default;
};

enum class Color { Red, Blue };

inline const char* to_string(Color c) { return c == Color::Red ? "Red" : "Blue"; }

/// Row of the level-j vertex on the unique geodesic from [0,u_row] to
/// [r,w_row]: top j bits from w_row, bottom r-j bits from u_row.
inline int level_row_on_route(int u_row, int w_row, int j, int r) {
  if (j < 0 || j > r) throw std::out_of_range("level outside [0,r]");
  int mask = (1 << (r - j)) - 1;
  return (w_row & ~mask) | (u_row & mask);
}

/// BF(r): levels 0..r, rows 0..2^r-1. Vertex [j,s] has dense id j*2^r + s.
/// Edges between levels j and j+1 keep the row or flip exactly bit r-1-j
/// (level-0 edges flip the most significant row bit, level-(r-1) edges the
/// least significant). Vertex names u_i = [0,i-1] and w_i = [r,i-1] are
/// 1-indexed; quadrants A/B split the level-0 row range in half, C/D the
/// level-r range.
class Butterfly {
public:
  explicit Butterfly(int r) : r_(r) {
    if (r < 1) throw std::invalid_argument("butterfly dimension must be >= 1");
    if (r > 20) throw std::invalid_argument("butterfly dimension capped at 20");
    int rows = 1 << r;
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(r) * rows * 2);
    std::vector<std::string> labels(static_cast<std::size_t>(r + 1) * rows);
    for (int j = 0; j <= r; ++j)
      for (int s = 0; s < rows; ++s)
        labels[id(j, s)] = "L" + std::to_string(j) + "R" + std::to_string(s);
    for (int j = 0; j < r; ++j)
      for (int s = 0; s < rows; ++s) {
        edges.emplace_back(id(j, s), id(j + 1, s));
        edges.emplace_back(id(j, s), id(j + 1, s ^ (1 << (r - 1 - j))));
      }
    int n = static_cast<int>(labels.size());
    g_ = Graph(n, edges, std::move(labels));
  }

  int r() const { return r_; }
  int rows() const { return 1 << r_; }
  const Graph& graph() const { return g_; }

  int id(int j, int s) const {
    if (j < 0 || j > r_ || s < 0 || s >= rows())
      throw std::out_of_range("coordinate [" + std::to_string(j) + "," + std::to_string(s) +
                              "] outside BF(" + std::to_string(r_) + ")");
    return j * rows() + s;
  }
  int id(Coord v) const { return id(v.j, v.s); }

  Coord coord(int vid) const {
    if (vid < 0 || vid >= g_.vertex_count()) throw std::out_of_range("vertex id out of range");
    return {vid / rows(), vid % rows()};
  }

  /// 1-indexed boundary names: u_i = [0, i-1], w_i = [r, i-1].
  Coord u(int i) const { return {0, check_index(i) - 1}; }
  Coord w(int i) const { return {r_, check_index(i) - 1}; }

  std::vector<Coord> U() const { return boundary_range(0, 1, rows()); }
  std::vector<Coord> W() const { return boundary_range(r_, 1, rows()); }
  std::vector<Coord> A() const { return boundary_range(0, 1, rows() / 2); }
  std::vector<Coord> B() const { return boundary_range(0, rows() / 2 + 1, rows()); }
  std::vector<Coord> C() const { return boundary_range(r_, 1, rows() / 2); }
  std::vector<Coord> D() const { return boundary_range(r_, rows() / 2 + 1, rows()); }

  /// Level 0: u_i Red iff i even (row odd). Level r: C Red, D Blue.
  /// Interior vertices are uncolored.
  Color color(Coord v) const {
    id(v);  // range check
    if (v.j == 0) return (v.s & 1) ? Color::Red : Color::Blue;
    if (v.j == r_) return v.s < rows() / 2 ? Color::Red : Color::Blue;
    throw std::invalid_argument("color undefined at interior level " + std::to_string(v.j));
  }

  /// The unique geodesic from a level-0 vertex to a level-r vertex; length r.
  Path route(Coord from, Coord to) const {
    if (from.j != 0 || to.j != r_)
      throw std::invalid_argument("route needs a level-0 source and a level-r target");
    id(from);
    id(to);
    Path p;
    p.reserve(r_ + 1);
    for (int j = 0; j <= r_; ++j) p.push_back(id(j, level_row_on_route(from.s, to.s, j, r_)));
    return p;
  }

  /// Diametral P_middle(e1, e2): the unique length-2r geodesic from e1 to e2
  /// through middle, where middle sits at one boundary level and the
  /// opposite-colored ends at the other.
  Path diametral(Coord middle, Coord e1, Coord e2) const {
    bool down = middle.j == 0 && e1.j == r_ && e2.j == r_;
    bool up = middle.j == r_ && e1.j == 0 && e2.j == 0;
    if (!down && !up)
      throw std::invalid_argument(
          "diametral needs its middle at one boundary level and both ends at the other");
    if (color(e1) == color(e2))
      throw std::invalid_argument("not a diametral pair: ends share color " +
                                  std::string(to_string(color(e1))));
    Path first = down ? route(middle, e1) : route(e1, middle);
    Path second = down ? route(middle, e2) : route(e2, middle);
    std::reverse((down ? first : second).begin(), (down ? first : second).end());
    // halves share exactly the middle vertex; drop its duplicate
    first.insert(first.end(), second.begin() + 1, second.end());
    return first;
  }

  /// Edges joining a degree-2 vertex to a degree-4 vertex; 2^{r+2} for r >= 2.
  int count_24_edges() const {
    int c = 0;
    for (const auto& [a, b] : g_.edges()) {
      int da = g_.degree(a), db = g_.degree(b);
      if (std::min(da, db) == 2 && std::max(da, db) == 4) ++c;
    }
    return c;
  }

private:
  int check_index(int i) const {
    if (i < 1 || i > rows())
      throw std::out_of_range("boundary index " + std::to_string(i) + " outside [1," +
                              std::to_string(rows()) + "]");
    return i;
  }

  std::vector<Coord> boundary_range(int level, int lo, int hi) const {
    std::vector<Coord> out;
    out.reserve(hi - lo + 1);
    for (int i = lo; i <= hi; ++i) out.push_back({level, i - 1});
    return out;
  }

  int r_;
  Graph g_;
};

inline Butterfly build_butterfly(int r) { return Butterfly(r); }

}  // namespace bfcover
