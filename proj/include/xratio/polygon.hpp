#pragma once

// Labeled convex n-gons: vertices 1..n clockwise, polygon edge k joins
// vertices k and k+1 (edge n joins n and 1). Diagonals are vertex pairs,
// quads are sets of edge labels.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "xratio/types.hpp"

namespace xratio {

inline constexpr int kDefaultEnumerationCap = 12;

class Diagonal {
 public:
  Diagonal() = default;
  Diagonal(int u, int v) : u_(std::min(u, v)), v_(std::max(u, v)) {}

  int u() const { return u_; }
  int v() const { return v_; }

  bool valid_for(int n) const {
    if (u_ < 1 || v_ > n || u_ == v_) return false;
    int gap = v_ - u_;
    return gap != 1 && gap != n - 1;
  }

  bool has_endpoint(int w) const { return u_ == w || v_ == w; }

  std::string to_string() const {
    return "{" + std::to_string(u_) + "," + std::to_string(v_) + "}";
  }

  friend auto operator<=>(const Diagonal&, const Diagonal&) = default;

 private:
  int u_ = 0;
  int v_ = 0;
};

/// Strict cyclic interleaving. Diagonals sharing an endpoint never cross.
inline bool crosses(const Diagonal& a, const Diagonal& b) {
  auto inside = [&](int w) { return a.u() < w && w < a.v(); };
  if (a.has_endpoint(b.u()) || a.has_endpoint(b.v())) return false;
  return inside(b.u()) != inside(b.v());
}

inline void check_diagonal(int n, const Diagonal& d) {
  if (!d.valid_for(n)) {
    throw ValidationError("diagonal " + d.to_string() + " is not a diagonal of the " +
                          std::to_string(n) + "-gon");
  }
}

inline Quad diagonal_to_quad(int n, const Diagonal& d) {
  check_diagonal(n, d);
  auto prev = [n](int w) { return w == 1 ? n : w - 1; };
  return Quad(prev(d.u()), d.u(), prev(d.v()), d.v());
}

class Triangulation {
 public:
  Triangulation(int n, std::vector<Diagonal> diagonals)
      : n_(n), diagonals_(std::move(diagonals)) {
    if (n_ < 3) throw ValidationError("a polygon needs at least 3 vertices");
    std::sort(diagonals_.begin(), diagonals_.end());
    if (std::adjacent_find(diagonals_.begin(), diagonals_.end()) != diagonals_.end()) {
      throw ValidationError("triangulation repeats a diagonal");
    }
    if (static_cast<int>(diagonals_.size()) != n_ - 3) {
      throw ValidationError("triangulation of a " + std::to_string(n_) + "-gon needs " +
                            std::to_string(n_ - 3) + " diagonals, got " +
                            std::to_string(diagonals_.size()));
    }
    for (const Diagonal& d : diagonals_) check_diagonal(n_, d);
    for (std::size_t i = 0; i < diagonals_.size(); ++i) {
      for (std::size_t j = i + 1; j < diagonals_.size(); ++j) {
        if (crosses(diagonals_[i], diagonals_[j])) {
          throw ValidationError("diagonals " + diagonals_[i].to_string() + " and " +
                                diagonals_[j].to_string() + " cross");
        }
      }
    }
  }

  int n() const { return n_; }
  const std::vector<Diagonal>& diagonals() const { return diagonals_; }

  friend bool operator==(const Triangulation&, const Triangulation&) = default;

 private:
  int n_;
  std::vector<Diagonal> diagonals_;
};

struct Triangle {
  std::array<int, 3> vertices{};
  int exterior_edge_count = 0;

  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

inline CrossRatioProblem triangulation_to_problem(const Triangulation& t) {
  CrossRatioProblem p;
  p.n = t.n();
  for (const Diagonal& d : t.diagonals()) p.quads.push_back(diagonal_to_quad(t.n(), d));
  return p;
}

/// The n-2 faces of t, sorted by vertex triple.
inline std::vector<Triangle> triangles_of(const Triangulation& t) {
  const int n = t.n();
  // A 3-cycle in the edge+diagonal graph of a convex triangulation is always a face.
  std::vector<std::vector<char>> adj(n + 1, std::vector<char>(n + 1, 0));
  std::vector<std::vector<char>> boundary(n + 1, std::vector<char>(n + 1, 0));
  for (int k = 1; k <= n; ++k) {
    int next = k == n ? 1 : k + 1;
    adj[k][next] = adj[next][k] = 1;
    boundary[k][next] = boundary[next][k] = 1;
  }
  std::vector<std::vector<int>> nbrs(n + 1);
  for (const Diagonal& d : t.diagonals()) adj[d.u()][d.v()] = adj[d.v()][d.u()] = 1;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      if (adj[a][b]) nbrs[a].push_back(b);
    }
  }
  std::vector<Triangle> out;
  for (int a = 1; a <= n; ++a) {
    for (std::size_t i = 0; i < nbrs[a].size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs[a].size(); ++j) {
        int b = nbrs[a][i], c = nbrs[a][j];
        if (!adj[b][c]) continue;
        Triangle tri;
        tri.vertices = {a, b, c};
        tri.exterior_edge_count = boundary[a][b] + boundary[b][c] + boundary[a][c];
        out.push_back(tri);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline int internal_triangle_count(const Triangulation& t) {
  auto tris = triangles_of(t);
  return static_cast<int>(std::count_if(tris.begin(), tris.end(),
                                        [](const Triangle& x) { return x.exterior_edge_count == 0; }));
}

inline std::uint64_t closed_formula_degree(const Triangulation& t) {
  return std::uint64_t{1} << internal_triangle_count(t);
}

/// Catalan(k), exact for k <= 35.
inline std::uint64_t catalan(int k) {
  std::uint64_t c = 1;
  for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

namespace detail {

// Triangulations of the sub-polygon on vertices lo..hi (contiguous), whose
// side (lo,hi) is already present.
inline void enumerate_range(int lo, int hi, std::vector<Diagonal>& acc,
                            const std::function<void(std::vector<Diagonal>&)>& rest) {
  if (hi - lo < 2) {
    rest(acc);
    return;
  }
  for (int apex = lo + 1; apex < hi; ++apex) {
    std::size_t mark = acc.size();
    if (apex - lo >= 2) acc.emplace_back(lo, apex);
    if (hi - apex >= 2) acc.emplace_back(apex, hi);
    enumerate_range(lo, apex, acc, [&](std::vector<Diagonal>& a) {
      enumerate_range(apex, hi, a, rest);
    });
    acc.resize(mark);
  }
}

}  // namespace detail

/// Calls visit once for every triangulation of the n-gon (Catalan(n-2) of them).
inline void enumerate_triangulations(int n, const std::function<void(const Triangulation&)>& visit,
                                     int cap = kDefaultEnumerationCap) {
  if (n < 3) throw ValidationError("a polygon needs at least 3 vertices");
  if (n > cap) {
    throw ValidationError("enumeration of " + std::to_string(n) + "-gon triangulations exceeds cap " +
                          std::to_string(cap));
  }
  std::vector<Diagonal> acc;
  detail::enumerate_range(1, n, acc, [&](std::vector<Diagonal>& diags) {
    visit(Triangulation(n, diags));
  });
}

inline std::vector<Triangulation> all_triangulations(int n, int cap = kDefaultEnumerationCap) {
  std::vector<Triangulation> out;
  enumerate_triangulations(n, [&](const Triangulation& t) { out.push_back(t); }, cap);
  return out;
}

/// Uniform random triangulation: Remy's algorithm grows a uniform binary tree
/// with n-2 internal nodes, which maps bijectively onto triangulations with
/// (1,n) as the root side.
inline Triangulation random_triangulation(int n, std::uint64_t seed) {
  if (n < 3) throw ValidationError("a polygon needs at least 3 vertices");
  std::mt19937_64 rng(seed);
  // Nodes: 0 is the initial leaf. Internal nodes have two children.
  std::vector<int> left{-1}, right{-1}, parent{-1};
  int root = 0;
  for (int step = 0; step < n - 2; ++step) {
    int count = static_cast<int>(left.size());
    int target = std::uniform_int_distribution<int>(0, count - 1)(rng);
    bool new_leaf_left = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    int internal = count;
    int leaf = count + 1;
    left.push_back(-1), right.push_back(-1), parent.push_back(-1);
    left.push_back(-1), right.push_back(-1), parent.push_back(-1);
    int p = parent[target];
    if (p == -1) {
      root = internal;
    } else if (left[p] == target) {
      left[p] = internal;
    } else {
      right[p] = internal;
    }
    parent[internal] = p;
    if (new_leaf_left) {
      left[internal] = leaf, right[internal] = target;
    } else {
      left[internal] = target, right[internal] = leaf;
    }
    parent[leaf] = internal;
    parent[target] = internal;
  }
  std::vector<int> internal_size(left.size(), 0);
  std::function<int(int)> size_of = [&](int v) -> int {
    if (left[v] == -1) return 0;
    return internal_size[v] = 1 + size_of(left[v]) + size_of(right[v]);
  };
  size_of(root);
  std::vector<Diagonal> diags;
  std::function<void(int, int, int)> emit = [&](int v, int lo, int hi) {
    if (left[v] == -1) return;
    int apex = lo + internal_size[left[v]] + 1;
    if (apex - lo >= 2) diags.emplace_back(lo, apex);
    if (hi - apex >= 2) diags.emplace_back(apex, hi);
    emit(left[v], lo, apex);
    emit(right[v], apex, hi);
  };
  emit(root, 1, n);
  return Triangulation(n, std::move(diags));
}

/// A floor(n/2)-gon on the odd vertices, fan-triangulated from vertex 1, with
/// each inner side capped by a triangle on two polygon edges. For odd n the
/// last inner side spans three polygon edges and gets one extra diagonal.
/// Has floor(n/2)-2 internal triangles.
inline Triangulation inscribed_polygon_triangulation(int n) {
  if (n < 6) throw ValidationError("inscribed polygon construction needs n >= 6");
  const int k = n / 2;
  std::vector<int> inner;
  for (int i = 0; i < k; ++i) inner.push_back(2 * i + 1);
  std::vector<Diagonal> diags;
  for (int i = 0; i + 1 < k; ++i) diags.emplace_back(inner[i], inner[i + 1]);
  diags.emplace_back(inner.back(), 1);
  if (n % 2 == 1) diags.emplace_back(inner.back(), n);
  for (int i = 2; i + 1 < k; ++i) diags.emplace_back(1, inner[i]);
  return Triangulation(n, std::move(diags));
}

inline Triangulation fan_triangulation(int n, int apex = 1) {
  std::vector<Diagonal> diags;
  for (int off = 2; off <= n - 2; ++off) diags.emplace_back(apex, (apex - 1 + off) % n + 1);
  return Triangulation(n, std::move(diags));
}

/// Rotation by k (vertex v -> v+k) optionally followed by the reflection v -> n+1-v.
inline Triangulation transform(const Triangulation& t, int k, bool reflect = false) {
  const int n = t.n();
  auto map = [&](int v) {
    int w = ((v - 1 + k) % n + n) % n + 1;
    return reflect ? n + 1 - w : w;
  };
  std::vector<Diagonal> diags;
  for (const Diagonal& d : t.diagonals()) diags.emplace_back(map(d.u()), map(d.v()));
  return Triangulation(n, std::move(diags));
}

}  // namespace xratio
