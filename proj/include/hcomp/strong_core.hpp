#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "hcomp/errors.hpp"
#include "hcomp/graph.hpp"

namespace hcomp {

enum class CoreClass : std::uint8_t { A = 0, B = 1, C = 2 };

/// Tripartition (A, B, C) induced by the strong k-core. C is the core,
/// B = N(C) and A is everything else; no edge joins A and C.
struct CorePartition {
  std::vector<CoreClass> cls;  // per vertex
  std::vector<Vertex> A, B, C;

  bool in_a(Vertex v) const { return cls[v] == CoreClass::A; }
  bool in_b(Vertex v) const { return cls[v] == CoreClass::B; }
  bool in_c(Vertex v) const { return cls[v] == CoreClass::C; }

  friend bool operator==(const CorePartition&, const CorePartition&) = default;
};

namespace detail {

enum class Colour : std::uint8_t { Black, Blue, Red };

/// Red/blue/black colouring to a fixed point. `order` fixes the sequence in
/// which initially deficient vertices are queued; vertices that become
/// deficient later are appended FIFO. Vertices with `frozen` set never change
/// colour and stay black (used by the local variant). Only vertices with
/// `active` set take part; inactive vertices are treated as absent.
template <GraphLike G>
std::vector<Colour> run_colouring(const G& g, std::size_t k, std::span<const Vertex> order,
                                  const std::vector<char>* active = nullptr,
                                  const std::vector<char>* frozen = nullptr) {
  const std::size_t n = g.n();
  auto is_active = [&](Vertex v) { return active == nullptr || (*active)[v]; };
  auto is_frozen = [&](Vertex v) { return frozen != nullptr && (*frozen)[v]; };

  std::vector<Colour> colour(n, Colour::Black);
  std::vector<std::uint32_t> black_count(n, 0);
  std::vector<char> queued(n, 0);
  std::deque<Vertex> queue;

  for (Vertex v : order) {
    if (!is_active(v)) continue;
    std::uint32_t c = 0;
    for (Vertex w : g.neighbors(v)) c += is_active(w);
    black_count[v] = c;
  }
  for (Vertex v : order) {
    if (is_active(v) && !is_frozen(v) && black_count[v] < k) {
      queued[v] = 1;
      queue.push_back(v);
    }
  }

  auto lose_black = [&](Vertex x) {
    for (Vertex y : g.neighbors(x)) {
      if (!is_active(y)) continue;
      --black_count[y];
      if (!queued[y] && !is_frozen(y) && colour[y] != Colour::Red && black_count[y] < k) {
        queued[y] = 1;
        queue.push_back(y);
      }
    }
  };

  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    if (colour[v] == Colour::Red) continue;
    const bool was_black = colour[v] == Colour::Black;
    colour[v] = Colour::Red;
    if (was_black) lose_black(v);
    for (Vertex w : g.neighbors(v)) {
      if (is_active(w) && !is_frozen(w) && colour[w] == Colour::Black) {
        colour[w] = Colour::Blue;
        lose_black(w);
      }
    }
  }
  return colour;
}

inline CorePartition partition_from_colours(const std::vector<Colour>& colour) {
  CorePartition p;
  p.cls.resize(colour.size());
  for (Vertex v = 0; v < colour.size(); ++v) {
    switch (colour[v]) {
      case Colour::Red: p.cls[v] = CoreClass::A; p.A.push_back(v); break;
      case Colour::Blue: p.cls[v] = CoreClass::B; p.B.push_back(v); break;
      case Colour::Black: p.cls[v] = CoreClass::C; p.C.push_back(v); break;
    }
  }
  return p;
}

}  // namespace detail

/// Strong k-core partition via the colouring procedure: while some black or
/// blue vertex has fewer than k black neighbours, colour it red and its black
/// neighbours blue. Linear in n + m.
inline CorePartition strong_core(const Graph& g, std::size_t k = 4) {
  std::vector<Vertex> order(g.n());
  for (Vertex v = 0; v < g.n(); ++v) order[v] = v;
  return detail::partition_from_colours(detail::run_colouring(g, k, order));
}

// Same procedure, deficient vertices queued in a caller-chosen order.
inline CorePartition strong_core_ordered(const Graph& g, std::span<const Vertex> order, std::size_t k = 4) {
  if (order.size() != g.n()) throw ParameterError("strong_core_ordered: order must be a permutation");
  return detail::partition_from_colours(detail::run_colouring(g, k, order));
}

/// One connected component of G^AB = G[A ∪ B].
struct ABComponent {
  std::vector<Vertex> vertices;  // sorted
  std::vector<Vertex> a_vertices;
  std::vector<Vertex> b_vertices;
  std::vector<Edge> edges;  // all G-edges inside the component, including B-B
  bool is_tree = false;
};

inline std::vector<ABComponent> ab_components(const Graph& g, const CorePartition& part) {
  std::vector<ABComponent> out;
  std::vector<char> seen(g.n(), 0);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (part.in_c(s) || seen[s]) continue;
    ABComponent comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      comp.vertices.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (part.in_c(w)) continue;
        if (v < w) comp.edges.emplace_back(v, w);
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.vertices.begin(), comp.vertices.end());
    std::sort(comp.edges.begin(), comp.edges.end());
    for (Vertex v : comp.vertices) (part.in_a(v) ? comp.a_vertices : comp.b_vertices).push_back(v);
    comp.is_tree = comp.edges.size() + 1 == comp.vertices.size();
    out.push_back(std::move(comp));
  }
  return out;
}

// Membership in S(G): one A-vertex and three B-vertices.
inline bool classify_S(const ABComponent& comp) {
  return comp.a_vertices.size() == 1 && comp.b_vertices.size() == 3;
}

inline std::size_t count_S(std::span<const ABComponent> comps) {
  return static_cast<std::size_t>(std::count_if(comps.begin(), comps.end(), classify_S));
}

/// Event E1: at least two components made of one A- and one B-vertex, or
/// no component with two or more A-vertices and no isolated vertex of G^AB.
inline bool detect_E1(const Graph&, const CorePartition&, std::span<const ABComponent> comps) {
  std::size_t ab_pairs = 0;
  bool multi_a = false;
  bool isolated = false;
  for (const auto& c : comps) {
    if (c.vertices.size() == 2 && c.a_vertices.size() == 1 && c.b_vertices.size() == 1) ++ab_pairs;
    if (c.a_vertices.size() >= 2) multi_a = true;
    if (c.vertices.size() == 1) isolated = true;
  }
  return ab_pairs >= 2 || (!multi_a && !isolated);
}

/// Caterpillar labelling of a component that realizes E_k: one B-vertex b
/// adjacent to a1, a2, a3 in A, and a3 a4 ... ak a path; nothing else.
struct Caterpillar {
  std::size_t k = 0;
  Vertex b = 0;
  std::vector<Vertex> a;  // a[0] = a1, ..., a[k-1] = ak
};

inline std::optional<Caterpillar> match_caterpillar(const Graph& g, const CorePartition& part,
                                                    const ABComponent& comp) {
  if (!comp.is_tree || comp.b_vertices.size() != 1 || comp.a_vertices.size() < 3) return std::nullopt;
  const Vertex b = comp.b_vertices.front();
  if (g.degree(b) < 3) return std::nullopt;
  std::vector<Vertex> nb;
  for (Vertex w : g.neighbors(b))
    if (!part.in_c(w)) nb.push_back(w);
  if (nb.size() != 3) return std::nullopt;
  // Leaves hang off b; the remaining neighbour starts a path away from b.
  std::vector<Vertex> leaves;
  std::optional<Vertex> head;
  for (Vertex w : nb) {
    if (g.degree(w) == 1) {
      leaves.push_back(w);
    } else if (!head) {
      head = w;
    } else {
      return std::nullopt;
    }
  }
  Caterpillar cat;
  cat.b = b;
  if (!head) {
    // k = 3: three A-leaves, any of them may play a3.
    cat.k = 3;
    cat.a = {leaves[0], leaves[1], leaves[2]};
    return cat.a.size() == comp.a_vertices.size() ? std::optional(cat) : std::nullopt;
  }
  if (leaves.size() != 2) return std::nullopt;
  cat.a = {leaves[0], leaves[1], *head};
  Vertex prev = b;
  Vertex cur = *head;
  while (true) {
    if (g.degree(cur) > 2) return std::nullopt;
    std::optional<Vertex> nxt;
    for (Vertex w : g.neighbors(cur))
      if (w != prev) nxt = w;
    if (!nxt) break;
    prev = cur;
    cur = *nxt;
    cat.a.push_back(cur);
  }
  cat.k = cat.a.size();
  if (cat.k != comp.a_vertices.size() || cat.k + 1 != comp.vertices.size()) return std::nullopt;
  return cat;
}

/// Finds a simple cycle of exactly `len` vertices (len >= 3) by bounded DFS
/// from every start vertex, restricted to cycles whose minimum vertex is the
/// start. Exponential in len only; meant for len <= ~8.
inline std::optional<std::vector<Vertex>> find_cycle_of_length(const Graph& g, std::size_t len) {
  if (len < 3 || len > g.n()) return std::nullopt;
  std::vector<Vertex> path;
  std::vector<char> on_path(g.n(), 0);
  std::vector<std::size_t> dist(g.n());
  std::vector<Vertex> bfs;

  for (Vertex s = 0; s < g.n(); ++s) {
    if (g.degree(s) < 2) continue;
    // Distances from s within vertices > s, for pruning.
    std::fill(dist.begin(), dist.end(), SIZE_MAX);
    dist[s] = 0;
    bfs.assign(1, s);
    for (std::size_t i = 0; i < bfs.size(); ++i) {
      const Vertex x = bfs[i];
      if (dist[x] >= len) continue;
      for (Vertex y : g.neighbors(x)) {
        if (y > s && dist[y] == SIZE_MAX) {
          dist[y] = dist[x] + 1;
          bfs.push_back(y);
        }
      }
    }
    path.assign(1, s);
    on_path[s] = 1;
    bool found = false;
    auto dfs = [&](auto&& self, Vertex v) -> void {
      if (path.size() == len) {
        if (g.has_edge(v, s)) found = true;
        return;
      }
      for (Vertex w : g.neighbors(v)) {
        if (w <= s || on_path[w] || dist[w] == SIZE_MAX) continue;
        // Must still be able to return to s in the remaining steps.
        if (dist[w] > len - path.size()) continue;
        on_path[w] = 1;
        path.push_back(w);
        self(self, w);
        if (found) return;
        path.pop_back();
        on_path[w] = 0;
      }
    };
    dfs(dfs, s);
    for (Vertex v : path) on_path[v] = 0;
    if (found) return path;
  }
  return std::nullopt;
}

/// Set of k in [2, kmax] for which E_k holds: G has a k-cycle, or G^AB has a
/// caterpillar component with k A-vertices. k = 2 never qualifies (no
/// 2-cycles in a simple graph and the caterpillar needs three A-leaves).
inline std::set<std::size_t> detect_Ek(const Graph& g, const CorePartition& part,
                                       std::span<const ABComponent> comps, std::size_t kmax) {
  if (kmax < 2) throw ParameterError("detect_Ek: kmax must be >= 2");
  std::set<std::size_t> out;
  for (const auto& c : comps) {
    if (auto cat = match_caterpillar(g, part, c); cat && cat->k <= kmax) out.insert(cat->k);
  }
  for (std::size_t k = 3; k <= kmax; ++k) {
    if (!out.contains(k) && find_cycle_of_length(g, k)) out.insert(k);
  }
  return out;
}

// max(3, floor(log log n)), natural logarithms.
inline std::size_t short_cycle_kmax(std::size_t n) {
  if (n < 16) return 3;
  const double ll = std::log(std::log(static_cast<double>(n)));
  return std::max<std::size_t>(3, static_cast<std::size_t>(std::floor(ll)));
}

// E(G): every k in [3, kmax] is realized.
inline bool detect_E(const Graph& g, const CorePartition& part, std::span<const ABComponent> comps) {
  const std::size_t kmax = short_cycle_kmax(g.n());
  const auto ks = detect_Ek(g, part, comps, kmax);
  for (std::size_t k = 3; k <= kmax; ++k)
    if (!ks.contains(k)) return false;
  return true;
}

}  // namespace hcomp
