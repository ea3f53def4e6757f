#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "hcomp/hcomp.hpp"

namespace testutil {

using hcomp::Edge;
using hcomp::Graph;
using hcomp::Vertex;

inline Graph make(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> es) {
  std::vector<Edge> v;
  for (auto [a, b] : es) v.emplace_back(a, b);
  return Graph::from_edges(n, v);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) es.emplace_back(u, v);
  return Graph::from_edges(n, es);
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u) es.emplace_back(u, static_cast<Vertex>((u + 1) % n));
  return Graph::from_edges(n, es);
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex u = 0; u + 1 < n; ++u) es.emplace_back(u, u + 1);
  return Graph::from_edges(n, es);
}

// Center 0, middle vertices 1..3, outer vertices 4..6.
inline Graph spider() { return make(7, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5}, {3, 6}}); }

inline Graph petersen() {
  return make(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                   {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8}});
}

inline Graph random_small(std::size_t n, double p, hcomp::Rng& rng) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) es.emplace_back(u, v);
  return Graph::from_edges(n, es);
}

// Uniform labelled tree from a random Pruefer sequence.
inline std::vector<Edge> random_tree(std::size_t n, hcomp::Rng& rng) {
  std::vector<Edge> es;
  if (n < 2) return es;
  std::vector<Vertex> seq(n - 2);
  for (auto& x : seq) x = static_cast<Vertex>(rng.below(n));
  std::vector<std::size_t> deg(n, 1);
  for (Vertex x : seq) ++deg[x];
  std::set<Vertex> leaves;
  for (Vertex v = 0; v < n; ++v)
    if (deg[v] == 1) leaves.insert(v);
  for (Vertex x : seq) {
    const Vertex leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    es.emplace_back(leaf, x);
    if (--deg[x] == 1) leaves.insert(x);
  }
  const Vertex a = *leaves.begin();
  const Vertex b = *std::next(leaves.begin());
  es.emplace_back(a, b);
  return es;
}

// Component built directly from a labelled graph on 0..n-1.
inline hcomp::ABComponent make_component(std::size_t n, std::vector<Edge> es, const std::vector<char>& is_a) {
  hcomp::ABComponent c;
  for (Vertex v = 0; v < n; ++v) {
    c.vertices.push_back(v);
    (is_a[v] ? c.a_vertices : c.b_vertices).push_back(v);
  }
  std::sort(es.begin(), es.end());
  c.edges = std::move(es);
  c.is_tree = c.edges.size() + 1 == n;
  return c;
}

// C(G) by definition: union of all S with every vertex of S ∪ N(S) having
// >= 4 neighbours in S.
inline std::vector<Vertex> brute_core(const Graph& g) {
  const std::size_t n = g.n();
  std::uint32_t best = 0;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    std::uint32_t closed = s;
    for (Vertex v = 0; v < n; ++v)
      if ((s >> v) & 1u)
        for (Vertex w : g.neighbors(v)) closed |= 1u << w;
    bool ok = true;
    for (Vertex v = 0; v < n && ok; ++v) {
      if (!((closed >> v) & 1u)) continue;
      std::size_t c = 0;
      for (Vertex w : g.neighbors(v)) c += (s >> w) & 1u;
      ok = c >= 4;
    }
    if (ok) best |= s;
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if ((best >> v) & 1u) out.push_back(v);
  return out;
}

// Motif counts by direct enumeration of subgraph copies.
inline hcomp::MotifCounts brute_motifs(const Graph& g) {
  hcomp::MotifCounts c;
  const std::size_t n = g.n();
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) < 4) ++c.n[g.degree(v)];
  for (Vertex w = 0; w < n; ++w) {
    auto nb = g.neighbors(w);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        for (std::size_t k = j + 1; k < nb.size(); ++k) {
          ++c.stars3;
          const Vertex a[3] = {nb[i], nb[j], nb[k]};
          if (g.degree(a[0]) <= 2 && g.degree(a[1]) <= 2 && g.degree(a[2]) <= 2) ++c.s3_pre;
          if (g.degree(a[0]) != 2 || g.degree(a[1]) != 2 || g.degree(a[2]) != 2) continue;
          std::set<Vertex> all{w, a[0], a[1], a[2]};
          for (Vertex x : a)
            for (Vertex y : g.neighbors(x))
              if (y != w) all.insert(y);
          if (all.size() == 7) ++c.s3;
        }
  }
  return c;
}

}  // namespace testutil
