#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hcomp/errors.hpp"

namespace hcomp {

using Vertex = std::uint32_t;

// Undirected edge, normalized so that u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

template <class G>
concept GraphLike = requires(const G& g, Vertex v) {
  { g.n() } -> std::convertible_to<std::size_t>;
  { g.degree(v) } -> std::convertible_to<std::size_t>;
  { g.neighbors(v) } -> std::convertible_to<std::span<const Vertex>>;
};

/// Immutable simple undirected graph in compressed sparse row form.
///
/// Neighbor lists are sorted, which makes has_edge() a binary search and
/// gives a canonical iteration order for everything built on top.
class Graph {
public:
  Graph() : offsets_(1, 0) {}
  explicit Graph(std::size_t n) : offsets_(n + 1, 0) {}

  /// Builds a graph from an edge list. Self-loops, repeated pairs and
  /// out-of-range endpoints are rejected with ParameterError.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    std::vector<Edge> sorted;
    sorted.reserve(edges.size());
    for (const Edge& e : edges) {
      if (e.u == e.v) throw ParameterError("self-loop at vertex " + std::to_string(e.u));
      if (e.v >= n) throw ParameterError("edge endpoint " + std::to_string(e.v) + " out of range");
      sorted.push_back(e);
    }
    std::sort(sorted.begin(), sorted.end());
    if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end()) {
      throw ParameterError("duplicate edge " + std::to_string(it->u) + " " + std::to_string(it->v));
    }
    return Graph(n, sorted);
  }

  std::size_t n() const noexcept { return offsets_.size() - 1; }
  std::size_t m() const noexcept { return adjacency_.size() / 2; }

  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], degree(v)};
  }

  bool has_edge(Vertex a, Vertex b) const noexcept {
    if (a >= n() || b >= n() || a == b) return false;
    if (degree(a) > degree(b)) std::swap(a, b);
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m());
    for (Vertex u = 0; u < n(); ++u) {
      for (Vertex v : neighbors(u)) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  // n_i(G): number of vertices of degree exactly i.
  std::size_t count_degree(std::size_t i) const noexcept {
    std::size_t c = 0;
    for (Vertex v = 0; v < n(); ++v) c += degree(v) == i;
    return c;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  // Trusted constructor: edges sorted, unique, valid.
  Graph(std::size_t n, const std::vector<Edge>& edges) : offsets_(n + 1, 0) {
    for (const Edge& e : edges) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    adjacency_.resize(2 * edges.size());
    std::vector<std::size_t> pos(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges) {
      adjacency_[pos[e.u]++] = e.v;
      adjacency_[pos[e.v]++] = e.u;
    }
    for (Vertex v = 0; v < n; ++v) {
      std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
    }
  }

  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
};

// Union of a graph with extra edges (G ∪ F). Throws if F overlaps E(G).
inline Graph with_edges(const Graph& g, std::span<const Edge> extra) {
  std::vector<Edge> all = g.edges();
  all.insert(all.end(), extra.begin(), extra.end());
  return Graph::from_edges(g.n(), all);
}

/// Growable graph used by the process simulator. Neighbor lists are
/// unordered; insertion rejects duplicates.
class DynamicGraph {
public:
  explicit DynamicGraph(std::size_t n = 0) : adjacency_(n) {}

  std::size_t n() const noexcept { return adjacency_.size(); }
  std::size_t m() const noexcept { return m_; }
  std::size_t degree(Vertex v) const noexcept { return adjacency_[v].size(); }
  std::span<const Vertex> neighbors(Vertex v) const noexcept { return adjacency_[v]; }

  bool has_edge(Vertex a, Vertex b) const noexcept {
    if (a == b || a >= n() || b >= n()) return false;
    const auto& shorter = degree(a) <= degree(b) ? adjacency_[a] : adjacency_[b];
    const Vertex other = degree(a) <= degree(b) ? b : a;
    return std::find(shorter.begin(), shorter.end(), other) != shorter.end();
  }

  void add_edge(Edge e) {
    if (e.u == e.v || e.v >= n()) throw ContractError("invalid edge insertion");
    if (has_edge(e.u, e.v)) {
      throw ContractError("edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " already present");
    }
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
    ++m_;
  }

  Graph to_graph() const {
    std::vector<Edge> es;
    es.reserve(m_);
    for (Vertex u = 0; u < n(); ++u) {
      for (Vertex v : adjacency_[u]) {
        if (u < v) es.emplace_back(u, v);
      }
    }
    return Graph::from_edges(n(), es);
  }

private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t m_ = 0;
};

/// Distance layers N^0(v), ..., N^k(v). Layers past the eccentricity of v
/// are present and empty.
template <GraphLike G>
std::vector<std::vector<Vertex>> bfs_layers(const G& g, Vertex v, std::size_t k) {
  if (v >= g.n()) throw ParameterError("bfs_layers: vertex out of range");
  std::vector<std::vector<Vertex>> layers(k + 1);
  std::vector<char> seen(g.n(), 0);
  layers[0].push_back(v);
  seen[v] = 1;
  for (std::size_t j = 1; j <= k; ++j) {
    for (Vertex u : layers[j - 1]) {
      for (Vertex w : g.neighbors(u)) {
        if (!seen[w]) {
          seen[w] = 1;
          layers[j].push_back(w);
        }
      }
    }
  }
  return layers;
}

// Text format: "n m" header, then m lines "u v" with u < v, 0-indexed.
inline Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };
  auto parse_pair = [&](unsigned long long& a, unsigned long long& b) {
    std::istringstream ss(line);
    std::string rest;
    if (!(ss >> a >> b) || (ss >> rest)) throw ParseError("expected two non-negative integers", lineno);
    if (line.find('-') != std::string::npos) throw ParseError("negative value", lineno);
  };

  if (!next_line()) throw ParseError("missing header", lineno);
  unsigned long long n = 0, m = 0;
  parse_pair(n, m);
  if (n > std::numeric_limits<Vertex>::max()) throw ParseError("vertex count too large", lineno);

  std::vector<Edge> edges;
  std::vector<std::size_t> lines;
  edges.reserve(std::min<unsigned long long>(m, 1u << 20));
  lines.reserve(edges.capacity());
  for (unsigned long long i = 0; i < m; ++i) {
    if (!next_line()) throw ParseError("expected " + std::to_string(m) + " edges, got " + std::to_string(i), lineno + 1);
    unsigned long long u = 0, v = 0;
    parse_pair(u, v);
    if (u >= n || v >= n) throw ParseError("vertex out of range", lineno);
    if (u >= v) throw ParseError("pair must satisfy u < v", lineno);
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    lines.push_back(lineno);
  }
  if (next_line()) throw ParseError("trailing content after edge list", lineno);

  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(edges[a], lines[a]) < std::pair(edges[b], lines[b]);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (edges[order[i]] == edges[order[i - 1]]) throw ParseError("duplicate edge", lines[order[i]]);
  }
  return Graph::from_edges(n, edges);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace hcomp
