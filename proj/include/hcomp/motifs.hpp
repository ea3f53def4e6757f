#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hcomp/errors.hpp"
#include "hcomp/graph.hpp"

namespace hcomp {

/// Degree-class and small-tree counts tracked through the process.
struct MotifCounts {
  std::array<std::int64_t, 4> n{};  // n_0 .. n_3
  std::int64_t stars3 = 0;          // copies of K_{1,3}: sum_v C(d(v), 3)
  std::int64_t s3_pre = 0;          // (center, triple of degree<=2 neighbours) pairs
  std::int64_t s3 = 0;              // 3-spiders (7-vertex trees)

  friend bool operator==(const MotifCounts&, const MotifCounts&) = default;
};

constexpr std::int64_t choose3(std::int64_t x) noexcept { return x < 3 ? 0 : x * (x - 1) * (x - 2) / 6; }

namespace detail {

// Contribution of center w to s3_pre and s3.
template <GraphLike G>
std::pair<std::int64_t, std::int64_t> center_terms(const G& g, Vertex w, std::vector<Vertex>& scratch) {
  std::int64_t low = 0;
  scratch.clear();  // "other neighbour" of each degree-2 neighbour
  std::int64_t k2 = 0;
  std::int64_t mutual = 0;  // pairs of degree-2 neighbours adjacent to each other
  for (Vertex a : g.neighbors(w)) {
    const auto da = g.degree(a);
    if (da <= 2) ++low;
    if (da != 2) continue;
    ++k2;
    auto nb = g.neighbors(a);
    const Vertex b = nb[0] == w ? nb[1] : nb[0];
    scratch.push_back(b);
    if (g.degree(b) == 2 && b > a) {
      auto nbb = g.neighbors(b);
      if (nbb[0] == w || nbb[1] == w) ++mutual;
    }
  }
  // Triples with pairwise distinct outer vertices: elementary symmetric
  // polynomial e3 over the multiplicities of each outer vertex.
  std::sort(scratch.begin(), scratch.end());
  std::int64_t e1 = 0, e2 = 0, e3 = 0;
  for (std::size_t i = 0; i < scratch.size();) {
    std::size_t j = i;
    while (j < scratch.size() && scratch[j] == scratch[i]) ++j;
    const auto c = static_cast<std::int64_t>(j - i);
    e3 += e2 * c;
    e2 += e1 * c;
    e1 += c;
    i = j;
  }
  // An outer vertex coinciding with another leg only happens for two legs
  // joined into a triangle with w; any third leg completes a bad triple.
  const std::int64_t spiders = e3 - mutual * (k2 - 2);
  return {choose3(low), spiders};
}

}  // namespace detail

/// Exact counts from scratch. O(sum of d(w) log d(w)).
template <GraphLike G>
MotifCounts count_motifs(const G& g) {
  MotifCounts c;
  std::vector<Vertex> scratch;
  for (Vertex v = 0; v < g.n(); ++v) {
    const auto d = static_cast<std::int64_t>(g.degree(v));
    if (d < 4) ++c.n[static_cast<std::size_t>(d)];
    c.stars3 += choose3(d);
    const auto [pre, spi] = detail::center_terms(g, v, scratch);
    c.s3_pre += pre;
    c.s3 += spi;
  }
  return c;
}

/// Adds edge e to g and updates `counts` from the neighbourhoods of its
/// endpoints only: every center whose term can change lies in
/// {u, v} ∪ N(u) ∪ N(v).
inline void insert_edge_update(MotifCounts& counts, DynamicGraph& g, Edge e) {
  if (g.has_edge(e.u, e.v)) throw ContractError("insert_edge_update: edge already present");
  std::vector<Vertex> centers;
  centers.reserve(g.degree(e.u) + g.degree(e.v) + 2);
  centers.push_back(e.u);
  centers.push_back(e.v);
  for (Vertex x : g.neighbors(e.u)) centers.push_back(x);
  for (Vertex x : g.neighbors(e.v)) centers.push_back(x);
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());

  std::vector<Vertex> scratch;
  auto apply = [&](std::int64_t sign) {
    for (Vertex w : centers) {
      const auto [pre, spi] = detail::center_terms(g, w, scratch);
      counts.s3_pre += sign * pre;
      counts.s3 += sign * spi;
    }
    for (Vertex x : {e.u, e.v}) {
      const auto d = static_cast<std::int64_t>(g.degree(x));
      if (d < 4) counts.n[static_cast<std::size_t>(d)] += sign;
      counts.stars3 += sign * choose3(d);
    }
  };
  apply(-1);
  g.add_edge(e);
  apply(+1);
}

/// Motif counts kept in step with a growing graph.
class IncrementalMotifs {
public:
  explicit IncrementalMotifs(std::size_t n) : graph_(n) { counts_.n[0] = static_cast<std::int64_t>(n); }

  void insert(Edge e) { insert_edge_update(counts_, graph_, e); }

  const MotifCounts& counts() const noexcept { return counts_; }
  const DynamicGraph& graph() const noexcept { return graph_; }

private:
  DynamicGraph graph_;
  MotifCounts counts_;
};

/// Per-vertex expectation of 2 n0 + n1 + s3' in G(n, d/n), leading order:
/// 2e^{-d} + d e^{-d} + ((d^3 + 3d^4 + 3d^5 + d^6) / 6) e^{-3d}.
inline double expected_lb_closed_form(double d) {
  if (d < 0) throw ParameterError("expected_lb_closed_form: d must be >= 0");
  const double e1 = std::exp(-d);
  const double e3 = std::exp(-3 * d);
  const double d3 = d * d * d;
  return 2 * e1 + d * e1 + (d3 + 3 * d3 * d + 3 * d3 * d * d + d3 * d3) / 6 * e3;
}

}  // namespace hcomp
