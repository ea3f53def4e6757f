#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "hcomp/detail/subset_dp.hpp"
#include "hcomp/errors.hpp"
#include "hcomp/graph.hpp"

namespace hcomp {

inline constexpr std::size_t kOracleMuCap = 16;
inline constexpr std::size_t kOracleSpectrumCap = 14;
inline constexpr std::size_t kOracleMuHatCap = 7;

struct OracleReport {
  std::optional<std::size_t> mu;  // undefined for n <= 2
  bool hamiltonian = false;
  std::set<std::size_t> spectrum;
  std::optional<std::size_t> mu_hat;
};

namespace detail {

inline std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> adj(g.n(), 0);
  for (Vertex v = 0; v < g.n(); ++v)
    for (Vertex w : g.neighbors(v)) adj[v] |= Mask{1} << w;
  return adj;
}

// Bit L of the result is set iff G has a cycle on exactly L vertices.
// Cycles are rooted at their lowest vertex: paths from that vertex through
// higher vertices only.
inline std::uint32_t cycle_length_mask(std::size_t n, const std::vector<Mask>& adj) {
  std::uint32_t lengths = 0;
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<Mask> reach(subsets, 0);  // endpoints of paths from lowbit(S) spanning S
  for (std::size_t v = 0; v < n; ++v) reach[Mask{1} << v] = Mask{1} << v;
  for (Mask s = 1; s < subsets; ++s) {
    const Mask ends = reach[s];
    if (!ends) continue;
    const auto root = static_cast<std::size_t>(std::countr_zero(s));
    const int size = std::popcount(s);
    if (size >= 3 && (ends & adj[root])) lengths |= std::uint32_t{1} << size;
    const Mask above = ~((Mask{2} << root) - 1);  // vertices > root
    for (Mask e = ends; e; e &= e - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(e));
      for (Mask out = adj[v] & ~s & above; out; out &= out - 1) {
        const auto w = static_cast<std::size_t>(std::countr_zero(out));
        reach[s | (Mask{1} << w)] |= Mask{1} << w;
      }
    }
  }
  return lengths;
}

inline bool is_pancyclic_masks(std::size_t n, const std::vector<Mask>& adj) {
  const std::uint32_t want = ((std::uint32_t{1} << (n + 1)) - 1) & ~std::uint32_t{7};
  return (cycle_length_mask(n, adj) & want) == want;
}

}  // namespace detail

inline bool brute_hamiltonian(const Graph& g) {
  if (g.n() > kOracleMuCap) throw CapacityError("brute_hamiltonian", g.n());
  const std::size_t n = g.n();
  if (n < 3) return false;
  const auto adj = detail::adjacency_masks(g);
  // Hamiltonian paths from vertex 0 that close back to it.
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<detail::Mask> reach(subsets, 0);
  reach[1] = 1;
  for (detail::Mask s = 1; s < subsets; s += 2) {
    for (detail::Mask e = reach[s]; e; e &= e - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(e));
      for (detail::Mask out = adj[v] & ~s; out; out &= out - 1) {
        const auto w = static_cast<std::size_t>(std::countr_zero(out));
        reach[s | (detail::Mask{1} << w)] |= detail::Mask{1} << w;
      }
    }
  }
  return (reach[subsets - 1] & adj[0]) != 0;
}

inline std::set<std::size_t> brute_spectrum(const Graph& g) {
  if (g.n() > kOracleSpectrumCap) throw CapacityError("brute_spectrum", g.n());
  const auto mask = detail::cycle_length_mask(g.n(), detail::adjacency_masks(g));
  std::set<std::size_t> out;
  for (std::size_t len = 3; len <= g.n(); ++len)
    if ((mask >> len) & 1u) out.insert(len);
  return out;
}

/// mu(G): 0 for Hamiltonian G, else the minimum number of vertex-disjoint
/// paths covering V(G). Undefined (nullopt) for n <= 2.
inline std::optional<std::size_t> brute_mu(const Graph& g) {
  if (g.n() > kOracleMuCap) throw CapacityError("brute_mu", g.n());
  if (g.n() <= 2) return std::nullopt;
  if (brute_hamiltonian(g)) return 0;
  const auto [paths, cover] = detail::min_cost_path_partition(g.n(), detail::adjacency_masks(g),
                                                               [](std::size_t, std::size_t) { return 1L; });
  return static_cast<std::size_t>(paths);
}

/// mu-hat(G): the fewest added edges making G pancyclic, by trying every
/// non-edge subset in order of size starting from mu(G).
inline std::optional<std::size_t> brute_mu_hat(const Graph& g) {
  const std::size_t n = g.n();
  if (n > kOracleMuHatCap) throw CapacityError("brute_mu_hat", n);
  if (n <= 2) return std::nullopt;
  auto adj = detail::adjacency_masks(g);
  std::vector<Edge> non_edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) non_edges.emplace_back(u, v);
  const std::size_t start = *brute_mu(g);
  for (std::size_t r = start; r <= non_edges.size(); ++r) {
    // Enumerate r-subsets via an index combination.
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    while (true) {
      auto a = adj;
      for (std::size_t i : idx) {
        const Edge& e = non_edges[i];
        a[e.u] |= detail::Mask{1} << e.v;
        a[e.v] |= detail::Mask{1} << e.u;
      }
      if (detail::is_pancyclic_masks(n, a)) return r;
      std::size_t i = r;
      while (i > 0 && idx[i - 1] == non_edges.size() - r + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;  // unreachable: K_n is pancyclic for n >= 3
}

inline OracleReport oracle_report(const Graph& g, bool with_mu_hat = false) {
  OracleReport rep;
  rep.hamiltonian = brute_hamiltonian(g);
  rep.mu = brute_mu(g);
  if (g.n() <= kOracleSpectrumCap) rep.spectrum = brute_spectrum(g);
  if (with_mu_hat) rep.mu_hat = brute_mu_hat(g);
  return rep;
}

}  // namespace hcomp
