#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace hcomp::detail {

// Small-graph helpers over vertex bitmasks (n <= 20). Vertex i <-> bit i.
using Mask = std::uint32_t;

/// Held-Karp style table of Hamiltonian paths of induced subgraphs:
/// ends[S * n + v] is the set of u such that G[S] has a Hamiltonian path
/// from u to v. Size 2^n * n words.
class HamPathTable {
public:
  HamPathTable(std::size_t n, const std::vector<Mask>& adj) : n_(n), adj_(adj), ends_((std::size_t{1} << n) * n, 0) {
    for (std::size_t v = 0; v < n; ++v) at(Mask{1} << v, v) = Mask{1} << v;
    const Mask full = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
    for (Mask s = 1; s <= full && s != 0; ++s) {
      for (Mask rest = s; rest; rest &= rest - 1) {
        const auto v = static_cast<std::size_t>(std::countr_zero(rest));
        const Mask from = at(s, v);
        if (!from) continue;
        for (Mask out = adj_[v] & ~s; out; out &= out - 1) {
          const auto w = static_cast<std::size_t>(std::countr_zero(out));
          at(s | (Mask{1} << w), w) |= from;
        }
      }
      if (s == full) break;
    }
  }

  Mask ends(Mask s, std::size_t v) const { return ends_[static_cast<std::size_t>(s) * n_ + v]; }

  // Vertex sequence of a Hamiltonian path of G[S] from u to v; requires one to exist.
  std::vector<std::size_t> path(Mask s, std::size_t u, std::size_t v) const {
    std::vector<std::size_t> rev{v};
    while (s != (Mask{1} << v)) {
      const Mask prev_set = s & ~(Mask{1} << v);
      std::size_t next = n_;
      for (Mask cand = adj_[v] & prev_set; cand; cand &= cand - 1) {
        const auto w = static_cast<std::size_t>(std::countr_zero(cand));
        if (ends(prev_set, w) & (Mask{1} << u)) {
          next = w;
          break;
        }
      }
      s = prev_set;
      v = next;
      rev.push_back(v);
    }
    return {rev.rbegin(), rev.rend()};
  }

private:
  Mask& at(Mask s, std::size_t v) { return ends_[static_cast<std::size_t>(s) * n_ + v]; }

  std::size_t n_;
  std::vector<Mask> adj_;
  std::vector<Mask> ends_;
};

/// Minimum-cost partition of V into vertex-disjoint paths, where a path with
/// endpoints (u, v) costs cost(u, v) (u == v for a single vertex). Exact by
/// enumeration of every path through the Hamiltonian-path table and a
/// set-partition DP, O(3^n).
template <class CostFn>
std::pair<long, std::vector<std::vector<std::size_t>>> min_cost_path_partition(std::size_t n, const std::vector<Mask>& adj,
                                                                               CostFn cost) {
  constexpr long kInf = std::numeric_limits<long>::max() / 4;
  if (n == 0) return {0, {}};
  HamPathTable table(n, adj);
  const std::size_t subsets = std::size_t{1} << n;

  std::vector<long> path_cost(subsets, kInf);
  std::vector<std::pair<std::uint8_t, std::uint8_t>> path_ends(subsets);
  for (Mask s = 1; s < subsets; ++s) {
    for (Mask rest = s; rest; rest &= rest - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(rest));
      for (Mask us = table.ends(s, v); us; us &= us - 1) {
        const auto u = static_cast<std::size_t>(std::countr_zero(us));
        const long c = cost(u, v);
        if (c < path_cost[s]) {
          path_cost[s] = c;
          path_ends[s] = {static_cast<std::uint8_t>(u), static_cast<std::uint8_t>(v)};
        }
      }
    }
  }

  std::vector<long> best(subsets, kInf);
  std::vector<Mask> choice(subsets, 0);
  best[0] = 0;
  for (Mask s = 1; s < subsets; ++s) {
    const Mask low = s & (~s + 1);
    const Mask others = s ^ low;
    // Enumerate T = low | sub for every sub of others.
    for (Mask sub = others;; sub = (sub - 1) & others) {
      const Mask t = low | sub;
      if (path_cost[t] < kInf) {
        const long c = path_cost[t] + best[s ^ t];
        if (c < best[s]) {
          best[s] = c;
          choice[s] = t;
        }
      }
      if (sub == 0) break;
    }
  }

  std::vector<std::vector<std::size_t>> paths;
  for (Mask s = static_cast<Mask>(subsets - 1); s; s ^= choice[s]) {
    const Mask t = choice[s];
    const auto [u, v] = path_ends[t];
    paths.push_back(table.path(t, u, v));
  }
  return {best[subsets - 1], std::move(paths)};
}

}  // namespace hcomp::detail
