#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hcomp/errors.hpp"
#include "hcomp/graph.hpp"
#include "hcomp/rng.hpp"

namespace hcomp {

enum class EngineMode { Exact, Heuristic };

struct HamiltonResult {
  std::optional<std::vector<Vertex>> cycle;
  bool exhausted = false;  // exact search proved that no such cycle exists
  std::uint64_t steps = 0;
  std::uint64_t restarts = 0;
};

inline constexpr std::size_t kExactEngineCap = 20;

namespace detail {

inline constexpr Vertex kNoPartner = 0xffffffffu;

inline HamiltonResult hamilton_exact(const Graph& h, const std::vector<Vertex>& partner) {
  const std::size_t n = h.n();
  if (n > kExactEngineCap) throw CapacityError("exact Hamilton engine", n);
  HamiltonResult res;
  if (n < 3) {
    res.exhausted = true;
    return res;
  }
  using M = std::uint32_t;
  std::vector<M> adj(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : h.neighbors(v)) adj[v] |= M{1} << w;

  // reach[S] = set of v such that some path from vertex 0 covers S, ends in v,
  // and respects forced edges: entering a vertex whose partner is already on
  // the path is only allowed from that partner; leaving a vertex whose
  // partner is not yet on the path must go to the partner.
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<M> reach(subsets, 0);
  const Vertex start = 0;
  const Vertex second = partner[start];
  if (second != kNoPartner) {
    reach[(M{1} << start) | (M{1} << second)] = M{1} << second;
  } else {
    reach[M{1} << start] = M{1} << start;
  }
  auto allowed = [&](M s, Vertex v, Vertex w) {
    if (partner[v] != kNoPartner && !((s >> partner[v]) & 1u) && partner[v] != w) return false;
    if (partner[w] != kNoPartner && ((s >> partner[w]) & 1u) && partner[w] != v) return false;
    return true;
  };
  for (M s = 1; s < subsets; ++s) {
    if (!(s & 1u)) continue;
    for (M ends = reach[s]; ends; ends &= ends - 1) {
      const auto v = static_cast<Vertex>(std::countr_zero(ends));
      for (M out = adj[v] & ~s; out; out &= out - 1) {
        const auto w = static_cast<Vertex>(std::countr_zero(out));
        if (allowed(s, v, w)) reach[s | (M{1} << w)] |= M{1} << w;
      }
    }
  }
  const M full = static_cast<M>(subsets - 1);
  std::optional<Vertex> last;
  for (M ends = reach[full]; ends; ends &= ends - 1) {
    const auto v = static_cast<Vertex>(std::countr_zero(ends));
    if (!((adj[v] >> start) & 1u)) continue;
    // Closing edge v-start: v's partner must already be its predecessor,
    // which `reach` guarantees; start's forced edge was used first.
    if (second == kNoPartner && partner[v] != kNoPartner && partner[v] == start) continue;
    if (second != kNoPartner && v == second) continue;
    last = v;
    break;
  }
  res.steps = subsets;
  if (!last) {
    res.exhausted = true;
    return res;
  }
  // Walk back through the table.
  std::vector<Vertex> rev{*last};
  M s = full;
  Vertex v = *last;
  while (s != (M{1} << start) && !(second != kNoPartner && s == ((M{1} << start) | (M{1} << second)))) {
    const M prev = s & ~(M{1} << v);
    std::optional<Vertex> found;
    for (M cand = adj[v] & prev & reach[prev]; cand; cand &= cand - 1) {
      const auto u = static_cast<Vertex>(std::countr_zero(cand));
      if (allowed(prev, u, v)) {
        found = u;
        break;
      }
    }
    s = prev;
    v = *found;
    rev.push_back(v);
  }
  if (second != kNoPartner) rev.push_back(start);
  res.cycle = std::vector<Vertex>(rev.rbegin(), rev.rend());
  return res;
}

/// Rotation-extension search. Forced pairs are kept adjacent on the path at
/// all times: extensions add a forced pair as a block and rotations never
/// break a forced edge.
class PosaSearch {
public:
  PosaSearch(const Graph& h, const std::vector<Vertex>& partner, std::uint64_t budget, std::uint64_t seed)
      : h_(h), partner_(partner), budget_(budget), rng_(seed), pos_(h.n(), kAbsent) {}

  HamiltonResult run() {
    HamiltonResult res;
    const std::size_t n = h_.n();
    if (n < 3) return res;
    const std::uint64_t stall_limit = 20 * n + 1000;
    while (steps_ < budget_) {
      reset(static_cast<Vertex>(rng_.below(n)));
      std::uint64_t stall = 0;
      std::size_t best = path_.size();
      while (steps_ < budget_ && stall < stall_limit) {
        ++steps_;
        if (path_.size() == n) {
          if (h_.has_edge(path_.back(), path_.front())) {
            res.cycle = path_;
            res.steps = steps_;
            res.restarts = restarts_;
            return res;
          }
          if (!rotate(/*closing=*/true)) {
            reverse_path();
            if (!rotate(true)) break;
          }
        } else if (extend()) {
        } else {
          reverse_path();
          if (!extend() && !rotate(false)) break;
        }
        if (path_.size() > best) {
          best = path_.size();
          stall = 0;
        } else {
          ++stall;
        }
      }
      ++restarts_;
    }
    res.steps = steps_;
    res.restarts = restarts_;
    return res;
  }

private:
  static constexpr std::uint32_t kAbsent = 0xffffffffu;

  void reset(Vertex s) {
    for (Vertex v : path_) pos_[v] = kAbsent;
    path_.clear();
    push(s);
    if (partner_[s] != kNoPartner) push(partner_[s]);
  }

  void push(Vertex v) {
    pos_[v] = static_cast<std::uint32_t>(path_.size());
    path_.push_back(v);
  }

  void reverse_path() {
    std::reverse(path_.begin(), path_.end());
    for (std::size_t i = 0; i < path_.size(); ++i) pos_[path_[i]] = static_cast<std::uint32_t>(i);
  }

  std::size_t free_degree(Vertex w) const {
    std::size_t c = 0;
    for (Vertex x : h_.neighbors(w)) c += pos_[x] == kAbsent;
    return c;
  }

  // Append an unvisited neighbour of the end, preferring the one with the
  // fewest unvisited neighbours of its own.
  bool extend() {
    const Vertex end = path_.back();
    std::optional<Vertex> pick;
    std::size_t pick_deg = SIZE_MAX;
    std::uint64_t ties = 0;
    for (Vertex w : h_.neighbors(end)) {
      if (pos_[w] != kAbsent) continue;
      const Vertex tail = partner_[w] != kNoPartner ? partner_[w] : w;
      const std::size_t fd = free_degree(tail);
      if (fd < pick_deg) {
        pick = w;
        pick_deg = fd;
        ties = 1;
      } else if (fd == pick_deg && rng_.below(++ties) == 0) {
        pick = w;
      }
    }
    if (!pick) return false;
    push(*pick);
    if (partner_[*pick] != kNoPartner) push(partner_[*pick]);
    return true;
  }

  // Posa rotation at the end: end ~ path[i] gives
  // path[0..i], end, path[k-1], ..., path[i+1].
  bool rotate(bool closing) {
    const std::size_t k = path_.size() - 1;
    const Vertex end = path_[k];
    candidates_.clear();
    preferred_.clear();
    for (Vertex w : h_.neighbors(end)) {
      const auto i = pos_[w];
      if (i == kAbsent || i + 1 >= k) continue;
      const Vertex broken = path_[i + 1];
      if (partner_[w] == broken) continue;
      candidates_.push_back(i);
      const bool good = closing ? h_.has_edge(broken, path_.front()) : free_degree(broken) > 0;
      if (good) preferred_.push_back(i);
    }
    const auto& pool = preferred_.empty() ? candidates_ : preferred_;
    if (pool.empty()) return false;
    const std::size_t i = pool[rng_.below(pool.size())];
    std::reverse(path_.begin() + static_cast<std::ptrdiff_t>(i) + 1, path_.end());
    for (std::size_t j = i + 1; j <= k; ++j) pos_[path_[j]] = static_cast<std::uint32_t>(j);
    return true;
  }

  const Graph& h_;
  const std::vector<Vertex>& partner_;
  std::uint64_t budget_;
  Rng rng_;
  std::vector<std::uint32_t> pos_;
  std::vector<Vertex> path_;
  std::vector<std::size_t> candidates_, preferred_;
  std::uint64_t steps_ = 0;
  std::uint64_t restarts_ = 0;
};

}  // namespace detail

/// Hamilton cycle of H that traverses every edge of `forced` (a matching of
/// H). Failure is reported in the result, never thrown; exact mode proves
/// infeasibility (exhausted = true).
inline HamiltonResult hamilton_with_forced(const Graph& h, std::span<const Edge> forced, EngineMode mode,
                                           std::uint64_t budget = 1'000'000, std::uint64_t seed = 0) {
  std::vector<Vertex> partner(h.n(), detail::kNoPartner);
  for (const Edge& e : forced) {
    if (e.v >= h.n()) throw ContractError("forced edge outside the vertex range");
    if (partner[e.u] != detail::kNoPartner || partner[e.v] != detail::kNoPartner) {
      throw ContractError("forced edges must form a matching");
    }
    partner[e.u] = e.v;
    partner[e.v] = e.u;
  }
  for (const Edge& e : forced) {
    if (!h.has_edge(e.u, e.v)) {
      HamiltonResult r;
      r.exhausted = true;
      return r;
    }
  }
  if (mode == EngineMode::Exact) return detail::hamilton_exact(h, partner);
  return detail::PosaSearch(h, partner, budget, seed).run();
}

/// True iff `cycle` is a simple cycle of `expected_len` vertices whose
/// consecutive pairs (and closing pair) all lie in E(G) ∪ F.
inline bool verify_cycle(const Graph& g, std::span<const Edge> f, std::span<const Vertex> cycle, std::size_t expected_len) {
  if (cycle.size() != expected_len || cycle.size() < 3) return false;
  std::vector<Edge> extra(f.begin(), f.end());
  std::sort(extra.begin(), extra.end());
  std::vector<Vertex> sorted(cycle.begin(), cycle.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (sorted.back() >= g.n()) return false;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Vertex a = cycle[i], b = cycle[(i + 1) % cycle.size()];
    if (!g.has_edge(a, b) && !std::binary_search(extra.begin(), extra.end(), Edge(a, b))) return false;
  }
  return true;
}

}  // namespace hcomp
