#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hcomp/detail/subset_dp.hpp"
#include "hcomp/errors.hpp"
#include "hcomp/graph.hpp"
#include "hcomp/strong_core.hpp"

namespace hcomp {

using Path = std::vector<Vertex>;

/// Small vertex-labelled graph local to one component. Vertex i of the
/// local graph is global vertex `global[i]`; `is_a[i]` marks A-vertices.
struct LabeledGraph {
  std::vector<std::vector<std::uint32_t>> adj;
  std::vector<char> is_a;
  std::vector<Vertex> global;

  std::size_t size() const { return adj.size(); }
  std::size_t edge_count() const {
    std::size_t s = 0;
    for (const auto& a : adj) s += a.size();
    return s / 2;
  }
  std::size_t a_count() const { return static_cast<std::size_t>(std::count(is_a.begin(), is_a.end(), 1)); }
};

/// Local graph of a component; B-B edges are dropped unless `keep_bb`.
inline LabeledGraph to_labeled(const ABComponent& comp, bool keep_bb = false) {
  LabeledGraph lg;
  const std::size_t k = comp.vertices.size();
  lg.adj.resize(k);
  lg.is_a.assign(k, 0);
  lg.global = comp.vertices;
  auto local = [&](Vertex v) {
    return static_cast<std::uint32_t>(std::lower_bound(comp.vertices.begin(), comp.vertices.end(), v) -
                                      comp.vertices.begin());
  };
  for (Vertex a : comp.a_vertices) lg.is_a[local(a)] = 1;
  for (const Edge& e : comp.edges) {
    const auto x = local(e.u), y = local(e.v);
    if (!keep_bb && !lg.is_a[x] && !lg.is_a[y]) continue;
    lg.adj[x].push_back(y);
    lg.adj[y].push_back(x);
  }
  return lg;
}

// Connected pieces of a labelled graph, as labelled graphs.
inline std::vector<LabeledGraph> split_pieces(const LabeledGraph& lg) {
  const std::size_t k = lg.size();
  std::vector<int> piece(k, -1);
  std::vector<std::vector<std::uint32_t>> members;
  for (std::uint32_t s = 0; s < k; ++s) {
    if (piece[s] >= 0) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    std::vector<std::uint32_t> stack{s};
    piece[s] = id;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      members[id].push_back(v);
      for (auto w : lg.adj[v])
        if (piece[w] < 0) {
          piece[w] = id;
          stack.push_back(w);
        }
    }
  }
  std::vector<LabeledGraph> out(members.size());
  std::vector<std::uint32_t> index(k);
  for (std::size_t p = 0; p < members.size(); ++p) {
    std::sort(members[p].begin(), members[p].end());
    for (std::size_t i = 0; i < members[p].size(); ++i) index[members[p][i]] = static_cast<std::uint32_t>(i);
    auto& o = out[p];
    o.adj.resize(members[p].size());
    for (std::size_t i = 0; i < members[p].size(); ++i) {
      const auto v = members[p][i];
      o.is_a.push_back(lg.is_a[v]);
      o.global.push_back(lg.global[v]);
      for (auto w : lg.adj[v]) o.adj[i].push_back(index[w]);
    }
  }
  return out;
}

enum class CoverMethod { Formula, TreeDp, Exhaustive };

inline const char* to_string(CoverMethod m) {
  switch (m) {
    case CoverMethod::Formula: return "formula";
    case CoverMethod::TreeDp: return "tree-dp";
    case CoverMethod::Exhaustive: return "exhaustive";
  }
  return "?";
}

/// a(T) for one component together with an optimal cover (empty for the
/// formula route). Paths are global vertex sequences.
struct CoverResult {
  std::size_t a_value = 0;
  std::vector<Path> witness;
  CoverMethod method = CoverMethod::TreeDp;
};

// Number of A-endpoints of a cover; a single-vertex path in A counts twice.
template <class IsA>
std::size_t count_a_endpoints(const std::vector<Path>& paths, IsA is_a) {
  std::size_t c = 0;
  for (const auto& p : paths) {
    if (p.empty()) continue;
    c += is_a(p.front()) ? 1 : 0;
    c += is_a(p.back()) ? 1 : 0;
  }
  return c;
}

namespace detail {

inline std::vector<Path> paths_from_edges(const LabeledGraph& lg, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& chosen) {
  const std::size_t k = lg.size();
  std::vector<std::array<std::int64_t, 2>> link(k, {-1, -1});
  for (auto [x, y] : chosen) {
    (link[x][0] < 0 ? link[x][0] : link[x][1]) = y;
    (link[y][0] < 0 ? link[y][0] : link[y][1]) = x;
  }
  std::vector<char> used(k, 0);
  std::vector<Path> out;
  for (std::uint32_t s = 0; s < k; ++s) {
    if (used[s] || (link[s][0] >= 0 && link[s][1] >= 0)) continue;
    Path p;
    std::int64_t prev = -1, cur = s;
    while (cur >= 0) {
      used[cur] = 1;
      p.push_back(lg.global[cur]);
      const auto& l = link[cur];
      std::int64_t nxt = l[0] != prev ? l[0] : l[1];
      if (nxt >= 0 && used[nxt]) nxt = -1;
      prev = cur;
      cur = nxt;
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Tree DP on one forest; returns (max weight, chosen edges). Weight of an
// edge is the number of its A-endpoints; a(T) = 2|A| - max weight.
inline std::pair<long, std::vector<std::pair<std::uint32_t, std::uint32_t>>> forest_dp(const LabeledGraph& lg) {
  constexpr long kNeg = std::numeric_limits<long>::min() / 4;
  using Row = std::array<long, 3>;
  const std::size_t k = lg.size();
  std::vector<std::int64_t> parent(k, -2);
  std::vector<std::uint32_t> order;
  order.reserve(k);
  std::vector<std::uint32_t> roots;
  for (std::uint32_t r = 0; r < k; ++r) {
    if (parent[r] != -2) continue;
    roots.push_back(r);
    parent[r] = -1;
    std::vector<std::uint32_t> stack{r};
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (auto w : lg.adj[v]) {
        if (parent[w] == -2) {
          parent[w] = v;
          stack.push_back(w);
        } else if (static_cast<std::int64_t>(w) != parent[v]) {
          throw ContractError("tree DP applied to a graph with a cycle");
        }
      }
    }
  }

  auto weight = [&](std::uint32_t x, std::uint32_t y) { return static_cast<long>(lg.is_a[x]) + lg.is_a[y]; };
  std::vector<Row> dp(k);
  // stages[v][i] is v's row after merging its first i children.
  std::vector<std::vector<Row>> stages(k);
  std::vector<std::vector<std::uint32_t>> children(k);
  for (auto v : order)
    if (parent[v] >= 0) children[static_cast<std::size_t>(parent[v])].push_back(v);

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto v = *it;
    Row cur{0, kNeg, kNeg};
    stages[v].push_back(cur);
    for (auto c : children[v]) {
      const long any = std::max({dp[c][0], dp[c][1], dp[c][2]});
      const long up = std::max(dp[c][0], dp[c][1]) + weight(v, c);
      Row next{kNeg, kNeg, kNeg};
      for (int j = 0; j < 3; ++j) {
        if (cur[j] == kNeg) continue;
        next[j] = std::max(next[j], cur[j] + any);
        if (j < 2) next[j + 1] = std::max(next[j + 1], cur[j] + up);
      }
      cur = next;
      stages[v].push_back(cur);
    }
    dp[v] = cur;
  }

  long total = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> chosen;
  std::vector<std::pair<std::uint32_t, int>> todo;
  for (auto r : roots) {
    int j = 0;
    for (int t = 1; t < 3; ++t)
      if (dp[r][t] > dp[r][j]) j = t;
    total += dp[r][j];
    todo.emplace_back(r, j);
  }
  while (!todo.empty()) {
    auto [v, j] = todo.back();
    todo.pop_back();
    const auto& ch = children[v];
    for (std::size_t i = ch.size(); i-- > 0;) {
      const auto c = ch[i];
      const Row& before = stages[v][i];
      const long target = stages[v][i + 1][j];
      const int best_up = dp[c][1] > dp[c][0] ? 1 : 0;
      if (j > 0 && before[j - 1] != kNeg && before[j - 1] + dp[c][best_up] + weight(v, c) == target) {
        chosen.emplace_back(v, c);
        todo.emplace_back(c, best_up);
        --j;
      } else {
        int best_any = 0;
        for (int t = 1; t < 3; ++t)
          if (dp[c][t] > dp[c][best_any]) best_any = t;
        todo.emplace_back(c, best_any);
      }
    }
  }
  return {total, std::move(chosen)};
}

}  // namespace detail

inline bool is_forest(const LabeledGraph& lg) {
  return lg.edge_count() + split_pieces(lg).size() == lg.size();
}

/// Exact a(T) of a tree component by dynamic programming over
/// (interior / endpoint / singleton) states. B-B edges are dropped first,
/// which leaves a forest and does not change the optimum.
inline CoverResult a_tree_dp(const LabeledGraph& lg) {
  auto [weight, chosen] = detail::forest_dp(lg);
  CoverResult r;
  r.method = CoverMethod::TreeDp;
  r.a_value = 2 * lg.a_count() - static_cast<std::size_t>(weight);
  r.witness = detail::paths_from_edges(lg, chosen);
  return r;
}

inline CoverResult a_tree_dp(const ABComponent& comp) {
  if (!comp.is_tree) throw ContractError("a_tree_dp: component is not a tree");
  return a_tree_dp(to_labeled(comp));
}

enum class PrespiderRule {
  CenterTriples,  // (center, triple of A-vertices of degree <= 2) pairs
  Omit,           // deliberately wrong variant, kept for mutation testing
};

/// Closed form 2 n0(T) + n1(T) + s3'(T) for trees with at most three
/// A-vertices. Degrees are degrees in T (equal to degrees in G for A-vertices).
inline CoverResult a_formula_small(const ABComponent& comp, PrespiderRule rule = PrespiderRule::CenterTriples) {
  if (!comp.is_tree || comp.a_vertices.size() > 3) {
    throw ContractError("a_formula_small: requires a tree with at most three A-vertices");
  }
  const LabeledGraph lg = to_labeled(comp, /*keep_bb=*/true);
  std::size_t n0 = 0, n1 = 0, s3 = 0;
  for (std::size_t i = 0; i < lg.size(); ++i) {
    if (!lg.is_a[i]) continue;
    n0 += lg.adj[i].empty();
    n1 += lg.adj[i].size() == 1;
  }
  if (rule == PrespiderRule::CenterTriples) {
    for (std::size_t w = 0; w < lg.size(); ++w) {
      std::size_t low = 0;
      for (auto x : lg.adj[w]) low += lg.is_a[x] && lg.adj[x].size() <= 2;
      s3 += low * (low >= 1 ? low - 1 : 0) * (low >= 2 ? low - 2 : 0) / 6;
    }
  }
  CoverResult r;
  r.method = CoverMethod::Formula;
  r.a_value = 2 * n0 + n1 + s3;
  return r;
}

inline constexpr std::size_t kDefaultExhaustiveCap = 16;

/// Exact minimum over all disjoint path covers by subset DP, for any graph
/// (trees or not) up to `cap` vertices.
inline CoverResult a_exhaustive(const LabeledGraph& lg, std::size_t cap = kDefaultExhaustiveCap) {
  if (lg.size() > cap || lg.size() > 20) throw CapacityError("a_exhaustive: component exceeds cap", lg.size());
  std::vector<detail::Mask> adj(lg.size(), 0);
  for (std::size_t v = 0; v < lg.size(); ++v)
    for (auto w : lg.adj[v]) adj[v] |= detail::Mask{1} << w;
  auto cost = [&](std::size_t u, std::size_t v) -> long {
    return u == v ? 2 * lg.is_a[u] : static_cast<long>(lg.is_a[u]) + lg.is_a[v];
  };
  auto [value, local_paths] = detail::min_cost_path_partition(lg.size(), adj, cost);
  CoverResult r;
  r.method = CoverMethod::Exhaustive;
  r.a_value = static_cast<std::size_t>(value);
  for (const auto& lp : local_paths) {
    Path p;
    for (auto i : lp) p.push_back(lg.global[i]);
    r.witness.push_back(std::move(p));
  }
  return r;
}

inline CoverResult a_exhaustive(const ABComponent& comp, std::size_t cap = kDefaultExhaustiveCap) {
  return a_exhaustive(to_labeled(comp), cap);
}

/// Checks that `paths` is a disjoint path cover of the component using only
/// its edges, and that its A-endpoint count equals `expected_a`.
inline bool verify_cover(const ABComponent& comp, const std::vector<Path>& paths, std::size_t expected_a) {
  std::vector<char> covered(comp.vertices.size(), 0);
  auto local = [&](Vertex v) -> std::ptrdiff_t {
    auto it = std::lower_bound(comp.vertices.begin(), comp.vertices.end(), v);
    return (it == comp.vertices.end() || *it != v) ? -1 : it - comp.vertices.begin();
  };
  for (const auto& p : paths) {
    if (p.empty()) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto li = local(p[i]);
      if (li < 0 || covered[li]) return false;
      covered[li] = 1;
      if (i > 0 && !std::binary_search(comp.edges.begin(), comp.edges.end(), Edge(p[i - 1], p[i]))) return false;
    }
  }
  if (std::count(covered.begin(), covered.end(), 0) != 0) return false;
  auto is_a = [&](Vertex v) { return std::binary_search(comp.a_vertices.begin(), comp.a_vertices.end(), v); };
  return count_a_endpoints(paths, is_a) == expected_a;
}

struct MuPrimeOptions {
  bool verify = false;        // cross-check formula against the DP where both apply
  bool need_witness = false;  // forbid the formula route (it produces no cover)
  std::size_t exhaustive_cap = kDefaultExhaustiveCap;
};

struct MuPrime {
  std::size_t a_total = 0;
  std::size_t mu_prime = 0;
  std::vector<CoverResult> per_component;  // parallel to the component list
};

/// a(T) of one component: per piece of the B-B-free component, tree DP for
/// forests, exhaustive search for small cyclic pieces.
inline CoverResult cover_component(const ABComponent& comp, const MuPrimeOptions& opt = {}) {
  const bool formula_ok = comp.is_tree && comp.a_vertices.size() <= 3;
  if (formula_ok && !opt.verify && !opt.need_witness) return a_formula_small(comp);

  CoverResult total;
  total.method = CoverMethod::TreeDp;
  for (const auto& piece : split_pieces(to_labeled(comp))) {
    CoverResult r;
    if (is_forest(piece)) {
      r = a_tree_dp(piece);
    } else {
      if (piece.size() > opt.exhaustive_cap) {
        throw CapacityError("non-tree component exceeds exhaustive cap", piece.size());
      }
      r = a_exhaustive(piece, opt.exhaustive_cap);
      total.method = CoverMethod::Exhaustive;
    }
    total.a_value += r.a_value;
    for (auto& p : r.witness) total.witness.push_back(std::move(p));
  }
  std::sort(total.witness.begin(), total.witness.end());
  if (opt.verify && formula_ok && a_formula_small(comp).a_value != total.a_value) {
    throw ContractError("a_formula_small disagrees with exact cover");
  }
  return total;
}

inline MuPrime mu_prime_of(std::span<const ABComponent> comps, const MuPrimeOptions& opt = {}) {
  MuPrime out;
  out.per_component.reserve(comps.size());
  for (const auto& c : comps) {
    out.per_component.push_back(cover_component(c, opt));
    out.a_total += out.per_component.back().a_value;
  }
  out.mu_prime = (out.a_total + 1) / 2;
  return out;
}

/// mu'(G) = ceil(a(G) / 2), a(G) summed over the components of G^AB.
inline MuPrime mu_prime(const Graph& g, const MuPrimeOptions& opt = {}) {
  const auto part = strong_core(g);
  const auto comps = ab_components(g, part);
  return mu_prime_of(comps, opt);
}

}  // namespace hcomp
