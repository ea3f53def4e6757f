#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcomp/errors.hpp"
#include "hcomp/graph.hpp"
#include "hcomp/hamilton.hpp"
#include "hcomp/path_cover.hpp"
#include "hcomp/strong_core.hpp"

namespace hcomp {

enum class CompletionStatus { Success, EngineFailure, StructuralFailure };

inline const char* to_string(CompletionStatus s) {
  switch (s) {
    case CompletionStatus::Success: return "success";
    case CompletionStatus::EngineFailure: return "engine-failure";
    case CompletionStatus::StructuralFailure: return "structural-failure";
  }
  return "?";
}

struct EngineCall {
  std::size_t ell = 0;
  std::size_t engine_vertices = 0;
  std::size_t forced_edges = 0;
  std::uint64_t steps = 0;
  std::uint64_t restarts = 0;
  bool ok = false;
};

struct CompletionCertificate {
  std::vector<Edge> F0, F1, F2;
  std::vector<Edge> M;
  std::vector<Vertex> hamilton_witness;
  std::map<std::size_t, std::vector<Vertex>> long_cycle_witnesses;   // length n - (s - l)
  std::map<std::size_t, std::vector<Vertex>> short_cycle_witnesses;  // lengths in [3, kmax] absent from G
  CompletionStatus status = CompletionStatus::StructuralFailure;
  std::string reason;
  std::size_t n = 0;
  std::size_t mu_prime = 0;
  std::size_t s = 0;  // bypassable star components
  std::size_t kmax = 3;
  std::vector<std::size_t> K;
  std::vector<EngineCall> engine_calls;

  std::vector<Edge> F() const {
    std::vector<Edge> all;
    all.insert(all.end(), F0.begin(), F0.end());
    all.insert(all.end(), F1.begin(), F1.end());
    all.insert(all.end(), F2.begin(), F2.end());
    std::sort(all.begin(), all.end());
    return all;
  }
  bool success() const { return status == CompletionStatus::Success; }
};

struct CompletionOptions {
  EngineMode mode = EngineMode::Heuristic;
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 0;
  std::size_t exhaustive_cap = kDefaultExhaustiveCap;
  bool long_cycles = true;  // run the engine for every l, not only l = s
};

namespace detail {

struct StarBypass {
  Vertex u = 0;
  Vertex w1 = 0, w2 = 0;
};

// A path of Q* oriented from `front` to `back`.
struct OrientedPath {
  Path p;
  Vertex front() const { return p.front(); }
  Vertex back() const { return p.back(); }
};

inline void append_reversed_if(std::vector<Vertex>& out, const Path& p, bool reversed) {
  if (reversed) {
    out.insert(out.end(), p.rbegin(), p.rend());
  } else {
    out.insert(out.end(), p.begin(), p.end());
  }
}

}  // namespace detail

/// Completion set F = F0 ∪ F1 ∪ F2 of size mu'(G) together with witness
/// cycles for the Hamilton cycle, the long lengths n - (s - l) and the short
/// lengths in [3, kmax] that G lacks.
inline CompletionCertificate build_completion(const Graph& g, const CorePartition& part,
                                              std::span<const ABComponent> comps, const CompletionOptions& opt = {}) {
  CompletionCertificate cert;
  const std::size_t n = g.n();
  cert.n = n;
  cert.kmax = short_cycle_kmax(n);
  auto fail = [&](CompletionStatus st, std::string why) {
    cert.status = st;
    cert.reason = std::move(why);
    return cert;
  };

  // Lengths that G realises already, and the caterpillars that supply the rest.
  std::map<std::size_t, std::size_t> cat_of_k;  // k -> component index
  std::vector<std::optional<Caterpillar>> cats(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    cats[i] = match_caterpillar(g, part, comps[i]);
    if (cats[i] && cats[i]->k <= cert.kmax) cat_of_k.try_emplace(cats[i]->k, i);
  }
  for (const auto& [k, idx] : cat_of_k) cert.K.push_back(k);

  MuPrimeOptions mopt;
  mopt.need_witness = true;
  mopt.exhaustive_cap = opt.exhaustive_cap;

  // Q*: optimal covers, with canonical covers on K-caterpillars and stars.
  std::vector<Path> qstar;
  std::vector<detail::StarBypass> stars;
  std::size_t a_total = 0;
  std::vector<char> used_cat(comps.size(), 0);
  for (const auto& [k, idx] : cat_of_k) used_cat[idx] = 1;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& comp = comps[i];
    if (used_cat[i]) {
      const auto& c = *cats[i];
      Path p{c.a[1], c.b};
      for (std::size_t j = 2; j < c.k; ++j) p.push_back(c.a[j]);
      p.push_back(c.a[0]);
      qstar.push_back(std::move(p));
      cert.F0.emplace_back(c.a[c.k - 1], c.a[0]);
      a_total += 4;
      continue;
    }
    if (classify_S(comp)) {
      const Vertex u = comp.a_vertices.front();
      std::vector<Vertex> bn;
      for (Vertex w : g.neighbors(u))
        if (part.in_b(w)) bn.push_back(w);
      if (bn.size() >= 2) {
        // w1-u-w2 stays out of Q*: it enters H only as a bypass edge.
        stars.push_back({u, bn[0], bn[1]});
        for (Vertex b : comp.b_vertices)
          if (b != bn[0] && b != bn[1]) qstar.push_back({b});
        continue;
      }
    }
    auto r = cover_component(comp, mopt);
    a_total += r.a_value;
    for (auto& p : r.witness) qstar.push_back(std::move(p));
  }
  cert.s = stars.size();
  cert.mu_prime = (a_total + 1) / 2;

  // Short lengths: either a k-cycle of G or the caterpillar cycle a1 b a3 ... ak a1.
  for (std::size_t k = 3; k <= cert.kmax; ++k) {
    if (find_cycle_of_length(g, k)) continue;
    auto it = cat_of_k.find(k);
    if (it == cat_of_k.end()) {
      return fail(CompletionStatus::StructuralFailure,
                  "no " + std::to_string(k) + "-cycle and no caterpillar component for length " + std::to_string(k));
    }
    const auto& c = *cats[it->second];
    std::vector<Vertex> cyc{c.a[0], c.b};
    for (std::size_t j = 2; j < c.k; ++j) cyc.push_back(c.a[j]);
    cert.short_cycle_witnesses[k] = std::move(cyc);
  }

  // Classify the paths of Q*.
  std::vector<detail::OrientedPath> q1;  // oriented y (in B) -> x (in A)
  std::vector<detail::OrientedPath> aa;  // oriented so front <= back
  std::vector<detail::OrientedPath> bb;  // positive length, both ends in B
  std::vector<Vertex> b_single;
  for (auto& p : qstar) {
    const bool fa = part.in_a(p.front()), ba = part.in_a(p.back());
    if (fa && ba) {
      if (p.front() > p.back()) std::reverse(p.begin(), p.end());
      aa.push_back({std::move(p)});
    } else if (fa != ba) {
      if (fa) std::reverse(p.begin(), p.end());
      q1.push_back({std::move(p)});
    } else if (p.size() == 1) {
      b_single.push_back(p.front());
    } else {
      bb.push_back({std::move(p)});
    }
  }
  auto by_back = [](const detail::OrientedPath& a, const detail::OrientedPath& b) { return a.back() < b.back(); };
  auto by_front = [](const detail::OrientedPath& a, const detail::OrientedPath& b) { return a.front() < b.front(); };
  std::sort(q1.begin(), q1.end(), by_back);
  std::sort(aa.begin(), aa.end(), by_front);
  std::sort(bb.begin(), bb.end(), by_front);
  std::sort(b_single.begin(), b_single.end());

  if (q1.size() % 2 == 1) {
    // Pad with a length-0 B path, whose single vertex plays both x and y.
    if (b_single.empty()) {
      return fail(CompletionStatus::StructuralFailure, "odd number of A-B paths and no length-0 B path to pad with");
    }
    q1.push_back({{b_single.front()}});
    b_single.erase(b_single.begin());
  }
  if (q1.empty() && !aa.empty()) {
    return fail(CompletionStatus::StructuralFailure, "A-A paths present but no A-B paths to attach them to");
  }

  // M, F1, F2 and the spliced paths P_i (from y_{2i-1} to y_{2i}).
  const std::size_t pairs = q1.size() / 2;
  std::vector<Path> P(pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto& qa = q1[2 * i];
    const auto& qb = q1[2 * i + 1];
    cert.M.emplace_back(qa.front(), qb.front());
    Path& pi = P[i];
    pi = qa.p;
    if (i == 0) {
      Vertex prev = qa.back();
      for (const auto& path : aa) {
        cert.F2.emplace_back(prev, path.front());
        pi.insert(pi.end(), path.p.begin(), path.p.end());
        prev = path.back();
      }
      cert.F2.emplace_back(prev, qb.back());
    } else {
      cert.F1.emplace_back(qa.back(), qb.back());
    }
    pi.insert(pi.end(), qb.p.rbegin(), qb.p.rend());
  }

  // Structural checks on F.
  {
    auto f = cert.F();
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) {
      return fail(CompletionStatus::StructuralFailure, "completion edges are not distinct");
    }
    for (const Edge& e : f) {
      if (g.has_edge(e.u, e.v)) return fail(CompletionStatus::StructuralFailure, "completion edge already present in G");
    }
    if (f.size() != cert.mu_prime) throw ContractError("|F| differs from mu'(G)");
  }

  // Engine graph G[C ∪ B'], B' = B minus internal vertices of Q* paths.
  std::vector<char> internal(n, 0);
  auto mark_internal = [&](const Path& p) {
    for (std::size_t j = 1; j + 1 < p.size(); ++j) internal[p[j]] = 1;
  };
  for (const auto& p : q1) mark_internal(p.p);
  for (const auto& p : aa) mark_internal(p.p);
  for (const auto& p : bb) mark_internal(p.p);
  for (const auto& st : stars) internal[st.u] = 1;
  std::vector<Vertex> hv;
  std::vector<std::uint32_t> local(n, 0xffffffffu);
  for (Vertex v = 0; v < n; ++v) {
    if (part.in_c(v) || (part.in_b(v) && !internal[v])) {
      local[v] = static_cast<std::uint32_t>(hv.size());
      hv.push_back(v);
    }
  }
  if (hv.size() < 3) return fail(CompletionStatus::StructuralFailure, "core and border too small to carry a cycle");

  std::vector<Edge> base_edges;
  for (Vertex x : hv)
    for (Vertex y : g.neighbors(x))
      if (x < y && local[y] != 0xffffffffu) base_edges.emplace_back(local[x], local[y]);

  // Expansion of a forced edge, stored in the direction front -> back.
  std::map<Edge, Path> expansion;
  std::vector<Edge> forced_base;
  auto add_forced = [&](Path path) {
    const Edge e(path.front(), path.back());
    if (path.front() > path.back()) std::reverse(path.begin(), path.end());
    forced_base.push_back(e);
    expansion.emplace(e, std::move(path));
  };
  for (std::size_t i = 0; i < pairs; ++i) add_forced(P[i]);
  for (const auto& p : bb) add_forced(p.p);

  const std::size_t s = stars.size();
  const std::size_t first_ell = opt.long_cycles ? 0 : s;
  for (std::size_t ell = first_ell; ell <= s; ++ell) {
    std::vector<Edge> forced_global = forced_base;
    std::map<Edge, Path> exp = expansion;
    for (std::size_t i = 0; i < ell; ++i) {
      const Edge e(stars[i].w1, stars[i].w2);
      forced_global.push_back(e);
      Path p{stars[i].w1, stars[i].u, stars[i].w2};
      if (p.front() > p.back()) std::reverse(p.begin(), p.end());
      exp.emplace(e, std::move(p));
    }
    std::vector<Edge> forced_local, h_edges = base_edges;
    for (const Edge& e : forced_global) {
      const Edge le(local[e.u], local[e.v]);
      forced_local.push_back(le);
      if (!g.has_edge(e.u, e.v)) h_edges.push_back(le);
    }
    const Graph h = Graph::from_edges(hv.size(), h_edges);
    const auto res = hamilton_with_forced(h, forced_local, opt.mode, opt.budget, opt.seed + ell);
    cert.engine_calls.push_back({ell, hv.size(), forced_local.size(), res.steps, res.restarts, res.cycle.has_value()});
    if (!res.cycle) {
      return fail(CompletionStatus::EngineFailure,
                  "Hamilton engine found no cycle through the forced matching for l = " + std::to_string(ell) +
                      (res.exhausted ? " (exhausted)" : " (budget spent)"));
    }
    const auto& lc = *res.cycle;
    std::vector<Vertex> cycle;
    cycle.reserve(n);
    for (std::size_t j = 0; j < lc.size(); ++j) {
      const Vertex a = hv[lc[j]], b = hv[lc[(j + 1) % lc.size()]];
      auto it = exp.find(Edge(a, b));
      if (it == exp.end()) {
        cycle.push_back(a);
        continue;
      }
      // Forced edge: emit its expansion minus the final vertex.
      const Path& p = it->second;
      const bool reversed = p.front() != a;
      std::vector<Vertex> seg;
      detail::append_reversed_if(seg, p, reversed);
      cycle.insert(cycle.end(), seg.begin(), seg.end() - 1);
    }
    const std::size_t expected = n - (s - ell);
    const auto f = cert.F();
    if (!verify_cycle(g, f, cycle, expected)) throw ContractError("completion witness failed verification");
    cert.long_cycle_witnesses[expected] = std::move(cycle);
  }
  cert.hamilton_witness = cert.long_cycle_witnesses.at(n);
  cert.status = CompletionStatus::Success;
  return cert;
}

inline CompletionCertificate build_completion(const Graph& g, const CompletionOptions& opt = {}) {
  const auto part = strong_core(g);
  const auto comps = ab_components(g, part);
  return build_completion(g, part, comps, opt);
}

/// Cycle of length `len` in G ∪ F made of one chord of the Hamilton cycle
/// `ham` and the arc it spans. Not every length has such a witness.
inline std::optional<std::vector<Vertex>> chord_cycle(const Graph& g, std::span<const Edge> f,
                                                      std::span<const Vertex> ham, std::size_t len) {
  const std::size_t n = ham.size();
  if (len < 3 || len > n) return std::nullopt;
  if (len == n) return std::vector<Vertex>(ham.begin(), ham.end());
  std::vector<std::size_t> pos(g.n(), 0);
  for (std::size_t i = 0; i < n; ++i) pos[ham[i]] = i;
  auto try_edge = [&](Vertex u, Vertex v) -> std::optional<std::vector<Vertex>> {
    std::size_t i = pos[u], j = pos[v];
    if (i > j) std::swap(i, j);
    std::size_t start = 0;
    if (j - i + 1 == len) {
      start = i;
    } else if (n - (j - i) + 1 == len) {
      start = j;
    } else {
      return std::nullopt;
    }
    std::vector<Vertex> c(len);
    for (std::size_t k = 0; k < len; ++k) c[k] = ham[(start + k) % n];
    return c;
  };
  for (const Edge& e : g.edges())
    if (auto c = try_edge(e.u, e.v)) return c;
  for (const Edge& e : f)
    if (auto c = try_edge(e.u, e.v)) return c;
  return std::nullopt;
}

/// Independent check of a successful certificate: |F| = mu'(G), F ∩ E(G) = ∅
/// and every witness is a cycle of the keyed length in G ∪ F.
inline bool verify_certificate(const Graph& g, const CompletionCertificate& cert) {
  if (!cert.success()) return false;
  const auto f = cert.F();
  if (f.size() != cert.mu_prime) return false;
  if (std::adjacent_find(f.begin(), f.end()) != f.end()) return false;
  for (const Edge& e : f)
    if (e.v >= g.n() || g.has_edge(e.u, e.v)) return false;
  if (!verify_cycle(g, f, cert.hamilton_witness, g.n())) return false;
  for (const auto& [len, c] : cert.long_cycle_witnesses)
    if (!verify_cycle(g, f, c, len)) return false;
  for (const auto& [len, c] : cert.short_cycle_witnesses)
    if (!verify_cycle(g, f, c, len)) return false;
  for (std::size_t ell = 0; ell <= cert.s; ++ell)
    if (!cert.long_cycle_witnesses.contains(g.n() - (cert.s - ell))) return false;
  return true;
}

}  // namespace hcomp
