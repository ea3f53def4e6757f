#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "hcomp/errors.hpp"
#include "hcomp/graph.hpp"
#include "hcomp/path_cover.hpp"
#include "hcomp/strong_core.hpp"

namespace hcomp {

// Exact non-negative rational, compared by cross-multiplication.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
};

/// Radius-k stand-in for the global partition around v: C_vk is the
/// maximal S ⊆ N^{<k}(v) such that every vertex of S and of its neighbourhood
/// inside N^{<k}(v) has >= 4 neighbours in S ∪ N^k(v).
struct LocalCore {
  Vertex v = 0;
  std::size_t k = 0;
  std::vector<Vertex> C_vk, B_vk, A_vk;  // sorted, partition N^{<k}(v)
  std::size_t ball_size = 0;             // |N^{<=k}(v)|
};

namespace detail {

struct BallGraph {
  std::vector<std::vector<Vertex>> adj;
  std::size_t n() const { return adj.size(); }
  std::size_t degree(Vertex v) const { return adj[v].size(); }
  std::span<const Vertex> neighbors(Vertex v) const { return adj[v]; }
};

/// Reusable per-thread scratch so that local computations cost O(ball)
/// rather than O(n).
class LocalWorkspace {
public:
  explicit LocalWorkspace(std::size_t n) : index_(n, kNone) {}

  struct Result {
    LocalCore core;
    ABComponent component;  // T^{AB}(v, k), empty when v ∈ C_vk
  };

  Result compute(const Graph& g, Vertex v, std::size_t k) {
    Result out;
    out.core.v = v;
    out.core.k = k;
    // Ball N^{<=k}(v) in BFS order with distances.
    ball_.assign(1, v);
    dist_.assign(1, 0);
    index_[v] = 0;
    for (std::size_t i = 0; i < ball_.size(); ++i) {
      if (dist_[i] == k) continue;
      for (Vertex w : g.neighbors(ball_[i])) {
        if (index_[w] != kNone) continue;
        index_[w] = static_cast<std::uint32_t>(ball_.size());
        ball_.push_back(w);
        dist_.push_back(dist_[i] + 1);
      }
    }
    const std::size_t b = ball_.size();
    out.core.ball_size = b;

    local_.adj.assign(b, {});
    frozen_.assign(b, 0);
    order_.resize(b);
    for (std::size_t i = 0; i < b; ++i) {
      order_[i] = static_cast<Vertex>(i);
      frozen_[i] = dist_[i] == k;
      for (Vertex w : g.neighbors(ball_[i])) {
        const auto j = index_[w];
        if (j != kNone) local_.adj[i].push_back(j);
      }
    }
    const auto colour = run_colouring(local_, 4, order_, nullptr, &frozen_);

    // C_vk: black vertices strictly inside; B_vk: inner non-core vertices adjacent to C_vk.
    cls_.assign(b, CoreClass::A);
    for (std::size_t i = 0; i < b; ++i) {
      if (dist_[i] < k && colour[i] == Colour::Black) cls_[i] = CoreClass::C;
    }
    for (std::size_t i = 0; i < b; ++i) {
      if (dist_[i] >= k || cls_[i] == CoreClass::C) continue;
      for (Vertex j : local_.adj[i])
        if (cls_[j] == CoreClass::C) {
          cls_[i] = CoreClass::B;
          break;
        }
    }
    for (std::size_t i = 0; i < b; ++i) {
      if (dist_[i] >= k) continue;
      auto& dst = cls_[i] == CoreClass::C ? out.core.C_vk : cls_[i] == CoreClass::B ? out.core.B_vk : out.core.A_vk;
      dst.push_back(ball_[i]);
    }
    std::sort(out.core.C_vk.begin(), out.core.C_vk.end());
    std::sort(out.core.B_vk.begin(), out.core.B_vk.end());
    std::sort(out.core.A_vk.begin(), out.core.A_vk.end());

    if (cls_[0] != CoreClass::C) {
      // Component of v in G[A_vk ∪ B_vk] (inside N^{<k}(v)).
      auto& comp = out.component;
      seen_.assign(b, 0);
      std::vector<Vertex> stack{0};
      seen_[0] = 1;
      while (!stack.empty()) {
        const Vertex i = stack.back();
        stack.pop_back();
        comp.vertices.push_back(ball_[i]);
        for (Vertex j : local_.adj[i]) {
          if (dist_[j] >= k || cls_[j] == CoreClass::C) continue;
          if (ball_[i] < ball_[j]) comp.edges.emplace_back(ball_[i], ball_[j]);
          if (!seen_[j]) {
            seen_[j] = 1;
            stack.push_back(j);
          }
        }
      }
      std::sort(comp.vertices.begin(), comp.vertices.end());
      std::sort(comp.edges.begin(), comp.edges.end());
      for (Vertex x : comp.vertices) {
        (cls_[index_[x]] == CoreClass::A ? comp.a_vertices : comp.b_vertices).push_back(x);
      }
      comp.is_tree = comp.edges.size() + 1 == comp.vertices.size();
    }
    for (Vertex x : ball_) index_[x] = kNone;
    return out;
  }

private:
  static constexpr std::uint32_t kNone = 0xffffffffu;
  std::vector<std::uint32_t> index_;
  std::vector<Vertex> ball_;
  std::vector<std::size_t> dist_;
  BallGraph local_;
  std::vector<char> frozen_;
  std::vector<Vertex> order_;
  std::vector<CoreClass> cls_;
  std::vector<char> seen_;
};

inline Ratio phi_of_component(const ABComponent& comp, const MuPrimeOptions& opt) {
  return {cover_component(comp, opt).a_value, comp.vertices.size()};
}

}  // namespace detail

inline LocalCore local_core(const Graph& g, Vertex v, std::size_t k) {
  if (k < 1) throw ParameterError("local_core: k must be >= 1");
  if (v >= g.n()) throw ParameterError("local_core: vertex out of range");
  detail::LocalWorkspace ws(g.n());
  return ws.compute(g, v, k).core;
}

// T^{AB}(v,k): the component of v in G[A_vk ∪ B_vk]; empty if v ∈ C_vk.
inline ABComponent local_component(const Graph& g, Vertex v, std::size_t k) {
  if (k < 1) throw ParameterError("local_component: k must be >= 1");
  detail::LocalWorkspace ws(g.n());
  return ws.compute(g, v, k).component;
}

/// phi'_k(v) as an exact ratio: 0 on C_vk, otherwise a(T)/|T| for
/// T = T^{AB}(v,k).
inline Ratio phi_k_prime(const Graph& g, Vertex v, std::size_t k, const MuPrimeOptions& opt = {}) {
  const auto comp = local_component(g, v, k);
  if (comp.vertices.empty()) return {0, 1};
  return detail::phi_of_component(comp, opt);
}

// Neighbourhood-size cutoff 2 d^k e^{kd}.
inline double neighbourhood_threshold(double d, std::size_t k) {
  const auto kd = static_cast<double>(k);
  return 2.0 * std::pow(d, kd) * std::exp(kd * d);
}

inline double phi_k(const Graph& g, Vertex v, std::size_t k, double d, const MuPrimeOptions& opt = {}) {
  if (!(d > 0)) throw ParameterError("phi_k: d must be > 0");
  detail::LocalWorkspace ws(g.n());
  auto r = ws.compute(g, v, k);
  if (static_cast<double>(r.core.ball_size) > neighbourhood_threshold(d, k)) return 0.0;
  if (r.component.vertices.empty()) return 0.0;
  return detail::phi_of_component(r.component, opt).value();
}

/// Global phi(v): a(T)/|T| for the G^AB component T of v, 0 on C(G).
inline std::vector<Ratio> global_phi(const Graph& g, const MuPrimeOptions& opt = {}) {
  const auto part = strong_core(g);
  const auto comps = ab_components(g, part);
  std::vector<Ratio> phi(g.n(), Ratio{0, 1});
  for (const auto& c : comps) {
    const Ratio r = detail::phi_of_component(c, opt);
    for (Vertex v : c.vertices) phi[v] = r;
  }
  return phi;
}

struct EstimatorReport {
  std::size_t k = 0;
  double d = 0;
  double mu_k = 0;
  std::size_t truncated_count = 0;
};

/// mu_k(G) = 1/2 sum_v phi_k(v). Vertices are processed in fixed chunks and
/// partial sums combined in chunk order, so the result does not depend on
/// the thread count.
inline EstimatorReport mu_k_estimate(const Graph& g, std::size_t k, double d, unsigned threads = 1,
                                     const MuPrimeOptions& opt = {}) {
  if (k < 1) throw ParameterError("mu_k_estimate: k must be >= 1");
  if (!(d > 0)) throw ParameterError("mu_k_estimate: d must be > 0");
  const double threshold = neighbourhood_threshold(d, k);
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (g.n() + kChunk - 1) / kChunk;
  std::vector<long double> partial(chunks, 0.0L);
  std::vector<std::size_t> truncated(chunks, 0);

  auto work = [&](std::size_t first_chunk, std::size_t stride) {
    detail::LocalWorkspace ws(g.n());
    for (std::size_t c = first_chunk; c < chunks; c += stride) {
      const std::size_t lo = c * kChunk, hi = std::min(g.n(), lo + kChunk);
      for (std::size_t v = lo; v < hi; ++v) {
        auto r = ws.compute(g, static_cast<Vertex>(v), k);
        if (static_cast<double>(r.core.ball_size) > threshold) {
          ++truncated[c];
          continue;
        }
        if (r.component.vertices.empty()) continue;
        partial[c] += detail::phi_of_component(r.component, opt).value();
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1 || chunks < 2) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }

  EstimatorReport rep;
  rep.k = k;
  rep.d = d;
  long double total = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    total += partial[c];
    rep.truncated_count += truncated[c];
  }
  rep.mu_k = static_cast<double>(total / 2);
  return rep;
}

/// Explicit terms of the expansion
/// f(d) ≈ d e^{-d}/2 + e^{-d} + (d^6/12 + d^5/4 + d^4/4 + d^3/12) e^{-3d}.
inline double eval_f_approx(double d) {
  if (!(d > 0)) throw ParameterError("eval_f_approx: d must be > 0");
  const double e1 = std::exp(-d);
  const double e3 = std::exp(-3 * d);
  const double d3 = d * d * d;
  return 0.5 * d * e1 + e1 + (d3 * d3 / 12 + d3 * d * d / 4 + d3 * d / 4 + d3 / 12) * e3;
}

}  // namespace hcomp
