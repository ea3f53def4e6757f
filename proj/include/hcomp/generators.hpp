#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hcomp/errors.hpp"
#include "hcomp/graph.hpp"
#include "hcomp/rng.hpp"

namespace hcomp {

constexpr std::uint64_t pair_count(std::uint64_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

// Lexicographic rank <-> pair (u < v). Row u holds the n-1-u pairs (u, u+1..n-1).
constexpr std::uint64_t pair_index(std::uint64_t n, Edge e) noexcept {
  const std::uint64_t u = e.u;
  return u * (2 * n - u - 1) / 2 + (e.v - u - 1);
}

inline Edge pair_from_index(std::uint64_t n, std::uint64_t idx) {
  // Pairs with first coordinate >= u number (n-u)(n-u-1)/2; invert that.
  const std::uint64_t total = pair_count(n);
  const std::uint64_t rest = total - 1 - idx;  // rank counted from the end
  auto r = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(rest) + 1.0L) - 1.0L) / 2.0L);
  while (r * (r + 1) / 2 > rest) --r;
  while ((r + 1) * (r + 2) / 2 <= rest) ++r;
  const std::uint64_t u = n - 2 - r;
  const std::uint64_t row_start = u * (2 * n - u - 1) / 2;
  const std::uint64_t v = u + 1 + (idx - row_start);
  return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

/// G(n,p) by geometric skipping over the pair sequence: expected O(n + m).
inline Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw ParameterError("gen_gnp: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("gen_gnp: probability must lie in [0,1]");
  std::vector<Edge> edges;
  if (p == 0.0 || n < 2) return Graph::from_edges(n, edges);
  Rng rng(seed);
  edges.reserve(static_cast<std::size_t>(p * static_cast<double>(pair_count(n)) * 1.1) + 16);
  if (p == 1.0) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
  }
  const double log_q = std::log1p(-p);
  // Batagelj-Brandes: walk (v, w) with w < v, jumping by geometric gaps.
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = rng.uniform01();
    const double skip = std::floor(std::log1p(-r) / log_q);
    if (skip > 4.0 * static_cast<double>(pair_count(n))) break;
    w += 1 + static_cast<std::int64_t>(skip);
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
  }
  return Graph::from_edges(n, edges);
}

/// Uniform m-edge graph via Floyd's subset sampling over pair ranks.
inline Graph gen_gnm(std::size_t n, std::uint64_t m, std::uint64_t seed) {
  if (n < 1) throw ParameterError("gen_gnm: n must be >= 1");
  const std::uint64_t total = pair_count(n);
  if (m > total) throw ParameterError("gen_gnm: m exceeds n choose 2");
  Rng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(m) * 2);
  for (std::uint64_t j = total - m; j < total; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> ranks(chosen.begin(), chosen.end());
  std::sort(ranks.begin(), ranks.end());
  std::vector<Edge> edges;
  edges.reserve(ranks.size());
  for (std::uint64_t r : ranks) edges.push_back(pair_from_index(n, r));
  return Graph::from_edges(n, edges);
}

/// The random graph process on n vertices: a uniformly random ordering of
/// all pairs, produced lazily by a Fisher-Yates shuffle whose displaced
/// entries live in a sparse map. Memory is O(t) after t draws.
class EdgeStream {
public:
  EdgeStream(std::size_t n, std::uint64_t seed) : n_(n), seed_(seed), total_(pair_count(n)), rng_(seed) {
    if (n < 2) throw ParameterError("process_stream: n must be >= 2");
  }

  std::size_t n() const noexcept { return n_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t position() const noexcept { return drawn_.size(); }
  bool exhausted() const noexcept { return position() >= total_; }

  // The next edge of the process (edge number position()+1).
  Edge next() {
    if (exhausted()) throw ContractError("EdgeStream exhausted");
    const std::uint64_t t = position();
    const std::uint64_t j = t + rng_.below(total_ - t);
    const std::uint64_t at_j = slot(j);
    if (j != t) swapped_[j] = slot(t);
    swapped_.erase(t);
    const Edge e = pair_from_index(n_, at_j);
    drawn_.push_back(e);
    return e;
  }

  // Edge number i (1-based) of the process, drawing as needed.
  Edge edge(std::uint64_t i) {
    if (i == 0 || i > total_) throw ParameterError("EdgeStream::edge: index out of range");
    while (position() < i) next();
    return drawn_[i - 1];
  }

  // G_t: the graph formed by the first t edges.
  Graph prefix_graph(std::uint64_t t) {
    if (t > total_) throw ParameterError("prefix_graph: t exceeds n choose 2");
    while (position() < t) next();
    return Graph::from_edges(n_, std::span<const Edge>(drawn_.data(), t));
  }

private:
  std::uint64_t slot(std::uint64_t i) const {
    auto it = swapped_.find(i);
    return it == swapped_.end() ? i : it->second;
  }

  std::size_t n_;
  std::uint64_t seed_;
  std::uint64_t total_;
  Rng rng_;
  std::unordered_map<std::uint64_t, std::uint64_t> swapped_;
  std::vector<Edge> drawn_;
};

inline EdgeStream process_stream(std::size_t n, std::uint64_t seed) { return EdgeStream(n, seed); }

}  // namespace hcomp
