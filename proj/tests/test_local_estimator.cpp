#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"

using namespace hcomp;

namespace {

// C_vk by definition: the largest S ⊆ N^{<k}(v) such that every vertex of S,
// and every vertex of N^{<k}(v) adjacent to S, has >= 4 neighbours in
// S ∪ N^k(v). Enumerates subsets of the inner ball.
std::vector<Vertex> brute_local_core(const Graph& g, Vertex v, std::size_t k) {
  const auto layers = bfs_layers(g, v, k);
  std::vector<Vertex> inner;
  for (std::size_t j = 0; j < k; ++j) inner.insert(inner.end(), layers[j].begin(), layers[j].end());
  std::vector<char> outer(g.n(), 0);
  for (Vertex x : layers[k]) outer[x] = 1;
  const std::size_t m = inner.size();
  std::uint32_t best = 0;
  for (std::uint32_t s = 1; s < (1u << m); ++s) {
    std::vector<char> in_s(g.n(), 0);
    for (std::size_t i = 0; i < m; ++i)
      if ((s >> i) & 1u) in_s[inner[i]] = 1;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      const Vertex x = inner[i];
      bool check = in_s[x];
      for (Vertex w : g.neighbors(x)) check = check || in_s[w];
      if (!check) continue;
      std::size_t c = 0;
      for (Vertex w : g.neighbors(x)) c += in_s[w] || outer[w];
      ok = c >= 4;
    }
    if (ok) best |= s;
  }
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < m; ++i)
    if ((best >> i) & 1u) out.push_back(inner[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(LocalCore, SpecExamples) {
  const Graph k5 = testutil::complete(5);
  const auto lc = local_core(k5, 0, 1);
  EXPECT_EQ(lc.C_vk, std::vector<Vertex>{0});
  EXPECT_TRUE(lc.A_vk.empty());
  EXPECT_EQ(brute_local_core(k5, 0, 1), std::vector<Vertex>{0});

  const Graph iso(3);
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto l = local_core(iso, 1, k);
    EXPECT_TRUE(l.C_vk.empty());
    EXPECT_EQ(l.A_vk, std::vector<Vertex>{1});
  }
  EXPECT_THROW(local_core(iso, 0, 0), ParameterError);
}

TEST(LocalCore, MatchesBruteForceOnSmallBalls) {
  Rng rng(44);
  std::size_t checked = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 8 + rng.below(30);
    const Graph g = gen_gnp(n, (3.0 + 5.0 * rng.uniform01()) / n, t);
    const Vertex v = static_cast<Vertex>(rng.below(n));
    const std::size_t k = 1 + rng.below(3);
    const auto layers = bfs_layers(g, v, k);
    std::size_t ball = 0;
    for (const auto& l : layers) ball += l.size();
    if (ball > 12) continue;
    ++checked;
    const auto lc = local_core(g, v, k);
    EXPECT_EQ(lc.C_vk, brute_local_core(g, v, k));
    EXPECT_EQ(lc.ball_size, ball);
    // B_vk: inner non-core vertices with a neighbour in C_vk.
    for (Vertex b : lc.B_vk) {
      bool adj = false;
      for (Vertex w : g.neighbors(b)) adj = adj || std::binary_search(lc.C_vk.begin(), lc.C_vk.end(), w);
      EXPECT_TRUE(adj);
    }
  }
  EXPECT_GT(checked, 50u);
}

TEST(PhiK, SpecExamples) {
  const Graph k5 = testutil::complete(5);
  EXPECT_EQ(phi_k(k5, 0, 1, 6.0), 0.0);
  EXPECT_EQ(phi_k(Graph(4), 2, 2, 1.0), 2.0);
  EXPECT_EQ(phi_k_prime(Graph(4), 2, 2), (Ratio{2, 1}));

  // A star with 60 leaves exceeds 2 d^k e^{kd} for d = 1, k = 1 (about 5.4).
  std::vector<Edge> es;
  for (Vertex x = 1; x <= 60; ++x) es.emplace_back(0, x);
  const Graph star = Graph::from_edges(61, es);
  EXPECT_LT(neighbourhood_threshold(1.0, 1), 61.0);
  EXPECT_EQ(phi_k(star, 0, 1, 1.0), 0.0);
  EXPECT_EQ(phi_k_prime(star, 0, 1), (Ratio{0, 1}));
  EXPECT_EQ(phi_k(star, 1, 1, 1.0), 2.0);
  EXPECT_THROW(phi_k(star, 0, 1, 0.0), ParameterError);
}

TEST(PhiK, RangeIsZeroToTwo) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Graph g = gen_gnp(300, 12.0 / 300, s);
    for (Vertex v = 0; v < g.n(); v += 7) {
      const double x = phi_k_prime(g, v, 3).value();
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 2.0);
    }
  }
}

TEST(MuK, SpecExamples) {
  EXPECT_EQ(mu_k_estimate(testutil::complete(5), 2, 6.0).mu_k, 0.0);
  EXPECT_DOUBLE_EQ(mu_k_estimate(Graph(37), 2, 1.0).mu_k, 37.0);
}

TEST(MuK, DeterministicAcrossThreadCounts) {
  const Graph g = gen_gnp(20000, 5.0 / 20000, 3);
  const auto a = mu_k_estimate(g, 2, 5.0, 1);
  const auto b = mu_k_estimate(g, 2, 5.0, 4);
  EXPECT_EQ(a.mu_k, b.mu_k);
  EXPECT_EQ(a.truncated_count, b.truncated_count);
  EXPECT_EQ(mu_k_estimate(g, 2, 5.0, 1).mu_k, a.mu_k);
}

TEST(PhiK, StabilisesWhenComponentIsSmall) {
  // phi'_k(v) = phi(v) whenever |T^AB(v)| <= k - 1.
  Rng rng(5);
  std::size_t checked = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::size_t n = 30 + rng.below(171);
    const Graph g = gen_gnp(n, (2.0 + 6.0 * rng.uniform01()) / n, s);
    const auto part = strong_core(g);
    for (const auto& c : ab_components(g, part)) {
      if (c.vertices.size() > 12) continue;
      const Ratio phi{cover_component(c, {}).a_value, c.vertices.size()};
      for (Vertex v : c.vertices) {
        for (std::size_t k = c.vertices.size() + 1; k <= c.vertices.size() + 2; ++k) {
          ++checked;
          EXPECT_EQ(phi_k_prime(g, v, k), phi) << "n=" << n << " v=" << v << " k=" << k;
        }
      }
    }
  }
  EXPECT_GT(checked, 1000u);
}

TEST(EvalF, Values) {
  EXPECT_NEAR(eval_f_approx(20), 2.2673e-8, 1e-12);
  EXPECT_NEAR(eval_f_approx(6), 0.0100090, 1e-7);
  EXPECT_THROW(eval_f_approx(0), ParameterError);
  for (int d = 1; d <= 40; ++d) {
    const double x = d;
    const double lhs = eval_f_approx(x) - std::exp(-x) - 0.5 * x * std::exp(-x);
    const double rhs = 0.5 * (expected_lb_closed_form(x) - 2 * std::exp(-x) - x * std::exp(-x));
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(std::abs(rhs), 1e-300));
  }
}
