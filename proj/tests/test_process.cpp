#include <gtest/gtest.h>

#include <sstream>

#include "test_util.hpp"

using namespace hcomp;

TEST(Process, FirstStarAtThirdEdge) {
  const std::vector<Edge> order{{0, 1}, {0, 2}, {0, 3}, {4, 5}, {5, 6}};
  ProcessConfig cfg;
  cfg.n = 8;
  cfg.mu_mode = MuMode::Off;
  const auto tr = run_process_on(cfg, order);
  ASSERT_TRUE(tr.t_star.contains(1));
  EXPECT_EQ(tr.t_star.at(1), 3u);
  EXPECT_EQ(tr.t_end, 5u);
}

TEST(Process, CompleteGraphAtTheEnd) {
  ProcessConfig cfg;
  cfg.n = 9;
  cfg.seed = 4;
  cfg.checkpoints = {pair_count(9)};
  cfg.stop = StopRule::Horizon;
  const auto tr = run_process(cfg);
  ASSERT_EQ(tr.records.size(), 1u);
  const auto& r = tr.records[0];
  EXPECT_EQ(r.t, 36u);
  EXPECT_EQ(r.n0, 0);
  EXPECT_EQ(r.n1, 0);
  EXPECT_EQ(r.s3, 0);
  EXPECT_EQ(r.lb, 0);
  EXPECT_EQ(r.mu_prime, 0);
  EXPECT_EQ(r.equal, true);
}

TEST(Process, EventTimeInvariants) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    ProcessConfig cfg;
    cfg.n = 2000;
    cfg.seed = s;
    cfg.mu_mode = MuMode::Off;
    cfg.spider_cap = 8;
    cfg.verify_counts = true;
    for (std::uint64_t t = 1000; t <= 30000; t += 1000) cfg.checkpoints.push_back(t);
    const auto tr = run_process(cfg);
    EXPECT_EQ(tr.count_mismatches, 0u);
    for (std::size_t i = 1; i < tr.records.size(); ++i) EXPECT_LT(tr.records[i - 1].t, tr.records[i].t);
    ASSERT_EQ(tr.t_star.size(), 8u);
    ASSERT_EQ(tr.t_spider.size(), 8u);
    std::uint64_t prev = 0;
    for (const auto& [i, t] : tr.t_star) {
      EXPECT_GE(t, prev);
      prev = t;
    }
    prev = UINT64_MAX;
    for (const auto& [i, t] : tr.t_spider) {
      EXPECT_LE(t, prev);
      EXPECT_GT(t, 10u * cfg.n);
      prev = t;
    }
    ASSERT_TRUE(tr.hitting_n1_le_2.has_value());
    EXPECT_GT(*tr.hitting_n1_le_2, 10u * cfg.n);
    EXPECT_EQ(tr.t_end, std::max<std::uint64_t>(30000, tr.t_spider.at(1)));
  }
}

TEST(Process, SpiderTimesMatchRecountOnSmallProcess) {
  // t_i from recounting the prefix graph at every step.
  const std::size_t n = 60;
  ProcessConfig cfg;
  cfg.n = n;
  cfg.seed = 13;
  cfg.mu_mode = MuMode::Off;
  cfg.spider_cap = 4;
  const auto tr = run_process(cfg);
  EdgeStream stream(n, 13);
  DynamicGraph g(n);
  std::map<std::size_t, std::uint64_t> star, spider;
  std::optional<std::uint64_t> last_drop;
  std::int64_t prev = 0;
  for (std::uint64_t t = 1; t <= tr.t_end; ++t) {
    g.add_edge(stream.next());
    const auto c = count_motifs(g);
    if (prev >= 1 && c.s3 == 0) last_drop = t;
    prev = c.s3;
    for (std::size_t i = 1; i <= 4; ++i) {
      if (!star.contains(i) && c.stars3 >= static_cast<std::int64_t>(i)) star[i] = t;
      if (t > 10 * n && !spider.contains(i) && c.s3 < static_cast<std::int64_t>(i)) spider[i] = t;
    }
  }
  EXPECT_EQ(tr.t_star, star);
  EXPECT_EQ(tr.t_spider, spider);
  EXPECT_EQ(tr.t1_last_drop, last_drop);
}

TEST(Process, LowerBoundBelowMuPrime) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    ProcessConfig cfg;
    cfg.n = 300;
    cfg.seed = s;
    cfg.stop = StopRule::Horizon;
    cfg.horizon = 4000;
    for (std::uint64_t t = 0; t <= 4000; t += 250) cfg.checkpoints.push_back(t);
    const auto tr = run_process(cfg);
    EdgeStream stream(cfg.n, s);
    for (const auto& r : tr.records) {
      if (!r.mu_prime) continue;
      const Graph g = stream.prefix_graph(r.t);
      const auto p = strong_core(g);
      bool low_in_a = true;
      for (Vertex v = 0; v < g.n(); ++v) low_in_a = low_in_a && (g.degree(v) > 2 || p.in_a(v));
      if (low_in_a) {
        EXPECT_LE(r.lb, *r.mu_prime) << "t=" << r.t;
      }
    }
  }
}

TEST(Process, EmptyCheckpointsGiveEventsOnly) {
  ProcessConfig cfg;
  cfg.n = 500;
  cfg.seed = 1;
  const auto tr = run_process(cfg);
  EXPECT_TRUE(tr.records.empty());
  EXPECT_FALSE(tr.t_spider.empty());
  EXPECT_THROW(run_process(ProcessConfig{}), ParameterError);
  ProcessConfig bad;
  bad.n = 5;
  bad.checkpoints = {3, 2};
  EXPECT_THROW(run_process(bad), ParameterError);
}

TEST(Process, Regimes) {
  const std::size_t n = 1000000;
  EXPECT_EQ(regime_of(999, n, 10, 1), Regime::Early);
  EXPECT_EQ(regime_of(50000, n, 10, 1), Regime::Star);
  EXPECT_EQ(regime_of(200000, n, 10, 1), Regime::Middle);
  EXPECT_EQ(regime_of(5000000, n, 10, 1), Regime::Late);
  EXPECT_NEAR(spider_reference_time(10000), 3.754e4, 20);
  EXPECT_LT(t_minus(n, 1), t_plus(n, 1));
}

TEST(Process, DenseCheckpointIsHamiltonianDense) {
  const std::size_t n = 2000;
  ProcessConfig cfg;
  cfg.n = n;
  cfg.seed = 2;
  const auto t = static_cast<std::uint64_t>(n * std::log(static_cast<double>(n)));
  cfg.checkpoints = {t};
  cfg.stop = StopRule::Horizon;
  cfg.horizon = t;
  const auto tr = run_process(cfg);
  ASSERT_EQ(tr.records.size(), 1u);
  // n log n edges: all degrees are large with overwhelming probability.
  EXPECT_EQ(tr.records[0].lb, 0);
  EXPECT_EQ(tr.records[0].mu_prime, 0);
  const auto sum = detect_equalities(tr);
  EXPECT_EQ(sum.regimes.at(Regime::Late).eq_lb, 1u);
}

TEST(Process, TraceCsv) {
  ProcessConfig cfg;
  cfg.n = 50;
  cfg.seed = 3;
  cfg.checkpoints = {0, 10, 20};
  cfg.stop = StopRule::Horizon;
  cfg.horizon = 20;
  const auto tr = run_process(cfg);
  std::ostringstream os;
  write_trace_csv(os, tr);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,n0,n1,stars3,s3,mu_prime,lb,equal");
  std::getline(in, line);
  EXPECT_EQ(line, "0,50,0,0,0,50,50,1");
  std::size_t rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3u);
}
