#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "hcomp/errors.hpp"
#include "hcomp/generators.hpp"
#include "hcomp/graph.hpp"
#include "hcomp/motifs.hpp"
#include "hcomp/path_cover.hpp"

namespace hcomp {

enum class MuMode { Off, AtCheckpoints };

enum class StopRule {
  Horizon,     // run to the horizon (or the last checkpoint)
  StarEvents,  // stop once every tracked t_i* is known
  AllEvents,   // stop once t_1 is known (all t_i are then known)
};

struct ProcessConfig {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> checkpoints;  // sorted, within [0, C(n,2)]
  MuMode mu_mode = MuMode::AtCheckpoints;
  std::size_t spider_cap = 64;
  StopRule stop = StopRule::AllEvents;
  std::uint64_t horizon = 0;   // 0: C(n,2)
  bool verify_counts = false;  // compare incremental counts with a recount at checkpoints
  double g_time = 1.0;         // slack g in t^- = n(log n / 6 + log log n - g)
  std::size_t exhaustive_cap = kDefaultExhaustiveCap;
};

struct TraceRecord {
  std::uint64_t t = 0;
  std::int64_t n0 = 0, n1 = 0, stars3 = 0, s3 = 0;
  std::optional<std::int64_t> mu_prime;
  std::int64_t lb = 0;  // n0 + ceil((n1 + s3) / 2)
  std::optional<bool> equal;
  bool counts_verified = true;
};

struct ProcessTrace {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<TraceRecord> records;
  std::map<std::size_t, std::uint64_t> t_star;    // i -> t_i*
  std::map<std::size_t, std::uint64_t> t_spider;  // i -> t_i
  std::optional<std::uint64_t> hitting_n1_le_2;   // first t > 10n with n1 <= 2
  std::optional<std::uint64_t> t1_last_drop;      // last t <= t_end with s3(G_{t-1}) >= 1, s3(G_t) = 0
  std::uint64_t t_end = 0;
  std::uint64_t t_minus = 0;
  std::uint64_t s3_steps_after_t_minus = 0;
  std::uint64_t s3_violations = 0;  // steps t >= t^- with s3(G_t) > s3(G_{t-1})
  std::size_t count_mismatches = 0;
  std::size_t mu_capacity_skips = 0;
};

inline std::int64_t ceil_half(std::int64_t x) { return (x + 1) / 2; }

// Reference time n (log n / 6 + log log n).
inline double spider_reference_time(std::size_t n) {
  const double x = static_cast<double>(n);
  return x * (std::log(x) / 6.0 + std::log(std::log(x)));
}

inline std::uint64_t t_minus(std::size_t n, double g) {
  return static_cast<std::uint64_t>(std::max(0.0, std::floor(spider_reference_time(n) - g * static_cast<double>(n))));
}

inline std::uint64_t t_plus(std::size_t n, double g) {
  return static_cast<std::uint64_t>(std::ceil(spider_reference_time(n) + g * static_cast<double>(n)));
}

namespace detail {

template <class NextEdge>
ProcessTrace run_process_impl(const ProcessConfig& cfg, std::uint64_t total, NextEdge next_edge) {
  const std::size_t n = cfg.n;
  if (n < 2) throw ParameterError("run_process: n must be >= 2");
  if (cfg.spider_cap < 1) throw ParameterError("run_process: spider cap must be >= 1");
  if (!std::is_sorted(cfg.checkpoints.begin(), cfg.checkpoints.end())) {
    throw ParameterError("run_process: checkpoints must be sorted");
  }
  if (!cfg.checkpoints.empty() && cfg.checkpoints.back() > total) {
    throw ParameterError("run_process: checkpoint beyond n choose 2");
  }
  ProcessTrace tr;
  tr.n = n;
  tr.seed = cfg.seed;
  tr.t_minus = t_minus(n, cfg.g_time);
  const std::uint64_t horizon = cfg.horizon == 0 ? total : std::min(cfg.horizon, total);
  const std::uint64_t last_cp = cfg.checkpoints.empty() ? 0 : cfg.checkpoints.back();
  const std::uint64_t ten_n = 10 * static_cast<std::uint64_t>(n);
  const std::size_t cap = cfg.spider_cap;

  IncrementalMotifs motifs(n);
  std::size_t next_cp = 0;
  std::size_t next_star = 1;     // smallest i without t_i*
  std::size_t spider_floor = cap + 1;  // t_i known for all i >= spider_floor

  auto record = [&](std::uint64_t t) {
    const auto& c = motifs.counts();
    TraceRecord r;
    r.t = t;
    r.n0 = c.n[0];
    r.n1 = c.n[1];
    r.stars3 = c.stars3;
    r.s3 = c.s3;
    r.lb = c.n[0] + ceil_half(c.n[1] + c.s3);
    if (cfg.verify_counts) {
      r.counts_verified = count_motifs(motifs.graph()) == c;
      if (!r.counts_verified) ++tr.count_mismatches;
    }
    if (cfg.mu_mode == MuMode::AtCheckpoints) {
      try {
        MuPrimeOptions opt;
        opt.exhaustive_cap = cfg.exhaustive_cap;
        r.mu_prime = static_cast<std::int64_t>(mu_prime(motifs.graph().to_graph(), opt).mu_prime);
        r.equal = *r.mu_prime == r.lb;
      } catch (const CapacityError&) {
        ++tr.mu_capacity_skips;
      }
    }
    tr.records.push_back(r);
  };
  auto observe = [&](std::uint64_t t, std::int64_t prev_s3) {
    const auto& c = motifs.counts();
    while (next_star <= cap && c.stars3 >= static_cast<std::int64_t>(next_star)) tr.t_star[next_star++] = t;
    if (t > ten_n) {
      while (spider_floor > 1 && c.s3 < static_cast<std::int64_t>(spider_floor - 1)) tr.t_spider[--spider_floor] = t;
      if (!tr.hitting_n1_le_2 && c.n[1] <= 2) tr.hitting_n1_le_2 = t;
    }
    if (prev_s3 >= 1 && c.s3 == 0) tr.t1_last_drop = t;
    if (t >= tr.t_minus && t > 0) {
      ++tr.s3_steps_after_t_minus;
      if (c.s3 > prev_s3) ++tr.s3_violations;
    }
    while (next_cp < cfg.checkpoints.size() && cfg.checkpoints[next_cp] == t) {
      if (tr.records.empty() || tr.records.back().t != t) record(t);
      ++next_cp;
    }
  };
  auto done = [&](std::uint64_t t) {
    if (t >= horizon) return true;
    if (t < last_cp) return false;
    switch (cfg.stop) {
      case StopRule::Horizon: return false;
      case StopRule::StarEvents: return next_star > cap;
      case StopRule::AllEvents: return next_star > cap && spider_floor == 1;
    }
    return false;
  };

  std::uint64_t t = 0;
  observe(0, 0);
  while (!done(t)) {
    const std::int64_t prev = motifs.counts().s3;
    motifs.insert(next_edge());
    ++t;
    observe(t, prev);
  }
  tr.t_end = t;
  return tr;
}

}  // namespace detail

/// One pass of the random graph process on [n] with incremental motif
/// counts, event times and checkpoint records.
inline ProcessTrace run_process(const ProcessConfig& cfg) {
  if (cfg.n < 2) throw ParameterError("run_process: n must be >= 2");
  EdgeStream stream(cfg.n, cfg.seed);
  return detail::run_process_impl(cfg, stream.total(), [&] { return stream.next(); });
}

/// Same as run_process over a caller-supplied edge order (a prefix of a
/// permutation of the pairs); the run stops when the order is exhausted.
inline ProcessTrace run_process_on(const ProcessConfig& cfg, std::span<const Edge> order) {
  ProcessConfig c = cfg;
  c.horizon = c.horizon == 0 ? order.size() : std::min<std::uint64_t>(c.horizon, order.size());
  std::size_t i = 0;
  return detail::run_process_impl(c, pair_count(cfg.n), [&] { return order[i++]; });
}

enum class Regime { Early, Star, Middle, Late };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::Early: return "early";
    case Regime::Star: return "star";
    case Regime::Middle: return "middle";
    case Regime::Late: return "late";
  }
  return "?";
}

inline Regime regime_of(std::uint64_t t, std::size_t n, double g_star, double g_time) {
  const double n23 = std::pow(static_cast<double>(n), 2.0 / 3.0);
  const auto x = static_cast<double>(t);
  if (x <= n23 / g_star) return Regime::Early;
  if (x < g_star * n23) return Regime::Star;
  if (t < t_minus(n, g_time)) return Regime::Middle;
  return Regime::Late;
}

struct RegimeTally {
  std::size_t checkpoints = 0;
  std::size_t with_mu = 0;
  std::size_t eq_lb = 0;       // mu' == n0 + ceil((n1 + s3) / 2)
  std::size_t eq_n1 = 0;       // mu' == n0 + ceil(n1 / 2)
  std::size_t eq_stars = 0;    // mu' == n0 + ceil((n1 + stars3) / 2)
  std::vector<std::int64_t> gaps;  // mu' - n0 - ceil(n1 / 2), in checkpoint order
};

struct EqualitySummary {
  std::map<Regime, RegimeTally> regimes;
  std::uint64_t s3_violations = 0;
  std::uint64_t s3_steps_after_t_minus = 0;
  double violation_rate() const {
    return s3_steps_after_t_minus == 0 ? 0.0
                                       : static_cast<double>(s3_violations) / static_cast<double>(s3_steps_after_t_minus);
  }
};

inline EqualitySummary detect_equalities(const ProcessTrace& tr, double g_star = 10.0, double g_time = 1.0) {
  EqualitySummary s;
  for (Regime r : {Regime::Early, Regime::Star, Regime::Middle, Regime::Late}) s.regimes[r];
  for (const auto& rec : tr.records) {
    auto& tally = s.regimes[regime_of(rec.t, tr.n, g_star, g_time)];
    ++tally.checkpoints;
    if (!rec.mu_prime) continue;
    const std::int64_t mu = *rec.mu_prime;
    ++tally.with_mu;
    tally.eq_lb += mu == rec.lb;
    tally.eq_n1 += mu == rec.n0 + ceil_half(rec.n1);
    tally.eq_stars += mu == rec.n0 + ceil_half(rec.n1 + rec.stars3);
    tally.gaps.push_back(mu - rec.n0 - ceil_half(rec.n1));
  }
  s.s3_violations = tr.s3_violations;
  s.s3_steps_after_t_minus = tr.s3_steps_after_t_minus;
  return s;
}

inline void write_trace_csv(std::ostream& os, const ProcessTrace& tr) {
  os << "t,n0,n1,stars3,s3,mu_prime,lb,equal\n";
  for (const auto& r : tr.records) {
    os << r.t << ',' << r.n0 << ',' << r.n1 << ',' << r.stars3 << ',' << r.s3 << ',';
    if (r.mu_prime) os << *r.mu_prime;
    os << ',' << r.lb << ',';
    if (r.equal) os << (*r.equal ? 1 : 0);
    os << '\n';
  }
}

}  // namespace hcomp
