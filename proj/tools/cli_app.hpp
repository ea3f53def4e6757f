#pragma once

#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hcomp/hcomp.hpp"

namespace hcomp::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kParameter = 2,
  kCapacity = 3,
  kEngineFailure = 4,
  kStructuralFailure = 5,
  kOracleFailure = 6,
};

struct Common {
  std::optional<std::size_t> n;
  std::optional<double> d, p;
  std::optional<std::uint64_t> m;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string format = "csv";
  std::string out;
  std::string graph;
};

// Shortest round-trip decimal, independent of the locale.
inline std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

inline std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_integer()) return v.dump();
  if (v.is_number_float()) return fmt_double(v.get<double>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  return csv_cell(Json(v.dump()));
}

// Flat records, written as CSV (union of keys, first-seen order) or as one
// JSON object per line.
inline void emit(std::ostream& os, const std::vector<Json>& rows, const std::string& format) {
  if (format == "json") {
    for (const auto& r : rows) os << r.dump() << '\n';
    return;
  }
  std::vector<std::string> keys;
  for (const auto& r : rows)
    for (const auto& [k, v] : r.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i) os << ',';
      if (r.contains(keys[i])) os << csv_cell(r[keys[i]]);
    }
    os << '\n';
  }
}

struct Model {
  std::size_t n = 0;
  double d = 0;
  std::optional<double> p;
  std::optional<std::uint64_t> m;
};

inline Model resolve_model(const Common& c) {
  if (!c.n) throw ParameterError("--n is required");
  if (*c.n < 1) throw ParameterError("--n must be >= 1");
  const int given = c.d.has_value() + c.p.has_value() + c.m.has_value();
  if (given != 1) throw ParameterError("exactly one of --d, --p, --m is required");
  Model md;
  md.n = *c.n;
  const auto nd = static_cast<double>(md.n);
  if (c.d) {
    if (*c.d < 0) throw ParameterError("--d must be >= 0");
    md.d = *c.d;
    md.p = std::min(1.0, *c.d / nd);
    if (*c.d > nd) throw ParameterError("--d must be <= n");
  } else if (c.p) {
    md.p = *c.p;
    md.d = *c.p * nd;
  } else {
    md.m = *c.m;
    md.d = 2.0 * static_cast<double>(*c.m) / nd;
  }
  return md;
}

inline Graph generate(const Model& md, std::uint64_t seed) {
  return md.m ? gen_gnm(md.n, *md.m, seed) : gen_gnp(md.n, *md.p, seed);
}

inline void echo(Json& row, const std::string& cmd, const Common& c) {
  row["version"] = kVersion;
  row["command"] = cmd;
  row["n"] = c.n ? Json(*c.n) : Json(nullptr);
  row["d"] = c.d ? Json(*c.d) : Json(nullptr);
  row["p"] = c.p ? Json(*c.p) : Json(nullptr);
  row["m"] = c.m ? Json(*c.m) : Json(nullptr);
  row["trials"] = c.trials;
  row["base_seed"] = c.seed;
}

// Runs fn(trial) for every trial on up to `threads` workers; results are
// returned in trial order and the first failing trial's exception rethrown.
template <class Fn>
auto for_trials(std::size_t trials, unsigned threads, Fn fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::optional<R>> out(trials);
  std::vector<std::exception_ptr> errs(trials);
  auto worker = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < trials; i += stride) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1 || trials < 2) {
    worker(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
  }
  std::vector<R> res;
  res.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    if (errs[i]) std::rethrow_exception(errs[i]);
    res.push_back(std::move(*out[i]));
  }
  return res;
}

inline CapacityError with_trial(const CapacityError& e, std::size_t trial) {
  return CapacityError("trial " + std::to_string(trial) + ": " + e.what(), e.size());
}

class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ParameterError("cannot open output file " + path);
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

private:
  std::ofstream file_;
  std::ostream* os_;
};

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open graph file " + path);
  return read_graph(in);
}

inline void add_common(CLI::App* sub, Common& c, bool density) {
  if (density) {
    sub->add_option("--n", c.n, "number of vertices");
    sub->add_option("--d", c.d, "average degree d = np");
    sub->add_option("--p", c.p, "edge probability");
    sub->add_option("--m", c.m, "number of edges (uniform model)");
  }
  sub->add_option("--trials", c.trials, "number of trials")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "base seed; trial i uses seed xor i");
  sub->add_option("--threads", c.threads, "worker threads across trials");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "output file (default stdout)");
}

// ---- estimate ---------------------------------------------------------------

struct EstimateArgs {
  std::vector<std::size_t> ks{2};
  bool no_mu_prime = false;
  bool no_mu_k = false;
};

inline int cmd_estimate(const Common& c, const EstimateArgs& a, std::ostream& out) {
  const Model md = resolve_model(c);
  for (std::size_t k : a.ks)
    if (k < 1) throw ParameterError("--k must be >= 1");
  if (!a.no_mu_k && !(md.d > 0)) throw ParameterError("mu_k needs d > 0; pass --no-mu-k");
  const auto nd = static_cast<double>(md.n);

  auto trial_rows = for_trials(c.trials, c.threads, [&](std::size_t i) {
    const std::uint64_t s = trial_seed(c.seed, i);
    const Graph g = generate(md, s);
    const auto mc = count_motifs(g);
    Json row;
    echo(row, "estimate", c);
    row["record"] = "trial";
    row["trial"] = i;
    row["seed"] = s;
    row["edges"] = g.m();
    row["n0"] = mc.n[0];
    row["n1"] = mc.n[1];
    row["s3_pre"] = mc.s3_pre;
    row["lb_over_n"] = static_cast<double>(mc.n[0] + (mc.n[1] + 1) / 2) / nd;
    row["lb2_over_n"] = static_cast<double>(2 * mc.n[0] + mc.n[1] + mc.s3_pre) / nd;
    try {
      if (!a.no_mu_prime) row["mu_prime_over_n"] = static_cast<double>(mu_prime(g).mu_prime) / nd;
      if (!a.no_mu_k) {
        for (std::size_t k : a.ks) {
          const auto rep = mu_k_estimate(g, k, md.d);
          row["mu_k" + std::to_string(k) + "_over_n"] = rep.mu_k / nd;
          row["truncated_k" + std::to_string(k)] = rep.truncated_count;
        }
      }
    } catch (const CapacityError& e) {
      throw with_trial(e, i);
    }
    return row;
  });

  std::vector<std::string> metrics{"lb_over_n", "lb2_over_n"};
  if (!a.no_mu_prime) metrics.push_back("mu_prime_over_n");
  if (!a.no_mu_k)
    for (std::size_t k : a.ks) metrics.push_back("mu_k" + std::to_string(k) + "_over_n");

  const double f_approx = md.d > 0 ? eval_f_approx(md.d) : 1.0;
  const double expected_lb = expected_lb_closed_form(md.d);
  std::vector<Json> rows = trial_rows;
  for (auto& r : rows) {
    r["f_approx"] = f_approx;
    r["expected_lb"] = expected_lb;
  }
  for (const char* stat : {"mean", "stddev", "stderr"}) {
    Json row;
    echo(row, "estimate", c);
    row["record"] = stat;
    for (const auto& key : metrics) {
      std::vector<double> xs;
      for (const auto& r : trial_rows) xs.push_back(r[key].get<double>());
      const auto sm = summarize(xs);
      const std::string st = stat;
      row[key] = st == "mean" ? sm.mean : st == "stddev" ? sm.stddev : sm.stderr_;
    }
    row["f_approx"] = f_approx;
    row["expected_lb"] = expected_lb;
    rows.push_back(std::move(row));
  }
  emit(out, rows, c.format);
  return kOk;
}

// ---- process ----------------------------------------------------------------

struct ProcessArgs {
  std::string checkpoints;
  std::string mu = "auto";
  std::string stop = "all";
  std::uint64_t horizon = 0;
  std::size_t spider_cap = 64;
  bool verify_counts = false;
  std::string trace_dir;
  double g_star = 10.0;
  double g_time = 1.0;
};

/// Checkpoint spec: empty or "none"; a comma list of times; or "log:K" for K
/// geometrically spaced times in [1, t+].
inline std::vector<std::uint64_t> parse_checkpoints(const std::string& spec, std::size_t n, double g_time) {
  std::vector<std::uint64_t> cps;
  if (spec.empty() || spec == "none") return cps;
  const std::uint64_t total = pair_count(n);
  if (spec.rfind("log:", 0) == 0) {
    std::size_t k = 0;
    try {
      k = std::stoul(spec.substr(4));
    } catch (const std::exception&) {
      throw ParameterError("bad checkpoint spec " + spec);
    }
    if (k < 1) throw ParameterError("log:K needs K >= 1");
    const double hi = static_cast<double>(std::min<std::uint64_t>(total, t_plus(n, g_time)));
    for (std::size_t i = 0; i < k; ++i) {
      const double x = k == 1 ? hi : std::pow(hi, static_cast<double>(i) / static_cast<double>(k - 1));
      const auto t = static_cast<std::uint64_t>(std::llround(x));
      if (cps.empty() || cps.back() < t) cps.push_back(t);
    }
    return cps;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::uint64_t t = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), t);
    if (ec != std::errc() || ptr != item.data() + item.size()) throw ParameterError("bad checkpoint " + item);
    if (t > total) throw ParameterError("checkpoint " + item + " exceeds n choose 2");
    cps.push_back(t);
  }
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

inline Json events_json(const ProcessTrace& tr) {
  Json j;
  j["n"] = tr.n;
  j["seed"] = tr.seed;
  Json ts = Json::object(), tsp = Json::object();
  for (const auto& [i, t] : tr.t_star) ts[std::to_string(i)] = t;
  for (const auto& [i, t] : tr.t_spider) tsp[std::to_string(i)] = t;
  j["t_star"] = ts;
  j["t_spider"] = tsp;
  j["hitting_n1_le_2"] = tr.hitting_n1_le_2 ? Json(*tr.hitting_n1_le_2) : Json(nullptr);
  j["t1_last_drop"] = tr.t1_last_drop ? Json(*tr.t1_last_drop) : Json(nullptr);
  j["t_minus"] = tr.t_minus;
  j["t_end"] = tr.t_end;
  j["s3_violations"] = tr.s3_violations;
  j["s3_steps_after_t_minus"] = tr.s3_steps_after_t_minus;
  return j;
}

inline int cmd_process(const Common& c, const ProcessArgs& a, std::ostream& out) {
  if (!c.n) throw ParameterError("--n is required");
  if (*c.n < 2) throw ParameterError("--n must be >= 2");
  if (c.d || c.p || c.m) throw ParameterError("process takes no density flag");
  const std::size_t n = *c.n;
  ProcessConfig base;
  base.n = n;
  base.checkpoints = parse_checkpoints(a.checkpoints, n, a.g_time);
  if (a.mu == "auto") {
    base.mu_mode = base.checkpoints.empty() ? MuMode::Off : MuMode::AtCheckpoints;
  } else if (a.mu == "off") {
    base.mu_mode = MuMode::Off;
  } else if (a.mu == "checkpoints") {
    base.mu_mode = MuMode::AtCheckpoints;
  } else {
    throw ParameterError("--mu must be auto, off or checkpoints");
  }
  if (a.stop == "horizon") {
    base.stop = StopRule::Horizon;
  } else if (a.stop == "stars") {
    base.stop = StopRule::StarEvents;
  } else if (a.stop == "all") {
    base.stop = StopRule::AllEvents;
  } else {
    throw ParameterError("--stop must be horizon, stars or all");
  }
  base.horizon = a.horizon;
  base.spider_cap = a.spider_cap;
  base.verify_counts = a.verify_counts;
  base.g_time = a.g_time;
  if (!a.trace_dir.empty()) std::filesystem::create_directories(a.trace_dir);

  const double n23 = std::pow(static_cast<double>(n), 2.0 / 3.0);
  auto traces = for_trials(c.trials, c.threads, [&](std::size_t i) {
    ProcessConfig cfg = base;
    cfg.seed = trial_seed(c.seed, i);
    auto tr = run_process(cfg);
    if (!a.trace_dir.empty()) {
      const auto stem = std::filesystem::path(a.trace_dir) / ("seed_" + std::to_string(cfg.seed));
      std::ofstream csv(stem.string() + ".trace.csv", std::ios::binary);
      write_trace_csv(csv, tr);
      std::ofstream ev(stem.string() + ".events.json", std::ios::binary);
      ev << events_json(tr).dump() << '\n';
    }
    return tr;
  });

  std::vector<Json> rows;
  std::vector<double> t1, t1s, drops;
  std::uint64_t viol = 0, steps = 0;
  std::size_t in_window = 0, with_star = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& tr = traces[i];
    const auto eq = detect_equalities(tr, a.g_star, a.g_time);
    Json row;
    echo(row, "process", c);
    row["record"] = "seed";
    row["trial"] = i;
    row["seed"] = tr.seed;
    const auto ts = tr.t_star.find(1);
    const auto tp = tr.t_spider.find(1);
    row["t1_star"] = ts != tr.t_star.end() ? Json(ts->second) : Json(nullptr);
    row["t1"] = tp != tr.t_spider.end() ? Json(tp->second) : Json(nullptr);
    row["hitting_n1_le_2"] = tr.hitting_n1_le_2 ? Json(*tr.hitting_n1_le_2) : Json(nullptr);
    row["t1_last_drop"] = tr.t1_last_drop ? Json(*tr.t1_last_drop) : Json(nullptr);
    row["t_end"] = tr.t_end;
    row["t_minus"] = tr.t_minus;
    row["s3_violations"] = tr.s3_violations;
    row["s3_steps_after_t_minus"] = tr.s3_steps_after_t_minus;
    row["checkpoints"] = tr.records.size();
    row["mu_capacity_skips"] = tr.mu_capacity_skips;
    row["count_mismatches"] = tr.count_mismatches;
    for (const auto& [reg, tally] : eq.regimes) {
      const std::string p = to_string(reg);
      row[p + "_checkpoints"] = tally.checkpoints;
      row[p + "_with_mu"] = tally.with_mu;
      row[p + "_eq_lb"] = tally.eq_lb;
      row[p + "_eq_n1"] = tally.eq_n1;
    }
    rows.push_back(std::move(row));
    if (tp != tr.t_spider.end()) t1.push_back(static_cast<double>(tp->second));
    if (tr.t1_last_drop) drops.push_back(static_cast<double>(*tr.t1_last_drop));
    if (ts != tr.t_star.end()) {
      t1s.push_back(static_cast<double>(ts->second));
      ++with_star;
      const auto x = static_cast<double>(ts->second);
      in_window += x >= n23 / a.g_star && x <= a.g_star * n23;
    }
    viol += tr.s3_violations;
    steps += tr.s3_steps_after_t_minus;
  }
  Json agg;
  echo(agg, "process", c);
  agg["record"] = "aggregate";
  auto q = [](std::vector<double> xs, double p) { return xs.empty() ? Json(nullptr) : Json(quantile(xs, p)); };
  agg["t1_count"] = t1.size();
  agg["t1_median"] = q(t1, 0.5);
  agg["t1_q25"] = q(t1, 0.25);
  agg["t1_q75"] = q(t1, 0.75);
  agg["t1_reference"] = spider_reference_time(n);
  agg["t1_median_over_reference"] = t1.empty() ? Json(nullptr) : Json(quantile(t1, 0.5) / spider_reference_time(n));
  agg["t1_last_drop_median"] = q(drops, 0.5);
  agg["t1_star_count"] = t1s.size();
  agg["t1_star_median"] = q(t1s, 0.5);
  agg["t1_star_q25"] = q(t1s, 0.25);
  agg["t1_star_q75"] = q(t1s, 0.75);
  agg["t1_star_window_lo"] = n23 / a.g_star;
  agg["t1_star_window_hi"] = a.g_star * n23;
  agg["t1_star_in_window_fraction"] = with_star == 0 ? Json(nullptr) : Json(static_cast<double>(in_window) / static_cast<double>(with_star));
  agg["s3_violation_rate"] = steps == 0 ? 0.0 : static_cast<double>(viol) / static_cast<double>(steps);
  rows.push_back(std::move(agg));
  emit(out, rows, c.format);
  return kOk;
}

// ---- complete ---------------------------------------------------------------

struct CompleteArgs {
  std::string engine = "heuristic";
  std::uint64_t budget = 1'000'000;
  bool short_only = false;
  std::size_t spot_lengths = 0;
};

inline Json edges_json(const std::vector<Edge>& es) {
  Json j = Json::array();
  for (const Edge& e : es) j.push_back({e.u, e.v});
  return j;
}

inline Json certificate_json(const CompletionCertificate& cert, bool verified) {
  Json j;
  j["status"] = to_string(cert.status);
  j["reason"] = cert.reason;
  j["verified"] = verified;
  j["mu_prime"] = cert.mu_prime;
  j["F_size"] = cert.F().size();
  j["s"] = cert.s;
  j["kmax"] = cert.kmax;
  j["K"] = cert.K;
  j["F0"] = edges_json(cert.F0);
  j["F1"] = edges_json(cert.F1);
  j["F2"] = edges_json(cert.F2);
  j["M"] = edges_json(cert.M);
  j["hamilton_witness"] = cert.hamilton_witness;
  Json lw = Json::object(), sw = Json::object();
  for (const auto& [len, cyc] : cert.long_cycle_witnesses) lw[std::to_string(len)] = cyc;
  for (const auto& [len, cyc] : cert.short_cycle_witnesses) sw[std::to_string(len)] = cyc;
  j["long_cycle_witnesses"] = lw;
  j["short_cycle_witnesses"] = sw;
  Json calls = Json::array();
  for (const auto& ec : cert.engine_calls) {
    calls.push_back({{"ell", ec.ell},
                     {"engine_vertices", ec.engine_vertices},
                     {"forced_edges", ec.forced_edges},
                     {"steps", ec.steps},
                     {"restarts", ec.restarts},
                     {"ok", ec.ok}});
  }
  j["engine_calls"] = calls;
  return j;
}

inline int exit_for(CompletionStatus s) {
  switch (s) {
    case CompletionStatus::Success: return kOk;
    case CompletionStatus::EngineFailure: return kEngineFailure;
    case CompletionStatus::StructuralFailure: return kStructuralFailure;
  }
  return kInternal;
}

inline int cmd_complete(const Common& c, const CompleteArgs& a, std::ostream& out) {
  CompletionOptions opt;
  if (a.engine == "exact") {
    opt.mode = EngineMode::Exact;
  } else if (a.engine == "heuristic") {
    opt.mode = EngineMode::Heuristic;
  } else {
    throw ParameterError("--engine must be exact or heuristic");
  }
  opt.budget = a.budget;
  opt.long_cycles = !a.short_only;

  std::optional<Graph> file_graph;
  std::optional<Model> md;
  std::size_t trials = c.trials;
  if (!c.graph.empty()) {
    if (c.n || c.d || c.p || c.m) throw ParameterError("--graph excludes --n/--d/--p/--m");
    file_graph = load_graph(c.graph);
    trials = 1;
  } else {
    md = resolve_model(c);
  }

  auto results = for_trials(trials, c.threads, [&](std::size_t i) {
    const std::uint64_t s = trial_seed(c.seed, i);
    const Graph g = file_graph ? *file_graph : generate(*md, s);
    CompletionOptions o = opt;
    o.seed = s;
    CompletionCertificate cert;
    try {
      cert = build_completion(g, o);
    } catch (const CapacityError& e) {
      throw with_trial(e, i);
    }
    const bool verified = cert.success() && verify_certificate(g, cert);
    if (cert.success() && !verified) throw ContractError("certificate failed independent verification");
    Json row;
    echo(row, "complete", c);
    row["record"] = "certificate";
    row["trial"] = i;
    row["seed"] = s;
    row["graph"] = c.graph.empty() ? Json(nullptr) : Json(c.graph);
    row["engine"] = a.engine;
    row["budget"] = a.budget;
    row["graph_n"] = g.n();
    row["graph_m"] = g.m();
    const Json body = certificate_json(cert, verified);
    for (const auto& [k, v] : body.items()) row[k] = v;
    if (a.spot_lengths > 0 && verified) {
      // Sampled lengths strictly between kmax and n - s.
      const std::size_t lo = cert.kmax + 1, hi = g.n() - cert.s;
      Rng rng(trial_seed(s, 0x5eed));
      const auto f = cert.F();
      Json found = Json::array();
      std::size_t checked = 0;
      for (std::size_t t = 0; t < a.spot_lengths && hi > lo + 1; ++t) {
        const std::size_t len = lo + rng.below(hi - lo - 1) + 1;
        ++checked;
        const auto w = chord_cycle(g, f, cert.hamilton_witness, len);
        if (w && verify_cycle(g, f, *w, len)) found.push_back(len);
      }
      row["spot_checked"] = checked;
      row["spot_found"] = found.size();
      row["spot_lengths_found"] = found;
    }
    return std::pair(row, cert.status);
  });

  std::vector<Json> rows;
  int code = kOk;
  for (auto& [row, status] : results) {
    if (code == kOk) code = exit_for(status);
    if (c.format == "csv") {
      // Tabular summary; full witnesses need --format json.
      Json flat;
      for (auto& [k, v] : row.items())
        if (!v.is_array() && !v.is_object()) flat[k] = v;
      rows.push_back(std::move(flat));
    } else {
      rows.push_back(std::move(row));
    }
  }
  emit(out, rows, c.format);
  return code;
}

// ---- oracle -----------------------------------------------------------------

struct OracleArgs {
  bool mutant = false;
  std::size_t max_n = 10;
};

inline ABComponent labelled(std::size_t n, std::vector<Edge> edges, const std::vector<char>& is_a) {
  ABComponent c;
  for (Vertex v = 0; v < n; ++v) {
    c.vertices.push_back(v);
    (is_a[v] ? c.a_vertices : c.b_vertices).push_back(v);
  }
  std::sort(edges.begin(), edges.end());
  c.edges = std::move(edges);
  c.is_tree = c.edges.size() + 1 == n;
  return c;
}

inline std::vector<Edge> random_tree(std::size_t n, Rng& rng) {
  std::vector<Edge> es;
  for (Vertex v = 1; v < n; ++v) es.emplace_back(static_cast<Vertex>(rng.below(v)), v);
  return es;
}

inline Graph random_small(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) es.emplace_back(u, v);
  return Graph::from_edges(n, es);
}

struct SuiteResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
};

inline std::vector<SuiteResult> run_oracle_suites(std::uint64_t seed, std::size_t trials, std::size_t max_n,
                                                  bool mutant) {
  const PrespiderRule rule = mutant ? PrespiderRule::Omit : PrespiderRule::CenterTriples;
  std::vector<SuiteResult> out;

  {
    SuiteResult r{"small_component_spot_values"};
    const std::vector<std::pair<ABComponent, std::size_t>> cases{
        {labelled(1, {}, {1}), 2},
        {labelled(2, {{0, 1}}, {1, 0}), 1},
        {labelled(4, {{0, 1}, {0, 2}, {0, 3}}, {1, 0, 0, 0}), 0},
        {labelled(7, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5}, {3, 6}}, {0, 1, 1, 1, 0, 0, 0}), 1},
    };
    for (const auto& [comp, want] : cases) {
      ++r.instances;
      const auto f = a_formula_small(comp, rule).a_value;
      const auto ex = a_exhaustive(comp).a_value;
      if (f != want || ex != want) ++r.failures;
    }
    out.push_back(r);
  }
  {
    SuiteResult r{"tree_dp_vs_exhaustive"};
    Rng rng(trial_seed(seed, 1));
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t n = 1 + rng.below(std::min<std::size_t>(14, std::max<std::size_t>(max_n, 1)));
      std::vector<char> is_a(n);
      for (auto& x : is_a) x = rng.bernoulli(0.5);
      const auto comp = labelled(n, random_tree(n, rng), is_a);
      ++r.instances;
      const auto dp = a_tree_dp(comp);
      if (dp.a_value != a_exhaustive(comp).a_value || !verify_cover(comp, dp.witness, dp.a_value)) ++r.failures;
      if (comp.a_vertices.size() <= 3 && a_formula_small(comp, rule).a_value != dp.a_value) ++r.failures;
    }
    out.push_back(r);
  }
  {
    SuiteResult r{"mu_lower_bounds"};
    Rng rng(trial_seed(seed, 2));
    const double ps[] = {0.2, 0.4, 0.6};
    for (std::size_t t = 0; r.instances < trials && t < 50 * trials; ++t) {
      const std::size_t n = 3 + rng.below(std::max<std::size_t>(max_n, 3) - 2);
      const Graph g = random_small(n, ps[t % 3], rng);
      const auto mu = brute_mu(g);
      if (*mu == 0) continue;
      ++r.instances;
      const auto lb = g.count_degree(0) + (g.count_degree(1) + 1) / 2;
      if (*mu < mu_prime(g).mu_prime || *mu < lb) ++r.failures;
    }
    out.push_back(r);
  }
  {
    SuiteResult r{"mu_hat_at_least_mu"};
    Rng rng(trial_seed(seed, 3));
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t n = 3 + rng.below(std::min<std::size_t>(kOracleMuHatCap, std::max<std::size_t>(max_n, 3)) - 2);
      const Graph g = random_small(n, rng.uniform01(), rng);
      ++r.instances;
      if (*brute_mu_hat(g) < *brute_mu(g)) ++r.failures;
    }
    out.push_back(r);
  }
  {
    SuiteResult r{"edge_addition"};
    Rng rng(trial_seed(seed, 4));
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t n = 3 + rng.below(std::max<std::size_t>(max_n, 3) - 2);
      const Graph g = random_small(n, 0.1 + 0.6 * rng.uniform01(), rng);
      if (g.m() == n * (n - 1) / 2) continue;
      Vertex u, v;
      do {
        u = static_cast<Vertex>(rng.below(n));
        v = static_cast<Vertex>(rng.below(n));
      } while (u == v || g.has_edge(u, v));
      auto es = g.edges();
      es.emplace_back(u, v);
      ++r.instances;
      if (*brute_mu(Graph::from_edges(n, es)) + 1 < *brute_mu(g)) ++r.failures;
    }
    out.push_back(r);
  }
  {
    SuiteResult r{"completion_vs_oracle"};
    Rng rng(trial_seed(seed, 5));
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t n = 3 + rng.below(std::max<std::size_t>(max_n, 3) - 2);
      const Graph g = random_small(n, 0.55 + 0.4 * rng.uniform01(), rng);
      CompletionOptions opt;
      opt.mode = EngineMode::Exact;
      const auto cert = build_completion(g, opt);
      if (!cert.success()) continue;
      ++r.instances;
      if (!verify_certificate(g, cert) || cert.F().size() != *brute_mu(g)) ++r.failures;
    }
    out.push_back(r);
  }
  {
    SuiteResult r{"incremental_motifs"};
    for (std::size_t t = 0; t < std::max<std::size_t>(1, trials / 50); ++t) {
      const std::size_t n = 40;
      EdgeStream stream(n, trial_seed(seed, 600 + t));
      IncrementalMotifs mot(n);
      for (int i = 0; i < 300; ++i) {
        mot.insert(stream.next());
        ++r.instances;
        if (!(mot.counts() == count_motifs(mot.graph()))) ++r.failures;
      }
    }
    out.push_back(r);
  }
  return out;
}

inline int cmd_oracle(const Common& c, const OracleArgs& a, std::ostream& out) {
  if (c.d || c.p || c.m) throw ParameterError("oracle takes no density flag");
  const std::size_t max_n = c.n.value_or(a.max_n);
  if (max_n > kOracleMuCap) throw CapacityError("oracle suites", max_n);
  if (max_n < 3) throw ParameterError("--n must be >= 3");
  const auto suites = run_oracle_suites(c.seed, c.trials == 1 ? 200 : c.trials, max_n, a.mutant);
  std::vector<Json> rows;
  bool ok = true;
  for (const auto& s : suites) {
    Json row;
    echo(row, "oracle", c);
    row["record"] = "suite";
    row["mutant"] = a.mutant;
    row["max_n"] = max_n;
    row["suite"] = s.name;
    row["instances"] = s.instances;
    row["failures"] = s.failures;
    row["status"] = s.failures == 0 ? "pass" : "fail";
    ok = ok && s.failures == 0;
    rows.push_back(std::move(row));
  }
  emit(out, rows, c.format);
  return ok ? kOk : kOracleFailure;
}

// ---- core-stats and gen -----------------------------------------------------

inline Json core_stats_row(const Graph& g) {
  const auto part = strong_core(g);
  const auto comps = ab_components(g, part);
  const auto mc = count_motifs(g);
  const std::size_t kmax = short_cycle_kmax(g.n());
  const auto ks = detect_Ek(g, part, comps, kmax);
  bool event_e = true;
  for (std::size_t k = 3; k <= kmax; ++k) event_e = event_e && ks.contains(k);
  std::size_t trees = 0, largest = 0;
  for (const auto& cp : comps) {
    trees += cp.is_tree;
    largest = std::max(largest, cp.vertices.size());
  }
  Json row;
  row["graph_n"] = g.n();
  row["graph_m"] = g.m();
  row["A"] = part.A.size();
  row["B"] = part.B.size();
  row["C"] = part.C.size();
  row["components"] = comps.size();
  row["tree_components"] = trees;
  row["largest_component"] = largest;
  row["S"] = count_S(comps);
  row["E1"] = detect_E1(g, part, comps);
  row["E"] = event_e;
  row["kmax"] = kmax;
  row["n0"] = mc.n[0];
  row["n1"] = mc.n[1];
  row["stars3"] = mc.stars3;
  row["s3_pre"] = mc.s3_pre;
  row["s3"] = mc.s3;
  try {
    const auto mp = mu_prime(g);
    row["a_total"] = mp.a_total;
    row["mu_prime"] = mp.mu_prime;
  } catch (const CapacityError& e) {
    row["a_total"] = nullptr;
    row["mu_prime"] = nullptr;
    row["mu_prime_capacity"] = e.size();
  }
  return row;
}

inline int cmd_core_stats(const Common& c, std::ostream& out) {
  std::vector<Json> rows;
  if (!c.graph.empty()) {
    if (c.n || c.d || c.p || c.m) throw ParameterError("--graph excludes --n/--d/--p/--m");
    Json row;
    echo(row, "core-stats", c);
    row["record"] = "graph";
    row["graph"] = c.graph;
    const Json body = core_stats_row(load_graph(c.graph));
    for (const auto& [k, v] : body.items()) row[k] = v;
    rows.push_back(std::move(row));
  } else {
    const Model md = resolve_model(c);
    rows = for_trials(c.trials, c.threads, [&](std::size_t i) {
      const std::uint64_t s = trial_seed(c.seed, i);
      Json row;
      echo(row, "core-stats", c);
      row["record"] = "trial";
      row["trial"] = i;
      row["seed"] = s;
      const Json body = core_stats_row(generate(md, s));
      for (const auto& [k, v] : body.items()) row[k] = v;
      return row;
    });
  }
  emit(out, rows, c.format);
  return kOk;
}

inline int cmd_gen(const Common& c, std::ostream& out) {
  const Model md = resolve_model(c);
  write_graph(out, generate(md, c.seed));
  return kOk;
}

// ---- entry ------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hamilton and pancyclic completion numbers of random graphs"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common common;
  EstimateArgs est;
  ProcessArgs proc;
  CompleteArgs comp;
  OracleArgs orc;

  auto* s_est = app.add_subcommand("estimate", "Monte Carlo estimates of mu'/n, mu_k/n and the lower bounds");
  add_common(s_est, common, true);
  s_est->add_option("--k", est.ks, "estimator radii, comma separated")->delimiter(',');
  s_est->add_flag("--no-mu-prime", est.no_mu_prime, "skip mu'");
  s_est->add_flag("--no-mu-k", est.no_mu_k, "skip mu_k");

  auto* s_proc = app.add_subcommand("process", "random graph process with event times and checkpoints");
  add_common(s_proc, common, true);
  s_proc->add_option("--checkpoints", proc.checkpoints, "none | t1,t2,... | log:K");
  s_proc->add_option("--mu", proc.mu, "auto | off | checkpoints");
  s_proc->add_option("--stop", proc.stop, "horizon | stars | all");
  s_proc->add_option("--horizon", proc.horizon, "last step (0: n choose 2)");
  s_proc->add_option("--spider-cap", proc.spider_cap, "largest i tracked for t_i and t_i*");
  s_proc->add_flag("--verify-counts", proc.verify_counts, "recount motifs at checkpoints");
  s_proc->add_option("--trace-dir", proc.trace_dir, "directory for per-seed traces");
  s_proc->add_option("--g-star", proc.g_star, "window factor for t_i*");
  s_proc->add_option("--g-time", proc.g_time, "slack g in t- and t+");

  auto* s_comp = app.add_subcommand("complete", "build and verify a completion certificate");
  add_common(s_comp, common, true);
  s_comp->add_option("--graph", common.graph, "graph file");
  s_comp->add_option("--engine", comp.engine, "exact | heuristic");
  s_comp->add_option("--budget", comp.budget, "heuristic step budget per engine call");
  s_comp->add_flag("--hamilton-only", comp.short_only, "only the l = s engine call");
  s_comp->add_option("--spot-lengths", comp.spot_lengths, "sample this many middle lengths and look for chord cycles");

  auto* s_orc = app.add_subcommand("oracle", "brute-force equivalence suites");
  add_common(s_orc, common, true);
  s_orc->add_flag("--mutant", orc.mutant, "flip the prespider convention of the small-component formula");

  auto* s_core = app.add_subcommand("core-stats", "strong 4-core and component statistics");
  add_common(s_core, common, true);
  s_core->add_option("--graph", common.graph, "graph file");

  auto* s_gen = app.add_subcommand("gen", "write a random graph in the text format");
  add_common(s_gen, common, true);

  std::vector<const char*> argv{"hcomp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParameter;
  }

  try {
    Sink sink(common.out, out);
    auto& os = sink.stream();
    if (*s_est) return cmd_estimate(common, est, os);
    if (*s_proc) return cmd_process(common, proc, os);
    if (*s_comp) return cmd_complete(common, comp, os);
    if (*s_orc) return cmd_oracle(common, orc, os);
    if (*s_core) return cmd_core_stats(common, os);
    if (*s_gen) return cmd_gen(common, os);
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << '\n';
    return kParameter;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kParameter;
  } catch (const CapacityError& e) {
    err << "error: capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}

}  // namespace hcomp::cli
