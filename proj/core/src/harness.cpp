#include "nsplan/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "nsplan/errors.hpp"

namespace nsplan {

using nlohmann::json;

std::string to_string(AlgoKind k) {
  switch (k) {
    case AlgoKind::Rats:
      return "rats";
    case AlgoKind::DpSnapshot:
      return "dp-snapshot";
    case AlgoKind::DpNsmdp:
      return "dp-nsmdp";
  }
  return "?";
}

AlgoKind algo_from_string(const std::string& s) {
  if (s == "rats") return AlgoKind::Rats;
  if (s == "dp-snapshot") return AlgoKind::DpSnapshot;
  if (s == "dp-nsmdp") return AlgoKind::DpNsmdp;
  throw ConfigError("unknown algorithm '" + s +
                    "', expected rats, dp-snapshot or dp-nsmdp");
}

double cvar_lower_tail(std::vector<double> returns, double q) {
  if (returns.empty())
    throw std::invalid_argument("cvar: empty sample");
  if (!(q > 0.0 && q <= 1.0))
    throw std::invalid_argument("cvar: quantile must be in (0, 1]");
  std::sort(returns.begin(), returns.end());
  const std::size_t k = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(returns.size())));
  const std::size_t m = std::max<std::size_t>(1, k);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) acc += returns[i];
  return acc / static_cast<double>(m);
}

EpisodeRecord run_episode(const NSMDP& m, const StateMetric& metric,
                          const EvalConfig& cfg, int s0,
                          std::uint64_t episodeSeed,
                          const Policy* dpNsmdpPolicy) {
  EpisodeRecord rec;
  rec.seed = episodeSeed;
  Rng rng(episodeSeed);
  int s = s0;
  double disc = 1.0;
  for (int t = 0; t < cfg.episodeLen; ++t) {
    if (m.is_terminal(s)) break;
    int a = 0;
    switch (cfg.algo) {
      case AlgoKind::Rats:
        a = rats_plan(m.snapshot(t), metric, s, cfg.rats).action;
        break;
      case AlgoKind::DpSnapshot:
        a = dp_snapshot_action(m.snapshot(t), s, cfg.viTol).action;
        break;
      case AlgoKind::DpNsmdp:
        a = dpNsmdpPolicy->action(s, t);
        break;
    }
    const auto [s2, r] = m.sample_transition(t, s, a, rng);
    rec.steps.push_back({t, s, a, s2, r});
    rec.ret += disc * r;
    disc *= m.gamma();
    s = s2;
  }
  return rec;
}

EvaluationReport evaluate(const NSMDP& m, const StateMetric& metric,
                          const EvalConfig& cfg, int s0,
                          const std::string& domainName) {
  if (cfg.episodes < 1) throw ConfigError("evaluate: need at least 1 episode");
  if (cfg.episodeLen < 1 || cfg.episodeLen > m.horizon())
    throw ConfigError("evaluate: episode length must be in [1, horizon]");
  if (s0 < 0 || s0 >= m.n_states())
    throw ConfigError("evaluate: start state out of range");
  if (metric.size() != m.n_states())
    throw ConfigError("evaluate: metric does not match the domain");

  Policy dpPolicy;
  if (cfg.algo == AlgoKind::DpNsmdp)
    dpPolicy = dp_nsmdp_policy(m, cfg.episodeLen, cfg.viTol);

  EvaluationReport rep;
  rep.domainName = domainName;
  rep.config = cfg;
  rep.episodes.resize(cfg.episodes);

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  int nThreads = cfg.threads > 0 ? cfg.threads
                                 : static_cast<int>(std::min<unsigned>(hw, 16));
  nThreads = std::max(1, std::min(nThreads, cfg.episodes));

  const auto worker = [&](int lo, int hi, std::exception_ptr& err) {
    try {
      for (int i = lo; i < hi; ++i)
        rep.episodes[i] = run_episode(m, metric, cfg, s0,
                                      derive_seed(cfg.seed, i), &dpPolicy);
    } catch (...) {
      err = std::current_exception();
    }
  };

  if (nThreads == 1) {
    std::exception_ptr err;
    worker(0, cfg.episodes, err);
    if (err) std::rethrow_exception(err);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(nThreads);
    const int chunk = (cfg.episodes + nThreads - 1) / nThreads;
    for (int k = 0; k < nThreads; ++k) {
      const int lo = k * chunk;
      const int hi = std::min(cfg.episodes, lo + chunk);
      pool.emplace_back(worker, lo, hi, std::ref(errs[k]));
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }

  // statistics over the sorted returns so thread count cannot matter
  std::vector<double> returns(rep.episodes.size());
  for (std::size_t i = 0; i < rep.episodes.size(); ++i)
    returns[i] = rep.episodes[i].ret;
  std::sort(returns.begin(), returns.end());
  double acc = 0.0;
  for (double x : returns) acc += x;
  rep.mean = acc / static_cast<double>(returns.size());
  if (returns.size() > 1) {
    double ss = 0.0;
    for (double x : returns) ss += (x - rep.mean) * (x - rep.mean);
    rep.stddev = std::sqrt(ss / static_cast<double>(returns.size() - 1));
  }
  rep.cvar = cvar_lower_tail(returns, cfg.cvarQ);
  return rep;
}

//----------------------------------------------------------------------------
// report writers

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  return out;
}

json report_to_json(const EvaluationReport& rep) {
  json j;
  j["schema"] = "nsplan-report-v1";
  j["domain"] = rep.domainName;
  j["algo"] = to_string(rep.config.algo);
  j["episodes"] = rep.config.episodes;
  j["episode_len"] = rep.config.episodeLen;
  j["seed"] = rep.config.seed;
  j["cvar_q"] = rep.config.cvarQ;
  if (rep.config.algo == AlgoKind::Rats) {
    json p;
    p["dmax"] = rep.config.rats.dMax;
    p["lp"] = rep.config.rats.lp;
    p["lr"] = rep.config.rats.lr;
    p["memoize"] = rep.config.rats.memoize;
    p["target_rule"] = rep.config.rats.targetRule == TargetRule::ValueArgmin
                           ? "value-argmin"
                           : "best-response";
    p["heuristic"] = rep.config.rats.heuristic.kind == HeuristicKind::Zero
                         ? "zero"
                         : "mc";
    p["rollouts"] = rep.config.rats.heuristic.nRollouts;
    j["planner"] = p;
  }
  j["summary"] = {{"mean", rep.mean}, {"stddev", rep.stddev},
                  {"cvar", rep.cvar}};
  json eps = json::array();
  for (const auto& e : rep.episodes) {
    json je;
    je["seed"] = e.seed;
    je["return"] = e.ret;
    json steps = json::array();
    for (const auto& st : e.steps)
      steps.push_back({st.t, st.s, st.a, st.s2, st.r});
    je["steps"] = std::move(steps);
    eps.push_back(std::move(je));
  }
  j["episode_records"] = std::move(eps);
  return j;
}

}  // namespace

void write_report_json(const EvaluationReport& rep, const std::string& path) {
  auto out = open_out(path);
  out << report_to_json(rep).dump(2) << "\n";
}

void write_report_csv(const EvaluationReport& rep, const std::string& path) {
  auto out = open_out(path);
  out << "episode,seed,return\n";
  for (std::size_t i = 0; i < rep.episodes.size(); ++i)
    out << i << "," << rep.episodes[i].seed << ","
        << fmt_double(rep.episodes[i].ret) << "\n";
}

SweepResult sweep_bridge(const BridgeSpec& base,
                         const std::vector<double>& epsilons,
                         const std::vector<AlgoKind>& algos,
                         const EvalConfig& cfg) {
  SweepResult out;
  for (double eps : epsilons) {
    BridgeSpec spec = base;
    spec.epsilon = eps;
    const BridgeDomain dom = build_bridge(spec);
    for (AlgoKind algo : algos) {
      EvalConfig c = cfg;
      c.algo = algo;
      c.rats.lp = dom.nsmdp.lipschitz_p();
      c.rats.lr = dom.nsmdp.lipschitz_r();
      SweepCell cell;
      cell.epsilon = eps;
      cell.algo = algo;
      cell.report = evaluate(dom.nsmdp, dom.metric, c, dom.start, "bridge");
      out.cells.push_back(std::move(cell));
    }
  }
  return out;
}

void write_sweep_long_csv(const SweepResult& sweep, const std::string& path) {
  auto out = open_out(path);
  out << "epsilon,algo,episode,return\n";
  for (const auto& cell : sweep.cells)
    for (std::size_t i = 0; i < cell.report.episodes.size(); ++i)
      out << fmt_double(cell.epsilon) << "," << to_string(cell.algo) << ","
          << i << "," << fmt_double(cell.report.episodes[i].ret) << "\n";
}

void write_sweep_summary_csv(const SweepResult& sweep,
                             const std::string& path) {
  auto out = open_out(path);
  out << "epsilon,algo,episodes,mean,stddev,cvar\n";
  for (const auto& cell : sweep.cells)
    out << fmt_double(cell.epsilon) << "," << to_string(cell.algo) << ","
        << cell.report.episodes.size() << "," << fmt_double(cell.report.mean)
        << "," << fmt_double(cell.report.stddev) << ","
        << fmt_double(cell.report.cvar) << "\n";
}

void write_sweep_json(const SweepResult& sweep, const std::string& path) {
  json j;
  j["schema"] = "nsplan-sweep-v1";
  json cells = json::array();
  for (const auto& cell : sweep.cells) {
    json jc;
    jc["epsilon"] = cell.epsilon;
    jc["algo"] = to_string(cell.algo);
    jc["mean"] = cell.report.mean;
    jc["stddev"] = cell.report.stddev;
    jc["cvar"] = cell.report.cvar;
    json rets = json::array();
    for (const auto& e : cell.report.episodes) rets.push_back(e.ret);
    jc["returns"] = std::move(rets);
    cells.push_back(std::move(jc));
  }
  j["cells"] = std::move(cells);
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

}  // namespace nsplan
