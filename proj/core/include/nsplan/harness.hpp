#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsplan/baselines.hpp"
#include "nsplan/bridge.hpp"
#include "nsplan/metric.hpp"
#include "nsplan/nsmdp.hpp"
#include "nsplan/rats.hpp"

namespace nsplan {

enum class AlgoKind { Rats, DpSnapshot, DpNsmdp };

std::string to_string(AlgoKind k);
/// Throws ConfigError on anything but "rats", "dp-snapshot", "dp-nsmdp".
AlgoKind algo_from_string(const std::string& s);

struct EvalConfig {
  AlgoKind algo = AlgoKind::Rats;
  int episodes = 100;
  int episodeLen = 20;
  std::uint64_t seed = 0;
  double cvarQ = 0.05;
  int threads = 0;  // 0 picks from the hardware
  RatsConfig rats;
  double viTol = 1e-6;
};

struct StepRecord {
  int t, s, a, s2;
  double r;
};

struct EpisodeRecord {
  std::uint64_t seed = 0;
  double ret = 0.0;  // discounted return
  std::vector<StepRecord> steps;
};

struct EvaluationReport {
  std::string domainName;
  EvalConfig config;
  std::vector<EpisodeRecord> episodes;  // in episode-index order
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double cvar = 0.0;    // mean of the ceil(q * n) smallest returns
};

/// Lower-tail conditional value at risk: the mean of the ceil(q * n)
/// smallest entries. q must lie in (0, 1].
double cvar_lower_tail(std::vector<double> returns, double q);

/// One closed-loop episode against the true dynamics. The planner only ever
/// sees the snapshot of the epoch it is standing in; the environment draws
/// arrivals from the true time-indexed tables with the given seed. The
/// dpNsmdp policy is planned once per evaluation and passed in here.
EpisodeRecord run_episode(const NSMDP& m, const StateMetric& metric,
                          const EvalConfig& cfg, int s0,
                          std::uint64_t episodeSeed,
                          const Policy* dpNsmdpPolicy);

/// Batch of episodes with per-index seeds derived from cfg.seed. Seeds do
/// not depend on the algorithm, so runs with different planners on the same
/// master seed face the same environment randomness episode by episode.
/// Episodes are distributed over threads statically; the report is
/// identical for any thread count.
EvaluationReport evaluate(const NSMDP& m, const StateMetric& metric,
                          const EvalConfig& cfg, int s0,
                          const std::string& domainName = "");

void write_report_json(const EvaluationReport& rep, const std::string& path);
void write_report_csv(const EvaluationReport& rep, const std::string& path);

struct SweepCell {
  double epsilon = 0.0;
  AlgoKind algo = AlgoKind::Rats;
  EvaluationReport report;
};

struct SweepResult {
  std::vector<SweepCell> cells;
};

/// Grid of evaluations over epsilon values and algorithms on the bridge
/// domain. The planner drift rates are taken from the built domain.
SweepResult sweep_bridge(const BridgeSpec& base,
                         const std::vector<double>& epsilons,
                         const std::vector<AlgoKind>& algos,
                         const EvalConfig& cfg);

/// One row per episode: epsilon, algo, episode, return.
void write_sweep_long_csv(const SweepResult& sweep, const std::string& path);
/// One row per cell: epsilon, algo, episodes, mean, stddev, cvar.
void write_sweep_summary_csv(const SweepResult& sweep,
                             const std::string& path);
void write_sweep_json(const SweepResult& sweep, const std::string& path);

}  // namespace nsplan
