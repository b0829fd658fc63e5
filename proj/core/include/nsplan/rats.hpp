#pragma once

#include <cstdint>
#include <vector>

#include "nsplan/metric.hpp"
#include "nsplan/nsmdp.hpp"
#include "nsplan/policy.hpp"
#include "nsplan/worst_case.hpp"

namespace nsplan {

enum class HeuristicKind { Zero, RolloutLowerBound };

struct HeuristicSpec {
  HeuristicKind kind = HeuristicKind::Zero;
  int nRollouts = 16;
  /// 0 derives the horizon from gamma so the truncated tail is under 1e-3.
  int rolloutHorizon = 0;
  std::uint64_t seed = 0;
  /// Rollout behavior; null means uniform over actions.
  const Policy* rolloutPolicy = nullptr;
};

struct TreeStats {
  std::uint64_t decisionNodes = 0;  // evaluations, cache hits not included
  std::uint64_t chanceNodes = 0;
  std::uint64_t heuristicCalls = 0;
  std::uint64_t memoHits = 0;
  std::vector<std::uint64_t> decisionNodesByDepth;
};

struct RatsConfig {
  int dMax = 3;
  double lp = 0.0;
  double lr = 0.0;
  bool memoize = true;
  bool clipRewards = true;
  TargetRule targetRule = TargetRule::BestResponse;
  HeuristicSpec heuristic;
};

struct RatsResult {
  int action = 0;
  double rootValue = 0.0;
  std::vector<double> actionValues;  // pessimistic value per root action
  TreeStats stats;
};

/// Risk-averse tree search over a single snapshot. Decision nodes maximize
/// over actions; chance nodes back up the worst model the elapsed depth
/// allows: transition rows may drift within W1 radius lp * d of the
/// snapshot row (mass shifts toward the least favorable reachable point
/// mass, picked by cfg.targetRule), and arrival rewards sink by lr * d,
/// floored at -1 while clipRewards is set. The frontier at dMax is scored
/// by the configured heuristic. Results are bit-identical with memoization
/// on or off; only the node counts change.
RatsResult rats_plan(const Snapshot& snap, const StateMetric& metric, int s0,
                     const RatsConfig& cfg);

/// Depth-penalized Monte Carlo score: mean discounted return of rollouts in
/// the snapshot minus depth * (lp + lr) / (1 - gamma). Rollout streams are
/// seeded per (state, depth), so the score is a pure function of its
/// arguments.
double rollout_heuristic(const Snapshot& snap, int s, int depth, double lp,
                         double lr, const HeuristicSpec& spec);

}  // namespace nsplan
