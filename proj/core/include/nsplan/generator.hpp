#pragma once

#include <cstdint>

#include "nsplan/metric.hpp"
#include "nsplan/nsmdp.hpp"

namespace nsplan {

/// Recipe for a random drifting MDP whose per-epoch motion provably stays
/// inside the declared rates. Transition rows walk by convex mixing toward
/// fresh random rows, with a mixing weight capped at lp over the metric
/// diameter. Rewards are built from 1-Lipschitz arrival potentials (a
/// scaled distance to a random anchor state) when lipschitzRewards is set,
/// or as free tables otherwise, and drift by bounded scalar shifts.
struct GeneratorSpec {
  int nStates = 5;
  int nActions = 2;
  int horizon = 6;
  double gamma = 0.9;
  double lp = 0.1;
  double lr = 0.05;
  MetricKind metric = MetricKind::Discrete;
  bool lipschitzRewards = true;
  /// Fraction of states made absorbing with zero reward.
  double terminalFraction = 0.0;
  /// Mixed into every row so the support stays dense.
  double uniformMix = 0.5;
  std::uint64_t seed = 1;
};

struct GeneratedNsmdp {
  NSMDP nsmdp;
  StateMetric metric;
};

GeneratedNsmdp generate_nsmdp(const GeneratorSpec& spec);

}  // namespace nsplan
