#pragma once

#include <vector>

#include "nsplan/nsmdp.hpp"
#include "nsplan/policy.hpp"
#include "nsplan/value_iteration.hpp"

namespace nsplan {

struct SnapshotPlanResult {
  int action = 0;
  std::vector<double> values;
  int iterations = 0;
};

/// Plans as if the current snapshot were the whole truth: value iteration
/// on the slice, then the greedy action at s0. Replanned every epoch by the
/// evaluation harness.
SnapshotPlanResult dp_snapshot_action(const Snapshot& snap, int s0,
                                      double tol = 1e-6);

/// Full-information baseline: backward induction over epochs 0..episodeLen-1
/// against the true time-indexed tables, with an infinite-horizon tail from
/// value iteration on the last usable slice. Returns a per-epoch policy.
Policy dp_nsmdp_policy(const NSMDP& m, int episodeLen, double tol = 1e-6);

}  // namespace nsplan
