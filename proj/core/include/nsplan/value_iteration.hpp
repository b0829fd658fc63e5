#pragma once

#include <vector>

#include "nsplan/nsmdp.hpp"
#include "nsplan/policy.hpp"

namespace nsplan {

struct ViResult {
  std::vector<double> values;
  int iterations = 0;
  double residual = 0.0;  // final sup-norm change
};

/// Infinite-horizon value iteration on a stationary slice. Stops when the
/// sup-norm change drops below tol (default pinned to 1e-6) or at maxIter.
ViResult value_iteration(const Snapshot& snap, double tol = 1e-6,
                         int maxIter = 100000);

/// Q(s, a) under the given state values.
double q_value(const Snapshot& snap, const std::vector<double>& values, int s,
               int a);

/// Greedy action per state; ties go to the lowest action index.
/// Terminal states get action 0.
std::vector<int> greedy_policy(const Snapshot& snap,
                               const std::vector<double>& values);

/// Exact value of a stationary policy on the slice, solved by iterative
/// policy evaluation to tol.
std::vector<double> policy_value(const Snapshot& snap, const Policy& policy,
                                 double tol = 1e-9, int maxIter = 1000000);

}  // namespace nsplan
