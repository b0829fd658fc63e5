#pragma once

#include <vector>

#include "nsplan/metric.hpp"

namespace nsplan {

/// Optimal coupling between two distributions on the same finite support.
/// flow[i][j] is the mass moved from state i (under mu) to state j (under
/// nu); row sums reproduce mu and column sums reproduce nu within 1e-12.
struct TransportPlan {
  std::vector<std::vector<double>> flow;
  double cost = 0.0;
};

struct W1Result {
  double distance = 0.0;
  TransportPlan plan;
};

/// Exact 1-Wasserstein distance between mu and nu under the given metric,
/// with the optimal transport plan. Solved as a min-cost flow by successive
/// shortest paths; mass common to both inputs stays in place, which is
/// optimal because the costs satisfy the triangle inequality.
W1Result w1(const std::vector<double>& mu, const std::vector<double>& nu,
            const StateMetric& metric);

/// Distance only.
double w1_distance(const std::vector<double>& mu, const std::vector<double>& nu,
                   const StateMetric& metric);

/// W1 between a point mass at target and p. Closed form: sum of
/// p(s) * d(s, target).
double w1_to_dirac(const std::vector<double>& p, int target,
                   const StateMetric& metric);

/// Total variation distance, half the L1 gap. Equals W1 under the
/// discrete metric.
double tv_distance(const std::vector<double>& mu,
                   const std::vector<double>& nu);

}  // namespace nsplan
