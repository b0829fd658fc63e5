#include "nsplan/value_iteration.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsplan {

double q_value(const Snapshot& snap, const std::vector<double>& values, int s,
               int a) {
  const int k = snap.row(s, a);
  double q = 0.0;
  for (int s2 = 0; s2 < snap.nStates; ++s2) {
    const double w = snap.p[k][s2];
    if (w == 0.0) continue;
    q += w * (snap.r[k][s2] + snap.gamma * values[s2]);
  }
  return q;
}

ViResult value_iteration(const Snapshot& snap, double tol, int maxIter) {
  ViResult out;
  out.values.assign(snap.nStates, 0.0);
  std::vector<double> next(snap.nStates, 0.0);
  for (out.iterations = 0; out.iterations < maxIter; ++out.iterations) {
    out.residual = 0.0;
    for (int s = 0; s < snap.nStates; ++s) {
      if (snap.terminal[s]) {
        next[s] = 0.0;
        continue;
      }
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < snap.nActions; ++a)
        best = std::max(best, q_value(snap, out.values, s, a));
      next[s] = best;
      out.residual = std::max(out.residual, std::abs(best - out.values[s]));
    }
    out.values.swap(next);
    if (out.residual < tol) {
      ++out.iterations;
      break;
    }
  }
  return out;
}

std::vector<int> greedy_policy(const Snapshot& snap,
                               const std::vector<double>& values) {
  std::vector<int> actions(snap.nStates, 0);
  for (int s = 0; s < snap.nStates; ++s) {
    if (snap.terminal[s]) continue;
    double best = q_value(snap, values, s, 0);
    for (int a = 1; a < snap.nActions; ++a) {
      const double q = q_value(snap, values, s, a);
      if (q > best) {
        best = q;
        actions[s] = a;
      }
    }
  }
  return actions;
}

std::vector<double> policy_value(const Snapshot& snap, const Policy& policy,
                                 double tol, int maxIter) {
  if (!policy.is_stationary())
    throw std::invalid_argument("policy_value: needs a stationary policy");
  std::vector<double> v(snap.nStates, 0.0), next(snap.nStates, 0.0);
  for (int it = 0; it < maxIter; ++it) {
    double residual = 0.0;
    for (int s = 0; s < snap.nStates; ++s) {
      if (snap.terminal[s]) {
        next[s] = 0.0;
        continue;
      }
      double x = 0.0;
      if (policy.is_stochastic()) {
        const auto& row = policy.action_distribution(s);
        for (int a = 0; a < row.size(); ++a)
          if (row[a] > 0.0) x += row[a] * q_value(snap, v, s, a);
      } else {
        x = q_value(snap, v, s, policy.action(s));
      }
      next[s] = x;
      residual = std::max(residual, std::abs(x - v[s]));
    }
    v.swap(next);
    if (residual < tol) break;
  }
  return v;
}

}  // namespace nsplan
