#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nsplan/distribution.hpp"
#include "nsplan/metric.hpp"
#include "nsplan/rng.hpp"

namespace nsplan {

/// Stationary slice of a non-stationary MDP at one decision epoch.
/// Planners that must not peek at future dynamics receive one of these.
struct Snapshot {
  int nStates = 0;
  int nActions = 0;
  double gamma = 0.0;
  std::vector<char> terminal;                    // [s]
  std::vector<CategoricalDistribution> p;        // [s * nActions + a]
  std::vector<std::vector<double>> r;            // [s * nActions + a][s']

  int row(int s, int a) const { return s * nActions + a; }
  const CategoricalDistribution& trans(int s, int a) const {
    return p[row(s, a)];
  }
  double reward(int s, int a, int s2) const { return r[row(s, a)][s2]; }

  /// Sum over s' of p(s'|s,a) * r(s,a,s').
  double expected_reward(int s, int a) const;
};

struct LipschitzReport {
  double maxTransitionRate = 0.0;  // max over (t,s,a) of W1 drift per epoch
  double maxRewardRate = 0.0;      // max over (t,s,a,s') of |r| drift per epoch
  bool transitionOk = false;
  bool rewardOk = false;
  bool ok() const { return transitionOk && rewardOk; }
};

/// Finite-horizon MDP whose transition and reward tables are indexed by
/// decision epoch. Epochs run 0..horizon-1; the value after the final epoch
/// is zero. Rewards depend on the arrival state and are bounded to [-1, 1].
/// Terminal states self-loop with zero reward at every epoch.
class NSMDP {
 public:
  NSMDP() = default;
  NSMDP(int nStates, int nActions, int horizon, double gamma, double lp,
        double lr);

  int n_states() const { return nStates_; }
  int n_actions() const { return nActions_; }
  int horizon() const { return horizon_; }
  double gamma() const { return gamma_; }
  double lipschitz_p() const { return lp_; }
  double lipschitz_r() const { return lr_; }

  bool is_terminal(int s) const { return terminal_[s] != 0; }
  const std::vector<char>& terminal_mask() const { return terminal_; }
  void set_terminal(int s, bool v) { terminal_[s] = v ? 1 : 0; }

  const CategoricalDistribution& trans(int t, int s, int a) const {
    return p_[t][s * nActions_ + a];
  }
  double reward(int t, int s, int a, int s2) const {
    return r_[t][s * nActions_ + a][s2];
  }
  void set_trans(int t, int s, int a, CategoricalDistribution d);
  void set_rewards(int t, int s, int a, std::vector<double> rs);

  /// Sum over s' of p_t(s'|s,a) * r_t(s,a,s').
  double expected_reward(int t, int s, int a) const;

  /// Stationary slice at epoch t0.
  Snapshot snapshot(int t0) const;

  /// One environment step under the true epoch-t dynamics.
  /// Returns the arrival state and the realized reward.
  std::pair<int, double> sample_transition(int t, int s, int a,
                                           Rng& rng) const;

  /// Checks every table row is a distribution, rewards are in [-1, 1], and
  /// terminal states absorb with zero reward. Throws on violation.
  void validate() const;

  /// Measures per-epoch drift of each (s,a) row against the declared rates.
  LipschitzReport verify_lipschitz(const StateMetric& metric,
                                   double tol = 1e-9) const;

  // optional presentation metadata, may be empty
  std::vector<std::string> stateNames;
  std::vector<std::string> actionNames;
  std::vector<std::pair<int, int>> coords;  // grid (row, col) per state

 private:
  int nStates_ = 0;
  int nActions_ = 0;
  int horizon_ = 0;
  double gamma_ = 0.0;
  double lp_ = 0.0;
  double lr_ = 0.0;
  std::vector<char> terminal_;
  std::vector<std::vector<CategoricalDistribution>> p_;  // [t][s*A+a]
  std::vector<std::vector<std::vector<double>>> r_;      // [t][s*A+a][s']
};

}  // namespace nsplan
