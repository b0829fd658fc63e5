#pragma once

#include <vector>

#include "nsplan/distribution.hpp"
#include "nsplan/rng.hpp"

namespace nsplan {

/// Action map over states. Three flavors: stationary deterministic,
/// stationary stochastic, and per-epoch deterministic (the last epoch's
/// table is reused beyond its range).
class Policy {
 public:
  Policy() = default;

  static Policy stationary(std::vector<int> actions);
  static Policy stationary_stochastic(std::vector<CategoricalDistribution> rows);
  static Policy nonstationary(std::vector<std::vector<int>> perEpoch);

  bool is_stochastic() const { return stochastic_; }
  bool is_stationary() const { return epochActions_.empty(); }
  int n_epochs() const { return static_cast<int>(epochActions_.size()); }

  /// Deterministic action at (s, t). Throws for stochastic policies.
  int action(int s, int t = 0) const;

  /// Draws an action; deterministic policies ignore the rng.
  int sample_action(int s, int t, Rng& rng) const;

  const CategoricalDistribution& action_distribution(int s) const;

 private:
  bool stochastic_ = false;
  std::vector<int> actions_;                        // stationary det
  std::vector<CategoricalDistribution> rows_;       // stationary stochastic
  std::vector<std::vector<int>> epochActions_;      // per-epoch det
};

}  // namespace nsplan
