#pragma once

#include <vector>

#include "nsplan/rng.hpp"

namespace nsplan {

/// Probability distribution over state indices 0..n-1.
/// Construction clamps negative round-off (> -1e-12) to zero, renormalizes
/// when the total is within 1e-9 of one and rejects anything further off.
class CategoricalDistribution {
 public:
  CategoricalDistribution() = default;
  explicit CategoricalDistribution(std::vector<double> p);

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }

  /// Indices with positive mass, ascending.
  std::vector<int> support() const;

  /// Inverse CDF draw; walks indices in order so results are reproducible.
  int sample(Rng& rng) const;

  /// Sum of p[i] * v[i]. v must have at least size() entries.
  double expectation(const std::vector<double>& v) const;

 private:
  std::vector<double> p_;
};

}  // namespace nsplan
