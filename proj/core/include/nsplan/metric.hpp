#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nsplan {

enum class MetricKind { Discrete, Manhattan, Explicit };

std::string to_string(MetricKind k);

/// Metric over a finite state set, stored as a dense matrix.
/// Construction validates the metric axioms, so downstream code may assume
/// symmetry, d(x,x) = 0 and the triangle inequality.
class StateMetric {
 public:
  StateMetric() = default;

  /// d(x,y) = 1 for x != y, 0 otherwise.
  static StateMetric discrete(int n);

  /// |row_x - row_y| + |col_x - col_y| over per-state grid coordinates.
  static StateMetric manhattan(const std::vector<std::pair<int, int>>& coords);

  /// Arbitrary matrix, checked for the axioms.
  static StateMetric from_matrix(std::vector<std::vector<double>> d,
                                 MetricKind kind = MetricKind::Explicit);

  double operator()(int x, int y) const { return d_[x][y]; }
  int size() const { return static_cast<int>(d_.size()); }
  MetricKind kind() const { return kind_; }

  /// Largest pairwise distance. 0 for the empty or singleton set.
  double diameter() const { return diameter_; }

  const std::vector<std::vector<double>>& matrix() const { return d_; }

 private:
  std::vector<std::vector<double>> d_;
  MetricKind kind_ = MetricKind::Discrete;
  double diameter_ = 0.0;

  void validate() const;
};

}  // namespace nsplan
