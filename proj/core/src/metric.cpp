#include "nsplan/metric.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace nsplan {

std::string to_string(MetricKind k) {
  switch (k) {
    case MetricKind::Discrete:
      return "discrete";
    case MetricKind::Manhattan:
      return "manhattan";
    case MetricKind::Explicit:
      return "explicit";
  }
  return "?";
}

StateMetric StateMetric::discrete(int n) {
  if (n <= 0) throw std::invalid_argument("metric: need at least one state");
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 1.0));
  for (int i = 0; i < n; ++i) d[i][i] = 0.0;
  return from_matrix(std::move(d), MetricKind::Discrete);
}

StateMetric StateMetric::manhattan(
    const std::vector<std::pair<int, int>>& coords) {
  const int n = static_cast<int>(coords.size());
  if (n <= 0) throw std::invalid_argument("metric: need at least one state");
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d[i][j] = std::abs(coords[i].first - coords[j].first) +
                std::abs(coords[i].second - coords[j].second);
  return from_matrix(std::move(d), MetricKind::Manhattan);
}

StateMetric StateMetric::from_matrix(std::vector<std::vector<double>> d,
                                     MetricKind kind) {
  StateMetric m;
  m.d_ = std::move(d);
  m.kind_ = kind;
  m.validate();
  for (const auto& row : m.d_)
    for (double v : row)
      if (v > m.diameter_) m.diameter_ = v;
  return m;
}

void StateMetric::validate() const {
  const int n = static_cast<int>(d_.size());
  if (n == 0) throw std::invalid_argument("metric: empty matrix");
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(d_[i].size()) != n)
      throw std::invalid_argument("metric: matrix is not square");
  const double tol = 1e-9;
  for (int i = 0; i < n; ++i) {
    if (std::abs(d_[i][i]) > tol)
      throw std::invalid_argument("metric: d(x,x) != 0");
    for (int j = 0; j < n; ++j) {
      if (!(d_[i][j] >= 0.0) || !std::isfinite(d_[i][j]))
        throw std::invalid_argument("metric: negative or non-finite entry");
      if (i != j && d_[i][j] <= tol)
        throw std::invalid_argument("metric: distinct states at distance 0");
      if (std::abs(d_[i][j] - d_[j][i]) > tol)
        throw std::invalid_argument("metric: asymmetric matrix");
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (d_[i][j] > d_[i][k] + d_[k][j] + tol)
          throw std::invalid_argument("metric: triangle inequality violated");
}

}  // namespace nsplan
