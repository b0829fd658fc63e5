#include "nsplan/distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace nsplan {

CategoricalDistribution::CategoricalDistribution(std::vector<double> p)
    : p_(std::move(p)) {
  if (p_.empty())
    throw std::invalid_argument("distribution: empty probability vector");
  double total = 0.0;
  for (double& v : p_) {
    if (!std::isfinite(v))
      throw std::invalid_argument("distribution: non-finite entry");
    if (v < 0.0) {
      if (v < -1e-12)
        throw std::invalid_argument("distribution: negative entry");
      v = 0.0;
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("distribution: mass sums to " +
                                std::to_string(total));
  if (total != 1.0)
    for (double& v : p_) v /= total;
}

std::vector<int> CategoricalDistribution::support() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (p_[i] > 0.0) out.push_back(i);
  return out;
}

int CategoricalDistribution::sample(Rng& rng) const {
  const double u = rng.uniform();
  double acc = 0.0;
  int last = 0;
  for (int i = 0; i < size(); ++i) {
    if (p_[i] <= 0.0) continue;
    acc += p_[i];
    last = i;
    if (u < acc) return i;
  }
  // round-off can leave acc a hair under 1
  return last;
}

double CategoricalDistribution::expectation(const std::vector<double>& v) const {
  double out = 0.0;
  for (int i = 0; i < size(); ++i) out += p_[i] * v[i];
  return out;
}

}  // namespace nsplan
