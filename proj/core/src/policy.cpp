#include "nsplan/policy.hpp"

#include <stdexcept>

namespace nsplan {

Policy Policy::stationary(std::vector<int> actions) {
  if (actions.empty()) throw std::invalid_argument("policy: empty action map");
  for (int a : actions)
    if (a < 0) throw std::invalid_argument("policy: negative action index");
  Policy p;
  p.actions_ = std::move(actions);
  return p;
}

Policy Policy::stationary_stochastic(
    std::vector<CategoricalDistribution> rows) {
  if (rows.empty()) throw std::invalid_argument("policy: empty action map");
  Policy p;
  p.stochastic_ = true;
  p.rows_ = std::move(rows);
  return p;
}

Policy Policy::nonstationary(std::vector<std::vector<int>> perEpoch) {
  if (perEpoch.empty() || perEpoch.front().empty())
    throw std::invalid_argument("policy: empty action map");
  const std::size_t n = perEpoch.front().size();
  for (const auto& tab : perEpoch) {
    if (tab.size() != n)
      throw std::invalid_argument("policy: ragged epoch tables");
    for (int a : tab)
      if (a < 0) throw std::invalid_argument("policy: negative action index");
  }
  Policy p;
  p.epochActions_ = std::move(perEpoch);
  return p;
}

int Policy::action(int s, int t) const {
  if (stochastic_)
    throw std::logic_error("policy: deterministic action of a stochastic map");
  if (!epochActions_.empty()) {
    const int last = static_cast<int>(epochActions_.size()) - 1;
    return epochActions_[t > last ? last : (t < 0 ? 0 : t)][s];
  }
  return actions_[s];
}

int Policy::sample_action(int s, int t, Rng& rng) const {
  if (!stochastic_) return action(s, t);
  return rows_[s].sample(rng);
}

const CategoricalDistribution& Policy::action_distribution(int s) const {
  if (!stochastic_)
    throw std::logic_error("policy: no distribution for deterministic map");
  return rows_[s];
}

}  // namespace nsplan
