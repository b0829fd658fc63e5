#include "nsplan/nsmdp.hpp"

#include <cmath>
#include <stdexcept>

#include "nsplan/wasserstein.hpp"

namespace nsplan {

double Snapshot::expected_reward(int s, int a) const {
  const int k = row(s, a);
  double out = 0.0;
  for (int s2 = 0; s2 < nStates; ++s2) out += p[k][s2] * r[k][s2];
  return out;
}

NSMDP::NSMDP(int nStates, int nActions, int horizon, double gamma, double lp,
             double lr)
    : nStates_(nStates),
      nActions_(nActions),
      horizon_(horizon),
      gamma_(gamma),
      lp_(lp),
      lr_(lr),
      terminal_(nStates, 0) {
  if (nStates <= 0 || nActions <= 0 || horizon <= 0)
    throw std::invalid_argument("nsmdp: sizes must be positive");
  if (gamma < 0.0 || gamma >= 1.0)
    throw std::invalid_argument("nsmdp: gamma must be in [0, 1)");
  if (lp < 0.0 || lr < 0.0)
    throw std::invalid_argument("nsmdp: negative drift rate");
  p_.assign(horizon, std::vector<CategoricalDistribution>(nStates * nActions));
  r_.assign(horizon,
            std::vector<std::vector<double>>(
                nStates * nActions, std::vector<double>(nStates, 0.0)));
}

void NSMDP::set_trans(int t, int s, int a, CategoricalDistribution d) {
  if (d.size() != nStates_)
    throw std::invalid_argument("nsmdp: transition row has wrong length");
  p_[t][s * nActions_ + a] = std::move(d);
}

void NSMDP::set_rewards(int t, int s, int a, std::vector<double> rs) {
  if (static_cast<int>(rs.size()) != nStates_)
    throw std::invalid_argument("nsmdp: reward row has wrong length");
  r_[t][s * nActions_ + a] = std::move(rs);
}

double NSMDP::expected_reward(int t, int s, int a) const {
  const auto& row = p_[t][s * nActions_ + a];
  const auto& rs = r_[t][s * nActions_ + a];
  double out = 0.0;
  for (int s2 = 0; s2 < nStates_; ++s2) out += row[s2] * rs[s2];
  return out;
}

Snapshot NSMDP::snapshot(int t0) const {
  if (t0 < 0 || t0 >= horizon_)
    throw std::invalid_argument("nsmdp: snapshot epoch out of range");
  Snapshot snap;
  snap.nStates = nStates_;
  snap.nActions = nActions_;
  snap.gamma = gamma_;
  snap.terminal = terminal_;
  snap.p = p_[t0];
  snap.r = r_[t0];
  return snap;
}

std::pair<int, double> NSMDP::sample_transition(int t, int s, int a,
                                                Rng& rng) const {
  const auto& row = p_[t][s * nActions_ + a];
  const int s2 = row.sample(rng);
  return {s2, r_[t][s * nActions_ + a][s2]};
}

void NSMDP::validate() const {
  for (int t = 0; t < horizon_; ++t)
    for (int s = 0; s < nStates_; ++s)
      for (int a = 0; a < nActions_; ++a) {
        const auto& row = p_[t][s * nActions_ + a];
        if (row.size() != nStates_)
          throw std::invalid_argument("nsmdp: unset transition row");
        const auto& rs = r_[t][s * nActions_ + a];
        for (double v : rs)
          if (!(v >= -1.0 - 1e-12) || !(v <= 1.0 + 1e-12))
            throw std::invalid_argument("nsmdp: reward outside [-1, 1]");
        if (terminal_[s]) {
          if (std::abs(row[s] - 1.0) > 1e-12)
            throw std::invalid_argument(
                "nsmdp: terminal state does not self-loop");
          if (std::abs(rs[s]) > 1e-12)
            throw std::invalid_argument(
                "nsmdp: terminal self-loop reward is nonzero");
        }
      }
}

LipschitzReport NSMDP::verify_lipschitz(const StateMetric& metric,
                                        double tol) const {
  if (metric.size() != nStates_)
    throw std::invalid_argument("nsmdp: metric size mismatch");
  LipschitzReport rep;
  for (int t = 0; t + 1 < horizon_; ++t)
    for (int s = 0; s < nStates_; ++s)
      for (int a = 0; a < nActions_; ++a) {
        const int k = s * nActions_ + a;
        const double dw =
            w1_distance(p_[t][k].probs(), p_[t + 1][k].probs(), metric);
        if (dw > rep.maxTransitionRate) rep.maxTransitionRate = dw;
        for (int s2 = 0; s2 < nStates_; ++s2) {
          const double dr = std::abs(r_[t][k][s2] - r_[t + 1][k][s2]);
          if (dr > rep.maxRewardRate) rep.maxRewardRate = dr;
        }
      }
  rep.transitionOk = rep.maxTransitionRate <= lp_ + tol;
  rep.rewardOk = rep.maxRewardRate <= lr_ + tol;
  return rep;
}

}  // namespace nsplan
