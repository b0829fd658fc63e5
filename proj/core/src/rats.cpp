#include "nsplan/rats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsplan {

double rollout_heuristic(const Snapshot& snap, int s, int depth, double lp,
                         double lr, const HeuristicSpec& spec) {
  if (snap.terminal[s]) return 0.0;
  if (spec.nRollouts <= 0)
    throw std::invalid_argument("heuristic: need at least one rollout");
  int h = spec.rolloutHorizon;
  if (h <= 0) {
    h = snap.gamma <= 0.0
            ? 1
            : static_cast<int>(
                  std::ceil(std::log(1e-3) / std::log(snap.gamma)));
    if (h < 1) h = 1;
    if (h > 10000) h = 10000;
  }
  double mean = 0.0;
  const std::uint64_t stream = derive_seed(spec.seed, s, depth);
  for (int i = 0; i < spec.nRollouts; ++i) {
    Rng rng(derive_seed(stream, i));
    double ret = 0.0, disc = 1.0;
    int cur = s;
    for (int step = 0; step < h && !snap.terminal[cur]; ++step) {
      const int a = spec.rolloutPolicy
                        ? spec.rolloutPolicy->sample_action(cur, 0, rng)
                        : static_cast<int>(rng.uniform_int(snap.nActions));
      const int k = snap.row(cur, a);
      const int s2 = snap.p[k].sample(rng);
      ret += disc * snap.r[k][s2];
      disc *= snap.gamma;
      cur = s2;
    }
    mean += ret;
  }
  mean /= spec.nRollouts;
  const double denom = std::max(1e-9, 1.0 - snap.gamma);
  return mean - depth * (lp + lr) / denom;
}

namespace {

struct TreeSearch {
  const Snapshot& snap;
  const StateMetric& metric;
  const RatsConfig& cfg;
  TreeStats stats;
  std::vector<std::vector<double>> memoVal;  // [depth][state]
  std::vector<std::vector<char>> memoSet;

  TreeSearch(const Snapshot& sn, const StateMetric& me, const RatsConfig& c)
      : snap(sn), metric(me), cfg(c) {
    stats.decisionNodesByDepth.assign(cfg.dMax, 0);
    if (cfg.memoize) {
      memoVal.assign(cfg.dMax, std::vector<double>(snap.nStates, 0.0));
      memoSet.assign(cfg.dMax, std::vector<char>(snap.nStates, 0));
    }
  }

  double leaf(int s, int depth) {
    ++stats.heuristicCalls;
    if (cfg.heuristic.kind == HeuristicKind::Zero) return 0.0;
    return rollout_heuristic(snap, s, depth, cfg.lp, cfg.lr, cfg.heuristic);
  }

  double decision(int s, int d) {
    if (snap.terminal[s]) return 0.0;
    if (d >= cfg.dMax) return leaf(s, d);
    if (cfg.memoize && memoSet[d][s]) {
      ++stats.memoHits;
      return memoVal[d][s];
    }
    ++stats.decisionNodes;
    ++stats.decisionNodesByDepth[d];
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < snap.nActions; ++a)
      best = std::max(best, chance(s, a, d));
    if (cfg.memoize) {
      memoVal[d][s] = best;
      memoSet[d][s] = 1;
    }
    return best;
  }

  // shifted arrival utility: depth-discounted reward plus continuation
  double child_utility(int rowIdx, int s2, int d) {
    double r = snap.r[rowIdx][s2] - cfg.lr * d;
    if (cfg.clipRewards && r < -1.0) r = -1.0;
    return r + snap.gamma * decision(s2, d + 1);
  }

  double chance(int s, int a, int d) {
    ++stats.chanceNodes;
    const int k = snap.row(s, a);
    const auto& p0 = snap.p[k];
    const double radius = cfg.lp * d;

    if (radius <= 0.0) {
      // the model is pinned at depth 0, only the support matters
      double v = 0.0;
      for (int s2 = 0; s2 < snap.nStates; ++s2)
        if (p0[s2] > 0.0) v += p0[s2] * child_utility(k, s2, d);
      return v;
    }

    // open ball: every state is a candidate point-mass target.
    // u stays local; child_utility recurses back into this function.
    const int n = snap.nStates;
    std::vector<double> u(n);
    double base = 0.0;
    for (int s2 = 0; s2 < n; ++s2) {
      u[s2] = child_utility(k, s2, d);
      base += p0[s2] * u[s2];
    }
    int bestState = -1;
    double bestScore = 0.0, bestMixed = 0.0;
    for (int s2 = 0; s2 < n; ++s2) {
      double dist = 0.0;
      for (int j = 0; j < n; ++j) dist += p0[j] * metric(j, s2);
      const double lam = dist <= radius ? 1.0 : radius / dist;
      const double mixed = (1.0 - lam) * base + lam * u[s2];
      const double score =
          cfg.targetRule == TargetRule::ValueArgmin ? u[s2] : mixed;
      if (bestState < 0 || score < bestScore) {
        bestState = s2;
        bestScore = score;
        bestMixed = mixed;
      }
    }
    return bestMixed;
  }
};

}  // namespace

RatsResult rats_plan(const Snapshot& snap, const StateMetric& metric, int s0,
                     const RatsConfig& cfg) {
  if (metric.size() != snap.nStates)
    throw std::invalid_argument("rats: metric does not match the snapshot");
  if (s0 < 0 || s0 >= snap.nStates)
    throw std::invalid_argument("rats: start state out of range");
  if (cfg.dMax < 1) throw std::invalid_argument("rats: dMax must be >= 1");
  if (cfg.lp < 0.0 || cfg.lr < 0.0)
    throw std::invalid_argument("rats: negative drift rate");

  RatsResult out;
  out.actionValues.assign(snap.nActions, 0.0);
  if (snap.terminal[s0]) return out;

  TreeSearch ts(snap, metric, cfg);
  ++ts.stats.decisionNodes;
  ++ts.stats.decisionNodesByDepth[0];
  out.rootValue = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < snap.nActions; ++a) {
    out.actionValues[a] = ts.chance(s0, a, 0);
    if (out.actionValues[a] > out.rootValue) {
      out.rootValue = out.actionValues[a];
      out.action = a;
    }
  }
  out.stats = std::move(ts.stats);
  return out;
}

}  // namespace nsplan
