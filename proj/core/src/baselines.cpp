#include "nsplan/baselines.hpp"

#include <algorithm>
#include <stdexcept>

namespace nsplan {

SnapshotPlanResult dp_snapshot_action(const Snapshot& snap, int s0,
                                      double tol) {
  if (s0 < 0 || s0 >= snap.nStates)
    throw std::invalid_argument("dp_snapshot: start state out of range");
  SnapshotPlanResult out;
  auto vi = value_iteration(snap, tol);
  out.values = std::move(vi.values);
  out.iterations = vi.iterations;
  out.action = greedy_policy(snap, out.values)[s0];
  return out;
}

Policy dp_nsmdp_policy(const NSMDP& m, int episodeLen, double tol) {
  if (episodeLen < 1)
    throw std::invalid_argument("dp_nsmdp: episode length must be >= 1");
  if (episodeLen > m.horizon())
    throw std::invalid_argument("dp_nsmdp: episode longer than the horizon");
  const int n = m.n_states();
  const int nA = m.n_actions();
  const int tailEpoch = std::min(episodeLen, m.horizon() - 1);

  // value of continuing past the episode end, frozen at the last slice
  std::vector<double> vNext = value_iteration(m.snapshot(tailEpoch), tol).values;

  std::vector<std::vector<int>> actions(episodeLen, std::vector<int>(n, 0));
  for (int t = episodeLen - 1; t >= 0; --t) {
    std::vector<double> vCur(n, 0.0);
    for (int s = 0; s < n; ++s) {
      if (m.is_terminal(s)) continue;
      double best = 0.0;
      int bestA = 0;
      for (int a = 0; a < nA; ++a) {
        const auto& row = m.trans(t, s, a);
        double q = 0.0;
        for (int s2 = 0; s2 < n; ++s2) {
          const double w = row[s2];
          if (w == 0.0) continue;
          q += w * (m.reward(t, s, a, s2) + m.gamma() * vNext[s2]);
        }
        if (a == 0 || q > best) {
          best = q;
          bestA = a;
        }
      }
      vCur[s] = best;
      actions[t][s] = bestA;
    }
    vNext = std::move(vCur);
  }
  return Policy::nonstationary(std::move(actions));
}

}  // namespace nsplan
