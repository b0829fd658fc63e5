#include "nsplan/worst_case.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "nsplan/wasserstein.hpp"

namespace nsplan {
namespace {

void check_admissible(const AdmissibleSet& adm) {
  if (adm.metric == nullptr)
    throw std::invalid_argument("worst_case: missing metric");
  if (adm.centerP.size() != adm.metric->size())
    throw std::invalid_argument("worst_case: center row does not match metric");
  if (adm.radiusP < 0.0 || adm.radiusR < 0.0)
    throw std::invalid_argument("worst_case: negative radius");
}

}  // namespace

double worst_case_reward(double centerR, double radiusR, bool clip,
                         double bound) {
  if (radiusR < 0.0)
    throw std::invalid_argument("worst_case_reward: negative radius");
  const double r = centerR - radiusR;
  return clip ? std::max(r, -bound) : r;
}

WorstCaseSolution worst_case_transition(
    const AdmissibleSet& adm, const std::vector<StateValue>& childValues,
    TargetRule rule) {
  check_admissible(adm);
  if (childValues.empty())
    throw std::invalid_argument("worst_case: no child values");
  const int n = adm.centerP.size();
  std::vector<char> covered(n, 0);
  for (const auto& cv : childValues) {
    if (cv.state < 0 || cv.state >= n)
      throw std::invalid_argument("worst_case: child state out of range");
    if (covered[cv.state])
      throw std::invalid_argument("worst_case: duplicate child state");
    covered[cv.state] = 1;
  }
  for (int s = 0; s < n; ++s)
    if (adm.centerP[s] > 0.0 && !covered[s])
      throw std::invalid_argument(
          "worst_case: support state missing a child value");

  double base = 0.0;
  for (const auto& cv : childValues) base += adm.centerP[cv.state] * cv.value;

  int bestState = -1;
  double bestLambda = 0.0, bestScore = 0.0, bestChild = 0.0;
  for (const auto& cv : childValues) {
    double lam = 0.0;
    if (adm.radiusP > 0.0) {
      const double dist =
          w1_to_dirac(adm.centerP.probs(), cv.state, *adm.metric);
      lam = dist <= adm.radiusP ? 1.0 : adm.radiusP / dist;
    }
    const double score = rule == TargetRule::ValueArgmin
                             ? cv.value
                             : (1.0 - lam) * base + lam * cv.value;
    if (bestState < 0 || score < bestScore ||
        (score == bestScore && cv.state < bestState)) {
      bestState = cv.state;
      bestLambda = lam;
      bestScore = score;
      bestChild = cv.value;
    }
  }

  WorstCaseSolution out;
  out.sDagger = bestState;
  out.lambda = bestLambda;
  out.pHat.resize(n);
  for (int s = 0; s < n; ++s)
    out.pHat[s] = (1.0 - bestLambda) * adm.centerP[s];
  out.pHat[bestState] += bestLambda;
  out.value = (1.0 - bestLambda) * base + bestLambda * bestChild;
  return out;
}

WorstCaseSolution chance_node_value(const AdmissibleSet& adm,
                                    const std::vector<StateValue>& childValues,
                                    double gamma, TargetRule rule,
                                    bool clipReward) {
  WorstCaseSolution out = worst_case_transition(adm, childValues, rule);
  out.rHat = worst_case_reward(adm.centerR, adm.radiusR, clipReward);
  out.value = out.rHat + gamma * out.value;
  return out;
}

//----------------------------------------------------------------------------
// exact ball minimizer via the dual in the unit shift price

OracleSolution lp_oracle_worst_transition(
    const AdmissibleSet& adm, const std::vector<double>& childValues) {
  check_admissible(adm);
  const int n = adm.metric->size();
  if (static_cast<int>(childValues.size()) != n)
    throw std::invalid_argument(
        "lp_oracle: child values must cover every state");
  const auto& m = adm.centerP;
  const auto& d = *adm.metric;
  const auto& V = childValues;
  const double B = adm.radiusP;

  OracleSolution out;
  out.q = m.probs();
  out.value = m.expectation(V);
  if (B <= 0.0) return out;

  // prices where some source's cheapest line V[j] + lam d(i,j) changes hands
  std::vector<double> cand{0.0};
  for (int i = 0; i < n; ++i) {
    if (m[i] <= 0.0) continue;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double den = d(i, k) - d(i, j);
        if (den <= 1e-15) continue;
        const double lam = (V[j] - V[k]) / den;
        if (lam > 0.0 && std::isfinite(lam)) cand.push_back(lam);
      }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](double a, double b) {
                           return b - a <= 1e-12 * (1.0 + std::abs(b));
                         }),
             cand.end());
  // beyond the last crossing every source keeps its mass at home for free
  cand.push_back(cand.back() + 1.0);

  // cheapest spend that keeps every source on a tied minimizer
  const auto cheapest_spend = [&](double lam) {
    double spend = 0.0;
    for (int i = 0; i < n; ++i) {
      if (m[i] <= 0.0) continue;
      double cmin = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j)
        cmin = std::min(cmin, V[j] + lam * d(i, j));
      const double tieTol = 1e-9 * (1.0 + std::abs(cmin));
      double dmin = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j)
        if (V[j] + lam * d(i, j) <= cmin + tieTol)
          dmin = std::min(dmin, d(i, j));
      spend += m[i] * dmin;
    }
    return spend;
  };

  // smallest price whose cheapest spend fits the budget; the spend is
  // nonincreasing in the price, so bisect over the candidates
  const auto fits = [&](std::size_t k) {
    return cheapest_spend(cand[k]) <= B + 1e-12;
  };
  std::size_t hi = cand.size() - 1;
  if (fits(0)) {
    hi = 0;
  } else {
    std::size_t lo = 0;
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (fits(mid))
        hi = mid;
      else
        lo = mid;
    }
  }
  const double lambda = cand[hi];
  out.lambdaDual = lambda;

  // primal plan on the tied targets: park mass at the nearest tie, then
  // stretch toward the farthest tie until the budget is spent exactly
  std::vector<double> q(n, 0.0);
  std::vector<int> jLo(n, -1), jHi(n, -1);
  double spend = 0.0;
  for (int i = 0; i < n; ++i) {
    if (m[i] <= 0.0) continue;
    double cmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) cmin = std::min(cmin, V[j] + lambda * d(i, j));
    const double tieTol = 1e-9 * (1.0 + std::abs(cmin));
    for (int j = 0; j < n; ++j) {
      if (V[j] + lambda * d(i, j) > cmin + tieTol) continue;
      if (jLo[i] < 0 || d(i, j) < d(i, jLo[i])) jLo[i] = j;
      if (jHi[i] < 0 || d(i, j) > d(i, jHi[i])) jHi[i] = j;
    }
    q[jLo[i]] += m[i];
    spend += m[i] * d(i, jLo[i]);
  }
  if (lambda > 0.0) {
    double slack = B - spend;
    for (int i = 0; i < n && slack > 1e-15; ++i) {
      if (m[i] <= 0.0) continue;
      const double dd = d(i, jHi[i]) - d(i, jLo[i]);
      if (dd <= 1e-15) continue;
      const double move = std::min(m[i], slack / dd);
      q[jLo[i]] -= move;
      q[jHi[i]] += move;
      slack -= move * dd;
    }
  }
  for (double& x : q)
    if (x < 0.0) x = 0.0;

  out.q = std::move(q);
  out.value = 0.0;
  for (int j = 0; j < n; ++j) out.value += out.q[j] * V[j];
  return out;
}

//----------------------------------------------------------------------------
// chained vs relaxed adversary on tiny instances

namespace {

std::vector<std::vector<double>> simplex_grid(int n, int M) {
  std::vector<std::vector<double>> out;
  std::vector<int> cur(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      cur[pos] = left;
      std::vector<double> q(n);
      for (int i = 0; i < n; ++i) q[i] = static_cast<double>(cur[i]) / M;
      out.push_back(std::move(q));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, M);
  return out;
}

}  // namespace

BruteForceReport brute_force_worst_nsmdp(const NSMDP& m,
                                         const StateMetric& metric,
                                         const Policy& policy,
                                         const BruteForceOptions& opt) {
  const int n = m.n_states();
  const int H = m.horizon();
  if (n > 4 || m.n_actions() > 2 || H > 3)
    throw std::invalid_argument(
        "brute force: instance beyond the 4-state, 2-action, horizon-3 cap");
  if (policy.is_stochastic() || !policy.is_stationary())
    throw std::invalid_argument(
        "brute force: needs a deterministic stationary policy");
  if (metric.size() != n)
    throw std::invalid_argument("brute force: metric size mismatch");
  if (!(opt.gridResolution > 0.0 && opt.gridResolution <= 0.5))
    throw std::invalid_argument("brute force: grid resolution out of range");

  const double gamma = m.gamma();
  const double lp = m.lipschitz_p();
  const double lr = m.lipschitz_r();

  std::vector<int> used;
  for (int s = 0; s < n; ++s)
    if (!m.is_terminal(s)) used.push_back(s);
  const int R = static_cast<int>(used.size());

  // pessimistic reward descent, shared by both adversaries
  std::vector<std::vector<double>> Rw(H, std::vector<double>(n, 0.0));
  for (int t = 0; t < H; ++t)
    for (int s : used)
      Rw[t][s] =
          std::max(-1.0, m.expected_reward(0, s, policy.action(s)) - t * lr);

  BruteForceReport rep;

  // relaxed side: independent balls of radius lp * t, exact per node
  {
    std::vector<double> vNext(n, 0.0), vCur(n, 0.0);
    for (int t = H - 1; t >= 0; --t) {
      for (int s = 0; s < n; ++s) {
        if (m.is_terminal(s)) {
          vCur[s] = 0.0;
          continue;
        }
        double cont = 0.0;
        if (t < H - 1) {
          AdmissibleSet adm;
          adm.centerP = m.trans(0, s, policy.action(s));
          adm.radiusP = lp * t;
          adm.metric = &metric;
          cont = lp_oracle_worst_transition(adm, vNext).value;
        }
        vCur[s] = Rw[t][s] + gamma * cont;
      }
      vNext = vCur;
    }
    rep.relaxed = vNext;
  }

  // chained side. The final epoch's transitions never pay out, so with the
  // horizon cap only epoch 1 is enumerated; epoch 0 is the known model.
  const auto reward_at = [&](const std::vector<std::vector<double>>& alpha,
                             int t, std::vector<double>& acc) {
    const double g = std::pow(gamma, t);
    for (int s0 = 0; s0 < n; ++s0) {
      double x = 0.0;
      for (int s = 0; s < n; ++s) x += alpha[s0][s] * Rw[t][s];
      acc[s0] += g * x;
    }
  };
  const auto step = [&](const std::vector<std::vector<double>>& alpha,
                        const std::vector<const std::vector<double>*>& rows) {
    // rows[r] is the transition row of used[r]; terminal states absorb
    std::vector<std::vector<double>> next(n, std::vector<double>(n, 0.0));
    for (int s0 = 0; s0 < n; ++s0)
      for (int s = 0; s < n; ++s) {
        const double w = alpha[s0][s];
        if (w == 0.0) continue;
        if (m.is_terminal(s)) {
          next[s0][s] += w;
          continue;
        }
        const int r =
            static_cast<int>(std::lower_bound(used.begin(), used.end(), s) -
                             used.begin());
        const auto& row = *rows[r];
        for (int s2 = 0; s2 < n; ++s2) next[s0][s2] += w * row[s2];
      }
    return next;
  };

  std::vector<std::vector<double>> alpha(n, std::vector<double>(n, 0.0));
  for (int s0 = 0; s0 < n; ++s0) alpha[s0][s0] = 1.0;
  std::vector<double> acc(n, 0.0);
  reward_at(alpha, 0, acc);
  rep.sequencesEvaluated = 1;

  if (H == 1) {
    rep.chained = acc;
  } else {
    std::vector<const std::vector<double>*> rows0(R);
    for (int r = 0; r < R; ++r)
      rows0[r] = &m.trans(0, used[r], policy.action(used[r])).probs();
    auto alpha1 = step(alpha, rows0);
    reward_at(alpha1, 1, acc);
    if (H == 2) {
      rep.chained = acc;
    } else {
      // enumerate epoch-1 rows on a simplex grid inside the drift ball
      const int M = std::max<int>(1, std::lround(1.0 / opt.gridResolution));
      const auto grid = simplex_grid(n, M);
      std::vector<std::vector<const std::vector<double>*>> cands(R);
      for (int r = 0; r < R; ++r) {
        cands[r].push_back(rows0[r]);  // staying put is always feasible
        for (const auto& g : grid)
          if (w1_distance(*rows0[r], g, metric) <= lp + 1e-9)
            cands[r].push_back(&g);
      }
      double est = 1.0;
      for (int r = 0; r < R; ++r) est *= static_cast<double>(cands[r].size());
      if (est > static_cast<double>(opt.comboLimit))
        throw std::invalid_argument(
            "brute force: sequence count exceeds comboLimit");

      rep.chained.assign(n, std::numeric_limits<double>::infinity());
      rep.sequencesEvaluated = 0;
      std::vector<std::size_t> idx(R, 0);
      std::vector<const std::vector<double>*> rows1(R);
      for (;;) {
        for (int r = 0; r < R; ++r) rows1[r] = cands[r][idx[r]];
        auto alpha2 = step(alpha1, rows1);
        std::vector<double> acc2 = acc;
        reward_at(alpha2, 2, acc2);
        for (int s0 = 0; s0 < n; ++s0)
          rep.chained[s0] = std::min(rep.chained[s0], acc2[s0]);
        ++rep.sequencesEvaluated;

        int r = R - 1;
        while (r >= 0 && ++idx[r] == cands[r].size()) idx[r--] = 0;
        if (r < 0) break;
      }
    }
  }

  rep.gap.resize(n);
  for (int s0 = 0; s0 < n; ++s0)
    rep.gap[s0] = rep.chained[s0] - rep.relaxed[s0];
  return rep;
}

}  // namespace nsplan
