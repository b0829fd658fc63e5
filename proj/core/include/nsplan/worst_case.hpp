#pragma once

#include <cstdint>
#include <vector>

#include "nsplan/distribution.hpp"
#include "nsplan/metric.hpp"
#include "nsplan/nsmdp.hpp"
#include "nsplan/policy.hpp"

namespace nsplan {

/// How the adversary picks the point-mass component of a shifted row.
///  ValueArgmin: the evaluated state with the smallest child value, no
///    matter how much mass can actually reach it.
///  BestResponse: the state whose mixture realizes the smallest shifted
///    expectation. Continuous in the child values and never better for the
///    planner than ValueArgmin.
/// Ties break toward the lowest state index under both rules.
enum class TargetRule { ValueArgmin, BestResponse };

/// Ball of plausible models around a known row: transition rows within W1
/// distance radiusP of centerP, expected rewards within radiusR of centerR.
struct AdmissibleSet {
  CategoricalDistribution centerP;
  double centerR = 0.0;
  double radiusP = 0.0;
  double radiusR = 0.0;
  const StateMetric* metric = nullptr;
};

/// Child value for one evaluated state.
struct StateValue {
  int state;
  double value;
};

struct WorstCaseSolution {
  std::vector<double> pHat;  // shifted transition row, full length
  double lambda = 0.0;       // weight of the point-mass component
  int sDagger = -1;          // point-mass target
  double rHat = 0.0;         // shifted expected reward
  double value = 0.0;        // backup value, see the producing function
};

/// Smallest expected reward in the ball, floored at -bound when clip is set.
double worst_case_reward(double centerR, double radiusR, bool clip = true,
                         double bound = 1.0);

/// Closed-form pessimistic shift of a transition row: mix the center with a
/// point mass at the chosen target, weight min(1, radiusP / W1(dirac,
/// center)). Candidate targets are exactly the states in childValues, which
/// must cover the center's support. value is <pHat, child values>.
WorstCaseSolution worst_case_transition(
    const AdmissibleSet& adm, const std::vector<StateValue>& childValues,
    TargetRule rule = TargetRule::ValueArgmin);

/// Pessimistic backup of a chance node:
/// value = rHat + gamma * <pHat, child values>.
WorstCaseSolution chance_node_value(const AdmissibleSet& adm,
                                    const std::vector<StateValue>& childValues,
                                    double gamma,
                                    TargetRule rule = TargetRule::ValueArgmin,
                                    bool clipReward = true);

/// Exact minimizer of <q, v> over the ball W1(q, centerP) <= radiusP.
/// Works through the concave piecewise-linear dual in the unit shift price:
/// crossing prices of the source-wise support lines are enumerated, the
/// smallest price whose cheapest tied spend fits the budget is located by
/// bisection, and a primal plan is rebuilt on the tied targets to spend the
/// budget exactly. childValues must cover every state. Candidate pricing is
/// cubic in |S|, so this is a reference solver, not a planner component.
struct OracleSolution {
  std::vector<double> q;
  double value = 0.0;
  double lambdaDual = 0.0;
};
OracleSolution lp_oracle_worst_transition(
    const AdmissibleSet& adm, const std::vector<double>& childValues);

/// Exhaustively compares two adversary models for a fixed deterministic
/// stationary policy: the chained worst case, where each epoch's rows drift
/// at most lipschitz_p from the previous epoch's choice, against the relaxed
/// per-node worst case with independent balls of radius lipschitz_p * t
/// around the epoch-0 rows. Expected rewards follow the same pessimistic
/// descent on both sides, so the gap isolates the transition relaxation.
/// The chained side walks a simplex grid per free row, which keeps the
/// reported gap an overestimate; it is nonnegative either way because every
/// chain-feasible sequence lies inside the relaxed balls.
/// Refuses instances beyond 4 states, 2 actions or horizon 3, and aborts
/// when the sequence count passes comboLimit.
struct BruteForceOptions {
  double gridResolution = 0.1;
  std::uint64_t comboLimit = 20'000'000;
};
struct BruteForceReport {
  std::vector<double> chained;  // per start state
  std::vector<double> relaxed;  // per start state
  std::vector<double> gap;      // chained - relaxed
  std::uint64_t sequencesEvaluated = 0;
};
BruteForceReport brute_force_worst_nsmdp(const NSMDP& m,
                                         const StateMetric& metric,
                                         const Policy& policy,
                                         const BruteForceOptions& opt = {});

}  // namespace nsplan
