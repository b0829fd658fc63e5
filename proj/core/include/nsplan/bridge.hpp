#pragma once

#include "nsplan/metric.hpp"
#include "nsplan/nsmdp.hpp"

namespace nsplan {

/// Two-goal gridworld on a 3 x 9 board. The start sits between a short
/// bridge to the right goal, flanked by holes above and below, and a longer
/// hole-free detour to the left goal:
///
///   . . . . . O O O .        O hole (enter: -1, episode over)
///   L . . . . S . . R        L/R goal (enter: +1), S start
///   . . . . . O O O .
///
/// Left and Right moves become slippery over time: at epoch t a fraction
/// min(misstepMax, kappa * t), scaled per board half, deviates to the
/// cell's up and down neighbors. epsilon in [0, 1] steers the degradation
/// between halves: the right half scales by max(epsilon, slipFloor), the
/// left by max(1 - epsilon, slipFloor). The floor keeps a residual slip on
/// the nominally clean side; set it to 0 for strictly one-sided decay.
/// Up and Down moves stay deterministic, and nothing is slippery at t = 0.
struct BridgeSpec {
  double epsilon = 0.5;
  double gamma = 0.9;
  double lp = 1.0;      // declared drift rate, actual is about 0.2 per epoch
  double lr = 0.0;
  double kappa = 0.05;  // slip growth per epoch
  double misstepMax = 0.45;
  double slipFloor = 0.2;
  int horizon = 24;
  MetricKind metric = MetricKind::Manhattan;
};

struct BridgeDomain {
  NSMDP nsmdp;
  StateMetric metric;
  int start = 0;
  int leftGoal = 0;
  int rightGoal = 0;

  static constexpr int kRows = 3;
  static constexpr int kCols = 9;
  static constexpr int kUp = 0;
  static constexpr int kRight = 1;
  static constexpr int kDown = 2;
  static constexpr int kLeft = 3;

  static int cell(int row, int col) { return row * kCols + col; }
  static int row_of(int s) { return s / kCols; }
  static int col_of(int s) { return s % kCols; }
};

BridgeDomain build_bridge(const BridgeSpec& spec);

}  // namespace nsplan
