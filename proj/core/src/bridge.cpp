#include "nsplan/bridge.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nsplan {
namespace {

constexpr int kRows = BridgeDomain::kRows;
constexpr int kCols = BridgeDomain::kCols;
constexpr int kN = kRows * kCols;

int move(int s, int action) {
  int row = BridgeDomain::row_of(s);
  int col = BridgeDomain::col_of(s);
  switch (action) {
    case BridgeDomain::kUp:
      row = std::max(0, row - 1);
      break;
    case BridgeDomain::kRight:
      col = std::min(kCols - 1, col + 1);
      break;
    case BridgeDomain::kDown:
      row = std::min(kRows - 1, row + 1);
      break;
    case BridgeDomain::kLeft:
      col = std::max(0, col - 1);
      break;
  }
  return BridgeDomain::cell(row, col);
}

}  // namespace

BridgeDomain build_bridge(const BridgeSpec& spec) {
  if (spec.epsilon < 0.0 || spec.epsilon > 1.0)
    throw std::invalid_argument("bridge: epsilon must be in [0, 1]");
  if (spec.slipFloor < 0.0 || spec.slipFloor > 1.0)
    throw std::invalid_argument("bridge: slip floor must be in [0, 1]");
  if (spec.kappa < 0.0) throw std::invalid_argument("bridge: negative kappa");
  if (spec.misstepMax < 0.0 || spec.misstepMax > 0.45)
    throw std::invalid_argument("bridge: misstep cap must be in [0, 0.45]");
  if (spec.horizon < 1) throw std::invalid_argument("bridge: empty horizon");

  BridgeDomain dom;
  dom.start = BridgeDomain::cell(1, 5);
  dom.leftGoal = BridgeDomain::cell(1, 0);
  dom.rightGoal = BridgeDomain::cell(1, 8);

  const std::vector<int> holes = {
      BridgeDomain::cell(0, 5), BridgeDomain::cell(0, 6),
      BridgeDomain::cell(0, 7), BridgeDomain::cell(2, 5),
      BridgeDomain::cell(2, 6), BridgeDomain::cell(2, 7)};

  std::vector<double> arrival(kN, 0.0);  // reward by arrival cell
  arrival[dom.leftGoal] = 1.0;
  arrival[dom.rightGoal] = 1.0;
  for (int h : holes) arrival[h] = -1.0;

  dom.nsmdp = NSMDP(kN, 4, spec.horizon, spec.gamma, spec.lp, spec.lr);
  dom.nsmdp.set_terminal(dom.leftGoal, true);
  dom.nsmdp.set_terminal(dom.rightGoal, true);
  for (int h : holes) dom.nsmdp.set_terminal(h, true);

  // the hole-flanked half keeps a floored residual slip; the detour half's
  // degradation is exactly the epsilon dial
  const double leftScale = 1.0 - spec.epsilon;
  const double rightScale = std::max(spec.epsilon, spec.slipFloor);

  for (int t = 0; t < spec.horizon; ++t) {
    const double misstep = std::min(spec.misstepMax, spec.kappa * t);
    for (int s = 0; s < kN; ++s) {
      for (int a = 0; a < 4; ++a) {
        std::vector<double> p(kN, 0.0);
        std::vector<double> r(kN, 0.0);
        if (dom.nsmdp.is_terminal(s)) {
          p[s] = 1.0;
        } else {
          r = arrival;
          const bool slippery =
              (a == BridgeDomain::kLeft || a == BridgeDomain::kRight) &&
              misstep > 0.0;
          if (!slippery) {
            p[move(s, a)] = 1.0;
          } else {
            const double scale =
                BridgeDomain::col_of(s) <= 4 ? leftScale : rightScale;
            const double slip = misstep * scale;
            p[move(s, a)] += 1.0 - 2.0 * slip;
            p[move(s, BridgeDomain::kUp)] += slip;
            p[move(s, BridgeDomain::kDown)] += slip;
          }
        }
        dom.nsmdp.set_trans(t, s, a, CategoricalDistribution(std::move(p)));
        dom.nsmdp.set_rewards(t, s, a, std::move(r));
      }
    }
  }

  std::vector<std::pair<int, int>> coords(kN);
  for (int s = 0; s < kN; ++s)
    coords[s] = {BridgeDomain::row_of(s), BridgeDomain::col_of(s)};
  dom.nsmdp.coords = coords;
  dom.metric = spec.metric == MetricKind::Manhattan
                   ? StateMetric::manhattan(coords)
                   : StateMetric::discrete(kN);

  dom.nsmdp.stateNames.resize(kN);
  for (int s = 0; s < kN; ++s)
    dom.nsmdp.stateNames[s] = "r" + std::to_string(BridgeDomain::row_of(s)) +
                              "c" + std::to_string(BridgeDomain::col_of(s));
  dom.nsmdp.actionNames = {"up", "right", "down", "left"};
  return dom;
}

}  // namespace nsplan
