#include "nsplan/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nsplan {
namespace {

std::vector<double> random_dense_row(int n, double uniformMix, Rng& rng) {
  std::vector<double> p(n);
  double total = 0.0;
  for (double& x : p) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  if (total <= 0.0) total = 1.0;
  for (int i = 0; i < n; ++i)
    p[i] = (1.0 - uniformMix) * (p[i] / total) + uniformMix / n;
  return p;
}

double clip1(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

GeneratedNsmdp generate_nsmdp(const GeneratorSpec& spec) {
  const int n = spec.nStates;
  const int nA = spec.nActions;
  if (n < 2 || nA < 1 || spec.horizon < 1)
    throw std::invalid_argument("generator: sizes too small");
  if (spec.uniformMix < 0.0 || spec.uniformMix > 1.0)
    throw std::invalid_argument("generator: uniform mix must be in [0, 1]");
  if (spec.terminalFraction < 0.0 || spec.terminalFraction >= 1.0)
    throw std::invalid_argument(
        "generator: terminal fraction must be in [0, 1)");

  Rng rng(splitmix64(spec.seed));

  GeneratedNsmdp out;
  std::vector<std::pair<int, int>> cells;
  if (spec.metric == MetricKind::Discrete) {
    out.metric = StateMetric::discrete(n);
  } else if (spec.metric == MetricKind::Manhattan) {
    const int side = static_cast<int>(std::ceil(std::sqrt(double(n)))) + 1;
    for (int r = 0; r < side; ++r)
      for (int c = 0; c < side; ++c) cells.push_back({r, c});
    for (std::size_t i = cells.size() - 1; i > 0; --i)
      std::swap(cells[i], cells[rng.uniform_int(i + 1)]);
    cells.resize(n);
    out.metric = StateMetric::manhattan(cells);
  } else {
    throw std::invalid_argument(
        "generator: metric must be discrete or manhattan");
  }

  out.nsmdp = NSMDP(n, nA, spec.horizon, spec.gamma, spec.lp, spec.lr);
  out.nsmdp.coords = cells;
  const int nTerminal = static_cast<int>(spec.terminalFraction * n);
  for (int s = n - nTerminal; s < n; ++s) out.nsmdp.set_terminal(s, true);

  const double diam = out.metric.diameter();
  const double betaCap = diam > 0.0 ? std::min(1.0, spec.lp / diam) : 0.0;

  // per-row state carried across epochs
  std::vector<std::vector<double>> rows(n * nA);
  std::vector<std::vector<double>> rewards(n * nA);

  for (int s = 0; s < n; ++s)
    for (int a = 0; a < nA; ++a) {
      const int k = s * nA + a;
      if (out.nsmdp.is_terminal(s)) {
        rows[k].assign(n, 0.0);
        rows[k][s] = 1.0;
        rewards[k].assign(n, 0.0);
        continue;
      }
      rows[k] = random_dense_row(n, spec.uniformMix, rng);
      rewards[k].resize(n);
      if (spec.lipschitzRewards) {
        // 1-Lipschitz arrival potential: scaled distance to an anchor
        const int anchor = static_cast<int>(rng.uniform_int(n));
        const double cmax = diam > 0.0 ? std::min(1.0, 2.0 / diam) : 1.0;
        const double c = rng.uniform(-cmax, cmax);
        const double b = rng.uniform(-0.5, 0.5);
        for (int s2 = 0; s2 < n; ++s2)
          rewards[k][s2] = clip1(b + c * out.metric(s2, anchor));
      } else {
        for (int s2 = 0; s2 < n; ++s2) rewards[k][s2] = rng.uniform(-1.0, 1.0);
      }
    }

  for (int t = 0; t < spec.horizon; ++t) {
    for (int s = 0; s < n; ++s)
      for (int a = 0; a < nA; ++a) {
        const int k = s * nA + a;
        out.nsmdp.set_trans(t, s, a, CategoricalDistribution(rows[k]));
        out.nsmdp.set_rewards(t, s, a, rewards[k]);
        if (out.nsmdp.is_terminal(s)) continue;

        // advance to the next epoch within the declared rates
        const double beta = betaCap * rng.uniform();
        const auto fresh = random_dense_row(n, spec.uniformMix, rng);
        for (int s2 = 0; s2 < n; ++s2)
          rows[k][s2] = (1.0 - beta) * rows[k][s2] + beta * fresh[s2];

        if (spec.lipschitzRewards) {
          const double shift = rng.uniform(-spec.lr, spec.lr);
          for (double& x : rewards[k]) x = clip1(x + shift);
        } else {
          for (double& x : rewards[k])
            x = clip1(x + rng.uniform(-spec.lr, spec.lr));
        }
      }
  }

  out.nsmdp.validate();
  return out;
}

}  // namespace nsplan
