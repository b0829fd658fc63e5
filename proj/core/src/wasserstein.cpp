#include "nsplan/wasserstein.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace nsplan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassEps = 1e-13;

void check_input(const std::vector<double>& v, const StateMetric& metric,
                 const char* name) {
  if (static_cast<int>(v.size()) != metric.size())
    throw std::invalid_argument(std::string("w1: ") + name +
                                " length does not match the metric");
  double total = 0.0;
  for (double x : v) {
    if (!(x >= -1e-12) || !std::isfinite(x))
      throw std::invalid_argument(std::string("w1: ") + name +
                                  " has a negative or non-finite entry");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument(std::string("w1: ") + name +
                                " does not sum to one");
}

}  // namespace

W1Result w1(const std::vector<double>& mu, const std::vector<double>& nu,
            const StateMetric& metric) {
  check_input(mu, metric, "mu");
  check_input(nu, metric, "nu");
  const int n = metric.size();

  // cancel common mass; only the imbalance needs to move
  std::vector<double> surplus(n, 0.0), deficit(n, 0.0);
  double totalSurplus = 0.0;
  for (int i = 0; i < n; ++i) {
    const double common = std::min(mu[i], nu[i]);
    surplus[i] = mu[i] - common;
    deficit[i] = nu[i] - common;
    totalSurplus += surplus[i];
  }

  // moved[i][j]: off-diagonal mass routed from i to j
  std::vector<std::vector<double>> moved(n, std::vector<double>(n, 0.0));

  // successive shortest augmenting paths on the residual graph.
  // Nodes 0..n-1 are supply side, n..2n-1 demand side. Every augmentation
  // exhausts a supply, a demand, or an existing flow arc, so the guard
  // below never triggers on well-formed input.
  const int maxIter = 50 * n + 100;
  int iter = 0;
  std::vector<double> dist(2 * n);
  std::vector<int> parent(2 * n);
  std::vector<char> inQueue(2 * n);

  while (totalSurplus > kMassEps) {
    if (++iter > maxIter)
      throw std::runtime_error("w1: flow solver failed to converge");

    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), -1);
    std::fill(inQueue.begin(), inQueue.end(), 0);
    std::deque<int> queue;
    for (int i = 0; i < n; ++i)
      if (surplus[i] > kMassEps) {
        dist[i] = 0.0;
        queue.push_back(i);
        inQueue[i] = 1;
      }

    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      inQueue[u] = 0;
      if (u < n) {
        for (int j = 0; j < n; ++j) {
          const double nd = dist[u] + metric(u, j);
          if (nd < dist[n + j] - 1e-15) {
            dist[n + j] = nd;
            parent[n + j] = u;
            if (!inQueue[n + j]) {
              queue.push_back(n + j);
              inQueue[n + j] = 1;
            }
          }
        }
      } else {
        const int j = u - n;
        for (int i = 0; i < n; ++i) {
          if (moved[i][j] <= kMassEps) continue;
          const double nd = dist[u] - metric(i, j);
          if (nd < dist[i] - 1e-15) {
            dist[i] = nd;
            parent[i] = u;
            if (!inQueue[i]) {
              queue.push_back(i);
              inQueue[i] = 1;
            }
          }
        }
      }
    }

    int sink = -1;
    for (int j = 0; j < n; ++j)
      if (deficit[j] > kMassEps &&
          (sink < 0 || dist[n + j] < dist[n + sink]))
        sink = j;
    if (sink < 0 || dist[n + sink] == kInf)
      throw std::runtime_error("w1: residual graph disconnected");

    // bottleneck along the path, then push
    double bottleneck = deficit[sink];
    int v = n + sink;
    while (parent[v] >= 0) {
      const int u = parent[v];
      if (u >= n && v < n) bottleneck = std::min(bottleneck, moved[v][u - n]);
      v = u;
    }
    bottleneck = std::min(bottleneck, surplus[v]);

    const int source = v;
    v = n + sink;
    while (parent[v] >= 0) {
      const int u = parent[v];
      if (u < n && v >= n)
        moved[u][v - n] += bottleneck;
      else
        moved[v][u - n] -= bottleneck;
      v = u;
    }
    surplus[source] -= bottleneck;
    deficit[sink] -= bottleneck;
    totalSurplus -= bottleneck;
  }

  W1Result out;
  out.plan.flow = std::move(moved);
  for (int i = 0; i < n; ++i) {
    out.plan.flow[i][i] += std::min(mu[i], nu[i]);
    for (int j = 0; j < n; ++j)
      out.plan.cost += out.plan.flow[i][j] * metric(i, j);
  }
  out.distance = out.plan.cost;
  return out;
}

double w1_distance(const std::vector<double>& mu, const std::vector<double>& nu,
                   const StateMetric& metric) {
  return w1(mu, nu, metric).distance;
}

double w1_to_dirac(const std::vector<double>& p, int target,
                   const StateMetric& metric) {
  if (static_cast<int>(p.size()) != metric.size())
    throw std::invalid_argument("w1_to_dirac: length mismatch");
  if (target < 0 || target >= metric.size())
    throw std::invalid_argument("w1_to_dirac: target out of range");
  double out = 0.0;
  for (int s = 0; s < metric.size(); ++s) out += p[s] * metric(s, target);
  return out;
}

double tv_distance(const std::vector<double>& mu,
                   const std::vector<double>& nu) {
  if (mu.size() != nu.size())
    throw std::invalid_argument("tv_distance: length mismatch");
  double out = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) out += std::abs(mu[i] - nu[i]);
  return 0.5 * out;
}

}  // namespace nsplan
