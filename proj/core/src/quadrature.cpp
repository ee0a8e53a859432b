#include "semiq/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "semiq/errors.hpp"

namespace semiq {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0)) throw InvalidInput("quadrature rel_tol must be positive");
  if (initial_nodes < 8) throw InvalidInput("quadrature initial_nodes must be at least 8");
  if (max_doublings < 0) throw InvalidInput("quadrature max_doublings must be non-negative");
}

namespace {

GaussRule legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
    }
    const double w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0;
  return rule;
}

GaussRule composite(int n) {
  const GaussRule& panel = gauss_rule(kMaxPanelNodes);
  const int panels = n / kMaxPanelNodes;
  GaussRule rule;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);
  const double half = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double center = -1 + (2 * p + 1) * half;
    for (std::size_t j = 0; j < panel.nodes.size(); ++j) {
      rule.nodes.push_back(center + half * panel.nodes[j]);
      rule.weights.push_back(half * panel.weights[j]);
    }
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
  if (n < 1) throw InvalidInput("Gauss rule needs at least one node");
  if (n > kMaxPanelNodes && n % kMaxPanelNodes != 0)
    throw InvalidInput("composite Gauss rules need a multiple of " +
                       std::to_string(kMaxPanelNodes) + " nodes");

  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const GaussRule>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  auto rule = std::make_unique<const GaussRule>(n > kMaxPanelNodes ? composite(n) : legendre(n));
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(n, std::move(rule));
  return *it->second;
}

IntegralResult integrate_doubling(const std::function<double(double)>& f,
                                  const QuadratureConfig& config) {
  config.validate();
  auto apply = [&f](const GaussRule& rule) {
    double sum = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
    return sum;
  };

  int n = config.initial_nodes;
  double prev = apply(gauss_rule(n));
  for (int d = 0; d < config.max_doublings; ++d) {
    int next = 2 * n;
    // Round up to whole panels once the single-rule limit is passed.
    if (next > kMaxPanelNodes && next % kMaxPanelNodes != 0)
      next = (next / kMaxPanelNodes + 1) * kMaxPanelNodes;
    const double cur = apply(gauss_rule(next));
    n = next;
    if (std::abs(cur - prev) <= config.rel_tol * std::abs(cur)) return {cur, n, true};
    prev = cur;
  }
  return {prev, n, false};
}

}  // namespace semiq
