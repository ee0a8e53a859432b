#pragma once

#include <functional>
#include <span>
#include <vector>

namespace semiq {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  int max_doublings = 16;
  int initial_nodes = 32;

  void validate() const;
};

struct IntegralResult {
  double value = 0;
  int nodes = 0;
  bool converged = false;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rule with `n` points. Up to kMaxPanelNodes this is a single Gauss-Legendre
/// rule; beyond it, a composite of equal panels. Rules are computed once and
/// shared between threads.
[[nodiscard]] const GaussRule& gauss_rule(int n);

inline constexpr int kMaxPanelNodes = 512;

/// Integral over [-1, 1] with node doubling until two successive estimates
/// agree to rel_tol.
[[nodiscard]] IntegralResult integrate_doubling(const std::function<double(double)>& f,
                                                const QuadratureConfig& config);

}  // namespace semiq
