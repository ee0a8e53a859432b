#pragma once

// Corrections to the half-integer offset in Phi(e) = n + 1/2 + delta.
//
// The leading term delta1 is available three ways:
//   closed_form      beta a2 / (8 A) from the class-five coefficients
//   from_action      from Phi alone, given the bottom curvature k
//   direct_integral  (beta / 24 pi) d^2/de^2 of the gradient integral
// and the all-orders value follows from delta1 by resummation.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "semiq/flags.hpp"
#include "semiq/potential.hpp"
#include "semiq/quadrature.hpp"

namespace semiq {

enum class Delta1Route { closed_form, from_action, direct_integral };

[[nodiscard]] std::string_view to_string(Delta1Route route) noexcept;

struct CorrectionEstimate {
  double delta1 = 0;
  Delta1Route route = Delta1Route::closed_form;
  /// Excitation the estimate refers to; empty for closed_form.
  std::optional<double> eps_ref;
  FlagSet flags;
};

[[nodiscard]] CorrectionEstimate delta1_closed_form(const ClassFiveCoefficients& coeffs,
                                                    QuantumScale scale);

/// delta1 = (1 / (4 Phi)) (e / (2 beta sqrt(k) Phi) - 1), Phi = action_fn(e).
/// For k <= 0 the estimate carries phi_route_unavailable_k_zero and a NaN value.
[[nodiscard]] CorrectionEstimate delta1_from_action(const std::function<double(double)>& action_fn,
                                                    QuantumScale scale, double k,
                                                    double excitation);

/// Convenience form using the numeric action of `potential`. Sets
/// a1_condition_violated when the potential's coefficients fail |a1|^2 < |a0 a2|.
[[nodiscard]] CorrectionEstimate delta1_from_action(const PotentialSpec& potential,
                                                    QuantumScale scale, double excitation,
                                                    const QuadratureConfig& config = {});

struct DirectConfig {
  /// Stencil step relative to the excitation.
  double eta = 1e-2;
  QuadratureConfig quadrature{};
};

[[nodiscard]] CorrectionEstimate delta1_direct(const PotentialSpec& potential, QuantumScale scale,
                                               double excitation, const DirectConfig& config = {});

/// delta = 2 delta1 / (1 + sqrt(1 + 16 delta1^2)); odd, increasing, |delta| < 1/2.
[[nodiscard]] double resum_delta(double delta1) noexcept;

/// Truncated series: order 1 -> delta1, order 3 -> delta1 - 4 delta1^3.
[[nodiscard]] double delta_series(double delta1, int order);

struct LevelDelta {
  int n = 0;
  double delta1 = 0;
  double delta = 0;
};

struct LevelDiagnostic {
  int n = 0;
  double d_delta1_dn = 0;
  double d_delta_dn = 0;
  bool warning = false;
};

struct AdiabaticReport {
  std::vector<LevelDiagnostic> levels;
  bool any_warning = false;
};

inline constexpr double kAdiabaticWarnThreshold = 0.1;

/// Forward differences in n (backward for the last level); warns where
/// |d delta / dn| >= kAdiabaticWarnThreshold.
[[nodiscard]] AdiabaticReport adiabatic_validity(std::span<const LevelDelta> levels);

}  // namespace semiq
