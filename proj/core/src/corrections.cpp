#include "semiq/corrections.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "semiq/action.hpp"
#include "semiq/errors.hpp"

namespace semiq {

std::string_view to_string(Delta1Route route) noexcept {
  switch (route) {
    case Delta1Route::closed_form: return "closed_form";
    case Delta1Route::from_action: return "from_action";
    case Delta1Route::direct_integral: return "direct_integral";
  }
  return "unknown";
}

CorrectionEstimate delta1_closed_form(const ClassFiveCoefficients& coeffs, QuantumScale scale) {
  if (!(coeffs.A > 0)) throw InvalidInput("class-five coefficient A must be positive");
  CorrectionEstimate out;
  out.delta1 = scale.beta() * coeffs.a2 / (8 * coeffs.A);
  out.route = Delta1Route::closed_form;
  if (!coeffs.a1_condition_holds()) out.flags.insert(Flag::a1_condition_violated);
  return out;
}

CorrectionEstimate delta1_from_action(const std::function<double(double)>& action_fn,
                                      QuantumScale scale, double k, double excitation) {
  CorrectionEstimate out;
  out.route = Delta1Route::from_action;
  out.eps_ref = excitation;
  if (!(k > 0)) {
    out.delta1 = std::numeric_limits<double>::quiet_NaN();
    out.flags.insert(Flag::phi_route_unavailable_k_zero);
    return out;
  }
  if (!(excitation > 0)) throw InvalidInput("delta1 from action needs a positive excitation");
  const double phi = action_fn(excitation);
  if (!(phi > 0)) throw InvalidInput("delta1 from action needs Phi > 0");
  const double bracket = excitation / (2 * scale.beta() * std::sqrt(k) * phi) - 1;
  out.delta1 = bracket / (4 * phi);
  return out;
}

CorrectionEstimate delta1_from_action(const PotentialSpec& potential, QuantumScale scale,
                                      double excitation, const QuadratureConfig& config) {
  bool converged = true;
  auto phi = [&](double e) {
    const IntegralResult r = action(potential, scale, e, config);
    converged = converged && r.converged;
    return r.value;
  };
  CorrectionEstimate out = delta1_from_action(phi, scale, potential.frame().k, excitation);
  if (!converged) out.flags.insert(Flag::quadrature_not_converged);
  if (const auto& c5 = potential.class_five(); c5 && !c5->a1_condition_holds())
    out.flags.insert(Flag::a1_condition_violated);
  return out;
}

CorrectionEstimate delta1_direct(const PotentialSpec& potential, QuantumScale scale,
                                 double excitation, const DirectConfig& config) {
  if (!(config.eta > 0)) throw InvalidInput("stencil step eta must be positive");
  const WellFrame& f = potential.frame();
  const double h = config.eta * excitation;
  if (!(excitation - 2 * h > 0) || !(excitation + 2 * h < f.depth))
    throw InvalidInput("finite-difference stencil leaves the bound window");

  bool converged = true;
  auto integral = [&](double e) {
    const IntegralResult r = gradient_integral(potential, e, config.quadrature);
    converged = converged && r.converged;
    return r.value;
  };
  const double i0 = integral(excitation);
  auto second = [&](double step) {
    return (-integral(excitation + 2 * step) + 16 * integral(excitation + step) - 30 * i0 +
            16 * integral(excitation - step) - integral(excitation - 2 * step)) /
           (12 * step * step);
  };
  const double coarse = second(h);
  const double fine = second(0.5 * h);
  // Five-point stencil error is O(h^4).
  const double curvature = (16 * fine - coarse) / 15;

  CorrectionEstimate out;
  out.route = Delta1Route::direct_integral;
  out.eps_ref = excitation;
  out.delta1 = scale.beta() / (24 * std::numbers::pi) * curvature;
  if (!converged) out.flags.insert(Flag::quadrature_not_converged);
  if (const auto& c5 = potential.class_five(); c5 && !c5->a1_condition_holds())
    out.flags.insert(Flag::a1_condition_violated);
  return out;
}

double resum_delta(double delta1) noexcept {
  if (std::isinf(delta1)) return std::copysign(0.5, delta1);
  // hypot avoids overflow of 16 delta1^2 for huge arguments.
  return 2 * delta1 / (1 + std::hypot(1.0, 4 * delta1));
}

double delta_series(double delta1, int order) {
  switch (order) {
    case 1: return delta1;
    case 3: return delta1 - 4 * delta1 * delta1 * delta1;
    default: throw InvalidInput("delta series is available for orders 1 and 3 only");
  }
}

AdiabaticReport adiabatic_validity(std::span<const LevelDelta> levels) {
  if (levels.size() < 2) throw InvalidInput("adiabatic diagnostics need at least two levels");
  AdiabaticReport report;
  report.levels.reserve(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::size_t a = i + 1 < levels.size() ? i : i - 1;
    const std::size_t b = a + 1;
    const double dn = levels[b].n - levels[a].n;
    if (!(dn > 0)) throw InvalidInput("levels must be ordered by strictly increasing n");
    LevelDiagnostic d;
    d.n = levels[i].n;
    d.d_delta1_dn = (levels[b].delta1 - levels[a].delta1) / dn;
    d.d_delta_dn = (levels[b].delta - levels[a].delta) / dn;
    d.warning = std::abs(d.d_delta_dn) >= kAdiabaticWarnThreshold;
    report.any_warning = report.any_warning || d.warning;
    report.levels.push_back(d);
  }
  return report;
}

}  // namespace semiq
