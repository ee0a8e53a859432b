#include "semiq/action.hpp"

#include <cmath>
#include <numbers>

#include "semiq/errors.hpp"

namespace semiq {

namespace {

constexpr double kPi = std::numbers::pi;

bool near_bottom(const WellFrame& f, double excitation) {
  return f.parabolic() && std::isfinite(f.depth) && excitation < kNearBottomFraction * f.depth;
}

// Integral over the classical region of kernel(x, e - V(x)) dx.
template <class Kernel>
IntegralResult over_classical_region(const PotentialSpec& p, double excitation,
                                     const QuadratureConfig& config, Kernel kernel) {
  const TurningPoints tp = turning_points_excess(p, excitation);
  const double c = 0.5 * (tp.x_minus + tp.x_plus);
  const double h = 0.5 * (tp.x_plus - tp.x_minus);
  const double jac = 0.5 * kPi * h;
  return integrate_doubling(
      [&](double t) {
        const double x = c + h * std::sin(0.5 * kPi * t);
        const double dxdt = jac * std::cos(0.5 * kPi * t);
        return kernel(x, excitation - p.excess_unchecked(x)) * dxdt;
      },
      config);
}

}  // namespace

IntegralResult action(const PotentialSpec& potential, QuantumScale scale, double excitation,
                      const QuadratureConfig& config) {
  const WellFrame& f = potential.frame();
  if (near_bottom(f, excitation) && excitation > 0)
    return {excitation / (2 * scale.beta() * std::sqrt(f.k)), 0, true};
  auto r = over_classical_region(potential, excitation, config, [](double, double gap) {
    return gap > 0 ? std::sqrt(gap) : 0.0;
  });
  r.value /= kPi * scale.beta();
  return r;
}

IntegralResult action_derivative(const PotentialSpec& potential, QuantumScale scale,
                                 double excitation, const QuadratureConfig& config) {
  const WellFrame& f = potential.frame();
  if (near_bottom(f, excitation) && excitation > 0)
    return {1 / (2 * scale.beta() * std::sqrt(f.k)), 0, true};
  auto r = over_classical_region(potential, excitation, config, [](double, double gap) {
    return gap > 0 ? 1 / std::sqrt(gap) : 0.0;
  });
  r.value /= 2 * kPi * scale.beta();
  return r;
}

IntegralResult gradient_integral(const PotentialSpec& potential, double excitation,
                                 const QuadratureConfig& config) {
  const WellFrame& f = potential.frame();
  if (near_bottom(f, excitation) && excitation > 0)
    return {2 * kPi * std::sqrt(f.k) * excitation, 0, true};
  return over_classical_region(potential, excitation, config, [&potential](double x, double gap) {
    if (!(gap > 0)) return 0.0;
    const double dv = potential.derivative_unchecked(x);
    return dv * dv / std::sqrt(gap);
  });
}

double action_closed_form(const ClassFiveCoefficients& coeffs, const WellFrame& frame,
                          QuantumScale scale, double excitation) {
  if (coeffs.a1 != 0) throw InvalidInput("closed-form action requires a1 = 0");
  if (!(coeffs.a0 > 0) || !(coeffs.A > 0))
    throw InvalidInput("closed-form action requires A > 0 and a0 > 0");
  if (!(excitation > 0) || !(excitation <= frame.depth))
    throw InvalidInput("excitation outside the bound window");
  const double u = excitation * coeffs.a2 / (coeffs.A * coeffs.A * coeffs.a0);
  if (!(1 + u >= 0)) throw InvalidInput("excitation lies above the top of the well");
  // sqrt(1 + u) - 1 = u / (sqrt(1 + u) + 1) keeps a2 -> 0 exact.
  return excitation / (scale.beta() * coeffs.A * coeffs.a0 * (std::sqrt(1 + u) + 1));
}

}  // namespace semiq
