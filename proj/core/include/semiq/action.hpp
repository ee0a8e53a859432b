#pragma once

// Action function Phi(e) = (1 / (pi beta)) * integral of sqrt(e - V) between
// the turning points, its energy derivative, and the gradient integral
// I(e) = integral of V'^2 / sqrt(e - V). All energies here are excitations
// above the well bottom.
//
// The integrals use x = c + h sin(pi t / 2) on t in [-1, 1], which turns the
// square-root endpoint behaviour of all three integrands into smooth
// functions of t.

#include "semiq/potential.hpp"
#include "semiq/quadrature.hpp"

namespace semiq {

[[nodiscard]] IntegralResult action(const PotentialSpec& potential, QuantumScale scale,
                                    double excitation, const QuadratureConfig& config = {});

/// dPhi/de = (1 / (2 pi beta)) * integral of 1 / sqrt(e - V).
[[nodiscard]] IntegralResult action_derivative(const PotentialSpec& potential,
                                               QuantumScale scale, double excitation,
                                               const QuadratureConfig& config = {});

[[nodiscard]] IntegralResult gradient_integral(const PotentialSpec& potential, double excitation,
                                               const QuadratureConfig& config = {});

/// Closed-form Phi for V = A^2 s^2 with ds/dx = a2 s^2 + a0 (a1 = 0):
///   Phi = (A / (beta a2)) (sqrt(1 + e a2 / (A^2 a0)) - 1),   Phi = e / (2 beta A a0) for a2 = 0.
/// `frame` bounds the admissible excitation.
[[nodiscard]] double action_closed_form(const ClassFiveCoefficients& coeffs,
                                        const WellFrame& frame, QuantumScale scale,
                                        double excitation);

/// Excitations below this fraction of a finite depth use the harmonic limit.
inline constexpr double kNearBottomFraction = 1e-8;

}  // namespace semiq
