#pragma once

// One-dimensional single-well potentials.
//
// Every potential carries its well frame (minimum location, bottom value,
// curvature, depth) and evaluates the excess V(x) - V_min directly, so that
// energies measured from the well bottom never suffer cancellation against a
// large V_min. Values in the caller's frame are V_min + excess(x).

#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semiq {

/// beta = hbar / sqrt(2m). hbar and m never appear separately.
class QuantumScale {
 public:
  explicit QuantumScale(double beta);
  [[nodiscard]] double beta() const noexcept { return beta_; }

 private:
  double beta_;
};

enum class PotentialKind { harmonic, poschl_teller, trig_tan2, morse, gaussian_well, tabulated };

[[nodiscard]] std::string_view to_string(PotentialKind kind) noexcept;
/// Accepts both `poschl_teller` and `poschl-teller` spellings.
[[nodiscard]] std::optional<PotentialKind> parse_potential_kind(std::string_view name) noexcept;

/// Generator of the auxiliary function s(x) with ds/dx = a2 s^2 + a1 s + a0.
enum class GeneratorKind { identity, tanh, tan, exp_decay };

/// V = A^2 s^2 + B s + C with the Riccati-type law for s(x).
struct ClassFiveCoefficients {
  double A = 0, B = 0, C = 0;
  double a2 = 0, a1 = 0, a0 = 0;
  GeneratorKind s_kind = GeneratorKind::identity;
  double rate = 1;

  [[nodiscard]] double s(double x) const;
  [[nodiscard]] double ds_dx(double x) const;
  [[nodiscard]] double riccati(double s) const noexcept { return (a2 * s + a1) * s + a0; }
  [[nodiscard]] double value_from_s(double s) const noexcept { return (A * A * s + B) * s + C; }
  /// |a1|^2 < |a0 a2|
  [[nodiscard]] bool a1_condition_holds() const noexcept { return a1 * a1 < std::abs(a0 * a2); }
};

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  [[nodiscard]] bool interior(double x) const noexcept { return x > lo && x < hi; }
  [[nodiscard]] bool bounded() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }
};

struct WellFrame {
  double x_min = 0;
  double v_min = 0;
  /// V(x) ~ V_min + k (x - x_min)^2 near the bottom.
  double k = 0;
  /// Lowest escape energy above V_min; +inf for confining wells.
  double depth = std::numeric_limits<double>::infinity();

  [[nodiscard]] bool parabolic() const noexcept { return k > 0; }
  [[nodiscard]] bool confining() const noexcept { return !std::isfinite(depth); }
};

struct TurningPoints {
  double x_minus;
  double x_plus;
};

/// Immutable, cheaply copyable handle to an evaluable potential.
class PotentialSpec {
 public:
  struct Model {
    std::function<double(double)> excess;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    /// Analytic inverse of excess on each side of the minimum, when known.
    std::function<TurningPoints(double)> inverse;
  };

  PotentialSpec(PotentialKind kind, std::map<std::string, double> params, Interval domain,
                WellFrame frame, std::optional<ClassFiveCoefficients> class_five, Model model);

  [[nodiscard]] PotentialKind kind() const noexcept { return state_->kind; }
  [[nodiscard]] const std::map<std::string, double>& params() const noexcept { return state_->params; }
  [[nodiscard]] double param(const std::string& name) const;
  [[nodiscard]] Interval domain() const noexcept { return state_->domain; }
  [[nodiscard]] const WellFrame& frame() const noexcept { return frame_; }
  [[nodiscard]] const std::optional<ClassFiveCoefficients>& class_five() const noexcept {
    return class_five_;
  }

  /// V(x) in the caller's energy frame.
  [[nodiscard]] double value(double x) const;
  /// V(x) - V_min.
  [[nodiscard]] double excess(double x) const;
  [[nodiscard]] double derivative(double x) const;
  [[nodiscard]] double second_derivative(double x) const;

  /// Unchecked excess for quadrature kernels; x must be inside the domain.
  [[nodiscard]] double excess_unchecked(double x) const { return state_->model.excess(x); }
  [[nodiscard]] double derivative_unchecked(double x) const { return state_->model.d1(x); }

  [[nodiscard]] bool has_analytic_inverse() const noexcept {
    return static_cast<bool>(state_->model.inverse);
  }
  /// Requires has_analytic_inverse(); excitation measured from V_min.
  [[nodiscard]] TurningPoints analytic_turning_points(double excitation) const {
    return state_->model.inverse(excitation);
  }

  /// Same potential moved by a constant: V -> V + offset.
  [[nodiscard]] PotentialSpec shifted(double offset) const;

 private:
  struct State {
    PotentialKind kind;
    std::map<std::string, double> params;
    Interval domain;
    Model model;
  };

  void require_interior(double x) const;

  std::shared_ptr<const State> state_;
  WellFrame frame_;
  std::optional<ClassFiveCoefficients> class_five_;
};

/// Names of required parameters for a catalog kind, in canonical order.
[[nodiscard]] std::vector<std::string> required_params(PotentialKind kind);

/// Catalog entries:
///   harmonic       k              V = k x^2
///   poschl_teller  V0, alpha      V = -V0 / cosh^2(alpha x)
///   trig_tan2      V0, alpha      V = V0 tan^2(alpha x),   |x| < pi / (2 alpha)
///   morse          D, alpha       V = D (1 - e^{-alpha x})^2 - D
///   gaussian_well  V0, w          V = -V0 exp(-x^2 / w^2)
[[nodiscard]] PotentialSpec make_catalog_potential(PotentialKind kind,
                                                   const std::map<std::string, double>& params);

[[nodiscard]] double evaluate(const PotentialSpec& potential, double x);
[[nodiscard]] double derivative(const PotentialSpec& potential, double x);
[[nodiscard]] double second_derivative(const PotentialSpec& potential, double x);

[[nodiscard]] WellFrame well_frame(const PotentialSpec& potential);

/// Classical turning points V(x_-) = V(x_+) = energy, energy in the caller's frame.
[[nodiscard]] TurningPoints turning_points(const PotentialSpec& potential, double energy);

/// Same, with energy measured from the well bottom.
[[nodiscard]] TurningPoints turning_points_excess(const PotentialSpec& potential, double excitation);

/// Bisection outward from x_min, ignoring any analytic inverse.
[[nodiscard]] TurningPoints turning_points_bisection(const PotentialSpec& potential,
                                                     double excitation);

/// Exact bound-state energies (caller's frame) for the four solvable catalog
/// kinds, ascending, at most `max_levels` entries. Finite wells stop at the
/// last bound level.
[[nodiscard]] std::vector<double> analytic_spectrum(const PotentialSpec& potential,
                                                    QuantumScale scale, int max_levels);
[[nodiscard]] std::vector<double> analytic_spectrum(PotentialKind kind,
                                                    const std::map<std::string, double>& params,
                                                    QuantumScale scale, int max_levels);
[[nodiscard]] bool has_analytic_spectrum(PotentialKind kind) noexcept;

/// Monotone piecewise-cubic (Fritsch-Carlson) potential through the samples.
[[nodiscard]] PotentialSpec load_tabulated(std::span<const double> x_samples,
                                           std::span<const double> v_samples);

/// Two-column `x,V` CSV with optional header row.
[[nodiscard]] PotentialSpec read_tabulated_csv(const std::filesystem::path& path);

namespace detail {
/// Golden-section search for a minimum of f on [lo, hi].
double golden_section_minimum(const std::function<double(double)>& f, double lo, double hi,
                              double abs_tol);
}  // namespace detail

}  // namespace semiq
