#pragma once

// Bound levels from Phi(e_n) = n + 1/2 + delta at four orders:
//   order0     delta = 0
//   order1     delta = delta1
//   full       delta = resum(delta1), delta1 held constant
//   adiabatic  delta = resum(delta1(e)) with delta1(e) from the action route,
//              solved by damped fixed-point iteration on e

#include <optional>
#include <string_view>
#include <vector>

#include "semiq/corrections.hpp"
#include "semiq/flags.hpp"
#include "semiq/oracle.hpp"
#include "semiq/potential.hpp"
#include "semiq/quadrature.hpp"

namespace semiq {

enum class SolverOrder { order0, order1, full, adiabatic };

[[nodiscard]] std::string_view to_string(SolverOrder order) noexcept;
[[nodiscard]] std::optional<SolverOrder> parse_solver_order(std::string_view name) noexcept;

struct SolverConfig {
  double root_tol = 1e-12;
  int max_iter = 200;
  double fixed_point_damping = 0.5;
  int max_fp_iter = 50;
  QuadratureConfig quadrature{};

  void validate() const;
};

struct Level {
  int n = 0;
  /// Caller's energy frame.
  double energy = 0;
  SolverOrder order = SolverOrder::order0;
  double delta1 = 0;
  double delta_used = 0;
  /// |Phi(e_n) - (n + 1/2 + delta_used)|
  double residual = 0;
  int iterations = 0;
  FlagSet flags;
};

/// Number of bound levels at `order`; empty for confining wells.
[[nodiscard]] std::optional<int> count_levels(const PotentialSpec& potential, QuantumScale scale,
                                              SolverOrder order, const SolverConfig& config = {});

[[nodiscard]] Level solve_level(const PotentialSpec& potential, QuantumScale scale, int n,
                                SolverOrder order, const SolverConfig& config = {});

struct Spectrum {
  std::vector<Level> levels;
  /// Present when at least two levels were solved.
  std::optional<AdiabaticReport> diagnostics;
};

/// Levels n = 0 .. min(n_max, N - 1). n_max is required for confining wells.
[[nodiscard]] Spectrum solve_spectrum(const PotentialSpec& potential, QuantumScale scale,
                                      SolverOrder order, std::optional<int> n_max,
                                      const SolverConfig& config = {});

enum class ReferenceKind { analytic, oracle };

struct ComparisonRow {
  int n = 0;
  std::vector<double> energies;  // one per requested order
  double reference = 0;
  std::vector<double> abs_err;
  std::vector<double> rel_err;
  double delta1 = 0;
  double delta = 0;
  double d_delta_dn = 0;
  FlagSet flags;
};

struct ComparisonTable {
  std::vector<SolverOrder> orders;
  ReferenceKind reference = ReferenceKind::analytic;
  std::vector<ComparisonRow> rows;
  std::vector<Spectrum> spectra;  // parallel to `orders`
};

/// Per level and order: energy and its error against the reference. The
/// delta columns describe the last requested order.
[[nodiscard]] ComparisonTable compare(const PotentialSpec& potential, QuantumScale scale,
                                      const std::vector<SolverOrder>& orders,
                                      ReferenceKind reference, std::optional<int> n_max,
                                      const SolverConfig& config = {},
                                      const GridConfig& grid = {});

}  // namespace semiq
