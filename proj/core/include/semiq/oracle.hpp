#pragma once

// Reference eigensolver independent of the semiclassical machinery:
// -beta^2 psi'' + V psi = e psi on a uniform grid with Dirichlet ends,
// lowest eigenvalues by Sturm-sequence bisection, Richardson-extrapolated
// over a grid and its bisection.

#include <optional>
#include <span>
#include <vector>

#include "semiq/flags.hpp"
#include "semiq/potential.hpp"

namespace semiq {

struct GridConfig {
  /// Symmetric window [x_min - L, x_min + L]; ignored when `interval` is set.
  std::optional<double> half_width;
  /// Explicit window; clipped to the potential's domain.
  std::optional<Interval> interval;
  /// Number of grid intervals; the Richardson partner uses twice as many.
  int n_points = 4000;
  bool richardson = true;

  void validate() const;
};

struct OracleResult {
  /// Ascending, caller's energy frame.
  std::vector<double> energies;
  FlagSet flags;
  Interval window;
};

[[nodiscard]] OracleResult eigenvalues_fd(const PotentialSpec& potential, QuantumScale scale,
                                          const GridConfig& grid, int m);

/// Number of eigenvalues strictly below `lambda` of the symmetric tridiagonal
/// matrix with diagonal `diag` and off-diagonal `offdiag` (size n - 1).
[[nodiscard]] int sturm_count(std::span<const double> diag, std::span<const double> offdiag,
                              double lambda);

/// Lowest `m` eigenvalues by bisection on sturm_count, ascending.
[[nodiscard]] std::vector<double> lowest_eigenvalues(std::span<const double> diag,
                                                     std::span<const double> offdiag, int m);

/// Window used when GridConfig sets neither half_width nor interval.
[[nodiscard]] Interval default_window(const PotentialSpec& potential, QuantumScale scale, int m);

}  // namespace semiq
