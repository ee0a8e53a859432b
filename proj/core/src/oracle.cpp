#include "semiq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semiq/errors.hpp"

namespace semiq {

void GridConfig::validate() const {
  if (n_points < 100) throw InvalidInput("grid needs at least 100 points");
  if (half_width && !(*half_width > 0)) throw InvalidInput("grid half-width must be positive");
  if (interval && !(interval->hi > interval->lo)) throw InvalidInput("grid interval is empty");
}

int sturm_count(std::span<const double> diag, std::span<const double> offdiag, double lambda) {
  if (diag.empty()) return 0;
  if (offdiag.size() + 1 != diag.size())
    throw InvalidInput("off-diagonal must have one element fewer than the diagonal");
  constexpr double tiny = 1e-300;
  int count = 0;
  double q = diag[0] - lambda;
  if (q == 0) q = -tiny;
  if (q < 0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    q = diag[i] - lambda - offdiag[i - 1] * offdiag[i - 1] / q;
    if (q == 0) q = -tiny;
    if (q < 0) ++count;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(std::span<const double> diag,
                                       std::span<const double> offdiag, int m) {
  if (m < 1 || static_cast<std::size_t>(m) > diag.size())
    throw InvalidInput("requested eigenvalue count is out of range");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    double r = 0;
    if (i > 0) r += std::abs(offdiag[i - 1]);
    if (i + 1 < diag.size()) r += std::abs(offdiag[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  lo -= 1e-12 * std::max(1.0, std::abs(lo));
  hi += 1e-12 * std::max(1.0, std::abs(hi));

  std::vector<double> out;
  out.reserve(m);
  double floor = lo;
  for (int j = 0; j < m; ++j) {
    double a = floor, b = hi;
    for (int it = 0; it < 2000; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      (sturm_count(diag, offdiag, mid) > j ? b : a) = mid;
    }
    const double e = 0.5 * (a + b);
    out.push_back(e);
    floor = a;
  }
  return out;
}

Interval default_window(const PotentialSpec& potential, QuantumScale scale, int m) {
  const WellFrame& f = potential.frame();
  const double beta = scale.beta();
  double e_m = f.k > 0 ? 2 * beta * std::sqrt(f.k) * (m - 0.5) : 0.5 * f.depth;
  if (!std::isfinite(e_m)) e_m = 1;
  double e_wall = 1.5 * e_m;
  if (std::isfinite(f.depth)) {
    e_m = std::min(e_m, 0.99 * f.depth);
    e_wall = std::min(e_wall, 0.999 * f.depth);
    if (!(e_wall > e_m)) e_wall = 0.5 * (e_m + f.depth);
  }
  const TurningPoints wall = turning_points_excess(potential, e_wall);
  const double decay = beta / std::sqrt(e_wall - e_m);
  const Interval dom = potential.domain();
  return {std::max(dom.lo, wall.x_minus - 5 * decay), std::min(dom.hi, wall.x_plus + 5 * decay)};
}

namespace {

// |psi|^2 at the window edges below about exp(-2 * 9) ~ 1.5e-8.
constexpr double kMinTailExponent = 9.0;
constexpr int kMaxWidenings = 6;

struct Discretization {
  std::vector<double> diag;
  std::vector<double> off;
};

Discretization discretize(const PotentialSpec& p, double beta, Interval w, int intervals) {
  const double h = (w.hi - w.lo) / intervals;
  const double kinetic = beta * beta / (h * h);
  Discretization d;
  d.diag.resize(intervals - 1);
  d.off.assign(intervals - 2, -kinetic);
  for (int i = 1; i < intervals; ++i)
    d.diag[i - 1] = p.excess_unchecked(w.lo + i * h) + 2 * kinetic;
  return d;
}

// WKB exponent integral of sqrt(V - e) / beta from each turning point of
// excitation `e` to the window edge; the smaller side. Zero when a turning
// point is missing or outside the window.
double tail_attenuation(const PotentialSpec& p, double beta, Interval w, double e) {
  if (!(e > 0) || !(e < p.frame().depth)) return 0;
  const TurningPoints tp = turning_points_excess(p, e);
  if (!(tp.x_minus > w.lo && tp.x_plus < w.hi)) return 0;
  auto exponent = [&](double a, double b) {
    constexpr int n = 400;
    const double h = (b - a) / n;
    double sum = 0;
    for (int i = 0; i <= n; ++i) {
      const double x = a + i * h;
      const double gap = std::max(0.0, p.excess_unchecked(x) - e);
      sum += (i == 0 || i == n ? 0.5 : 1.0) * std::sqrt(gap);
    }
    return std::abs(h) * sum / beta;
  };
  return std::min(exponent(w.lo, tp.x_minus), exponent(tp.x_plus, w.hi));
}

}  // namespace

OracleResult eigenvalues_fd(const PotentialSpec& potential, QuantumScale scale,
                            const GridConfig& grid, int m) {
  grid.validate();
  if (m < 1) throw InvalidInput("at least one eigenvalue must be requested");
  const WellFrame& f = potential.frame();
  const Interval dom = potential.domain();

  auto clip = [&](Interval w) {
    w.lo = std::max(w.lo, dom.lo);
    w.hi = std::min(w.hi, dom.hi);
    if (!(w.lo < f.x_min && f.x_min < w.hi))
      throw InvalidInput("grid window does not contain the well minimum");
    return w;
  };

  auto solve = [&](Interval w, int intervals) {
    const Discretization d = discretize(potential, scale.beta(), w, intervals);
    if (std::isfinite(f.depth) && sturm_count(d.diag, d.off, f.depth) < m)
      throw InvalidInput("requested " + std::to_string(m) +
                         " levels but the grid resolves fewer bound states");
    return lowest_eigenvalues(d.diag, d.off, m);
  };

  Interval w;
  int intervals = grid.n_points;
  std::vector<double> e;
  if (grid.interval || grid.half_width) {
    w = clip(grid.interval ? *grid.interval
                           : Interval{f.x_min - *grid.half_width, f.x_min + *grid.half_width});
    e = solve(w, intervals);
  } else {
    // Widen the automatic window, at fixed spacing, until the highest
    // requested state has decayed at both edges.
    w = clip(default_window(potential, scale, m));
    const double spacing = (w.hi - w.lo) / intervals;
    e = solve(w, intervals);
    for (int widen = 0; widen < kMaxWidenings; ++widen) {
      if (tail_attenuation(potential, scale.beta(), w, e[m - 1]) >= kMinTailExponent) break;
      const Interval wider = clip({f.x_min - 2 * (f.x_min - w.lo), f.x_min + 2 * (w.hi - f.x_min)});
      if (wider.lo == w.lo && wider.hi == w.hi) break;
      w = wider;
      intervals = static_cast<int>(std::ceil((w.hi - w.lo) / spacing));
      e = solve(w, intervals);
    }
  }
  if (grid.richardson) {
    const std::vector<double> fine = solve(w, 2 * intervals);
    for (int j = 0; j < m; ++j) e[j] = (4 * fine[j] - e[j]) / 3;
  }

  OracleResult out;
  out.window = w;
  if (tail_attenuation(potential, scale.beta(), w, e[m - 1]) < kMinTailExponent)
    out.flags.insert(Flag::boundary_contaminated);

  out.energies.reserve(m);
  for (double v : e) out.energies.push_back(f.v_min + v);
  return out;
}

}  // namespace semiq
