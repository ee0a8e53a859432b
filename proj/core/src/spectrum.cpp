#include "semiq/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semiq/action.hpp"
#include "semiq/errors.hpp"

namespace semiq {

std::string_view to_string(SolverOrder order) noexcept {
  switch (order) {
    case SolverOrder::order0: return "order0";
    case SolverOrder::order1: return "order1";
    case SolverOrder::full: return "full";
    case SolverOrder::adiabatic: return "adiabatic";
  }
  return "unknown";
}

std::optional<SolverOrder> parse_solver_order(std::string_view name) noexcept {
  for (auto o : {SolverOrder::order0, SolverOrder::order1, SolverOrder::full, SolverOrder::adiabatic})
    if (name == to_string(o)) return o;
  return std::nullopt;
}

void SolverConfig::validate() const {
  if (!(root_tol > 0)) throw InvalidInput("root_tol must be positive");
  if (max_iter < 1 || max_fp_iter < 1) throw InvalidInput("iteration limits must be positive");
  if (!(fixed_point_damping > 0) || fixed_point_damping > 1)
    throw InvalidInput("fixed_point_damping must lie in (0, 1]");
  quadrature.validate();
}

namespace {

// Phi is evaluated this close below a finite depth to stand in for the
// threshold value; the turning points recede to infinity at the depth itself.
constexpr double kTopGap = 1e-12;
constexpr double kNearThresholdFraction = 1e-6;

struct Root {
  double excitation;
  int iterations;
};

class Solver {
 public:
  Solver(const PotentialSpec& p, QuantumScale scale, const SolverConfig& config)
      : p_(p), scale_(scale), config_(config), frame_(p.frame()) {
    config_.validate();
    if (finite()) cap_ = frame_.depth * (1 - kTopGap);
  }

  [[nodiscard]] bool finite() const { return std::isfinite(frame_.depth); }
  [[nodiscard]] FlagSet& flags() { return flags_; }

  double phi(double e) {
    const IntegralResult r = action(p_, scale_, e, config_.quadrature);
    if (!r.converged) flags_.insert(Flag::quadrature_not_converged);
    return r.value;
  }

  double phi_top() {
    if (!phi_top_) phi_top_ = phi(cap_);
    return *phi_top_;
  }

  CorrectionEstimate delta1_at(double e) {
    CorrectionEstimate est = delta1_from_action(p_, scale_, e, config_.quadrature);
    if (est.flags.contains(Flag::phi_route_unavailable_k_zero))
      throw InvalidInput("the action route needs a parabolic minimum (k > 0)");
    flags_.merge(est.flags);
    return est;
  }

  // delta1 held fixed for a level: closed form where the coefficients are
  // known, otherwise the action route at the level's order-0 energy.
  CorrectionEstimate constant_delta1(int n) {
    if (const auto& c5 = p_.class_five()) {
      CorrectionEstimate est = delta1_closed_form(*c5, scale_);
      flags_.merge(est.flags);
      return est;
    }
    return delta1_at(solve(n + 0.5, config_.root_tol).excitation);
  }

  Root solve(double target, double tol) {
    if (!(target > 0)) throw InvalidInput("quantization target must be positive");
    if (finite() && !(target < phi_top()))
      throw InvalidInput("level with Phi = " + std::to_string(target) + " is not bound");

    int iterations = 0;
    auto f = [&](double e) {
      ++iterations;
      return phi(e) - target;
    };

    double seed = frame_.k > 0 ? 2 * scale_.beta() * std::sqrt(frame_.k) * target
                               : (finite() ? 0.5 * cap_ : 1.0);
    if (finite() && !(seed < cap_)) seed = 0.5 * cap_;

    double lo = seed, hi = seed;
    double flo = f(seed), fhi = flo;
    if (flo == 0) return {seed, iterations};
    if (flo < 0) {
      while (true) {
        if (iterations > config_.max_iter) throw ConvergenceFailure("no upper bracket for level");
        hi = finite() && 2 * lo >= cap_ ? 0.5 * (lo + cap_) : 2 * lo;
        if (finite() && hi >= cap_) hi = cap_;
        fhi = f(hi);
        if (fhi >= 0) break;
        if (finite() && hi == cap_) throw ConvergenceFailure("no upper bracket below the well top");
        lo = hi;
        flo = fhi;
      }
    } else {
      while (true) {
        if (iterations > config_.max_iter) throw ConvergenceFailure("no lower bracket for level");
        lo = 0.5 * hi;
        flo = f(lo);
        if (flo <= 0) break;
        hi = lo;
        fhi = flo;
      }
    }
    if (flo == 0) return {lo, iterations};
    if (fhi == 0) return {hi, iterations};

    // Illinois regula falsi with a bisection fallback when the bracket
    // stalls.
    int last_side = 0;
    double width_before = hi - lo;
    for (int step = 0;; ++step) {
      const bool near_top = finite() && frame_.depth - hi < kNearThresholdFraction * frame_.depth;
      const double abs_tol = near_top ? tol * frame_.depth : tol * hi;
      if (hi - lo <= abs_tol) break;
      if (iterations > config_.max_iter) throw ConvergenceFailure("root iteration limit reached");

      double x = hi - fhi * (hi - lo) / (fhi - flo);
      if (step % 3 == 2) {
        if (hi - lo > 0.5 * width_before) x = 0.5 * (lo + hi);
        width_before = hi - lo;
      }
      if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
      if (x == lo || x == hi) break;

      const double fx = f(x);
      if (fx == 0) {
        lo = hi = x;
        flo = fhi = 0;
        break;
      }
      if (fx < 0) {
        lo = x;
        flo = fx;
        if (last_side == -1) fhi *= 0.5;
        last_side = -1;
      } else {
        hi = x;
        fhi = fx;
        if (last_side == +1) flo *= 0.5;
        last_side = +1;
      }
    }
    // The Illinois scaling distorts the stored values; compare true residuals.
    const double rlo = std::abs(phi(lo) - target);
    const double rhi = std::abs(phi(hi) - target);
    return {rlo <= rhi ? lo : hi, iterations};
  }

  const PotentialSpec& potential() const { return p_; }
  const SolverConfig& config() const { return config_; }
  const WellFrame& frame() const { return frame_; }

 private:
  const PotentialSpec& p_;
  QuantumScale scale_;
  SolverConfig config_;
  WellFrame frame_;
  double cap_ = std::numeric_limits<double>::infinity();
  std::optional<double> phi_top_;
  FlagSet flags_;
};

Level finish(Solver& solver, int n, SolverOrder order, double excitation, double delta1,
             double delta, int iterations) {
  Level level;
  level.n = n;
  level.order = order;
  level.energy = solver.frame().v_min + excitation;
  level.delta1 = delta1;
  level.delta_used = delta;
  level.residual = std::abs(solver.phi(excitation) - (n + 0.5 + delta));
  level.iterations = iterations;
  const WellFrame& f = solver.frame();
  if (std::isfinite(f.depth) && f.depth - excitation < kNearThresholdFraction * f.depth)
    solver.flags().insert(Flag::near_threshold);
  level.flags = solver.flags();
  return level;
}

Level solve_adiabatic(Solver& solver, int n) {
  const SolverConfig& cfg = solver.config();
  if (!solver.frame().parabolic())
    throw InvalidInput("adiabatic order needs a parabolic minimum (k > 0)");
  // Inner roots are resolved well below the outer tolerance so that the
  // fixed-point increments are not dominated by root noise.
  const double inner_tol = std::max(1e-3 * cfg.root_tol, 4 * std::numeric_limits<double>::epsilon());

  Root r = solver.solve(n + 0.5, inner_tol);
  double e = r.excitation;
  int iterations = 0;
  bool converged = false;
  for (; iterations < cfg.max_fp_iter; ++iterations) {
    const double delta = resum_delta(solver.delta1_at(e).delta1);
    r = solver.solve(n + 0.5 + delta, inner_tol);
    const double step = cfg.fixed_point_damping * (r.excitation - e);
    e += step;
    if (std::abs(step) < cfg.root_tol * e) {
      e = r.excitation;
      converged = true;
      ++iterations;
      break;
    }
  }
  if (!converged) solver.flags().insert(Flag::fixed_point_not_converged);
  const double delta1 = solver.delta1_at(e).delta1;
  return finish(solver, n, SolverOrder::adiabatic, e, delta1, resum_delta(delta1), iterations);
}

}  // namespace

std::optional<int> count_levels(const PotentialSpec& potential, QuantumScale scale,
                                SolverOrder order, const SolverConfig& config) {
  Solver solver(potential, scale, config);
  if (!solver.finite()) return std::nullopt;
  const double top = solver.phi_top();

  auto count_with = [top](double delta) {
    int n = 0;
    while (n + 0.5 + delta < top) ++n;
    return n;
  };

  switch (order) {
    case SolverOrder::order0: return count_with(0.0);
    case SolverOrder::order1:
    case SolverOrder::full: {
      auto as_delta = [order](double d1) { return order == SolverOrder::full ? resum_delta(d1) : d1; };
      if (const auto& c5 = potential.class_five())
        return count_with(as_delta(delta1_closed_form(*c5, scale).delta1));
      int n = 0;
      const int bound0 = count_with(0.0);
      while (n < bound0 && n + 0.5 + as_delta(solver.constant_delta1(n).delta1) < top) ++n;
      return n;
    }
    case SolverOrder::adiabatic: {
      if (!potential.frame().parabolic())
        throw InvalidInput("adiabatic order needs a parabolic minimum (k > 0)");
      const double cap = potential.frame().depth * (1 - kTopGap);
      return count_with(resum_delta(solver.delta1_at(cap).delta1));
    }
  }
  return std::nullopt;
}

Level solve_level(const PotentialSpec& potential, QuantumScale scale, int n, SolverOrder order,
                  const SolverConfig& config) {
  if (n < 0) throw InvalidInput("quantum number must be non-negative");
  Solver solver(potential, scale, config);
  const double tol = config.root_tol;

  switch (order) {
    case SolverOrder::order0: {
      const Root r = solver.solve(n + 0.5, tol);
      return finish(solver, n, order, r.excitation, 0.0, 0.0, r.iterations);
    }
    case SolverOrder::order1:
    case SolverOrder::full: {
      const double d1 = solver.constant_delta1(n).delta1;
      const double delta = order == SolverOrder::full ? resum_delta(d1) : d1;
      const Root r = solver.solve(n + 0.5 + delta, tol);
      return finish(solver, n, order, r.excitation, d1, delta, r.iterations);
    }
    case SolverOrder::adiabatic: return solve_adiabatic(solver, n);
  }
  throw InvalidInput("unknown solver order");
}

Spectrum solve_spectrum(const PotentialSpec& potential, QuantumScale scale, SolverOrder order,
                        std::optional<int> n_max, const SolverConfig& config) {
  if (n_max && *n_max < 0) throw InvalidInput("n_max must be non-negative");
  const std::optional<int> bound = count_levels(potential, scale, order, config);
  if (!bound && !n_max) throw InvalidInput("n_max is required for confining potentials");

  int count = n_max ? *n_max + 1 : *bound;
  if (bound) count = std::min(count, *bound);

  Spectrum out;
  out.levels.reserve(count);
  for (int n = 0; n < count; ++n) out.levels.push_back(solve_level(potential, scale, n, order, config));

  if (out.levels.size() >= 2) {
    std::vector<LevelDelta> deltas;
    deltas.reserve(out.levels.size());
    for (const Level& l : out.levels) deltas.push_back({l.n, l.delta1, l.delta_used});
    out.diagnostics = adiabatic_validity(deltas);
    for (std::size_t i = 0; i < out.levels.size(); ++i)
      if (out.diagnostics->levels[i].warning) out.levels[i].flags.insert(Flag::adiabatic_warning);
  }
  return out;
}

ComparisonTable compare(const PotentialSpec& potential, QuantumScale scale,
                        const std::vector<SolverOrder>& orders, ReferenceKind reference,
                        std::optional<int> n_max, const SolverConfig& config,
                        const GridConfig& grid) {
  if (orders.empty()) throw InvalidInput("at least one solver order is required");
  if (reference == ReferenceKind::analytic && !has_analytic_spectrum(potential.kind()))
    throw InvalidInput("no analytic reference for potential " +
                       std::string(to_string(potential.kind())));

  ComparisonTable table;
  table.orders = orders;
  table.reference = reference;
  std::size_t rows = std::numeric_limits<std::size_t>::max();
  for (SolverOrder o : orders) {
    table.spectra.push_back(solve_spectrum(potential, scale, o, n_max, config));
    rows = std::min(rows, table.spectra.back().levels.size());
  }
  if (rows == 0) return table;

  std::vector<double> ref;
  FlagSet ref_flags;
  if (reference == ReferenceKind::analytic) {
    ref = analytic_spectrum(potential, scale, static_cast<int>(rows));
  } else {
    OracleResult o = eigenvalues_fd(potential, scale, grid, static_cast<int>(rows));
    ref = std::move(o.energies);
    ref_flags = o.flags;
  }
  rows = std::min(rows, ref.size());

  const Spectrum& last = table.spectra.back();
  for (std::size_t i = 0; i < rows; ++i) {
    ComparisonRow row;
    row.n = static_cast<int>(i);
    row.reference = ref[i];
    for (const Spectrum& s : table.spectra) {
      const Level& l = s.levels[i];
      const double err = std::abs(l.energy - ref[i]);
      row.energies.push_back(l.energy);
      row.abs_err.push_back(err);
      row.rel_err.push_back(ref[i] != 0 ? err / std::abs(ref[i]) : err);
      row.flags.merge(l.flags);
    }
    row.flags.merge(ref_flags);
    row.delta1 = last.levels[i].delta1;
    row.delta = last.levels[i].delta_used;
    if (last.diagnostics) row.d_delta_dn = last.diagnostics->levels[i].d_delta_dn;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace semiq
