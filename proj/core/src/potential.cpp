#include "semiq/potential.hpp"

#include <algorithm>
#include <numbers>

#include "semiq/errors.hpp"

namespace semiq {

QuantumScale::QuantumScale(double beta) : beta_(beta) {
  if (!(beta > 0) || !std::isfinite(beta))
    throw InvalidInput("beta must be positive and finite, got " + std::to_string(beta));
}

std::string_view to_string(PotentialKind kind) noexcept {
  switch (kind) {
    case PotentialKind::harmonic: return "harmonic";
    case PotentialKind::poschl_teller: return "poschl_teller";
    case PotentialKind::trig_tan2: return "trig_tan2";
    case PotentialKind::morse: return "morse";
    case PotentialKind::gaussian_well: return "gaussian_well";
    case PotentialKind::tabulated: return "tabulated";
  }
  return "unknown";
}

std::optional<PotentialKind> parse_potential_kind(std::string_view name) noexcept {
  std::string norm(name);
  std::replace(norm.begin(), norm.end(), '-', '_');
  for (auto k : {PotentialKind::harmonic, PotentialKind::poschl_teller, PotentialKind::trig_tan2,
                 PotentialKind::morse, PotentialKind::gaussian_well, PotentialKind::tabulated}) {
    if (norm == to_string(k)) return k;
  }
  return std::nullopt;
}

double ClassFiveCoefficients::s(double x) const {
  switch (s_kind) {
    case GeneratorKind::identity: return x;
    case GeneratorKind::tanh: return std::tanh(rate * x);
    case GeneratorKind::tan: return std::tan(rate * x);
    case GeneratorKind::exp_decay: return std::exp(-rate * x);
  }
  return x;
}

double ClassFiveCoefficients::ds_dx(double x) const {
  switch (s_kind) {
    case GeneratorKind::identity: return 1.0;
    case GeneratorKind::tanh: {
      const double c = std::cosh(rate * x);
      return rate / (c * c);
    }
    case GeneratorKind::tan: {
      const double c = std::cos(rate * x);
      return rate / (c * c);
    }
    case GeneratorKind::exp_decay: return -rate * std::exp(-rate * x);
  }
  return 1.0;
}

// ---------------------------------------------------------------------------

PotentialSpec::PotentialSpec(PotentialKind kind, std::map<std::string, double> params,
                             Interval domain, WellFrame frame,
                             std::optional<ClassFiveCoefficients> class_five, Model model)
    : state_(std::make_shared<const State>(
          State{kind, std::move(params), domain, std::move(model)})),
      frame_(frame),
      class_five_(class_five) {}

double PotentialSpec::param(const std::string& name) const {
  auto it = state_->params.find(name);
  if (it == state_->params.end()) throw InvalidInput("potential has no parameter '" + name + "'");
  return it->second;
}

void PotentialSpec::require_interior(double x) const {
  if (!state_->domain.interior(x))
    throw InvalidInput("x = " + std::to_string(x) + " lies outside the potential's domain");
}

double PotentialSpec::value(double x) const { return frame_.v_min + excess(x); }

double PotentialSpec::excess(double x) const {
  require_interior(x);
  return state_->model.excess(x);
}

double PotentialSpec::derivative(double x) const {
  require_interior(x);
  return state_->model.d1(x);
}

double PotentialSpec::second_derivative(double x) const {
  require_interior(x);
  return state_->model.d2(x);
}

PotentialSpec PotentialSpec::shifted(double offset) const {
  PotentialSpec out = *this;
  out.frame_.v_min += offset;
  if (out.class_five_) out.class_five_->C += offset;
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::string> required_params(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::harmonic: return {"k"};
    case PotentialKind::poschl_teller: return {"V0", "alpha"};
    case PotentialKind::trig_tan2: return {"V0", "alpha"};
    case PotentialKind::morse: return {"D", "alpha"};
    case PotentialKind::gaussian_well: return {"V0", "w"};
    case PotentialKind::tabulated: return {};
  }
  return {};
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::map<std::string, double> checked_params(PotentialKind kind,
                                             const std::map<std::string, double>& params) {
  const auto names = required_params(kind);
  for (const auto& [name, value] : params) {
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw InvalidInput("unknown parameter '" + name + "' for potential " +
                         std::string(to_string(kind)));
  }
  std::map<std::string, double> out;
  for (const auto& name : names) {
    auto it = params.find(name);
    if (it == params.end())
      throw InvalidInput("missing parameter '" + name + "' for potential " +
                         std::string(to_string(kind)));
    if (!(it->second > 0) || !std::isfinite(it->second))
      throw InvalidInput("parameter '" + name + "' must be positive and finite");
    out.emplace(name, it->second);
  }
  return out;
}

PotentialSpec make_harmonic(std::map<std::string, double> p) {
  const double k = p.at("k");
  PotentialSpec::Model m;
  m.excess = [k](double x) { return k * x * x; };
  m.d1 = [k](double x) { return 2 * k * x; };
  m.d2 = [k](double) { return 2 * k; };
  m.inverse = [k](double e) {
    const double x = std::sqrt(e / k);
    return TurningPoints{-x, x};
  };
  ClassFiveCoefficients c{std::sqrt(k), 0, 0, 0, 0, 1, GeneratorKind::identity, 1};
  return PotentialSpec(PotentialKind::harmonic, std::move(p), Interval{}, WellFrame{0, 0, k, kInf},
                       c, std::move(m));
}

PotentialSpec make_poschl_teller(std::map<std::string, double> p) {
  const double v0 = p.at("V0");
  const double a = p.at("alpha");
  PotentialSpec::Model m;
  m.excess = [v0, a](double x) {
    const double t = std::tanh(a * x);
    return v0 * t * t;
  };
  m.d1 = [v0, a](double x) {
    const double t = std::tanh(a * x);
    return 2 * v0 * a * t * (1 - t * t);
  };
  m.d2 = [v0, a](double x) {
    const double t = std::tanh(a * x);
    return 2 * v0 * a * a * (1 - t * t) * (1 - 3 * t * t);
  };
  m.inverse = [v0, a](double e) {
    const double x = std::atanh(std::sqrt(e / v0)) / a;
    return TurningPoints{-x, x};
  };
  ClassFiveCoefficients c{std::sqrt(v0), 0, -v0, -a, 0, a, GeneratorKind::tanh, a};
  return PotentialSpec(PotentialKind::poschl_teller, std::move(p), Interval{},
                       WellFrame{0, -v0, v0 * a * a, v0}, c, std::move(m));
}

PotentialSpec make_trig_tan2(std::map<std::string, double> p) {
  const double v0 = p.at("V0");
  const double a = p.at("alpha");
  PotentialSpec::Model m;
  m.excess = [v0, a](double x) {
    const double t = std::tan(a * x);
    return v0 * t * t;
  };
  m.d1 = [v0, a](double x) {
    const double t = std::tan(a * x);
    return 2 * v0 * a * t * (1 + t * t);
  };
  m.d2 = [v0, a](double x) {
    const double t = std::tan(a * x);
    return 2 * v0 * a * a * (1 + t * t) * (1 + 3 * t * t);
  };
  m.inverse = [v0, a](double e) {
    const double x = std::atan(std::sqrt(e / v0)) / a;
    return TurningPoints{-x, x};
  };
  const double edge = std::numbers::pi / (2 * a);
  ClassFiveCoefficients c{std::sqrt(v0), 0, 0, a, 0, a, GeneratorKind::tan, a};
  return PotentialSpec(PotentialKind::trig_tan2, std::move(p), Interval{-edge, edge},
                       WellFrame{0, 0, v0 * a * a, kInf}, c, std::move(m));
}

PotentialSpec make_morse(std::map<std::string, double> p) {
  const double d = p.at("D");
  const double a = p.at("alpha");
  PotentialSpec::Model m;
  m.excess = [d, a](double x) {
    const double u = std::expm1(-a * x);
    return d * u * u;
  };
  m.d1 = [d, a](double x) {
    const double s = std::exp(-a * x);
    return -2 * d * a * s * std::expm1(-a * x);
  };
  m.d2 = [d, a](double x) {
    const double s = std::exp(-a * x);
    return 2 * d * a * a * s * (2 * s - 1);
  };
  m.inverse = [d, a](double e) {
    const double r = std::sqrt(e / d);
    return TurningPoints{-std::log1p(r) / a, -std::log1p(-r) / a};
  };
  ClassFiveCoefficients c{std::sqrt(d), -2 * d, 0, 0, -a, 0, GeneratorKind::exp_decay, a};
  return PotentialSpec(PotentialKind::morse, std::move(p), Interval{},
                       WellFrame{0, -d, d * a * a, d}, c, std::move(m));
}

PotentialSpec make_gaussian_well(std::map<std::string, double> p) {
  const double v0 = p.at("V0");
  const double w = p.at("w");
  PotentialSpec::Model m;
  m.excess = [v0, w](double x) { return -v0 * std::expm1(-(x * x) / (w * w)); };
  m.d1 = [v0, w](double x) { return 2 * v0 * x / (w * w) * std::exp(-(x * x) / (w * w)); };
  m.d2 = [v0, w](double x) {
    const double u = x * x / (w * w);
    return 2 * v0 / (w * w) * std::exp(-u) * (1 - 2 * u);
  };
  m.inverse = [v0, w](double e) {
    const double x = w * std::sqrt(-std::log1p(-e / v0));
    return TurningPoints{-x, x};
  };
  return PotentialSpec(PotentialKind::gaussian_well, std::move(p), Interval{},
                       WellFrame{0, -v0, v0 / (w * w), v0}, std::nullopt, std::move(m));
}

}  // namespace

PotentialSpec make_catalog_potential(PotentialKind kind,
                                     const std::map<std::string, double>& params) {
  if (kind == PotentialKind::tabulated)
    throw InvalidInput("tabulated potentials are built with load_tabulated");
  auto p = checked_params(kind, params);
  switch (kind) {
    case PotentialKind::harmonic: return make_harmonic(std::move(p));
    case PotentialKind::poschl_teller: return make_poschl_teller(std::move(p));
    case PotentialKind::trig_tan2: return make_trig_tan2(std::move(p));
    case PotentialKind::morse: return make_morse(std::move(p));
    case PotentialKind::gaussian_well: return make_gaussian_well(std::move(p));
    case PotentialKind::tabulated: break;
  }
  throw InvalidInput("unknown potential kind");
}

double evaluate(const PotentialSpec& potential, double x) { return potential.value(x); }
double derivative(const PotentialSpec& potential, double x) { return potential.derivative(x); }
double second_derivative(const PotentialSpec& potential, double x) {
  return potential.second_derivative(x);
}

WellFrame well_frame(const PotentialSpec& potential) { return potential.frame(); }

// ---------------------------------------------------------------------------
// Turning points

namespace {

void require_bound_window(const WellFrame& f, double excitation) {
  if (!(excitation > 0) || !(excitation < f.depth))
    throw InvalidInput("energy " + std::to_string(f.v_min + excitation) +
                       " is outside the bound window (" + std::to_string(f.v_min) + ", " +
                       std::to_string(f.v_min + f.depth) + ")");
}

// Root of excess(x) = target on the side `dir` of x_min.
double bisect_side(const PotentialSpec& p, double target, int dir) {
  const WellFrame& f = p.frame();
  const Interval dom = p.domain();
  const double edge = dir > 0 ? dom.hi : dom.lo;

  double inner = f.x_min;
  double step = f.k > 0 ? std::sqrt(target / f.k) : 1.0;
  if (std::isfinite(edge)) step = std::min(step, 0.5 * std::abs(edge - f.x_min));

  double outer = f.x_min + dir * step;
  while (p.excess_unchecked(outer) < target) {
    inner = outer;
    step *= 2;
    double next = f.x_min + dir * step;
    if (!dom.interior(next)) {
      // Approach a finite edge geometrically; the excess there is >= depth.
      next = 0.5 * (outer + edge);
      if (next == outer) throw InvalidInput("turning point not found inside the domain");
    }
    outer = next;
    if (!std::isfinite(outer)) throw InvalidInput("turning point search diverged");
  }

  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (inner + outer);
    if (mid == inner || mid == outer) break;
    if (p.excess_unchecked(mid) < target)
      inner = mid;
    else
      outer = mid;
  }
  // Return the side whose excess is closer to the target.
  return std::abs(p.excess_unchecked(inner) - target) <= std::abs(p.excess_unchecked(outer) - target)
             ? inner
             : outer;
}

}  // namespace

TurningPoints turning_points_bisection(const PotentialSpec& potential, double excitation) {
  require_bound_window(potential.frame(), excitation);
  return {bisect_side(potential, excitation, -1), bisect_side(potential, excitation, +1)};
}

TurningPoints turning_points_excess(const PotentialSpec& potential, double excitation) {
  require_bound_window(potential.frame(), excitation);
  if (potential.has_analytic_inverse()) return potential.analytic_turning_points(excitation);
  return turning_points_bisection(potential, excitation);
}

TurningPoints turning_points(const PotentialSpec& potential, double energy) {
  return turning_points_excess(potential, energy - potential.frame().v_min);
}

// ---------------------------------------------------------------------------
// Exact spectra

bool has_analytic_spectrum(PotentialKind kind) noexcept {
  return kind == PotentialKind::harmonic || kind == PotentialKind::poschl_teller ||
         kind == PotentialKind::trig_tan2 || kind == PotentialKind::morse;
}

std::vector<double> analytic_spectrum(const PotentialSpec& potential, QuantumScale scale,
                                      int max_levels) {
  const PotentialKind kind = potential.kind();
  if (!has_analytic_spectrum(kind))
    throw InvalidInput("no exact spectrum for potential " + std::string(to_string(kind)));
  if (max_levels < 0) throw InvalidInput("max_levels must be non-negative");

  const double beta = scale.beta();
  const WellFrame& f = potential.frame();
  std::vector<double> out;

  switch (kind) {
    case PotentialKind::harmonic: {
      const double k = potential.param("k");
      for (int n = 0; n < max_levels; ++n)
        out.push_back(f.v_min + 2 * beta * std::sqrt(k) * (n + 0.5));
      break;
    }
    case PotentialKind::poschl_teller: {
      const double v0 = potential.param("V0");
      const double a = potential.param("alpha");
      const double g = std::sqrt(v0) / (beta * a);
      const double lambda = 0.5 * (1 + std::sqrt(1 + 4 * g * g));
      const double top = f.v_min + f.depth;
      for (int n = 0; n < max_levels && n < lambda - 1; ++n) {
        const double r = lambda - 1 - n;
        out.push_back(top - beta * beta * a * a * r * r);
      }
      break;
    }
    case PotentialKind::trig_tan2: {
      const double v0 = potential.param("V0");
      const double a = potential.param("alpha");
      const double g = std::sqrt(v0) / (beta * a);
      // mu (mu - 1) = g^2, so (n + mu)^2 - g^2 = n^2 + 2 n mu + mu.
      const double mu = 0.5 * (1 + std::sqrt(1 + 4 * g * g));
      for (int n = 0; n < max_levels; ++n)
        out.push_back(f.v_min + beta * beta * a * a * (n * (n + 2 * mu) + mu));
      break;
    }
    case PotentialKind::morse: {
      const double d = potential.param("D");
      const double a = potential.param("alpha");
      const double top = f.v_min + f.depth;
      for (int n = 0; n < max_levels; ++n) {
        const double r = beta * a * (n + 0.5) / std::sqrt(d);
        if (!(r < 1)) break;
        out.push_back(top - d * (1 - r) * (1 - r));
      }
      break;
    }
    default: break;
  }
  return out;
}

std::vector<double> analytic_spectrum(PotentialKind kind,
                                      const std::map<std::string, double>& params,
                                      QuantumScale scale, int max_levels) {
  if (!has_analytic_spectrum(kind))
    throw InvalidInput("no exact spectrum for potential " + std::string(to_string(kind)));
  return analytic_spectrum(make_catalog_potential(kind, params), scale, max_levels);
}

namespace detail {

double golden_section_minimum(const std::function<double(double)>& f, double lo, double hi,
                              double abs_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > abs_tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (c == a || d == b) break;
  }
  return 0.5 * (a + b);
}

}  // namespace detail

}  // namespace semiq
