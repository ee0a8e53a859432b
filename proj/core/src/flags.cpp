#include "semiq/flags.hpp"

namespace semiq {

namespace {
constexpr Flag kAllFlags[] = {
    Flag::phi_route_unavailable_k_zero, Flag::a1_condition_violated,
    Flag::adiabatic_warning,            Flag::quadrature_not_converged,
    Flag::fixed_point_not_converged,    Flag::near_threshold,
    Flag::boundary_contaminated,
};
}  // namespace

std::string_view to_string(Flag flag) noexcept {
  switch (flag) {
    case Flag::phi_route_unavailable_k_zero: return "phi_route_unavailable_k_zero";
    case Flag::a1_condition_violated: return "a1_condition_violated";
    case Flag::adiabatic_warning: return "adiabatic_warning";
    case Flag::quadrature_not_converged: return "quadrature_not_converged";
    case Flag::fixed_point_not_converged: return "fixed_point_not_converged";
    case Flag::near_threshold: return "near_threshold";
    case Flag::boundary_contaminated: return "boundary_contaminated";
  }
  return "unknown";
}

std::vector<Flag> FlagSet::items() const {
  std::vector<Flag> out;
  for (Flag f : kAllFlags)
    if (contains(f)) out.push_back(f);
  return out;
}

std::string FlagSet::join(std::string_view sep) const {
  std::string out;
  for (Flag f : items()) {
    if (!out.empty()) out += sep;
    out += to_string(f);
  }
  return out;
}

}  // namespace semiq
