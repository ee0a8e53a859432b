#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace semiq {

enum class Flag : std::uint8_t {
  phi_route_unavailable_k_zero,
  a1_condition_violated,
  adiabatic_warning,
  quadrature_not_converged,
  fixed_point_not_converged,
  near_threshold,
  boundary_contaminated,
};

std::string_view to_string(Flag flag) noexcept;

/// Small value-type set of flags. Iteration order is the enum order, so the
/// serialized form is deterministic.
class FlagSet {
 public:
  FlagSet() = default;
  FlagSet(std::initializer_list<Flag> flags) {
    for (Flag f : flags) insert(f);
  }

  void insert(Flag f) noexcept { bits_ |= bit(f); }
  void merge(FlagSet other) noexcept { bits_ |= other.bits_; }
  [[nodiscard]] bool contains(Flag f) const noexcept { return (bits_ & bit(f)) != 0; }
  [[nodiscard]] bool empty() const noexcept { return bits_ == 0; }

  [[nodiscard]] std::vector<Flag> items() const;
  /// Tokens joined with `sep`; empty string for an empty set.
  [[nodiscard]] std::string join(std::string_view sep = ";") const;

  friend bool operator==(FlagSet, FlagSet) = default;

 private:
  static constexpr std::uint32_t bit(Flag f) noexcept {
    return std::uint32_t{1} << static_cast<unsigned>(f);
  }
  std::uint32_t bits_ = 0;
};

}  // namespace semiq
