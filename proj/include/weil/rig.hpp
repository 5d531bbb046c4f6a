#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace weil {

// The two coefficient rigs.  Both share the unsigned integer carrier; the
// tag selects the addition law (max for Bool2, integer sum for Nat).  Only
// these two are supported.  A further rig would add a tag here and a case in
// add()/mul()/valid().
enum class Rig : std::uint8_t { Bool2, Nat };

using Coeff = std::uint64_t;

constexpr Coeff add(Coeff a, Coeff b, Rig r) noexcept {
  return r == Rig::Bool2 ? (a > b ? a : b) : a + b;
}

constexpr Coeff mul(Coeff a, Coeff b, Rig) noexcept { return a * b; }

constexpr bool valid(Coeff a, Rig r) noexcept { return r == Rig::Nat || a <= 1; }

// The rig morphism N -> 2 (0 -> 0, n > 0 -> 1).
constexpr Coeff psi(Coeff a) noexcept { return a == 0 ? 0 : 1; }

std::string_view rig_name(Rig r) noexcept;

// Accepts "bool2" and "nat"; throws ValidationError otherwise.
Rig parse_rig(std::string_view name);

}  // namespace weil
