#include "weil/rig.hpp"

#include "weil/errors.hpp"

namespace weil {

std::string_view rig_name(Rig r) noexcept { return r == Rig::Bool2 ? "bool2" : "nat"; }

Rig parse_rig(std::string_view name) {
  if (name == "bool2") return Rig::Bool2;
  if (name == "nat") return Rig::Nat;
  throw ValidationError("unknown rig '" + std::string(name) + "' (expected bool2 or nat)");
}

}  // namespace weil
