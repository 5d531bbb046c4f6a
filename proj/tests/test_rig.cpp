#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weil/errors.hpp"
#include "weil/rig.hpp"

using namespace weil;

TEST_CASE("addition laws") {
  CHECK(add(1, 1, Rig::Bool2) == 1);
  CHECK(add(0, 7, Rig::Nat) == 7);
  CHECK(add(2, 3, Rig::Nat) == 5);
  CHECK(add(0, 1, Rig::Bool2) == 1);
  CHECK(add(0, 0, Rig::Bool2) == 0);
}

TEST_CASE("multiplication") {
  CHECK(mul(1, 1, Rig::Bool2) == 1);
  CHECK(mul(1, 0, Rig::Bool2) == 0);
  CHECK(mul(2, 3, Rig::Nat) == 6);
}

TEST_CASE("rig axioms, exhaustive up to 4") {
  for (Rig r : {Rig::Bool2, Rig::Nat}) {
    Coeff top = r == Rig::Bool2 ? 1 : 4;
    for (Coeff a = 0; a <= top; ++a) {
      for (Coeff b = 0; b <= top; ++b) {
        CHECK(add(a, b, r) == add(b, a, r));
        CHECK(mul(a, b, r) == mul(b, a, r));
        CHECK(mul(0, a, r) == 0);
        CHECK(add(0, a, r) == a);
        CHECK(mul(1, a, r) == a);
        for (Coeff c = 0; c <= top; ++c) {
          CHECK(add(add(a, b, r), c, r) == add(a, add(b, c, r), r));
          CHECK(mul(mul(a, b, r), c, r) == mul(a, mul(b, c, r), r));
          CHECK(mul(a, add(b, c, r), r) == add(mul(a, b, r), mul(a, c, r), r));
        }
      }
    }
  }
}

TEST_CASE("bool2 addition is idempotent") {
  for (Coeff a : {0, 1}) CHECK(add(a, a, Rig::Bool2) == a);
}

TEST_CASE("psi is a rig morphism on values up to 4") {
  for (Coeff a = 0; a <= 4; ++a) {
    for (Coeff b = 0; b <= 4; ++b) {
      CHECK(psi(add(a, b, Rig::Nat)) == add(psi(a), psi(b), Rig::Bool2));
      CHECK(psi(mul(a, b, Rig::Nat)) == mul(psi(a), psi(b), Rig::Bool2));
    }
  }
  CHECK(psi(0) == 0);
  CHECK(psi(3) == 1);
}

TEST_CASE("valid coefficients") {
  CHECK(valid(1, Rig::Bool2));
  CHECK_FALSE(valid(2, Rig::Bool2));
  CHECK(valid(9, Rig::Nat));
}

TEST_CASE("rig names") {
  CHECK(parse_rig("bool2") == Rig::Bool2);
  CHECK(parse_rig("nat") == Rig::Nat);
  CHECK(rig_name(Rig::Nat) == "nat");
  CHECK_THROWS_AS(parse_rig("int"), ValidationError);
}
