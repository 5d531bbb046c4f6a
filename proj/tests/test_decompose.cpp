#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "sampling.hpp"
#include "weil/decompose.hpp"
#include "weil/errors.hpp"
#include "weil/syntax.hpp"
#include "weil/verify.hpp"

using namespace weil;

namespace {

Morphism bool2(const std::string& text) { return parse_morphism(text, Rig::Bool2); }
Morphism nat(const std::string& text) { return parse_morphism(text, Rig::Nat); }

bool uses_only(const GenExpr& e, const std::function<bool(GenExpr::Kind)>& ok) {
  if (!ok(e.kind())) return false;
  switch (e.kind()) {
    case GenExpr::Kind::Tensor:
    case GenExpr::Kind::Compose:
    case GenExpr::Kind::Pair:
      return uses_only(e.first(), ok) && uses_only(e.second(), ok);
    default:
      return true;
  }
}

bool round_trips(const Morphism& f) { return evaluate(decompose(f), f.rig()) == f; }

}  // namespace

TEST_CASE("one circle ladders") {
  Morphism f = bool2("f : W -> 5W ; x |-> y1 y3 y4");
  GenExpr e = decompose_one_circle(f);
  CHECK(to_string(e) == "comp(tensor(id(W), tensor(eta, tensor(id(W), tensor(id(W), eta)))), comp(tensor(id(W), l), l))");
  CHECK(evaluate(e, Rig::Bool2) == f);

  Morphism l = gen::l_w(Rig::Bool2);
  CHECK(to_string(decompose_one_circle(l)) == "comp(tensor(id(W), id(W)), l)");
  CHECK(evaluate(decompose_one_circle(l), Rig::Bool2) == l);

  Morphism y2 = bool2("f : W -> 2W ; x |-> y2");
  CHECK(to_string(decompose_one_circle(y2)) == "comp(tensor(eta, id(W)), id(W))");
  CHECK(evaluate(decompose_one_circle(y2), Rig::Bool2) == y2);

  CHECK_THROWS_AS(decompose_one_circle(bool2("f : W -> 2W ; x |-> y1 + y1 y2")), PreconditionViolation);
  CHECK_THROWS_AS(decompose_one_circle(bool2("f : W -> W ; x |-> 0")), PreconditionViolation);
  CHECK_THROWS_AS(decompose_one_circle(nat("f : W -> W ; x |-> 2 y")), PreconditionViolation);
}

TEST_CASE("circles and intersections") {
  Morphism f = bool2("f : 2W -> 3W ; x1 |-> y1 y2 + y2 y3 ; x2 |-> y1 + y1 y3");
  std::vector<Circle> cs = circles(f);
  REQUIRE(cs.size() == 4);
  CHECK(cs[0] == Circle{0, 0b011, 1});
  CHECK(cs[1] == Circle{0, 0b110, 1});
  CHECK(cs[2] == Circle{1, 0b001, 1});
  CHECK(cs[3] == Circle{1, 0b101, 1});
  CHECK(has_intersecting_circles(f));
  CHECK_FALSE(has_intersecting_circles(bool2("g : 2W -> 3W ; x1 |-> y1 y2 ; x2 |-> y3")));
}

TEST_CASE("choice rule") {
  Morphism f = bool2("f : 2W -> 3W ; x1 |-> y1 y2 + y1 y3 ; x2 |-> y2 y3");
  ChoiceAssignment ch = choice_rule(f);
  CHECK(ch.multiplicity == std::vector<int>{2, 2, 2});
  CHECK(ch.offset == std::vector<int>{0, 2, 4});
  CHECK(to_string(ch.slot_object) == "W^2 @ W^2 @ W^2");
  // Slots ordered y1, y1', y2, y2', y3, y3'.
  CHECK(ch.lifted == bool2("f' : 2W -> W^2 @ W^2 @ W^2 ; x1 |-> y1 y3 + y2 y5 ; x2 |-> y4 y6"));

  Morphism one = bool2("g : W -> 2W ; x |-> y1 y2");
  CHECK(choice_rule(one).lifted == one);
  // An unused target generator gets no slot.
  CHECK(choice_rule(bool2("g : W -> 3W ; x |-> y1 y3")).lifted == bool2("g : W -> 2W ; x |-> y1 y2"));

  ChoiceAssignment z = choice_rule(bool2("z : W -> 2W ; x |-> 0"));
  CHECK(z.multiplicity == std::vector<int>{0, 0});
  CHECK(z.slot_object.kind() == Cotree::Kind::K);

  CHECK_THROWS_AS(choice_rule(bool2("h : W -> W^2 ; x |-> y1")), PreconditionViolation);
}

TEST_CASE("towers and networks") {
  for (int m = 0; m <= 4; ++m) {
    Morphism p = evaluate(plus_tower(m), Rig::Bool2);
    CHECK(p.target() == WeilObject(Cotree::w()));
    CHECK(p.source() == WeilObject(Cotree::power(m)));
    for (int i = 0; i < m; ++i) CHECK(to_string(p.image(i), "y", 1) == "y");
  }
  for (const Cotree& t : test_objects(3)) {
    CHECK(evaluate(eps_tower(t), Rig::Bool2) == eps(WeilObject(t), Rig::Bool2));
    CHECK(evaluate(eta_tower(t), Rig::Bool2) == eta(WeilObject(t), Rig::Bool2));
  }
  Morphism perm = evaluate(permutation_network({2, 0, 1}), Rig::Bool2);
  CHECK(perm == bool2("p : 3W -> 3W ; x1 |-> y3 ; x2 |-> y1 ; x3 |-> y2"));
  CHECK(to_string(permutation_network({0, 1})) == "id(2W)");
}

TEST_CASE("decompose examples") {
  Morphism three = bool2("f : W -> 3W ; x |-> y1 y2 + y1 y3 + y2 y3");
  GenExpr e = decompose(three);
  CHECK(evaluate(e, Rig::Bool2) == three);
  REQUIRE(e.kind() == GenExpr::Kind::Compose);
  CHECK(to_string(e.first()) == "tensor(plus, tensor(plus, plus))");

  Morphism zero = bool2("z : W -> 3W ; x |-> 0");
  GenExpr ez = decompose(zero);
  CHECK(evaluate(ez, Rig::Bool2) == zero);
  CHECK(to_string(ez) == "comp(tensor(eta, tensor(eta, eta)), eps)");

  Morphism id2 = identity(WeilObject(Cotree::power(2)), Rig::Bool2);
  GenExpr ei = decompose(id2);
  CHECK(ei.kind() == GenExpr::Kind::Pair);
  CHECK(evaluate(ei, Rig::Bool2) == id2);

  Morphism mixed = bool2("f : 2W -> 3W ; x1 |-> y1 y2 + y2 y3 ; x2 |-> y1 + y1 y3");
  CHECK(round_trips(mixed));
}

TEST_CASE("maps into k are eps towers") {
  for (const Cotree& t : test_objects(3)) {
    Morphism f = eps(WeilObject(t), Rig::Bool2);
    GenExpr e = decompose(f);
    CHECK(evaluate(e, Rig::Bool2) == f);
    CHECK(uses_only(e, [](GenExpr::Kind k) {
      return k == GenExpr::Kind::Eps || k == GenExpr::Kind::Tensor || k == GenExpr::Kind::Compose ||
             k == GenExpr::Kind::Proj || k == GenExpr::Kind::Id;
    }));
  }
}

TEST_CASE("round trip over every Bool2 morphism up to 2 vertices") {
  auto objs = test_objects(2);
  int count = 0;
  for (const Cotree& a : objs) {
    for (const Cotree& b : objs) {
      for (const Morphism& f : enumerate_hom(a, b).morphisms) {
        GenExpr e = decompose(f);
        CHECK(evaluate(e, Rig::Bool2) == f);
        CHECK(uses_only(e, [](GenExpr::Kind k) { return k != GenExpr::Kind::Ghat; }));
        ++count;
      }
    }
  }
  CHECK(count > 100);
}

TEST_CASE("round trip on a stride of the 3-vertex Hom sets") {
  auto objs = test_objects(3);
  for (const Cotree& a : objs) {
    for (const Cotree& b : objs) {
      auto hom = hom_by_cliques(a, b);
      for (std::size_t i = 0; i < hom.size(); i += 97) CHECK(round_trips(hom[i]));
    }
  }
}

TEST_CASE("round trip over Nat with coefficients up to 3") {
  std::mt19937 rng(5);
  auto objs = test_objects(3);
  int with_coeff = 0;
  for (int trial = 0; trial < 150; ++trial) {
    Morphism f = sampling::with_coefficients(rng, sampling::random_bool2(rng, objs), 3);
    with_coeff += sampling::has_coefficient_above_one(f);
    CHECK(round_trips(f));
  }
  CHECK(with_coeff > 50);
  CHECK(round_trips(nat("g : W -> W ; x |-> 2 y")));
  CHECK(round_trips(nat("g : W -> 2W ; x |-> 3 y1 + 2 y1 y2")));
}

TEST_CASE("determinism and traces") {
  Morphism f = bool2("f : 2W -> 3W ; x1 |-> y1 y2 + y1 y3 ; x2 |-> y2 y3");
  std::string first = to_string(decompose(f));
  CHECK(to_string(decompose(f)) == first);

  DecompositionTrace tr;
  GenExpr e = decompose(f, &tr);
  REQUIRE_FALSE(tr.steps.empty());
  CHECK(tr.replay() == e);
  CHECK(to_string(tr.steps.back().expr) == first);
  for (const TraceStep& s : tr.steps) CHECK_NOTHROW(infer(s.expr));
  bool split = false;
  for (const TraceStep& s : tr.steps) split |= s.tag == StepTag::SplitGeneral;
  CHECK(split);
  CHECK(tag_name(StepTag::PullbackTarget) == "PullbackTarget");
}

TEST_CASE("coefficient steps insert ghat") {
  DecompositionTrace tr;
  GenExpr e = decompose(nat("g : W -> 2W ; x |-> 3 y1"), &tr);
  bool coefficient = false;
  for (const TraceStep& s : tr.steps) coefficient |= s.tag == StepTag::Coefficient;
  CHECK(coefficient);
  CHECK_FALSE(uses_only(e, [](GenExpr::Kind k) { return k != GenExpr::Kind::Ghat; }));
}
