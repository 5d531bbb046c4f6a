#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weil/errors.hpp"
#include "weil/genexpr.hpp"
#include "weil/syntax.hpp"

using namespace weil;

namespace {

Morphism bool2(const std::string& text) { return parse_morphism(text, Rig::Bool2); }
Morphism nat(const std::string& text) { return parse_morphism(text, Rig::Nat); }

const Cotree W = Cotree::w();

bool has_ghat(const GenExpr& e) {
  switch (e.kind()) {
    case GenExpr::Kind::Ghat:
      return true;
    case GenExpr::Kind::Tensor:
    case GenExpr::Kind::Compose:
    case GenExpr::Kind::Pair:
      return has_ghat(e.first()) || has_ghat(e.second());
    default:
      return false;
  }
}

}  // namespace

TEST_CASE("leaves evaluate to the generating maps") {
  CHECK(evaluate(GenExpr::l(), Rig::Bool2) == bool2("l : W -> 2W ; x |-> y1 y2"));
  CHECK(evaluate(GenExpr::c(), Rig::Bool2) == bool2("c : 2W -> 2W ; x1 |-> y2 ; x2 |-> y1"));
  CHECK(evaluate(GenExpr::plus(), Rig::Bool2) == bool2("p : W^2 -> W ; x1 |-> y ; x2 |-> y"));
  CHECK(evaluate(GenExpr::eps(), Rig::Bool2) == bool2("e : W -> k"));
  CHECK(evaluate(GenExpr::eta(), Rig::Bool2) == bool2("e : k -> W"));
  CHECK(evaluate(GenExpr::id(Cotree::copower(2)), Rig::Bool2) == identity(WeilObject(Cotree::copower(2)), Rig::Bool2));
  CHECK(evaluate(GenExpr::proj(Cotree::power(2), 2), Rig::Bool2) == bool2("p : W^2 -> W ; x1 |-> 0 ; x2 |-> y"));
}

TEST_CASE("composite examples") {
  GenExpr e = GenExpr::compose(GenExpr::tensor(GenExpr::id(W), GenExpr::l()), GenExpr::l());
  CHECK(evaluate(e, Rig::Bool2) == bool2("f : W -> 3W ; x |-> y1 y2 y3"));
  GenExpr g2 = GenExpr::compose(GenExpr::plus(), GenExpr::pair(GenExpr::id(W), GenExpr::id(W)));
  CHECK(evaluate(g2, Rig::Nat) == nat("g : W -> W ; x |-> 2 y"));
  CHECK(evaluate(g2, Rig::Bool2) == bool2("g : W -> W ; x |-> y"));
}

TEST_CASE("pair over a common base") {
  // Both branches W -> W (x) W send x to the common W; the pair lands in W (x) W^2.
  GenExpr b = GenExpr::compose(GenExpr::tensor(GenExpr::id(W), GenExpr::eta()), GenExpr::id(W));
  GenExpr q = GenExpr::pair(b, b, W);
  Signature s = infer(q);
  CHECK(to_string(s.target) == "W @ W^2");
  CHECK(evaluate(q, Rig::Bool2) == bool2("q : W -> W @ W^2 ; x |-> y1"));

  // The branches disagree over the base: l(x) = y1 y2 vanishes there.
  GenExpr bad = GenExpr::pair(GenExpr::l(), b, W);
  CHECK_THROWS_AS(evaluate(bad, Rig::Bool2), IllTyped);

  GenExpr prod = GenExpr::pair(GenExpr::l(), GenExpr::l());
  CHECK(to_string(infer(prod).target) == "2W * 2W");
  CHECK(evaluate(prod, Rig::Bool2) == bool2("p : W -> 2W * 2W ; x |-> y1 y2 + y3 y4"));
}

TEST_CASE("type inference") {
  Signature s = infer(GenExpr::tensor(GenExpr::l(), GenExpr::plus()));
  CHECK(to_string(s.source) == "W @ W^2");
  CHECK(to_string(s.target) == "2W @ W");
  try {
    infer(GenExpr::tensor(GenExpr::eps(), GenExpr::compose(GenExpr::l(), GenExpr::l())));
    FAIL("expected IllTyped");
  } catch (const IllTyped& e) {
    CHECK(e.location == "$.right");
  }
  CHECK_THROWS_AS(infer(GenExpr::proj(Cotree::copower(2), 1)), IllTyped);
  CHECK_THROWS_AS(infer(GenExpr::pair(GenExpr::l(), GenExpr::plus())), IllTyped);
}

TEST_CASE("ghat needs nat") {
  CHECK_THROWS_AS(evaluate(GenExpr::ghat(2), Rig::Bool2), IllTyped);
  for (int r = 0; r <= 5; ++r) {
    Morphism m = evaluate(GenExpr::ghat(r), Rig::Nat);
    CHECK(m == ghat(r, Rig::Nat));
    GenExpr x = expand_ghat(GenExpr::ghat(r));
    CHECK_FALSE(has_ghat(x));
    CHECK(evaluate(x, Rig::Nat) == m);
  }
  CHECK(to_string(expand_ghat(GenExpr::ghat(0))) == "comp(eta, eps)");
  CHECK(to_string(expand_ghat(GenExpr::ghat(1))) == "id(W)");
  CHECK(to_string(expand_ghat(GenExpr::ghat(2))) == "comp(plus, pair(id(W), id(W)))");
}

TEST_CASE("printing and sizes") {
  GenExpr e = GenExpr::compose(GenExpr::tensor(GenExpr::id(W), GenExpr::eta()), GenExpr::l());
  CHECK(to_string(e) == "comp(tensor(id(W), eta), l)");
  CHECK(node_count(e) == 5);
  CHECK(to_string(GenExpr::pair(GenExpr::l(), GenExpr::l(), Cotree::copower(2), Cotree::k())) ==
        "pair[2W, k](l, l)");
  CHECK(to_string(GenExpr::proj(Cotree::join(W, Cotree::copower(2)), 1)) == "proj(W * 2W, 1)");
  CHECK(e == GenExpr::compose(GenExpr::tensor(GenExpr::id(W), GenExpr::eta()), GenExpr::l()));
  CHECK_FALSE(e == GenExpr::l());
}

TEST_CASE("tensor_all") {
  CHECK(to_string(tensor_all(std::vector<GenExpr>{})) == "id(k)");
  CHECK(to_string(tensor_all({GenExpr::l(), GenExpr::c(), GenExpr::eta()})) == "tensor(l, tensor(c, eta))");
}
