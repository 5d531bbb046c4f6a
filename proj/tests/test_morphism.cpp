#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "weil/errors.hpp"
#include "weil/morphism.hpp"
#include "weil/syntax.hpp"
#include "weil/verify.hpp"

using namespace weil;

namespace {

Morphism bool2(const std::string& text) { return parse_morphism(text, Rig::Bool2); }
Morphism nat(const std::string& text) { return parse_morphism(text, Rig::Nat); }

WeilObject obj(const std::string& text) { return WeilObject(parse_object(text)); }

// Kleisli composite computed on vertex sets alone: a circle U of f(a) is
// replaced by every disjoint, independent union of one circle of g(b) per b in U.
std::vector<std::set<oracle::VSet>> kleisli_compose(const std::vector<std::set<oracle::VSet>>& f,
                                                    const std::vector<std::set<oracle::VSet>>& g,
                                                    const oracle::G& target) {
  std::vector<std::set<oracle::VSet>> out;
  for (const auto& circles : f) {
    std::set<oracle::VSet> image;
    for (const oracle::VSet& u : circles) {
      std::vector<oracle::VSet> partial{{}};
      for (int b : u) {
        std::vector<oracle::VSet> next;
        for (const oracle::VSet& acc : partial) {
          for (const oracle::VSet& q : g[static_cast<std::size_t>(b)]) {
            oracle::VSet merged = acc;
            bool overlap = false;
            for (int z : q) overlap |= !merged.insert(z).second;
            if (!overlap && oracle::independent(target, merged)) next.push_back(merged);
          }
        }
        partial = std::move(next);
      }
      image.insert(partial.begin(), partial.end());
    }
    out.push_back(image);
  }
  return out;
}

std::vector<std::set<oracle::VSet>> kleisli_sets(const KleisliMap& m) {
  std::vector<std::set<oracle::VSet>> out;
  for (const KappaVertex& v : m.assignment) {
    std::set<oracle::VSet> s;
    for (VertexSet mono : v) {
      oracle::VSet u;
      for (int x : members(mono)) u.insert(x);
      s.insert(u);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("validate") {
  CHECK_NOTHROW(bool2("f : 2W -> 3W ; x1 |-> y1 y2 + y2 y3 ; x2 |-> y1 + y1 y3"));
  CHECK_NOTHROW(bool2("f : W -> k ; x |-> 0"));
  try {
    bool2("f : W -> 2W ; x |-> y1 + y2");
    FAIL("expected a relation violation");
  } catch (const RelationViolation& e) {
    CHECK(e.i == 1);
    CHECK(e.j == 1);
    CHECK(e.witness == "y1 y2");
  }
  try {
    nat("f : W -> 2W ; x |-> y1 + y2");
    FAIL("expected a relation violation");
  } catch (const RelationViolation& e) {
    CHECK(e.witness == "2 y1 y2");
  }
  // An edge of the source: x1 x2 = 0 in W^2, but y1 * y2 survives in 2W.
  CHECK_THROWS_AS(bool2("f : W^2 -> 2W ; x1 |-> y1 ; x2 |-> y2"), RelationViolation);
}

TEST_CASE("compose") {
  Morphism l = gen::l_w(Rig::Bool2);
  WeilObject w(Cotree::w());
  Morphism wl = tensor(identity(w, Rig::Bool2), l);
  CHECK(compose(wl, l) == bool2("f : W -> 3W ; x |-> y1 y2 y3"));

  Morphism f = bool2("f : 2W -> 3W ; x1 |-> y1 y2 + y2 y3 ; x2 |-> y1 + y1 y3");
  CHECK(compose(identity(f.target(), Rig::Bool2), f) == f);
  CHECK(compose(f, identity(f.source(), Rig::Bool2)) == f);

  CHECK_THROWS_AS(compose(l, l), TypeMismatch);
}

TEST_CASE("adding both halves of l gives zero") {
  // l(x) = x1 x2, then x1, x2 |-> x: x . x = 0.
  Morphism fold = bool2("s : 2W -> W ; x1 |-> y ; x2 |-> y");
  CHECK(compose(fold, gen::l_w(Rig::Bool2)) == bool2("z : W -> W ; x |-> 0"));
  CHECK(compose(nat("s : 2W -> W ; x1 |-> y ; x2 |-> y"), gen::l_w(Rig::Nat)).image(0).is_zero());
}

TEST_CASE("structural combinators") {
  CHECK(projection(Cotree::w(), Cotree::w(), 1, Rig::Bool2) == bool2("p : W^2 -> W ; x1 |-> y ; x2 |-> 0"));
  Morphism id = identity(WeilObject(Cotree::w()), Rig::Bool2);
  CHECK(pair(id, id) == bool2("d : W -> W^2 ; x |-> y1 + y2"));
  CHECK(tensor(gen::eps_w(Rig::Bool2), id) == bool2("t : 2W -> W ; x1 |-> 0 ; x2 |-> y"));
  CHECK(eps(obj("W * 2W"), Rig::Bool2) == bool2("e : W * 2W -> k"));
  CHECK(eta(obj("2W"), Rig::Bool2).images().empty());
}

TEST_CASE("general pair through L (x) (P x Q) (x) R") {
  // X = W, L = W, P = Q = W, R = k.  f1, f2 agree on the common W.
  Morphism f1 = bool2("a : W -> 2W ; x |-> y1 + y1 y2");
  Morphism f2 = bool2("b : W -> 2W ; x |-> y1");
  Morphism p = pair(f1, f2, Cotree::w(), Cotree::w(), Cotree::w(), Cotree::k());
  CHECK(p == bool2("p : W -> W @ W^2 ; x |-> y1 + y1 y2"));
  Morphism f3 = bool2("c : W -> 2W ; x |-> y2");
  CHECK_THROWS_AS(pair(f1, f3, Cotree::w(), Cotree::w(), Cotree::w(), Cotree::k()), TypeMismatch);
}

TEST_CASE("generators") {
  CHECK(gen::plus_w(Rig::Bool2) == bool2("p : W^2 -> W ; x1 |-> y ; x2 |-> y"));
  CHECK(gen::l_w(Rig::Bool2) == bool2("l : W -> 2W ; x |-> y1 y2"));
  CHECK(gen::c_w(Rig::Bool2) == bool2("c : 2W -> 2W ; x1 |-> y2 ; x2 |-> y1"));
  CHECK(gen::eps_w(Rig::Bool2) == bool2("e : W -> k ; x |-> 0"));
  CHECK(gen::eta_w(Rig::Bool2).images().empty());
  CHECK(compose(gen::c_w(Rig::Bool2), gen::c_w(Rig::Bool2)) == identity(obj("2W"), Rig::Bool2));
}

TEST_CASE("ghat") {
  CHECK(ghat(2, Rig::Nat) == nat("g : W -> W ; x |-> 2 y"));
  CHECK(ghat(0, Rig::Nat) == nat("g : W -> W ; x |-> 0"));
  CHECK(ghat(1, Rig::Nat) == identity(WeilObject(Cotree::w()), Rig::Nat));
  for (int r = 1; r <= 4; ++r) CHECK(ghat(r, Rig::Bool2) == identity(WeilObject(Cotree::w()), Rig::Bool2));
}

TEST_CASE("kleisli examples") {
  KleisliMap m = to_kleisli(bool2("f : W -> 3W ; x |-> y1 y2 + y1 y3"));
  REQUIRE(m.assignment.size() == 1);
  CHECK(m.assignment[0] == KappaVertex{0b011, 0b101});
  KleisliMap z = to_kleisli(bool2("z : W -> 2W ; x |-> 0"));
  CHECK(z.assignment[0].empty());
  CHECK_THROWS_AS(to_kleisli(nat("n : W -> W ; x |-> 2 y")), RigMismatch);
  HomSet h = enumerate_hom(Cotree::w(), Cotree::copower(2));
  CHECK(h.morphisms.size() == 6);
  for (const Morphism& f : h.morphisms) CHECK(from_kleisli(to_kleisli(f), f.source(), f.target()) == f);
}

TEST_CASE("from_kleisli rejects non-graph maps") {
  WeilObject w(Cotree::w()), two(Cotree::copower(2));
  // {y1} and {y2} are not adjacent in ind+(2W): not a clique.
  CHECK_THROWS_AS(from_kleisli(KleisliMap{{KappaVertex{0b01, 0b10}}}, w, two), RelationViolation);
}

TEST_CASE("composition is associative and unital up to 2 vertices") {
  auto objs = test_objects(2);
  std::map<std::pair<int, int>, std::vector<Morphism>> hom;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    for (std::size_t j = 0; j < objs.size(); ++j) hom[{int(i), int(j)}] = enumerate_hom(objs[i], objs[j]).morphisms;
  }
  int triples = 0;
  for (std::size_t a = 0; a < objs.size(); ++a) {
    for (std::size_t b = 0; b < objs.size(); ++b) {
      for (const Morphism& f : hom[{int(a), int(b)}]) {
        CHECK(compose(identity(f.target(), Rig::Bool2), f) == f);
        CHECK(compose(f, identity(f.source(), Rig::Bool2)) == f);
        for (std::size_t c = 0; c < objs.size(); ++c) {
          for (const Morphism& g : hom[{int(b), int(c)}]) {
            for (std::size_t d = 0; d < objs.size(); ++d) {
              for (const Morphism& h : hom[{int(c), int(d)}]) {
                CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
                ++triples;
              }
            }
          }
        }
      }
    }
  }
  CHECK(triples > 1000);
}

TEST_CASE("compose agrees with oracle substitution") {
  std::mt19937 rng(11);
  auto objs = test_objects(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Cotree& a = objs[rng() % objs.size()];
    const Cotree& b = objs[rng() % objs.size()];
    const Cotree& c = objs[rng() % objs.size()];
    auto fs = hom_by_cliques(a, b), gs = hom_by_cliques(b, c);
    const Morphism& f = fs[rng() % fs.size()];
    const Morphism& g = gs[rng() % gs.size()];
    Morphism h = compose(g, f);
    auto gi = oracle::images_of(g);
    auto target = oracle::from_lib(g.target().graph());
    for (int i = 0; i < f.source().generators(); ++i) {
      CHECK(oracle::from_lib(h.image(i)) == oracle::substitute(oracle::from_lib(f.image(i)), gi, target, Rig::Bool2));
    }
  }
}

TEST_CASE("Hom counts equal graph maps into kappa up to 2 vertices") {
  auto objs = test_objects(2);
  for (const Cotree& a : objs) {
    for (const Cotree& b : objs) {
      auto oa = oracle::from_lib(realize(a)), ob = oracle::from_lib(realize(b));
      std::size_t n = enumerate_hom(a, b).morphisms.size();
      CHECK(n == oracle::graph_maps_into_kappa(oa, ob));
      CHECK(n == oracle::hom_bool2(oa, ob).size());
    }
  }
  CHECK(enumerate_hom(Cotree::w(), Cotree::w()).morphisms.size() == 2);
}

TEST_CASE("kleisli composition matches composition in Weil") {
  auto objs = test_objects(2);
  for (const Cotree& a : objs) {
    for (const Cotree& b : objs) {
      for (const Cotree& c : objs) {
        auto fs = enumerate_hom(a, b).morphisms, gs = enumerate_hom(b, c).morphisms;
        auto target = oracle::from_lib(realize(c));
        for (const Morphism& f : fs) {
          for (const Morphism& g : gs) {
            auto direct = kleisli_sets(to_kleisli(compose(g, f)));
            auto via = kleisli_compose(kleisli_sets(to_kleisli(f)), kleisli_sets(to_kleisli(g)), target);
            CHECK(direct == via);
          }
        }
      }
    }
  }
}

TEST_CASE("change_rig") {
  Morphism n = nat("g : W -> 2W ; x |-> 3 y1 + y1 y2");
  CHECK(change_rig(n, Rig::Bool2) == bool2("g : W -> 2W ; x |-> y1 + y1 y2"));
  Morphism b = bool2("f : 2W -> 3W ; x1 |-> y1 y2 + y2 y3 ; x2 |-> y1 + y1 y3");
  CHECK(change_rig(change_rig(b, Rig::Nat), Rig::Bool2) == b);
  CHECK(change_rig(b, Rig::Nat).rig() == Rig::Nat);
}

TEST_CASE("morphism printing") {
  Morphism f = bool2("f : 2W -> 3W ; x1 |-> y1 y2 + y2 y3 ; x2 |-> y1 + y1 y3");
  CHECK(to_string(f) == "f : 2W -> 3W ; x1 |-> y1 y2 + y2 y3 ; x2 |-> y1 + y1 y3");
  CHECK(to_string(gen::l_w(Rig::Bool2), "l") == "l : W -> 2W ; x |-> y1 y2");
}
