#include "weil/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "weil/errors.hpp"

namespace weil {

namespace {

const Rig kB = Rig::Bool2;

Cotree w() { return Cotree::w(); }

std::string obj(const Cotree& t) { return to_string(t); }

// Morphism with 0/1 images given as monomial lists.
Morphism mono_map(const Cotree& src, const Cotree& tgt, const std::vector<std::vector<VertexSet>>& images,
                  Rig rig = kB) {
  std::vector<Polynomial> polys;
  for (const auto& monos : images) {
    std::vector<Term> terms;
    for (VertexSet m : monos) terms.push_back({m, 1});
    polys.push_back(Polynomial::from_terms(0, terms, rig));
  }
  return Morphism(WeilObject(src), WeilObject(tgt), std::move(polys), rig);
}

Polynomial clique_poly(VertexSet clique, const std::vector<VertexSet>& labels, Rig rig = kB) {
  std::vector<Term> terms;
  for (int v : members(clique)) terms.push_back({labels[static_cast<std::size_t>(v)], 1});
  return Polynomial::from_terms(0, terms, rig);
}

using PolyKey = std::vector<std::pair<VertexSet, Coeff>>;

PolyKey key_of(const Polynomial& p) {
  PolyKey k;
  for (const Term& t : p.terms()) k.emplace_back(t.mono, t.coeff);
  return k;
}

std::vector<PolyKey> key_of(const Morphism& f) {
  std::vector<PolyKey> k;
  for (const Polynomial& p : f.images()) k.push_back(key_of(p));
  return k;
}

// Backtracking over generators of `src` with per-generator candidates in
// order; `ok(i, j)` tells whether candidates i (at an earlier generator) and
// j can sit at the two ends of an edge.
void backtrack_maps(const Graph& src, std::size_t ncand, const std::function<bool(std::size_t, std::size_t)>& ok,
                    const std::function<void(const std::vector<std::size_t>&)>& emit) {
  const int n = src.size();
  std::vector<std::size_t> pick(static_cast<std::size_t>(n));
  std::function<void(int)> go = [&](int v) {
    if (v == n) {
      emit(pick);
      return;
    }
    for (std::size_t c = 0; c < ncand; ++c) {
      bool fine = true;
      for (int u : members(src.neighbours(v) & ((VertexSet{1} << v) - 1))) {
        if (!ok(pick[static_cast<std::size_t>(u)], c)) {
          fine = false;
          break;
        }
      }
      if (!fine) continue;
      pick[static_cast<std::size_t>(v)] = c;
      go(v + 1);
    }
  };
  go(0);
}

}  // namespace

bool poly_order(const Polynomial& p, const Polynomial& q) {
  const auto& a = p.terms();
  const auto& b = q.terms();
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].mono != b[i].mono) return set_less(a[i].mono, b[i].mono);
    if (a[i].coeff != b[i].coeff) return a[i].coeff < b[i].coeff;
  }
  return false;
}

std::vector<Cotree> test_objects(int max_vertices) {
  std::vector<std::vector<Cotree>> by_size(static_cast<std::size_t>(std::max(max_vertices, 0) + 1));
  std::vector<Cotree> out;
  std::vector<Graph> seen;
  auto keep = [&](const Cotree& t, std::vector<Cotree>& bucket) {
    Graph g = realize(t);
    if (std::find(seen.begin(), seen.end(), g) != seen.end()) return;
    seen.push_back(g);
    bucket.push_back(t);
    out.push_back(t);
  };
  keep(Cotree::k(), by_size[0]);
  if (max_vertices >= 1) keep(w(), by_size[1]);
  for (int n = 2; n <= max_vertices; ++n) {
    for (int i = 1; i < n; ++i) {
      for (const Cotree& a : by_size[static_cast<std::size_t>(i)]) {
        for (const Cotree& b : by_size[static_cast<std::size_t>(n - i)]) {
          keep(Cotree::disjoint_union(a, b), by_size[static_cast<std::size_t>(n)]);
          keep(Cotree::join(a, b), by_size[static_cast<std::size_t>(n)]);
        }
      }
    }
  }
  return out;
}

HomSet enumerate_hom(const Cotree& a, const Cotree& b) {
  const Graph ga = realize(a), gb = realize(b);
  DerivedGraph ind = ind_plus(gb);
  const std::size_t n = ind.labels.size();
  if (n > static_cast<std::size_t>(kHomGuard)) {
    throw TooLarge("Hom(" + obj(a) + ", " + obj(b) + "): ind+ has " + std::to_string(n) + " vertices, guard is " +
                   std::to_string(kHomGuard));
  }
  std::vector<Polynomial> cand;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Polynomial p = clique_poly(mask, ind.labels);
    if (poly_mul(p, p, gb).is_zero()) cand.push_back(std::move(p));
  }
  std::sort(cand.begin(), cand.end(), poly_order);
  HomSet hs{a, b, {}};
  WeilObject wa(a), wb(b);
  backtrack_maps(
      ga, cand.size(), [&](std::size_t i, std::size_t j) { return poly_mul(cand[i], cand[j], gb).is_zero(); },
      [&](const std::vector<std::size_t>& pick) {
        std::vector<Polynomial> images;
        for (std::size_t c : pick) images.push_back(cand[c]);
        try {
          hs.morphisms.emplace_back(wa, wb, std::move(images), kB);
        } catch (const ValidationError&) {
          // the edge checks above already cover every relation
        }
      });
  return hs;
}

std::vector<Morphism> hom_by_cliques(const Cotree& a, const Cotree& b, std::size_t limit) {
  const Graph ga = realize(a);
  KappaCliques kc = kappa_cliques(realize(b));
  std::vector<Polynomial> cand;
  for (VertexSet c : kc.cliques) cand.push_back(clique_poly(c, kc.ind.labels));
  std::vector<std::size_t> order(cand.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return poly_order(cand[i], cand[j]); });
  std::vector<Morphism> out;
  WeilObject wa(a), wb(b);
  backtrack_maps(
      ga, order.size(), [&](std::size_t i, std::size_t j) { return kc.compatible(order[i], order[j]); },
      [&](const std::vector<std::size_t>& pick) {
        if (out.size() >= limit) {
          throw TooLarge("Hom(" + obj(a) + ", " + obj(b) + ") has more than " + std::to_string(limit) + " members");
        }
        std::vector<Polynomial> images;
        for (std::size_t c : pick) images.push_back(cand[order[c]]);
        out.push_back(Morphism::trusted(wa, wb, std::move(images), kB));
      });
  return out;
}

bool AxiomReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.pass; });
}

void AxiomReport::add(AxiomResult r) { results.push_back(std::move(r)); }

void AxiomReport::merge(const AxiomReport& other) {
  results.insert(results.end(), other.results.begin(), other.results.end());
}

namespace {

std::vector<AxiomResult> sorted(std::vector<AxiomResult> rs) {
  std::stable_sort(rs.begin(), rs.end(), [](const AxiomResult& a, const AxiomResult& b) { return a.id < b.id; });
  return rs;
}

}  // namespace

std::string AxiomReport::lines() const {
  std::ostringstream out;
  for (const AxiomResult& r : sorted(results)) {
    out << "AXIOM " << r.id << (r.pass ? " PASS" : " FAIL");
    if (!r.pass && !r.witness.empty()) out << " " << r.witness;
    out << "\n";
  }
  return out.str();
}

std::string AxiomReport::text() const {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const AxiomResult& r : sorted(results)) {
    out << (r.pass ? "pass  " : "FAIL  ") << r.id;
    if (!r.detail.empty()) out << "  (" << r.detail << ")";
    out << "\n";
    if (!r.pass) {
      ++failed;
      out << "      witness: " << r.witness << "\n";
    }
  }
  out << results.size() - failed << "/" << results.size() << " axioms hold\n";
  return out.str();
}

namespace {

// Collects equalities under one id, remembering the first failure.
class Checker {
 public:
  void expect(const std::string& id, const std::string& where, const Morphism& lhs, const Morphism& rhs) {
    Entry& e = entry(id);
    ++e.cases;
    if (e.witness.empty() && !(lhs == rhs)) {
      e.witness = where + " ; " + to_string(lhs, "lhs") + " ; " + to_string(rhs, "rhs");
    }
  }

  void expect_true(const std::string& id, const std::string& where, bool ok) {
    Entry& e = entry(id);
    ++e.cases;
    if (e.witness.empty() && !ok) e.witness = where;
  }

  void fail(const std::string& id, const std::string& witness) {
    Entry& e = entry(id);
    ++e.cases;
    if (e.witness.empty()) e.witness = witness;
  }

  AxiomReport report() const {
    AxiomReport rep;
    for (const auto& [id, e] : entries_) {
      rep.add({id, e.witness.empty(), e.witness, std::to_string(e.cases) + " cases"});
    }
    return rep;
  }

 private:
  struct Entry {
    std::size_t cases = 0;
    std::string witness;
  };
  Entry& entry(const std::string& id) { return entries_[id]; }
  std::map<std::string, Entry> entries_;
};

// Components of T = W (x) - at an object X.
struct Tangent {
  Cotree x;
  Morphism id_x, id_w, id_tx;
  Morphism p, eta, plus, pi1, pi2, l, c;

  explicit Tangent(const Cotree& obj)
      : x(obj),
        id_x(identity(WeilObject(obj), kB)),
        id_w(identity(WeilObject(w()), kB)),
        id_tx(identity(WeilObject(Cotree::disjoint_union(w(), obj)), kB)),
        p(tensor(gen::eps_w(kB), id_x)),
        eta(tensor(gen::eta_w(kB), id_x)),
        plus(tensor(gen::plus_w(kB), id_x)),
        pi1(tensor(projection(w(), w(), 1, kB), id_x)),
        pi2(tensor(projection(w(), w(), 2, kB), id_x)),
        l(tensor(gen::l_w(kB), id_x)),
        c(tensor(gen::c_w(kB), id_x)) {}

  Morphism T(const Morphism& f) const { return tensor(id_w, f); }
  // The same component one level up: g_T = g (x) id_TX.
  Morphism up(const Morphism& g_w) const { return tensor(g_w, id_tx); }
  // Pairing into W^2 (x) X over X.
  Morphism pair_over(const Morphism& f1, const Morphism& f2) const {
    return pair(f1, f2, Cotree::k(), w(), w(), x);
  }
};

void check_components(Checker& ck, const Cotree& x) {
  const std::string at = "X=" + obj(x);
  Tangent t(x);
  using weil::compose;

  // additive bundle
  ck.expect("bundle.p_plus", at, compose(t.p, t.plus), compose(t.p, t.pi1));
  ck.expect("bundle.p_plus", at, compose(t.p, t.plus), compose(t.p, t.pi2));
  ck.expect("bundle.p_eta", at, compose(t.p, t.eta), t.id_x);
  {
    const Cotree w3 = Cotree::power(3);
    auto pr = [&](int i) {
      std::vector<std::vector<VertexSet>> im(3);
      im[static_cast<std::size_t>(i)] = {1};
      return tensor(mono_map(w3, w(), im), t.id_x);
    };
    Morphism a1 = pr(0), a2 = pr(1), a3 = pr(2);
    Morphism left = compose(t.plus, t.pair_over(compose(t.plus, t.pair_over(a1, a2)), a3));
    Morphism right = compose(t.plus, t.pair_over(a1, compose(t.plus, t.pair_over(a2, a3))));
    ck.expect("bundle.plus_assoc", at, left, right);
  }
  ck.expect("bundle.plus_comm", at, compose(t.plus, t.pair_over(t.pi2, t.pi1)), t.plus);
  Morphism zero_section = compose(t.eta, t.p);
  ck.expect("bundle.plus_unit", at, compose(t.plus, t.pair_over(zero_section, t.id_tx)), t.id_tx);
  ck.expect("bundle.plus_unit", at, compose(t.plus, t.pair_over(t.id_tx, zero_section)), t.id_tx);

  // (l, eta): (p, +, eta) -> (Tp, T+, T eta)
  ck.expect("lift.p_square", at, compose(t.T(t.p), t.l), compose(t.eta, t.p));
  {
    Morphism lxl = pair(compose(t.l, t.pi1), compose(t.l, t.pi2), w(), w(), w(), x);
    ck.expect("lift.plus_square", at, compose(t.T(t.plus), lxl), compose(t.l, t.plus));
  }
  ck.expect("lift.eta_square", at, compose(t.l, t.eta), compose(t.T(t.eta), t.eta));

  // (c, id): (Tp, T+, T eta) -> (pT, +T, eta T)
  Morphism pT = t.up(gen::eps_w(kB));
  Morphism cT = t.up(gen::c_w(kB));
  Morphism lT = t.up(gen::l_w(kB));
  Morphism Tc = t.T(t.c), Tl = t.T(t.l);
  ck.expect("flip.p_square", at, compose(pT, t.c), t.T(t.p));
  {
    const Cotree tx = Cotree::disjoint_union(w(), x);
    Morphism cxc = pair(compose(t.c, t.T(t.pi1)), compose(t.c, t.T(t.pi2)), Cotree::k(), w(), w(), tx);
    Morphism plusT = t.up(gen::plus_w(kB));
    ck.expect("flip.plus_square", at, compose(plusT, cxc), compose(t.c, t.T(t.plus)));
  }
  ck.expect("flip.eta_square", at, compose(t.c, t.T(t.eta)), t.up(gen::eta_w(kB)));

  // coherence of l and c
  ck.expect("coherence.c_involution", at, compose(t.c, t.c),
            identity(WeilObject(Cotree::disjoint_union(Cotree::copower(2), x)), kB));
  ck.expect("coherence.c_l", at, compose(t.c, t.l), t.l);
  ck.expect("coherence.l_l", at, compose(Tl, t.l), compose(lT, t.l));
  ck.expect("coherence.braid", at, compose(Tc, compose(cT, Tc)), compose(cT, compose(Tc, cT)));
  ck.expect("coherence.lift_flip", at, compose(cT, compose(Tc, lT)), compose(Tl, t.c));
}

void check_naturality(Checker& ck, const Cotree& a, const Cotree& b) {
  Tangent ta(a), tb(b);
  const Morphism id_w = identity(WeilObject(w()), kB);
  const Morphism id_w2 = identity(WeilObject(Cotree::power(2)), kB);
  const Morphism id_2w = identity(WeilObject(Cotree::copower(2)), kB);
  for (const Morphism& f : enumerate_hom(a, b).morphisms) {
    const std::string at = to_string(f, "f");
    Morphism Tf = tensor(id_w, f), T2f = tensor(id_2w, f), Tpf = tensor(id_w2, f);
    ck.expect("naturality.p", at, compose(f, ta.p), compose(tb.p, Tf));
    ck.expect("naturality.eta", at, compose(Tf, ta.eta), compose(tb.eta, f));
    ck.expect("naturality.plus", at, compose(Tf, ta.plus), compose(tb.plus, Tpf));
    ck.expect("naturality.l", at, compose(T2f, ta.l), compose(tb.l, Tf));
    ck.expect("naturality.c", at, compose(T2f, ta.c), compose(tb.c, T2f));
  }
}

}  // namespace

AxiomReport check_tangent_axioms(int component_vertices, int naturality_vertices, int equalizer_vertices) {
  Checker ck;
  const std::vector<Cotree> comps = test_objects(component_vertices);
  for (const Cotree& x : comps) check_components(ck, x);
  const std::vector<Cotree> objs = test_objects(naturality_vertices);
  for (const Cotree& a : objs) {
    for (const Cotree& b : objs) check_naturality(ck, a, b);
  }
  AxiomReport rep = ck.report();
  // T^m preserves the pullback T_2 X = W^2 (x) X for m <= 2.
  for (int m = 1; m <= 2; ++m) {
    AxiomResult agg{"pullback.T" + std::to_string(m), true, "", ""};
    std::size_t n = 0;
    for (const Cotree& x : comps) {
      AxiomResult r = check_foundational_pullback(Cotree::disjoint_union(Cotree::copower(m), x), w(), w(), 2);
      ++n;
      if (!r.pass && agg.pass) {
        agg.pass = false;
        agg.witness = "X=" + obj(x) + " ; " + r.witness;
      }
    }
    agg.detail = std::to_string(n) + " objects";
    rep.add(agg);
  }
  rep.add(check_equalizer(equalizer_vertices));
  return rep;
}

Morphism vertical_lift_equalizer() {
  return mono_map(Cotree::power(2), Cotree::copower(2), {{0b11}, {0b10}});
}

AxiomResult check_equalizer(int max_vertices) {
  AxiomResult res{"equalizer.vertical_lift", true, "", ""};
  auto fail = [&](const std::string& why) {
    if (res.pass) {
      res.pass = false;
      res.witness = why;
    }
  };
  const Cotree w2 = Cotree::power(2), tw = Cotree::copower(2);
  const Morphism v = vertical_lift_equalizer();
  const Morphism id_w = identity(WeilObject(w()), kB);
  const Morphism w_eps = tensor(id_w, gen::eps_w(kB));
  const Morphism zero = compose(gen::eta_w(kB), tensor(gen::eps_w(kB), gen::eps_w(kB)));
  if (!(compose(w_eps, v) == compose(zero, v))) fail("v does not equalize W(x)eps and eta.(eps(x)eps)");

  // v is the lift-then-add composite (W (x) +) . pair[W, k](l . pi1, (eta (x) W) . pi2).
  {
    Morphism first = compose(gen::l_w(kB), projection(w(), w(), 1, kB));
    Morphism second = compose(tensor(gen::eta_w(kB), id_w), projection(w(), w(), 2, kB));
    Morphism paired = pair(first, second, w(), w(), w(), Cotree::k());
    if (!(compose(tensor(id_w, gen::plus_w(kB)), paired) == v)) fail("v differs from (W(x)+).pair(l.pi1, (eta(x)W).pi2)");
  }

  std::size_t cones = 0;
  for (const Cotree& a : test_objects(max_vertices)) {
    std::vector<Morphism> us = enumerate_hom(a, w2).morphisms;
    std::vector<Morphism> vu;
    for (const Morphism& u : us) vu.push_back(compose(v, u));
    for (const Morphism& h : enumerate_hom(a, tw).morphisms) {
      if (!(compose(w_eps, h) == compose(zero, h))) continue;
      ++cones;
      auto n = std::count(vu.begin(), vu.end(), h);
      if (n != 1) fail(to_string(h, "h") + " has " + std::to_string(n) + " factorizations");
    }
  }
  res.detail = std::to_string(cones) + " equalizing cones";
  return res;
}

namespace {

constexpr std::size_t kLiteralCliques = 512;
// Above this many monomials in P the maps W -> P are not listed one by one.
constexpr std::size_t kConeCheckMonomials = 27;

}  // namespace

AxiomResult check_foundational_pullback(const Cotree& b, const Cotree& a1, const Cotree& a2, int apex_vertices) {
  const std::string name = obj(b) + " @ (" + obj(a1) + " * " + obj(a2) + ")";
  AxiomResult res{"pullback.foundational", true, "", ""};
  auto fail = [&](const std::string& why) {
    if (res.pass) {
      res.pass = false;
      res.witness = name + " ; " + why;
    }
  };
  const Cotree pc = Cotree::disjoint_union(b, Cotree::join(a1, a2));
  const Cotree e1 = Cotree::disjoint_union(b, a1), e2 = Cotree::disjoint_union(b, a2);
  const Morphism id_b = identity(WeilObject(b), kB);
  const Morphism pr1 = tensor(id_b, projection(a1, a2, 1, kB));
  const Morphism pr2 = tensor(id_b, projection(a1, a2, 2, kB));
  const Morphism q1 = tensor(id_b, eps(WeilObject(a1), kB));
  const Morphism q2 = tensor(id_b, eps(WeilObject(a2), kB));
  const Graph gp = realize(pc);
  const bool list_cones = ind_plus(gp).labels.size() <= kConeCheckMonomials;
  KappaCliques kp;
  if (list_cones) kp = kappa_cliques(gp);

  if (list_cones && kp.cliques.size() <= kLiteralCliques) {
    std::size_t cones = 0;
    for (const Cotree& x : test_objects(apex_vertices)) {
      std::map<std::vector<PolyKey>, std::size_t> hits;  // (pr1 u, pr2 u) -> count
      for (const Morphism& u : hom_by_cliques(x, pc)) {
        std::vector<PolyKey> k = key_of(compose(pr1, u));
        std::vector<PolyKey> k2 = key_of(compose(pr2, u));
        k.insert(k.end(), k2.begin(), k2.end());
        ++hits[k];
      }
      std::map<std::vector<PolyKey>, std::vector<Morphism>> side1, side2;  // grouped by the base composite
      for (const Morphism& f : hom_by_cliques(x, e1)) side1[key_of(compose(q1, f))].push_back(f);
      for (const Morphism& f : hom_by_cliques(x, e2)) side2[key_of(compose(q2, f))].push_back(f);
      for (const auto& [base, fs1] : side1) {
        auto it = side2.find(base);
        if (it == side2.end()) continue;
        for (const Morphism& f1 : fs1) {
          for (const Morphism& f2 : it->second) {
            ++cones;
            std::vector<PolyKey> k = key_of(f1);
            std::vector<PolyKey> k2 = key_of(f2);
            k.insert(k.end(), k2.begin(), k2.end());
            auto h = hits.find(k);
            std::size_t n = h == hits.end() ? 0 : h->second;
            if (n != 1) {
              fail("X=" + obj(x) + " ; " + to_string(f1, "f1") + " ; " + to_string(f2, "f2") + " ; " +
                   std::to_string(n) + " factorizations");
            }
          }
        }
      }
    }
    res.detail = name + ": literal sweep, " + std::to_string(cones) + " cones";
    return res;
  }

  // (a) every monomial of P survives in some projection, so u is recovered
  // from (pr1 u, pr2 u): uniqueness for every apex.
  std::vector<VertexSet> monos = independent_sets(gp, false);
  auto through = [&](VertexSet m, const Morphism& pr) { return substitute(Polynomial::monomial(m, 1, kB), pr); };
  std::vector<Polynomial> img1, img2;
  for (VertexSet m : monos) {
    img1.push_back(through(m, pr1));
    img2.push_back(through(m, pr2));
    if (img1.back().is_zero() && img2.back().is_zero()) fail("monomial " + set_to_string(m) + " dies in both projections");
  }
  // (b) a product vanishes in P exactly when it vanishes in every projection
  // keeping both factors.  Together with (a) this makes the pairing of any
  // compatible cone satisfy every relation of the apex: existence.
  const Graph g1 = realize(e1), g2 = realize(e2);
  for (std::size_t i = 0; i < monos.size(); ++i) {
    for (std::size_t j = i; j < monos.size(); ++j) {
      bool zero_p = mono_mul(monos[i], monos[j], gp) == 0;
      bool zero_proj = true;
      if (!img1[i].is_zero() && !img1[j].is_zero()) zero_proj = zero_proj && poly_mul(img1[i], img1[j], g1).is_zero();
      if (!img2[i].is_zero() && !img2[j].is_zero()) zero_proj = zero_proj && poly_mul(img2[i], img2[j], g2).is_zero();
      if (zero_p != zero_proj) {
        fail("product of " + set_to_string(monos[i]) + " and " + set_to_string(monos[j]) +
             " is not decided by the projections");
      }
    }
  }
  // (c) apex W literally: compatible pairs of cliques pair to a valid map
  // projecting back, one for each map W -> P.
  std::size_t cones = 0;
  if (list_cones) {
    KappaCliques k1 = kappa_cliques(g1), k2 = kappa_cliques(g2);
    const WeilObject wo(w());
    auto maps = [&](const KappaCliques& kc, const Cotree& tgt) {
      std::vector<Morphism> out;
      for (VertexSet c : kc.cliques) out.push_back(Morphism::trusted(wo, WeilObject(tgt), {clique_poly(c, kc.ind.labels)}, kB));
      return out;
    };
    std::vector<Morphism> m1 = maps(k1, e1), m2 = maps(k2, e2);
    std::map<PolyKey, std::vector<std::size_t>> side2;
    for (std::size_t j = 0; j < m2.size(); ++j) side2[key_of(substitute(m2[j].image(0), q2))].push_back(j);
    for (const Morphism& f1 : m1) {
      auto it = side2.find(key_of(substitute(f1.image(0), q1)));
      if (it == side2.end()) continue;
      for (std::size_t j : it->second) {
        const Morphism& f2 = m2[j];
        ++cones;
        Morphism d = pair(f1, f2, b, a1, a2, Cotree::k());
        try {
          validate(d.source(), d.target(), d.images(), kB);
        } catch (const RelationViolation& e) {
          fail("X=W ; pairing of " + to_string(f1, "f1") + " and " + to_string(f2, "f2") + " is invalid: " + e.what());
          continue;
        }
        if (!(substitute(d.image(0), pr1) == f1.image(0)) || !(substitute(d.image(0), pr2) == f2.image(0))) {
          fail("X=W ; pairing of " + to_string(f1, "f1") + " and " + to_string(f2, "f2") + " does not project back");
        }
      }
    }
    if (cones != kp.cliques.size()) {
      fail("X=W ; " + std::to_string(cones) + " compatible cones but " + std::to_string(kp.cliques.size()) +
           " maps into the pullback");
    }
  }
  res.detail = name + ": factorized check, " + std::to_string(monos.size()) + " monomials";
  if (list_cones) res.detail += ", " + std::to_string(cones) + " cones from W";
  return res;
}

AxiomResult check_foundational_pullbacks(int max_vertices, int apex_vertices) {
  AxiomResult agg{"pullback.foundational", true, "", ""};
  std::vector<Cotree> objs = test_objects(max_vertices);
  std::size_t literal = 0, factorized = 0;
  for (const Cotree& b : objs) {
    for (const Cotree& a1 : objs) {
      for (const Cotree& a2 : objs) {
        AxiomResult r = check_foundational_pullback(b, a1, a2, apex_vertices);
        if (r.detail.find("literal") != std::string::npos) {
          ++literal;
        } else {
          ++factorized;
        }
        if (!r.pass && agg.pass) {
          agg.pass = false;
          agg.witness = r.witness;
        }
      }
    }
  }
  agg.detail = std::to_string(literal + factorized) + " triples (" + std::to_string(literal) + " literal, " +
               std::to_string(factorized) + " factorized)";
  return agg;
}

Morphism slot_sum(const std::vector<int>& multiplicity, Rig rig) {
  std::vector<Cotree> parts;
  std::vector<Polynomial> images;
  const int n = static_cast<int>(multiplicity.size());
  for (int j = 0; j < n; ++j) {
    int m = multiplicity[static_cast<std::size_t>(j)];
    if (m == 0) continue;
    parts.push_back(Cotree::power(m));
    for (int s = 0; s < m; ++s) images.push_back(Polynomial::monomial(VertexSet{1} << j, 1, rig));
  }
  return Morphism(WeilObject(tensor_all(parts)), WeilObject(Cotree::copower(n)), std::move(images), rig);
}

namespace {

// For each circle of h = g . f: every choice of a term V of f(a) and one
// circle of g per b in V, pairwise disjoint with union the circle.
std::vector<std::vector<std::vector<std::size_t>>> omega_factorizations(const Morphism& f, const ChoiceAssignment& hc,
                                                                         const ChoiceAssignment& gc, int b_count) {
  std::vector<std::vector<std::size_t>> g_circles(static_cast<std::size_t>(b_count));
  for (std::size_t i = 0; i < gc.circles.size(); ++i) {
    g_circles[static_cast<std::size_t>(gc.circles[i].generator)].push_back(i);
  }
  std::vector<std::vector<std::vector<std::size_t>>> all;
  for (const Circle& u : hc.circles) {
    std::vector<std::vector<std::size_t>> found;
    for (const Term& t : f.image(u.generator).terms()) {
      std::vector<int> bs = members(t.mono);
      std::vector<std::size_t> pick(bs.size());
      std::function<void(std::size_t, VertexSet)> go = [&](std::size_t k, VertexSet covered) {
        if (k == bs.size()) {
          if (covered == u.mono) found.push_back(pick);
          return;
        }
        for (std::size_t q : g_circles[static_cast<std::size_t>(bs[k])]) {
          VertexSet m = gc.circles[q].mono;
          if ((m & covered) || (m & ~u.mono)) continue;
          pick[k] = q;
          go(k + 1, covered | m);
        }
      };
      go(0, 0);
    }
    if (found.empty()) throw std::logic_error("omega: circle of h has no factorization");
    all.push_back(std::move(found));
  }
  return all;
}

// chosen[ci] lists the factorizations used for circle ci; their slot images add.
OmegaWitness omega_from(const ChoiceAssignment& hc, const ChoiceAssignment& gc,
                        const std::vector<std::vector<std::vector<std::size_t>>>& chosen, Rig rig) {
  std::vector<Polynomial> images(static_cast<std::size_t>(hc.lifted.target().generators()), Polynomial(rig));
  for (std::size_t ci = 0; ci < hc.circles.size(); ++ci) {
    for (const std::vector<std::size_t>& pick : chosen[ci]) {
      for (std::size_t q : pick) {
        for (int z : members(gc.circles[q].mono)) {
          Polynomial& slot = images[static_cast<std::size_t>(hc.slot(ci, z))];
          slot = poly_add(slot, Polynomial::monomial(VertexSet{1} << gc.slot(q, z), 1, rig));
        }
      }
    }
  }
  Morphism omega(hc.lifted.target(), gc.lifted.target(), images, rig);

  std::vector<Morphism> factors;
  for (std::size_t j = 0; j < hc.multiplicity.size(); ++j) {
    const int ma = hc.multiplicity[j], mb = gc.multiplicity[j];
    std::vector<Polynomial> part;
    for (int s = 0; s < ma; ++s) {
      const Polynomial& p = images[static_cast<std::size_t>(hc.offset[j] + s)];
      std::vector<Term> shifted;
      for (const Term& t : p.terms()) shifted.push_back({t.mono >> gc.offset[j], t.coeff});
      part.push_back(Polynomial::from_terms(0, shifted, rig));
    }
    factors.emplace_back(WeilObject(Cotree::power(ma)), WeilObject(Cotree::power(mb)), std::move(part), rig);
  }
  return {hc, gc, std::move(omega), std::move(factors)};
}

}  // namespace

OmegaWitness omega_witness(const Morphism& f, const Morphism& g) {
  if (g.target().graph().has_edges()) throw PreconditionViolation("omega needs g to land in some nW");
  ChoiceAssignment hc = choice_rule(compose(g, f));
  ChoiceAssignment gc = choice_rule(g);
  auto all = omega_factorizations(f, hc, gc, g.source().generators());
  std::vector<std::vector<std::vector<std::size_t>>> chosen;
  for (std::size_t ci = 0; ci < all.size(); ++ci) {
    if (all[ci].size() != 1) {
      const Circle& u = hc.circles[ci];
      throw ChoiceAmbiguous("circle " + set_to_string(u.mono) + " of generator " + std::to_string(u.generator + 1) +
                                " has " + std::to_string(all[ci].size()) + " factorizations",
                            static_cast<int>(all[ci].size()));
    }
    chosen.push_back({all[ci].front()});
  }
  return omega_from(hc, gc, chosen, f.rig());
}

OmegaWitness omega_summed(const Morphism& f, const Morphism& g) {
  if (g.target().graph().has_edges()) throw PreconditionViolation("omega needs g to land in some nW");
  ChoiceAssignment hc = choice_rule(compose(g, f));
  ChoiceAssignment gc = choice_rule(g);
  return omega_from(hc, gc, omega_factorizations(f, hc, gc, g.source().generators()), f.rig());
}

std::vector<OmegaWitness> omega_resolutions(const Morphism& f, const Morphism& g, std::size_t limit) {
  if (g.target().graph().has_edges()) throw PreconditionViolation("omega needs g to land in some nW");
  ChoiceAssignment hc = choice_rule(compose(g, f));
  ChoiceAssignment gc = choice_rule(g);
  auto all = omega_factorizations(f, hc, gc, g.source().generators());
  std::size_t total = 1;
  for (const auto& options : all) {
    total *= options.size();
    if (total > limit) throw TooLarge("omega: more than " + std::to_string(limit) + " resolutions");
  }
  std::vector<OmegaWitness> out;
  std::vector<std::vector<std::vector<std::size_t>>> chosen(all.size());
  std::function<void(std::size_t)> go = [&](std::size_t ci) {
    if (ci == all.size()) {
      out.push_back(omega_from(hc, gc, chosen, f.rig()));
      return;
    }
    for (const auto& option : all[ci]) {
      chosen[ci] = {option};
      go(ci + 1);
    }
  };
  go(0);
  return out;
}

std::string check_omega(const Morphism& f, const Morphism& g, const OmegaWitness& w) {
  const Rig rig = f.rig();
  if (!(compose(slot_sum(w.g_choice.multiplicity, rig), w.g_choice.lifted) == g)) return "+beta . g' != g";
  if (!(compose(slot_sum(w.g_choice.multiplicity, rig), w.omega) == slot_sum(w.h_choice.multiplicity, rig))) {
    return "+beta . Omega != +alpha";
  }
  if (!(compose(w.omega, w.h_choice.lifted) == compose(w.g_choice.lifted, f))) return "Omega . h' != g' . f";
  Morphism t = identity(WeilObject(), rig);
  for (std::size_t j = w.factors.size(); j-- > 0;) t = tensor(w.factors[j], t);
  if (!(t == w.omega)) return "Omega is not the tensor of its slot factors";
  return "";
}

bool gamma_admissible(const Morphism& g) {
  if (g.source().graph().has_edges() || g.target().graph().has_edges()) return false;
  VertexSet covered = 0;
  for (const Polynomial& p : g.images()) {
    if (p.terms().size() != 1) return false;
    VertexSet m = p.terms().front().mono;
    if (m & covered) return false;
    covered |= m;
  }
  return covered == g.target().graph().all();
}

GammaWitness gamma_witness(const Morphism& f, const Morphism& g) {
  if (!gamma_admissible(g)) {
    throw PreconditionViolation(
        "gamma needs g: mW -> nW with one circle per generator, pairwise disjoint and covering every target generator");
  }
  if (!(f.target() == g.source())) throw TypeMismatch("gamma: f does not land in the source of g");
  const Rig rig = f.rig();
  const Morphism h = compose(g, f);
  ChoiceAssignment fc = choice_rule(f);
  ChoiceAssignment hc = choice_rule(h);
  const int n = g.target().generators();
  std::vector<int> psi(static_cast<std::size_t>(n), -1);
  for (int y = 0; y < g.source().generators(); ++y) {
    for (int z : members(g.image(y).terms().front().mono)) psi[static_cast<std::size_t>(z)] = y;
  }
  auto g_of = [&](VertexSet v) {
    VertexSet out = 0;
    for (int y : members(v)) out |= g.image(y).terms().front().mono;
    return out;
  };
  std::vector<Polynomial> images(static_cast<std::size_t>(fc.lifted.target().generators()), Polynomial(rig));
  for (std::size_t ci = 0; ci < fc.circles.size(); ++ci) {
    const Circle& v = fc.circles[ci];
    const VertexSet u = g_of(v.mono);
    std::size_t hi = hc.circles.size();
    for (std::size_t k = 0; k < hc.circles.size(); ++k) {
      if (hc.circles[k].generator == v.generator && hc.circles[k].mono == u) hi = k;
    }
    if (hi == hc.circles.size()) throw std::logic_error("gamma: circle of f has no image circle in h");
    for (int y : members(v.mono)) {
      VertexSet m = 0;
      for (int z : members(g.image(y).terms().front().mono)) m |= VertexSet{1} << hc.slot(hi, z);
      images[static_cast<std::size_t>(fc.slot(ci, y))] =
          Polynomial::monomial(m, g.image(y).terms().front().coeff, rig);
    }
  }
  Morphism gamma(fc.lifted.target(), hc.lifted.target(), std::move(images), rig);
  return {std::move(fc), std::move(hc), std::move(psi), std::move(gamma)};
}

std::string check_gamma(const Morphism& f, const Morphism& g, const GammaWitness& w) {
  const Rig rig = f.rig();
  if (!(compose(slot_sum(w.h_choice.multiplicity, rig), w.gamma) ==
        compose(g, slot_sum(w.f_choice.multiplicity, rig)))) {
    return "+alpha . Gamma != g . +gamma";
  }
  if (!(compose(w.gamma, w.f_choice.lifted) == w.h_choice.lifted)) return "Gamma . f' != h'";
  for (std::size_t z = 0; z < w.psi.size(); ++z) {
    if (w.h_choice.multiplicity[z] != w.f_choice.multiplicity[static_cast<std::size_t>(w.psi[z])]) {
      return "alpha_" + std::to_string(z + 1) + " != gamma_" + std::to_string(w.psi[z] + 1);
    }
  }
  return "";
}

bool check_nat_fullness(const Morphism& sample) {
  if (sample.rig() != Rig::Bool2) return false;
  try {
    Morphism lifted = change_rig(sample, Rig::Nat);
    for (const Polynomial& p : lifted.images()) {
      for (const Term& t : p.terms()) {
        if (t.coeff != 1) return false;
      }
    }
    return change_rig(lifted, Rig::Bool2) == sample;
  } catch (const ValidationError&) {
    return false;
  }
}

}  // namespace weil
