#include "weil/morphism.hpp"

#include "weil/errors.hpp"

namespace weil {

namespace {

VertexSet bits(int lo, int hi) {
  if (hi <= lo) return 0;
  VertexSet upper = hi >= 64 ? ~VertexSet{0} : ((VertexSet{1} << hi) - 1);
  return upper & ~((VertexSet{1} << lo) - 1);
}

Polynomial map_monos(const Polynomial& p, auto&& fn) {
  std::vector<Term> out;
  for (const Term& t : p.terms()) {
    VertexSet m = fn(t.mono);
    if (m != 0) out.push_back({m, t.coeff});
  }
  return Polynomial::from_terms(p.constant_term(), out, p.rig());
}

std::string obj(const WeilObject& a) { return to_string(a.cotree()); }

}  // namespace

void validate(const WeilObject& source, const WeilObject& target, const std::vector<Polynomial>& images, Rig rig) {
  int n = source.generators();
  if (static_cast<int>(images.size()) != n) {
    throw ValidationError("expected " + std::to_string(n) + " generator images, got " +
                          std::to_string(images.size()));
  }
  for (const Polynomial& p : images) {
    if (p.rig() != rig) throw RigMismatch("image polynomial over the wrong rig");
    if (p.constant_term() != 0) throw ValidationError("image polynomial has a non-zero constant term");
    check_in(p, target.graph());
  }
  int m = target.generators();
  for (int i = 0; i < n; ++i) {
    Polynomial sq = poly_mul(images[i], images[i], target.graph());
    if (!sq.is_zero()) throw RelationViolation(i + 1, i + 1, to_string(sq, "y", m));
  }
  for (auto [u, v] : source.graph().edges()) {
    Polynomial pr = poly_mul(images[u], images[v], target.graph());
    if (!pr.is_zero()) throw RelationViolation(u + 1, v + 1, to_string(pr, "y", m));
  }
}

Morphism::Morphism(WeilObject source, WeilObject target, std::vector<Polynomial> images, Rig rig)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)), rig_(rig) {
  validate(source_, target_, images_, rig_);
}

Morphism Morphism::trusted(WeilObject source, WeilObject target, std::vector<Polynomial> images, Rig rig) {
  Morphism f;
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  f.images_ = std::move(images);
  f.rig_ = rig;
  return f;
}

bool Morphism::operator==(const Morphism& other) const {
  return rig_ == other.rig_ && source_ == other.source_ && target_ == other.target_ && images_ == other.images_;
}

Polynomial substitute(const Polynomial& p, const Morphism& g) {
  const Graph& amb = g.target().graph();
  Polynomial out = Polynomial::constant(p.constant_term(), g.rig());
  for (const Term& t : p.terms()) {
    Polynomial prod = Polynomial::constant(t.coeff, g.rig());
    for (int v : Bits(t.mono)) {
      prod = poly_mul(prod, g.image(v), amb);
      if (prod.is_zero()) break;
    }
    out = poly_add(out, prod);
  }
  return out;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.target() == g.source())) {
    throw TypeMismatch("cannot compose: " + obj(f.target()) + " is not " + obj(g.source()));
  }
  if (f.rig() != g.rig()) throw RigMismatch("cannot compose morphisms over different rigs");
  std::vector<Polynomial> images;
  images.reserve(f.images().size());
  for (const Polynomial& p : f.images()) images.push_back(substitute(p, g));
  return Morphism::trusted(f.source(), g.target(), std::move(images), f.rig());
}

Morphism identity(const WeilObject& a, Rig rig) {
  std::vector<Polynomial> images;
  for (int i = 0; i < a.generators(); ++i) images.push_back(Polynomial::monomial(VertexSet{1} << i, 1, rig));
  return Morphism::trusted(a, a, std::move(images), rig);
}

Morphism tensor(const Morphism& f, const Morphism& g) {
  if (f.rig() != g.rig()) throw RigMismatch("cannot tensor morphisms over different rigs");
  int shift = f.target().generators();
  std::vector<Polynomial> images = f.images();
  for (const Polynomial& p : g.images()) images.push_back(map_monos(p, [&](VertexSet m) { return m << shift; }));
  return Morphism::trusted(coproduct(f.source(), g.source()), coproduct(f.target(), g.target()), std::move(images),
                           f.rig());
}

Morphism pair(const Morphism& f1, const Morphism& f2) {
  return pair(f1, f2, Cotree::k(), f1.target().cotree(), f2.target().cotree(), Cotree::k());
}

Morphism pair(const Morphism& f1, const Morphism& f2, const Cotree& l, const Cotree& p, const Cotree& q,
              const Cotree& r) {
  if (f1.rig() != f2.rig()) throw RigMismatch("cannot pair morphisms over different rigs");
  if (!(f1.source() == f2.source())) {
    throw TypeMismatch("pair branches have different sources: " + obj(f1.source()) + " and " + obj(f2.source()));
  }
  WeilObject t1(tensor_all({l, p, r})), t2(tensor_all({l, q, r}));
  if (!(f1.target() == t1) || !(f2.target() == t2)) {
    throw TypeMismatch("pair branch targets " + obj(f1.target()) + ", " + obj(f2.target()) + " do not match " +
                       obj(t1) + ", " + obj(t2));
  }
  const int nl = l.size(), np = p.size(), nq = q.size();
  const VertexSet lmask = bits(0, nl);
  const VertexSet pmask = bits(nl, nl + np), qmask = bits(nl, nl + nq);
  auto from1 = [&](VertexSet m) { return (m & (lmask | pmask)) | ((m & ~(lmask | pmask)) << nq); };
  auto from2 = [&](VertexSet m) { return (m & lmask) | ((m & ~lmask) << np); };
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < f1.images().size(); ++i) {
    const Polynomial& a = f1.images()[i];
    const Polynomial& b = f2.images()[i];
    Polynomial base1 = map_monos(a, [&](VertexSet m) { return (m & pmask) ? 0 : from1(m); });
    Polynomial base2 = map_monos(b, [&](VertexSet m) { return (m & qmask) ? 0 : from2(m); });
    if (!(base1 == base2)) {
      throw TypeMismatch("pair branches disagree over the common base at generator " + std::to_string(i + 1));
    }
    Polynomial only2 = map_monos(b, [&](VertexSet m) { return (m & qmask) ? from2(m) : 0; });
    images.push_back(poly_add(map_monos(a, from1), only2));
  }
  WeilObject target(tensor_all({l, Cotree::join(p, q), r}));
  return Morphism::trusted(f1.source(), target, std::move(images), f1.rig());
}

Morphism projection(const Cotree& a, const Cotree& b, int side, Rig rig) {
  if (side != 1 && side != 2) throw ValidationError("projection side must be 1 or 2");
  WeilObject src(Cotree::join(a, b));
  WeilObject tgt(side == 1 ? a : b);
  std::vector<Polynomial> images;
  for (int i = 0; i < src.generators(); ++i) {
    int j = side == 1 ? i : i - a.size();
    bool kept = side == 1 ? i < a.size() : i >= a.size();
    images.push_back(kept ? Polynomial::monomial(VertexSet{1} << j, 1, rig) : Polynomial(rig));
  }
  return Morphism::trusted(src, tgt, std::move(images), rig);
}

Morphism eps(const WeilObject& a, Rig rig) {
  return Morphism::trusted(a, WeilObject(), std::vector<Polynomial>(static_cast<std::size_t>(a.generators()), Polynomial(rig)),
                           rig);
}

Morphism eta(const WeilObject& b, Rig rig) { return Morphism::trusted(WeilObject(), b, {}, rig); }

namespace gen {

Morphism eps_w(Rig rig) { return eps(WeilObject(Cotree::w()), rig); }

Morphism eta_w(Rig rig) { return eta(WeilObject(Cotree::w()), rig); }

namespace {

Morphism make_plus(Rig rig) {
  Polynomial x = Polynomial::monomial(1, 1, rig);
  return Morphism(WeilObject(Cotree::power(2)), WeilObject(Cotree::w()), {x, x}, rig);
}

Morphism make_l(Rig rig) {
  return Morphism(WeilObject(Cotree::w()), WeilObject(Cotree::copower(2)), {Polynomial::monomial(0b11, 1, rig)}, rig);
}

Morphism make_c(Rig rig) {
  return Morphism(WeilObject(Cotree::copower(2)), WeilObject(Cotree::copower(2)),
                  {Polynomial::monomial(0b10, 1, rig), Polynomial::monomial(0b01, 1, rig)}, rig);
}

}  // namespace

Morphism plus_w(Rig rig) {
  static const Morphism b = make_plus(Rig::Bool2), n = make_plus(Rig::Nat);
  return rig == Rig::Bool2 ? b : n;
}

Morphism l_w(Rig rig) {
  static const Morphism b = make_l(Rig::Bool2), n = make_l(Rig::Nat);
  return rig == Rig::Bool2 ? b : n;
}

Morphism c_w(Rig rig) {
  static const Morphism b = make_c(Rig::Bool2), n = make_c(Rig::Nat);
  return rig == Rig::Bool2 ? b : n;
}

}  // namespace gen

Morphism ghat(int r, Rig rig) {
  if (r < 0) throw ValidationError("ghat needs r >= 0");
  WeilObject w(Cotree::w());
  if (r == 0) return compose(gen::eta_w(rig), gen::eps_w(rig));
  Morphism g = identity(w, rig);
  for (int n = 1; n < r; ++n) g = compose(gen::plus_w(rig), pair(identity(w, rig), g));
  return g;
}

Morphism change_rig(const Morphism& f, Rig rig) {
  std::vector<Polynomial> images;
  for (const Polynomial& p : f.images()) {
    std::vector<Term> terms;
    for (const Term& t : p.terms()) terms.push_back({t.mono, rig == Rig::Bool2 ? psi(t.coeff) : t.coeff});
    images.push_back(Polynomial::from_terms(0, terms, rig));
  }
  return Morphism(f.source(), f.target(), std::move(images), rig);
}

KleisliMap to_kleisli(const Morphism& f) {
  KleisliMap m;
  for (const Polynomial& p : f.images()) {
    KappaVertex v;
    for (const Term& t : p.terms()) {
      if (t.coeff != 1) throw RigMismatch("kleisli form needs 0/1 coefficients");
      v.push_back(t.mono);
    }
    m.assignment.push_back(std::move(v));
  }
  return m;
}

Morphism from_kleisli(const KleisliMap& m, const WeilObject& a, const WeilObject& b) {
  std::vector<Polynomial> images;
  for (const KappaVertex& v : m.assignment) {
    std::vector<Term> terms;
    for (VertexSet s : v) terms.push_back({s, 1});
    images.push_back(Polynomial::from_terms(0, terms, Rig::Bool2));
  }
  return Morphism(a, b, std::move(images), Rig::Bool2);
}

std::string to_string(const Morphism& f, const std::string& name) {
  std::string out = name + " : " + obj(f.source()) + " -> " + obj(f.target());
  int n = f.source().generators(), m = f.target().generators();
  for (int i = 0; i < n; ++i) {
    out += " ; " + generator_name("x", i, n) + " |-> " + to_string(f.image(i), "y", m);
  }
  return out;
}

}  // namespace weil
