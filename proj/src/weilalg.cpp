#include "weil/weilalg.hpp"

#include <algorithm>
#include <bit>

#include "weil/errors.hpp"

namespace weil {

WeilObject::WeilObject() : graph_(std::make_shared<const Graph>(0)) {}

WeilObject::WeilObject(const Cotree& t) : cotree_(t), graph_(t.graph()) {}

WeilObject algebra_of(const Cotree& t) { return WeilObject(t); }

WeilObject product(const WeilObject& a, const WeilObject& b) {
  return WeilObject(Cotree::join(a.cotree(), b.cotree()));
}

WeilObject coproduct(const WeilObject& a, const WeilObject& b) {
  return WeilObject(Cotree::disjoint_union(a.cotree(), b.cotree()));
}

std::string generator_name(const std::string& prefix, int i, int n) {
  return n == 1 ? prefix : prefix + std::to_string(i + 1);
}

std::string presentation(const WeilObject& a) {
  int n = a.generators();
  if (n == 0) return "k";
  std::string out = "k[";
  for (int i = 0; i < n; ++i) out += (i ? "," : "") + generator_name("x", i, n);
  out += "]/";
  for (int i = 0; i < n; ++i) out += (i ? "," : "") + generator_name("x", i, n) + "^2";
  for (auto [u, v] : a.graph().edges()) out += "," + generator_name("x", u, n) + generator_name("x", v, n);
  return out;
}

VertexSet mono_mul(VertexSet u, VertexSet v, const Graph& ambient) {
  if (u & v) return 0;
  for (VertexSet s = u; s; s &= s - 1) {
    if (ambient.neighbours(std::countr_zero(s)) & v) return 0;
  }
  return u | v;
}

Polynomial Polynomial::constant(Coeff c, Rig rig) {
  Polynomial p(rig);
  p.constant_ = c;
  return p;
}

Polynomial Polynomial::monomial(VertexSet mono, Coeff c, Rig rig) {
  return from_terms(0, {{mono, c}}, rig);
}

Polynomial Polynomial::from_terms(Coeff constant, const std::vector<Term>& terms, Rig rig) {
  Polynomial p(rig);
  p.terms_.reserve(terms.size());
  for (const Term& t : terms) {
    if (t.mono == 0) {
      constant = add(constant, t.coeff, rig);
    } else if (t.coeff != 0) {
      p.terms_.push_back(t);
    }
  }
  std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& a, const Term& b) { return set_less(a.mono, b.mono); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < p.terms_.size(); ++i) {
    if (out > 0 && p.terms_[out - 1].mono == p.terms_[i].mono) {
      p.terms_[out - 1].coeff = add(p.terms_[out - 1].coeff, p.terms_[i].coeff, rig);
    } else {
      p.terms_[out++] = p.terms_[i];
    }
  }
  p.terms_.resize(out);
  p.constant_ = constant;
  return p;
}

Coeff Polynomial::coeff(VertexSet mono) const {
  if (mono == 0) return constant_;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mono,
                             [](const Term& t, VertexSet m) { return set_less(t.mono, m); });
  return it != terms_.end() && it->mono == mono ? it->coeff : 0;
}

VertexSet Polynomial::support() const noexcept {
  VertexSet s = 0;
  for (const Term& t : terms_) s |= t.mono;
  return s;
}

namespace {

void require_same_rig(const Polynomial& p, const Polynomial& q) {
  if (p.rig() != q.rig()) throw RigMismatch("polynomials over different rigs");
}

}  // namespace

Polynomial poly_add(const Polynomial& p, const Polynomial& q) {
  require_same_rig(p, q);
  std::vector<Term> all = p.terms();
  all.insert(all.end(), q.terms().begin(), q.terms().end());
  return Polynomial::from_terms(add(p.constant_term(), q.constant_term(), p.rig()), all, p.rig());
}

Polynomial poly_mul(const Polynomial& p, const Polynomial& q, const Graph& ambient) {
  require_same_rig(p, q);
  Rig r = p.rig();
  std::vector<Term> out;
  Coeff cp = p.constant_term(), cq = q.constant_term();
  for (const Term& t : q.terms()) out.push_back({t.mono, mul(cp, t.coeff, r)});
  for (const Term& t : p.terms()) out.push_back({t.mono, mul(t.coeff, cq, r)});
  for (const Term& a : p.terms()) {
    for (const Term& b : q.terms()) {
      VertexSet m = mono_mul(a.mono, b.mono, ambient);
      if (m != 0) out.push_back({m, mul(a.coeff, b.coeff, r)});
    }
  }
  return Polynomial::from_terms(mul(cp, cq, r), out, r);
}

void check_in(const Polynomial& p, const Graph& ambient) {
  if (!valid(p.constant_term(), p.rig())) throw ValidationError("coefficient out of range for bool2");
  for (const Term& t : p.terms()) {
    if ((t.mono & ~ambient.all()) != 0) {
      throw ValidationError("monomial " + set_to_string(t.mono) + " uses a generator outside the algebra");
    }
    if (!is_independent(ambient, t.mono)) {
      throw ValidationError("monomial " + set_to_string(t.mono) + " is zero in the algebra");
    }
    if (!valid(t.coeff, p.rig())) {
      throw ValidationError("coefficient " + std::to_string(t.coeff) + " is not valid in bool2");
    }
  }
}

std::string to_string(const Polynomial& p, const std::string& prefix, int n) {
  if (p.is_zero()) return "0";
  std::string out;
  auto sep = [&] {
    if (!out.empty()) out += " + ";
  };
  if (p.constant_term() != 0) out = std::to_string(p.constant_term());
  for (const Term& t : p.terms()) {
    sep();
    std::string m;
    if (t.coeff != 1) m = std::to_string(t.coeff);
    for (int v : members(t.mono)) {
      if (!m.empty()) m += ' ';
      m += generator_name(prefix, v, n);
    }
    out += m;
  }
  return out;
}

}  // namespace weil
