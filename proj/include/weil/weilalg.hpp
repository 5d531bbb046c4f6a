#pragma once

#include <memory>
#include <string>
#include <vector>

#include "weil/cograph.hpp"
#include "weil/rig.hpp"

namespace weil {

// The algebra k[G]: generators are the vertices of G, relations x_u x_v = 0
// for every edge {u, v} and every u = v.  Two objects are equal when their
// realized labelled graphs coincide, so the associativity and unit
// rearrangements of a cotree name the same object.
class WeilObject {
 public:
  WeilObject();  // k
  explicit WeilObject(const Cotree& t);

  const Cotree& cotree() const noexcept { return cotree_; }
  const Graph& graph() const noexcept { return *graph_; }
  int generators() const noexcept { return graph_->size(); }

  bool operator==(const WeilObject& other) const { return *graph_ == *other.graph_; }

 private:
  Cotree cotree_;
  std::shared_ptr<const Graph> graph_;
};

WeilObject algebra_of(const Cotree& t);
WeilObject product(const WeilObject& a, const WeilObject& b);
WeilObject coproduct(const WeilObject& a, const WeilObject& b);

// `k[x1,x2]/x1^2,x2^2,x1x2`; a single generator is written x.
std::string presentation(const WeilObject& a);

// Monomials are non-empty independent vertex sets.  Returns 0 when the
// product vanishes (shared generator or an edge across).
VertexSet mono_mul(VertexSet u, VertexSet v, const Graph& ambient);

struct Term {
  VertexSet mono;
  Coeff coeff;
  bool operator==(const Term&) const = default;
};

// Rig-coefficient polynomial in normal form: terms sorted by set_less, no
// zero coefficients.  The ambient algebra is supplied by the caller of mul.
class Polynomial {
 public:
  explicit Polynomial(Rig rig = Rig::Bool2) : rig_(rig) {}

  static Polynomial constant(Coeff c, Rig rig);
  static Polynomial monomial(VertexSet mono, Coeff c, Rig rig);
  // Accumulates with the rig addition; zero coefficients are dropped.
  static Polynomial from_terms(Coeff constant, const std::vector<Term>& terms, Rig rig);

  Rig rig() const noexcept { return rig_; }
  Coeff constant_term() const noexcept { return constant_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  Coeff coeff(VertexSet mono) const;
  bool is_zero() const noexcept { return constant_ == 0 && terms_.empty(); }

  // Union of all monomial supports.
  VertexSet support() const noexcept;

  bool operator==(const Polynomial&) const = default;

 private:
  Rig rig_;
  Coeff constant_ = 0;
  std::vector<Term> terms_;
};

Polynomial poly_add(const Polynomial& p, const Polynomial& q);
Polynomial poly_mul(const Polynomial& p, const Polynomial& q, const Graph& ambient);

// Throws ValidationError when a monomial is out of range or not independent,
// or a coefficient is invalid for the rig.
void check_in(const Polynomial& p, const Graph& ambient);

// Generator i of an n-generator algebra: `prefix` alone when n == 1, else prefix + (i + 1).
std::string generator_name(const std::string& prefix, int i, int n);

// `y1 y2 + 2 y3`, or `0`.
std::string to_string(const Polynomial& p, const std::string& prefix, int n);

}  // namespace weil
