#pragma once

#include <string>
#include <vector>

#include "weil/weilalg.hpp"

namespace weil {

// An augmented algebra map k[G_A] -> k[G_B], given by one constant-free
// image polynomial per generator of the source.  Construction validates:
// f(a_i)^2 = 0 for every i and f(a_i) f(a_j) = 0 for every edge of G_A.
class Morphism {
 public:
  Morphism(WeilObject source, WeilObject target, std::vector<Polynomial> images, Rig rig);

  const WeilObject& source() const noexcept { return source_; }
  const WeilObject& target() const noexcept { return target_; }
  const std::vector<Polynomial>& images() const noexcept { return images_; }
  const Polynomial& image(int i) const { return images_.at(static_cast<std::size_t>(i)); }
  Rig rig() const noexcept { return rig_; }

  bool operator==(const Morphism& other) const;

  // Skips the relation check.  For results that are valid by construction.
  static Morphism trusted(WeilObject source, WeilObject target, std::vector<Polynomial> images, Rig rig);

 private:
  Morphism() = default;
  WeilObject source_;
  WeilObject target_;
  std::vector<Polynomial> images_;
  Rig rig_ = Rig::Bool2;
};

// Throws RelationViolation on the first failing relation, in the order
// squares of x1..xn, then edges in sorted order.
void validate(const WeilObject& source, const WeilObject& target, const std::vector<Polynomial>& images, Rig rig);

// Substitutes g's images into p (a polynomial over g's source).
Polynomial substitute(const Polynomial& p, const Morphism& g);

Morphism compose(const Morphism& g, const Morphism& f);

Morphism identity(const WeilObject& a, Rig rig);
Morphism tensor(const Morphism& f, const Morphism& g);

// f1: X -> A, f2: X -> B gives X -> A x B with x |-> f1(x) + f2(x).  Every
// term of f1(x) meets A and every term of f2(x) meets B, and any such pair
// multiplies to zero in A x B, so the result is again valid.
Morphism pair(const Morphism& f1, const Morphism& f2);

// Pairing through the pullback L (x) (P x Q) (x) R of L (x) P (x) R and
// L (x) Q (x) R over L (x) R.  f1 must land in tensor(l, p, r), f2 in
// tensor(l, q, r), and both must agree after killing P and Q; otherwise
// TypeMismatch.  Terms of f1 that avoid P are shared with f2.
Morphism pair(const Morphism& f1, const Morphism& f2, const Cotree& l, const Cotree& p, const Cotree& q,
              const Cotree& r);

// A x B -> A (side 1) or A x B -> B (side 2).  Generators of the kept
// factor map to themselves, those of the other factor to 0.
Morphism projection(const Cotree& a, const Cotree& b, int side, Rig rig);

Morphism eps(const WeilObject& a, Rig rig);  // A -> k
Morphism eta(const WeilObject& b, Rig rig);  // k -> B

namespace gen {
Morphism eps_w(Rig rig);   // W -> k
Morphism eta_w(Rig rig);   // k -> W
Morphism plus_w(Rig rig);  // W^2 -> W, x1 |-> x, x2 |-> x
Morphism l_w(Rig rig);     // W -> 2W, x |-> x1 x2
Morphism c_w(Rig rig);     // 2W -> 2W, x1 |-> x2, x2 |-> x1
}  // namespace gen

// x |-> r x through the iteration g_0 = eta eps, g_1 = id, g_{n+1} = + (id, g_n).
Morphism ghat(int r, Rig rig);

// Reinterpret the coefficients under another rig.  To Bool2 applies psi.
// To Nat keeps the values (the result is validated).
Morphism change_rig(const Morphism& f, Rig rig);

// A vertex of kappa(G_B): the supports of a 0/1 image polynomial, in canonical order.
using KappaVertex = std::vector<VertexSet>;

struct KleisliMap {
  std::vector<KappaVertex> assignment;  // one per vertex of G_A
  bool operator==(const KleisliMap&) const = default;
};

// Requires 0/1 coefficients; RigMismatch otherwise.
KleisliMap to_kleisli(const Morphism& f);
// Builds the Bool2 morphism with those supports and validates it.  The
// validity check is exactly the graph map condition: each assigned set is a
// clique of ind+(G_B), and the union of the sets at the ends of an edge of
// G_A is again a clique.
Morphism from_kleisli(const KleisliMap& m, const WeilObject& a, const WeilObject& b);

// `f : 2W -> 3W ; x1 |-> y1 y2 + y2 y3 ; x2 |-> y1 + y1 y3`
std::string to_string(const Morphism& f, const std::string& name = "f");

}  // namespace weil
