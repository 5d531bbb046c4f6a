#pragma once

#include <string_view>
#include <vector>

#include "weil/genexpr.hpp"

namespace weil {

// A term of an image polynomial: monomial `mono` with coefficient `coeff`
// in the image of source generator `generator`.
struct Circle {
  int generator;
  VertexSet mono;
  Coeff coeff;
  bool operator==(const Circle&) const = default;
};

// All circles, ordered by generator and then by monomial.
std::vector<Circle> circles(const Morphism& f);

// True when two distinct circles share a target generator.
bool has_intersecting_circles(const Morphism& f);

// The lift f': A -> W^{m_1} (x) ... (x) W^{m_n} of f: A -> nW in which
// every slot generator lies in exactly one circle.  For each z_j the circles
// containing z_j take the slots of W^{m_j} in circle order.  Factors with
// m_j = 0 are absent from the slot object.
struct ChoiceAssignment {
  std::vector<int> multiplicity;  // m_j for each target generator z_j
  std::vector<int> offset;        // first slot generator of W^{m_j}
  std::vector<Circle> circles;
  Cotree slot_object;
  Morphism lifted;

  // Slot generator used by circle c for z_j (z_j must lie in the circle).
  int slot(std::size_t c, int j) const;
};

// Requires an edgeless target; PreconditionViolation otherwise.
ChoiceAssignment choice_rule(const Morphism& f);

enum class StepTag : std::uint8_t {
  OneCircle,
  SplitCircles,
  Projection,
  NoIntersect,
  SplitGeneral,
  PullbackTarget,
  Coefficient
};

std::string_view tag_name(StepTag tag) noexcept;

struct TraceStep {
  StepTag tag;
  GenExpr expr;
};

// Steps in the order they complete, so every sub-expression is recorded
// before the step that uses it and the last step holds the whole result.
struct DecompositionTrace {
  std::vector<TraceStep> steps;
  GenExpr replay() const;
};

// W^m -> W adding all m generators; m = 0 gives eta.
GenExpr plus_tower(int m);

// Maps to and from k built from eps/eta, tensors, projections and pairing.
GenExpr eps_tower(const Cotree& a);
GenExpr eta_tower(const Cotree& b);

// nW -> nW sending y_p to z_{order[p]}, as a composite of adjacent
// transpositions (id (x) c (x) id) found by insertion sort.  The identity
// permutation gives id(nW).
GenExpr permutation_network(const std::vector<int>& order);

// W -> nW with a single term of coefficient 1: padding of eta/id over the
// iterated lift.  PreconditionViolation otherwise.
GenExpr decompose_one_circle(const Morphism& f);

GenExpr decompose(const Morphism& f, DecompositionTrace* trace = nullptr);

}  // namespace weil
