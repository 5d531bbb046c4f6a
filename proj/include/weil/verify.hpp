#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weil/decompose.hpp"

namespace weil {

// Distinct objects (as labelled graphs) named by cotrees with at most
// `max_vertices` leaves, ordered by vertex count and then by first appearance.
std::vector<Cotree> test_objects(int max_vertices);

struct HomSet {
  Cotree source;
  Cotree target;
  std::vector<Morphism> morphisms;
};

constexpr int kHomGuard = 20;

// All Bool2 morphisms a -> b.  Brute force: every subset of ind+(G_b) is a
// candidate image, kept when its square vanishes; then generators are
// assigned by backtracking, checking each edge product.  Throws TooLarge
// when |ind+(G_b)| > kHomGuard.  Order: lexicographic over the image
// tuple, images compared by term count and then term by term.
HomSet enumerate_hom(const Cotree& a, const Cotree& b);

// Same set and order, built from the cliques of ind+(G_b) instead of
// subsets.  Usable for larger targets.  Throws TooLarge when more than
// `limit` morphisms would be produced.
std::vector<Morphism> hom_by_cliques(const Cotree& a, const Cotree& b, std::size_t limit = 1u << 22);

bool poly_order(const Polynomial& p, const Polynomial& q);

struct AxiomResult {
  std::string id;
  bool pass;
  std::string witness;  // empty on pass
  std::string detail;   // e.g. how many cases were examined
};

struct AxiomReport {
  std::vector<AxiomResult> results;

  bool all_pass() const;
  void add(AxiomResult r);
  void merge(const AxiomReport& other);
  // `AXIOM <id> PASS|FAIL [witness]`, one per line, sorted by id.
  std::string lines() const;
  std::string text() const;
};

// Canonical tangent structure T = W (x) -, components at each test object
// with at most `component_vertices` vertices; naturality over every Bool2
// morphism between objects with at most `naturality_vertices` vertices.
// Includes the equalizer sweep (check_equalizer) at `equalizer_vertices`.
AxiomReport check_tangent_axioms(int component_vertices = 2, int naturality_vertices = 2, int equalizer_vertices = 3);

// v: W^2 -> 2W, x1 |-> y1 y2, x2 |-> y2.
Morphism vertical_lift_equalizer();

// v equalizes W (x) eps and eta . (eps (x) eps); every equalizing h: A -> 2W
// (A with at most `max_vertices` vertices) factors through v exactly once.
AxiomResult check_equalizer(int max_vertices = 3);

// B (x) (A1 x A2) with projections B (x) pi_i is the pullback of
// B (x) eps over B.  Apexes range over test objects with at most
// `apex_vertices` vertices.  Small cases are swept literally: every
// compatible cone, counting factorizations among all maps into the apex.
// Larger cases use an exhaustive check of the polynomial conditions that
// decide existence and uniqueness (see the README).
AxiomResult check_foundational_pullback(const Cotree& b, const Cotree& a1, const Cotree& a2, int apex_vertices = 2);

// The above for every triple of test objects with at most `max_vertices`
// vertices, folded into one entry; the witness names the first failing triple.
AxiomResult check_foundational_pullbacks(int max_vertices = 2, int apex_vertices = 2);

// Omega: slots of h = g . f -> slots of g, for g: B -> nW.
struct OmegaWitness {
  ChoiceAssignment h_choice;
  ChoiceAssignment g_choice;
  Morphism omega;
  std::vector<Morphism> factors;  // Omega_j: W^{alpha_j} -> W^{beta_j}
};

// Throws ChoiceAmbiguous when some circle of h has more than one
// factorization through f and the circles of g.
OmegaWitness omega_witness(const Morphism& f, const Morphism& g);

// One witness per way of resolving every ambiguous circle (a single one when
// nothing is ambiguous).  Throws TooLarge past `limit` resolutions.
std::vector<OmegaWitness> omega_resolutions(const Morphism& f, const Morphism& g, std::size_t limit = 256);

// Each slot of h goes to the sum of its images over every factorization.
// Agrees with omega_witness when nothing is ambiguous.  A single resolution
// of an ambiguous circle breaks Omega . h' = g' . f, since g' . f keeps every
// factorization as a separate term.  Over Bool2 the sum repairs this when
// the factorizations differ in one slot; otherwise the product of summed
// slots has cross terms and no slotwise Omega exists.
OmegaWitness omega_summed(const Morphism& f, const Morphism& g);

// +_beta . Omega = +_alpha, Omega . h' = g' . f, Omega = tensor of the factors.
// Returns the failing identity, or an empty string.
std::string check_omega(const Morphism& f, const Morphism& g, const OmegaWitness& w);

// Gamma: slots of f -> slots of h = g . f, for g: mW -> nW with pairwise
// disjoint circles, no generator sent to 0 and every z covered.
struct GammaWitness {
  ChoiceAssignment f_choice;
  ChoiceAssignment h_choice;
  std::vector<int> psi;  // psi[z] = the y whose image contains z
  Morphism gamma;
};

// Throws PreconditionViolation when g is not admissible.
GammaWitness gamma_witness(const Morphism& f, const Morphism& g);

// +_alpha . Gamma = g . +_gamma, Gamma . f' = h', and alpha_z = gamma_psi(z).
std::string check_gamma(const Morphism& f, const Morphism& g, const GammaWitness& w);

bool gamma_admissible(const Morphism& g);

// The Bool2 morphism read over Nat with the same coefficients, then pushed
// back along psi, equals the input.
bool check_nat_fullness(const Morphism& sample);

// Sum of the slots: W^{m_1} (x) ... (x) W^{m_n} -> nW.
Morphism slot_sum(const std::vector<int>& multiplicity, Rig rig);

}  // namespace weil
