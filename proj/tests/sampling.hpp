#pragma once

#include <random>
#include <vector>

#include "weil/verify.hpp"

namespace sampling {

// Bool2 morphism with uniformly drawn source and target among `objs`, then a
// uniform member of the Hom set.
inline weil::Morphism random_bool2(std::mt19937& rng, const std::vector<weil::Cotree>& objs) {
  const weil::Cotree& a = objs[rng() % objs.size()];
  const weil::Cotree& b = objs[rng() % objs.size()];
  std::vector<weil::Morphism> hom = weil::hom_by_cliques(a, b);
  return hom[rng() % hom.size()];
}

// Over Nat a square or edge product vanishes exactly when it does over Bool2
// (no cancellation), so any coefficients on a valid circle set stay valid.
inline weil::Morphism with_coefficients(std::mt19937& rng, const weil::Morphism& f, weil::Coeff max_coeff) {
  std::uniform_int_distribution<weil::Coeff> coeff(1, max_coeff);
  std::vector<weil::Polynomial> images;
  for (const weil::Polynomial& p : f.images()) {
    std::vector<weil::Term> terms = p.terms();
    for (weil::Term& t : terms) t.coeff = coeff(rng);
    images.push_back(weil::Polynomial::from_terms(0, terms, weil::Rig::Nat));
  }
  return weil::Morphism(f.source(), f.target(), std::move(images), weil::Rig::Nat);
}

inline bool has_coefficient_above_one(const weil::Morphism& f) {
  for (const weil::Polynomial& p : f.images()) {
    for (const weil::Term& t : p.terms()) {
      if (t.coeff > 1) return true;
    }
  }
  return false;
}

}  // namespace sampling
