#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fog/ground.hpp"
#include "fog/logic.hpp"
#include "fog/structure.hpp"

namespace fog {

inline constexpr size_t kDefaultCap = size_t{1} << 24;

// Every expansion of s (over the non-input symbols of t) satisfying all sentences
// and definitions of t, in enumeration order. Throws CapExceeded.
std::vector<FiniteStructure> enumerate_expansions(const Theory& t, const FiniteStructure& s,
                                                  size_t cap = kDefaultCap);

// Structures over g's vocabulary, expanding s, that satisfy g for some value of
// its auxiliary atoms. Input atoms are read from s. Throws CapExceeded.
std::vector<FiniteStructure> models_of_grounding(const GroundTheory& g, const FiniteStructure& s,
                                                 size_t cap = kDefaultCap);

// valuation of g's atom table in m (aux atoms false)
std::vector<GTruth> valuation(const GroundTheory& g, const FiniteStructure& m);
bool satisfies_grounding(const GroundTheory& g, const std::vector<GTruth>& v);

bool same_structure(const FiniteStructure& a, const FiniteStructure& b);

struct EquivalenceResult {
  bool equivalent = true;
  std::optional<FiniteStructure> counterexample;
  size_t theory_models = 0;
  size_t ground_models = 0;
};

// s must interpret every input symbol of t and of g.
EquivalenceResult check_isigma_equivalence(const Theory& t, const GroundTheory& g, const FiniteStructure& s,
                                           size_t cap = kDefaultCap);

}  // namespace fog
