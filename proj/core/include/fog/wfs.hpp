#pragma once

#include <random>
#include <vector>

#include "fog/logic.hpp"
#include "fog/structure.hpp"

namespace fog {

// Predicates and functions a definition reads but does not define.
std::vector<int> open_preds(const Definition& d);
std::vector<int> open_funcs(const Definition& d);

// Well-founded model of d above the open symbols of `open` (tables of defined
// predicates in `open` are ignored).
ThreeValuedStructure wfm(const Vocabulary& voc, const Definition& d, const FiniteStructure& open);

// Same limit reached by a random interleaving of single-atom derivations and
// unfounded-set steps.
ThreeValuedStructure wfm_random_schedule(const Vocabulary& voc, const Definition& d, const FiniteStructure& open,
                                         std::mt19937_64& rng);

bool satisfies_definition(const Vocabulary& voc, const FiniteStructure& m, const Definition& d);

enum class Totality { TotalByMonotone, TotalByStratification, Unknown };
Totality classify_totality(const Definition& d);
const char* to_string(Totality t);

struct Materialized {
  Theory theory;             // remaining definitions, vocabulary with defined symbols marked input
  FiniteStructure structure; // extended with the materialized tables
  std::vector<int> preds;    // materialized predicates in processing order
};

// Evaluates every definition that only reads input symbols. Throws IllFormedDefinition
// when such a definition has a three-valued well-founded model.
Materialized materialize_input_definitions(const Theory& t, const FiniteStructure& s);

}  // namespace fog
