#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "fog/bounds.hpp"
#include "fog/logic.hpp"
#include "fog/structure.hpp"

namespace fog {

struct GAtom {
  enum class Kind { Pred, Func, Eq, Aux };
  Kind kind = Kind::Pred;
  int sym = -1;           // predicate, function or aux index
  std::vector<int> args;  // Func: arguments then value; Eq: two elements
  auto operator<=>(const GAtom&) const = default;
};

class AtomTable {
 public:
  int intern(const GAtom& a);
  const GAtom& at(int id) const { return atoms_.at(id); }
  int size() const { return static_cast<int>(atoms_.size()); }
  int find(const GAtom& a) const;  // -1 if absent

 private:
  std::vector<GAtom> atoms_;
  std::map<GAtom, int> ix_;
};

struct GNode {
  enum class Kind { True, False, Lit, And, Or, Equiv };
  Kind kind = Kind::True;
  int atom = -1;
  bool neg = false;
  std::vector<GNode> kids;

  static GNode top() { return {}; }
  static GNode bot() { return {Kind::False, -1, false, {}}; }
  static GNode lit(int atom, bool neg = false) { return {Kind::Lit, atom, neg, {}}; }
  bool operator==(const GNode&) const = default;
};

struct GRule {
  int head = -1;  // atom id
  GNode body;
};

struct GDefinition {
  std::vector<int> preds;  // defined predicates
  std::vector<GRule> rules;
};

struct GroundTheory {
  Vocabulary voc;
  std::vector<std::string> domain;
  AtomTable atoms;
  std::vector<GNode> sentences;
  std::vector<GDefinition> defs;
  int aux_count = 0;
  long long instantiations = 0;  // substitutions and literal instances tried

  int num_rules() const;
};

GroundTheory ground_full(const Theory& t, const FiniteStructure& s);
GroundTheory ground_reduced(const Theory& t, const FiniteStructure& s);
// c must be atom-based, atom-equal and tolerant; throws Error if it is s-inconsistent.
GroundTheory ground_with_bounds(const Theory& t, const FiniteStructure& s, const CMap& c);

GroundTheory apply_sharing(const GroundTheory& g);

// literal occurrences in sentences and rule bodies, plus one per rule
long long grounding_size(const GroundTheory& g);

std::string atom_string(const GroundTheory& g, int atom);
std::string to_string(const GroundTheory& g, const GNode& n);
// "fog 1" header, one sentence per line, definitions as define { ... } blocks
std::string write_fog(const GroundTheory& g);
// Reads write_fog output back against the vocabulary and domain.
GroundTheory read_fog(const std::string& text, const Vocabulary& voc, const std::vector<std::string>& domain);

struct PropTheory {
  std::vector<std::string> names;  // variable v (1-based) has name names[v-1]
  std::vector<std::string> labels; // Name(d,...) per variable
  std::vector<std::vector<int>> clauses;
  int num_vars() const { return static_cast<int>(names.size()); }
};

// Definition-free groundings only; throws Error when g has rules.
// Input atoms are replaced by their value in s, equality atoms by identity,
// and every non-input function gets its exactly-one constraints.
PropTheory to_propositional(const GroundTheory& g, const FiniteStructure& s);
std::string write_dimacs(const PropTheory& p);
std::string prop_name(const GroundTheory& g, int atom);

// Three-valued truth of ground atoms.
enum class GTruth : uint8_t { F = 0, U = 1, T = 2 };
GTruth eval_ground(const GNode& n, const std::vector<GTruth>& v);
// Well-founded model of a ground definition over a valuation of its open atoms.
std::vector<GTruth> ground_wfm(const GroundTheory& g, const GDefinition& d, const std::vector<GTruth>& open);

}  // namespace fog
