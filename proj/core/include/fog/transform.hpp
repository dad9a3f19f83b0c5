#pragma once

#include <unordered_map>
#include <vector>

#include "fog/logic.hpp"

namespace fog {

// Negation normal form plus flattened atoms P(x̄), F(x̄)=y, x=y.
Theory to_tnf(const Theory& t);
FPtr tnf_formula(const FPtr& f, VarTable& vars);
bool is_tnf(const Formula& f);

// Moves ∀ into disjunctions and ∃ into conjunctions where a part lacks the variable.
FPtr push_quantifiers(const FPtr& f);
Theory push_quantifiers(const Theory& t);

struct Completion {
  Theory theory;  // definitions replaced by ≡-sentences, renumbered
  // completion occurrence -> original occurrence
  std::unordered_map<int, int> origin;
  // completion occurrence -> index into renamings (completion variables to rule variables)
  std::unordered_map<int, int> rename_ix;
  std::vector<std::unordered_map<int, int>> renamings;
};

Theory completion(const Theory& t);
Completion completion_with_origin(const Theory& t);

enum class Polarity { Positive, Negative };

struct OccInfo {
  const Formula* f = nullptr;
  int parent = -1;
  int child_ix = -1;
  int root = -1;       // sentence index, or -1 for rule bodies
  int def = -1;        // definition index for rule bodies
  int rule = -1;
  bool positive = true;
};

class OccIndex {
 public:
  explicit OccIndex(const Theory& t);
  const OccInfo& at(int occ) const;
  bool has(int occ) const { return occ >= 0 && occ < static_cast<int>(info_.size()) && info_[occ].f; }
  int size() const { return static_cast<int>(info_.size()); }
  const std::vector<int>& all() const { return order_; }

 private:
  std::vector<OccInfo> info_;
  std::vector<int> order_;
};

Polarity polarity(const Theory& t, int occ);

}  // namespace fog
