#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "fog/fobdd.hpp"
#include "fog/logic.hpp"
#include "fog/structure.hpp"
#include "fog/transform.hpp"

namespace fog {

struct BoundPair {
  Bdd ct;
  Bdd cf;
};

// Bounds shared by every atom over one symbol, over placeholder variables
// (function atoms F(x̄)=y use n+1 placeholders).
struct Canonical {
  std::vector<int> vars;
  Bdd ct;
  Bdd cf;
};

enum class SymKind { Pred, Func };

struct CMap {
  std::shared_ptr<Manager> mgr;
  std::unordered_map<int, BoundPair> bounds;  // occurrence -> bounds
  std::map<std::pair<SymKind, int>, Canonical> canonical;

  BoundPair get(int occ) const;
  void set(int occ, BoundPair b);
  bool trivial(int occ) const;
};

enum class TaskKind {
  InputCt,
  InputCf,
  Axiom,
  BottomUpCt,
  BottomUpCf,
  TopDownCt,
  TopDownCf,
  FunctionalCt,
  FunctionalCf,
  CopyCt,
  CopyCf
};

struct RefinementTask {
  TaskKind kind = TaskKind::Axiom;
  int target = -1;
  int source = -1;  // copy tasks
  bool operator<(const RefinementTask& o) const {
    return std::tie(kind, target, source) < std::tie(o.kind, o.target, o.source);
  }
};

bool is_ct_task(TaskKind k);

struct StopPolicy {
  enum class Kind { None, NodeLimit, Ratio };
  Kind kind = Kind::NodeLimit;
  int factor = 4;      // at most factor * number of occurrences installed refinements
  int node_limit = 4;
  int ratio_max_nodes = 32;  // Ratio: hard size cap, bounds can otherwise grow through recursive definitions
  const FiniteStructure* structure = nullptr;  // required by Ratio
};

struct RefineStats {
  int steps = 0;  // tasks popped
  int installed = 0;
  int rejected = 0;
  bool exhausted = false;  // stopped by the step budget with tasks pending
};

std::shared_ptr<Manager> make_manager(const Theory& t);

CMap trivial_cmap(const Theory& t, std::shared_ptr<Manager> mgr = nullptr);
// input refinement on every atom over the input vocabulary (and equality)
CMap nb_cmap(const Theory& t, std::shared_ptr<Manager> mgr = nullptr);

// One constructor applied to the current map. Throws Error on kind/occurrence mismatch.
Bdd refinement_bound(const RefinementTask& task, const CMap& c, const Theory& t, const OccIndex& ix);

// Shape key of an occurrence: structure with bound variables in de Bruijn form and
// free variables anonymous.
std::string shape_key(const Formula& f);

// Refinement over t (over completion(t) when t has definitions, restricted back to t).
CMap refine(const Theory& t, const StopPolicy& policy, RefineStats* stats = nullptr,
            std::shared_ptr<Manager> mgr = nullptr);
// Refinement over t's own occurrences only.
CMap refine_direct(const Theory& t, const StopPolicy& policy, RefineStats* stats = nullptr,
                   std::shared_ptr<Manager> mgr = nullptr);

CMap copy_closure(const CMap& c, const Theory& t);
CMap to_bottom_up(const CMap& c, const Theory& t);
CMap make_tolerant(const CMap& c, const Theory& t);

struct Consistency {
  enum class Kind { Consistent, IsigmaInconsistent, Inconsistent };
  Kind kind = Kind::Consistent;
  int occ = -1;
};
Consistency check_consistency(const CMap& c, const Theory& t, const FiniteStructure* s = nullptr);

Theory c_transform(const Theory& t, const CMap& c);
// ∀x̄(ct ⊃ A) and ∀x̄(cf ⊃ ¬A) per non-input symbol from the canonical bounds
Theory cbar_a(const CMap& c, const Theory& t);
// the same two sentences for every occurrence
Theory cbar(const CMap& c, const Theory& t);

std::string dump(const CMap& c, const Theory& t);

}  // namespace fog
