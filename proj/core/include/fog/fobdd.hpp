#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "fog/logic.hpp"
#include "fog/structure.hpp"

namespace fog {

class Manager;

// Handle to a diagram; only meaningful together with the manager that made it.
struct Bdd {
  int id = 0;
  int mgr = -1;
  bool operator==(const Bdd& o) const { return id == o.id && mgr == o.mgr; }
  bool operator!=(const Bdd& o) const { return !(*this == o); }
};

// Variables >= 0 are theory variables; bound variables inside existential
// kernels are de Bruijn indices encoded as -(i+1).
struct Kernel {
  enum class Kind { Pred, Func, Eq, Exists };
  Kind kind = Kind::Pred;
  int sym = -1;           // predicate or function id
  std::vector<int> args;  // Func: x̄ then y
  int body = -1;          // Exists: diagram over the bound index
  int depth = 0;          // quantifier nesting
};

struct Estimate {
  double cost = 1;
  double reward = 0;
  double ratio = 1;
};

class Manager {
 public:
  Manager(Vocabulary voc, std::shared_ptr<VarTable> vars);

  const Vocabulary& voc() const { return voc_; }
  const std::shared_ptr<VarTable>& vars() const { return vars_; }

  Bdd top() const { return {1, serial_}; }
  Bdd bot() const { return {0, serial_}; }
  bool is_top(Bdd b) const { return own(b) == 1; }
  bool is_bot(Bdd b) const { return own(b) == 0; }

  Bdd build(const Formula& f);
  Bdd neg(Bdd a);
  Bdd conj(Bdd a, Bdd b);
  Bdd disj(Bdd a, Bdd b);
  Bdd exists(int x, Bdd b);
  Bdd forall(int x, Bdd b);
  Bdd exists(const std::vector<int>& xs, Bdd b);
  Bdd forall(const std::vector<int>& xs, Bdd b);
  // simultaneous renaming of free variables
  Bdd rename(Bdd b, const std::unordered_map<int, int>& m);
  Bdd simplify(Bdd b);

  std::vector<int> free_vars(Bdd b);
  int node_count(Bdd b);

  // structure of a node (for inspection)
  bool is_leaf(Bdd b) const { return own(b) < 2; }
  const Kernel& kernel(Bdd b) const;
  Bdd hi(Bdd b) const;
  Bdd lo(Bdd b) const;

  bool eval(Bdd b, const FiniteStructure& s, const Assignment& a);
  // All assignments to `targets` (extending the fixed part of `a`) that make b true,
  // in lexicographic order over `targets`.
  std::vector<std::vector<int>> query(Bdd b, const FiniteStructure& s, const std::vector<int>& targets,
                                      const Assignment& a = {});
  std::optional<std::vector<int>> query_one(Bdd b, const FiniteStructure& s, const std::vector<int>& targets,
                                            const Assignment& a = {});
  // cost/reward of querying b with `bound` variables already fixed
  Estimate estimate(Bdd b, const FiniteStructure& s, const std::vector<int>& bound = {});

  FPtr to_formula(Bdd b);
  std::string kernel_string(const Kernel& k);
  std::string dump(Bdd b);

 private:
  struct Node {
    int k, hi, lo;
  };
  struct NodeHash {
    size_t operator()(const std::tuple<int, int, int>& t) const {
      uint64_t h = static_cast<uint32_t>(std::get<0>(t));
      h = h * 0x9E3779B97F4A7C15ull + static_cast<uint32_t>(std::get<1>(t));
      h = h * 0x9E3779B97F4A7C15ull + static_cast<uint32_t>(std::get<2>(t));
      return static_cast<size_t>(h ^ (h >> 29));
    }
  };

  int own(Bdd b) const;
  Bdd wrap(int id) const { return {id, serial_}; }

  int mk(int k, int hi, int lo);
  int mk_kernel(Kernel k);
  int kernel_node(Kernel k);
  bool kless(int a, int b) const;
  int top_kernel(int a, int b) const;

  int neg_i(int a);
  int and_i(int a, int b);
  int or_i(int a, int b);
  int ite_i(int k, int hi, int lo);
  int ite_node(int cond, int hi, int lo);
  int restrict_i(int b, int k, bool v);
  int exists_i(int x, int b);
  int rename_i(int b, const std::unordered_map<int, int>& m, std::unordered_map<int, int>& memo);
  int rename_kernel(int k, const std::unordered_map<int, int>& m);
  int bind_i(int b, int x, int d, std::unordered_map<int, int>& memo);
  int open_i(int b, int z, int d, std::unordered_map<int, int>& memo);
  int exists_kernel(int x, int b);
  int simplify_pass(int b, int level, std::unordered_map<int, int>& memo);
  int build_i(const Formula& f);

  const std::vector<int>& free_i(int b);
  const std::vector<int>& kernel_free(int k);
  void collect_nodes(int b, std::vector<char>& seen, int& count);

  int value(int v, const Assignment& a, const std::vector<int>& env) const;
  bool eval_kernel(int k, const FiniteStructure& s, const Assignment& a, std::vector<int>& env);
  bool eval_i(int b, const FiniteStructure& s, const Assignment& a, std::vector<int>& env);
  double prob(int b, const FiniteStructure& s);
  double sel(int k, const FiniteStructure& s);
  double cost(int b, const FiniteStructure& s, std::vector<int>& bound);
  double eval_cost(int b, const FiniteStructure& s);

  template <class F>
  bool search(int b, const FiniteStructure& s, Assignment& a, const std::vector<int>& targets, F&& emit);

  FPtr to_formula_i(int b, std::vector<int>& env);
  void dump_i(int b, int indent, const std::string& tag, std::string& out);
  std::string var_string(int v) const;

  Vocabulary voc_;
  std::shared_ptr<VarTable> vars_;
  int serial_;
  std::vector<Kernel> kernels_;
  std::unordered_map<std::string, int> kernel_ix_;
  std::vector<Node> nodes_;
  std::unordered_map<std::tuple<int, int, int>, int, NodeHash> unique_;
  std::unordered_map<uint64_t, int> and_memo_, or_memo_, exists_memo_;
  std::unordered_map<int, int> neg_memo_;
  std::unordered_map<int, std::vector<int>> free_memo_;
  std::unordered_map<int, std::vector<int>> kfree_memo_;
  std::unordered_map<int, double> prob_memo_;
  const FiniteStructure* prob_struct_ = nullptr;
};

}  // namespace fog
