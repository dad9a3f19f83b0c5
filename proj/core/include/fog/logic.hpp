#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace fog {

struct Symbol {
  std::string name;
  int arity = 0;
  bool input = false;
};

class Vocabulary {
 public:
  int add_pred(const std::string& name, int arity);
  int add_func(const std::string& name, int arity);
  std::optional<int> find_pred(const std::string& name) const;
  std::optional<int> find_func(const std::string& name) const;

  const Symbol& pred(int id) const { return preds_.at(id); }
  const Symbol& func(int id) const { return funcs_.at(id); }
  int num_preds() const { return static_cast<int>(preds_.size()); }
  int num_funcs() const { return static_cast<int>(funcs_.size()); }

  void set_input_pred(int id, bool v = true) { preds_.at(id).input = v; }
  void set_input_func(int id, bool v = true) { funcs_.at(id).input = v; }
  bool is_input_pred(int id) const { return preds_.at(id).input; }
  bool is_input_func(int id) const { return funcs_.at(id).input; }

 private:
  std::vector<Symbol> preds_;
  std::vector<Symbol> funcs_;
  std::unordered_map<std::string, int> pred_ix_;
  std::unordered_map<std::string, int> func_ix_;
};

// Variable names, shared by a theory and everything derived from it so that
// fresh variables never collide.
class VarTable {
 public:
  int add(const std::string& name);
  int fresh(const std::string& prefix = "_v");
  const std::string& name(int v) const { return names_.at(v); }
  int size() const { return static_cast<int>(names_.size()); }

 private:
  std::vector<std::string> names_;
  int counter_ = 0;
};

struct Term {
  enum class Kind { Var, Dom, App };
  Kind kind = Kind::Var;
  int id = -1;  // variable id, domain index or function id
  std::vector<Term> args;

  static Term var(int v) { return Term{Kind::Var, v, {}}; }
  static Term dom(int d) { return Term{Kind::Dom, d, {}}; }
  static Term app(int f, std::vector<Term> a) { return Term{Kind::App, f, std::move(a)}; }
  bool is_var() const { return kind == Kind::Var; }
  bool operator==(const Term& o) const { return kind == o.kind && id == o.id && args == o.args; }
};

enum class FKind { True, False, Atom, Eq, Not, And, Or, Exists, Forall };

struct Formula;
using FPtr = std::shared_ptr<const Formula>;

struct Formula {
  FKind kind = FKind::True;
  int sym = -1;             // predicate id (Atom)
  int var = -1;             // bound variable (Exists/Forall)
  std::vector<Term> args;   // Atom arguments; Eq has exactly two
  std::vector<FPtr> kids;
  int occ = -1;
  std::vector<int> free;    // sorted free variables

  bool is_atomic() const { return kind == FKind::Atom || kind == FKind::Eq || kind == FKind::True || kind == FKind::False; }
  bool is_literal() const { return is_atomic() || (kind == FKind::Not && kids[0]->is_atomic()); }
  bool has_free(int v) const;
};

FPtr mk_true();
FPtr mk_false();
FPtr mk_atom(int pred, std::vector<Term> args);
FPtr mk_eq(Term a, Term b);
FPtr mk_not(FPtr f);
FPtr mk_and(std::vector<FPtr> kids);
FPtr mk_or(std::vector<FPtr> kids);
FPtr mk_exists(int v, FPtr f);
FPtr mk_forall(int v, FPtr f);
FPtr mk_quant(FKind k, int v, FPtr f);
FPtr mk_junction(FKind k, std::vector<FPtr> kids);
// same node, new children
FPtr with_kids(const Formula& f, std::vector<FPtr> kids);

void term_vars(const Term& t, std::vector<int>& out);

struct Rule {
  int head = -1;
  std::vector<int> vars;  // distinct head variables
  FPtr body;
};

struct Definition {
  std::vector<Rule> rules;
  std::vector<int> defined() const;  // sorted, unique
};

struct Theory {
  Vocabulary voc;
  std::shared_ptr<VarTable> vars = std::make_shared<VarTable>();
  std::vector<FPtr> sentences;
  std::vector<Definition> defs;

  std::string var_name(int v) const;
};

// Assigns fresh preorder occurrence ids (sentences first, then rule bodies).
void renumber(Theory& t);
int count_nodes(const Theory& t);

// Throws TheoryError on violated invariants.
void validate(const Theory& t);

// Symbols used in a formula.
void collect_preds(const Formula& f, std::vector<int>& preds);
void collect_funcs(const Formula& f, std::vector<int>& funcs);
void collect_funcs(const Term& t, std::vector<int>& funcs);
// all symbols input (equality and truth constants are always input)
bool over_input(const Formula& f, const Vocabulary& voc);

// Variable renaming (free occurrences only). A quantifier that would capture a
// target is renamed to a fresh variable of `vars`; without `vars` that throws.
Term rename_term(const Term& t, const std::unordered_map<int, int>& m);
FPtr rename_free(const FPtr& f, const std::unordered_map<int, int>& m, VarTable* vars = nullptr);
// replace variables by domain elements
FPtr instantiate(const FPtr& f, const std::unordered_map<int, int>& values);

std::string to_string(const Theory& t, const Formula& f);
std::string to_string(const Theory& t, const Term& tm);
// Re-emits the theory in the input grammar.
std::string print_theory(const Theory& t);

}  // namespace fog
