#include "fog/logic.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "fog/error.hpp"

namespace fog {

int Vocabulary::add_pred(const std::string& name, int arity) {
  if (arity < 0) throw TheoryError("negative arity for " + name);
  if (pred_ix_.count(name) || func_ix_.count(name)) throw TheoryError("symbol redeclared: " + name);
  preds_.push_back(Symbol{name, arity, false});
  pred_ix_[name] = static_cast<int>(preds_.size()) - 1;
  return static_cast<int>(preds_.size()) - 1;
}

int Vocabulary::add_func(const std::string& name, int arity) {
  if (arity < 0) throw TheoryError("negative arity for " + name);
  if (pred_ix_.count(name) || func_ix_.count(name)) throw TheoryError("symbol redeclared: " + name);
  funcs_.push_back(Symbol{name, arity, false});
  func_ix_[name] = static_cast<int>(funcs_.size()) - 1;
  return static_cast<int>(funcs_.size()) - 1;
}

std::optional<int> Vocabulary::find_pred(const std::string& name) const {
  auto it = pred_ix_.find(name);
  if (it == pred_ix_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Vocabulary::find_func(const std::string& name) const {
  auto it = func_ix_.find(name);
  if (it == func_ix_.end()) return std::nullopt;
  return it->second;
}

int VarTable::add(const std::string& name) {
  names_.push_back(name);
  return static_cast<int>(names_.size()) - 1;
}

int VarTable::fresh(const std::string& prefix) {
  return add(prefix + std::to_string(counter_++));
}

bool Formula::has_free(int v) const { return std::binary_search(free.begin(), free.end(), v); }

void term_vars(const Term& t, std::vector<int>& out) {
  if (t.kind == Term::Kind::Var) out.push_back(t.id);
  for (const auto& a : t.args) term_vars(a, out);
}

namespace {

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::shared_ptr<Formula> node(FKind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}

}  // namespace

FPtr mk_true() { return node(FKind::True); }
FPtr mk_false() { return node(FKind::False); }

FPtr mk_atom(int pred, std::vector<Term> args) {
  auto f = node(FKind::Atom);
  f->sym = pred;
  for (const auto& a : args) term_vars(a, f->free);
  sort_unique(f->free);
  f->args = std::move(args);
  return f;
}

FPtr mk_eq(Term a, Term b) {
  auto f = node(FKind::Eq);
  term_vars(a, f->free);
  term_vars(b, f->free);
  sort_unique(f->free);
  f->args = {std::move(a), std::move(b)};
  return f;
}

FPtr mk_not(FPtr k) {
  auto f = node(FKind::Not);
  f->free = k->free;
  f->kids = {std::move(k)};
  return f;
}

FPtr mk_junction(FKind k, std::vector<FPtr> kids) {
  auto f = node(k);
  for (const auto& c : kids) f->free.insert(f->free.end(), c->free.begin(), c->free.end());
  sort_unique(f->free);
  f->kids = std::move(kids);
  return f;
}

FPtr mk_and(std::vector<FPtr> kids) { return mk_junction(FKind::And, std::move(kids)); }
FPtr mk_or(std::vector<FPtr> kids) { return mk_junction(FKind::Or, std::move(kids)); }

FPtr mk_quant(FKind k, int v, FPtr body) {
  auto f = node(k);
  f->var = v;
  f->free = body->free;
  f->free.erase(std::remove(f->free.begin(), f->free.end(), v), f->free.end());
  f->kids = {std::move(body)};
  return f;
}

FPtr mk_exists(int v, FPtr f) { return mk_quant(FKind::Exists, v, std::move(f)); }
FPtr mk_forall(int v, FPtr f) { return mk_quant(FKind::Forall, v, std::move(f)); }

FPtr with_kids(const Formula& f, std::vector<FPtr> kids) {
  switch (f.kind) {
    case FKind::Not: return mk_not(kids.at(0));
    case FKind::And:
    case FKind::Or: return mk_junction(f.kind, std::move(kids));
    case FKind::Exists:
    case FKind::Forall: return mk_quant(f.kind, f.var, kids.at(0));
    default: {
      auto c = std::make_shared<Formula>(f);
      c->occ = -1;
      return c;
    }
  }
}

std::vector<int> Definition::defined() const {
  std::vector<int> out;
  for (const auto& r : rules) out.push_back(r.head);
  sort_unique(out);
  return out;
}

std::string Theory::var_name(int v) const {
  if (v >= 0 && v < vars->size()) return vars->name(v);
  return "_t" + std::to_string(v);
}

namespace {

FPtr renumber_rec(const FPtr& f, int& next) {
  auto c = std::make_shared<Formula>(*f);
  c->occ = next++;
  for (auto& k : c->kids) k = renumber_rec(k, next);
  return c;
}

int count_rec(const Formula& f) {
  int n = 1;
  for (const auto& k : f.kids) n += count_rec(*k);
  return n;
}

}  // namespace

void renumber(Theory& t) {
  int next = 0;
  for (auto& s : t.sentences) s = renumber_rec(s, next);
  for (auto& d : t.defs)
    for (auto& r : d.rules) r.body = renumber_rec(r.body, next);
}

int count_nodes(const Theory& t) {
  int n = 0;
  for (const auto& s : t.sentences) n += count_rec(*s);
  for (const auto& d : t.defs)
    for (const auto& r : d.rules) n += count_rec(*r.body);
  return n;
}

void collect_funcs(const Term& t, std::vector<int>& funcs) {
  if (t.kind == Term::Kind::App) funcs.push_back(t.id);
  for (const auto& a : t.args) collect_funcs(a, funcs);
}

void collect_preds(const Formula& f, std::vector<int>& preds) {
  if (f.kind == FKind::Atom) preds.push_back(f.sym);
  for (const auto& k : f.kids) collect_preds(*k, preds);
}

void collect_funcs(const Formula& f, std::vector<int>& funcs) {
  for (const auto& a : f.args) collect_funcs(a, funcs);
  for (const auto& k : f.kids) collect_funcs(*k, funcs);
}

bool over_input(const Formula& f, const Vocabulary& voc) {
  std::vector<int> ps, fs;
  collect_preds(f, ps);
  collect_funcs(f, fs);
  for (int p : ps)
    if (!voc.is_input_pred(p)) return false;
  for (int g : fs)
    if (!voc.is_input_func(g)) return false;
  return true;
}

void validate(const Theory& t) {
  std::set<int> defined;
  for (const auto& d : t.defs) {
    for (int p : d.defined()) {
      if (t.voc.is_input_pred(p)) throw TheoryError("input predicate is defined: " + t.voc.pred(p).name);
      if (!defined.insert(p).second)
        throw TheoryError("predicate defined by two definitions: " + t.voc.pred(p).name);
    }
    for (const auto& r : d.rules) {
      std::vector<int> hv = r.vars;
      sort_unique(hv);
      if (hv.size() != r.vars.size()) throw TheoryError("head arguments must be distinct variables");
      if (static_cast<int>(r.vars.size()) != t.voc.pred(r.head).arity)
        throw TheoryError("arity mismatch in head of " + t.voc.pred(r.head).name);
      for (int v : r.body->free)
        if (!std::binary_search(hv.begin(), hv.end(), v))
          throw TheoryError("body variable " + t.var_name(v) + " not among head variables");
    }
  }
  for (const auto& s : t.sentences)
    if (!s->free.empty()) throw TheoryError("sentence has free variable " + t.var_name(s->free[0]));
}

Term rename_term(const Term& t, const std::unordered_map<int, int>& m) {
  if (t.kind == Term::Kind::Var) {
    auto it = m.find(t.id);
    return it == m.end() ? t : Term::var(it->second);
  }
  Term c = t;
  for (auto& a : c.args) a = rename_term(a, m);
  return c;
}

FPtr rename_free(const FPtr& f, const std::unordered_map<int, int>& m, VarTable* vars) {
  bool touched = false;
  for (int v : f->free)
    if (m.count(v)) touched = true;
  if (!touched) return f;
  switch (f->kind) {
    case FKind::Atom: {
      std::vector<Term> a;
      for (const auto& x : f->args) a.push_back(rename_term(x, m));
      return mk_atom(f->sym, std::move(a));
    }
    case FKind::Eq: return mk_eq(rename_term(f->args[0], m), rename_term(f->args[1], m));
    case FKind::Exists:
    case FKind::Forall: {
      auto inner = m;
      inner.erase(f->var);
      bool capture = false;
      for (int v : f->kids[0]->free) {
        auto it = inner.find(v);
        if (it != inner.end() && it->second == f->var) capture = true;
      }
      if (!capture) return mk_quant(f->kind, f->var, rename_free(f->kids[0], inner, vars));
      if (!vars) throw Error("renaming captures variable " + std::to_string(f->var));
      int fresh = vars->fresh();
      inner[f->var] = fresh;
      return mk_quant(f->kind, fresh, rename_free(f->kids[0], inner, vars));
    }
    default: {
      std::vector<FPtr> kids;
      for (const auto& k : f->kids) kids.push_back(rename_free(k, m, vars));
      return with_kids(*f, std::move(kids));
    }
  }
}

namespace {

Term inst_term(const Term& t, const std::unordered_map<int, int>& vals) {
  if (t.kind == Term::Kind::Var) {
    auto it = vals.find(t.id);
    return it == vals.end() ? t : Term::dom(it->second);
  }
  Term c = t;
  for (auto& a : c.args) a = inst_term(a, vals);
  return c;
}

}  // namespace

FPtr instantiate(const FPtr& f, const std::unordered_map<int, int>& vals) {
  switch (f->kind) {
    case FKind::Atom: {
      std::vector<Term> a;
      for (const auto& x : f->args) a.push_back(inst_term(x, vals));
      return mk_atom(f->sym, std::move(a));
    }
    case FKind::Eq: return mk_eq(inst_term(f->args[0], vals), inst_term(f->args[1], vals));
    case FKind::Exists:
    case FKind::Forall: {
      auto inner = vals;
      inner.erase(f->var);
      return mk_quant(f->kind, f->var, instantiate(f->kids[0], inner));
    }
    default: {
      std::vector<FPtr> kids;
      for (const auto& k : f->kids) kids.push_back(instantiate(k, vals));
      return with_kids(*f, std::move(kids));
    }
  }
}

std::string to_string(const Theory& t, const Term& tm) {
  switch (tm.kind) {
    case Term::Kind::Var: return t.var_name(tm.id);
    case Term::Kind::Dom: return "#" + std::to_string(tm.id);
    case Term::Kind::App: {
      std::string s = t.voc.func(tm.id).name;
      if (tm.args.empty()) return s;
      s += "(";
      for (size_t i = 0; i < tm.args.size(); ++i) {
        if (i) s += ",";
        s += to_string(t, tm.args[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

namespace {

// precedence: quantifier 0, or 1, and 2, not/atom 3
void print_rec(const Theory& t, const Formula& f, int ctx, std::string& out) {
  auto wrap = [&](int prec, auto&& body) {
    bool paren = prec < ctx;
    if (paren) out += "(";
    body();
    if (paren) out += ")";
  };
  switch (f.kind) {
    case FKind::True: out += "true"; return;
    case FKind::False: out += "false"; return;
    case FKind::Atom: {
      out += t.voc.pred(f.sym).name;
      if (!f.args.empty()) {
        out += "(";
        for (size_t i = 0; i < f.args.size(); ++i) {
          if (i) out += ",";
          out += to_string(t, f.args[i]);
        }
        out += ")";
      }
      return;
    }
    case FKind::Eq:
      wrap(3, [&] { out += to_string(t, f.args[0]) + " = " + to_string(t, f.args[1]); });
      return;
    case FKind::Not:
      if (f.kids[0]->kind == FKind::Eq) {
        const auto& e = *f.kids[0];
        out += to_string(t, e.args[0]) + " ~= " + to_string(t, e.args[1]);
        return;
      }
      out += "~";
      print_rec(t, *f.kids[0], 3, out);
      return;
    case FKind::And:
    case FKind::Or:
      wrap(f.kind == FKind::Or ? 1 : 2, [&] {
        if (f.kids.empty()) {
          out += f.kind == FKind::And ? "true" : "false";
          return;
        }
        for (size_t i = 0; i < f.kids.size(); ++i) {
          if (i) out += f.kind == FKind::And ? " & " : " | ";
          print_rec(t, *f.kids[i], f.kind == FKind::Or ? 2 : 3, out);
        }
      });
      return;
    case FKind::Exists:
    case FKind::Forall:
      wrap(0, [&] {
        out += f.kind == FKind::Exists ? "? " : "! ";
        out += t.var_name(f.var) + " : ";
        print_rec(t, *f.kids[0], 0, out);
      });
      return;
  }
}

}  // namespace

std::string to_string(const Theory& t, const Formula& f) {
  std::string out;
  print_rec(t, f, 0, out);
  return out;
}

std::string print_theory(const Theory& t) {
  std::ostringstream os;
  os << "vocab {\n";
  for (int p = 0; p < t.voc.num_preds(); ++p) os << "  pred " << t.voc.pred(p).name << "/" << t.voc.pred(p).arity << ".\n";
  for (int f = 0; f < t.voc.num_funcs(); ++f) os << "  func " << t.voc.func(f).name << "/" << t.voc.func(f).arity << ".\n";
  os << "}\n";
  std::vector<std::string> in;
  for (int p = 0; p < t.voc.num_preds(); ++p)
    if (t.voc.is_input_pred(p)) in.push_back(t.voc.pred(p).name);
  for (int f = 0; f < t.voc.num_funcs(); ++f)
    if (t.voc.is_input_func(f)) in.push_back(t.voc.func(f).name);
  os << "input {";
  for (size_t i = 0; i < in.size(); ++i) os << (i ? ", " : " ") << in[i];
  os << (in.empty() ? "}\n" : " }\n");
  os << "theory {\n";
  for (const auto& s : t.sentences) os << "  " << to_string(t, *s) << ".\n";
  for (const auto& d : t.defs) {
    os << "  define {\n";
    for (const auto& r : d.rules) {
      os << "    " << t.voc.pred(r.head).name;
      if (!r.vars.empty()) {
        os << "(";
        for (size_t i = 0; i < r.vars.size(); ++i) os << (i ? "," : "") << t.var_name(r.vars[i]);
        os << ")";
      }
      os << " <- " << to_string(t, *r.body) << ".\n";
    }
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fog
