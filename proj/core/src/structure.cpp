#include "fog/structure.hpp"

#include "fog/error.hpp"

namespace fog {

size_t ipow(size_t b, int e) {
  size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

Table::Table(int arity, int dsize) : arity_(arity), dsize_(dsize), bits_(ipow(dsize, arity), 0) {}

size_t Table::index(std::span<const int> tuple) const {
  size_t ix = 0;
  for (int i = 0; i < arity_; ++i) ix = ix * dsize_ + tuple[i];
  return ix;
}

std::vector<int> Table::tuple(size_t index) const {
  std::vector<int> t(arity_);
  for (int i = arity_ - 1; i >= 0; --i) {
    t[i] = static_cast<int>(index % dsize_);
    index /= dsize_;
  }
  return t;
}

size_t Table::count() const {
  size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

bool FiniteStructure::holds(int p, std::span<const int> tuple) const {
  if (!has_pred(p)) throw EvalError("uninterpreted predicate #" + std::to_string(p));
  return preds[p]->get(tuple);
}

int FiniteStructure::apply(int f, std::span<const int> tuple) const {
  if (!has_func(f)) throw EvalError("uninterpreted function #" + std::to_string(f));
  size_t ix = 0;
  for (int d : tuple) ix = ix * domain.size() + d;
  return (*funcs[f])[ix];
}

std::optional<int> FiniteStructure::element(const std::string& name) const {
  for (size_t i = 0; i < domain.size(); ++i)
    if (domain[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

void FiniteStructure::resize(const Vocabulary& voc) {
  preds.resize(std::max<size_t>(preds.size(), voc.num_preds()));
  funcs.resize(std::max<size_t>(funcs.size(), voc.num_funcs()));
}

int eval_term(const Term& t, const FiniteStructure& s, const Assignment& a) {
  switch (t.kind) {
    case Term::Kind::Var:
      if (t.id >= static_cast<int>(a.size()) || a[t.id] < 0) throw EvalError("unassigned variable");
      return a[t.id];
    case Term::Kind::Dom: return t.id;
    case Term::Kind::App: {
      int buf[16];
      std::vector<int> big;
      int* args = buf;
      if (t.args.size() > 16) {
        big.resize(t.args.size());
        args = big.data();
      }
      for (size_t i = 0; i < t.args.size(); ++i) args[i] = eval_term(t.args[i], s, a);
      return s.apply(t.id, std::span<const int>(args, t.args.size()));
    }
  }
  return -1;
}

namespace {

void ensure(Assignment& a, int v) {
  if (v >= static_cast<int>(a.size())) a.resize(v + 1, -1);
}

bool atom_holds(const Formula& f, const FiniteStructure& s, const Assignment& a) {
  int buf[16];
  std::vector<int> big;
  int* args = buf;
  if (f.args.size() > 16) {
    big.resize(f.args.size());
    args = big.data();
  }
  for (size_t i = 0; i < f.args.size(); ++i) args[i] = eval_term(f.args[i], s, a);
  return s.holds(f.sym, std::span<const int>(args, f.args.size()));
}

}  // namespace

bool evaluate(const Formula& f, const FiniteStructure& s, Assignment& a) {
  switch (f.kind) {
    case FKind::True: return true;
    case FKind::False: return false;
    case FKind::Atom: return atom_holds(f, s, a);
    case FKind::Eq: return eval_term(f.args[0], s, a) == eval_term(f.args[1], s, a);
    case FKind::Not: return !evaluate(*f.kids[0], s, a);
    case FKind::And:
      for (const auto& k : f.kids)
        if (!evaluate(*k, s, a)) return false;
      return true;
    case FKind::Or:
      for (const auto& k : f.kids)
        if (evaluate(*k, s, a)) return true;
      return false;
    case FKind::Exists:
    case FKind::Forall: {
      ensure(a, f.var);
      int saved = a[f.var];
      bool ex = f.kind == FKind::Exists;
      bool result = !ex;
      for (int d = 0; d < s.size(); ++d) {
        a[f.var] = d;
        if (evaluate(*f.kids[0], s, a) == ex) {
          result = ex;
          break;
        }
      }
      a[f.var] = saved;
      return result;
    }
  }
  return false;
}

bool evaluate(const Formula& f, const FiniteStructure& s) {
  Assignment a;
  return evaluate(f, s, a);
}

std::vector<std::vector<int>> answers(const std::vector<int>& vars, const Formula& f, const FiniteStructure& s) {
  std::vector<std::vector<int>> out;
  Assignment a;
  for (int v : vars) ensure(a, v);
  size_t n = ipow(s.size(), static_cast<int>(vars.size()));
  std::vector<int> tup(vars.size());
  for (size_t ix = 0; ix < n; ++ix) {
    size_t r = ix;
    for (int i = static_cast<int>(vars.size()) - 1; i >= 0; --i) {
      tup[i] = static_cast<int>(r % s.size());
      r /= s.size();
    }
    for (size_t i = 0; i < vars.size(); ++i) a[vars[i]] = tup[i];
    if (evaluate(f, s, a)) out.push_back(tup);
  }
  return out;
}

TV tv_not(TV v) { return v == TV::T ? TV::F : (v == TV::F ? TV::T : TV::U); }
TV tv_and(TV a, TV b) { return a < b ? a : b; }
TV tv_or(TV a, TV b) { return a < b ? b : a; }
bool leq_p(TV a, TV b) { return a == TV::U || a == b; }

TV TriTable::get(std::span<const int> tuple) const {
  size_t i = tru.index(tuple);
  return get(i);
}

bool ThreeValuedStructure::two_valued() const {
  for (const auto& p : preds) {
    if (!p) continue;
    for (size_t i = 0; i < p->tru.size(); ++i)
      if (!p->tru.get(i) && !p->fal.get(i)) return false;
  }
  return true;
}

ThreeValuedStructure ThreeValuedStructure::from(const FiniteStructure& s) {
  ThreeValuedStructure r;
  r.domain = s.domain;
  r.funcs = s.funcs;
  r.preds.resize(s.preds.size());
  for (size_t p = 0; p < s.preds.size(); ++p) {
    if (!s.preds[p]) continue;
    TriTable tt{*s.preds[p], Table(s.preds[p]->arity(), s.size())};
    for (size_t i = 0; i < tt.tru.size(); ++i) tt.fal.set(i, !tt.tru.get(i));
    r.preds[p] = std::move(tt);
  }
  return r;
}

void ThreeValuedStructure::set_unknown(int p, int arity) {
  if (p >= static_cast<int>(preds.size())) preds.resize(p + 1);
  preds[p] = TriTable{Table(arity, size()), Table(arity, size())};
}

FiniteStructure ThreeValuedStructure::to_two_valued() const {
  if (!two_valued()) throw EvalError("structure is not two-valued");
  FiniteStructure s;
  s.domain = domain;
  s.funcs = funcs;
  s.preds.resize(preds.size());
  for (size_t p = 0; p < preds.size(); ++p)
    if (preds[p]) s.preds[p] = preds[p]->tru;
  return s;
}

namespace {

int eval_term3(const Term& t, const ThreeValuedStructure& s, const Assignment& a) {
  switch (t.kind) {
    case Term::Kind::Var:
      if (t.id >= static_cast<int>(a.size()) || a[t.id] < 0) throw EvalError("unassigned variable");
      return a[t.id];
    case Term::Kind::Dom: return t.id;
    case Term::Kind::App: {
      if (t.id >= static_cast<int>(s.funcs.size()) || !s.funcs[t.id]) throw EvalError("uninterpreted function");
      size_t ix = 0;
      for (const auto& x : t.args) ix = ix * s.size() + eval_term3(x, s, a);
      return (*s.funcs[t.id])[ix];
    }
  }
  return -1;
}

}  // namespace

TV eval3(const Formula& f, const ThreeValuedStructure& s, Assignment& a) {
  switch (f.kind) {
    case FKind::True: return TV::T;
    case FKind::False: return TV::F;
    case FKind::Atom: {
      if (f.sym >= static_cast<int>(s.preds.size()) || !s.preds[f.sym]) throw EvalError("uninterpreted predicate");
      const auto& tt = *s.preds[f.sym];
      size_t ix = 0;
      for (const auto& x : f.args) ix = ix * s.size() + eval_term3(x, s, a);
      return tt.get(ix);
    }
    case FKind::Eq: return eval_term3(f.args[0], s, a) == eval_term3(f.args[1], s, a) ? TV::T : TV::F;
    case FKind::Not: return tv_not(eval3(*f.kids[0], s, a));
    case FKind::And: {
      TV r = TV::T;
      for (const auto& k : f.kids) {
        r = tv_and(r, eval3(*k, s, a));
        if (r == TV::F) break;
      }
      return r;
    }
    case FKind::Or: {
      TV r = TV::F;
      for (const auto& k : f.kids) {
        r = tv_or(r, eval3(*k, s, a));
        if (r == TV::T) break;
      }
      return r;
    }
    case FKind::Exists:
    case FKind::Forall: {
      ensure(a, f.var);
      int saved = a[f.var];
      bool ex = f.kind == FKind::Exists;
      TV r = ex ? TV::F : TV::T;
      for (int d = 0; d < s.size(); ++d) {
        a[f.var] = d;
        TV v = eval3(*f.kids[0], s, a);
        r = ex ? tv_or(r, v) : tv_and(r, v);
        if (r == (ex ? TV::T : TV::F)) break;
      }
      a[f.var] = saved;
      return r;
    }
  }
  return TV::U;
}

Precision compare_precision(const ThreeValuedStructure& a, const ThreeValuedStructure& b) {
  if (a.domain != b.domain || a.funcs != b.funcs) throw EvalError("domain mismatch in precision comparison");
  bool le = true, ge = true;
  size_t n = std::max(a.preds.size(), b.preds.size());
  for (size_t p = 0; p < n; ++p) {
    bool ha = p < a.preds.size() && a.preds[p];
    bool hb = p < b.preds.size() && b.preds[p];
    if (ha != hb) throw EvalError("domain mismatch in precision comparison");
    if (!ha) continue;
    for (size_t i = 0; i < a.preds[p]->tru.size(); ++i) {
      TV x = a.preds[p]->get(i), y = b.preds[p]->get(i);
      if (!leq_p(x, y)) le = false;
      if (!leq_p(y, x)) ge = false;
    }
  }
  if (le && ge) return Precision::Equal;
  if (le) return Precision::Less;
  if (ge) return Precision::Greater;
  return Precision::Incomparable;
}

Assignment empty_assignment(const Theory& t) { return Assignment(t.vars->size(), -1); }

}  // namespace fog
