#include "fog/transform.hpp"

#include <algorithm>

#include "fog/error.hpp"

namespace fog {

namespace {

FKind dual(FKind k) {
  switch (k) {
    case FKind::And: return FKind::Or;
    case FKind::Or: return FKind::And;
    case FKind::Exists: return FKind::Forall;
    case FKind::Forall: return FKind::Exists;
    case FKind::True: return FKind::False;
    case FKind::False: return FKind::True;
    default: return k;
  }
}

// flatten nested junctions of the same kind, drop neutral elements, detect absorbing ones
FPtr junction(FKind k, const std::vector<FPtr>& in) {
  FKind neutral = k == FKind::And ? FKind::True : FKind::False;
  FKind absorb = dual(neutral);
  std::vector<FPtr> kids;
  for (const auto& c : in) {
    if (c->kind == neutral) continue;
    if (c->kind == absorb) return c->kind == FKind::True ? mk_true() : mk_false();
    if (c->kind == k)
      kids.insert(kids.end(), c->kids.begin(), c->kids.end());
    else
      kids.push_back(c);
  }
  if (kids.empty()) return neutral == FKind::True ? mk_true() : mk_false();
  if (kids.size() == 1) return kids[0];
  return mk_junction(k, std::move(kids));
}

Term flatten_term(const Term& t, std::vector<FPtr>& defs, VarTable& vars) {
  if (t.kind != Term::Kind::App) return t;
  std::vector<Term> args;
  for (const auto& a : t.args) args.push_back(flatten_term(a, defs, vars));
  int y = vars.fresh();
  defs.push_back(mk_eq(Term::app(t.id, std::move(args)), Term::var(y)));
  return Term::var(y);
}

Term flatten_args(const Term& t, std::vector<FPtr>& defs, VarTable& vars) {
  std::vector<Term> args;
  for (const auto& a : t.args) args.push_back(flatten_term(a, defs, vars));
  return Term::app(t.id, std::move(args));
}

FPtr wrap_defs(const std::vector<FPtr>& defs, FPtr core) {
  for (auto it = defs.rbegin(); it != defs.rend(); ++it) {
    int y = (*it)->args[1].id;
    core = mk_exists(y, mk_and({*it, core}));
  }
  return core;
}

bool leaf_term(const Term& t) { return t.kind != Term::Kind::App; }

FPtr flatten_atom(const FPtr& f, VarTable& vars) {
  std::vector<FPtr> defs;
  if (f->kind == FKind::Atom) {
    if (std::all_of(f->args.begin(), f->args.end(), leaf_term)) return f;
    std::vector<Term> args;
    for (const auto& a : f->args) args.push_back(flatten_term(a, defs, vars));
    return wrap_defs(defs, mk_atom(f->sym, std::move(args)));
  }
  Term l = f->args[0], r = f->args[1];
  if (leaf_term(l) && !leaf_term(r)) std::swap(l, r);
  if (leaf_term(l)) return mk_eq(l, r);
  bool flat_l = std::all_of(l.args.begin(), l.args.end(), leaf_term);
  if (flat_l && leaf_term(r)) return mk_eq(l, r);
  Term fl = flatten_args(l, defs, vars);
  Term fr = flatten_term(r, defs, vars);
  if (!leaf_term(r)) {
    // the last definition introduced names r itself; use it as the value of l
    FPtr last = defs.back();
    defs.pop_back();
    fr = last->args[1];
    defs.push_back(last);
  }
  return wrap_defs(defs, mk_eq(fl, fr));
}

FPtr negate_flat(const FPtr& f) {
  switch (f->kind) {
    case FKind::Exists: return mk_forall(f->var, negate_flat(f->kids[0]));
    case FKind::And: {
      std::vector<FPtr> ks;
      for (const auto& k : f->kids) ks.push_back(negate_flat(k));
      return junction(FKind::Or, ks);
    }
    case FKind::Not: return f->kids[0];
    default: return mk_not(f);
  }
}

FPtr tnf(const FPtr& f, bool neg, VarTable& vars) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False: return (f->kind == FKind::True) != neg ? mk_true() : mk_false();
    case FKind::Atom:
    case FKind::Eq: {
      FPtr flat = flatten_atom(f, vars);
      return neg ? negate_flat(flat) : flat;
    }
    case FKind::Not: return tnf(f->kids[0], !neg, vars);
    case FKind::And:
    case FKind::Or: {
      std::vector<FPtr> ks;
      for (const auto& k : f->kids) ks.push_back(tnf(k, neg, vars));
      return junction(neg ? dual(f->kind) : f->kind, ks);
    }
    case FKind::Exists:
    case FKind::Forall: {
      FPtr body = tnf(f->kids[0], neg, vars);
      if (body->kind == FKind::True || body->kind == FKind::False) return body;
      if (!body->has_free(f->var)) return body;  // domains are nonempty
      return mk_quant(neg ? dual(f->kind) : f->kind, f->var, body);
    }
  }
  return f;
}

bool flat_atom(const Formula& f) {
  if (f.kind == FKind::Atom) return std::all_of(f.args.begin(), f.args.end(), leaf_term);
  if (f.kind == FKind::Eq) {
    const Term &l = f.args[0], &r = f.args[1];
    if (!leaf_term(r)) return false;
    return leaf_term(l) || std::all_of(l.args.begin(), l.args.end(), leaf_term);
  }
  return true;
}

}  // namespace

FPtr tnf_formula(const FPtr& f, VarTable& vars) { return tnf(f, false, vars); }

bool is_tnf(const Formula& f) {
  switch (f.kind) {
    case FKind::True:
    case FKind::False: return true;
    case FKind::Atom:
    case FKind::Eq: return flat_atom(f);
    case FKind::Not: return (f.kids[0]->kind == FKind::Atom || f.kids[0]->kind == FKind::Eq) && flat_atom(*f.kids[0]);
    default:
      for (const auto& k : f.kids)
        if (!is_tnf(*k)) return false;
      return true;
  }
}

Theory to_tnf(const Theory& t) {
  Theory r = t;
  for (auto& s : r.sentences) s = tnf(s, false, *r.vars);
  for (auto& d : r.defs)
    for (auto& rule : d.rules) rule.body = tnf(rule.body, false, *r.vars);
  renumber(r);
  return r;
}

FPtr push_quantifiers(const FPtr& f) {
  switch (f->kind) {
    case FKind::And:
    case FKind::Or: {
      std::vector<FPtr> ks;
      for (const auto& k : f->kids) ks.push_back(push_quantifiers(k));
      return mk_junction(f->kind, std::move(ks));
    }
    case FKind::Exists:
    case FKind::Forall: {
      FKind q = f->kind;
      FKind j = q == FKind::Forall ? FKind::Or : FKind::And;
      std::vector<int> block;
      const Formula* cur = f.get();
      FPtr body;
      while (cur->kind == q) {
        block.push_back(cur->var);
        body = cur->kids[0];
        cur = body.get();
      }
      body = push_quantifiers(body);
      std::vector<FPtr> kids;
      if (body->kind == j)
        kids = body->kids;
      else
        kids = {body};
      std::vector<int> keep;
      for (auto it = block.rbegin(); it != block.rend(); ++it) {
        int v = *it;
        std::vector<size_t> with;
        for (size_t i = 0; i < kids.size(); ++i)
          if (kids[i]->has_free(v)) with.push_back(i);
        if (with.empty()) continue;
        if (with.size() == kids.size()) {
          keep.push_back(v);
          continue;
        }
        std::vector<FPtr> grp;
        for (size_t i : with) grp.push_back(kids[i]);
        FPtr moved = mk_quant(q, v, grp.size() == 1 ? grp[0] : mk_junction(j, grp));
        std::vector<FPtr> next;
        for (size_t i = 0; i < kids.size(); ++i) {
          if (i == with[0])
            next.push_back(moved);
          else if (!std::binary_search(with.begin(), with.end(), i))
            next.push_back(kids[i]);
        }
        kids = std::move(next);
      }
      FPtr out = kids.size() == 1 ? kids[0] : mk_junction(j, kids);
      for (int v : keep) out = mk_quant(q, v, out);  // keep holds innermost first
      return out;
    }
    default: return f;
  }
}

Theory push_quantifiers(const Theory& t) {
  Theory r = t;
  for (auto& s : r.sentences) s = push_quantifiers(s);
  for (auto& d : r.defs)
    for (auto& rule : d.rules) rule.body = push_quantifiers(rule.body);
  renumber(r);
  return r;
}

namespace {

void parallel(const Formula& a, const Formula& b, int ren, Completion& c) {
  c.origin[a.occ] = b.occ;
  c.rename_ix[a.occ] = ren;
  for (size_t i = 0; i < a.kids.size(); ++i) parallel(*a.kids[i], *b.kids[i], ren, c);
}

}  // namespace

Completion completion_with_origin(const Theory& t) {
  Completion c;
  Theory& out = c.theory;
  out.voc = t.voc;
  out.vars = t.vars;
  out.sentences = t.sentences;
  struct Pending {
    size_t sentence;
    size_t arity;
    size_t nrules;
    size_t pos;
    const Rule* rule;
    int ren;
  };
  std::vector<Pending> pend;
  for (const auto& d : t.defs) {
    for (int p : d.defined()) {
      std::vector<const Rule*> rules;
      for (const auto& r : d.rules)
        if (r.head == p) rules.push_back(&r);
      int ar = t.voc.pred(p).arity;
      std::vector<int> xs;
      for (int i = 0; i < ar; ++i) xs.push_back(t.vars->fresh("_c"));
      std::vector<FPtr> bodies, copies;
      for (size_t k = 0; k < rules.size(); ++k) {
        std::unordered_map<int, int> to, back;
        for (int i = 0; i < ar; ++i) {
          to[rules[k]->vars[i]] = xs[i];
          back[xs[i]] = rules[k]->vars[i];
        }
        c.renamings.push_back(back);
        bodies.push_back(rename_free(rules[k]->body, to));
        copies.push_back(rename_free(rules[k]->body, to));
        pend.push_back({out.sentences.size(), static_cast<size_t>(ar), rules.size(), k, rules[k],
                        static_cast<int>(c.renamings.size()) - 1});
      }
      FPtr body = bodies.size() == 1 ? bodies[0] : mk_or(bodies);
      FPtr copy = copies.size() == 1 ? copies[0] : mk_or(copies);
      std::vector<Term> hargs;
      for (int x : xs) hargs.push_back(Term::var(x));
      FPtr head = mk_atom(p, hargs);
      FPtr s = mk_and({mk_or({mk_not(head), body}), mk_or({head, tnf(mk_not(copy), false, *t.vars)})});
      for (auto it = xs.rbegin(); it != xs.rend(); ++it) s = mk_forall(*it, s);
      out.sentences.push_back(s);
    }
  }
  renumber(out);
  for (size_t i = 0; i < t.sentences.size(); ++i) parallel(*out.sentences[i], *t.sentences[i], -1, c);
  for (const auto& pd : pend) {
    const Formula* n = out.sentences[pd.sentence].get();
    for (size_t i = 0; i < pd.arity; ++i) n = n->kids[0].get();
    n = n->kids[0]->kids[1].get();
    if (pd.nrules > 1) n = n->kids[pd.pos].get();
    parallel(*n, *pd.rule->body, pd.ren, c);
  }
  return c;
}

Theory completion(const Theory& t) { return completion_with_origin(t).theory; }

OccIndex::OccIndex(const Theory& t) {
  auto visit = [&](auto&& self, const Formula& f, int parent, int cix, int root, int def, int rule, bool pos) -> void {
    if (f.occ < 0) throw TheoryError("formula without occurrence id");
    if (f.occ >= static_cast<int>(info_.size())) info_.resize(f.occ + 1);
    if (info_[f.occ].f) throw TheoryError("duplicate occurrence id");
    info_[f.occ] = OccInfo{&f, parent, cix, root, def, rule, pos};
    order_.push_back(f.occ);
    for (size_t i = 0; i < f.kids.size(); ++i)
      self(self, *f.kids[i], f.occ, static_cast<int>(i), root, def, rule, f.kind == FKind::Not ? !pos : pos);
  };
  for (size_t i = 0; i < t.sentences.size(); ++i) visit(visit, *t.sentences[i], -1, -1, static_cast<int>(i), -1, -1, true);
  for (size_t d = 0; d < t.defs.size(); ++d)
    for (size_t r = 0; r < t.defs[d].rules.size(); ++r)
      visit(visit, *t.defs[d].rules[r].body, -1, -1, -1, static_cast<int>(d), static_cast<int>(r), true);
}

const OccInfo& OccIndex::at(int occ) const {
  if (!has(occ)) throw Error("unknown occurrence id " + std::to_string(occ));
  return info_[occ];
}

Polarity polarity(const Theory& t, int occ) {
  OccIndex ix(t);
  return ix.at(occ).positive ? Polarity::Positive : Polarity::Negative;
}

}  // namespace fog
