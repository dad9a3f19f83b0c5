#include "fog/bounds.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "fog/error.hpp"
#include "fog/wfs.hpp"

namespace fog {

BoundPair CMap::get(int occ) const {
  auto it = bounds.find(occ);
  if (it == bounds.end()) return {mgr->bot(), mgr->bot()};
  return it->second;
}

void CMap::set(int occ, BoundPair b) { bounds[occ] = b; }

bool CMap::trivial(int occ) const {
  auto b = get(occ);
  return mgr->is_bot(b.ct) && mgr->is_bot(b.cf);
}

bool is_ct_task(TaskKind k) {
  switch (k) {
    case TaskKind::InputCt:
    case TaskKind::Axiom:
    case TaskKind::BottomUpCt:
    case TaskKind::TopDownCt:
    case TaskKind::FunctionalCt:
    case TaskKind::CopyCt: return true;
    default: return false;
  }
}

std::shared_ptr<Manager> make_manager(const Theory& t) { return std::make_shared<Manager>(t.voc, t.vars); }

CMap trivial_cmap(const Theory& t, std::shared_ptr<Manager> mgr) {
  CMap c;
  c.mgr = mgr ? mgr : make_manager(t);
  OccIndex ix(t);
  for (int o : ix.all()) c.set(o, {c.mgr->bot(), c.mgr->bot()});
  return c;
}

namespace {

bool input_atom(const Formula& f, const Vocabulary& voc) {
  switch (f.kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Eq: return over_input(f, voc);
    case FKind::Atom: return voc.is_input_pred(f.sym) && over_input(f, voc);
    default: return false;
  }
}

// F(x̄) = y with variable arguments and y not among x̄
bool functional_shape(const Formula& f) {
  if (f.kind != FKind::Eq || f.args[0].kind != Term::Kind::App || !f.args[1].is_var()) return false;
  for (const auto& a : f.args[0].args)
    if (!a.is_var() || a.id == f.args[1].id) return false;
  return true;
}

void shape_term(const Term& t, const std::vector<int>& bound, std::string& out) {
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = std::find(bound.rbegin(), bound.rend(), t.id);
      if (it == bound.rend())
        out += "_";
      else
        out += "@" + std::to_string(it - bound.rbegin());
      break;
    }
    case Term::Kind::Dom: out += "#" + std::to_string(t.id); break;
    case Term::Kind::App:
      out += "f" + std::to_string(t.id) + "(";
      for (const auto& a : t.args) {
        shape_term(a, bound, out);
        out += ",";
      }
      out += ")";
      break;
  }
}

void shape(const Formula& f, std::vector<int>& bound, std::string& out) {
  out += static_cast<char>('A' + static_cast<int>(f.kind));
  switch (f.kind) {
    case FKind::Atom:
      out += std::to_string(f.sym) + "(";
      for (const auto& a : f.args) {
        shape_term(a, bound, out);
        out += ",";
      }
      out += ")";
      break;
    case FKind::Eq:
      out += "(";
      shape_term(f.args[0], bound, out);
      out += ",";
      shape_term(f.args[1], bound, out);
      out += ")";
      break;
    case FKind::Exists:
    case FKind::Forall:
      bound.push_back(f.var);
      out += "[";
      shape(*f.kids[0], bound, out);
      out += "]";
      bound.pop_back();
      break;
    default:
      out += "[";
      for (const auto& k : f.kids) {
        shape(*k, bound, out);
        out += ";";
      }
      out += "]";
  }
}

void pair_terms(const Term& a, const Term& b, const std::set<int>& ba, const std::set<int>& bb,
                std::vector<std::pair<int, int>>& out) {
  if (a.kind == Term::Kind::Var && b.kind == Term::Kind::Var) {
    if (!ba.count(a.id) && !bb.count(b.id)) out.push_back({a.id, b.id});
    return;
  }
  for (size_t i = 0; i < a.args.size() && i < b.args.size(); ++i) pair_terms(a.args[i], b.args[i], ba, bb, out);
}

// positional equalities between free variables of two formulas of equal shape
void pair_vars(const Formula& a, const Formula& b, std::set<int>& ba, std::set<int>& bb,
               std::vector<std::pair<int, int>>& out) {
  if (a.kind == FKind::Atom || a.kind == FKind::Eq) {
    for (size_t i = 0; i < a.args.size(); ++i) pair_terms(a.args[i], b.args[i], ba, bb, out);
    return;
  }
  bool q = a.kind == FKind::Exists || a.kind == FKind::Forall;
  bool na = false, nb = false;
  if (q) {
    na = ba.insert(a.var).second;
    nb = bb.insert(b.var).second;
  }
  for (size_t i = 0; i < a.kids.size(); ++i) pair_vars(*a.kids[i], *b.kids[i], ba, bb, out);
  if (na) ba.erase(a.var);
  if (nb) bb.erase(b.var);
}

Bdd eq_bdd(Manager& m, int x, int y) { return m.build(*mk_eq(Term::var(x), Term::var(y))); }

}  // namespace

CMap nb_cmap(const Theory& t, std::shared_ptr<Manager> mgr) {
  CMap c = trivial_cmap(t, mgr);
  OccIndex ix(t);
  for (int o : ix.all()) {
    const Formula& f = *ix.at(o).f;
    if (!input_atom(f, t.voc)) continue;
    Bdd b = c.mgr->build(f);
    c.set(o, {b, c.mgr->neg(b)});
  }
  return c;
}

std::string shape_key(const Formula& f) {
  std::vector<int> bound;
  std::string out;
  shape(f, bound, out);
  return out;
}

Bdd refinement_bound(const RefinementTask& task, const CMap& c, const Theory& t, const OccIndex& ix) {
  Manager& m = *c.mgr;
  const OccInfo& oi = ix.at(task.target);
  const Formula& f = *oi.f;
  auto close = [&](Bdd b) {
    std::vector<int> extra;
    for (int v : m.free_vars(b))
      if (!std::binary_search(f.free.begin(), f.free.end(), v)) extra.push_back(v);
    return m.exists(extra, b);
  };
  auto mismatch = [&](const char* what) { return Error(std::string("refinement task mismatch: ") + what); };
  bool ct = is_ct_task(task.kind);
  switch (task.kind) {
    case TaskKind::InputCt:
    case TaskKind::InputCf: {
      if (!over_input(f, t.voc)) throw mismatch("input refinement on a formula outside the input vocabulary");
      Bdd b = m.build(f);
      return ct ? b : m.neg(b);
    }
    case TaskKind::Axiom:
      if (oi.parent >= 0 || oi.root < 0) throw mismatch("axiom refinement on a non-sentence");
      return m.top();
    case TaskKind::BottomUpCt:
    case TaskKind::BottomUpCf: {
      auto kid = [&](size_t i) { return c.get(f.kids[i]->occ); };
      switch (f.kind) {
        case FKind::Not: return ct ? kid(0).cf : kid(0).ct;
        case FKind::Forall: return ct ? m.forall(f.var, kid(0).ct) : m.exists(f.var, kid(0).cf);
        case FKind::Exists: return ct ? m.exists(f.var, kid(0).ct) : m.forall(f.var, kid(0).cf);
        case FKind::And:
        case FKind::Or: {
          bool conj = (f.kind == FKind::And) == ct;
          Bdd r = conj ? m.top() : m.bot();
          for (size_t i = 0; i < f.kids.size(); ++i) {
            Bdd b = ct ? kid(i).ct : kid(i).cf;
            r = conj ? m.conj(r, b) : m.disj(r, b);
          }
          return r;
        }
        default: throw mismatch("bottom-up refinement on an atom");
      }
    }
    case TaskKind::TopDownCt:
    case TaskKind::TopDownCf: {
      if (oi.parent < 0) throw mismatch("top-down refinement on a root");
      const Formula& p = *ix.at(oi.parent).f;
      BoundPair pb = c.get(p.occ);
      BoundPair self = c.get(f.occ);
      switch (p.kind) {
        case FKind::Not: return ct ? pb.cf : pb.ct;
        case FKind::Forall:
        case FKind::Exists: {
          bool keep = (p.kind == FKind::Forall) == ct;
          if (keep) return ct ? pb.ct : pb.cf;
          // the only candidate left for x
          int x = p.var;
          int x2 = t.vars->fresh("_r");
          Bdd other = m.rename(ct ? self.cf : self.ct, {{x, x2}});
          Bdd all = m.forall(x2, m.disj(eq_bdd(m, x, x2), other));
          return close(m.conj(ct ? pb.ct : pb.cf, all));
        }
        case FKind::And:
        case FKind::Or: {
          bool direct = (p.kind == FKind::And) == ct;
          if (direct) return close(ct ? pb.ct : pb.cf);
          Bdd r = ct ? pb.ct : pb.cf;
          for (size_t i = 0; i < p.kids.size(); ++i) {
            if (static_cast<int>(i) == oi.child_ix) continue;
            BoundPair sb = c.get(p.kids[i]->occ);
            r = m.conj(r, ct ? sb.cf : sb.ct);
          }
          return close(r);
        }
        default: throw mismatch("parent is atomic");
      }
    }
    case TaskKind::FunctionalCt:
    case TaskKind::FunctionalCf: {
      if (!functional_shape(f)) throw mismatch("functional refinement on a non-function atom");
      int y = f.args[1].id;
      int y2 = t.vars->fresh("_r");
      BoundPair self = c.get(f.occ);
      if (ct) {
        Bdd other = m.rename(self.cf, {{y, y2}});
        return m.forall(y2, m.disj(eq_bdd(m, y, y2), other));
      }
      Bdd same = m.rename(self.ct, {{y, y2}});
      return m.exists(y2, m.conj(same, m.neg(eq_bdd(m, y, y2))));
    }
    case TaskKind::CopyCt:
    case TaskKind::CopyCf: {
      const Formula& g = *ix.at(task.source).f;
      if (shape_key(f) != shape_key(g)) throw mismatch("copy refinement between different shapes");
      std::set<int> ba, bb;
      std::vector<std::pair<int, int>> pairs;
      pair_vars(f, g, ba, bb, pairs);
      std::unordered_map<int, int> ren;
      std::vector<int> zs;
      for (int v : g.free) {
        int z = t.vars->fresh("_r");
        ren[v] = z;
        zs.push_back(z);
      }
      BoundPair sb = c.get(g.occ);
      Bdd r = m.rename(ct ? sb.ct : sb.cf, ren);
      if (m.is_bot(r)) return r;
      for (auto [x, y] : pairs) r = m.conj(r, eq_bdd(m, x, ren.at(y)));
      return close(m.exists(zs, r));
    }
  }
  return m.bot();
}

namespace {

class Refiner {
 public:
  Refiner(const Theory& t, const StopPolicy& p, std::shared_ptr<Manager> mgr)
      : t_(t), policy_(p), ix_(t), c_(trivial_cmap(t, mgr)) {
    if (p.kind == StopPolicy::Kind::Ratio && !p.structure) throw Error("ratio stop policy needs a structure");
    std::map<std::string, int> keys;
    for (int o : ix_.all()) {
      const Formula& f = *ix_.at(o).f;
      if (f.kind == FKind::True || f.kind == FKind::False) continue;
      auto [it, fresh] = keys.try_emplace(shape_key(f), static_cast<int>(buckets_.size()));
      if (fresh) buckets_.emplace_back();
      buckets_[it->second].push_back(o);
      bucket_of_[o] = it->second;
    }
  }

  CMap run(RefineStats* stats) {
    for (int o : ix_.all()) {
      const OccInfo& oi = ix_.at(o);
      if (oi.parent < 0 && oi.root >= 0) push({TaskKind::Axiom, o, -1});
      if (over_input(*oi.f, t_.voc)) {
        push({TaskKind::InputCt, o, -1});
        push({TaskKind::InputCf, o, -1});
      }
    }
    const int budget = policy_.factor * static_cast<int>(ix_.all().size());
    RefineStats st;
    Manager& m = *c_.mgr;
    while (!queue_.empty() && st.installed < budget) {
      RefinementTask task = queue_.front();
      queue_.pop_front();
      pending_.erase(task);
      ++st.steps;
      Bdd nb = refinement_bound(task, c_, t_, ix_);
      BoundPair cur = c_.get(task.target);
      bool ct = is_ct_task(task.kind);
      Bdd old = ct ? cur.ct : cur.cf;
      Bdd joined = m.simplify(m.disj(old, nb));
      if (joined == old) continue;
      if (!accept(old, joined)) {
        ++st.rejected;
        continue;
      }
      (ct ? cur.ct : cur.cf) = joined;
      c_.set(task.target, cur);
      ++st.installed;
      dependents(task.target);
    }
    st.exhausted = !queue_.empty();
    if (stats) *stats = st;
    return c_;
  }

 private:
  bool accept(Bdd old, Bdd joined) {
    Manager& m = *c_.mgr;
    switch (policy_.kind) {
      case StopPolicy::Kind::None: return true;
      case StopPolicy::Kind::NodeLimit: return m.node_count(joined) <= policy_.node_limit;
      case StopPolicy::Kind::Ratio: {
        if (m.node_count(joined) > policy_.ratio_max_nodes) return false;
        double rn = m.estimate(joined, *policy_.structure).ratio;
        double ro = m.estimate(old, *policy_.structure).ratio;
        return rn <= ro * (1 + 1e-9) + 1e-9;
      }
    }
    return true;
  }

  void push(RefinementTask task) {
    if (pending_.insert(task).second) queue_.push_back(task);
  }

  void top_down(int o) {
    push({TaskKind::TopDownCt, o, -1});
    push({TaskKind::TopDownCf, o, -1});
  }

  void dependents(int o) {
    const OccInfo& oi = ix_.at(o);
    if (oi.parent >= 0) {
      push({TaskKind::BottomUpCt, oi.parent, -1});
      push({TaskKind::BottomUpCf, oi.parent, -1});
      const Formula& p = *ix_.at(oi.parent).f;
      if (p.kind == FKind::And || p.kind == FKind::Or)
        for (const auto& k : p.kids)
          if (k->occ != o) top_down(k->occ);
      if (p.kind == FKind::Exists || p.kind == FKind::Forall) top_down(o);
    }
    for (const auto& k : oi.f->kids) top_down(k->occ);
    if (functional_shape(*oi.f)) {
      push({TaskKind::FunctionalCt, o, -1});
      push({TaskKind::FunctionalCf, o, -1});
    }
    auto it = bucket_of_.find(o);
    if (it != bucket_of_.end())
      for (int mate : buckets_[it->second])
        if (mate != o) {
          push({TaskKind::CopyCt, mate, o});
          push({TaskKind::CopyCf, mate, o});
        }
  }

  const Theory& t_;
  StopPolicy policy_;
  OccIndex ix_;
  CMap c_;
  std::vector<std::vector<int>> buckets_;
  std::unordered_map<int, int> bucket_of_;
  std::deque<RefinementTask> queue_;
  std::set<RefinementTask> pending_;
};

}  // namespace

CMap refine_direct(const Theory& t, const StopPolicy& policy, RefineStats* stats, std::shared_ptr<Manager> mgr) {
  return Refiner(t, policy, mgr).run(stats);
}

CMap refine(const Theory& t, const StopPolicy& policy, RefineStats* stats, std::shared_ptr<Manager> mgr) {
  if (!mgr) mgr = make_manager(t);
  if (t.defs.empty()) return refine_direct(t, policy, stats, mgr);
  Completion comp = completion_with_origin(t);
  CMap cc = refine_direct(comp.theory, policy, stats, mgr);
  CMap out = trivial_cmap(t, mgr);
  for (auto [oc, ot] : comp.origin) {
    BoundPair b = cc.get(oc);
    int ri = comp.rename_ix.at(oc);
    if (ri >= 0) {
      const auto& ren = comp.renamings[ri];
      b = {mgr->rename(b.ct, ren), mgr->rename(b.cf, ren)};
    }
    out.set(ot, b);
  }
  return out;
}

namespace {

// variables of an atomic occurrence in canonical position order
std::optional<std::pair<std::pair<SymKind, int>, std::vector<int>>> atom_slots(const Formula& f) {
  std::vector<int> vs;
  if (f.kind == FKind::Atom) {
    for (const auto& a : f.args) {
      if (!a.is_var()) return std::nullopt;
      vs.push_back(a.id);
    }
    return std::make_pair(std::make_pair(SymKind::Pred, f.sym), vs);
  }
  if (f.kind == FKind::Eq && f.args[0].kind == Term::Kind::App && f.args[1].is_var()) {
    for (const auto& a : f.args[0].args) {
      if (!a.is_var()) return std::nullopt;
      vs.push_back(a.id);
    }
    vs.push_back(f.args[1].id);
    return std::make_pair(std::make_pair(SymKind::Func, f.args[0].id), vs);
  }
  return std::nullopt;
}

}  // namespace

CMap copy_closure(const CMap& c, const Theory& t) {
  Manager& m = *c.mgr;
  OccIndex ix(t);
  CMap out = c;
  out.canonical.clear();
  std::map<std::pair<SymKind, int>, std::vector<std::pair<int, std::vector<int>>>> groups;
  for (int o : ix.all()) {
    auto slots = atom_slots(*ix.at(o).f);
    if (slots) groups[slots->first].push_back({o, slots->second});
  }
  for (auto& [key, occs] : groups) {
    size_t n = occs[0].second.size();
    std::vector<int> ys;
    for (size_t i = 0; i < n; ++i) ys.push_back(t.vars->fresh("_y"));
    Bdd ct = m.bot(), cf = m.bot();
    for (const auto& [o, args] : occs) {
      std::unordered_map<int, int> ren;
      std::vector<int> xs;
      for (int a : args)
        if (!ren.count(a)) {
          ren[a] = t.vars->fresh("_x");
          xs.push_back(ren[a]);
        }
      Bdd eqs = m.top();
      for (size_t j = 0; j < n; ++j) eqs = m.conj(eqs, eq_bdd(m, ys[j], ren[args[j]]));
      BoundPair b = c.get(o);
      ct = m.disj(ct, m.exists(xs, m.conj(m.rename(b.ct, ren), eqs)));
      cf = m.disj(cf, m.exists(xs, m.conj(m.rename(b.cf, ren), eqs)));
    }
    Canonical canon{ys, m.simplify(ct), m.simplify(cf)};
    for (const auto& [o, args] : occs) {
      std::unordered_map<int, int> inst;
      for (size_t j = 0; j < n; ++j) inst[ys[j]] = args[j];
      out.set(o, {m.rename(canon.ct, inst), m.rename(canon.cf, inst)});
    }
    out.canonical[key] = canon;
  }
  return out;
}

CMap to_bottom_up(const CMap& c, const Theory& t) {
  OccIndex ix(t);
  CMap out = c;
  Manager& m = *c.mgr;
  auto visit = [&](auto&& self, const Formula& f) -> void {
    for (const auto& k : f.kids) self(self, *k);
    if (f.is_atomic()) return;
    Bdd ct = m.simplify(refinement_bound({TaskKind::BottomUpCt, f.occ, -1}, out, t, ix));
    Bdd cf = m.simplify(refinement_bound({TaskKind::BottomUpCf, f.occ, -1}, out, t, ix));
    out.set(f.occ, {ct, cf});
  };
  for (const auto& s : t.sentences) visit(visit, *s);
  for (const auto& d : t.defs)
    for (const auto& r : d.rules) visit(visit, *r.body);
  return out;
}

CMap make_tolerant(const CMap& c, const Theory& t) {
  if (t.defs.empty()) return c;
  OccIndex ix(t);
  CMap out = c;
  Manager& m = *c.mgr;
  std::vector<Totality> tot;
  std::vector<std::vector<int>> defined;
  for (const auto& d : t.defs) {
    tot.push_back(classify_totality(d));
    defined.push_back(d.defined());
  }
  for (int o : ix.all()) {
    const OccInfo& oi = ix.at(o);
    if (oi.def < 0) continue;
    const auto& def = defined[oi.def];
    bool pos = false, neg = false;
    auto scan = [&](auto&& self, const Formula& f, bool p) -> void {
      if (f.kind == FKind::Atom && std::binary_search(def.begin(), def.end(), f.sym)) (p ? pos : neg) = true;
      for (const auto& k : f.kids) self(self, *k, f.kind == FKind::Not ? !p : p);
    };
    scan(scan, *oi.f, true);
    if (!pos && !neg) continue;
    BoundPair b = out.get(o);
    if (tot[oi.def] == Totality::Unknown) {
      b = {m.bot(), m.bot()};
    } else {
      if (oi.positive && pos) b.ct = m.bot();
      if (!oi.positive && neg) b.cf = m.bot();
    }
    out.set(o, b);
  }
  return out;
}

Consistency check_consistency(const CMap& c, const Theory& t, const FiniteStructure* s) {
  OccIndex ix(t);
  Manager& m = *c.mgr;
  for (int o : ix.all()) {
    BoundPair b = c.get(o);
    Bdd both = m.conj(b.ct, b.cf);
    if (m.is_bot(both)) continue;
    if (m.is_top(both)) return {Consistency::Kind::Inconsistent, o};
    if (s && m.query_one(both, *s, m.free_vars(both))) return {Consistency::Kind::IsigmaInconsistent, o};
  }
  return {};
}

Theory c_transform(const Theory& t, const CMap& c) {
  Manager& m = *c.mgr;
  auto tr = [&](auto&& self, const FPtr& f) -> FPtr {
    FPtr inner = f;
    if (!f->is_atomic()) {
      std::vector<FPtr> ks;
      for (const auto& k : f->kids) ks.push_back(self(self, k));
      inner = with_kids(*f, std::move(ks));
    }
    BoundPair b = c.get(f->occ);
    if (m.is_top(b.ct)) return mk_true();
    if (m.is_top(b.cf)) return mk_false();
    if (!m.is_bot(b.cf)) inner = mk_and({inner, m.to_formula(m.neg(b.cf))});
    if (!m.is_bot(b.ct)) inner = mk_or({inner, m.to_formula(b.ct)});
    return inner;
  };
  Theory out = t;
  for (auto& s : out.sentences) s = tr(tr, s);
  for (auto& d : out.defs)
    for (auto& r : d.rules) r.body = tr(tr, r.body);
  renumber(out);
  return out;
}

namespace {

FPtr close_all(const std::vector<int>& vars, FPtr f) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = mk_forall(*it, f);
  return f;
}

}  // namespace

Theory cbar_a(const CMap& c, const Theory& t) {
  Manager& m = *c.mgr;
  if (c.canonical.empty()) {
    OccIndex ix(t);
    for (int o : ix.all())
      if (ix.at(o).f->is_atomic() && !c.trivial(o))
        throw Error("c-map has no canonical atom bounds (copy closure missing)");
  }
  Theory out;
  out.voc = t.voc;
  out.vars = t.vars;
  for (const auto& [key, canon] : c.canonical) {
    bool input = key.first == SymKind::Pred ? t.voc.is_input_pred(key.second) : t.voc.is_input_func(key.second);
    if (input) continue;
    std::vector<Term> args;
    for (int v : canon.vars) args.push_back(Term::var(v));
    FPtr atom;
    if (key.first == SymKind::Pred) {
      atom = mk_atom(key.second, args);
    } else {
      Term y = args.back();
      args.pop_back();
      atom = mk_eq(Term::app(key.second, args), y);
    }
    if (!m.is_bot(canon.ct)) out.sentences.push_back(close_all(canon.vars, mk_or({m.to_formula(m.neg(canon.ct)), atom})));
    if (!m.is_bot(canon.cf))
      out.sentences.push_back(close_all(canon.vars, mk_or({m.to_formula(m.neg(canon.cf)), mk_not(atom)})));
  }
  renumber(out);
  return out;
}

Theory cbar(const CMap& c, const Theory& t) {
  Manager& m = *c.mgr;
  OccIndex ix(t);
  Theory out;
  out.voc = t.voc;
  out.vars = t.vars;
  for (int o : ix.all()) {
    const Formula& f = *ix.at(o).f;
    BoundPair b = c.get(o);
    FPtr copy = std::make_shared<Formula>(f);
    if (!m.is_bot(b.ct)) out.sentences.push_back(close_all(f.free, mk_or({m.to_formula(m.neg(b.ct)), copy})));
    if (!m.is_bot(b.cf)) out.sentences.push_back(close_all(f.free, mk_or({m.to_formula(m.neg(b.cf)), mk_not(copy)})));
  }
  renumber(out);
  return out;
}

std::string dump(const CMap& c, const Theory& t) {
  Manager& m = *c.mgr;
  OccIndex ix(t);
  std::string out;
  for (int o : ix.all()) {
    if (c.trivial(o)) continue;
    BoundPair b = c.get(o);
    out += "#" + std::to_string(o) + " " + to_string(t, *ix.at(o).f) + "\n";
    out += "  ct: " + to_string(t, *m.to_formula(b.ct)) + "\n";
    out += "  cf: " + to_string(t, *m.to_formula(b.cf)) + "\n";
  }
  return out;
}

}  // namespace fog
