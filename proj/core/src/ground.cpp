#include "fog/ground.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "fog/error.hpp"
#include "fog/fobdd.hpp"
#include "fog/transform.hpp"

namespace fog {

int AtomTable::intern(const GAtom& a) {
  auto [it, fresh] = ix_.emplace(a, static_cast<int>(atoms_.size()));
  if (fresh) atoms_.push_back(a);
  return it->second;
}

int AtomTable::find(const GAtom& a) const {
  auto it = ix_.find(a);
  return it == ix_.end() ? -1 : it->second;
}

int GroundTheory::num_rules() const {
  int n = 0;
  for (const auto& d : defs) n += static_cast<int>(d.rules.size());
  return n;
}

namespace {

// Three-valued consequences of assumed literals under the ground definitions: a defined
// atom is true once some rule body is true, false once all are false (or it heads none).
class Implied {
 public:
  Implied(const GroundTheory& g, const std::set<int>& defined) : g_(g), defined_(defined) {
    for (const auto& d : g.defs)
      for (const auto& r : d.rules) {
        rules_[r.head].push_back(&r);
        std::vector<int> body;
        collect(r.body, body);
        for (int a : body) watch_[a].push_back(r.head);
      }
    v_.assign(g.atoms.size(), GTruth::U);
    std::vector<int> queue;
    for (int id = 0; id < g.atoms.size(); ++id) {
      if (is_defined(id) && !rules_.count(id)) set(id, GTruth::F, queue);
      if (rules_.count(id)) queue.push_back(id);
    }
    run(queue);
  }

  static void collect(const GNode& n, std::vector<int>& out) {
    if (n.kind == GNode::Kind::Lit) out.push_back(n.atom);
    for (const auto& k : n.kids) collect(k, out);
  }

  GTruth value(int id) const { return id < static_cast<int>(v_.size()) ? v_[id] : GTruth::U; }

  void assume(int id, bool truth) {
    if (id >= static_cast<int>(v_.size())) v_.resize(id + 1, GTruth::U);
    if (v_[id] != GTruth::U) return;
    std::vector<int> queue;
    set(id, truth ? GTruth::T : GTruth::F, queue);
    run(queue);
  }

 private:
  bool is_defined(int id) const {
    const GAtom& a = g_.atoms.at(id);
    return a.kind == GAtom::Kind::Pred && defined_.count(a.sym) > 0;
  }

  void set(int id, GTruth t, std::vector<int>& queue) {
    v_[id] = t;
    auto it = watch_.find(id);
    if (it != watch_.end()) queue.insert(queue.end(), it->second.begin(), it->second.end());
  }

  void run(std::vector<int>& queue) {
    while (!queue.empty()) {
      int h = queue.back();
      queue.pop_back();
      if (v_[h] != GTruth::U) continue;
      GTruth best = GTruth::F;
      for (const GRule* r : rules_[h]) best = std::max(best, eval_ground(r->body, v_));
      if (best != GTruth::U) set(h, best, queue);
    }
  }

  const GroundTheory& g_;
  const std::set<int>& defined_;
  std::unordered_map<int, std::vector<const GRule*>> rules_;
  std::unordered_map<int, std::vector<int>> watch_;
  std::vector<GTruth> v_;
};

enum class Source { Full, Reduced, Bounds };

// conjunction / disjunction under construction
struct Junction {
  explicit Junction(bool c) : conj(c) {}
  bool conj;
  bool absorbed = false;  // hit the absorbing element
  std::vector<GNode> items;

  void add(GNode n) {
    if (absorbed) return;
    bool neutral = conj ? n.kind == GNode::Kind::True : n.kind == GNode::Kind::False;
    bool absorbing = conj ? n.kind == GNode::Kind::False : n.kind == GNode::Kind::True;
    if (neutral) return;
    if (absorbing) {
      absorbed = true;
      items.clear();
      return;
    }
    auto same = conj ? GNode::Kind::And : GNode::Kind::Or;
    if (n.kind == same) {
      for (auto& k : n.kids) items.push_back(std::move(k));
    } else {
      items.push_back(std::move(n));
    }
  }

  GNode done() {
    if (absorbed) return conj ? GNode::bot() : GNode::top();
    if (items.empty()) return conj ? GNode::top() : GNode::bot();
    if (items.size() == 1) return std::move(items[0]);
    return {conj ? GNode::Kind::And : GNode::Kind::Or, -1, false, std::move(items)};
  }
};

class Grounder {
 public:
  Grounder(const Theory& t, const FiniteStructure& s, const CMap* c, Source src, GroundTheory& g)
      : t_(t), s_(s), c_(c), src_(src), g_(g) {
    asg_.assign(t.vars->size() + 1, -1);
    if (c_) m_ = c_->mgr.get();
  }

  void run() {
    g_.voc = t_.voc;
    g_.domain = s_.domain;
    if (src_ == Source::Bounds) {
      for (const auto& f : t_.sentences)
        if (m_->is_top(bounds(*f).cf)) {
          g_.sentences = {GNode::bot()};
          return;
        }
    }
    for (size_t i : def_order()) ground_def(t_.defs[i]);
    for (const auto& f : t_.sentences) {
      if (src_ == Source::Bounds && m_->is_top(bounds(*f).ct)) continue;
      GNode n = conj(*f);
      if (n.kind == GNode::Kind::True) continue;
      if (n.kind == GNode::Kind::And) {
        for (auto& k : n.kids) g_.sentences.push_back(std::move(k));
      } else {
        g_.sentences.push_back(std::move(n));
      }
    }
    if (src_ == Source::Bounds) cbar_units();
  }

 private:
  // bounds of an occurrence; a negated atom also takes the atom's bounds
  BoundPair bounds(const Formula& f) {
    auto it = joined_.find(f.occ);
    if (it != joined_.end()) return it->second;
    BoundPair b = c_->get(f.occ);
    if (f.kind == FKind::Not && f.kids[0]->is_atomic()) {
      BoundPair a = c_->get(f.kids[0]->occ);
      b = {m_->disj(b.ct, a.cf), m_->disj(b.cf, a.ct)};
    }
    joined_[f.occ] = b;
    return b;
  }

  // does the ct (or cf) bound of f hold under the current assignment?
  bool holds(const Formula& f, bool ct) {
    switch (src_) {
      case Source::Full: return false;
      case Source::Reduced:
        if (!f.is_literal() || !over_input(f, t_.voc)) return false;
        return evaluate(f, s_, asg_) == ct;
      case Source::Bounds: {
        BoundPair b = bounds(f);
        Bdd x = ct ? b.ct : b.cf;
        if (m_->is_bot(x)) return false;
        if (m_->is_top(x)) return true;
        return m_->eval(x, s_, asg_);
      }
    }
    return false;
  }

  std::vector<int> targets(const Formula& f) const {
    std::vector<int> out;
    for (int v : f.free)
      if (asg_[v] < 0) out.push_back(v);
    return out;
  }

  // Calls body for every tuple over xs (lexicographic) whose `skip` bound does not
  // hold; stops early when body returns false.
  template <class F>
  void for_candidates(const Formula& f, bool skip_ct, const std::vector<int>& xs, F&& body) {
    if (src_ == Source::Bounds && !xs.empty()) {
      BoundPair b = bounds(f);
      Bdd skip = skip_ct ? b.ct : b.cf;
      if (m_->is_top(skip)) return;
      if (!m_->is_bot(skip) && use_query(f, skip_ct, skip)) {
        Bdd want = m_->neg(skip);
        for (const auto& tup : m_->query(want, s_, xs, asg_)) {
          for (size_t i = 0; i < xs.size(); ++i) asg_[xs[i]] = tup[i];
          ++g_.instantiations;
          bool go = body();
          if (!go) break;
        }
        for (int x : xs) asg_[x] = -1;
        return;
      }
    }
    int n = s_.size();
    std::vector<int> tup(xs.size(), 0);
    for (;;) {
      for (size_t i = 0; i < xs.size(); ++i) asg_[xs[i]] = tup[i];
      if (!holds(f, skip_ct)) {
        ++g_.instantiations;
        if (!body()) break;
      }
      size_t i = xs.size();
      while (i > 0 && ++tup[i - 1] == n) tup[--i] = 0;
      if (i == 0) break;
    }
    for (int x : xs) asg_[x] = -1;
  }

  bool use_query(const Formula& f, bool skip_ct, Bdd skip) {
    auto key = std::make_pair(f.occ, skip_ct);
    auto it = use_query_.find(key);
    if (it != use_query_.end()) return it->second;
    std::vector<int> bound;
    for (int v : f.free)
      if (asg_[v] >= 0) bound.push_back(v);
    Estimate e = m_->estimate(m_->neg(skip), s_, bound);
    double all = static_cast<double>(ipow(s_.size(), static_cast<int>(targets(f).size())));
    bool q = e.reward <= all / 2;
    use_query_[key] = q;
    return q;
  }

  int value_of(const Term& tm) const {
    if (tm.kind == Term::Kind::Var) return asg_[tm.id];
    if (tm.kind == Term::Kind::Dom) return tm.id;
    throw Error("nested term in flattened atom");
  }

  GNode literal(const Formula& f) {
    bool neg = f.kind == FKind::Not;
    const Formula& a = neg ? *f.kids[0] : f;
    if (a.kind == FKind::True) return neg ? GNode::bot() : GNode::top();
    if (a.kind == FKind::False) return neg ? GNode::top() : GNode::bot();
    if (src_ == Source::Reduced && over_input(a, t_.voc))
      return evaluate(a, s_, asg_) != neg ? GNode::top() : GNode::bot();
    GAtom atom;
    if (a.kind == FKind::Atom) {
      atom.kind = GAtom::Kind::Pred;
      atom.sym = a.sym;
      for (const auto& tm : a.args) atom.args.push_back(value_of(tm));
    } else {
      const Term* app = nullptr;
      const Term* other = nullptr;
      if (a.args[0].kind == Term::Kind::App) app = &a.args[0], other = &a.args[1];
      else if (a.args[1].kind == Term::Kind::App) app = &a.args[1], other = &a.args[0];
      if (app) {
        atom.kind = GAtom::Kind::Func;
        atom.sym = app->id;
        for (const auto& tm : app->args) atom.args.push_back(value_of(tm));
        atom.args.push_back(value_of(*other));
      } else {
        atom.kind = GAtom::Kind::Eq;
        atom.args = {value_of(a.args[0]), value_of(a.args[1])};
      }
    }
    return GNode::lit(g_.atoms.intern(atom), neg);
  }

  // grounding of ∀x̄ f, x̄ the unassigned free variables of f
  GNode conj(const Formula& f) {
    Junction c(true);
    if (f.kind == FKind::Forall) return conj(*f.kids[0]);
    if (f.kind == FKind::And) {
      for (const auto& k : f.kids) {
        c.add(conj(*k));
        if (c.absorbed) break;
      }
      return c.done();
    }
    bool lit = f.is_literal();
    for_candidates(f, true, targets(f), [&] {
      if (holds(f, false)) {
        c.add(GNode::bot());
        return false;
      }
      if (lit) {
        ++g_.instantiations;
        c.add(literal(f));
      } else {
        c.add(disj(f));
      }
      return !c.absorbed;
    });
    return c.done();
  }

  // grounding of ∃x̄ f
  GNode disj(const Formula& f) {
    Junction d(false);
    if (f.kind == FKind::Exists) return disj(*f.kids[0]);
    if (f.kind == FKind::Or) {
      for (const auto& k : f.kids) {
        d.add(disj(*k));
        if (d.absorbed) break;
      }
      return d.done();
    }
    bool lit = f.is_literal();
    for_candidates(f, false, targets(f), [&] {
      if (holds(f, true)) {
        d.add(GNode::top());
        return false;
      }
      if (lit) {
        ++g_.instantiations;
        d.add(literal(f));
      } else {
        d.add(conj(f));
      }
      return !d.absorbed;
    });
    return d.done();
  }

  std::vector<size_t> def_order() const {
    size_t n = t_.defs.size();
    std::vector<std::vector<int>> defined(n);
    for (size_t i = 0; i < n; ++i) defined[i] = t_.defs[i].defined();
    std::vector<std::set<size_t>> deps(n);
    for (size_t i = 0; i < n; ++i) {
      std::vector<int> used;
      for (const auto& r : t_.defs[i].rules) collect_preds(*r.body, used);
      for (size_t j = 0; j < n; ++j)
        if (j != i)
          for (int p : used)
            if (std::binary_search(defined[j].begin(), defined[j].end(), p)) deps[i].insert(j);
    }
    std::vector<size_t> order;
    std::vector<bool> done(n, false);
    while (order.size() < n) {
      bool progress = false;
      for (size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        bool ready = true;
        for (size_t j : deps[i]) ready = ready && done[j];
        if (!ready) continue;
        done[i] = progress = true;
        order.push_back(i);
        break;
      }
      if (!progress)  // mutually dependent definitions: keep theory order
        for (size_t i = 0; i < n; ++i)
          if (!done[i]) {
            done[i] = true;
            order.push_back(i);
            break;
          }
    }
    return order;
  }

  void ground_def(const Definition& d) {
    GDefinition gd;
    gd.preds = d.defined();
    for (const auto& r : d.rules) {
      const Formula& body = *r.body;
      std::vector<int> zs;
      for (int v : r.vars)
        if (!body.has_free(v)) zs.push_back(v);
      for_candidates(body, false, targets(body), [&] {
        GNode gb = holds(body, true) ? GNode::top() : conj(body);
        if (gb.kind == GNode::Kind::False) return true;
        std::vector<int> tup(zs.size(), 0);
        for (;;) {
          for (size_t i = 0; i < zs.size(); ++i) asg_[zs[i]] = tup[i];
          GAtom h{GAtom::Kind::Pred, r.head, {}};
          for (int v : r.vars) h.args.push_back(asg_[v]);
          gd.rules.push_back({g_.atoms.intern(h), gb});
          size_t i = zs.size();
          while (i > 0 && ++tup[i - 1] == s_.size()) tup[--i] = 0;
          if (i == 0) break;
        }
        for (int z : zs) asg_[z] = -1;
        return true;
      });
    }
    g_.defs.push_back(std::move(gd));
  }

  void cbar_units() {
    if (c_->canonical.empty()) {
      OccIndex ix(t_);
      for (int o : ix.all()) {
        const Formula& f = *ix.at(o).f;
        if (f.is_atomic() && !over_input(f, t_.voc) && !c_->trivial(o))
          throw Error("c-map has no canonical atom bounds (copy closure missing)");
      }
    }
    // Units already implied by earlier units and the ground definitions are skipped.
    std::set<int> defined;
    for (const auto& d : g_.defs) defined.insert(d.preds.begin(), d.preds.end());
    Implied known(g_, defined);
    for (const auto& n : g_.sentences)
      if (n.kind == GNode::Kind::Lit) known.assume(n.atom, !n.neg);
    struct Unit {
      GAtom atom;
      bool ct;
    };
    std::vector<Unit> units;
    std::set<std::pair<GAtom, bool>> seen;
    for (const auto& [key, canon] : c_->canonical) {
      bool pred = key.first == SymKind::Pred;
      if (pred ? t_.voc.is_input_pred(key.second) : t_.voc.is_input_func(key.second)) continue;
      for (bool ct : {true, false}) {
        Bdd b = ct ? canon.ct : canon.cf;
        if (m_->is_bot(b)) continue;
        Assignment a(std::max<size_t>(asg_.size(), t_.vars->size() + 1), -1);
        for (const auto& tup : m_->query(b, s_, canon.vars, a)) {
          GAtom atom{pred ? GAtom::Kind::Pred : GAtom::Kind::Func, key.second, tup};
          if (seen.insert({atom, ct}).second) units.push_back({atom, ct});
        }
      }
    }
    // Units on symbols lower in the definitions' dependency order go first, so that the
    // rules above can absorb the rest.
    std::map<int, int> rank;
    for (int round = 0; round <= static_cast<int>(defined.size()); ++round)
      for (const auto& d : g_.defs)
        for (const auto& r : d.rules) {
          int h = g_.atoms.at(r.head).sym;
          std::vector<int> body;
          Implied::collect(r.body, body);
          for (int a : body) {
            const GAtom& b = g_.atoms.at(a);
            if (b.kind != GAtom::Kind::Pred || !defined.count(b.sym) || b.sym == h) continue;
            rank[h] = std::min(std::max(rank[h], rank[b.sym] + 1), static_cast<int>(defined.size()));
          }
        }
    auto level = [&](const Unit& u) {
      if (u.atom.kind != GAtom::Kind::Pred || !defined.count(u.atom.sym)) return -1;
      return rank[u.atom.sym];
    };
    std::stable_sort(units.begin(), units.end(), [&](const Unit& a, const Unit& b) { return level(a) < level(b); });
    // a function value fixed by a ct unit makes the cf units on the same arguments redundant
    std::set<GAtom> fixed;
    for (const auto& u : units)
      if (u.ct && u.atom.kind == GAtom::Kind::Func) {
        GAtom k = u.atom;
        k.args.pop_back();
        fixed.insert(k);
      }
    for (const auto& u : units) {
      if (!u.ct && u.atom.kind == GAtom::Kind::Func) {
        GAtom k = u.atom;
        k.args.pop_back();
        if (fixed.count(k)) continue;
      }
      int id = g_.atoms.find(u.atom);
      if (id < 0) {
        // an atom without ground occurrences; a defined one is false
        if (!u.ct && u.atom.kind == GAtom::Kind::Pred && defined.count(u.atom.sym)) continue;
        id = g_.atoms.intern(u.atom);
      }
      if (known.value(id) == (u.ct ? GTruth::T : GTruth::F)) continue;
      g_.sentences.push_back(GNode::lit(id, !u.ct));
      known.assume(id, u.ct);
    }
  }

  const Theory& t_;
  const FiniteStructure& s_;
  const CMap* c_;
  Source src_;
  GroundTheory& g_;
  Manager* m_ = nullptr;
  Assignment asg_;
  std::unordered_map<int, BoundPair> joined_;
  std::map<std::pair<int, bool>, bool> use_query_;
};

}  // namespace

GroundTheory ground_full(const Theory& t, const FiniteStructure& s) {
  GroundTheory g;
  Grounder(t, s, nullptr, Source::Full, g).run();
  return g;
}

GroundTheory ground_reduced(const Theory& t, const FiniteStructure& s) {
  GroundTheory g;
  Grounder(t, s, nullptr, Source::Reduced, g).run();
  return g;
}

GroundTheory ground_with_bounds(const Theory& t, const FiniteStructure& s, const CMap& c) {
  auto cons = check_consistency(c, t, &s);
  if (cons.kind != Consistency::Kind::Consistent)
    throw Error("c-map is inconsistent at occurrence " + std::to_string(cons.occ));
  GroundTheory g;
  Grounder(t, s, &c, Source::Bounds, g).run();
  return g;
}

namespace {

void count_lits(const GNode& n, long long& c) {
  if (n.kind == GNode::Kind::Lit) ++c;
  for (const auto& k : n.kids) count_lits(k, c);
}

std::string node_key(const GNode& n) {
  switch (n.kind) {
    case GNode::Kind::True: return "T";
    case GNode::Kind::False: return "F";
    case GNode::Kind::Lit: return (n.neg ? "-" : "+") + std::to_string(n.atom);
    default: break;
  }
  std::string s = n.kind == GNode::Kind::And ? "&(" : n.kind == GNode::Kind::Or ? "|(" : "=(";
  for (const auto& k : n.kids) s += node_key(k) + ",";
  return s + ")";
}

bool junction(const GNode& n) { return n.kind == GNode::Kind::And || n.kind == GNode::Kind::Or; }

void count_shared(const GNode& n, std::map<std::string, int>& counts, bool top) {
  if (junction(n) && !top) ++counts[node_key(n)];
  for (const auto& k : n.kids) count_shared(k, counts, false);
}

}  // namespace

GroundTheory apply_sharing(const GroundTheory& g) {
  std::map<std::string, int> counts;
  for (const auto& s : g.sentences) count_shared(s, counts, true);
  GroundTheory out = g;
  out.sentences.clear();
  std::map<std::string, int> aux;  // key -> aux atom
  std::vector<GNode> defs;
  std::function<GNode(const GNode&, bool)> rw = [&](const GNode& n, bool top) -> GNode {
    if (!junction(n)) return n;
    std::string key;
    if (!top) {
      key = node_key(n);
      auto it = aux.find(key);
      if (it != aux.end()) return GNode::lit(it->second);
    }
    GNode r = n;
    for (auto& k : r.kids) k = rw(k, false);
    if (top || counts[key] < 2) return r;
    int id = out.atoms.intern({GAtom::Kind::Aux, out.aux_count++, {}});
    aux[key] = id;
    defs.push_back({GNode::Kind::Equiv, -1, false, {GNode::lit(id), std::move(r)}});
    return GNode::lit(id);
  };
  for (const auto& s : g.sentences) out.sentences.push_back(rw(s, true));
  for (auto& d : defs) out.sentences.push_back(std::move(d));
  return out;
}

long long grounding_size(const GroundTheory& g) {
  long long c = 0;
  for (const auto& s : g.sentences) count_lits(s, c);
  for (const auto& d : g.defs)
    for (const auto& r : d.rules) {
      count_lits(r.body, c);
      ++c;
    }
  return c;
}

std::string atom_string(const GroundTheory& g, int atom) {
  const GAtom& a = g.atoms.at(atom);
  auto args = [&](size_t n) {
    if (n == 0) return std::string();
    std::string s = "(";
    for (size_t i = 0; i < n; ++i) s += (i ? "," : "") + g.domain.at(a.args[i]);
    return s + ")";
  };
  switch (a.kind) {
    case GAtom::Kind::Pred: return g.voc.pred(a.sym).name + args(a.args.size());
    case GAtom::Kind::Func:
      return g.voc.func(a.sym).name + args(a.args.size() - 1) + " = " + g.domain.at(a.args.back());
    case GAtom::Kind::Eq: return g.domain.at(a.args[0]) + " = " + g.domain.at(a.args[1]);
    case GAtom::Kind::Aux: return "_s" + std::to_string(a.sym);
  }
  return "?";
}

std::string to_string(const GroundTheory& g, const GNode& n) {
  switch (n.kind) {
    case GNode::Kind::True: return "true";
    case GNode::Kind::False: return "false";
    case GNode::Kind::Lit: return (n.neg ? "~" : "") + atom_string(g, n.atom);
    default: break;
  }
  const char* op = n.kind == GNode::Kind::And ? " & " : n.kind == GNode::Kind::Or ? " | " : " <=> ";
  std::string s;
  for (size_t i = 0; i < n.kids.size(); ++i) {
    const GNode& k = n.kids[i];
    bool wrap = k.kind != GNode::Kind::Lit && k.kind != GNode::Kind::True && k.kind != GNode::Kind::False;
    if (i) s += op;
    s += wrap ? "(" + to_string(g, k) + ")" : to_string(g, k);
  }
  return s;
}

std::string write_fog(const GroundTheory& g) {
  std::string out = "fog 1\n";
  for (const auto& s : g.sentences) out += to_string(g, s) + ".\n";
  for (const auto& d : g.defs) {
    out += "define {\n";
    for (const auto& r : d.rules) out += atom_string(g, r.head) + " <- " + to_string(g, r.body) + ".\n";
    out += "}\n";
  }
  return out;
}

namespace {

class FogReader {
 public:
  FogReader(const std::string& text, GroundTheory& g) : text_(text), g_(g) {
    for (int i = 0; i < g.voc.num_preds(); ++i) preds_[g.voc.pred(i).name] = i;
    for (int i = 0; i < g.voc.num_funcs(); ++i) funcs_[g.voc.func(i).name] = i;
    for (size_t i = 0; i < g.domain.size(); ++i) dom_[g.domain[i]] = static_cast<int>(i);
    next();
  }

  void read() {
    if (tok_ != "fog") fail("missing header");
    next();
    if (tok_ != "1") fail("unsupported version");
    next();
    while (!tok_.empty()) {
      if (tok_ == "define") {
        next();
        expect("{");
        GDefinition d;
        std::set<int> preds;
        while (tok_ != "}") {
          int head = atom();
          if (g_.atoms.at(head).kind != GAtom::Kind::Pred) fail("rule head must be a predicate atom");
          preds.insert(g_.atoms.at(head).sym);
          expect("<-");
          GNode body = formula();
          expect(".");
          d.rules.push_back({head, std::move(body)});
        }
        next();
        d.preds.assign(preds.begin(), preds.end());
        g_.defs.push_back(std::move(d));
      } else {
        g_.sentences.push_back(formula());
        expect(".");
      }
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, 0); }

  void next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ >= text_.size()) {
      tok_.clear();
      return;
    }
    for (const char* op : {"<=>", "<-"})
      if (text_.compare(pos_, std::string(op).size(), op) == 0) {
        tok_ = op;
        pos_ += tok_.size();
        return;
      }
    char c = text_[pos_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
      size_t b = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
        ++pos_;
      tok_ = text_.substr(b, pos_ - b);
      return;
    }
    tok_ = std::string(1, c);
    ++pos_;
  }

  void expect(const std::string& t) {
    if (tok_ != t) fail("expected '" + t + "' near '" + tok_ + "'");
    next();
  }

  int element() {
    auto it = dom_.find(tok_);
    if (it == dom_.end()) fail("unknown domain element '" + tok_ + "'");
    next();
    return it->second;
  }

  std::vector<int> args() {
    std::vector<int> out;
    if (tok_ != "(") return out;
    next();
    for (;;) {
      out.push_back(element());
      if (tok_ == ")") break;
      expect(",");
    }
    next();
    return out;
  }

  int atom() {
    std::string name = tok_;
    if (auto p = preds_.find(name); p != preds_.end()) {
      next();
      return g_.atoms.intern({GAtom::Kind::Pred, p->second, args()});
    }
    if (auto f = funcs_.find(name); f != funcs_.end()) {
      next();
      auto a = args();
      expect("=");
      a.push_back(element());
      return g_.atoms.intern({GAtom::Kind::Func, f->second, a});
    }
    if (name.size() > 2 && name.compare(0, 2, "_s") == 0) {
      next();
      int n = std::stoi(name.substr(2));
      g_.aux_count = std::max(g_.aux_count, n + 1);
      return g_.atoms.intern({GAtom::Kind::Aux, n, {}});
    }
    int a = element();
    expect("=");
    int b = element();
    return g_.atoms.intern({GAtom::Kind::Eq, -1, {a, b}});
  }

  GNode formula() {
    GNode l = binary(0);
    if (tok_ != "<=>") return l;
    next();
    GNode r = binary(0);
    return {GNode::Kind::Equiv, -1, false, {std::move(l), std::move(r)}};
  }

  // level 0: disjunction, 1: conjunction
  GNode binary(int level) {
    std::vector<GNode> kids;
    kids.push_back(level == 0 ? binary(1) : unary());
    const char* op = level == 0 ? "|" : "&";
    while (tok_ == op) {
      next();
      kids.push_back(level == 0 ? binary(1) : unary());
    }
    if (kids.size() == 1) return std::move(kids[0]);
    return {level == 0 ? GNode::Kind::Or : GNode::Kind::And, -1, false, std::move(kids)};
  }

  GNode unary() {
    if (tok_ == "~") {
      next();
      GNode n = unary();
      if (n.kind != GNode::Kind::Lit) fail("negation of a non-atom");
      n.neg = !n.neg;
      return n;
    }
    if (tok_ == "(") {
      next();
      GNode n = formula();
      expect(")");
      return n;
    }
    if (tok_ == "true") {
      next();
      return GNode::top();
    }
    if (tok_ == "false") {
      next();
      return GNode::bot();
    }
    return GNode::lit(atom());
  }

  const std::string& text_;
  GroundTheory& g_;
  size_t pos_ = 0;
  int line_ = 1;
  std::string tok_;
  std::unordered_map<std::string, int> preds_, funcs_, dom_;
};

}  // namespace

GroundTheory read_fog(const std::string& text, const Vocabulary& voc, const std::vector<std::string>& domain) {
  GroundTheory g;
  g.voc = voc;
  g.domain = domain;
  FogReader(text, g).read();
  return g;
}

std::string prop_name(const GroundTheory& g, int atom) {
  const GAtom& a = g.atoms.at(atom);
  std::string s;
  switch (a.kind) {
    case GAtom::Kind::Pred: s = g.voc.pred(a.sym).name; break;
    case GAtom::Kind::Func: s = g.voc.func(a.sym).name; break;
    case GAtom::Kind::Eq: s = "_eq"; break;
    case GAtom::Kind::Aux: return "_s" + std::to_string(a.sym);
  }
  for (int d : a.args) s += "_" + g.domain.at(d);
  return s;
}

namespace {

class Clausifier {
 public:
  Clausifier(const GroundTheory& g, const FiniteStructure& s, PropTheory& p) : g_(g), s_(s), p_(p) {}

  // input atoms and equality by value, the rest as propositional variables
  GNode substitute(const GNode& n) {
    if (n.kind == GNode::Kind::Lit) {
      const GAtom& a = g_.atoms.at(n.atom);
      std::optional<bool> v;
      if (a.kind == GAtom::Kind::Eq) v = a.args[0] == a.args[1];
      if (a.kind == GAtom::Kind::Pred && g_.voc.is_input_pred(a.sym)) v = s_.holds(a.sym, a.args);
      if (a.kind == GAtom::Kind::Func && g_.voc.is_input_func(a.sym))
        v = s_.apply(a.sym, std::span<const int>(a.args.data(), a.args.size() - 1)) == a.args.back();
      if (!v) return n;
      return *v != n.neg ? GNode::top() : GNode::bot();
    }
    if (!junction(n) && n.kind != GNode::Kind::Equiv) return n;
    if (n.kind == GNode::Kind::Equiv) {
      GNode a = substitute(n.kids[0]), b = substitute(n.kids[1]);
      bool ca = a.kind == GNode::Kind::True || a.kind == GNode::Kind::False;
      bool cb = b.kind == GNode::Kind::True || b.kind == GNode::Kind::False;
      if (ca && cb) return a.kind == b.kind ? GNode::top() : GNode::bot();
      return {GNode::Kind::Equiv, -1, false, {std::move(a), std::move(b)}};
    }
    Junction j(n.kind == GNode::Kind::And);
    for (const auto& k : n.kids) {
      j.add(substitute(k));
      if (j.absorbed) break;
    }
    return j.done();
  }

  int var(int atom) {
    auto it = vars_.find(atom);
    if (it != vars_.end()) return it->second;
    p_.names.push_back(prop_name(g_, atom));
    const GAtom& a = g_.atoms.at(atom);
    p_.labels.push_back(a.kind == GAtom::Kind::Func ? label_func(a) : atom_string(g_, atom));
    int v = static_cast<int>(p_.names.size());
    vars_[atom] = v;
    return v;
  }

  int fresh() {
    p_.names.emplace_back();
    p_.labels.emplace_back();
    return static_cast<int>(p_.names.size());
  }

  int lit(const GNode& n) {
    switch (n.kind) {
      case GNode::Kind::Lit: return n.neg ? -var(n.atom) : var(n.atom);
      case GNode::Kind::True: return truth();
      case GNode::Kind::False: return -truth();
      default: break;
    }
    int t = fresh();
    if (n.kind == GNode::Kind::Equiv) {
      int a = lit(n.kids[0]), b = lit(n.kids[1]);
      p_.clauses.push_back({-t, -a, b});
      p_.clauses.push_back({-t, a, -b});
      p_.clauses.push_back({t, a, b});
      p_.clauses.push_back({t, -a, -b});
      return t;
    }
    std::vector<int> ks;
    for (const auto& k : n.kids) ks.push_back(lit(k));
    bool conj = n.kind == GNode::Kind::And;
    std::vector<int> big{conj ? t : -t};
    for (int k : ks) {
      p_.clauses.push_back(conj ? std::vector<int>{-t, k} : std::vector<int>{t, -k});
      big.push_back(conj ? -k : k);
    }
    p_.clauses.push_back(big);
    return t;
  }

  void assert_node(const GNode& n) {
    switch (n.kind) {
      case GNode::Kind::True: return;
      case GNode::Kind::False: p_.clauses.push_back({-truth()}); return;
      case GNode::Kind::Lit: p_.clauses.push_back({lit(n)}); return;
      case GNode::Kind::And:
        for (const auto& k : n.kids) assert_node(k);
        return;
      case GNode::Kind::Or: {
        std::vector<int> c;
        for (const auto& k : n.kids) c.push_back(lit(k));
        p_.clauses.push_back(c);
        return;
      }
      case GNode::Kind::Equiv: {
        int a = lit(n.kids[0]), b = lit(n.kids[1]);
        p_.clauses.push_back({-a, b});
        p_.clauses.push_back({a, -b});
        return;
      }
    }
  }

  // exactly one value per argument tuple of every non-input function
  void functional() {
    int n = s_.size();
    for (int f = 0; f < g_.voc.num_funcs(); ++f) {
      if (g_.voc.is_input_func(f)) continue;
      int ar = g_.voc.func(f).arity;
      std::vector<int> tup(ar, 0);
      for (;;) {
        std::vector<int> vs;
        for (int d = 0; d < n; ++d) {
          GAtom a{GAtom::Kind::Func, f, tup};
          a.args.push_back(d);
          vs.push_back(var_for(a));
        }
        p_.clauses.push_back(vs);
        for (size_t i = 0; i < vs.size(); ++i)
          for (size_t j = i + 1; j < vs.size(); ++j) p_.clauses.push_back({-vs[i], -vs[j]});
        int i = ar;
        while (i > 0 && ++tup[i - 1] == n) tup[--i] = 0;
        if (i == 0) break;
      }
    }
  }

 private:
  int truth() {
    if (!truth_) {
      truth_ = fresh();
      p_.clauses.push_back({truth_});
    }
    return truth_;
  }

  int var_for(const GAtom& a) {
    int id = g_.atoms.find(a);
    if (id >= 0) return var(id);
    auto it = extra_.find(a);
    if (it != extra_.end()) return it->second;
    std::string name = g_.voc.func(a.sym).name;
    for (int d : a.args) name += "_" + g_.domain.at(d);
    p_.names.push_back(name);
    p_.labels.push_back(label_func(a));
    int v = static_cast<int>(p_.names.size());
    extra_[a] = v;
    return v;
  }

  std::string label_func(const GAtom& a) const {
    std::string s = g_.voc.func(a.sym).name;
    if (a.args.size() > 1) {
      s += "(";
      for (size_t i = 0; i + 1 < a.args.size(); ++i) s += (i ? "," : "") + g_.domain.at(a.args[i]);
      s += ")";
    }
    return s + "=" + g_.domain.at(a.args.back());
  }

  const GroundTheory& g_;
  const FiniteStructure& s_;
  PropTheory& p_;
  std::unordered_map<int, int> vars_;
  std::map<GAtom, int> extra_;
  int truth_ = 0;
};

}  // namespace

PropTheory to_propositional(const GroundTheory& g, const FiniteStructure& s) {
  if (g.num_rules() > 0) throw Error("ground definitions cannot be written as CNF");
  PropTheory p;
  Clausifier c(g, s, p);
  for (const auto& n : g.sentences) c.assert_node(c.substitute(n));
  c.functional();
  return p;
}

std::string write_dimacs(const PropTheory& p) {
  std::ostringstream out;
  for (int v = 1; v <= p.num_vars(); ++v)
    if (!p.labels[v - 1].empty()) out << "c atom " << v << " = " << p.labels[v - 1] << "\n";
  out << "p cnf " << p.num_vars() << " " << p.clauses.size() << "\n";
  for (const auto& c : p.clauses) {
    for (int l : c) out << l << " ";
    out << "0\n";
  }
  return out.str();
}

GTruth eval_ground(const GNode& n, const std::vector<GTruth>& v) {
  switch (n.kind) {
    case GNode::Kind::True: return GTruth::T;
    case GNode::Kind::False: return GTruth::F;
    case GNode::Kind::Lit: {
      GTruth x = v.at(n.atom);
      if (!n.neg || x == GTruth::U) return x;
      return x == GTruth::T ? GTruth::F : GTruth::T;
    }
    case GNode::Kind::And: {
      GTruth r = GTruth::T;
      for (const auto& k : n.kids) r = std::min(r, eval_ground(k, v));
      return r;
    }
    case GNode::Kind::Or: {
      GTruth r = GTruth::F;
      for (const auto& k : n.kids) r = std::max(r, eval_ground(k, v));
      return r;
    }
    case GNode::Kind::Equiv: {
      GTruth a = eval_ground(n.kids[0], v), b = eval_ground(n.kids[1], v);
      if (a == GTruth::U || b == GTruth::U) return GTruth::U;
      return a == b ? GTruth::T : GTruth::F;
    }
  }
  return GTruth::U;
}

std::vector<GTruth> ground_wfm(const GroundTheory& g, const GDefinition& d, const std::vector<GTruth>& open) {
  std::vector<GTruth> v = open;
  v.resize(g.atoms.size(), GTruth::F);
  std::vector<int> defined;
  for (int a = 0; a < g.atoms.size(); ++a) {
    const GAtom& at = g.atoms.at(a);
    if (at.kind == GAtom::Kind::Pred && std::binary_search(d.preds.begin(), d.preds.end(), at.sym)) {
      defined.push_back(a);
      v[a] = GTruth::U;
    }
  }
  std::unordered_map<int, std::vector<const GNode*>> bodies;
  for (const auto& r : d.rules) bodies[r.head].push_back(&r.body);
  auto support = [&](int a, const std::vector<GTruth>& val) {
    GTruth r = GTruth::F;
    auto it = bodies.find(a);
    if (it == bodies.end()) return r;
    for (const GNode* b : it->second) r = std::max(r, eval_ground(*b, val));
    return r;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (bool more = true; more;) {
      more = false;
      for (int a : defined)
        if (v[a] == GTruth::U && support(a, v) == GTruth::T) {
          v[a] = GTruth::T;
          more = changed = true;
        }
    }
    // greatest unfounded set: unknown atoms not reachable as possibly supported
    std::vector<GTruth> k = v;
    for (int a : defined)
      if (v[a] == GTruth::U) k[a] = GTruth::F;
    for (bool grew = true; grew;) {
      grew = false;
      for (int a : defined)
        if (v[a] == GTruth::U && k[a] == GTruth::F && support(a, k) != GTruth::F) {
          k[a] = GTruth::U;
          grew = true;
        }
    }
    for (int a : defined)
      if (v[a] == GTruth::U && k[a] == GTruth::F) {
        v[a] = GTruth::F;
        changed = true;
      }
  }
  return v;
}

}  // namespace fog
