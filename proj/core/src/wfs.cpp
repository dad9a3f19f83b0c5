#include "fog/wfs.hpp"

#include <algorithm>
#include <set>

#include "fog/error.hpp"

namespace fog {

std::vector<int> open_preds(const Definition& d) {
  std::vector<int> used;
  for (const auto& r : d.rules) collect_preds(*r.body, used);
  auto def = d.defined();
  std::set<int> out;
  for (int p : used)
    if (!std::binary_search(def.begin(), def.end(), p)) out.insert(p);
  return {out.begin(), out.end()};
}

std::vector<int> open_funcs(const Definition& d) {
  std::vector<int> used;
  for (const auto& r : d.rules) collect_funcs(*r.body, used);
  std::set<int> out(used.begin(), used.end());
  return {out.begin(), out.end()};
}

namespace {

struct Atom {
  int pred;
  size_t ix;
};

class Engine {
 public:
  Engine(const Vocabulary& voc, const Definition& d, const FiniteStructure& open) : d_(d) {
    j_ = ThreeValuedStructure::from(open);
    j_.preds.resize(std::max<size_t>(j_.preds.size(), voc.num_preds()));
    for (int p : d.defined()) {
      j_.set_unknown(p, voc.pred(p).arity);
      for (size_t i = 0; i < j_.preds[p]->tru.size(); ++i) atoms_.push_back({p, i});
    }
    for (const auto& r : d.rules) {
      if (r.head >= static_cast<int>(rules_.size())) rules_.resize(r.head + 1);
      rules_[r.head].push_back(&r);
    }
  }

  TV value(const Atom& a) const { return j_.preds[a.pred]->get(a.ix); }
  void set(const Atom& a, bool v) { (v ? j_.preds[a.pred]->tru : j_.preds[a.pred]->fal).set(a.ix, true); }

  // disjunction of the bodies of a under structure s
  TV support(const Atom& a, const ThreeValuedStructure& s) {
    auto tup = j_.preds[a.pred]->tru.tuple(a.ix);
    TV r = TV::F;
    for (const Rule* rule : rules_[a.pred]) {
      for (size_t i = 0; i < tup.size(); ++i) {
        if (rule->vars[i] >= static_cast<int>(asg_.size())) asg_.resize(rule->vars[i] + 1, -1);
        asg_[rule->vars[i]] = tup[i];
      }
      r = tv_or(r, eval3(*rule->body, s, asg_));
      if (r == TV::T) break;
    }
    return r;
  }

  std::vector<size_t> unknown() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < atoms_.size(); ++i)
      if (value(atoms_[i]) == TV::U) out.push_back(i);
    return out;
  }

  // all atoms derivable as true in one step
  std::vector<size_t> derivable() {
    std::vector<size_t> out;
    for (size_t i : unknown())
      if (support(atoms_[i], j_) == TV::T) out.push_back(i);
    return out;
  }

  // greatest unfounded set among the unknown atoms
  std::vector<size_t> gus() {
    auto unk = unknown();
    ThreeValuedStructure k = j_;
    std::vector<bool> in_s(unk.size(), false);
    for (size_t i : unk) {
      const Atom& a = atoms_[i];
      k.preds[a.pred]->fal.set(a.ix, true);
    }
    for (bool grew = true; grew;) {
      grew = false;
      for (size_t u = 0; u < unk.size(); ++u) {
        if (in_s[u]) continue;
        const Atom& a = atoms_[unk[u]];
        if (support(a, k) != TV::F) {
          in_s[u] = true;
          k.preds[a.pred]->fal.set(a.ix, false);
          grew = true;
        }
      }
    }
    std::vector<size_t> out;
    for (size_t u = 0; u < unk.size(); ++u)
      if (!in_s[u]) out.push_back(unk[u]);
    return out;
  }

  ThreeValuedStructure run() {
    for (;;) {
      bool changed = false;
      for (bool more = true; more;) {
        more = false;
        for (size_t i : unknown())
          if (support(atoms_[i], j_) == TV::T) {
            set(atoms_[i], true);
            more = changed = true;
          }
      }
      auto u = gus();
      for (size_t i : u) set(atoms_[i], false);
      if (!u.empty()) changed = true;
      if (!changed) break;
    }
    return j_;
  }

  ThreeValuedStructure run_random(std::mt19937_64& rng) {
    for (;;) {
      auto der = derivable();
      bool try_gus = der.empty() || std::uniform_int_distribution<int>(0, 3)(rng) == 0;
      if (try_gus) {
        auto u = gus();
        if (!u.empty()) {
          for (size_t i : u) set(atoms_[i], false);
          continue;
        }
      }
      if (der.empty()) break;
      size_t pick = der[std::uniform_int_distribution<size_t>(0, der.size() - 1)(rng)];
      set(atoms_[pick], true);
    }
    return j_;
  }

 private:
  const Definition& d_;
  ThreeValuedStructure j_;
  std::vector<Atom> atoms_;
  std::vector<std::vector<const Rule*>> rules_;
  Assignment asg_;
};

}  // namespace

ThreeValuedStructure wfm(const Vocabulary& voc, const Definition& d, const FiniteStructure& open) {
  return Engine(voc, d, open).run();
}

ThreeValuedStructure wfm_random_schedule(const Vocabulary& voc, const Definition& d, const FiniteStructure& open,
                                         std::mt19937_64& rng) {
  return Engine(voc, d, open).run_random(rng);
}

bool satisfies_definition(const Vocabulary& voc, const FiniteStructure& m, const Definition& d) {
  auto w = wfm(voc, d, m);
  for (int p : d.defined()) {
    if (!m.has_pred(p)) return false;
    const auto& tt = *w.preds[p];
    for (size_t i = 0; i < tt.tru.size(); ++i) {
      TV v = tt.get(i);
      if (v == TV::U) return false;
      if ((v == TV::T) != m.preds[p]->get(i)) return false;
    }
  }
  return true;
}

namespace {

void signed_preds(const Formula& f, bool pos, std::vector<std::pair<int, bool>>& out) {
  if (f.kind == FKind::Atom) out.push_back({f.sym, pos});
  for (const auto& k : f.kids) signed_preds(*k, f.kind == FKind::Not ? !pos : pos, out);
}

}  // namespace

Totality classify_totality(const Definition& d) {
  auto def = d.defined();
  auto ix = [&](int p) {
    auto it = std::lower_bound(def.begin(), def.end(), p);
    return it != def.end() && *it == p ? static_cast<int>(it - def.begin()) : -1;
  };
  size_t n = def.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  std::vector<std::pair<int, int>> neg;
  bool negation = false;  // on any symbol, open ones included
  for (const auto& r : d.rules) {
    std::vector<std::pair<int, bool>> occ;
    signed_preds(*r.body, true, occ);
    int h = ix(r.head);
    for (auto [p, pos] : occ) {
      negation = negation || !pos;
      int q = ix(p);
      if (q < 0) continue;
      reach[h][q] = true;
      if (!pos) neg.push_back({h, q});
    }
  }
  if (!negation) return Totality::TotalByMonotone;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  for (auto [h, q] : neg)
    if (h == q || reach[q][h]) return Totality::Unknown;
  return Totality::TotalByStratification;
}

const char* to_string(Totality t) {
  switch (t) {
    case Totality::TotalByMonotone: return "monotone";
    case Totality::TotalByStratification: return "stratified";
    case Totality::Unknown: return "unknown";
  }
  return "?";
}

Materialized materialize_input_definitions(const Theory& t, const FiniteStructure& s) {
  Materialized m{t, s, {}};
  m.structure.resize(m.theory.voc);
  for (bool again = true; again;) {
    again = false;
    auto& defs = m.theory.defs;
    for (size_t i = 0; i < defs.size(); ++i) {
      const auto& d = defs[i];
      bool ready = true;
      for (int p : open_preds(d)) ready = ready && m.theory.voc.is_input_pred(p);
      for (int f : open_funcs(d)) ready = ready && m.theory.voc.is_input_func(f);
      if (!ready) continue;
      auto w = wfm(m.theory.voc, d, m.structure);
      if (!w.two_valued())
        throw IllFormedDefinition("definition of " + m.theory.voc.pred(d.defined()[0]).name +
                                  " has no two-valued well-founded model in this structure");
      for (int p : d.defined()) {
        m.structure.preds[p] = w.preds[p]->tru;
        m.theory.voc.set_input_pred(p);
        m.preds.push_back(p);
      }
      defs.erase(defs.begin() + i);
      again = true;
      break;
    }
  }
  renumber(m.theory);
  return m;
}

}  // namespace fog
