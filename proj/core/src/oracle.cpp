#include "fog/oracle.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include "fog/error.hpp"
#include "fog/wfs.hpp"

namespace fog {

namespace {

// Mixed-radix counter over the tables of the expansion symbols.
class Expansions {
 public:
  Expansions(const Vocabulary& voc, const FiniteStructure& s, int extra_bits, size_t cap) : base_(s) {
    base_.resize(voc);
    int n = s.size();
    double log_space = extra_bits * std::log2(2.0);
    for (int p = 0; p < voc.num_preds(); ++p) {
      if (voc.is_input_pred(p)) {
        if (!s.has_pred(p)) throw EvalError("structure lacks input predicate " + voc.pred(p).name);
        continue;
      }
      size_t cells = ipow(n, voc.pred(p).arity);
      preds_.push_back({p, cells});
      log_space += static_cast<double>(cells);
      base_.preds[p] = Table(voc.pred(p).arity, n);
    }
    for (int f = 0; f < voc.num_funcs(); ++f) {
      if (voc.is_input_func(f)) {
        if (!s.has_func(f)) throw EvalError("structure lacks input function " + voc.func(f).name);
        continue;
      }
      size_t cells = ipow(n, voc.func(f).arity);
      funcs_.push_back({f, cells});
      log_space += static_cast<double>(cells) * std::log2(static_cast<double>(n));
      base_.funcs[f] = std::vector<int>(cells, 0);
    }
    if (log_space > std::log2(static_cast<double>(cap)) + 1e-9)
      throw CapExceeded("search space 2^" + std::to_string(log_space) + " exceeds cap " + std::to_string(cap));
    for (const auto& [p, cells] : preds_) radix_.insert(radix_.end(), cells, 2);
    for (const auto& [f, cells] : funcs_) radix_.insert(radix_.end(), cells, n);
    radix_.insert(radix_.end(), extra_bits, 2);
    digits_.assign(radix_.size(), 0);
    extra_ = extra_bits;
  }

  const FiniteStructure& current() {
    size_t i = 0;
    for (const auto& [p, cells] : preds_)
      for (size_t c = 0; c < cells; ++c) base_.preds[p]->set(c, digits_[i++] != 0);
    for (const auto& [f, cells] : funcs_)
      for (size_t c = 0; c < cells; ++c) (*base_.funcs[f])[c] = digits_[i++];
    return base_;
  }

  // the extra bits of the current configuration
  std::vector<int> extra() const { return {digits_.end() - extra_, digits_.end()}; }

  // moves to the next configuration; false after the last one
  bool next() {
    for (size_t i = radix_.size(); i > 0; --i) {
      if (++digits_[i - 1] < radix_[i - 1]) return true;
      digits_[i - 1] = 0;
    }
    return false;
  }

  // first configuration whose structure part differs from the current one
  bool next_structure() {
    for (size_t i = radix_.size() - extra_; i > 0; --i) {
      std::fill(digits_.end() - extra_, digits_.end(), 0);
      if (++digits_[i - 1] < radix_[i - 1]) return true;
      digits_[i - 1] = 0;
    }
    return false;
  }

 private:
  FiniteStructure base_;
  std::vector<std::pair<int, size_t>> preds_, funcs_;
  std::vector<int> radix_, digits_;
  int extra_ = 0;
};

}  // namespace

std::vector<FiniteStructure> enumerate_expansions(const Theory& t, const FiniteStructure& s, size_t cap) {
  Expansions ex(t.voc, s, 0, cap);
  std::vector<FiniteStructure> out;
  do {
    const FiniteStructure& m = ex.current();
    bool ok = true;
    for (const auto& f : t.sentences) {
      if (!evaluate(*f, m)) {
        ok = false;
        break;
      }
    }
    for (size_t i = 0; ok && i < t.defs.size(); ++i) ok = satisfies_definition(t.voc, m, t.defs[i]);
    if (ok) out.push_back(m);
  } while (ex.next());
  return out;
}

std::vector<GTruth> valuation(const GroundTheory& g, const FiniteStructure& m) {
  std::vector<GTruth> v(g.atoms.size(), GTruth::F);
  auto tv = [](bool b) { return b ? GTruth::T : GTruth::F; };
  for (int a = 0; a < g.atoms.size(); ++a) {
    const GAtom& at = g.atoms.at(a);
    switch (at.kind) {
      case GAtom::Kind::Pred: v[a] = tv(m.holds(at.sym, at.args)); break;
      case GAtom::Kind::Func:
        v[a] = tv(m.apply(at.sym, std::span<const int>(at.args.data(), at.args.size() - 1)) == at.args.back());
        break;
      case GAtom::Kind::Eq: v[a] = tv(at.args[0] == at.args[1]); break;
      case GAtom::Kind::Aux: break;
    }
  }
  return v;
}

bool satisfies_grounding(const GroundTheory& g, const std::vector<GTruth>& v) {
  for (const auto& s : g.sentences)
    if (eval_ground(s, v) != GTruth::T) return false;
  for (const auto& d : g.defs) {
    auto w = ground_wfm(g, d, v);
    for (int a = 0; a < g.atoms.size(); ++a)
      if (w[a] != v[a]) return false;
  }
  return true;
}

namespace {

// defined atoms without a ground rule must be false
bool unsupported_false(const GroundTheory& g, const FiniteStructure& m) {
  for (const auto& d : g.defs)
    for (int p : d.preds) {
      const Table& tab = *m.preds[p];
      for (size_t i = 0; i < tab.size(); ++i)
        if (tab.get(i) && g.atoms.find({GAtom::Kind::Pred, p, tab.tuple(i)}) < 0) return false;
    }
  return true;
}

std::vector<int> aux_atoms(const GroundTheory& g) {
  std::vector<int> out;
  for (int a = 0; a < g.atoms.size(); ++a)
    if (g.atoms.at(a).kind == GAtom::Kind::Aux) out.push_back(a);
  return out;
}

}  // namespace

std::vector<FiniteStructure> models_of_grounding(const GroundTheory& g, const FiniteStructure& s, size_t cap) {
  auto aux = aux_atoms(g);
  Expansions ex(g.voc, s, static_cast<int>(aux.size()), cap);
  std::vector<FiniteStructure> out;
  for (;;) {
    const FiniteStructure& m = ex.current();
    bool found = false;
    if (unsupported_false(g, m)) {
      auto v = valuation(g, m);
      for (;;) {
        auto bits = ex.extra();
        for (size_t i = 0; i < aux.size(); ++i) v[aux[i]] = bits[i] ? GTruth::T : GTruth::F;
        if (satisfies_grounding(g, v)) {
          found = true;
          break;
        }
        if (aux.empty() || std::all_of(bits.begin(), bits.end(), [](int b) { return b == 1; })) break;
        ex.next();
      }
    }
    if (found) out.push_back(m);
    if (!ex.next_structure()) break;
  }
  return out;
}

bool same_structure(const FiniteStructure& a, const FiniteStructure& b) {
  if (a.domain != b.domain) return false;
  size_t np = std::max(a.preds.size(), b.preds.size());
  for (size_t p = 0; p < np; ++p) {
    bool ha = a.has_pred(static_cast<int>(p)), hb = b.has_pred(static_cast<int>(p));
    if (ha != hb || (ha && !(*a.preds[p] == *b.preds[p]))) return false;
  }
  size_t nf = std::max(a.funcs.size(), b.funcs.size());
  for (size_t f = 0; f < nf; ++f) {
    bool ha = a.has_func(static_cast<int>(f)), hb = b.has_func(static_cast<int>(f));
    if (ha != hb || (ha && *a.funcs[f] != *b.funcs[f])) return false;
  }
  return true;
}

namespace {

// table contents as a string; equal keys iff same_structure
std::string structure_key(const FiniteStructure& m) {
  std::string k;
  for (const auto& p : m.preds) {
    k += p ? 'p' : '-';
    if (p)
      for (size_t i = 0; i < p->size(); ++i) k += p->get(i) ? '1' : '0';
  }
  for (const auto& f : m.funcs) {
    k += f ? 'f' : '-';
    if (f)
      for (int v : *f) k += std::to_string(v) + ',';
  }
  return k;
}

}  // namespace

EquivalenceResult check_isigma_equivalence(const Theory& t, const GroundTheory& g, const FiniteStructure& s,
                                           size_t cap) {
  auto tm = enumerate_expansions(t, s, cap);
  auto gm = models_of_grounding(g, s, cap);
  EquivalenceResult r;
  r.theory_models = tm.size();
  r.ground_models = gm.size();
  std::unordered_set<std::string> tk, gk;
  for (const auto& m : tm) tk.insert(structure_key(m));
  for (const auto& m : gm) gk.insert(structure_key(m));
  for (const auto& m : tm)
    if (!gk.count(structure_key(m))) {
      r.equivalent = false;
      r.counterexample = m;
      return r;
    }
  for (const auto& m : gm)
    if (!tk.count(structure_key(m))) {
      r.equivalent = false;
      r.counterexample = m;
      return r;
    }
  return r;
}

}  // namespace fog
