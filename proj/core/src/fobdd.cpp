#include "fog/fobdd.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <unordered_set>

#include "fog/error.hpp"
#include "fog/transform.hpp"

namespace fog {

namespace {

std::atomic<int> next_serial{0};

// opened kernel bodies use one scratch variable per nesting level
constexpr int kScratch = 1 << 29;

uint64_t pair_key(int a, int b) { return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) | static_cast<uint32_t>(b); }

int kind_rank(Kernel::Kind k) { return static_cast<int>(k); }

}  // namespace

Manager::Manager(Vocabulary voc, std::shared_ptr<VarTable> vars)
    : voc_(std::move(voc)), vars_(std::move(vars)), serial_(next_serial++) {
  nodes_.push_back({-1, 0, 0});
  nodes_.push_back({-1, 1, 1});
}

int Manager::own(Bdd b) const {
  if (b.mgr != serial_) throw Error("diagram handle belongs to another manager");
  return b.id;
}

const Kernel& Manager::kernel(Bdd b) const { return kernels_.at(nodes_.at(own(b)).k); }
Bdd Manager::hi(Bdd b) const { return wrap(nodes_.at(own(b)).hi); }
Bdd Manager::lo(Bdd b) const { return wrap(nodes_.at(own(b)).lo); }

int Manager::mk(int k, int hi, int lo) {
  if (hi == lo) return hi;
  auto [it, fresh] = unique_.try_emplace({k, hi, lo}, static_cast<int>(nodes_.size()));
  if (fresh) nodes_.push_back({k, hi, lo});
  return it->second;
}

int Manager::mk_kernel(Kernel k) {
  if (k.kind == Kernel::Kind::Eq && k.args[0] > k.args[1]) std::swap(k.args[0], k.args[1]);
  if (k.kind == Kernel::Kind::Exists) {
    int d = 0;
    std::vector<int> stack{k.body};
    std::unordered_set<int> seen;
    while (!stack.empty()) {
      int b = stack.back();
      stack.pop_back();
      if (b < 2 || !seen.insert(b).second) continue;
      d = std::max(d, kernels_[nodes_[b].k].depth);
      stack.push_back(nodes_[b].hi);
      stack.push_back(nodes_[b].lo);
    }
    k.depth = d + 1;
  } else {
    k.depth = 0;
  }
  std::string key;
  key.reserve(16 + 4 * k.args.size());
  auto put = [&](int v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
  put(kind_rank(k.kind));
  put(k.sym);
  put(k.body);
  for (int a : k.args) put(a);
  auto it = kernel_ix_.find(key);
  if (it != kernel_ix_.end()) return it->second;
  int id = static_cast<int>(kernels_.size());
  kernels_.push_back(std::move(k));
  kernel_ix_.emplace(std::move(key), id);
  return id;
}

int Manager::kernel_node(Kernel k) {
  if (k.kind == Kernel::Kind::Eq && k.args[0] == k.args[1]) return 1;
  if (k.kind == Kernel::Kind::Exists && k.body < 2) return k.body;
  return mk(mk_kernel(std::move(k)), 1, 0);
}

bool Manager::kless(int a, int b) const {
  if (a == b) return false;
  const Kernel& x = kernels_[a];
  const Kernel& y = kernels_[b];
  if (x.depth != y.depth) return x.depth < y.depth;
  if (x.kind != y.kind) return kind_rank(x.kind) < kind_rank(y.kind);
  if (x.sym != y.sym) return x.sym < y.sym;
  if (x.args != y.args) return x.args < y.args;
  return x.body < y.body;
}

int Manager::top_kernel(int a, int b) const {
  if (a < 2) return nodes_[b].k;
  if (b < 2) return nodes_[a].k;
  int ka = nodes_[a].k, kb = nodes_[b].k;
  return kless(kb, ka) ? kb : ka;
}

int Manager::neg_i(int a) {
  if (a < 2) return 1 - a;
  auto it = neg_memo_.find(a);
  if (it != neg_memo_.end()) return it->second;
  Node n = nodes_[a];
  int r = mk(n.k, neg_i(n.hi), neg_i(n.lo));
  neg_memo_[a] = r;
  neg_memo_[r] = a;
  return r;
}

int Manager::and_i(int a, int b) {
  if (a == 0 || b == 0) return 0;
  if (a == 1) return b;
  if (b == 1 || a == b) return a;
  if (a > b) std::swap(a, b);
  uint64_t key = pair_key(a, b);
  auto it = and_memo_.find(key);
  if (it != and_memo_.end()) return it->second;
  int k = top_kernel(a, b);
  Node na = nodes_[a], nb = nodes_[b];
  int ah = na.k == k ? na.hi : a, al = na.k == k ? na.lo : a;
  int bh = nb.k == k ? nb.hi : b, bl = nb.k == k ? nb.lo : b;
  int h = and_i(ah, bh);
  int l = and_i(al, bl);
  int r = mk(k, h, l);
  and_memo_[key] = r;
  return r;
}

int Manager::or_i(int a, int b) {
  if (a == 1 || b == 1) return 1;
  if (a == 0) return b;
  if (b == 0 || a == b) return a;
  if (a > b) std::swap(a, b);
  uint64_t key = pair_key(a, b);
  auto it = or_memo_.find(key);
  if (it != or_memo_.end()) return it->second;
  int k = top_kernel(a, b);
  Node na = nodes_[a], nb = nodes_[b];
  int ah = na.k == k ? na.hi : a, al = na.k == k ? na.lo : a;
  int bh = nb.k == k ? nb.hi : b, bl = nb.k == k ? nb.lo : b;
  int h = or_i(ah, bh);
  int l = or_i(al, bl);
  int r = mk(k, h, l);
  or_memo_[key] = r;
  return r;
}

int Manager::ite_node(int cond, int hi, int lo) {
  if (cond == 1) return hi;
  if (cond == 0) return lo;
  if (hi == lo) return hi;
  return or_i(and_i(cond, hi), and_i(neg_i(cond), lo));
}

int Manager::ite_i(int k, int hi, int lo) { return ite_node(mk(k, 1, 0), hi, lo); }

int Manager::restrict_i(int b, int k, bool v) {
  std::unordered_map<int, int> memo;
  auto rec = [&](auto&& self, int x) -> int {
    if (x < 2) return x;
    const Node n = nodes_[x];
    if (n.k == k) return v ? n.hi : n.lo;
    if (kless(k, n.k)) return x;
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    int r = mk(n.k, self(self, n.hi), self(self, n.lo));
    memo[x] = r;
    return r;
  };
  return rec(rec, b);
}

const std::vector<int>& Manager::kernel_free(int k) {
  auto it = kfree_memo_.find(k);
  if (it != kfree_memo_.end()) return it->second;
  std::vector<int> out;
  const Kernel& kn = kernels_[k];
  if (kn.kind == Kernel::Kind::Exists) {
    out = free_i(kn.body);
  } else {
    for (int a : kn.args)
      if (a >= 0) out.push_back(a);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return kfree_memo_[k] = std::move(out);
}

const std::vector<int>& Manager::free_i(int b) {
  static const std::vector<int> none;
  if (b < 2) return none;
  auto it = free_memo_.find(b);
  if (it != free_memo_.end()) return it->second;
  Node n = nodes_[b];
  std::vector<int> out = kernel_free(n.k);
  const auto& h = free_i(n.hi);
  out.insert(out.end(), h.begin(), h.end());
  const auto& l = free_i(n.lo);
  out.insert(out.end(), l.begin(), l.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return free_memo_[b] = std::move(out);
}

int Manager::rename_kernel(int k, const std::unordered_map<int, int>& m) {
  Kernel kn = kernels_[k];
  if (kn.kind == Kernel::Kind::Exists) {
    std::unordered_map<int, int> memo;
    kn.body = rename_i(kn.body, m, memo);
  } else {
    for (int& a : kn.args) {
      auto it = m.find(a);
      if (a >= 0 && it != m.end()) a = it->second;
    }
  }
  return kernel_node(std::move(kn));
}

int Manager::rename_i(int b, const std::unordered_map<int, int>& m, std::unordered_map<int, int>& memo) {
  if (b < 2) return b;
  auto it = memo.find(b);
  if (it != memo.end()) return it->second;
  Node n = nodes_[b];
  int r = ite_node(rename_kernel(n.k, m), rename_i(n.hi, m, memo), rename_i(n.lo, m, memo));
  memo[b] = r;
  return r;
}

int Manager::bind_i(int b, int x, int d, std::unordered_map<int, int>& memo) {
  if (b < 2) return b;
  auto it = memo.find(b);
  if (it != memo.end()) return it->second;
  Node n = nodes_[b];
  Kernel kn = kernels_[n.k];
  if (kn.kind == Kernel::Kind::Exists) {
    std::unordered_map<int, int> inner;
    kn.body = bind_i(kn.body, x, d + 1, inner);
  } else {
    for (int& a : kn.args)
      if (a == x) a = -(d + 1);
  }
  int r = ite_node(kernel_node(std::move(kn)), bind_i(n.hi, x, d, memo), bind_i(n.lo, x, d, memo));
  memo[b] = r;
  return r;
}

int Manager::open_i(int b, int z, int d, std::unordered_map<int, int>& memo) {
  if (b < 2) return b;
  auto it = memo.find(b);
  if (it != memo.end()) return it->second;
  Node n = nodes_[b];
  Kernel kn = kernels_[n.k];
  if (kn.kind == Kernel::Kind::Exists) {
    std::unordered_map<int, int> inner;
    kn.body = open_i(kn.body, z, d + 1, inner);
  } else {
    for (int& a : kn.args)
      if (a == -(d + 1)) a = z;
  }
  int r = ite_node(kernel_node(std::move(kn)), open_i(n.hi, z, d, memo), open_i(n.lo, z, d, memo));
  memo[b] = r;
  return r;
}

int Manager::exists_kernel(int x, int b) {
  std::unordered_map<int, int> memo;
  Kernel k;
  k.kind = Kernel::Kind::Exists;
  k.body = bind_i(b, x, 0, memo);
  return kernel_node(std::move(k));
}

int Manager::exists_i(int x, int b) {
  if (b < 2) return b;
  const auto& fv = free_i(b);
  if (!std::binary_search(fv.begin(), fv.end(), x)) return b;
  uint64_t key = pair_key(x, b);
  auto it = exists_memo_.find(key);
  if (it != exists_memo_.end()) return it->second;

  int result = -1;
  // equality elimination: b implies x = z
  {
    std::vector<int> stack{b};
    std::unordered_set<int> seen;
    std::vector<int> eqs;
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      if (c < 2 || !seen.insert(c).second) continue;
      const Kernel& kn = kernels_[nodes_[c].k];
      if (kn.kind == Kernel::Kind::Eq && (kn.args[0] == x || kn.args[1] == x)) eqs.push_back(nodes_[c].k);
      stack.push_back(nodes_[c].hi);
      stack.push_back(nodes_[c].lo);
    }
    std::sort(eqs.begin(), eqs.end());
    eqs.erase(std::unique(eqs.begin(), eqs.end()), eqs.end());
    for (int k : eqs) {
      const Kernel& kn = kernels_[k];
      int z = kn.args[0] == x ? kn.args[1] : kn.args[0];
      if (z < 0) continue;
      if (restrict_i(b, k, false) != 0) continue;
      std::unordered_map<int, int> memo;
      result = rename_i(restrict_i(b, k, true), {{x, z}}, memo);
      break;
    }
  }
  if (result < 0) {
    Node n = nodes_[b];
    const auto& kf = kernel_free(n.k);
    bool in_k = std::binary_search(kf.begin(), kf.end(), x);
    if (!in_k) {
      int h = exists_i(x, n.hi);
      int l = exists_i(x, n.lo);
      result = ite_i(n.k, h, l);
    } else {
      const auto& fh = free_i(n.hi);
      const auto& fl = free_i(n.lo);
      bool x_hi = std::binary_search(fh.begin(), fh.end(), x);
      bool x_lo = std::binary_search(fl.begin(), fl.end(), x);
      if (n.lo == 0 && !x_hi)
        result = and_i(n.hi, exists_kernel(x, mk(n.k, 1, 0)));
      else if (n.hi == 0 && !x_lo)
        result = and_i(n.lo, exists_kernel(x, mk(n.k, 0, 1)));
      else
        result = exists_kernel(x, b);
    }
  }
  exists_memo_[key] = result;
  return result;
}

int Manager::simplify_pass(int b, int level, std::unordered_map<int, int>& memo) {
  if (b < 2) return b;
  auto it = memo.find(b);
  if (it != memo.end()) return it->second;
  Node n = nodes_[b];
  const Kernel kn = kernels_[n.k];
  int cond;
  if (kn.kind == Kernel::Kind::Exists) {
    int z = kScratch + level;
    std::unordered_map<int, int> om, sm;
    int body = open_i(kn.body, z, 0, om);
    body = simplify_pass(body, level + 1, sm);
    cond = exists_i(z, body);
  } else {
    cond = mk(n.k, 1, 0);
  }
  int hi = n.hi;
  if (kn.kind == Kernel::Kind::Eq && kn.args[0] >= 0 && kn.args[1] >= 0) {
    int small = std::min(kn.args[0], kn.args[1]);
    int big = std::max(kn.args[0], kn.args[1]);
    std::unordered_map<int, int> rm;
    hi = rename_i(hi, {{big, small}}, rm);
  }
  int r = ite_node(cond, simplify_pass(hi, level, memo), simplify_pass(n.lo, level, memo));
  memo[b] = r;
  return r;
}

int Manager::build_i(const Formula& f) {
  switch (f.kind) {
    case FKind::True: return 1;
    case FKind::False: return 0;
    case FKind::Atom: {
      Kernel k;
      k.kind = Kernel::Kind::Pred;
      k.sym = f.sym;
      for (const auto& a : f.args) {
        if (a.kind == Term::Kind::Dom) throw Error("domain constant in diagram");
        if (a.kind != Term::Kind::Var) return build_i(*tnf_formula(std::make_shared<Formula>(f), *vars_));
        k.args.push_back(a.id);
      }
      return kernel_node(std::move(k));
    }
    case FKind::Eq: {
      Term l = f.args[0], r = f.args[1];
      if (l.kind == Term::Kind::Var && r.kind == Term::Kind::App) std::swap(l, r);
      if (l.kind == Term::Kind::Dom || r.kind == Term::Kind::Dom) throw Error("domain constant in diagram");
      if (l.kind == Term::Kind::Var && r.kind == Term::Kind::Var) {
        Kernel k;
        k.kind = Kernel::Kind::Eq;
        k.args = {l.id, r.id};
        return kernel_node(std::move(k));
      }
      bool flat = r.kind == Term::Kind::Var;
      for (const auto& a : l.args) flat = flat && a.kind == Term::Kind::Var;
      if (!flat) return build_i(*tnf_formula(std::make_shared<Formula>(f), *vars_));
      Kernel k;
      k.kind = Kernel::Kind::Func;
      k.sym = l.id;
      for (const auto& a : l.args) k.args.push_back(a.id);
      k.args.push_back(r.id);
      return kernel_node(std::move(k));
    }
    case FKind::Not: return neg_i(build_i(*f.kids[0]));
    case FKind::And: {
      int r = 1;
      for (const auto& k : f.kids) {
        r = and_i(r, build_i(*k));
        if (r == 0) break;
      }
      return r;
    }
    case FKind::Or: {
      int r = 0;
      for (const auto& k : f.kids) {
        r = or_i(r, build_i(*k));
        if (r == 1) break;
      }
      return r;
    }
    case FKind::Exists: return exists_i(f.var, build_i(*f.kids[0]));
    case FKind::Forall: return neg_i(exists_i(f.var, neg_i(build_i(*f.kids[0]))));
  }
  return 0;
}

Bdd Manager::build(const Formula& f) { return wrap(build_i(f)); }
Bdd Manager::neg(Bdd a) { return wrap(neg_i(own(a))); }
Bdd Manager::conj(Bdd a, Bdd b) { return wrap(and_i(own(a), own(b))); }
Bdd Manager::disj(Bdd a, Bdd b) { return wrap(or_i(own(a), own(b))); }
Bdd Manager::exists(int x, Bdd b) { return wrap(exists_i(x, own(b))); }
Bdd Manager::forall(int x, Bdd b) { return wrap(neg_i(exists_i(x, neg_i(own(b))))); }

Bdd Manager::exists(const std::vector<int>& xs, Bdd b) {
  int r = own(b);
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) r = exists_i(*it, r);
  return wrap(r);
}

Bdd Manager::forall(const std::vector<int>& xs, Bdd b) {
  int r = neg_i(own(b));
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) r = exists_i(*it, r);
  return wrap(neg_i(r));
}

Bdd Manager::rename(Bdd b, const std::unordered_map<int, int>& m) {
  std::unordered_map<int, int> memo;
  return wrap(rename_i(own(b), m, memo));
}

Bdd Manager::simplify(Bdd b) {
  int orig = own(b);
  int cur = orig;
  for (int pass = 0; pass < 3; ++pass) {
    std::unordered_map<int, int> memo;
    int nxt = simplify_pass(cur, 0, memo);
    if (nxt == cur) break;
    cur = nxt;
  }
  if (node_count(wrap(cur)) > node_count(b)) return b;
  return wrap(cur);
}

std::vector<int> Manager::free_vars(Bdd b) { return free_i(own(b)); }

void Manager::collect_nodes(int b, std::vector<char>& seen, int& count) {
  if (b < 2) return;
  if (seen.size() <= static_cast<size_t>(b)) seen.resize(nodes_.size(), 0);
  if (seen[b]) return;
  seen[b] = 1;
  ++count;
  const Node n = nodes_[b];
  if (kernels_[n.k].kind == Kernel::Kind::Exists) collect_nodes(kernels_[n.k].body, seen, count);
  collect_nodes(n.hi, seen, count);
  collect_nodes(n.lo, seen, count);
}

int Manager::node_count(Bdd b) {
  std::vector<char> seen(nodes_.size(), 0);
  int count = 0;
  collect_nodes(own(b), seen, count);
  return count;
}

int Manager::value(int v, const Assignment& a, const std::vector<int>& env) const {
  if (v < 0) return env[env.size() + v];
  if (v >= static_cast<int>(a.size()) || a[v] < 0) throw EvalError("unassigned variable " + var_string(v));
  return a[v];
}

bool Manager::eval_kernel(int k, const FiniteStructure& s, const Assignment& a, std::vector<int>& env) {
  const Kernel& kn = kernels_[k];
  switch (kn.kind) {
    case Kernel::Kind::Pred: {
      int buf[16];
      std::vector<int> big;
      int* t = buf;
      if (kn.args.size() > 16) {
        big.resize(kn.args.size());
        t = big.data();
      }
      for (size_t i = 0; i < kn.args.size(); ++i) t[i] = value(kn.args[i], a, env);
      return s.holds(kn.sym, std::span<const int>(t, kn.args.size()));
    }
    case Kernel::Kind::Func: {
      std::vector<int> t;
      for (size_t i = 0; i + 1 < kn.args.size(); ++i) t.push_back(value(kn.args[i], a, env));
      return s.apply(kn.sym, t) == value(kn.args.back(), a, env);
    }
    case Kernel::Kind::Eq: return value(kn.args[0], a, env) == value(kn.args[1], a, env);
    case Kernel::Kind::Exists: {
      int body = kn.body;
      for (int d = 0; d < s.size(); ++d) {
        env.push_back(d);
        bool v = eval_i(body, s, a, env);
        env.pop_back();
        if (v) return true;
      }
      return false;
    }
  }
  return false;
}

bool Manager::eval_i(int b, const FiniteStructure& s, const Assignment& a, std::vector<int>& env) {
  while (b >= 2) {
    const Node& n = nodes_[b];
    b = eval_kernel(n.k, s, a, env) ? n.hi : n.lo;
  }
  return b == 1;
}

bool Manager::eval(Bdd b, const FiniteStructure& s, const Assignment& a) {
  std::vector<int> env;
  return eval_i(own(b), s, a, env);
}

template <class F>
bool Manager::search(int b, const FiniteStructure& s, Assignment& a, const std::vector<int>& targets, F&& emit) {
  if (b == 0) return true;
  std::vector<int> env;
  if (b == 1) {
    std::vector<int> open;
    for (int v : targets)
      if (a[v] < 0) open.push_back(v);
    std::sort(open.begin(), open.end());
    open.erase(std::unique(open.begin(), open.end()), open.end());
    size_t n = ipow(s.size(), static_cast<int>(open.size()));
    bool go = true;
    for (size_t ix = 0; ix < n && go; ++ix) {
      size_t r = ix;
      for (int i = static_cast<int>(open.size()) - 1; i >= 0; --i) {
        a[open[i]] = static_cast<int>(r % s.size());
        r /= s.size();
      }
      go = emit(a);
    }
    for (int v : open) a[v] = -1;
    return go;
  }
  const Node n = nodes_[b];
  std::vector<int> un;
  for (int v : kernel_free(n.k))
    if (a[v] < 0) un.push_back(v);
  if (un.empty()) return search(eval_kernel(n.k, s, a, env) ? n.hi : n.lo, s, a, targets, emit);
  const Kernel& kn = kernels_[n.k];
  if (n.lo == 0 && kn.kind == Kernel::Kind::Pred) {
    const Table& t = *s.preds.at(kn.sym);
    bool go = true;
    std::vector<int> set;
    for (size_t ix = 0; ix < t.size() && go; ++ix) {
      if (!t.get(ix)) continue;
      auto tup = t.tuple(ix);
      bool ok = true;
      for (size_t i = 0; i < tup.size() && ok; ++i) {
        int v = kn.args[i];
        if (a[v] < 0) {
          a[v] = tup[i];
          set.push_back(v);
        } else if (a[v] != tup[i]) {
          ok = false;
        }
      }
      if (ok) go = search(n.hi, s, a, targets, emit);
      for (int v : set) a[v] = -1;
      set.clear();
    }
    return go;
  }
  size_t total = ipow(s.size(), static_cast<int>(un.size()));
  bool go = true;
  for (size_t ix = 0; ix < total && go; ++ix) {
    size_t r = ix;
    for (int i = static_cast<int>(un.size()) - 1; i >= 0; --i) {
      a[un[i]] = static_cast<int>(r % s.size());
      r /= s.size();
    }
    int next = eval_kernel(n.k, s, a, env) ? n.hi : n.lo;
    if (next != 0) go = search(next, s, a, targets, emit);
  }
  for (int v : un) a[v] = -1;
  return go;
}

std::vector<std::vector<int>> Manager::query(Bdd b, const FiniteStructure& s, const std::vector<int>& targets,
                                             const Assignment& fixed) {
  int root = own(b);
  Assignment a = fixed;
  int mx = static_cast<int>(a.size()) - 1;
  for (int v : targets) mx = std::max(mx, v);
  for (int v : free_i(root)) mx = std::max(mx, v);
  a.resize(mx + 1, -1);
  for (int v : targets) a[v] = -1;
  std::vector<std::vector<int>> out;
  search(root, s, a, targets, [&](const Assignment& x) {
    std::vector<int> t;
    for (int v : targets) t.push_back(x[v]);
    out.push_back(std::move(t));
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::vector<int>> Manager::query_one(Bdd b, const FiniteStructure& s, const std::vector<int>& targets,
                                                   const Assignment& fixed) {
  int root = own(b);
  Assignment a = fixed;
  int mx = static_cast<int>(a.size()) - 1;
  for (int v : targets) mx = std::max(mx, v);
  for (int v : free_i(root)) mx = std::max(mx, v);
  a.resize(mx + 1, -1);
  for (int v : targets) a[v] = -1;
  std::optional<std::vector<int>> out;
  search(root, s, a, targets, [&](const Assignment& x) {
    std::vector<int> t;
    for (int v : targets) t.push_back(x[v]);
    out = std::move(t);
    return false;
  });
  return out;
}

double Manager::sel(int k, const FiniteStructure& s) {
  const Kernel& kn = kernels_[k];
  double d = s.size();
  switch (kn.kind) {
    case Kernel::Kind::Pred: {
      if (!s.has_pred(kn.sym)) throw EvalError("uninterpreted predicate " + voc_.pred(kn.sym).name);
      const Table& t = *s.preds[kn.sym];
      return t.size() ? static_cast<double>(t.count()) / static_cast<double>(t.size()) : 0.0;
    }
    case Kernel::Kind::Func:
    case Kernel::Kind::Eq: return d > 0 ? 1.0 / d : 0.0;
    case Kernel::Kind::Exists: return 1.0 - std::pow(1.0 - prob(kn.body, s), d);
  }
  return 0.5;
}

double Manager::prob(int b, const FiniteStructure& s) {
  if (b < 2) return b;
  if (prob_struct_ != &s) {
    prob_memo_.clear();
    prob_struct_ = &s;
  }
  auto it = prob_memo_.find(b);
  if (it != prob_memo_.end()) return it->second;
  const Node n = nodes_[b];
  double p = sel(n.k, s);
  double r = p * prob(n.hi, s) + (1 - p) * prob(n.lo, s);
  prob_memo_[b] = r;
  return r;
}

double Manager::eval_cost(int k, const FiniteStructure& s) {
  const Kernel& kn = kernels_[k];
  if (kn.kind != Kernel::Kind::Exists) return 1;
  return s.size() * std::max(1, node_count(wrap(kn.body)));
}

double Manager::cost(int b, const FiniteStructure& s, std::vector<int>& bound) {
  double d = s.size();
  auto unbound = [&](const std::vector<int>& vs, std::vector<int>& out) {
    for (int v : vs)
      if (!std::binary_search(bound.begin(), bound.end(), v)) out.push_back(v);
  };
  if (b == 0) return 1;
  if (b == 1) return 1;
  const Node n = nodes_[b];
  std::vector<int> un;
  unbound(kernel_free(n.k), un);
  double space = std::pow(d, static_cast<double>(un.size()));
  double p = sel(n.k, s);
  std::vector<int> saved = bound;
  bound.insert(bound.end(), un.begin(), un.end());
  std::sort(bound.begin(), bound.end());
  double c;
  if (n.lo == 0) {
    // the remaining free variables of the branch are enumerated below it
    c = std::max(1.0, p * space * cost(n.hi, s, bound));
  } else if (n.hi == 0) {
    c = std::max(1.0, (1 - p) * space * cost(n.lo, s, bound));
  } else {
    c = space * eval_cost(n.k, s) + space * (p * cost(n.hi, s, bound) + (1 - p) * cost(n.lo, s, bound));
  }
  bound = std::move(saved);
  return c;
}

Estimate Manager::estimate(Bdd b, const FiniteStructure& s, const std::vector<int>& bound) {
  int root = own(b);
  std::vector<int> bd = bound;
  std::sort(bd.begin(), bd.end());
  std::vector<int> fv;
  for (int v : free_i(root))
    if (!std::binary_search(bd.begin(), bd.end(), v)) fv.push_back(v);
  Estimate e;
  double space = std::pow(static_cast<double>(s.size()), static_cast<double>(fv.size()));
  e.reward = space * prob(root, s);
  if (root == 1)
    e.cost = std::max(1.0, space);
  else
    e.cost = cost(root, s, bd);
  e.ratio = e.cost / (e.reward + 1);
  return e;
}

FPtr Manager::to_formula_i(int b, std::vector<int>& env) {
  if (b == 0) return mk_false();
  if (b == 1) return mk_true();
  const Node n = nodes_[b];
  const Kernel kn = kernels_[n.k];
  auto var = [&](int v) { return Term::var(v < 0 ? env[env.size() + v] : v); };
  FPtr k;
  switch (kn.kind) {
    case Kernel::Kind::Pred: {
      std::vector<Term> args;
      for (int a : kn.args) args.push_back(var(a));
      k = mk_atom(kn.sym, std::move(args));
      break;
    }
    case Kernel::Kind::Func: {
      std::vector<Term> args;
      for (size_t i = 0; i + 1 < kn.args.size(); ++i) args.push_back(var(kn.args[i]));
      k = mk_eq(Term::app(kn.sym, std::move(args)), var(kn.args.back()));
      break;
    }
    case Kernel::Kind::Eq: k = mk_eq(var(kn.args[0]), var(kn.args[1])); break;
    case Kernel::Kind::Exists: {
      int v = vars_->fresh();
      env.push_back(v);
      FPtr body = to_formula_i(kn.body, env);
      env.pop_back();
      k = mk_exists(v, body);
      break;
    }
  }
  if (n.hi == 1 && n.lo == 0) return k;
  if (n.hi == 0 && n.lo == 1) return mk_not(k);
  if (n.lo == 0) return mk_and({k, to_formula_i(n.hi, env)});
  if (n.hi == 0) return mk_and({mk_not(k), to_formula_i(n.lo, env)});
  if (n.hi == 1) return mk_or({k, to_formula_i(n.lo, env)});
  if (n.lo == 1) return mk_or({mk_not(k), to_formula_i(n.hi, env)});
  return mk_or({mk_and({k, to_formula_i(n.hi, env)}), mk_and({mk_not(k), to_formula_i(n.lo, env)})});
}

FPtr Manager::to_formula(Bdd b) {
  std::vector<int> env;
  return to_formula_i(own(b), env);
}

std::string Manager::var_string(int v) const {
  if (v < 0) return "@" + std::to_string(-v - 1);
  if (v >= kScratch) return "_z" + std::to_string(v - kScratch);
  if (v < vars_->size()) return vars_->name(v);
  return "_t" + std::to_string(v);
}

std::string Manager::kernel_string(const Kernel& k) {
  std::string out;
  auto list = [&](size_t from, size_t to) {
    std::string r;
    for (size_t i = from; i < to; ++i) r += (i > from ? "," : "") + var_string(k.args[i]);
    return r;
  };
  switch (k.kind) {
    case Kernel::Kind::Pred:
      out = voc_.pred(k.sym).name;
      if (!k.args.empty()) out += "(" + list(0, k.args.size()) + ")";
      break;
    case Kernel::Kind::Func:
      out = voc_.func(k.sym).name;
      if (k.args.size() > 1) out += "(" + list(0, k.args.size() - 1) + ")";
      out += " = " + var_string(k.args.back());
      break;
    case Kernel::Kind::Eq: out = var_string(k.args[0]) + " = " + var_string(k.args[1]); break;
    case Kernel::Kind::Exists: out = "? @0 :"; break;
  }
  return out;
}

void Manager::dump_i(int b, int indent, const std::string& tag, std::string& out) {
  out.append(indent, ' ');
  out += tag;
  if (b < 2) {
    out += b ? "T\n" : "F\n";
    return;
  }
  const Node n = nodes_[b];
  const Kernel& kn = kernels_[n.k];
  out += kernel_string(kn) + "\n";
  if (kn.kind == Kernel::Kind::Exists) dump_i(kn.body, indent + 4, "", out);
  dump_i(n.hi, indent + 2, "+ ", out);
  dump_i(n.lo, indent + 2, "- ", out);
}

std::string Manager::dump(Bdd b) {
  std::string out;
  dump_i(own(b), 0, "", out);
  return out;
}

}  // namespace fog
