#include "fuzz.hpp"

#include "fog/parser.hpp"

namespace fog::testing {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string term(std::mt19937_64& rng, const SymbolSet& syms, const std::vector<std::string>& scope) {
  std::string v = scope[pick(rng, 0, static_cast<int>(scope.size()) - 1)];
  if (!syms.unary_funcs.empty() && coin(rng, 0.2))
    return syms.unary_funcs[pick(rng, 0, static_cast<int>(syms.unary_funcs.size()) - 1)] + "(" + v + ")";
  return v;
}

std::string atom(std::mt19937_64& rng, const SymbolSet& syms, const std::vector<std::string>& scope) {
  if (coin(rng, 0.15)) return term(rng, syms, scope) + (coin(rng, 0.5) ? " = " : " ~= ") + term(rng, syms, scope);
  const auto& [name, ar] = syms.preds[pick(rng, 0, static_cast<int>(syms.preds.size()) - 1)];
  if (ar == 0) return name;
  std::string s = name + "(";
  for (int i = 0; i < ar; ++i) s += (i ? "," : "") + term(rng, syms, scope);
  return s + ")";
}

}  // namespace

std::string random_formula(std::mt19937_64& rng, const SymbolSet& syms, int depth, std::vector<std::string> scope,
                           int& fresh) {
  bool need_var = scope.empty();
  if (depth <= 0 && !need_var) return atom(rng, syms, scope);
  int k = need_var ? pick(rng, 0, 1) : pick(rng, 0, 7);
  switch (k) {
    case 0:
    case 1: {
      std::string v = "x" + std::to_string(fresh++);
      scope.push_back(v);
      return std::string(k == 0 ? "! " : "? ") + v + " : " + random_formula(rng, syms, depth - 1, scope, fresh);
    }
    case 2: return "~(" + random_formula(rng, syms, depth - 1, scope, fresh) + ")";
    case 3:
    case 4:
    case 5: {
      const char* ops[] = {" & ", " | ", " => "};
      return "(" + random_formula(rng, syms, depth - 1, scope, fresh) + ops[k - 3] +
             random_formula(rng, syms, depth - 1, scope, fresh) + ")";
    }
    case 6:
      return "(" + random_formula(rng, syms, depth - 1, scope, fresh) + " <=> " +
             random_formula(rng, syms, depth - 1, scope, fresh) + ")";
    default: return atom(rng, syms, scope);
  }
}

std::string random_structure(std::mt19937_64& rng, const Vocabulary& voc, int n, double density) {
  std::string s = "domain = {";
  for (int i = 0; i < n; ++i) s += " d" + std::to_string(i) + ";";
  s += " }\n";
  for (int p = 0; p < voc.num_preds(); ++p) {
    if (!voc.is_input_pred(p)) continue;
    int ar = voc.pred(p).arity;
    s += voc.pred(p).name + " = ";
    if (ar == 0) {
      s += coin(rng, density) ? "true.\n" : "false.\n";
      continue;
    }
    Table t(ar, n);
    s += "{";
    for (size_t i = 0; i < t.size(); ++i) {
      if (!coin(rng, density)) continue;
      auto tup = t.tuple(i);
      s += " (";
      for (size_t j = 0; j < tup.size(); ++j) s += (j ? "," : "") + ("d" + std::to_string(tup[j]));
      s += ");";
    }
    s += " }\n";
  }
  for (int f = 0; f < voc.num_funcs(); ++f) {
    if (!voc.is_input_func(f)) continue;
    int ar = voc.func(f).arity;
    if (ar == 0) {
      s += voc.func(f).name + " = d" + std::to_string(pick(rng, 0, n - 1)) + ".\n";
      continue;
    }
    Table t(ar, n);
    s += voc.func(f).name + " = {";
    for (size_t i = 0; i < t.size(); ++i) {
      auto tup = t.tuple(i);
      s += " (";
      for (size_t j = 0; j < tup.size(); ++j) s += (j ? "," : "") + ("d" + std::to_string(tup[j]));
      s += ") -> d" + std::to_string(pick(rng, 0, n - 1)) + ";";
    }
    s += " }\n";
  }
  return s;
}

std::string random_digraph(std::mt19937_64& rng, int n, double density) {
  std::string s = "domain = {";
  for (int i = 0; i < n; ++i) s += " v" + std::to_string(i) + ";";
  s += " }\nEdge = {";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (coin(rng, density)) s += " (v" + std::to_string(i) + ",v" + std::to_string(j) + ");";
  return s + " }\n";
}

Instance random_instance(std::mt19937_64& rng, const FuzzOptions& opt) {
  int n = pick(rng, 1, opt.max_domain);
  SymbolSet all;
  std::vector<std::pair<std::string, int>> inputs, expansion;
  for (int i = 0; i < opt.input_preds; ++i) inputs.push_back({"I" + std::to_string(i), pick(rng, 0, opt.max_arity)});
  int budget = opt.max_expansion_atoms;
  int want = pick(rng, 1, opt.max_expansion_preds);
  for (int i = 0; i < want; ++i) {
    int ar = pick(rng, 0, opt.max_arity);
    while (ar > 0 && static_cast<int>(ipow(n, ar)) > budget) --ar;
    if (static_cast<int>(ipow(n, ar)) > budget) break;
    budget -= static_cast<int>(ipow(n, ar));
    expansion.push_back({"P" + std::to_string(i), ar});
  }
  // an expansion function costs |D|^|D| configurations
  bool func = opt.allow_functions && n > 1 && coin(rng, 0.25) && budget >= n * 2;
  all.preds = inputs;
  all.preds.insert(all.preds.end(), expansion.begin(), expansion.end());
  if (func) all.unary_funcs.push_back("F");

  std::string text = "vocab {\n";
  for (const auto& [name, ar] : all.preds) text += "  pred " + name + "/" + std::to_string(ar) + ".\n";
  if (func) text += "  func F/1.\n";
  text += "}\ninput {";
  for (size_t i = 0; i < inputs.size(); ++i) text += (i ? ", " : " ") + inputs[i].first;
  text += " }\ntheory {\n";
  int fresh = 0;
  int ns = pick(rng, 1, opt.max_sentences);
  for (int i = 0; i < ns; ++i) text += "  " + random_formula(rng, all, pick(rng, 1, opt.max_depth), {}, fresh) + ".\n";
  int nd = expansion.empty() ? 0 : pick(rng, 0, opt.max_definitions);
  for (int d = 0; d < nd; ++d) {
    int ndef = pick(rng, 1, std::min<int>(2, static_cast<int>(expansion.size())));
    text += "  define {\n";
    for (int j = 0; j < ndef; ++j) {
      const auto& [name, ar] = expansion[j];
      int nr = pick(rng, 1, 2);
      for (int r = 0; r < nr; ++r) {
        std::vector<std::string> head;
        for (int k = 0; k < ar; ++k) head.push_back("h" + std::to_string(fresh++));
        std::string h = name;
        if (ar > 0) {
          h += "(";
          for (int k = 0; k < ar; ++k) h += (k ? "," : "") + head[k];
          h += ")";
        }
        std::string body = random_formula(rng, all, pick(rng, head.empty() ? 1 : 0, 2), head, fresh);
        text += "    " + h + " <- " + body + ".\n";
      }
    }
    text += "  }\n";
  }
  text += "}\n";
  Instance inst;
  inst.theory_text = text;
  inst.theory = parse_theory(text);
  inst.structure_text = random_structure(rng, inst.theory.voc, n);
  inst.structure = parse_structure(inst.structure_text, inst.theory.voc);
  return inst;
}

}  // namespace fog::testing
