#include "fog/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "fog/error.hpp"

namespace fog {

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          t.text += get();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Int;
        while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) t.text += get();
      } else {
        t.kind = Tok::Punct;
        static const char* multi[] = {"<=>", "=>", "~=", "<-", "->"};
        bool hit = false;
        for (const char* m : multi) {
          std::string ms(m);
          if (src_.compare(pos_, ms.size(), ms) == 0) {
            for (size_t i = 0; i < ms.size(); ++i) t.text += get();
            hit = true;
            break;
          }
        }
        if (!hit) {
          if (std::string("{}(),.;:!?&|~=/").find(c) == std::string::npos)
            throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
          t.text += get();
        }
      }
      out.push_back(t);
    }
  }

 private:
  char get() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') get();
      } else {
        return;
      }
    }
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}
  const Token& peek(int k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[std::min(i_++, toks_.size() - 1)]; }
  bool is(const std::string& p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool is_kw(const std::string& k) const { return peek().kind == Tok::Ident && peek().text == k; }
  bool accept(const std::string& p) {
    if (!is(p)) return false;
    next();
    return true;
  }
  void expect(const std::string& p) {
    if (!accept(p)) fail("expected '" + p + "'");
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier");
    return next().text;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string near = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + " near " + near, t.line, t.col);
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const { throw ParseError(msg, t.line, t.col); }

 private:
  std::vector<Token> toks_;
  size_t i_ = 0;
};

class TheoryParser {
 public:
  explicit TheoryParser(const std::string& text) : c_(Lexer(text).run()) {}

  Theory run() {
    while (c_.peek().kind != Tok::End) {
      if (c_.is_kw("vocab")) {
        c_.next();
        vocab();
      } else if (c_.is_kw("input")) {
        c_.next();
        input();
      } else if (c_.is_kw("theory")) {
        c_.next();
        theory();
      } else {
        c_.fail("expected 'vocab', 'input' or 'theory'");
      }
    }
    renumber(t_);
    validate(t_);
    return std::move(t_);
  }

 private:
  void vocab() {
    c_.expect("{");
    while (!c_.accept("}")) {
      Token kw = c_.peek();
      std::string kind = c_.ident();
      if (kind != "pred" && kind != "func") c_.fail_at(kw, "expected 'pred' or 'func'");
      Token nt = c_.peek();
      std::string name = c_.ident();
      c_.expect("/");
      if (c_.peek().kind != Tok::Int) c_.fail("expected arity");
      int arity = std::stoi(c_.next().text);
      c_.expect(".");
      try {
        if (kind == "pred")
          t_.voc.add_pred(name, arity);
        else
          t_.voc.add_func(name, arity);
      } catch (const TheoryError& e) {
        c_.fail_at(nt, e.what());
      }
    }
  }

  void input() {
    c_.expect("{");
    if (c_.accept("}")) return;
    for (;;) {
      Token nt = c_.peek();
      std::string name = c_.ident();
      if (auto p = t_.voc.find_pred(name))
        t_.voc.set_input_pred(*p);
      else if (auto f = t_.voc.find_func(name))
        t_.voc.set_input_func(*f);
      else
        c_.fail_at(nt, "undeclared symbol '" + name + "' in input section");
      if (c_.accept("}")) return;
      c_.expect(",");
    }
  }

  void theory() {
    c_.expect("{");
    while (!c_.accept("}")) {
      if (c_.is_kw("define") && c_.peek(1).kind == Tok::Punct && c_.peek(1).text == "{") {
        c_.next();
        definition();
      } else {
        scopes_.clear();
        t_.sentences.push_back(formula());
        c_.expect(".");
      }
    }
  }

  void definition() {
    c_.expect("{");
    Definition d;
    while (!c_.accept("}")) {
      Token ht = c_.peek();
      std::string name = c_.ident();
      auto p = t_.voc.find_pred(name);
      if (!p) c_.fail_at(ht, "rule head '" + name + "' is not a declared predicate");
      Rule r;
      r.head = *p;
      scopes_.clear();
      if (c_.accept("(")) {
        for (;;) {
          Token vt = c_.peek();
          std::string v = c_.ident();
          for (const auto& [n, id] : scopes_)
            if (n == v) c_.fail_at(vt, "head arguments must be distinct variables");
          int id = t_.vars->add(v);
          scopes_.push_back({v, id});
          r.vars.push_back(id);
          if (c_.accept(")")) break;
          c_.expect(",");
        }
      }
      if (static_cast<int>(r.vars.size()) != t_.voc.pred(r.head).arity)
        c_.fail_at(ht, "arity mismatch for '" + name + "'");
      c_.expect("<-");
      r.body = formula();
      c_.expect(".");
      d.rules.push_back(std::move(r));
    }
    t_.defs.push_back(std::move(d));
  }

  FPtr formula() { return equiv(); }

  FPtr equiv() {
    FPtr l = impl();
    while (c_.accept("<=>")) {
      FPtr r = impl();
      // (¬l ∨ r) ∧ (l ∨ ¬r)
      l = mk_and({mk_or({mk_not(l), r}), mk_or({l, mk_not(r)})});
    }
    return l;
  }

  FPtr impl() {
    FPtr l = disj();
    if (c_.accept("=>")) return mk_or({mk_not(l), impl()});
    return l;
  }

  FPtr disj() {
    std::vector<FPtr> ks{conj()};
    while (c_.accept("|")) ks.push_back(conj());
    return ks.size() == 1 ? ks[0] : mk_or(std::move(ks));
  }

  FPtr conj() {
    std::vector<FPtr> ks{unary()};
    while (c_.accept("&")) ks.push_back(unary());
    return ks.size() == 1 ? ks[0] : mk_and(std::move(ks));
  }

  FPtr unary() {
    if (c_.accept("~")) return mk_not(unary());
    if (c_.is("!") || c_.is("?")) {
      bool all = c_.next().text == "!";
      std::vector<int> vs;
      size_t mark = scopes_.size();
      do {
        std::string v = c_.ident();
        int id = t_.vars->add(v);
        vs.push_back(id);
        scopes_.push_back({v, id});
      } while (c_.peek().kind == Tok::Ident);
      c_.expect(":");
      FPtr body = formula();
      scopes_.resize(mark);
      for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = all ? mk_forall(*it, body) : mk_exists(*it, body);
      return body;
    }
    if (c_.accept("(")) {
      FPtr f = formula();
      c_.expect(")");
      return f;
    }
    if (c_.is_kw("true")) {
      c_.next();
      return mk_true();
    }
    if (c_.is_kw("false")) {
      c_.next();
      return mk_false();
    }
    return atom_or_eq();
  }

  std::optional<int> lookup_var(const std::string& n) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
      if (it->first == n) return it->second;
    return std::nullopt;
  }

  std::vector<Term> arglist() {
    std::vector<Term> args;
    if (c_.accept(")")) return args;
    for (;;) {
      args.push_back(term());
      if (c_.accept(")")) return args;
      c_.expect(",");
    }
  }

  Term term() {
    Token nt = c_.peek();
    std::string name = c_.ident();
    if (c_.accept("(")) {
      auto f = t_.voc.find_func(name);
      if (!f) c_.fail_at(nt, "'" + name + "' is not a declared function");
      auto args = arglist();
      if (static_cast<int>(args.size()) != t_.voc.func(*f).arity) c_.fail_at(nt, "arity mismatch for '" + name + "'");
      return Term::app(*f, std::move(args));
    }
    if (auto v = lookup_var(name)) return Term::var(*v);
    if (auto f = t_.voc.find_func(name)) {
      if (t_.voc.func(*f).arity != 0) c_.fail_at(nt, "arity mismatch for '" + name + "'");
      return Term::app(*f, {});
    }
    c_.fail_at(nt, "unknown symbol or unbound variable '" + name + "'");
  }

  FPtr atom_or_eq() {
    Token nt = c_.peek();
    if (nt.kind != Tok::Ident) c_.fail("expected formula");
    const std::string& name = nt.text;
    bool call = c_.peek(1).kind == Tok::Punct && c_.peek(1).text == "(";
    if (!lookup_var(name)) {
      if (auto p = t_.voc.find_pred(name)) {
        c_.next();
        std::vector<Term> args;
        if (call) {
          c_.next();
          args = arglist();
        }
        if (static_cast<int>(args.size()) != t_.voc.pred(*p).arity) c_.fail_at(nt, "arity mismatch for '" + name + "'");
        return mk_atom(*p, std::move(args));
      }
    }
    Term l = term();
    if (c_.accept("=")) return mk_eq(l, term());
    if (c_.accept("~=")) return mk_not(mk_eq(l, term()));
    c_.fail("expected '=' or '~=' after term");
  }

  Cursor c_;
  Theory t_;
  std::vector<std::pair<std::string, int>> scopes_;
};

class StructureParser {
 public:
  StructureParser(const std::string& text, const Vocabulary& voc) : c_(Lexer(text).run()), voc_(voc) {}

  FiniteStructure run() {
    Token dt = c_.peek();
    if (c_.ident() != "domain") c_.fail_at(dt, "structure must start with 'domain'");
    c_.expect("=");
    c_.expect("{");
    while (!c_.accept("}")) {
      Token et = c_.peek();
      std::string e = element_name();
      if (s_.element(e)) c_.fail_at(et, "duplicate domain element '" + e + "'");
      s_.domain.push_back(e);
      if (!c_.accept(";")) c_.accept(",");
    }
    if (s_.domain.empty()) c_.fail_at(dt, "domain must be nonempty");
    c_.accept(".");
    s_.resize(voc_);
    std::vector<bool> seen_p(voc_.num_preds()), seen_f(voc_.num_funcs());
    while (c_.peek().kind != Tok::End) {
      Token nt = c_.peek();
      std::string name = c_.ident();
      c_.expect("=");
      if (auto p = voc_.find_pred(name)) {
        if (!voc_.is_input_pred(*p)) c_.fail_at(nt, "'" + name + "' is not an input symbol");
        if (seen_p[*p]) c_.fail_at(nt, "'" + name + "' interpreted twice");
        seen_p[*p] = true;
        pred_table(*p);
      } else if (auto f = voc_.find_func(name)) {
        if (!voc_.is_input_func(*f)) c_.fail_at(nt, "'" + name + "' is not an input symbol");
        if (seen_f[*f]) c_.fail_at(nt, "'" + name + "' interpreted twice");
        seen_f[*f] = true;
        func_table(*f, nt);
      } else {
        c_.fail_at(nt, "undeclared symbol '" + name + "'");
      }
    }
    for (int p = 0; p < voc_.num_preds(); ++p)
      if (voc_.is_input_pred(p) && !seen_p[p]) throw StructureError("input predicate '" + voc_.pred(p).name + "' not interpreted");
    for (int f = 0; f < voc_.num_funcs(); ++f)
      if (voc_.is_input_func(f) && !seen_f[f]) throw StructureError("input function '" + voc_.func(f).name + "' not interpreted");
    return std::move(s_);
  }

 private:
  std::string element_name() {
    if (c_.peek().kind != Tok::Ident && c_.peek().kind != Tok::Int) c_.fail("expected domain element");
    return c_.next().text;
  }

  int element() {
    Token et = c_.peek();
    std::string e = element_name();
    auto d = s_.element(e);
    if (!d) c_.fail_at(et, "'" + e + "' is not a domain element");
    return *d;
  }

  std::vector<int> tuple() {
    std::vector<int> t;
    if (c_.accept("(")) {
      if (c_.accept(")")) return t;
      for (;;) {
        t.push_back(element());
        if (c_.accept(")")) return t;
        c_.expect(",");
      }
    }
    t.push_back(element());
    return t;
  }

  void pred_table(int p) {
    int ar = voc_.pred(p).arity;
    Table tab(ar, s_.size());
    if (ar == 0 && (c_.is_kw("true") || c_.is_kw("false"))) {
      tab.set(size_t{0}, c_.next().text == "true");
      c_.expect(".");
      s_.preds[p] = std::move(tab);
      return;
    }
    c_.expect("{");
    while (!c_.accept("}")) {
      Token tt = c_.peek();
      auto t = tuple();
      if (static_cast<int>(t.size()) != ar) c_.fail_at(tt, "arity mismatch for '" + voc_.pred(p).name + "'");
      tab.set(t);
      if (!c_.accept(";")) c_.accept(",");
    }
    c_.accept(".");
    s_.preds[p] = std::move(tab);
  }

  void func_table(int f, const Token& nt) {
    int ar = voc_.func(f).arity;
    size_t n = ipow(s_.size(), ar);
    std::vector<int> vals(n, -1);
    Table idx(ar, s_.size());
    if (!c_.is("{")) {
      if (ar != 0) c_.fail_at(nt, "function '" + voc_.func(f).name + "' needs a table");
      vals[0] = element();
      c_.expect(".");
    } else {
      c_.next();
      while (!c_.accept("}")) {
        Token tt = c_.peek();
        auto t = tuple();
        if (static_cast<int>(t.size()) != ar) c_.fail_at(tt, "arity mismatch for '" + voc_.func(f).name + "'");
        c_.expect("->");
        int v = element();
        size_t ix = idx.index(t);
        if (vals[ix] >= 0 && vals[ix] != v) c_.fail_at(tt, "function '" + voc_.func(f).name + "' is not single-valued");
        vals[ix] = v;
        if (!c_.accept(";")) c_.accept(",");
      }
      c_.accept(".");
    }
    for (int v : vals)
      if (v < 0) throw StructureError("function '" + voc_.func(f).name + "' is not total");
    s_.funcs[f] = std::move(vals);
  }

  Cursor c_;
  const Vocabulary& voc_;
  FiniteStructure s_;
};

}  // namespace

Theory parse_theory(const std::string& text) { return TheoryParser(text).run(); }

FiniteStructure parse_structure(const std::string& text, const Vocabulary& voc) {
  return StructureParser(text, voc).run();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fog
