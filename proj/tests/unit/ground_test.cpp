#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fog/bounds.hpp"
#include "fog/error.hpp"
#include "fog/ground.hpp"
#include "fog/oracle.hpp"
#include "fog/parser.hpp"
#include "fog/transform.hpp"

using namespace fog;

namespace {

const char* kSmall = R"(vocab { pred I/1. pred P/1. pred Q/1. } input { I }
theory {
  ! x : I(x) => P(x).
  ! x : P(x) | Q(x).
  define { Q(x) <- ~I(x) & P(x). }
})";

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FOG_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  Theory t;
  FiniteStructure s;
};

Loaded load(const std::string& theory, const std::string& structure) {
  Loaded l;
  l.t = to_tnf(parse_theory(theory));
  l.s = parse_structure(structure, l.t.voc);
  return l;
}

}  // namespace

TEST(Ground, FullInstantiatesEverything) {
  auto l = load(kSmall, "domain = { a; b; }\nI = { a; }");
  GroundTheory g = ground_full(l.t, l.s);
  EXPECT_EQ(g.sentences.size(), 4u);
  ASSERT_EQ(g.defs.size(), 1u);
  EXPECT_EQ(g.defs[0].rules.size(), 2u);
  // 8 sentence literals, 4 body literals, 2 rules
  EXPECT_EQ(grounding_size(g), 14);
}

TEST(Ground, ReducedEvaluatesInput) {
  auto l = load(kSmall, "domain = { a; b; }\nI = { a; }");
  GroundTheory g = ground_reduced(l.t, l.s);
  EXPECT_EQ(write_fog(g), "fog 1\nP(a).\nP(a) | Q(a).\nP(b) | Q(b).\ndefine {\nQ(b) <- P(b).\n}\n");
  EXPECT_EQ(grounding_size(g), 7);
  EXPECT_TRUE(check_isigma_equivalence(l.t, g, l.s).equivalent);
}

TEST(Ground, TrivialMapIsFullGrounding) {
  auto l = load(kSmall, "domain = { a; b; c; }\nI = { b; }");
  CMap c = copy_closure(trivial_cmap(l.t), l.t);
  EXPECT_EQ(write_fog(ground_with_bounds(l.t, l.s, c)), write_fog(ground_full(l.t, l.s)));
}

TEST(Ground, InputMapIsReducedGrounding) {
  auto l = load(slurp("subgraph.fo"), slurp("subgraph_sparse.str"));
  CMap c = copy_closure(nb_cmap(l.t), l.t);
  EXPECT_EQ(write_fog(ground_with_bounds(l.t, l.s, c)), write_fog(ground_reduced(l.t, l.s)));
}

TEST(Ground, BoundsShrinkSubgraphTheory) {
  auto l = load(slurp("subgraph.fo"), "domain = { a; b; c; }\nEdge = { (a,b); (a,c); }");
  StopPolicy p;
  p.kind = StopPolicy::Kind::None;
  CMap c = make_tolerant(to_bottom_up(copy_closure(refine(l.t, p), l.t), l.t), l.t);
  GroundTheory g = ground_with_bounds(l.t, l.s, c);
  GroundTheory red = ground_reduced(l.t, l.s);
  EXPECT_LT(grounding_size(g), grounding_size(red));
  // only a has two out-edges: Sub(a,b) | Sub(a,c) excluded pairwise, both orders
  int binary = 0;
  for (const auto& n : g.sentences)
    if (n.kind == GNode::Kind::Or && n.kids.size() == 2) ++binary;
  EXPECT_EQ(binary, 2);
  EXPECT_TRUE(check_isigma_equivalence(l.t, g, l.s).equivalent);
}

TEST(Ground, RejectsInconsistentMap) {
  auto l = load(kSmall, "domain = { a; }\nI = { a; }");
  CMap c = copy_closure(trivial_cmap(l.t), l.t);
  Manager& m = *c.mgr;
  c.set(l.t.sentences[0]->occ, {m.top(), m.top()});
  EXPECT_THROW(ground_with_bounds(l.t, l.s, c), Error);
}

TEST(Ground, SharingKeepsModels) {
  auto l = load(R"(vocab { pred I/1. pred P/1. pred Q/1. } input { I }
theory {
  ! x : P(x) | (Q(x) & ~P(x)).
  ? x : Q(x) & ~P(x).
})",
                "domain = { a; b; }\nI = { }");
  GroundTheory g = ground_reduced(l.t, l.s);
  GroundTheory sh = apply_sharing(g);
  EXPECT_GT(sh.aux_count, 0);
  auto a = models_of_grounding(g, l.s), b = models_of_grounding(sh, l.s);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(same_structure(a[i], b[i]));
}

TEST(FogFormat, RoundTrip) {
  auto l = load(kSmall, "domain = { a; b; }\nI = { a; }");
  for (const GroundTheory& g : {ground_full(l.t, l.s), ground_reduced(l.t, l.s)}) {
    std::string text = write_fog(g);
    GroundTheory back = read_fog(text, g.voc, g.domain);
    EXPECT_EQ(write_fog(back), text);
    EXPECT_EQ(grounding_size(back), grounding_size(g));
  }
  EXPECT_THROW(read_fog("fog 1\nNope(a).\n", l.t.voc, {"a", "b"}), ParseError);
}

TEST(Propositional, ColouringClauses) {
  auto l = load(slurp("colouring.fo"), slurp("triangle2.str"));
  GroundTheory g = ground_reduced(l.t, l.s);
  PropTheory p = to_propositional(g, l.s);
  // one variable per Colour(v) = c
  EXPECT_EQ(p.num_vars(), 9);
  std::string cnf = write_dimacs(p);
  EXPECT_NE(cnf.find("\np cnf 9 "), std::string::npos);
  EXPECT_TRUE(models_of_grounding(g, l.s).empty());
}

TEST(Propositional, RefusesRules) {
  auto l = load(kSmall, "domain = { a; }\nI = { }");
  GroundTheory g = ground_reduced(l.t, l.s);
  ASSERT_FALSE(g.defs.empty());
  EXPECT_THROW(to_propositional(g, l.s), Error);
}

TEST(GroundWfm, SelfSupport) {
  auto l = load("vocab { pred P/0. } theory { P. define { P <- P. } }", "domain = { a; }");
  GroundTheory g = ground_full(l.t, l.s);
  ASSERT_EQ(g.defs.size(), 1u);
  std::vector<GTruth> open(g.atoms.size(), GTruth::U);
  auto w = ground_wfm(g, g.defs[0], open);
  EXPECT_EQ(w[g.defs[0].rules[0].head], GTruth::F);
  EXPECT_TRUE(models_of_grounding(g, l.s).empty());
}
