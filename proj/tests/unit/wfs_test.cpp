#include <gtest/gtest.h>

#include "fog/error.hpp"
#include "fog/parser.hpp"
#include "fog/wfs.hpp"

using namespace fog;

namespace {

const char* kTc = R"(vocab { pred R/2. pred TC/2. } input { R }
theory { define {
  TC(x,y) <- R(x,y).
  TC(x,y) <- ? z : TC(x,z) & TC(z,y).
} })";

struct Fixture {
  Theory t;
  FiniteStructure s;
};

Fixture load(const char* theory, const char* structure) {
  Fixture f;
  f.t = parse_theory(theory);
  f.s = parse_structure(structure, f.t.voc);
  return f;
}

}  // namespace

TEST(Wfm, SelfSupportIsFalse) {
  auto f = load("vocab { pred P/0. } theory { define { P <- P. } }", "domain = { a; }");
  auto w = wfm(f.t.voc, f.t.defs[0], f.s);
  EXPECT_EQ(w.preds[0]->get(size_t{0}), TV::F);
}

TEST(Wfm, TransitiveClosure) {
  auto f = load(kTc, "domain = { a; b; c; }\nR = { (a,b); (b,c); }");
  auto w = wfm(f.t.voc, f.t.defs[0], f.s);
  int tc = *f.t.voc.find_pred("TC");
  const TriTable& tab = *w.preds[tc];
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      bool want = (x == 0 && y == 1) || (x == 1 && y == 2) || (x == 0 && y == 2);
      int tup[] = {x, y};
      EXPECT_EQ(tab.get(tup), want ? TV::T : TV::F) << x << "," << y;
    }
}

TEST(Wfm, EvenLoopStaysUnknown) {
  auto f = load("vocab { pred P/0. pred Q/0. } theory { define { P <- ~Q. Q <- ~P. } }", "domain = { a; }");
  auto w = wfm(f.t.voc, f.t.defs[0], f.s);
  EXPECT_EQ(w.preds[0]->get(size_t{0}), TV::U);
  EXPECT_EQ(w.preds[1]->get(size_t{0}), TV::U);
}

TEST(Wfm, RandomScheduleReachesSameLimit) {
  auto f = load(kTc, "domain = { a; b; c; d; }\nR = { (a,b); (b,c); (c,a); (c,d); }");
  auto w = wfm(f.t.voc, f.t.defs[0], f.s);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    EXPECT_EQ(compare_precision(w, wfm_random_schedule(f.t.voc, f.t.defs[0], f.s, rng)), Precision::Equal);
  }
}

TEST(SatisfiesDefinition, ExactClosureOnly) {
  Theory t = parse_theory(kTc);
  int r = *t.voc.find_pred("R"), tc = *t.voc.find_pred("TC");
  FiniteStructure m;
  m.domain = {"a", "b", "c"};
  m.resize(t.voc);
  Table rt(2, 3), tct(2, 3);
  rt.set(std::vector<int>{0, 1});
  rt.set(std::vector<int>{1, 2});
  tct = rt;
  tct.set(std::vector<int>{0, 2});
  m.preds[r] = rt;
  m.preds[tc] = tct;
  EXPECT_TRUE(satisfies_definition(t.voc, m, t.defs[0]));
  m.preds[tc]->set(std::vector<int>{2, 0});
  EXPECT_FALSE(satisfies_definition(t.voc, m, t.defs[0]));
}

TEST(Totality, Classification) {
  EXPECT_EQ(classify_totality(parse_theory(kTc).defs[0]), Totality::TotalByMonotone);
  EXPECT_EQ(classify_totality(parse_theory("vocab { pred P/0. pred Q/0. } theory { define { P <- ~Q. Q <- ~P. } }").defs[0]),
            Totality::Unknown);
  EXPECT_EQ(classify_totality(parse_theory("vocab { pred P/1. pred R/1. } theory { define { P(x) <- ~R(x). } }").defs[0]),
            Totality::TotalByStratification);
}

TEST(Materialize, LeavesExpansionDefinitions) {
  auto f = load("vocab { pred E/1. pred P/1. pred Q/1. } input { E } theory { define { Q(x) <- P(x) & E(x). } }",
                "domain = { a; }\nE = { a; }");
  Materialized m = materialize_input_definitions(f.t, f.s);
  EXPECT_TRUE(m.preds.empty());
  EXPECT_EQ(m.theory.defs.size(), 1u);
}

TEST(Materialize, ChainedDefinitionsInOrder) {
  auto f = load(R"(vocab { pred R/2. pred TC/2. pred Loop/1. } input { R }
theory {
  define { Loop(x) <- TC(x,x). }
  define { TC(x,y) <- R(x,y). TC(x,y) <- ? z : TC(x,z) & R(z,y). }
})",
                "domain = { a; b; c; }\nR = { (a,b); (b,a); (b,c); }");
  Materialized m = materialize_input_definitions(f.t, f.s);
  int tc = *f.t.voc.find_pred("TC"), loop = *f.t.voc.find_pred("Loop");
  ASSERT_EQ(m.preds.size(), 2u);
  EXPECT_EQ(m.preds[0], tc);
  EXPECT_EQ(m.preds[1], loop);
  EXPECT_TRUE(m.theory.defs.empty());
  EXPECT_TRUE(m.theory.voc.is_input_pred(loop));
  const Table& l = *m.structure.preds[loop];
  EXPECT_TRUE(l.get(std::vector<int>{0}));
  EXPECT_TRUE(l.get(std::vector<int>{1}));
  EXPECT_FALSE(l.get(std::vector<int>{2}));
  for (const auto& d : f.t.defs) EXPECT_TRUE(satisfies_definition(m.theory.voc, m.structure, d));
}

TEST(Materialize, RejectsThreeValuedModel) {
  auto f = load("vocab { pred P/0. pred Q/0. } theory { define { P <- ~Q. Q <- ~P. } }", "domain = { a; }");
  EXPECT_THROW(materialize_input_definitions(f.t, f.s), IllFormedDefinition);
}
