#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "fog/error.hpp"
#include "fog/ground.hpp"
#include "fog/oracle.hpp"
#include "fog/parser.hpp"
#include "fog/transform.hpp"
#include "fuzz.hpp"

using namespace fog;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FOG_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

size_t count_models(const std::string& theory, const std::string& structure) {
  Theory t = parse_theory(theory);
  return enumerate_expansions(t, parse_structure(structure, t.voc)).size();
}

}  // namespace

TEST(Expansions, Colouring) {
  EXPECT_EQ(count_models(slurp("colouring.fo"), slurp("triangle2.str")), 0u);
  // 3! proper colourings of a triangle
  EXPECT_EQ(count_models(slurp("colouring.fo"), slurp("triangle3.str")), 6u);
}

TEST(Expansions, Propositional) {
  EXPECT_EQ(count_models("vocab { pred P/0. pred Q/0. } theory { P | Q. }", "domain = { a; }"), 3u);
  EXPECT_EQ(count_models("vocab { pred P/0. } theory { false. }", "domain = { a; }"), 0u);
  EXPECT_EQ(count_models("vocab { pred P/0. } theory { }", "domain = { a; }"), 2u);
}

TEST(Expansions, DefinitionFixesDefinedSymbols) {
  EXPECT_EQ(count_models("vocab { pred P/0. } theory { define { P <- P. } }", "domain = { a; }"), 1u);
  EXPECT_EQ(count_models("vocab { pred P/0. } theory { P. define { P <- P. } }", "domain = { a; }"), 0u);
  // P open, Q follows it
  EXPECT_EQ(count_models("vocab { pred P/1. pred Q/1. } theory { define { Q(x) <- P(x). } }",
                         "domain = { a; b; }"),
            4u);
}

TEST(Expansions, FunctionsAreTotal) {
  // F: {a,b} -> {a,b} without fixed points
  EXPECT_EQ(count_models("vocab { func F/1. } theory { ! x : F(x) ~= x. }",
                         "domain = { a; b; }"),
            1u);
}

TEST(Expansions, CapExceeded) {
  Theory t = parse_theory("vocab { pred P/2. } theory { }");
  FiniteStructure s = parse_structure("domain = { a; b; c; d; e; }", t.voc);
  EXPECT_THROW(enumerate_expansions(t, s, 1000), CapExceeded);
}

TEST(GroundModels, MatchTheory) {
  Theory t = to_tnf(parse_theory(slurp("colouring.fo")));
  FiniteStructure s = parse_structure(slurp("triangle3.str"), t.voc);
  for (const GroundTheory& g : {ground_full(t, s), ground_reduced(t, s)}) {
    auto r = check_isigma_equivalence(t, g, s);
    EXPECT_TRUE(r.equivalent);
    EXPECT_EQ(r.theory_models, 6u);
    EXPECT_EQ(r.ground_models, 6u);
  }
}

TEST(GroundModels, SelfSupportIsUnsat) {
  Theory t = to_tnf(parse_theory("vocab { pred P/0. } theory { P. define { P <- P. } }"));
  FiniteStructure s = parse_structure("domain = { a; }", t.voc);
  EXPECT_TRUE(models_of_grounding(ground_full(t, s), s).empty());
}

TEST(GroundModels, DetectsWrongGrounding) {
  Theory t = to_tnf(parse_theory("vocab { pred P/1. } theory { ! x : P(x). }"));
  FiniteStructure s = parse_structure("domain = { a; b; }", t.voc);
  GroundTheory g = ground_full(t, s);
  g.sentences.pop_back();
  auto r = check_isigma_equivalence(t, g, s);
  EXPECT_FALSE(r.equivalent);
  ASSERT_TRUE(r.counterexample.has_value());
}

TEST(GroundModels, ReducedGroundingOnRandomTheories) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    auto inst = fog::testing::random_instance(rng);
    Theory t = to_tnf(inst.theory);
    try {
      EXPECT_TRUE(check_isigma_equivalence(t, ground_reduced(t, inst.structure), inst.structure).equivalent)
          << inst.theory_text << "\n" << inst.structure_text;
      ++checked;
    } catch (const CapExceeded&) {
    } catch (const IllFormedDefinition&) {
    }
  }
  EXPECT_GT(checked, 40);
}
