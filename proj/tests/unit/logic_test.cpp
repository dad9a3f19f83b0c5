#include <gtest/gtest.h>

#include "fog/error.hpp"
#include "fog/parser.hpp"
#include "fog/transform.hpp"

using namespace fog;

namespace {

const char* kColouring = R"(vocab { pred Edge/2. pred Col/1. func Colour/1. }
input { Edge, Col }
theory {
  ! v1 v2 : Edge(v1,v2) => Colour(v1) ~= Colour(v2).
})";

const char* kHamiltonian = R"(vocab {
  pred Edge/2. pred Start/1. pred In/2. pred Reached/1.
}
input { Edge, Start }
theory {
  ! x y : In(x,y) => Edge(x,y).
  ! x y z : In(x,y) & In(x,z) => y = z.
  ! x y z : In(x,y) & In(z,y) => x = z.
  ! x : Reached(x).
  ! x : ~(Start(x) & (? y : In(y,x))).
  define {
    Reached(x) <- Start(x).
    Reached(y) <- ? x : Reached(x) & In(x,y).
  }
})";

std::string sentence(const Theory& t, int i) { return to_string(t, *t.sentences.at(i)); }

}  // namespace

TEST(Parser, ColouringSentence) {
  Theory t = parse_theory(kColouring);
  EXPECT_EQ(t.sentences.size(), 1u);
  EXPECT_TRUE(t.defs.empty());
  EXPECT_TRUE(t.voc.is_input_pred(*t.voc.find_pred("Edge")));
  EXPECT_FALSE(t.voc.is_input_func(*t.voc.find_func("Colour")));
}

TEST(Parser, HamiltonianTheory) {
  Theory t = parse_theory(kHamiltonian);
  EXPECT_EQ(t.sentences.size(), 5u);
  ASSERT_EQ(t.defs.size(), 1u);
  EXPECT_EQ(t.defs[0].rules.size(), 2u);
}

TEST(Parser, UnclosedParenthesis) {
  try {
    parse_theory("vocab { pred P/1. } theory { ! x : P(x }");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_GT(e.col(), 30);
  }
}

TEST(Parser, RejectsDefinedInput) {
  EXPECT_THROW(parse_theory("vocab { pred P/1. } input { P } theory { define { P(x) <- true. } }"), TheoryError);
}

TEST(Parser, RoundTripsThroughPrinter) {
  Theory t = parse_theory(kHamiltonian);
  Theory u = parse_theory(print_theory(t));
  ASSERT_EQ(t.sentences.size(), u.sentences.size());
  for (size_t i = 0; i < t.sentences.size(); ++i) EXPECT_EQ(sentence(t, i), sentence(u, i));
}

TEST(Tnf, PushesNegationIn) {
  Theory t = to_tnf(parse_theory("vocab { pred P/1. pred Q/1. } theory { ! x : ~(P(x) & Q(x)). }"));
  EXPECT_EQ(sentence(t, 0), "! x : ~P(x) | ~Q(x)");
}

TEST(Tnf, FlattensFunctionArgument) {
  Theory t = to_tnf(parse_theory("vocab { pred P/1. func F/1. } theory { ! x : P(F(x)). }"));
  const Formula& f = *t.sentences[0];
  ASSERT_EQ(f.kind, FKind::Forall);
  const Formula& ex = *f.kids[0];
  ASSERT_EQ(ex.kind, FKind::Exists);
  int y = ex.var;
  EXPECT_NE(y, f.var);
  const Formula& body = *ex.kids[0];
  ASSERT_EQ(body.kind, FKind::And);
  EXPECT_EQ(body.kids[0]->kind, FKind::Eq);
  EXPECT_EQ(body.kids[0]->args[0].kind, Term::Kind::App);
  EXPECT_TRUE(body.kids[0]->args[1] == Term::var(y));
  EXPECT_EQ(body.kids[1]->kind, FKind::Atom);
  EXPECT_TRUE(body.kids[1]->args[0] == Term::var(y));
  EXPECT_TRUE(is_tnf(f));
}

TEST(Tnf, IdempotentOnTnf) {
  Theory t = to_tnf(parse_theory("vocab { pred P/1. pred Q/1. } theory { ! x : ~P(x) | Q(x). }"));
  Theory u = to_tnf(t);
  EXPECT_EQ(sentence(t, 0), sentence(u, 0));
}

TEST(PushQuantifiers, ForallIntoDisjunction) {
  Theory t = parse_theory("vocab { pred P/1. pred Q/1. } theory { ! x y : P(x) | Q(y). }");
  Theory u = push_quantifiers(to_tnf(t));
  // neither disjunct shares a variable, so both quantifiers move
  EXPECT_EQ(sentence(u, 0), "(! x : P(x)) | (! y : Q(y))");
}

TEST(PushQuantifiers, ExistsIntoConjunction) {
  Theory t = parse_theory("vocab { pred P/1. pred Q/1. } theory { ? x y : P(x) & Q(y). }");
  Theory u = push_quantifiers(to_tnf(t));
  EXPECT_EQ(sentence(u, 0), "(? x : P(x)) & (? y : Q(y))");
}

TEST(PushQuantifiers, SharedVariableStays) {
  Theory t = parse_theory("vocab { pred P/1. pred Q/2. } theory { ! x y : P(x) | Q(x,y). }");
  Theory u = push_quantifiers(to_tnf(t));
  EXPECT_EQ(sentence(u, 0), "! x : P(x) | (! y : Q(x,y))");
}

TEST(PushQuantifiers, NothingToMove) {
  Theory t = to_tnf(parse_theory("vocab { pred P/1. pred Q/1. } theory { ! x : P(x) | Q(x). }"));
  EXPECT_EQ(sentence(push_quantifiers(t), 0), sentence(t, 0));
}

TEST(Completion, TransitiveClosure) {
  Theory t = parse_theory(R"(vocab { pred R/2. pred TC/2. } input { R }
theory { define {
  TC(x,y) <- R(x,y).
  TC(x,y) <- ? z : TC(x,z) & TC(z,y).
} })");
  Theory c = completion(to_tnf(t));
  ASSERT_EQ(c.sentences.size(), 1u);
  EXPECT_TRUE(c.defs.empty());
  std::string s = sentence(c, 0);
  EXPECT_NE(s.find("TC("), std::string::npos);
  EXPECT_NE(s.find("R("), std::string::npos);
  EXPECT_NE(s.find("? "), std::string::npos);
}

TEST(Completion, SelfLoop) {
  Theory t = parse_theory("vocab { pred P/0. } theory { define { P <- P. } }");
  Theory c = completion(to_tnf(t));
  ASSERT_EQ(c.sentences.size(), 1u);
}

TEST(Completion, OriginMapsBackToRuleBodies) {
  Theory t = to_tnf(parse_theory(kHamiltonian));
  Completion c = completion_with_origin(t);
  OccIndex orig(t);
  int mapped = 0;
  for (const auto& [occ, src] : c.origin) {
    EXPECT_TRUE(orig.has(src));
    ++mapped;
  }
  EXPECT_GT(mapped, 0);
}

TEST(Polarity, NegatedAtom) {
  Theory t = to_tnf(parse_theory("vocab { pred P/0. pred Q/0. } theory { ~P | Q. }"));
  OccIndex ix(t);
  for (int o : ix.all()) {
    const Formula& f = *ix.at(o).f;
    if (f.kind == FKind::Atom && f.sym == 0) EXPECT_EQ(polarity(t, o), Polarity::Negative);
    if (f.kind == FKind::Atom && f.sym == 1) EXPECT_EQ(polarity(t, o), Polarity::Positive);
  }
  EXPECT_EQ(polarity(t, t.sentences[0]->occ), Polarity::Positive);
}

TEST(Polarity, DoubleNegation) {
  Theory t = parse_theory("vocab { pred P/0. } theory { ~~P. }");
  renumber(t);
  OccIndex ix(t);
  for (int o : ix.all())
    if (ix.at(o).f->kind == FKind::Atom) EXPECT_EQ(polarity(t, o), Polarity::Positive);
}

TEST(RenameFree, AvoidsCapture) {
  Theory t = parse_theory("vocab { pred B/2. } theory { }");
  int x = t.vars->add("x"), y = t.vars->add("y");
  FPtr f = mk_exists(x, mk_atom(0, {Term::var(x), Term::var(y)}));
  std::unordered_map<int, int> swap{{x, y}, {y, x}};
  EXPECT_THROW(rename_free(f, swap), Error);
  FPtr g = rename_free(f, swap, t.vars.get());
  EXPECT_EQ(g->free, std::vector<int>{x});
  EXPECT_NE(g->var, x);
  EXPECT_NE(g->var, y);
}
