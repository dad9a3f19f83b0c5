#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fog/ground.hpp"
#include "fog/parser.hpp"
#include "fog/pipeline.hpp"
#include "fog/transform.hpp"

using namespace fog;

namespace {

std::string data(const std::string& name) { return std::string(FOG_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& name) {
  std::ifstream in(data(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& theory, const std::string& structure, Mode mode = Mode::R) {
  Config cfg;
  cfg.mode = mode;
  return run_text(theory, structure, cfg);
}

const char* kSmall = "vocab { pred I/1. pred P/1. } input { I } theory { ! x : I(x) => P(x). }";

}  // namespace

TEST(Pipeline, ModesParse) {
  for (const char* m : {"full", "nb", "bu", "mn", "r"}) {
    auto parsed = parse_mode(m);
    ASSERT_TRUE(parsed.has_value());
    EXPECT_STREQ(to_string(*parsed), m);
  }
  EXPECT_FALSE(parse_mode("fast").has_value());
  EXPECT_EQ(Config{}.mode, Mode::R);
}

TEST(Pipeline, DefaultRunOnSubgraphTheory) {
  RunResult r = run(slurp("subgraph.fo"), slurp("subgraph_sparse.str"));
  ASSERT_EQ(r.status, ExitCode::Ok) << r.diagnostic;
  EXPECT_EQ(r.output.rfind("fog 1\n", 0), 0u);
  EXPECT_EQ(r.stats.recount, r.stats.grounding_size);
  EXPECT_EQ(r.stats.grounding_size, grounding_size(r.ground));
  EXPECT_GT(r.stats.refine.installed, 0);
}

TEST(Pipeline, InputModeMatchesReducedGrounding) {
  Theory t = to_tnf(parse_theory(slurp("subgraph.fo")));
  FiniteStructure s = parse_structure(slurp("subgraph_sparse.str"), t.voc);
  RunResult r = run(slurp("subgraph.fo"), slurp("subgraph_sparse.str"), Mode::Nb);
  ASSERT_EQ(r.status, ExitCode::Ok);
  EXPECT_EQ(r.output, write_fog(ground_reduced(t, s)));
}

TEST(Pipeline, RefinementBeatsInputBoundsOnSparseGraph) {
  long long nb = run(slurp("subgraph.fo"), slurp("subgraph_sparse.str"), Mode::Nb).stats.grounding_size;
  long long mn = run(slurp("subgraph.fo"), slurp("subgraph_sparse.str"), Mode::Mn).stats.grounding_size;
  long long full = run(slurp("subgraph.fo"), slurp("subgraph_sparse.str"), Mode::Full).stats.grounding_size;
  EXPECT_LT(mn, nb);
  EXPECT_LT(nb, full);
}

TEST(Pipeline, OracleCheckPasses) {
  Config cfg;
  cfg.oracle_check = true;
  for (Mode m : {Mode::Full, Mode::Nb, Mode::Bu, Mode::Mn, Mode::R}) {
    cfg.mode = m;
    RunResult r = run_text(slurp("colouring.fo"), slurp("triangle3.str"), cfg);
    EXPECT_EQ(r.status, ExitCode::Ok) << to_string(m) << ": " << r.diagnostic;
  }
}

TEST(Pipeline, MaterializesInputDefinitions) {
  RunResult r = run(slurp("reach.fo"), slurp("reach.str"));
  ASSERT_EQ(r.status, ExitCode::Ok) << r.diagnostic;
  EXPECT_EQ(r.stats.materialized, 1);
  EXPECT_EQ(r.output.find("Reach("), std::string::npos);
}

TEST(Pipeline, ExitCodes) {
  EXPECT_EQ(run("vocab { pred P/1. } theory { ! x : P(x }", "domain = { a; }").status, ExitCode::TheoryParse);
  EXPECT_EQ(run(kSmall, "domain = { a; }\nI = { b; }").status, ExitCode::StructureParse);
  EXPECT_EQ(run("vocab { pred P/0. pred Q/0. } theory { define { P <- ~Q. Q <- ~P. } }", "domain = { a; }").status,
            ExitCode::IllFormedDefinition);
  RunResult bad = run("vocab { pred I/1. } input { I } theory { ! x : I(x). }", "domain = { a; }\nI = { }");
  EXPECT_EQ(bad.status, ExitCode::Inconsistent);
  EXPECT_EQ(bad.output, "fog 1\nfalse.\n");
  EXPECT_FALSE(bad.diagnostic.empty());
  Config cfg;
  cfg.dimacs = true;
  EXPECT_EQ(run_text(slurp("tree.fo"), slurp("tree.str"), cfg).status, ExitCode::DimacsWithRules);
  EXPECT_EQ(run_files(data("missing.fo"), data("reach.str"), {}).status, ExitCode::Io);
}

TEST(Pipeline, DimacsOutput) {
  Config cfg;
  cfg.dimacs = true;
  RunResult r = run_text(slurp("subgraph.fo"), slurp("subgraph_sparse.str"), cfg);
  ASSERT_EQ(r.status, ExitCode::Ok);
  EXPECT_NE(r.output.find("p cnf "), std::string::npos);
  EXPECT_EQ(r.stats.cnf_clauses, static_cast<long long>(std::count(r.output.begin(), r.output.end(), '\n')) -
                                     r.stats.cnf_vars - 1);
}

#ifdef FOGRND_PATH
namespace {

struct Proc {
  int code;
  std::string out;
};

Proc sh(const std::string& args) {
  std::string cmd = std::string(FOGRND_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  Proc r{-1, ""};
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST(Cli, GroundsFiles) {
  Proc p = sh("--theory " + data("subgraph.fo") + " --structure " + data("subgraph_sparse.str") + " --mode mn");
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.out, run(slurp("subgraph.fo"), slurp("subgraph_sparse.str"), Mode::Mn).output);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(sh("--theory " + data("subgraph.fo")).code, 2);
  EXPECT_EQ(sh("--theory " + data("subgraph.fo") + " --structure " + data("subgraph_sparse.str") + " --mode fast").code, 2);
  EXPECT_EQ(sh("--theory " + data("nope.fo") + " --structure " + data("subgraph_sparse.str")).code, 3);
}
#endif
