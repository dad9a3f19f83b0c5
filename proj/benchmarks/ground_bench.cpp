#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "fog/bounds.hpp"
#include "fog/fobdd.hpp"
#include "fog/parser.hpp"
#include "fog/pipeline.hpp"
#include "fog/transform.hpp"

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FOG_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// random digraph on n vertices, about n * out_degree edges
std::string digraph(int n, double out_degree, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(out_degree / n);
  std::string s = "domain = {";
  for (int i = 0; i < n; ++i) s += " v" + std::to_string(i) + ";";
  s += " }\nEdge = {";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && coin(rng)) s += " (v" + std::to_string(i) + ",v" + std::to_string(j) + ");";
  return s + " }\n";
}

const fog::Mode kModes[] = {fog::Mode::Full, fog::Mode::Nb, fog::Mode::Bu, fog::Mode::Mn, fog::Mode::R};

void run_mode(benchmark::State& state, const std::string& theory, const std::string& structure) {
  fog::Config cfg;
  cfg.mode = kModes[state.range(0)];
  long long size = 0;
  for (auto _ : state) {
    fog::RunResult r = fog::run_text(theory, structure, cfg);
    if (r.status != fog::ExitCode::Ok) state.SkipWithError(r.diagnostic.c_str());
    size = r.stats.grounding_size;
    benchmark::DoNotOptimize(r.output.data());
  }
  state.SetLabel(fog::to_string(cfg.mode));
  state.counters["size"] = static_cast<double>(size);
}

void BM_Subgraph(benchmark::State& state) {
  static const std::string theory = slurp("subgraph.fo");
  run_mode(state, theory, digraph(static_cast<int>(state.range(1)), 2.0, 7));
}
BENCHMARK(BM_Subgraph)->ArgsProduct({{0, 1, 2, 3, 4}, {20, 40}})->Unit(benchmark::kMillisecond);

void BM_Clique(benchmark::State& state) {
  static const std::string theory = slurp("clique.fo");
  run_mode(state, theory, digraph(static_cast<int>(state.range(1)), 3.0, 11));
}
BENCHMARK(BM_Clique)->ArgsProduct({{1, 3, 4}, {15, 30}})->Unit(benchmark::kMillisecond);

void BM_Refine(benchmark::State& state) {
  fog::Theory t = fog::to_tnf(fog::parse_theory(slurp(state.range(0) ? "planning.fo" : "subgraph.fo")));
  fog::StopPolicy p;
  for (auto _ : state) {
    fog::RefineStats st;
    fog::CMap c = fog::refine(t, p, &st);
    benchmark::DoNotOptimize(c.bounds.size());
    state.counters["installed"] = st.installed;
  }
}
BENCHMARK(BM_Refine)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_Query(benchmark::State& state) {
  fog::Theory t = fog::parse_theory(slurp("subgraph.fo"));
  fog::FiniteStructure s = fog::parse_structure(digraph(static_cast<int>(state.range(0)), 3.0, 3), t.voc);
  int x = t.vars->add("qx"), y = t.vars->add("qy"), z = t.vars->add("qz");
  int edge = *t.voc.find_pred("Edge");
  auto e = [&](int a, int b) { return fog::mk_atom(edge, {fog::Term::var(a), fog::Term::var(b)}); };
  fog::Manager m(t.voc, t.vars);
  // pairs of distinct out-neighbours
  fog::Bdd b = m.build(*fog::mk_and({e(x, y), e(x, z), fog::mk_not(fog::mk_eq(fog::Term::var(y), fog::Term::var(z)))}));
  size_t answers = 0;
  for (auto _ : state) answers = m.query(b, s, {x, y, z}).size();
  state.counters["answers"] = static_cast<double>(answers);
}
BENCHMARK(BM_Query)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
