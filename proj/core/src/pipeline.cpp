#include "fog/pipeline.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "fog/error.hpp"
#include "fog/oracle.hpp"
#include "fog/parser.hpp"
#include "fog/transform.hpp"
#include "fog/wfs.hpp"

namespace fog {

std::optional<Mode> parse_mode(const std::string& s) {
  if (s == "full") return Mode::Full;
  if (s == "nb") return Mode::Nb;
  if (s == "bu") return Mode::Bu;
  if (s == "mn") return Mode::Mn;
  if (s == "r") return Mode::R;
  return std::nullopt;
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Full: return "full";
    case Mode::Nb: return "nb";
    case Mode::Bu: return "bu";
    case Mode::Mn: return "mn";
    case Mode::R: return "r";
  }
  return "?";
}

std::string Stats::to_string() const {
  std::ostringstream o;
  o << "grounding_size " << grounding_size << "\n";
  o << "grounding_size_recount " << recount << "\n";
  o << "sentences " << sentences << "\n";
  o << "rules " << rules << "\n";
  o << "atoms " << atoms << "\n";
  o << "instantiations " << instantiations << "\n";
  o << "occurrences " << occurrences << "\n";
  o << "materialized_definitions " << materialized << "\n";
  o << "refine_steps " << refine.steps << "\n";
  o << "refine_installed " << refine.installed << "\n";
  o << "refine_rejected " << refine.rejected << "\n";
  o << "refine_exhausted " << (refine.exhausted ? 1 : 0) << "\n";
  if (cnf_vars) o << "cnf_vars " << cnf_vars << "\ncnf_clauses " << cnf_clauses << "\n";
  for (const auto& [name, ms] : times_ms) o << "time_ms." << name << " " << ms << "\n";
  return o.str();
}

namespace {

CMap raw_cmap(const Theory& t, Mode mode, const Config& cfg, const FiniteStructure& s, RefineStats* stats) {
  switch (mode) {
    case Mode::Full: return trivial_cmap(t);
    case Mode::Nb:
    case Mode::Bu: return nb_cmap(t);
    case Mode::Mn:
    case Mode::R: {
      StopPolicy p;
      p.kind = mode == Mode::Mn ? StopPolicy::Kind::NodeLimit : StopPolicy::Kind::Ratio;
      p.factor = cfg.max_refine_factor;
      p.node_limit = cfg.max_bdd_nodes;
      p.structure = &s;
      return refine(t, p, stats);
    }
  }
  throw Error("unknown mode");
}

CMap finish_cmap(const CMap& c, const Theory& t, Mode mode) {
  if (mode == Mode::Full) return c;
  CMap out = copy_closure(c, t);
  if (mode != Mode::Nb) out = to_bottom_up(out, t);
  return make_tolerant(out, t);
}

class Timer {
 public:
  explicit Timer(Stats& s) : stats_(s), last_(std::chrono::steady_clock::now()) {}
  void lap(const std::string& name) {
    auto now = std::chrono::steady_clock::now();
    stats_.times_ms.push_back({name, std::chrono::duration<double, std::milli>(now - last_).count()});
    last_ = now;
  }

 private:
  Stats& stats_;
  std::chrono::steady_clock::time_point last_;
};

RunResult fail(ExitCode code, const std::string& msg) {
  RunResult r;
  r.status = code;
  r.diagnostic = msg;
  return r;
}

bool schedules_agree(const Theory& t, const FiniteStructure& s, uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (const auto& d : t.defs) {
    bool ready = true;
    for (int p : open_preds(d)) ready = ready && s.has_pred(p);
    for (int f : open_funcs(d)) ready = ready && s.has_func(f);
    if (!ready) continue;
    auto a = wfm(t.voc, d, s);
    auto b = wfm_random_schedule(t.voc, d, s, rng);
    if (compare_precision(a, b) != Precision::Equal) return false;
  }
  return true;
}

}  // namespace

CMap build_cmap(const Theory& tnf, Mode mode, const Config& cfg, const FiniteStructure& s, RefineStats* stats) {
  return finish_cmap(raw_cmap(tnf, mode, cfg, s, stats), tnf, mode);
}

RunResult run_text(const std::string& theory_text, const std::string& structure_text, const Config& cfg) {
  RunResult r;
  Timer timer(r.stats);
  Theory parsed;
  try {
    parsed = parse_theory(theory_text);
  } catch (const Error& e) {
    return fail(ExitCode::TheoryParse, std::string("theory: ") + e.what());
  }
  FiniteStructure s;
  try {
    s = parse_structure(structure_text, parsed.voc);
  } catch (const Error& e) {
    return fail(ExitCode::StructureParse, std::string("structure: ") + e.what());
  }
  timer.lap("parse");
  try {
    Theory tnf = to_tnf(parsed);
    if (cfg.push_quantifiers) tnf = push_quantifiers(tnf);
    timer.lap("tnf");
    Materialized mat;
    try {
      mat = materialize_input_definitions(tnf, s);
    } catch (const IllFormedDefinition& e) {
      return fail(ExitCode::IllFormedDefinition, e.what());
    }
    const Theory& t = mat.theory;
    const FiniteStructure& sx = mat.structure;
    r.stats.materialized = static_cast<int>(mat.preds.size());
    r.stats.occurrences = count_nodes(t);
    timer.lap("materialize");

    CMap c = raw_cmap(t, cfg.mode, cfg, sx, &r.stats.refine);
    timer.lap("refine");
    auto cons = check_consistency(c, t, &sx);
    if (cons.kind != Consistency::Kind::Consistent) {
      r.status = ExitCode::Inconsistent;
      r.diagnostic = "structure is inconsistent with the theory (bounds conflict at occurrence " +
                     std::to_string(cons.occ) + ")";
      r.ground.voc = t.voc;
      r.ground.domain = sx.domain;
      r.ground.sentences = {GNode::bot()};
    } else {
      c = finish_cmap(c, t, cfg.mode);
      timer.lap("cmap");
      if (cfg.dump_cmap) r.cmap_dump = dump(c, t);
      r.ground = ground_with_bounds(t, sx, c);
      timer.lap("ground");
    }
    if (cfg.share) {
      r.ground = apply_sharing(r.ground);
      timer.lap("share");
    }
    const GroundTheory& g = r.ground;
    r.stats.grounding_size = grounding_size(g);
    r.stats.sentences = static_cast<long long>(g.sentences.size());
    r.stats.rules = g.num_rules();
    r.stats.atoms = g.atoms.size();
    r.stats.instantiations = g.instantiations;

    if (cfg.dimacs) {
      if (g.num_rules() > 0) {
        r.status = ExitCode::DimacsWithRules;
        r.diagnostic = "DIMACS output requires a definition-free grounding";
        return r;
      }
      PropTheory p = to_propositional(g, sx);
      r.output = write_dimacs(p);
      r.stats.cnf_vars = p.num_vars();
      r.stats.cnf_clauses = static_cast<long long>(p.clauses.size());
      r.stats.recount = r.stats.grounding_size;
    } else {
      r.output = write_fog(g);
      r.stats.recount = grounding_size(read_fog(r.output, g.voc, g.domain));
    }
    timer.lap("emit");

    if (cfg.oracle_check) {
      try {
        auto eq = check_isigma_equivalence(tnf, g, sx);
        if (!eq.equivalent) {
          r.status = ExitCode::OracleMismatch;
          r.diagnostic = "grounding is not equivalent to the theory on this structure (" +
                         std::to_string(eq.theory_models) + " vs " + std::to_string(eq.ground_models) + " models)";
        } else if (!schedules_agree(tnf, sx, cfg.seed)) {
          r.status = ExitCode::OracleMismatch;
          r.diagnostic = "well-founded model depends on the derivation schedule";
        }
      } catch (const CapExceeded& e) {
        r.status = ExitCode::CapExceeded;
        r.diagnostic = std::string("oracle: ") + e.what();
      }
      timer.lap("oracle");
    }
  } catch (const EvalError& e) {
    return fail(ExitCode::StructureParse, std::string("structure: ") + e.what());
  } catch (const std::exception& e) {
    return fail(ExitCode::Internal, std::string("internal: ") + e.what());
  }
  return r;
}

RunResult run_files(const std::string& theory_path, const std::string& structure_path, const Config& cfg) {
  std::string theory, structure;
  try {
    theory = read_file(theory_path);
    structure = read_file(structure_path);
  } catch (const Error& e) {
    return fail(ExitCode::Io, e.what());
  }
  return run_text(theory, structure, cfg);
}

}  // namespace fog
