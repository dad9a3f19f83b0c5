#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fog/bounds.hpp"
#include "fog/ground.hpp"

namespace fog {

enum class Mode { Full, Nb, Bu, Mn, R };
std::optional<Mode> parse_mode(const std::string& s);
const char* to_string(Mode m);

enum class ExitCode : int {
  Ok = 0,
  Internal = 1,
  Usage = 2,
  Io = 3,
  TheoryParse = 4,
  StructureParse = 5,
  IllFormedDefinition = 6,
  Inconsistent = 7,
  DimacsWithRules = 8,
  OracleMismatch = 9,
  CapExceeded = 10
};

struct Config {
  Mode mode = Mode::R;
  int max_refine_factor = 4;
  int max_bdd_nodes = 4;
  bool share = false;
  bool push_quantifiers = false;
  bool dimacs = false;
  bool oracle_check = false;
  bool dump_cmap = false;
  uint64_t seed = 0;
};

struct Stats {
  long long grounding_size = 0;
  long long recount = 0;  // grounding_size of the emitted file read back (fog output)
  long long sentences = 0;
  long long rules = 0;
  long long atoms = 0;
  long long instantiations = 0;
  int occurrences = 0;
  int materialized = 0;
  RefineStats refine;
  int cnf_vars = 0;
  long long cnf_clauses = 0;
  std::vector<std::pair<std::string, double>> times_ms;

  std::string to_string() const;
};

struct RunResult {
  ExitCode status = ExitCode::Ok;
  std::string diagnostic;  // one line, empty on success
  std::string output;      // .fog or DIMACS text
  std::string cmap_dump;
  Stats stats;
  GroundTheory ground;
};

// The c-map a mode grounds with, already closed, bottom-up and tolerant as the mode requires.
CMap build_cmap(const Theory& tnf, Mode mode, const Config& cfg, const FiniteStructure& s,
                RefineStats* stats = nullptr);

RunResult run_text(const std::string& theory, const std::string& structure, const Config& cfg);
// Reads the files; I/O failures map to ExitCode::Io.
RunResult run_files(const std::string& theory_path, const std::string& structure_path, const Config& cfg);

}  // namespace fog
