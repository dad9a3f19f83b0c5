#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "fog/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fogrnd: ground an FO(ID) theory over a finite input structure"};
  std::string theory, structure, output = "-", mode = "r";
  fog::Config cfg;
  bool stats = false;
  app.add_option("--theory", theory, "theory file")->required();
  app.add_option("--structure", structure, "input structure file")->required();
  app.add_option("--mode", mode, "full | nb | bu | mn | r")
      ->check(CLI::IsMember({"full", "nb", "bu", "mn", "r"}))
      ->capture_default_str();
  app.add_option("--max-refine-factor", cfg.max_refine_factor, "refinement budget per subformula")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--max-bdd-nodes", cfg.max_bdd_nodes, "node limit per bound (mode mn)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_flag("--share", cfg.share, "replace repeated ground subformulas by fresh atoms");
  app.add_flag("--push-quantifiers", cfg.push_quantifiers, "move quantifiers inward before grounding");
  app.add_flag("--dimacs", cfg.dimacs, "emit CNF in DIMACS format");
  app.add_flag("--stats", stats, "print statistics to stderr");
  app.add_flag("--oracle-check", cfg.oracle_check, "verify the grounding by brute force (small inputs)");
  app.add_flag("--dump-cmap", cfg.dump_cmap, "print the bounds used for grounding to stderr");
  app.add_option("--seed", cfg.seed, "seed for the randomized checks of --oracle-check");
  app.add_option("-o,--output", output, "output file, - for stdout")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(fog::ExitCode::Usage);
  }
  cfg.mode = *fog::parse_mode(mode);

  fog::RunResult r = fog::run_files(theory, structure, cfg);
  if (!r.cmap_dump.empty()) std::cerr << r.cmap_dump;
  if (!r.output.empty()) {
    if (output == "-") {
      std::cout << r.output;
    } else {
      std::ofstream out(output, std::ios::binary);
      out << r.output;
      if (!out) {
        std::cerr << "fogrnd: cannot write " << output << "\n";
        return static_cast<int>(fog::ExitCode::Io);
      }
    }
  }
  if (stats) std::cerr << r.stats.to_string();
  if (!r.diagnostic.empty()) std::cerr << "fogrnd: " << r.diagnostic << "\n";
  return static_cast<int>(r.status);
}
