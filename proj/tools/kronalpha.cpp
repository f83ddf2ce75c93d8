#include <fstream>
#include <iostream>

#include "kronalpha/cli.hpp"

int main(int argc, char** argv) {
  using namespace kronalpha;
  StudyConfig cfg;
  try {
    cfg = parse_config(argc, argv);
  } catch (const CliError& e) {
    (e.exit_code == 0 ? std::cout : std::cerr) << e.what() << "\n";
    return e.exit_code;
  }

  try {
    const std::vector<StudyRow> rows = run_study(cfg);
    if (cfg.output_path.empty()) {
      write_csv(rows, std::cout);
    } else {
      std::ofstream out(cfg.output_path);
      if (!out) {
        std::cerr << "cannot open output file '" << cfg.output_path << "'\n";
        return 1;
      }
      write_csv(rows, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
