#include "kronalpha/cli.hpp"

#include <CLI11.hpp>

namespace kronalpha {

namespace {

void configure_app(CLI::App& app, StudyConfig& cfg, std::string& study,
                   std::vector<std::string>& scheme_names, std::string& init) {
  app.description(
      "Heat-equation solver studies: generalized-alpha time stepping with "
      "Kronecker-split operators on tensor-product B-spline spaces");
  app.add_option("--study", study,
                 "study kind: h_convergence | tau_convergence | stability_sweep | "
                 "cost_benchmark | certify")
      ->required();
  app.add_option("--d", cfg.dim, "space dimension (2 or 3)");
  app.add_option("--p", cfg.degree, "B-spline degree");
  app.add_option("--k", cfg.continuity, "continuity across elements (0..p-1)");
  app.add_option("--n", cfg.n_list, "elements per dimension (list)")->delimiter(',');
  app.add_option("--tau", cfg.tau_list, "time step size (list)")->delimiter(',');
  app.add_option("--T", cfg.final_time, "final time (integer multiple of every tau)");
  app.add_option("--rho", cfg.rho_list, "rho_infinity values (list, each in [0,1])")
      ->delimiter(',');
  app.add_option("--scheme", scheme_names,
                 "schemes: unsplit | split_lhs | split_both | split_both_mod | all")
      ->delimiter(',');
  app.add_option("--output", cfg.output_path, "CSV output path (default: stdout)");
  app.add_option("--quadrature-order", cfg.quad_points, "Gauss points per element override");
  app.add_option("--init", init, "initial condition treatment: projection | interpolation");
  app.add_option("--bench-steps", cfg.bench_steps, "steps per timing repetition (cost study)");
  app.add_option("--bench-reps", cfg.bench_reps, "timing repetitions, median reported");
}

}  // namespace

std::string cli_help_text() {
  StudyConfig cfg;
  std::string study, init;
  std::vector<std::string> schemes;
  CLI::App app;
  configure_app(app, cfg, study, schemes, init);
  return app.help();
}

StudyConfig parse_config(int argc, const char* const* argv) {
  StudyConfig cfg;
  std::string study;
  std::string init = "projection";
  std::vector<std::string> scheme_names;
  CLI::App app;
  configure_app(app, cfg, study, scheme_names, init);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw CliError(app.help(), 0);
  } catch (const CLI::ParseError& e) {
    throw CliError(e.what(), 1);
  }

  try {
    cfg.kind = study_from_name(study);
    if (init == "projection") {
      cfg.init_mode = InitMode::Projection;
    } else if (init == "interpolation") {
      cfg.init_mode = InitMode::Interpolation;
    } else {
      throw std::invalid_argument("--init must be 'projection' or 'interpolation'");
    }
    if (!scheme_names.empty()) {
      cfg.schemes.clear();
      for (const auto& name : scheme_names) {
        if (name == "all") {
          cfg.schemes = {SchemeKind::Unsplit, SchemeKind::SplitLhs, SchemeKind::SplitBoth,
                         SchemeKind::SplitBothMod};
          break;
        }
        cfg.schemes.push_back(scheme_from_name(name));
      }
    }
    if (cfg.kind != StudyKind::Certify && cfg.final_time == 0.0)
      throw std::invalid_argument("--T is required for this study");
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw CliError(e.what(), 1);
  }
  return cfg;
}

}  // namespace kronalpha
