#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kronalpha/genalpha.hpp"
#include "kronalpha/timestepper.hpp"

namespace kronalpha {

enum class StudyKind {
  HConvergence,
  TauConvergence,
  StabilitySweep,
  CostBenchmark,
  Certify,
};

const char* study_name(StudyKind kind);
StudyKind study_from_name(const std::string& name);

/// Fully deterministic study description (no seeds anywhere).
struct StudyConfig {
  StudyKind kind = StudyKind::HConvergence;
  int dim = 2;
  int degree = 2;
  int continuity = 1;
  std::vector<int> n_list = {64};
  std::vector<double> tau_list;
  double final_time = 0.0;
  std::vector<double> rho_list = {0.5};
  std::vector<SchemeKind> schemes = {SchemeKind::SplitLhs};
  std::string output_path;  // empty = stdout
  int quad_points = 0;      // 0 = per-module defaults
  InitMode init_mode = InitMode::Projection;
  int bench_steps = 10;     // steps per timing repetition (cost study)
  int bench_reps = 5;       // timing repetitions, median taken

  void validate() const;  // throws std::invalid_argument naming the field
};

/// One CSV row. Slope summaries reuse the same schema with
/// study = "<study>:slope" and the fitted slopes in the error columns.
struct StudyRow {
  std::string study;
  std::string scheme;
  double rho_inf = 0.0;
  int dim = 0;
  int p = 0;
  int k = 0;
  int n = 0;
  long long dof = 0;
  double tau = 0.0;
  double final_time = 0.0;
  double err_l2 = 0.0;
  double err_grad_l2 = 0.0;
  double spectral_radius_max = 0.0;
  bool cert_pass = false;
  double time_total_s = 0.0;
  double time_per_step_s = 0.0;
};

extern const char* const kCsvHeader;
std::string csv_line(const StudyRow& row);

std::vector<StudyRow> run_study(const StudyConfig& config);
void write_csv(const std::vector<StudyRow>& rows, std::ostream& out);

/// Least-squares slope of log(y) against log(x), most-refined points
/// last; fits the last `points` entries (at least 3, clamped to size).
double loglog_slope(std::span<const double> x, std::span<const double> y, int points = 0);

}  // namespace kronalpha
