#include "kronalpha/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "kronalpha/spectral.hpp"

namespace kronalpha {

const char* study_name(StudyKind kind) {
  switch (kind) {
    case StudyKind::HConvergence: return "h_convergence";
    case StudyKind::TauConvergence: return "tau_convergence";
    case StudyKind::StabilitySweep: return "stability_sweep";
    case StudyKind::CostBenchmark: return "cost_benchmark";
    case StudyKind::Certify: return "certify";
  }
  return "?";
}

StudyKind study_from_name(const std::string& name) {
  if (name == "h_convergence") return StudyKind::HConvergence;
  if (name == "tau_convergence") return StudyKind::TauConvergence;
  if (name == "stability_sweep") return StudyKind::StabilitySweep;
  if (name == "cost_benchmark") return StudyKind::CostBenchmark;
  if (name == "certify") return StudyKind::Certify;
  throw std::invalid_argument("unknown study '" + name + "'");
}

void StudyConfig::validate() const {
  if (dim != 2 && dim != 3) throw std::invalid_argument("--d must be 2 or 3");
  if (degree < 1) throw std::invalid_argument("--p must be >= 1");
  if (continuity < 0 || continuity > degree - 1)
    throw std::invalid_argument("--k must lie in [0, p-1]");
  if (n_list.empty()) throw std::invalid_argument("--n requires at least one mesh size");
  for (int n : n_list)
    if (n < 2) throw std::invalid_argument("--n entries must be >= 2");
  for (double r : rho_list)
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("--rho entries must lie in [0, 1]");
  if (schemes.empty()) throw std::invalid_argument("--scheme requires at least one entry");

  const bool marches = kind != StudyKind::Certify;
  if (marches) {
    if (tau_list.empty()) throw std::invalid_argument("--tau is required for this study");
    for (double tau : tau_list) {
      if (!(tau > 0.0)) throw std::invalid_argument("--tau entries must be positive");
      const double ratio = final_time / tau;
      if (std::abs(std::llround(ratio) * tau - final_time) > 1e-9 * std::max(1.0, final_time))
        throw std::invalid_argument("--T must be an integer multiple of every --tau entry");
    }
    if (!(final_time > 0.0)) throw std::invalid_argument("--T is required and must be positive");
  }
}

const char* const kCsvHeader =
    "study,scheme,rho_inf,d,p,k,n,dof,tau,T,err_l2,err_grad_l2,spectral_radius_max,cert_pass,"
    "time_total_s,time_per_step_s";

std::string csv_line(const StudyRow& row) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%s,%s,%.12g,%d,%d,%d,%d,%lld,%.12g,%.12g,%.12g,%.12g,%.12g,%d,%.6g,%.6g",
                row.study.c_str(), row.scheme.c_str(), row.rho_inf, row.dim, row.p, row.k, row.n,
                row.dof, row.tau, row.final_time, row.err_l2, row.err_grad_l2,
                row.spectral_radius_max, row.cert_pass ? 1 : 0, row.time_total_s,
                row.time_per_step_s);
  return buf;
}

void write_csv(const std::vector<StudyRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) out << csv_line(row) << '\n';
}

double loglog_slope(std::span<const double> x, std::span<const double> y, int points) {
  const int n = static_cast<int>(x.size());
  int use = points > 0 ? std::min(points, n) : n;
  if (use < 2) throw std::invalid_argument("loglog_slope: need at least 2 points");
  const int start = n - use;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = start; i < n; ++i) {
    const double lx = std::log(std::max(x[i], 1e-300));
    const double ly = std::log(std::max(y[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (use * sxy - sx * sy) / (use * sxx - sx * sx);
}

namespace {

std::vector<BasisSpec1D> make_specs(const StudyConfig& cfg, int n) {
  std::vector<BasisSpec1D> specs(cfg.dim);
  for (auto& s : specs) s = {cfg.degree, cfg.continuity, n};
  return specs;
}

StudyRow base_row(const StudyConfig& cfg, SchemeKind scheme, double rho, int n, double tau) {
  StudyRow row;
  row.study = study_name(cfg.kind);
  row.scheme = scheme_name(scheme);
  row.rho_inf = rho;
  row.dim = cfg.dim;
  row.p = cfg.degree;
  row.k = cfg.continuity;
  row.n = n;
  row.dof = 1;
  for (int d = 0; d < cfg.dim; ++d) {
    BasisSpec1D s{cfg.degree, cfg.continuity, n};
    row.dof *= s.num_interior();
  }
  row.tau = tau;
  row.final_time = cfg.final_time;
  return row;
}

void append_cert(StudyRow& row, const StudyConfig& cfg, SchemeKind scheme, double rho, int n,
                 double tau) {
  const auto specs = make_specs(cfg, n);
  const double taus[1] = {tau};
  const SchemeKind schemes[1] = {scheme};
  const auto report =
      certify_stability(specs, GenAlphaCoeffs::from_rho_inf(rho), taus, schemes, Exec::Parallel);
  row.spectral_radius_max = report.max_radius;
  row.cert_pass = report.all_pass;
}

StudyRow run_one(const StudyConfig& cfg, SchemeKind scheme, double rho, int n, double tau) {
  StudyRow row = base_row(cfg, scheme, rho, n, tau);
  const auto specs = make_specs(cfg, n);
  HeatStepper stepper(specs, GenAlphaParams::from_rho_inf(rho, tau), scheme,
                      heat_manufactured(cfg.dim), cfg.init_mode, cfg.quad_points);
  RunSummary summary = stepper.run(cfg.final_time);
  const ErrorNorms err = error_norms(summary.final_state.u, summary.final_state.time,
                                     heat_manufactured(cfg.dim), specs, cfg.quad_points);
  row.err_l2 = err.l2;
  row.err_grad_l2 = err.grad_l2;
  row.time_total_s = summary.seconds_total;
  row.time_per_step_s = summary.seconds_per_step;
  append_cert(row, cfg, scheme, rho, n, tau);
  return row;
}

void append_slope_rows(std::vector<StudyRow>& rows, const StudyConfig& cfg, SchemeKind scheme,
                       double rho, std::span<const double> x, std::span<const double> l2,
                       std::span<const double> grad) {
  StudyRow row = base_row(cfg, scheme, rho, 0, 0.0);
  row.study = std::string(study_name(cfg.kind)) + ":slope";
  row.dof = 0;
  row.err_l2 = loglog_slope(x, l2);
  row.err_grad_l2 = loglog_slope(x, grad);
  rows.push_back(std::move(row));
}

std::vector<StudyRow> run_convergence(const StudyConfig& cfg, bool sweep_h) {
  std::vector<StudyRow> rows;
  for (SchemeKind scheme : cfg.schemes)
    for (double rho : cfg.rho_list) {
      std::vector<double> xs, l2s, grads;
      if (sweep_h) {
        for (int n : cfg.n_list) {
          StudyRow row = run_one(cfg, scheme, rho, n, cfg.tau_list.front());
          xs.push_back(1.0 / n);  // h, most refined last
          l2s.push_back(row.err_l2);
          grads.push_back(row.err_grad_l2);
          rows.push_back(std::move(row));
        }
      } else {
        for (double tau : cfg.tau_list) {
          StudyRow row = run_one(cfg, scheme, rho, cfg.n_list.front(), tau);
          xs.push_back(tau);
          l2s.push_back(row.err_l2);
          grads.push_back(row.err_grad_l2);
          rows.push_back(std::move(row));
        }
      }
      append_slope_rows(rows, cfg, scheme, rho, xs, l2s, grads);
    }
  return rows;
}

std::vector<StudyRow> run_stability(const StudyConfig& cfg) {
  std::vector<StudyRow> rows;
  for (SchemeKind scheme : cfg.schemes)
    for (double rho : cfg.rho_list)
      for (double tau : cfg.tau_list)
        rows.push_back(run_one(cfg, scheme, rho, cfg.n_list.front(), tau));
  return rows;
}

std::vector<StudyRow> run_cost(const StudyConfig& cfg) {
  std::vector<StudyRow> rows;
  for (SchemeKind scheme : cfg.schemes)
    for (double rho : cfg.rho_list) {
      std::vector<double> dofs, per_step;
      for (int n : cfg.n_list) {
        StudyRow row = base_row(cfg, scheme, rho, n, cfg.tau_list.front());
        const auto specs = make_specs(cfg, n);
        const auto t0 = std::chrono::steady_clock::now();
        HeatStepper stepper(specs, GenAlphaParams::from_rho_inf(rho, cfg.tau_list.front()), scheme,
                            heat_manufactured(cfg.dim), cfg.init_mode, cfg.quad_points);
        State state = stepper.initialize();
        for (int w = 0; w < 2; ++w) stepper.step(state);

        std::vector<double> samples;
        for (int rep = 0; rep < cfg.bench_reps; ++rep) {
          const auto tb = std::chrono::steady_clock::now();
          for (int s = 0; s < cfg.bench_steps; ++s) stepper.step(state);
          const auto te = std::chrono::steady_clock::now();
          samples.push_back(std::chrono::duration<double>(te - tb).count() / cfg.bench_steps);
        }
        std::sort(samples.begin(), samples.end());
        row.time_per_step_s = samples[samples.size() / 2];
        row.time_total_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        const ErrorNorms err = error_norms(state.u, state.time, heat_manufactured(cfg.dim), specs,
                                           cfg.quad_points);
        row.err_l2 = err.l2;
        row.err_grad_l2 = err.grad_l2;
        append_cert(row, cfg, scheme, rho, n, cfg.tau_list.front());
        dofs.push_back(static_cast<double>(row.dof));
        per_step.push_back(row.time_per_step_s);
        rows.push_back(std::move(row));
      }
      StudyRow slope = base_row(cfg, scheme, rho, 0, cfg.tau_list.front());
      slope.study = std::string(study_name(cfg.kind)) + ":slope";
      slope.dof = 0;
      slope.time_per_step_s = loglog_slope(dofs, per_step);
      rows.push_back(std::move(slope));
    }
  return rows;
}

std::vector<StudyRow> run_certify(const StudyConfig& cfg) {
  std::vector<double> taus = cfg.tau_list;
  if (taus.empty())
    for (int e = -6; e <= 6; ++e) taus.push_back(std::pow(10.0, e));
  std::vector<StudyRow> rows;
  for (double rho : cfg.rho_list) {
    const auto specs = make_specs(cfg, cfg.n_list.front());
    const auto report = certify_stability(specs, GenAlphaCoeffs::from_rho_inf(rho), taus,
                                          cfg.schemes, Exec::Parallel);
    for (const auto& entry : report.entries) {
      StudyRow row = base_row(cfg, entry.scheme, rho, cfg.n_list.front(), entry.tau);
      row.final_time = 0.0;
      row.spectral_radius_max = entry.max_radius;
      row.cert_pass = entry.pass;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

std::vector<StudyRow> run_study(const StudyConfig& config) {
  config.validate();
  switch (config.kind) {
    case StudyKind::HConvergence: return run_convergence(config, true);
    case StudyKind::TauConvergence: return run_convergence(config, false);
    case StudyKind::StabilitySweep: return run_stability(config);
    case StudyKind::CostBenchmark: return run_cost(config);
    case StudyKind::Certify: return run_certify(config);
  }
  throw std::logic_error("run_study: unreachable");
}

}  // namespace kronalpha
