#include "kronalpha/timestepper.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "kronalpha/assembly1d.hpp"

namespace kronalpha {

namespace {

void axpy(TensorField& y, double a, const TensorField& x, Exec exec) {
  const long long n = y.size();
  double* yd = y.data.data();
  const double* xd = x.data.data();
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (long long i = 0; i < n; ++i) yd[i] += a * xd[i];
}

}  // namespace

HeatStepper::HeatStepper(std::vector<BasisSpec1D> specs, GenAlphaParams params, SchemeKind scheme,
                         ManufacturedProblem problem, InitMode init_mode, int quad_points,
                         Exec exec)
    : specs_(std::move(specs)),
      params_(params),
      scheme_(scheme),
      problem_(std::move(problem)),
      init_mode_(init_mode),
      quad_points_(quad_points),
      exec_(exec) {
  const int d = static_cast<int>(specs_.size());
  if (d != problem_.dim) throw std::invalid_argument("HeatStepper: spec/problem dimension mismatch");

  std::vector<BandedSpdMatrix> mass1, stiff1;
  for (const auto& spec : specs_) {
    mass1.push_back(assemble_mass_1d(spec, true, quad_points_));
    stiff1.push_back(assemble_stiffness_1d(spec, true, quad_points_));
  }

  KronTerm mass_term;
  for (int k = 0; k < d; ++k) mass_term.factors.push_back(mass1[k]);
  mass_.terms.push_back(mass_term);
  for (int k = 0; k < d; ++k) {
    KronTerm kt;
    for (int j = 0; j < d; ++j) kt.factors.push_back(j == k ? stiff1[j] : mass1[j]);
    stiffness_.terms.push_back(std::move(kt));
  }
  for (int k = 0; k < d; ++k) {
    lhs_split_.factors.push_back(combine(mass1[k], params_.eta, stiff1[k]));
    rhs_split_.factors.push_back(combine(mass1[k], params_.zeta, stiff1[k]));
  }

  mass_solver_ = std::make_unique<KronTermSolver>(mass_term);
  if (scheme_ == SchemeKind::Unsplit) {
    std::vector<GenEigenDecomp1D> decomps;
    for (int k = 0; k < d; ++k) decomps.push_back(generalized_eig_1d(stiff1[k], mass1[k]));
    unsplit_solver_ = std::make_unique<FastDiagSolver>(decomps, 1.0, params_.eta);
  } else {
    lhs_solver_ = std::make_unique<KronTermSolver>(lhs_split_);
  }

  std::vector<int> dims;
  for (const auto& spec : specs_) dims.push_back(spec.num_interior());
  rhs_ = TensorField(dims);
  scratch_ = TensorField(dims);
}

int HeatStepper::dof_count() const {
  int n = 1;
  for (const auto& spec : specs_) n *= spec.num_interior();
  return n;
}

TensorField HeatStepper::load_at(double t) const {
  return load_vector(problem_, specs_, t, quad_points_, exec_);
}

State HeatStepper::initialize() const {
  const int d = static_cast<int>(specs_.size());
  State state;
  state.time = 0.0;

  if (init_mode_ == InitMode::Projection) {
    TensorField b = assemble_functional(
        [&](std::span<const double> x) { return problem_.value(x, 0.0); }, specs_, quad_points_,
        exec_);
    state.u = mass_solver_->solve(b, exec_);
  } else {
    // Greville collocation: boundary coefficients vanish with u_D = 0,
    // interior ones solve the per-direction interpolation systems
    std::vector<Eigen::MatrixXd> col_inv;
    std::vector<std::vector<double>> grev_int;
    std::vector<int> dims;
    for (const auto& spec : specs_) {
      const auto knots = make_open_knot_vector(spec);
      const auto grev = greville_points(knots, spec.degree);
      const int m = spec.num_interior();
      dims.push_back(m);
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m, m);
      BasisEvaluation ev;
      for (int i = 0; i < m; ++i) {
        eval_basis(knots, spec.degree, grev[i + 1], ev);
        for (int l = 0; l <= spec.degree; ++l) {
          const int j = ev.first + l - 1;
          if (j >= 0 && j < m) c(i, j) = ev.values[l];
        }
      }
      col_inv.push_back(c.partialPivLu().inverse());
      grev_int.emplace_back(grev.begin() + 1, grev.end() - 1);
    }
    TensorField vals(dims);
    for (long long idx = 0; idx < vals.size(); ++idx) {
      double pt[3] = {0, 0, 0};
      long long rest = idx;
      for (int k = 0; k < d; ++k) {
        pt[k] = grev_int[k][rest % dims[k]];
        rest /= dims[k];
      }
      vals.data[idx] = problem_.value(std::span<const double>(pt, d), 0.0);
    }
    TensorField tmp(dims);
    for (int k = 0; k < d; ++k) {
      apply_dense_along_dim(col_inv[k], false, k, vals, tmp);
      std::swap(vals, tmp);
    }
    state.u = std::move(vals);
  }

  // V_0 solves M V_0 = F_0 - K U_0 (M is one tensor term, solved exactly)
  TensorField rhs0 = load_at(0.0);
  kron_matvec_accumulate(stiffness_, state.u, rhs0, -1.0, exec_);
  state.v = mass_solver_->solve(rhs0, exec_);
  return state;
}

void HeatStepper::step(State& state) {
  const GenAlphaParams& p = params_;
  const double t_alpha = state.time + p.alpha_f * p.tau;

  if (problem_.zero_forcing) {
    std::fill(rhs_.data.begin(), rhs_.data.end(), 0.0);
  } else {
    rhs_ = load_at(t_alpha);
  }

  switch (scheme_) {
    case SchemeKind::Unsplit:
    case SchemeKind::SplitLhs:
      // r = F - K (U + zeta V) - M V
      scratch_ = state.u;
      axpy(scratch_, p.zeta, state.v, exec_);
      kron_matvec_accumulate(stiffness_, scratch_, rhs_, -1.0, exec_);
      kron_matvec_accumulate(mass_, state.v, rhs_, -1.0, exec_);
      break;
    case SchemeKind::SplitBoth: {
      kron_matvec_accumulate(stiffness_, state.u, rhs_, -1.0, exec_);
      KronOperator btilde;
      btilde.terms.push_back(rhs_split_);
      kron_matvec_accumulate(btilde, state.v, rhs_, -1.0, exec_);
      break;
    }
    case SchemeKind::SplitBothMod: {
      kron_matvec_accumulate(stiffness_, state.u, rhs_, -1.0, exec_);
      KronOperator atilde;
      atilde.terms.push_back(lhs_split_);
      kron_matvec_accumulate(atilde, state.v, rhs_, -p.alpha_m / p.gamma, exec_);
      kron_matvec_accumulate(mass_, state.v, rhs_, -(p.gamma - p.alpha_m) / p.gamma, exec_);
      break;
    }
  }

  TensorField delta_v = scheme_ == SchemeKind::Unsplit ? unsplit_solver_->solve(rhs_)
                                                       : lhs_solver_->solve(rhs_, exec_);
  const double inv_am = 1.0 / p.alpha_m;
  const long long n = delta_v.size();
#pragma omp parallel for schedule(static) if (exec_ == Exec::Parallel)
  for (long long i = 0; i < n; ++i) delta_v.data[i] *= inv_am;

  // U_{n+1} = U_n + tau V_n + tau gamma dV;  V_{n+1} = V_n + dV
  axpy(state.u, p.tau, state.v, exec_);
  axpy(state.u, p.tau * p.gamma, delta_v, exec_);
  axpy(state.v, 1.0, delta_v, exec_);
  state.time += p.tau;
}

RunSummary HeatStepper::run(double final_time) {
  const double ratio = final_time / params_.tau;
  const long long nsteps = std::llround(ratio);
  if (nsteps < 0 || std::abs(nsteps * params_.tau - final_time) > 1e-9 * std::max(1.0, final_time))
    throw std::invalid_argument("run: final_time must be an integer multiple of tau");

  const auto t0 = std::chrono::steady_clock::now();
  RunSummary summary;
  summary.final_state = initialize();
  const auto t1 = std::chrono::steady_clock::now();
  for (long long i = 0; i < nsteps; ++i) step(summary.final_state);
  const auto t2 = std::chrono::steady_clock::now();

  summary.steps = static_cast<int>(nsteps);
  summary.seconds_total = std::chrono::duration<double>(t2 - t0).count();
  summary.seconds_per_step =
      nsteps > 0 ? std::chrono::duration<double>(t2 - t1).count() / nsteps : 0.0;
  return summary;
}

double HeatStepper::energy_norm(const TensorField& coeffs) const {
  const TensorField mu = kron_matvec(mass_, coeffs, exec_);
  double s = 0.0;
  for (long long i = 0; i < mu.size(); ++i) s += mu.data[i] * coeffs.data[i];
  return std::sqrt(std::max(0.0, s));
}

}  // namespace kronalpha
