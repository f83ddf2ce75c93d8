#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "kronalpha/genalpha.hpp"
#include "kronalpha/kronops.hpp"
#include "kronalpha/problems.hpp"
#include "kronalpha/spectral.hpp"

namespace kronalpha {

/// Paired coefficient fields: U approximates u, V approximates du/dt.
struct State {
  double time = 0.0;
  TensorField u;
  TensorField v;
};

enum class InitMode { Projection, Interpolation };

struct RunSummary {
  State final_state;
  int steps = 0;
  double seconds_total = 0.0;    // includes setup and initialization
  double seconds_per_step = 0.0; // stepping loop only
};

/// Advances (U, V) with the generalized-alpha method in one of the four
/// scheme variants. Operators are assembled once per instance; a step is
/// a sequential state transition whose inner kernels are data-parallel.
class HeatStepper {
 public:
  HeatStepper(std::vector<BasisSpec1D> specs, GenAlphaParams params, SchemeKind scheme,
              ManufacturedProblem problem, InitMode init_mode = InitMode::Projection,
              int quad_points = 0, Exec exec = Exec::Parallel);

  /// U_0 by L2 projection (or Greville interpolation) of u(.,0);
  /// V_0 solves M V_0 = F_0 - K U_0 exactly (M is a pure tensor term).
  State initialize() const;

  void step(State& state);

  /// N = T/tau steps from initialize(); T/tau must be integral.
  RunSummary run(double final_time);

  const std::vector<BasisSpec1D>& specs() const { return specs_; }
  const GenAlphaParams& params() const { return params_; }
  SchemeKind scheme() const { return scheme_; }
  const KronOperator& mass() const { return mass_; }
  const KronOperator& stiffness() const { return stiffness_; }
  int dof_count() const;

  /// sqrt(u' M u), the discrete L2 energy of a coefficient field.
  double energy_norm(const TensorField& coeffs) const;

 private:
  TensorField load_at(double t) const;

  std::vector<BasisSpec1D> specs_;
  GenAlphaParams params_;
  SchemeKind scheme_;
  ManufacturedProblem problem_;
  InitMode init_mode_;
  int quad_points_;
  Exec exec_;

  KronOperator mass_;       // single pure tensor term
  KronOperator stiffness_;  // Kronecker sum, term d carries K in slot d
  KronTerm lhs_split_;      // prod (M_d + eta K_d)
  KronTerm rhs_split_;      // prod (M_d + zeta K_d), SplitBoth only
  std::unique_ptr<KronTermSolver> mass_solver_;
  std::unique_ptr<KronTermSolver> lhs_solver_;       // split schemes
  std::unique_ptr<FastDiagSolver> unsplit_solver_;   // exact, Unsplit only

  TensorField rhs_, scratch_;  // step workspace
};

}  // namespace kronalpha
