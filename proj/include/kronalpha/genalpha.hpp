#pragma once

#include <string>

namespace kronalpha {

/// Which operator pair a time step uses: the unsplit left operator
/// M + eta*K, its Kronecker-product approximation on the left only, or
/// split operators on both sides (plain and modified right-hand side).
enum class SchemeKind {
  Unsplit,
  SplitLhs,
  SplitBoth,
  SplitBothMod,
};

const char* scheme_name(SchemeKind scheme);
SchemeKind scheme_from_name(const std::string& name);

/// The (alpha_m, alpha_f, gamma) triple of the generalized-alpha family.
/// from_rho_inf gives the second-order accurate one-parameter subfamily
/// with prescribed high-frequency dissipation rho_inf.
struct GenAlphaCoeffs {
  double alpha_m = 0.0;
  double alpha_f = 0.0;
  double gamma = 0.0;

  static GenAlphaCoeffs from_rho_inf(double rho_inf);

  // alpha_m >= alpha_f >= 1/2, the sufficient condition for an
  // amplification spectral radius bounded by one.
  bool satisfies_stability_condition() const {
    return alpha_m >= alpha_f && alpha_f >= 0.5;
  }
};

/// Time-step-bound parameters: the coefficient triple plus the step size
/// and the derived left/right operator shifts eta and zeta.
struct GenAlphaParams {
  double rho_inf = -1.0;  // < 0 when coeffs were given directly
  double alpha_m = 0.0;
  double alpha_f = 0.0;
  double gamma = 0.0;
  double tau = 0.0;
  double eta = 0.0;   // tau * gamma * alpha_f / alpha_m
  double zeta = 0.0;  // tau * alpha_f

  static GenAlphaParams from_rho_inf(double rho_inf, double tau);
  static GenAlphaParams from_coeffs(const GenAlphaCoeffs& coeffs, double tau);

  GenAlphaCoeffs coeffs() const { return {alpha_m, alpha_f, gamma}; }
};

}  // namespace kronalpha
