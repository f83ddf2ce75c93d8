#include "kronalpha/genalpha.hpp"

#include <cmath>
#include <stdexcept>

namespace kronalpha {

const char* scheme_name(SchemeKind scheme) {
  switch (scheme) {
    case SchemeKind::Unsplit: return "unsplit";
    case SchemeKind::SplitLhs: return "split_lhs";
    case SchemeKind::SplitBoth: return "split_both";
    case SchemeKind::SplitBothMod: return "split_both_mod";
  }
  return "?";
}

SchemeKind scheme_from_name(const std::string& name) {
  if (name == "unsplit") return SchemeKind::Unsplit;
  if (name == "split_lhs") return SchemeKind::SplitLhs;
  if (name == "split_both") return SchemeKind::SplitBoth;
  if (name == "split_both_mod") return SchemeKind::SplitBothMod;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

GenAlphaCoeffs GenAlphaCoeffs::from_rho_inf(double rho_inf) {
  if (rho_inf < 0.0 || rho_inf > 1.0)
    throw std::invalid_argument("rho_inf must lie in [0, 1]");
  GenAlphaCoeffs c;
  c.alpha_m = 0.5 * (3.0 - rho_inf) / (1.0 + rho_inf);
  c.alpha_f = 1.0 / (1.0 + rho_inf);
  c.gamma = 0.5 + c.alpha_m - c.alpha_f;
  return c;
}

GenAlphaParams GenAlphaParams::from_coeffs(const GenAlphaCoeffs& coeffs, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  GenAlphaParams p;
  p.alpha_m = coeffs.alpha_m;
  p.alpha_f = coeffs.alpha_f;
  p.gamma = coeffs.gamma;
  p.tau = tau;
  p.eta = tau * coeffs.gamma * coeffs.alpha_f / coeffs.alpha_m;
  p.zeta = tau * coeffs.alpha_f;
  return p;
}

GenAlphaParams GenAlphaParams::from_rho_inf(double rho_inf, double tau) {
  GenAlphaParams p = from_coeffs(GenAlphaCoeffs::from_rho_inf(rho_inf), tau);
  p.rho_inf = rho_inf;
  return p;
}

}  // namespace kronalpha
