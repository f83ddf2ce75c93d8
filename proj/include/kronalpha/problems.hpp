#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kronalpha/assembly1d.hpp"
#include "kronalpha/kronops.hpp"
#include "kronalpha/splines.hpp"

namespace kronalpha {

/// Exact solution, forcing, and data for a heat-equation test problem on
/// (0,1)^d with homogeneous Dirichlet boundary.
struct ManufacturedProblem {
  int dim = 2;
  std::string name;

  std::function<double(std::span<const double>, double)> value;               // u(x,t)
  std::function<double(std::span<const double>, double, int)> partial;        // du/dx_dir
  std::function<double(std::span<const double>, double)> forcing;             // f = du/dt - lap(u)
  bool zero_forcing = true;

  // When set, f(x,t) = forcing_time(t) * prod_d forcing_space[d](x_d),
  // which lets load vectors be assembled as outer products of 1D loads.
  std::function<double(double)> forcing_time;
  std::vector<std::function<double(double)>> forcing_space;
  bool separable_forcing() const { return static_cast<bool>(forcing_time); }
};

/// u = e^{-d pi^2 t} prod sin(pi x_d); an exact homogeneous heat solution
/// (f = 0). Supported for d = 2, 3.
ManufacturedProblem heat_manufactured(int dim);

/// The (1+t)-scaled variant with nonzero separable forcing
/// f = e^{-d pi^2 t} prod sin(pi x_d); exercises the load-vector path.
ManufacturedProblem forced_manufactured(int dim);

struct ErrorNorms {
  double l2 = 0.0;       // ||u(t) - u_h(t)||_L2
  double grad_l2 = 0.0;  // ||grad u(t) - grad u_h(t)||_L2
};

/// Tensor Gauss quadrature of the errors (default p+2 points per element
/// per dimension). Coefficients are over the Dirichlet-eliminated
/// interior numbering.
ErrorNorms error_norms(const TensorField& coeffs, double t, const ManufacturedProblem& problem,
                       std::span<const BasisSpec1D> specs, int quad_points = 0,
                       Exec exec = Exec::Parallel);

/// Dirichlet-eliminated load vector F_j(t) = int Theta_j f(.,t) dx by
/// tensor quadrature; uses the separable outer-product path when the
/// problem provides one.
TensorField load_vector(const ManufacturedProblem& problem, std::span<const BasisSpec1D> specs,
                        double t, int quad_points = 0, Exec exec = Exec::Parallel);

/// General tensor-quadrature assembly, ignoring any separable structure
/// (kept callable as the cross-check for the fast path).
TensorField load_vector_general(const ManufacturedProblem& problem,
                                std::span<const BasisSpec1D> specs, double t, int quad_points = 0,
                                Exec exec = Exec::Parallel);

/// b_j = int Theta_j g dx over the Dirichlet-eliminated basis (the worker
/// behind load vectors and L2-projection right-hand sides).
TensorField assemble_functional(const std::function<double(std::span<const double>)>& g,
                                std::span<const BasisSpec1D> specs, int quad_points = 0,
                                Exec exec = Exec::Parallel);

}  // namespace kronalpha
