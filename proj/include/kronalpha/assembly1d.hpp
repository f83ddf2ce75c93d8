#pragma once

#include <functional>
#include <vector>

#include "kronalpha/banded.hpp"
#include "kronalpha/splines.hpp"

namespace kronalpha {

/// Gauss-Legendre rule on [-1,1].
struct GaussRule {
  std::vector<double> points;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int npoints);

/// 1D mass matrix, entry(i,j) = int theta_i theta_j dx, assembled
/// element-wise with `quad_points` Gauss points per element (default
/// p+1, exact for the degree-2p integrand). With eliminate_boundary the
/// first and last basis functions are dropped (homogeneous Dirichlet).
BandedSpdMatrix assemble_mass_1d(const BasisSpec1D& spec, bool eliminate_boundary = true,
                                 int quad_points = 0);

/// 1D stiffness matrix, entry(i,j) = int theta_i' theta_j' dx.
BandedSpdMatrix assemble_stiffness_1d(const BasisSpec1D& spec, bool eliminate_boundary = true,
                                      int quad_points = 0);

/// 1D load vector, entry(i) = int theta_i f dx.
std::vector<double> assemble_load_1d(const BasisSpec1D& spec, const std::function<double(double)>& f,
                                     bool eliminate_boundary = true, int quad_points = 0);

/// Per-element tables of basis values/derivatives at mapped Gauss points,
/// shared by assembly, load vectors, and error norms.
struct BasisTable1D {
  BasisSpec1D spec;
  int quad_points = 0;
  std::vector<double> gauss_x;   // [element][q] mapped abscissae
  std::vector<double> gauss_w;   // [q] weights scaled by element size
  std::vector<double> values;    // [element][q][l], l = 0..p
  std::vector<double> derivs;    // same layout
  std::vector<int> first;        // [element] global index of first active fn

  int p() const { return spec.degree; }
  double value(int e, int q, int l) const {
    return values[(e * quad_points + q) * (spec.degree + 1) + l];
  }
  double deriv(int e, int q, int l) const {
    return derivs[(e * quad_points + q) * (spec.degree + 1) + l];
  }
  double point(int e, int q) const { return gauss_x[e * quad_points + q]; }
};

BasisTable1D tabulate_basis(const BasisSpec1D& spec, int quad_points);

}  // namespace kronalpha
