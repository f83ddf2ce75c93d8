#pragma once

// Independent test oracles: direct multi-dimensional element-loop
// assembly and dense one-step references. These deliberately avoid the
// Kronecker machinery under test.

#include <Eigen/Dense>

#include "kronalpha/genalpha.hpp"
#include "kronalpha/splines.hpp"

namespace kronalpha::oracles {

/// 2D mass matrix assembled by a plain element loop with tensor Gauss
/// quadrature, in lexicographic x-fastest numbering.
Eigen::MatrixXd assemble_mass_2d_dense(const BasisSpec1D& sx, const BasisSpec1D& sy,
                                       bool eliminate = true);

/// 2D stiffness (grad-grad) matrix assembled the same way.
Eigen::MatrixXd assemble_stiffness_2d_dense(const BasisSpec1D& sx, const BasisSpec1D& sy,
                                            bool eliminate = true);

/// One generalized-alpha step with dense direct solves. `lhs` is the
/// dense left operator (A or its split approximation), `rhs_v_op` the
/// dense operator multiplying V_n on the right-hand side.
void dense_step(const Eigen::MatrixXd& lhs, const Eigen::MatrixXd& stiffness,
                const Eigen::MatrixXd& rhs_v_op, const GenAlphaParams& params,
                const Eigen::VectorXd& load, Eigen::VectorXd& u, Eigen::VectorXd& v);

/// Dense symmetric solve oracle for banded tests.
Eigen::VectorXd dense_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs);

}  // namespace kronalpha::oracles
