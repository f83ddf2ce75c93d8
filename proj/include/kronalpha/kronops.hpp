#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kronalpha/banded.hpp"

namespace kronalpha {

/// Kernel execution variant. Parallel runs the OpenMP fiber loops;
/// Serial is the plain reference implementation kept for testing and
/// benchmarking. Both produce bitwise-identical results.
enum class Exec { Serial, Parallel };

/// Coefficients on a tensor-product index grid, stored lexicographically
/// with dimension 0 (x) fastest: entry (i0,i1,i2) at i0 + m0*(i1 + m1*i2).
struct TensorField {
  std::vector<int> dims;
  std::vector<double> data;

  TensorField() = default;
  explicit TensorField(std::vector<int> dims_);

  int size() const { return static_cast<int>(data.size()); }
  int dim_count() const { return static_cast<int>(dims.size()); }
};

/// coeff * (F[0] x F[1] x ...), factor k acting along dimension k.
struct KronTerm {
  double coeff = 1.0;
  std::vector<BandedSpdMatrix> factors;
};

/// Sum of Kronecker terms sharing per-dimension sizes.
struct KronOperator {
  std::vector<KronTerm> terms;

  int dim_count() const { return terms.empty() ? 0 : static_cast<int>(terms[0].factors.size()); }
  std::vector<int> dims() const;
};

/// Sum-factorized matvec: each banded factor is applied along its own
/// dimension's fibers. O(p*N) per term.
TensorField kron_matvec(const KronOperator& op, const TensorField& u, Exec exec = Exec::Parallel);
TensorField kron_matvec(const KronTerm& term, const TensorField& u, Exec exec = Exec::Parallel);

/// Adds op*u into out (fixed term order, deterministic).
void kron_matvec_accumulate(const KronOperator& op, const TensorField& u, TensorField& out,
                            double scale, Exec exec);

/// Pre-factorized pure tensor-product operator; solve sweeps banded
/// Cholesky solves dimension by dimension over all fibers. O(p^2*N).
class KronTermSolver {
 public:
  explicit KronTermSolver(const KronTerm& term);

  TensorField solve(const TensorField& rhs, Exec exec = Exec::Parallel) const;
  void solve_in_place(TensorField& x, Exec exec = Exec::Parallel) const;

 private:
  double coeff_ = 1.0;
  std::vector<BandedCholeskyFactor> factors_;
  std::vector<int> dims_;
};

/// The exact difference between the separable product operator
/// prod_d (M_d + eta K_d) and M + eta K. In 2D the single eta^2 term;
/// in 3D the three eta^2 pairwise terms plus the eta^3 triple term.
/// `mass` must be the pure tensor mass term and `stiffness` the
/// Kronecker-sum stiffness (term d carrying K in slot d).
KronOperator splitting_defect(const KronOperator& mass, const KronOperator& stiffness, double eta);

/// Dense expansion in the global lexicographic numbering (test oracle
/// and small-scale reference solves). Guarded to N <= 10^4.
Eigen::MatrixXd dense_expand(const KronOperator& op);
Eigen::MatrixXd dense_expand(const KronTerm& term);

/// Applies a dense matrix (or its transpose) along one dimension of a
/// field. Used by the tensor-eigenbasis solver.
void apply_dense_along_dim(const Eigen::MatrixXd& a, bool transpose, int dim,
                           const TensorField& in, TensorField& out);

}  // namespace kronalpha
