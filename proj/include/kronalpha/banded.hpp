#pragma once

#include <span>
#include <vector>

namespace kronalpha {

/// Symmetric banded matrix stored as a dense band, row by row:
/// entry (i,j) with |i-j| <= b lives at band[i*(2b+1) + (j-i+b)].
class BandedSpdMatrix {
 public:
  BandedSpdMatrix() = default;
  BandedSpdMatrix(int dim, int half_bandwidth);

  int dim() const { return dim_; }
  int half_bandwidth() const { return hbw_; }

  double at(int i, int j) const;  // 0 outside the band
  void set(int i, int j, double value);
  void add(int i, int j, double value);

  /// y = A x over contiguous storage; x and y must not alias.
  void matvec(const double* x, double* y) const;
  std::vector<double> matvec(std::span<const double> x) const;

 private:
  int dim_ = 0;
  int hbw_ = 0;
  std::vector<double> band_;
};

/// M + c*K for same-shape operands.
BandedSpdMatrix combine(const BandedSpdMatrix& mass, double c, const BandedSpdMatrix& stiffness);

/// Lower Cholesky factor of an SPD banded matrix, same half bandwidth.
class BandedCholeskyFactor {
 public:
  int dim() const { return dim_; }
  int half_bandwidth() const { return hbw_; }

  void solve_in_place(double* x) const;  // forward then back substitution
  void solve_lower_in_place(double* x) const;            // L y = x
  void solve_lower_transpose_in_place(double* x) const;  // L' y = x

 private:
  friend BandedCholeskyFactor factor(const BandedSpdMatrix&);
  int dim_ = 0;
  int hbw_ = 0;
  std::vector<double> low_;  // (i,j), j in [i-b, i]: low[i*(b+1) + (j-i+b)]
};

/// Banded Cholesky without pivoting; throws std::runtime_error on a
/// non-positive pivot (the matrix was not SPD).
BandedCholeskyFactor factor(const BandedSpdMatrix& a);

std::vector<double> solve_banded(const BandedCholeskyFactor& f, std::span<const double> rhs);

}  // namespace kronalpha
