#pragma once

#include <vector>

namespace kronalpha {

/// A 1D B-spline space on [0,1]: uniform elements, degree p, and C^k
/// continuity across the interior breakpoints (interior knot
/// multiplicity p-k, open knot vector at the ends).
struct BasisSpec1D {
  int degree = 2;      // p >= 1
  int continuity = 1;  // k in [0, p-1]
  int elements = 1;    // n >= 1 uniform elements

  void validate() const;  // throws std::invalid_argument

  int num_basis() const { return elements * (degree - continuity) + continuity + 1; }
  // functions left after eliminating the two boundary (interpolatory) ones
  int num_interior() const { return num_basis() - 2; }
  double element_size() const { return 1.0 / elements; }
};

/// Open knot vector for the spec: boundary knots repeated p+1 times,
/// uniform interior breakpoints repeated p-k times.
std::vector<double> make_open_knot_vector(const BasisSpec1D& spec);

/// Values and first derivatives of the degree+1 basis functions active
/// on the span containing x. Index `first` is the global index of the
/// first active function; entry l corresponds to function first + l.
struct BasisEvaluation {
  int first = 0;
  std::vector<double> values;
  std::vector<double> derivatives;
};

/// Evaluate by the local triangular de Boor scheme on the active span.
/// x must lie in [knots.front(), knots.back()]; x at the right end is
/// assigned to the last nonempty span.
BasisEvaluation eval_basis(const std::vector<double>& knots, int degree, double x);
void eval_basis(const std::vector<double>& knots, int degree, double x, BasisEvaluation& out);

/// Greville abscissae (knot averages), one per basis function.
std::vector<double> greville_points(const std::vector<double>& knots, int degree);

}  // namespace kronalpha
