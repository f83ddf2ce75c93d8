#include "kronalpha/splines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kronalpha {

void BasisSpec1D::validate() const {
  if (degree < 1) throw std::invalid_argument("BasisSpec1D: degree must be >= 1");
  if (continuity < 0 || continuity > degree - 1)
    throw std::invalid_argument("BasisSpec1D: continuity must lie in [0, degree-1]");
  if (elements < 1) throw std::invalid_argument("BasisSpec1D: elements must be >= 1");
}

std::vector<double> make_open_knot_vector(const BasisSpec1D& spec) {
  spec.validate();
  const int p = spec.degree;
  const int mult = p - spec.continuity;
  std::vector<double> knots;
  knots.reserve(2 * (p + 1) + (spec.elements - 1) * mult);
  knots.insert(knots.end(), p + 1, 0.0);
  for (int b = 1; b < spec.elements; ++b) {
    const double x = static_cast<double>(b) / spec.elements;
    knots.insert(knots.end(), mult, x);
  }
  knots.insert(knots.end(), p + 1, 1.0);
  return knots;
}

namespace {

int find_span(const std::vector<double>& knots, int degree, double x) {
  // valid spans are [degree, last_basis], with x == right end assigned
  // to the last nonempty span
  const int last = static_cast<int>(knots.size()) - degree - 2;
  if (x >= knots[last + 1]) return last;
  auto it = std::upper_bound(knots.begin() + degree, knots.begin() + last + 1, x);
  return static_cast<int>(it - knots.begin()) - 1;
}

}  // namespace

void eval_basis(const std::vector<double>& knots, int degree, double x, BasisEvaluation& out) {
  if (degree < 0 || knots.size() < static_cast<size_t>(2 * degree + 2))
    throw std::invalid_argument("eval_basis: knot vector too short for degree");
  if (x < knots.front() || x > knots.back())
    throw std::domain_error("eval_basis: point outside the knot range");

  const int p = degree;
  const int span = find_span(knots, p, x);
  out.first = span - p;
  out.values.assign(p + 1, 0.0);
  out.derivatives.assign(p + 1, 0.0);

  // triangular recursion over the active span; zero-width spans
  // contribute nothing (0/0 := 0 convention)
  std::vector<double> left(p + 1), right(p + 1), lower(p + 1, 0.0);
  out.values[0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - knots[span + 1 - j];
    right[j] = knots[span + j] - x;
    if (j == p) std::copy(out.values.begin(), out.values.begin() + p, lower.begin());
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double den = right[r + 1] + left[j - r];
      const double temp = den != 0.0 ? out.values[r] / den : 0.0;
      out.values[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    out.values[j] = saved;
  }

  if (p == 0) return;
  // d/dx theta^p_j = p * (theta^{p-1}_j / (t_{j+p}-t_j)
  //                      - theta^{p-1}_{j+1} / (t_{j+p+1}-t_{j+1}));
  // lower[q] holds theta^{p-1}_{span-p+1+q}
  for (int r = 0; r <= p; ++r) {
    const int j = span - p + r;
    double d = 0.0;
    if (r > 0) {
      const double den = knots[j + p] - knots[j];
      if (den != 0.0) d += lower[r - 1] / den;
    }
    if (r < p) {
      const double den = knots[j + p + 1] - knots[j + 1];
      if (den != 0.0) d -= lower[r] / den;
    }
    out.derivatives[r] = p * d;
  }
}

BasisEvaluation eval_basis(const std::vector<double>& knots, int degree, double x) {
  BasisEvaluation out;
  eval_basis(knots, degree, x, out);
  return out;
}

std::vector<double> greville_points(const std::vector<double>& knots, int degree) {
  const int nbasis = static_cast<int>(knots.size()) - degree - 1;
  std::vector<double> pts(nbasis);
  for (int i = 0; i < nbasis; ++i) {
    double s = 0.0;
    for (int j = 1; j <= degree; ++j) s += knots[i + j];
    pts[i] = degree > 0 ? s / degree : 0.5 * (knots[i] + knots[i + 1]);
  }
  return pts;
}

}  // namespace kronalpha
