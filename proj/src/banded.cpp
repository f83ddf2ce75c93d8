#include "kronalpha/banded.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace kronalpha {

BandedSpdMatrix::BandedSpdMatrix(int dim, int half_bandwidth)
    : dim_(dim), hbw_(half_bandwidth), band_(static_cast<size_t>(dim) * (2 * half_bandwidth + 1), 0.0) {
  if (dim < 1 || half_bandwidth < 0) throw std::invalid_argument("BandedSpdMatrix: bad shape");
}

double BandedSpdMatrix::at(int i, int j) const {
  if (std::abs(i - j) > hbw_) return 0.0;
  return band_[static_cast<size_t>(i) * (2 * hbw_ + 1) + (j - i + hbw_)];
}

void BandedSpdMatrix::set(int i, int j, double value) {
  assert(std::abs(i - j) <= hbw_);
  band_[static_cast<size_t>(i) * (2 * hbw_ + 1) + (j - i + hbw_)] = value;
}

void BandedSpdMatrix::add(int i, int j, double value) {
  assert(std::abs(i - j) <= hbw_);
  band_[static_cast<size_t>(i) * (2 * hbw_ + 1) + (j - i + hbw_)] += value;
}

void BandedSpdMatrix::matvec(const double* x, double* y) const {
  const int w = 2 * hbw_ + 1;
  for (int i = 0; i < dim_; ++i) {
    const int j0 = std::max(0, i - hbw_);
    const int j1 = std::min(dim_ - 1, i + hbw_);
    const double* row = band_.data() + static_cast<size_t>(i) * w + hbw_ - i;
    double acc = 0.0;
    for (int j = j0; j <= j1; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

std::vector<double> BandedSpdMatrix::matvec(std::span<const double> x) const {
  std::vector<double> y(dim_);
  matvec(x.data(), y.data());
  return y;
}

BandedSpdMatrix combine(const BandedSpdMatrix& mass, double c, const BandedSpdMatrix& stiffness) {
  if (mass.dim() != stiffness.dim() || mass.half_bandwidth() != stiffness.half_bandwidth())
    throw std::invalid_argument("combine: dimension or bandwidth mismatch");
  BandedSpdMatrix out(mass.dim(), mass.half_bandwidth());
  const int b = mass.half_bandwidth();
  for (int i = 0; i < mass.dim(); ++i)
    for (int j = std::max(0, i - b); j <= std::min(mass.dim() - 1, i + b); ++j)
      out.set(i, j, mass.at(i, j) + c * stiffness.at(i, j));
  return out;
}

BandedCholeskyFactor factor(const BandedSpdMatrix& a) {
  const int m = a.dim();
  const int b = a.half_bandwidth();
  BandedCholeskyFactor f;
  f.dim_ = m;
  f.hbw_ = b;
  f.low_.assign(static_cast<size_t>(m) * (b + 1), 0.0);
  auto low = [&](int i, int j) -> double& {
    return f.low_[static_cast<size_t>(i) * (b + 1) + (j - i + b)];
  };
  for (int j = 0; j < m; ++j) {
    double d = a.at(j, j);
    for (int k = std::max(0, j - b); k < j; ++k) d -= low(j, k) * low(j, k);
    if (!(d > 0.0)) throw std::runtime_error("factor: non-positive pivot, matrix is not SPD");
    const double ljj = std::sqrt(d);
    low(j, j) = ljj;
    for (int i = j + 1; i <= std::min(m - 1, j + b); ++i) {
      double s = a.at(i, j);
      for (int k = std::max(0, i - b); k < j; ++k) s -= low(i, k) * low(j, k);
      low(i, j) = s / ljj;
    }
  }
  return f;
}

void BandedCholeskyFactor::solve_lower_in_place(double* x) const {
  const int m = dim_;
  const int b = hbw_;
  auto low = [&](int i, int j) { return low_[static_cast<size_t>(i) * (b + 1) + (j - i + b)]; };
  for (int i = 0; i < m; ++i) {
    double s = x[i];
    for (int k = std::max(0, i - b); k < i; ++k) s -= low(i, k) * x[k];
    x[i] = s / low(i, i);
  }
}

void BandedCholeskyFactor::solve_lower_transpose_in_place(double* x) const {
  const int m = dim_;
  const int b = hbw_;
  auto low = [&](int i, int j) { return low_[static_cast<size_t>(i) * (b + 1) + (j - i + b)]; };
  for (int i = m - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k <= std::min(m - 1, i + b); ++k) s -= low(k, i) * x[k];
    x[i] = s / low(i, i);
  }
}

void BandedCholeskyFactor::solve_in_place(double* x) const {
  solve_lower_in_place(x);
  solve_lower_transpose_in_place(x);
}

std::vector<double> solve_banded(const BandedCholeskyFactor& f, std::span<const double> rhs) {
  if (static_cast<int>(rhs.size()) != f.dim())
    throw std::invalid_argument("solve_banded: size mismatch");
  std::vector<double> x(rhs.begin(), rhs.end());
  f.solve_in_place(x.data());
  return x;
}

}  // namespace kronalpha
