#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "kronalpha/banded.hpp"
#include "../support/oracles.hpp"

using namespace kronalpha;

namespace {

BandedSpdMatrix random_spd_band(int m, int b, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  BandedSpdMatrix a(m, b);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j <= std::min(m - 1, i + b); ++j) {
      const double v = unif(gen);
      a.set(i, j, v);
      a.set(j, i, v);
    }
  for (int i = 0; i < m; ++i) {
    double off = 0.0;
    for (int j = std::max(0, i - b); j <= std::min(m - 1, i + b); ++j)
      if (j != i) off += std::abs(a.at(i, j));
    a.set(i, i, off + 1.0);  // strict diagonal dominance keeps it SPD
  }
  return a;
}

Eigen::MatrixXd to_dense(const BandedSpdMatrix& a) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) d(i, j) = a.at(i, j);
  return d;
}

}  // namespace

TEST_SUITE("banded") {

TEST_CASE("identity solve") {
  BandedSpdMatrix eye(5, 0);
  for (int i = 0; i < 5; ++i) eye.set(i, i, 1.0);
  const auto f = factor(eye);
  const std::vector<double> r{1, -2, 3, -4, 5};
  CHECK(solve_banded(f, r) == r);
}

TEST_CASE("2x2 by inspection") {
  BandedSpdMatrix a(2, 1);
  a.set(0, 0, 2.0);
  a.set(0, 1, 1.0);
  a.set(1, 0, 1.0);
  a.set(1, 1, 2.0);
  const auto x = solve_banded(factor(a), std::vector<double>{3.0, 3.0});
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("random SPD band vs dense oracle") {
  const auto a = random_spd_band(50, 2, 42);
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXd rhs(50);
  for (int i = 0; i < 50; ++i) rhs(i) = unif(gen);

  const auto f = factor(a);
  std::vector<double> r(rhs.data(), rhs.data() + 50);
  const auto x = solve_banded(f, r);
  const Eigen::VectorXd xd = oracles::dense_solve(to_dense(a), rhs);
  for (int i = 0; i < 50; ++i)
    CHECK(std::abs(x[i] - xd(i)) < 1e-10 * std::max(1.0, xd.cwiseAbs().maxCoeff()));
}

TEST_CASE("solve residual and factor reproduction") {
  for (auto [m, b] : {std::pair{20, 1}, std::pair{33, 3}, std::pair{64, 2}}) {
    const auto a = random_spd_band(m, b, 1000 + m);
    const auto f = factor(a);
    std::mt19937 gen(m);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> rhs(m);
    for (double& v : rhs) v = unif(gen);
    const auto x = solve_banded(f, rhs);
    const auto ax = a.matvec(std::span<const double>(x));
    double num = 0.0, den = 0.0;
    for (int i = 0; i < m; ++i) {
      num += (ax[i] - rhs[i]) * (ax[i] - rhs[i]);
      den += rhs[i] * rhs[i];
    }
    CHECK(std::sqrt(num) <= 1e-10 * std::sqrt(den));
  }
}

TEST_CASE("non-SPD matrix is rejected") {
  BandedSpdMatrix a(2, 1);
  a.set(0, 0, 1.0);
  a.set(0, 1, 2.0);
  a.set(1, 0, 2.0);
  a.set(1, 1, 1.0);  // eigenvalues 3 and -1
  CHECK_THROWS_AS(factor(a), std::runtime_error);
}

TEST_CASE("combine") {
  BandedSpdMatrix m(1, 0), k(1, 0);
  m.set(0, 0, 2.0);
  k.set(0, 0, 3.0);
  CHECK(combine(m, 1.0, k).at(0, 0) == 5.0);
  CHECK(combine(m, 0.0, k).at(0, 0) == 2.0);
  BandedSpdMatrix wrong(2, 0);
  CHECK_THROWS_AS(combine(m, 1.0, wrong), std::invalid_argument);
}

}  // TEST_SUITE
