#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kronalpha/kronops.hpp"
#include "kronalpha/problems.hpp"
#include "kronalpha/study.hpp"
#include "kronalpha/timestepper.hpp"

using namespace kronalpha;

namespace {

constexpr double kPi = std::numbers::pi;

// u = x(1-x) y(1-y): a global quadratic that lives in every p >= 2 space
ManufacturedProblem polynomial_problem() {
  ManufacturedProblem p;
  p.dim = 2;
  p.name = "poly";
  p.value = [](std::span<const double> x, double) {
    return x[0] * (1.0 - x[0]) * x[1] * (1.0 - x[1]);
  };
  p.partial = [](std::span<const double> x, double, int dir) {
    return dir == 0 ? (1.0 - 2.0 * x[0]) * x[1] * (1.0 - x[1])
                    : x[0] * (1.0 - x[0]) * (1.0 - 2.0 * x[1]);
  };
  p.forcing = [](std::span<const double> x, double) {
    return 2.0 * (x[1] * (1.0 - x[1]) + x[0] * (1.0 - x[0]));
  };
  p.zero_forcing = false;
  return p;
}

TensorField project(const ManufacturedProblem& problem, const std::vector<BasisSpec1D>& specs,
                    double t) {
  KronTerm mass;
  for (const auto& s : specs) mass.factors.push_back(assemble_mass_1d(s));
  const KronTermSolver solver(mass);
  const TensorField b = assemble_functional(
      [&](std::span<const double> x) { return problem.value(x, t); }, specs);
  return solver.solve(b);
}

}  // namespace

TEST_SUITE("problems") {

TEST_CASE("manufactured peak values") {
  const auto p2 = heat_manufactured(2);
  const double mid2[2] = {0.5, 0.5};
  CHECK(p2.value(mid2, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  const auto p3 = heat_manufactured(3);
  const double mid3[3] = {0.5, 0.5, 0.5};
  CHECK(p3.value(mid3, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p2.zero_forcing);
  CHECK_THROWS_AS(heat_manufactured(4), std::invalid_argument);
}

TEST_CASE("forcing is consistent with the exact solution (finite differences)") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> unif(0.2, 0.8);
  for (const auto& problem : {heat_manufactured(2), forced_manufactured(2), heat_manufactured(3),
                              forced_manufactured(3)}) {
    const int d = problem.dim;
    for (int trial = 0; trial < 50; ++trial) {
      double x[3];
      for (int k = 0; k < d; ++k) x[k] = unif(gen);
      const double t = 0.05 * (trial % 7);
      std::span<const double> xs(x, d);

      const double ht = 1e-6;
      const double dudt = (problem.value(xs, t + ht) - problem.value(xs, t - ht)) / (2.0 * ht);
      double lap = 0.0;
      const double hx = 1e-4;
      for (int k = 0; k < d; ++k) {
        double xp[3], xm[3];
        std::copy(x, x + d, xp);
        std::copy(x, x + d, xm);
        xp[k] += hx;
        xm[k] -= hx;
        lap += (problem.value({xp, static_cast<size_t>(d)}, t) - 2.0 * problem.value(xs, t) +
                problem.value({xm, static_cast<size_t>(d)}, t)) /
               (hx * hx);
      }
      CHECK(std::abs(dudt - lap - problem.forcing(xs, t)) < 1e-5);

      // partials against central differences
      for (int k = 0; k < d; ++k) {
        double xp[3], xm[3];
        std::copy(x, x + d, xp);
        std::copy(x, x + d, xm);
        xp[k] += ht;
        xm[k] -= ht;
        const double fd = (problem.value({xp, static_cast<size_t>(d)}, t) -
                           problem.value({xm, static_cast<size_t>(d)}, t)) /
                          (2.0 * ht);
        CHECK(std::abs(fd - problem.partial(xs, t, k)) < 1e-6);
      }
    }
  }
}

TEST_CASE("error norms vanish when the exact solution lies in the space") {
  const std::vector<BasisSpec1D> specs{{2, 1, 4}, {2, 1, 4}};
  const auto problem = polynomial_problem();
  const TensorField coeffs = project(problem, specs, 0.0);
  const ErrorNorms err = error_norms(coeffs, 0.0, problem, specs);
  CHECK(err.l2 < 1e-12);
  CHECK(err.grad_l2 < 1e-12);
}

TEST_CASE("projection error converges at the optimal spatial rates") {
  for (auto [p, k, expected] : {std::tuple{2, 1, 3.0}, std::tuple{3, 2, 4.0}}) {
    std::vector<double> hs, l2s, grads;
    for (int n : {4, 8, 16, 32}) {
      const std::vector<BasisSpec1D> specs{{p, k, n}, {p, k, n}};
      const auto problem = heat_manufactured(2);
      const TensorField coeffs = project(problem, specs, 0.0);
      const ErrorNorms err = error_norms(coeffs, 0.0, problem, specs);
      hs.push_back(1.0 / n);
      l2s.push_back(err.l2);
      grads.push_back(err.grad_l2);
    }
    CHECK(loglog_slope(hs, l2s) == doctest::Approx(expected).epsilon(0.05));
    CHECK(loglog_slope(hs, grads) == doctest::Approx(expected - 1.0).epsilon(0.05));
  }
}

TEST_CASE("load vector is zero without forcing") {
  const std::vector<BasisSpec1D> specs{{2, 1, 4}, {2, 1, 4}};
  const TensorField f = load_vector(heat_manufactured(2), specs, 0.3);
  for (double v : f.data) CHECK(v == 0.0);
}

TEST_CASE("constant forcing reproduces hat integrals") {
  ManufacturedProblem constant;
  constant.dim = 2;
  constant.value = [](std::span<const double>, double) { return 0.0; };
  constant.partial = [](std::span<const double>, double, int) { return 0.0; };
  constant.forcing = [](std::span<const double>, double) { return 1.0; };
  constant.zero_forcing = false;
  const std::vector<BasisSpec1D> specs{{1, 0, 4}, {1, 0, 4}};
  const TensorField f = load_vector(constant, specs, 0.0);
  for (double v : f.data) CHECK(v == doctest::Approx(0.25 * 0.25).epsilon(1e-13));
}

TEST_CASE("separable forcing equals the outer product of 1D loads") {
  const auto problem = forced_manufactured(2);
  const std::vector<BasisSpec1D> specs{{2, 1, 6}, {2, 1, 6}};
  const double t = 0.2;
  const TensorField fast = load_vector(problem, specs, t);
  const TensorField general = load_vector_general(problem, specs, t);
  for (int i = 0; i < fast.size(); ++i) CHECK(std::abs(fast.data[i] - general.data[i]) < 1e-13);

  // and explicitly against hand-built 1D loads
  const auto lx = assemble_load_1d(specs[0], [](double x) { return std::sin(kPi * x); });
  const double ft = std::exp(-2.0 * kPi * kPi * t);
  const int m = static_cast<int>(lx.size());
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix)
      CHECK(std::abs(fast.data[ix + m * iy] - ft * lx[ix] * lx[iy]) < 1e-13);
}

TEST_CASE("3D separable load agrees with the general path") {
  const auto problem = forced_manufactured(3);
  const std::vector<BasisSpec1D> specs{{1, 0, 3}, {1, 0, 3}, {1, 0, 3}};
  const TensorField fast = load_vector(problem, specs, 0.1);
  const TensorField general = load_vector_general(problem, specs, 0.1);
  for (int i = 0; i < fast.size(); ++i) CHECK(std::abs(fast.data[i] - general.data[i]) < 1e-14);
}

TEST_CASE("quadrature refinement leaves norms unchanged") {
  // at paper-scale meshes the default p+2 rule is converged
  const std::vector<BasisSpec1D> specs{{2, 1, 32}, {2, 1, 32}};
  const auto problem = heat_manufactured(2);
  const TensorField coeffs = project(problem, specs, 0.0);
  const ErrorNorms base = error_norms(coeffs, 0.0, problem, specs, 4);
  const ErrorNorms fine = error_norms(coeffs, 0.0, problem, specs, 8);
  CHECK(std::abs(base.l2 - fine.l2) < 1e-10 * base.l2);
  CHECK(std::abs(base.grad_l2 - fine.grad_l2) < 1e-10 * base.grad_l2);
}

TEST_CASE("norms are deterministic across serial and parallel execution") {
  const std::vector<BasisSpec1D> specs{{2, 1, 8}, {2, 1, 8}};
  const auto problem = heat_manufactured(2);
  const TensorField coeffs = project(problem, specs, 0.0);
  const ErrorNorms a = error_norms(coeffs, 0.0, problem, specs, 0, Exec::Serial);
  const ErrorNorms b = error_norms(coeffs, 0.0, problem, specs, 0, Exec::Parallel);
  CHECK(a.l2 == b.l2);
  CHECK(a.grad_l2 == b.grad_l2);
}

}  // TEST_SUITE
