#include <doctest.h>

#include <chrono>
#include <cmath>

#include "kronalpha/assembly1d.hpp"
#include "kronalpha/study.hpp"

using namespace kronalpha;

TEST_SUITE("assembly1d") {

TEST_CASE("gauss rules integrate polynomials exactly") {
  for (int q = 1; q <= 10; ++q) {
    const GaussRule rule = gauss_legendre(q);
    for (int deg = 0; deg <= 2 * q - 1; ++deg) {
      double integral = 0.0;
      for (int i = 0; i < q; ++i) integral += rule.weights[i] * std::pow(rule.points[i], deg);
      const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
      CHECK(std::abs(integral - exact) < 1e-13);
    }
  }
}

TEST_CASE("hat mass matrix") {
  const double h = 0.25;
  const auto m = assemble_mass_1d({1, 0, 4});
  REQUIRE(m.dim() == 3);
  CHECK(m.at(1, 1) == doctest::Approx(2.0 * h / 3.0).epsilon(1e-13));
  CHECK(m.at(1, 0) == doctest::Approx(h / 6.0).epsilon(1e-13));
  CHECK(m.at(0, 2) == 0.0);

  const auto tiny = assemble_mass_1d({1, 0, 2});
  REQUIRE(tiny.dim() == 1);
  CHECK(tiny.at(0, 0) == doctest::Approx(2.0 * 0.5 / 3.0).epsilon(1e-13));
}

TEST_CASE("mass row sums integrate the partition of unity") {
  for (auto [p, k] : {std::pair{1, 0}, std::pair{2, 1}, std::pair{3, 2}}) {
    const BasisSpec1D spec{p, k, 5};
    const auto full = assemble_mass_1d(spec, false);
    double total = 0.0;
    for (int i = 0; i < full.dim(); ++i)
      for (int j = 0; j < full.dim(); ++j) total += full.at(i, j);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));  // measure of [0,1]
  }
}

TEST_CASE("hat stiffness matrix") {
  const auto k = assemble_stiffness_1d({1, 0, 4});
  CHECK(k.at(1, 1) == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(k.at(1, 2) == doctest::Approx(-4.0).epsilon(1e-13));

  const auto full = assemble_stiffness_1d({1, 0, 4}, false);
  for (int i = 0; i < full.dim(); ++i) {
    double row = 0.0;
    for (int j = 0; j < full.dim(); ++j) row += full.at(i, j);
    CHECK(std::abs(row) < 1e-13);  // derivatives of the partition of unity
  }
}

TEST_CASE("quadratic C1 stiffness is SPD with half-bandwidth 2") {
  const auto k = assemble_stiffness_1d({2, 1, 8});
  CHECK(k.half_bandwidth() == 2);
  CHECK_NOTHROW(factor(k));
  for (int i = 0; i < k.dim(); ++i)
    for (int j = 0; j < k.dim(); ++j) CHECK(k.at(i, j) == k.at(j, i));
}

TEST_CASE("combined operator matches entrywise sum") {
  const BasisSpec1D spec{1, 0, 4};
  const auto m = assemble_mass_1d(spec);
  const auto k = assemble_stiffness_1d(spec);
  const double eta = 0.37;
  const auto a = combine(m, eta, k);
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      CHECK(a.at(i, j) == doctest::Approx(m.at(i, j) + eta * k.at(i, j)).epsilon(1e-14));
  CHECK_NOTHROW(factor(combine(m, 0.0, k)));
  CHECK_NOTHROW(factor(combine(m, 10.0, k)));
}

TEST_CASE("quadrature order beyond exactness changes nothing") {
  for (auto [p, k] : {std::pair{2, 1}, std::pair{3, 2}}) {
    const BasisSpec1D spec{p, k, 4};
    const auto m1 = assemble_mass_1d(spec, true, p + 1);
    const auto m2 = assemble_mass_1d(spec, true, p + 4);
    const auto k1 = assemble_stiffness_1d(spec, true, p + 1);
    const auto k2 = assemble_stiffness_1d(spec, true, p + 4);
    double kscale = 0.0;
    for (int i = 0; i < k1.dim(); ++i) kscale = std::max(kscale, std::abs(k1.at(i, i)));
    for (int i = 0; i < m1.dim(); ++i)
      for (int j = 0; j < m1.dim(); ++j) {
        CHECK(std::abs(m1.at(i, j) - m2.at(i, j)) < 1e-14);
        CHECK(std::abs(k1.at(i, j) - k2.at(i, j)) < 1e-14 * kscale);
      }
  }
}

TEST_CASE("load vector of a constant") {
  const auto load = assemble_load_1d({1, 0, 4}, [](double) { return 1.0; });
  REQUIRE(load.size() == 3);
  for (double v : load) CHECK(v == doctest::Approx(0.25).epsilon(1e-13));  // int of a hat = h
}

TEST_CASE("factor+solve wall time scales linearly in m") {
  std::vector<double> ms, times;
  for (int n = 128; n <= 8192; n *= 2) {
    const BasisSpec1D spec{2, 1, n};
    const auto a = combine(assemble_mass_1d(spec), 1e-3, assemble_stiffness_1d(spec));
    std::vector<double> rhs(a.dim(), 1.0);
    // repeat enough work per sample to dominate timer noise
    const int reps = std::max(1, 200000 / a.dim());
    std::vector<double> samples;
    for (int s = 0; s < 5; ++s) {
      const auto t0 = std::chrono::steady_clock::now();
      for (int r = 0; r < reps; ++r) {
        auto f = factor(a);
        auto x = solve_banded(f, rhs);
        volatile double sink = x[0];
        (void)sink;
      }
      const auto t1 = std::chrono::steady_clock::now();
      samples.push_back(std::chrono::duration<double>(t1 - t0).count() / reps);
    }
    std::sort(samples.begin(), samples.end());
    ms.push_back(a.dim());
    times.push_back(samples[2]);
  }
  const double slope = loglog_slope(ms, times);
  MESSAGE("banded factor+solve slope: " << slope);
  CHECK(slope > 0.7);
  CHECK(slope < 1.3);
}

}  // TEST_SUITE
