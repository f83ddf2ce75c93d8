#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kronalpha/assembly1d.hpp"
#include "kronalpha/spectral.hpp"
#include "../support/oracles.hpp"

using namespace kronalpha;

namespace {

Eigen::Vector2d eig_moduli(const Eigen::Matrix2d& b) {
  const Eigen::EigenSolver<Eigen::Matrix2d> es(b);
  return {std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(1))};
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("diagonal generalized eigenproblem") {
  BandedSpdMatrix m(3, 0), k(3, 0);
  for (int i = 0; i < 3; ++i) {
    m.set(i, i, 1.0);
    k.set(i, i, i + 1.0);
  }
  const auto de = generalized_eig_1d(k, m);
  for (int i = 0; i < 3; ++i) {
    CHECK(de.eigenvalues(i) == doctest::Approx(i + 1.0).epsilon(1e-14));
    CHECK(std::abs(de.eigenvectors.col(i).cwiseAbs().maxCoeff() - 1.0) < 1e-12);
  }
}

TEST_CASE("linear elements reproduce the classical dispersion eigenvalues") {
  const int n = 8;
  const double h = 1.0 / n;
  const BasisSpec1D spec{1, 0, n};
  const auto de = generalized_eig_1d(assemble_stiffness_1d(spec), assemble_mass_1d(spec));
  REQUIRE(de.eigenvalues.size() == n - 1);
  for (int k = 1; k <= n - 1; ++k) {
    const double c = std::cos(k * std::numbers::pi * h);
    const double expected = 6.0 / (h * h) * (1.0 - c) / (2.0 + c);
    CHECK(de.eigenvalues(k - 1) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("residuals and M-orthonormality across the test grid") {
  for (auto [p, k] : {std::pair{1, 0}, std::pair{2, 1}, std::pair{3, 2}, std::pair{2, 0}})
    for (int n : {2, 4, 9}) {
      const BasisSpec1D spec{p, k, n};
      const auto mass = assemble_mass_1d(spec);
      const auto stiff = assemble_stiffness_1d(spec);
      const auto de = generalized_eig_1d(stiff, mass);
      const int m = mass.dim();
      REQUIRE(de.eigenvalues.size() == m);
      for (int j = 0; j < m; ++j) {
        CHECK(de.eigenvalues(j) > 0.0);
        if (j > 0) CHECK(de.eigenvalues(j) >= de.eigenvalues(j - 1));
        std::vector<double> v(de.eigenvectors.col(j).data(), de.eigenvectors.col(j).data() + m);
        const auto kv = stiff.matvec(std::span<const double>(v));
        const auto mv = mass.matvec(std::span<const double>(v));
        double rnorm = 0.0, knorm = 0.0;
        for (int i = 0; i < m; ++i) {
          const double r = kv[i] - de.eigenvalues(j) * mv[i];
          rnorm += r * r;
          knorm += kv[i] * kv[i];
        }
        CHECK(std::sqrt(rnorm) <= 1e-10 * std::sqrt(knorm));
        for (int l = 0; l <= j; ++l) {
          const double dot = de.eigenvectors.col(l).dot(
              Eigen::Map<const Eigen::VectorXd>(mv.data(), m));
          CHECK(std::abs(dot - (l == j ? 1.0 : 0.0)) < 1e-11);
        }
      }
    }
}

TEST_CASE("unsplit mode matrix limits") {
  for (double rho : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto c = GenAlphaCoeffs::from_rho_inf(rho);

    const auto zero = unsplit_mode_matrix(0.0, c, 0.1).block;
    CHECK(zero(1, 0) == 0.0);  // upper triangular at tau*lambda -> 0
    CHECK(zero(0, 0) == doctest::Approx(1.0));
    CHECK(zero(1, 1) == doctest::Approx(1.0 - 1.0 / c.alpha_m));

    const auto inf = unsplit_mode_matrix(3.7, c, std::numeric_limits<double>::infinity()).block;
    CHECK(inf(0, 1) == 0.0);  // lower triangular at tau -> infinity
    CHECK(inf(0, 0) == doctest::Approx(1.0 - 1.0 / c.alpha_f).epsilon(1e-14));
    CHECK(inf(1, 1) == doctest::Approx(1.0 - 1.0 / c.gamma).epsilon(1e-14));
    // under the rho_inf parametrization both limit eigenvalues are -rho_inf
    CHECK(spectral_radius(inf) == doctest::Approx(rho).epsilon(1e-12));
  }
}

TEST_CASE("unsplit characteristic polynomial matches the per-mode closed form") {
  // trace and determinant recomputed from the raw fractions of the
  // closed-form characteristic equation
  for (double rho : {0.0, 0.5, 1.0})
    for (double taulam : {1e-3, 1.0, 50.0, 1e4}) {
      const auto c = GenAlphaCoeffs::from_rho_inf(rho);
      const double tau = 0.37;
      const double lambda = taulam / tau;
      const auto blk = unsplit_mode_matrix(lambda, c, tau).block;

      const double den = c.alpha_m + taulam * c.gamma * c.alpha_f;
      const double x11 = 1.0 - taulam * c.gamma / den;
      const double x22 = 1.0 - (1.0 + taulam * c.alpha_f) / den;
      const double x21 = -taulam / den;
      const double x12 = 1.0 - (c.gamma + taulam * c.gamma * c.alpha_f) / den;

      CHECK(blk(0, 0) + blk(1, 1) == doctest::Approx(x11 + x22).epsilon(1e-12));
      const double det_blk = blk(0, 0) * blk(1, 1) - blk(0, 1) * blk(1, 0);
      CHECK(det_blk == doctest::Approx(x11 * x22 - x12 * x21).epsilon(1e-12));
    }
}

TEST_CASE("diagonal branch of the unsplit spectrum stays in [0, 2]") {
  for (double rho : {0.0, 0.5, 1.0}) {
    const auto c = GenAlphaCoeffs::from_rho_inf(rho);
    for (double taulam = 1e-8; taulam < 1e9; taulam *= 10.0) {
      const double branch = taulam * c.gamma / (c.alpha_m + taulam * c.gamma * c.alpha_f);
      CHECK(branch >= 0.0);
      CHECK(branch <= 2.0);
    }
  }
}

TEST_CASE("split mode matrix limits") {
  for (double rho : {0.0, 0.5, 1.0}) {
    const auto c = GenAlphaCoeffs::from_rho_inf(rho);
    const double lam0[2] = {0.0, 0.0};

    for (SchemeKind scheme :
         {SchemeKind::SplitLhs, SchemeKind::SplitBoth, SchemeKind::SplitBothMod}) {
      const auto zero = split_mode_matrix(lam0, c, 0.5, scheme).block;
      CHECK(zero(0, 0) == doctest::Approx(1.0));
      CHECK(zero(1, 0) == doctest::Approx(0.0));
      CHECK(zero(1, 1) == doctest::Approx(1.0 - 1.0 / c.alpha_m).epsilon(1e-13));
    }

    const double lam[2] = {4.0, 9.0};
    const auto inf = split_mode_matrix(lam, c, std::numeric_limits<double>::infinity(),
                                       SchemeKind::SplitLhs)
                         .block;
    CHECK(inf(0, 0) == doctest::Approx(1.0));
    CHECK(inf(1, 1) == doctest::Approx(1.0));
    CHECK(inf(1, 0) == doctest::Approx(0.0));
    const auto mod = eig_moduli(inf);
    CHECK(mod(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mod(1) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("split-scheme spectral radius bounded on a (tau*lambda) grid") {
  for (double rho : {0.0, 0.5, 1.0}) {
    const auto c = GenAlphaCoeffs::from_rho_inf(rho);
    const double tau = 1.0;  // entries depend on tau and lambda only through products
    double worst = 0.0;
    for (double lx = 1e-4; lx <= 1e6; lx *= 100.0)
      for (double ly = 1e-4; ly <= 1e6; ly *= 100.0) {
        const double lam[2] = {lx, ly};
        for (SchemeKind scheme :
             {SchemeKind::SplitLhs, SchemeKind::SplitBoth, SchemeKind::SplitBothMod})
          worst = std::max(worst, spectral_radius(split_mode_matrix(lam, c, tau, scheme).block));
      }
    CHECK(worst <= 1.0 + 1e-12);
  }
}

TEST_CASE("certification passes for admissible parameters") {
  const BasisSpec1D spec{2, 1, 8};
  const std::vector<BasisSpec1D> specs{spec, spec};
  const std::vector<double> taus{1e-4, 1e-2, 1.0, 1e2};
  const std::vector<SchemeKind> schemes{SchemeKind::Unsplit, SchemeKind::SplitLhs,
                                        SchemeKind::SplitBoth, SchemeKind::SplitBothMod};
  const auto report = certify_stability(specs, GenAlphaCoeffs::from_rho_inf(1.0), taus, schemes);
  CHECK(report.all_pass);
  CHECK(report.condition_satisfied);
  CHECK(report.entries.size() == taus.size() * schemes.size());
}

TEST_CASE("violated sufficient condition is flagged at large tau*lambda") {
  const GenAlphaCoeffs bad{0.5, 0.3, 0.7};  // alpha_f < 1/2
  CHECK_FALSE(bad.satisfies_stability_condition());
  const BasisSpec1D spec{1, 0, 8};
  const std::vector<BasisSpec1D> specs{spec, spec};
  const std::vector<double> taus{1e-4, 1e2, 1e6};
  const std::vector<SchemeKind> schemes{SchemeKind::Unsplit};
  const auto report = certify_stability(specs, bad, taus, schemes);
  CHECK_FALSE(report.all_pass);
  CHECK_FALSE(report.condition_satisfied);
  bool violation_at_large_tau = false;
  for (const auto& e : report.entries)
    if (!e.pass && e.tau >= 1e2) violation_at_large_tau = true;
  CHECK(violation_at_large_tau);
}

TEST_CASE("degenerate single-mode mesh") {
  const BasisSpec1D spec{1, 0, 2};  // one interior function per direction
  const std::vector<BasisSpec1D> specs{spec, spec};
  const std::vector<double> taus{0.5};
  const std::vector<SchemeKind> schemes{SchemeKind::SplitLhs};
  const auto report = certify_stability(specs, GenAlphaCoeffs::from_rho_inf(0.5), taus, schemes);
  REQUIRE(report.entries.size() == 1);
  CHECK(report.entries[0].argmax_lambdas.size() == 2);
  CHECK(report.entries[0].pass);
}

TEST_CASE("similarity of dense amplification and per-mode blocks") {
  const std::vector<BasisSpec1D> p1{{1, 0, 4}, {1, 0, 4}};
  const std::vector<BasisSpec1D> p2{{2, 1, 4}, {2, 1, 4}};
  const auto params = GenAlphaParams::from_rho_inf(0.5, 0.05);
  CHECK(verify_similarity(SchemeKind::Unsplit, p1, params) < 1e-9);
  CHECK(verify_similarity(SchemeKind::SplitLhs, p2, params) < 1e-9);
  CHECK(verify_similarity(SchemeKind::SplitBoth, p2, params) < 1e-9);
  CHECK(verify_similarity(SchemeKind::SplitBothMod, p2, params) < 1e-9);
}

TEST_CASE("fast diagonalization solves the unsplit operator exactly") {
  const BasisSpec1D sx{2, 1, 6}, sy{3, 2, 4};
  const auto mx = assemble_mass_1d(sx), my = assemble_mass_1d(sy);
  const auto kx = assemble_stiffness_1d(sx), ky = assemble_stiffness_1d(sy);
  const double eta = 0.01;

  std::vector<GenEigenDecomp1D> decomps{generalized_eig_1d(kx, mx), generalized_eig_1d(ky, my)};
  const FastDiagSolver solver(decomps, 1.0, eta);

  TensorField r({mx.dim(), my.dim()});
  std::mt19937 gen(9);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (double& v : r.data) v = unif(gen);

  KronOperator mass, stiffness;
  mass.terms.push_back({1.0, {mx, my}});
  stiffness.terms.push_back({1.0, {kx, my}});
  stiffness.terms.push_back({1.0, {mx, ky}});
  const Eigen::MatrixXd a = dense_expand(mass) + eta * dense_expand(stiffness);
  const Eigen::VectorXd xd =
      oracles::dense_solve(a, Eigen::Map<const Eigen::VectorXd>(r.data.data(), r.size()));

  const TensorField x = solver.solve(r);
  for (int i = 0; i < r.size(); ++i) CHECK(std::abs(x.data[i] - xd(i)) < 1e-10);
}

}  // TEST_SUITE
