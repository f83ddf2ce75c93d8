#include "kronalpha/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "kronalpha/assembly1d.hpp"

namespace kronalpha {

GenEigenDecomp1D generalized_eig_1d(const BandedSpdMatrix& stiffness, const BandedSpdMatrix& mass) {
  const int m = mass.dim();
  if (stiffness.dim() != m) throw std::invalid_argument("generalized_eig_1d: dimension mismatch");
  const BandedCholeskyFactor chol = factor(mass);

  Eigen::MatrixXd kd = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) kd(i, j) = stiffness.at(i, j);

  // C = L^-1 K L^-T, then a dense symmetric eigensolve
  Eigen::MatrixXd c = kd;
  for (int j = 0; j < m; ++j) chol.solve_lower_in_place(c.col(j).data());
  c.transposeInPlace();
  for (int j = 0; j < m; ++j) chol.solve_lower_in_place(c.col(j).data());
  c = 0.5 * (c + c.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
  if (es.info() != Eigen::Success) throw std::runtime_error("generalized_eig_1d: eigensolve failed");

  GenEigenDecomp1D out;
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = es.eigenvectors();
  for (int j = 0; j < m; ++j) chol.solve_lower_transpose_in_place(out.eigenvectors.col(j).data());
  return out;
}

namespace {

Eigen::Matrix2d assemble_block(double e, double g, double rv, const GenAlphaCoeffs& c) {
  Eigen::Matrix2d b;
  b(0, 0) = 1.0 + c.gamma * g;
  b(0, 1) = 1.0 - (c.gamma / c.alpha_m) * rv;
  b(1, 0) = g;
  b(1, 1) = 1.0 - (1.0 / c.alpha_m) * rv;
  (void)e;
  return b;
}

}  // namespace

ModeAmplification unsplit_mode_matrix(double lambda, const GenAlphaCoeffs& c, double tau) {
  if (lambda < 0.0) throw std::invalid_argument("unsplit_mode_matrix: negative eigenvalue");
  ModeAmplification out;
  out.scheme = SchemeKind::Unsplit;
  out.lambdas = {lambda};

  if (std::isinf(tau) && lambda > 0.0) {
    const double g = -1.0 / (c.gamma * c.alpha_f);
    out.block = assemble_block(0.0, g, c.alpha_m / c.gamma, c);
    return out;
  }
  const double eta = std::isinf(tau) ? 0.0 : tau * c.gamma * c.alpha_f / c.alpha_m;
  const double zeta = std::isinf(tau) ? 0.0 : tau * c.alpha_f;
  const double e = 1.0 / (1.0 + eta * lambda);
  const double g = std::isinf(tau) ? 0.0 : -(tau / c.alpha_m) * e * lambda;
  const double rv = e * (1.0 + zeta * lambda);
  out.block = assemble_block(e, g, rv, c);
  return out;
}

ModeAmplification split_mode_matrix(std::span<const double> lambdas, const GenAlphaCoeffs& c,
                                    double tau, SchemeKind scheme) {
  if (scheme == SchemeKind::Unsplit)
    throw std::invalid_argument("split_mode_matrix: use unsplit_mode_matrix");
  for (double l : lambdas)
    if (l < 0.0) throw std::invalid_argument("split_mode_matrix: negative eigenvalue");

  ModeAmplification out;
  out.scheme = scheme;
  out.lambdas.assign(lambdas.begin(), lambdas.end());
  const double cmod = (c.gamma - c.alpha_m) / c.alpha_m;

  if (std::isinf(tau)) {
    int nz = 0;
    for (double l : lambdas)
      if (l > 0.0) ++nz;
    const double e = nz == 0 ? 1.0 : 0.0;
    const double g = nz == 1 ? -1.0 / (c.gamma * c.alpha_f) : 0.0;
    const double ratio = c.alpha_m / c.gamma;  // lim of (1 + zeta*l)/(1 + eta*l)
    double rv = 0.0;
    switch (scheme) {
      case SchemeKind::SplitLhs:
        rv = nz == 0 ? 1.0 : (nz == 1 ? ratio : 0.0);
        break;
      case SchemeKind::SplitBoth:
        rv = std::pow(ratio, nz);
        break;
      case SchemeKind::SplitBothMod:
        rv = ratio * (1.0 + cmod * e);
        break;
      default:
        break;
    }
    out.block = assemble_block(e, g, rv, c);
    return out;
  }

  const double eta = tau * c.gamma * c.alpha_f / c.alpha_m;
  const double zeta = tau * c.alpha_f;
  double e = 1.0, lam_sum = 0.0, b_split = 1.0;
  for (double l : lambdas) {
    e /= 1.0 + eta * l;
    lam_sum += l;
    b_split *= 1.0 + zeta * l;
  }
  const double g = -(tau / c.alpha_m) * e * lam_sum;
  double rv = 0.0;
  switch (scheme) {
    case SchemeKind::SplitLhs:
      rv = e * (1.0 + zeta * lam_sum);
      break;
    case SchemeKind::SplitBoth:
      rv = e * b_split;
      break;
    case SchemeKind::SplitBothMod:
      rv = (c.alpha_m / c.gamma) * (1.0 + cmod * e);
      break;
    default:
      break;
  }
  out.block = assemble_block(e, g, rv, c);
  return out;
}

double spectral_radius(const Eigen::Matrix2d& block) {
  const double mid = 0.5 * (block(0, 0) + block(1, 1));
  // cancellation-free discriminant ((a-d)/2)^2 + bc
  const double disc = 0.25 * (block(0, 0) - block(1, 1)) * (block(0, 0) - block(1, 1)) +
                      block(0, 1) * block(1, 0);
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    return std::max(std::abs(mid + s), std::abs(mid - s));
  }
  // complex conjugate pair, modulus sqrt(det)
  return std::sqrt(block(0, 0) * block(1, 1) - block(0, 1) * block(1, 0));
}

StabilityReport certify_stability(std::span<const BasisSpec1D> specs, const GenAlphaCoeffs& coeffs,
                                  std::span<const double> taus, std::span<const SchemeKind> schemes,
                                  Exec exec) {
  const int d = static_cast<int>(specs.size());
  if (d < 1 || d > 3) throw std::invalid_argument("certify_stability: 1-3 dimensions");

  std::vector<Eigen::VectorXd> lams;
  long long modes = 1;
  for (const auto& spec : specs) {
    const auto mass = assemble_mass_1d(spec);
    const auto stiff = assemble_stiffness_1d(spec);
    lams.push_back(generalized_eig_1d(stiff, mass).eigenvalues);
    modes *= lams.back().size();
  }

  StabilityReport report;
  report.condition_satisfied = coeffs.satisfies_stability_condition();
  std::vector<double> radii(modes);

  for (SchemeKind scheme : schemes) {
    for (double tau : taus) {
      auto radius_of = [&](long long idx) {
        double tuple[3] = {0, 0, 0};
        long long rest = idx;
        for (int k = 0; k < d; ++k) {
          tuple[k] = lams[k](rest % lams[k].size());
          rest /= lams[k].size();
        }
        if (scheme == SchemeKind::Unsplit) {
          double sum = 0.0;
          for (int k = 0; k < d; ++k) sum += tuple[k];
          return spectral_radius(unsplit_mode_matrix(sum, coeffs, tau).block);
        }
        return spectral_radius(
            split_mode_matrix(std::span<const double>(tuple, d), coeffs, tau, scheme).block);
      };

      if (exec == Exec::Serial) {
        for (long long i = 0; i < modes; ++i) radii[i] = radius_of(i);
      } else {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < modes; ++i) radii[i] = radius_of(i);
      }

      long long arg = 0;
      for (long long i = 1; i < modes; ++i)
        if (radii[i] > radii[arg]) arg = i;

      StabilityEntry entry;
      entry.scheme = scheme;
      entry.tau = tau;
      entry.max_radius = radii[arg];
      long long rest = arg;
      for (int k = 0; k < d; ++k) {
        entry.argmax_lambdas.push_back(lams[k](rest % lams[k].size()));
        rest /= lams[k].size();
      }
      entry.pass = entry.max_radius <= 1.0 + 1e-12;
      report.max_radius = std::max(report.max_radius, entry.max_radius);
      report.all_pass = report.all_pass && entry.pass;
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

namespace {

Eigen::MatrixXd kron_dense_fast_first(const std::vector<Eigen::MatrixXd>& factors) {
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(1, 1);
  for (const auto& f : factors) {
    const int ma = static_cast<int>(acc.rows());
    const int mb = static_cast<int>(f.rows());
    Eigen::MatrixXd next(ma * mb, ma * mb);
    for (int ib = 0; ib < mb; ++ib)
      for (int jb = 0; jb < mb; ++jb)
        next.block(ib * ma, jb * ma, ma, ma) = f(ib, jb) * acc;
    // note: block (ib,jb) spans rows ia + ma*ib, matching x-fastest order
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

double verify_similarity(SchemeKind scheme, std::span<const BasisSpec1D> specs,
                         const GenAlphaParams& params) {
  const int d = static_cast<int>(specs.size());
  std::vector<BandedSpdMatrix> mass1, stiff1;
  std::vector<GenEigenDecomp1D> eigs;
  long long n = 1;
  for (const auto& spec : specs) {
    mass1.push_back(assemble_mass_1d(spec));
    stiff1.push_back(assemble_stiffness_1d(spec));
    eigs.push_back(generalized_eig_1d(stiff1.back(), mass1.back()));
    n *= mass1.back().dim();
  }
  if (n > 400) throw std::invalid_argument("verify_similarity: size guard exceeded (N > 400)");
  const int nn = static_cast<int>(n);

  KronOperator mass_op, stiff_op;
  {
    KronTerm mt;
    for (int k = 0; k < d; ++k) mt.factors.push_back(mass1[k]);
    mass_op.terms.push_back(mt);
    for (int k = 0; k < d; ++k) {
      KronTerm kt;
      for (int j = 0; j < d; ++j) kt.factors.push_back(j == k ? stiff1[j] : mass1[j]);
      stiff_op.terms.push_back(kt);
    }
  }
  const Eigen::MatrixXd md = dense_expand(mass_op);
  const Eigen::MatrixXd kd = dense_expand(stiff_op);

  KronTerm lhs_split, rhs_split;
  for (int k = 0; k < d; ++k) {
    lhs_split.factors.push_back(combine(mass1[k], params.eta, stiff1[k]));
    rhs_split.factors.push_back(combine(mass1[k], params.zeta, stiff1[k]));
  }

  const GenAlphaCoeffs c = params.coeffs();
  Eigen::MatrixXd lhs;
  if (scheme == SchemeKind::Unsplit)
    lhs = md + params.eta * kd;
  else
    lhs = dense_expand(lhs_split);

  Eigen::MatrixXd gmat;
  switch (scheme) {
    case SchemeKind::Unsplit:
    case SchemeKind::SplitLhs:
      gmat = md + params.zeta * kd;
      break;
    case SchemeKind::SplitBoth:
      gmat = dense_expand(rhs_split);
      break;
    case SchemeKind::SplitBothMod:
      gmat = (c.alpha_m / c.gamma) * (lhs + ((c.gamma - c.alpha_m) / c.alpha_m) * md);
      break;
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(lhs);
  const Eigen::MatrixXd linv_k = lu.solve(kd);
  const Eigen::MatrixXd linv_g = lu.solve(gmat);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(nn, nn);

  const Eigen::MatrixXd xi11 = eye - (params.tau * c.gamma / c.alpha_m) * linv_k;
  const Eigen::MatrixXd xi12 = eye - (c.gamma / c.alpha_m) * linv_g;
  const Eigen::MatrixXd xi21 = -(params.tau / c.alpha_m) * linv_k;
  const Eigen::MatrixXd xi22 = eye - (1.0 / c.alpha_m) * linv_g;

  std::vector<Eigen::MatrixXd> pfs;
  for (int k = 0; k < d; ++k) pfs.push_back(eigs[k].eigenvectors);
  const Eigen::MatrixXd p = kron_dense_fast_first(pfs);
  const Eigen::MatrixXd pinv = p.transpose() * md;  // M-orthonormal columns

  const Eigen::MatrixXd t11 = pinv * xi11 * p;
  const Eigen::MatrixXd t12 = pinv * xi12 * p;
  const Eigen::MatrixXd t21 = pinv * xi21 * p;
  const Eigen::MatrixXd t22 = pinv * xi22 * p;

  Eigen::MatrixXd b11 = Eigen::MatrixXd::Zero(nn, nn), b12 = b11, b21 = b11, b22 = b11;
  for (int idx = 0; idx < nn; ++idx) {
    double tuple[3] = {0, 0, 0};
    int rest = idx;
    for (int k = 0; k < d; ++k) {
      tuple[k] = eigs[k].eigenvalues(rest % mass1[k].dim());
      rest /= mass1[k].dim();
    }
    Eigen::Matrix2d blk;
    if (scheme == SchemeKind::Unsplit) {
      double sum = 0.0;
      for (int k = 0; k < d; ++k) sum += tuple[k];
      blk = unsplit_mode_matrix(sum, c, params.tau).block;
    } else {
      blk = split_mode_matrix(std::span<const double>(tuple, d), c, params.tau, scheme).block;
    }
    b11(idx, idx) = blk(0, 0);
    b12(idx, idx) = blk(0, 1);
    b21(idx, idx) = blk(1, 0);
    b22(idx, idx) = blk(1, 1);
  }

  double dev = 0.0;
  dev = std::max(dev, (t11 - b11).cwiseAbs().maxCoeff());
  dev = std::max(dev, (t12 - b12).cwiseAbs().maxCoeff());
  dev = std::max(dev, (t21 - b21).cwiseAbs().maxCoeff());
  dev = std::max(dev, (t22 - b22).cwiseAbs().maxCoeff());
  return dev;
}

FastDiagSolver::FastDiagSolver(std::span<const GenEigenDecomp1D> decomps, double c_mass,
                               double c_stiff) {
  std::vector<int> dims;
  for (const auto& de : decomps) {
    basis_.push_back(de.eigenvectors);
    dims.push_back(static_cast<int>(de.eigenvalues.size()));
  }
  inv_diag_ = TensorField(dims);
  const int nd = static_cast<int>(dims.size());
  for (long long idx = 0; idx < inv_diag_.size(); ++idx) {
    long long rest = idx;
    double lam_sum = 0.0;
    for (int k = 0; k < nd; ++k) {
      lam_sum += decomps[k].eigenvalues(rest % dims[k]);
      rest /= dims[k];
    }
    inv_diag_.data[idx] = 1.0 / (c_mass + c_stiff * lam_sum);
  }
}

TensorField FastDiagSolver::solve(const TensorField& rhs) const {
  if (rhs.dims != inv_diag_.dims) throw std::invalid_argument("FastDiagSolver: shape mismatch");
  TensorField cur = rhs;
  TensorField tmp(rhs.dims);
  for (size_t k = 0; k < basis_.size(); ++k) {
    apply_dense_along_dim(basis_[k], true, static_cast<int>(k), cur, tmp);
    std::swap(cur, tmp);
  }
  const long long ntot = cur.size();
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < ntot; ++i) cur.data[i] *= inv_diag_.data[i];
  for (size_t k = 0; k < basis_.size(); ++k) {
    apply_dense_along_dim(basis_[k], false, static_cast<int>(k), cur, tmp);
    std::swap(cur, tmp);
  }
  return cur;
}

}  // namespace kronalpha
