#include "kronalpha/kronops.hpp"

#include <cassert>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kronalpha {

TensorField::TensorField(std::vector<int> dims_) : dims(std::move(dims_)) {
  size_t n = 1;
  for (int m : dims) {
    if (m < 1) throw std::invalid_argument("TensorField: nonpositive dimension");
    n *= static_cast<size_t>(m);
  }
  data.assign(n, 0.0);
}

std::vector<int> KronOperator::dims() const {
  std::vector<int> d;
  if (terms.empty()) return d;
  for (const auto& f : terms[0].factors) d.push_back(f.dim());
  return d;
}

namespace {

struct FiberLayout {
  int m;       // fiber length (size along the swept dimension)
  int stride;  // step between consecutive fiber entries
  int inner;   // fiber starts within one block (== stride)
  long long count;  // total fibers
};

FiberLayout fiber_layout(const std::vector<int>& dims, int dim) {
  FiberLayout fl;
  fl.m = dims[dim];
  long long stride = 1;
  for (int d = 0; d < dim; ++d) stride *= dims[d];
  long long total = 1;
  for (int m : dims) total *= m;
  fl.stride = static_cast<int>(stride);
  fl.inner = fl.stride;
  fl.count = total / fl.m;
  return fl;
}

inline long long fiber_base(const FiberLayout& fl, long long f) {
  const long long a = f % fl.inner;
  const long long b = f / fl.inner;
  return a + b * static_cast<long long>(fl.stride) * fl.m;
}

// y_fiber = A * x_fiber for every fiber along `dim`
void apply_banded_along_dim(const BandedSpdMatrix& a, int dim, const TensorField& in,
                            TensorField& out, Exec exec) {
  const FiberLayout fl = fiber_layout(in.dims, dim);
  assert(a.dim() == fl.m);
  const double* src = in.data.data();
  double* dst = out.data.data();

  if (exec == Exec::Serial) {
    std::vector<double> buf(fl.m), res(fl.m);
    for (long long f = 0; f < fl.count; ++f) {
      const long long base = fiber_base(fl, f);
      for (int i = 0; i < fl.m; ++i) buf[i] = src[base + static_cast<long long>(i) * fl.stride];
      a.matvec(buf.data(), res.data());
      for (int i = 0; i < fl.m; ++i) dst[base + static_cast<long long>(i) * fl.stride] = res[i];
    }
    return;
  }

#pragma omp parallel
  {
    std::vector<double> buf(fl.m), res(fl.m);
#pragma omp for schedule(static)
    for (long long f = 0; f < fl.count; ++f) {
      const long long base = fiber_base(fl, f);
      for (int i = 0; i < fl.m; ++i) buf[i] = src[base + static_cast<long long>(i) * fl.stride];
      a.matvec(buf.data(), res.data());
      for (int i = 0; i < fl.m; ++i) dst[base + static_cast<long long>(i) * fl.stride] = res[i];
    }
  }
}

// x_fiber <- F^-1 x_fiber for every fiber along `dim`
void solve_banded_along_dim(const BandedCholeskyFactor& f, int dim, TensorField& field, Exec exec) {
  const FiberLayout fl = fiber_layout(field.dims, dim);
  assert(f.dim() == fl.m);
  double* ptr = field.data.data();

  if (dim == 0) {
    // fibers are contiguous here, solve in place without a buffer
    if (exec == Exec::Serial) {
      for (long long fi = 0; fi < fl.count; ++fi) f.solve_in_place(ptr + fi * fl.m);
    } else {
#pragma omp parallel for schedule(static)
      for (long long fi = 0; fi < fl.count; ++fi) f.solve_in_place(ptr + fi * fl.m);
    }
    return;
  }

  if (exec == Exec::Serial) {
    std::vector<double> buf(fl.m);
    for (long long fi = 0; fi < fl.count; ++fi) {
      const long long base = fiber_base(fl, fi);
      for (int i = 0; i < fl.m; ++i) buf[i] = ptr[base + static_cast<long long>(i) * fl.stride];
      f.solve_in_place(buf.data());
      for (int i = 0; i < fl.m; ++i) ptr[base + static_cast<long long>(i) * fl.stride] = buf[i];
    }
    return;
  }

#pragma omp parallel
  {
    std::vector<double> buf(fl.m);
#pragma omp for schedule(static)
    for (long long fi = 0; fi < fl.count; ++fi) {
      const long long base = fiber_base(fl, fi);
      for (int i = 0; i < fl.m; ++i) buf[i] = ptr[base + static_cast<long long>(i) * fl.stride];
      f.solve_in_place(buf.data());
      for (int i = 0; i < fl.m; ++i) ptr[base + static_cast<long long>(i) * fl.stride] = buf[i];
    }
  }
}

void check_term_dims(const KronTerm& term, const TensorField& u) {
  if (term.factors.size() != u.dims.size())
    throw std::invalid_argument("kron_matvec: dimension count mismatch");
  for (size_t d = 0; d < u.dims.size(); ++d)
    if (term.factors[d].dim() != u.dims[d])
      throw std::invalid_argument("kron_matvec: factor size mismatch");
}

}  // namespace

TensorField kron_matvec(const KronTerm& term, const TensorField& u, Exec exec) {
  check_term_dims(term, u);
  TensorField cur = u;
  TensorField next(u.dims);
  for (size_t d = 0; d < term.factors.size(); ++d) {
    apply_banded_along_dim(term.factors[d], static_cast<int>(d), cur, next, exec);
    std::swap(cur, next);
  }
  if (term.coeff != 1.0)
    for (double& v : cur.data) v *= term.coeff;
  return cur;
}

TensorField kron_matvec(const KronOperator& op, const TensorField& u, Exec exec) {
  if (op.terms.empty()) throw std::invalid_argument("kron_matvec: empty operator");
  TensorField out(u.dims);
  kron_matvec_accumulate(op, u, out, 1.0, exec);
  return out;
}

void kron_matvec_accumulate(const KronOperator& op, const TensorField& u, TensorField& out,
                            double scale, Exec exec) {
  if (out.dims != u.dims) throw std::invalid_argument("kron_matvec_accumulate: shape mismatch");
  for (const KronTerm& term : op.terms) {
    const TensorField y = kron_matvec(term, u, exec);
    const long long n = y.size();
    double* o = out.data.data();
    const double* s = y.data.data();
    if (exec == Exec::Serial) {
      for (long long i = 0; i < n; ++i) o[i] += scale * s[i];
    } else {
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < n; ++i) o[i] += scale * s[i];
    }
  }
}

KronTermSolver::KronTermSolver(const KronTerm& term) : coeff_(term.coeff) {
  if (term.coeff == 0.0) throw std::invalid_argument("KronTermSolver: zero coefficient");
  for (const auto& f : term.factors) {
    factors_.push_back(factor(f));
    dims_.push_back(f.dim());
  }
}

void KronTermSolver::solve_in_place(TensorField& x, Exec exec) const {
  if (x.dims != dims_) throw std::invalid_argument("KronTermSolver: shape mismatch");
  for (size_t d = 0; d < factors_.size(); ++d)
    solve_banded_along_dim(factors_[d], static_cast<int>(d), x, exec);
  if (coeff_ != 1.0)
    for (double& v : x.data) v /= coeff_;
}

TensorField KronTermSolver::solve(const TensorField& rhs, Exec exec) const {
  TensorField x = rhs;
  solve_in_place(x, exec);
  return x;
}

KronOperator splitting_defect(const KronOperator& mass, const KronOperator& stiffness, double eta) {
  const int d = mass.dim_count();
  if (mass.terms.size() != 1) throw std::invalid_argument("splitting_defect: mass must be one term");
  if (static_cast<int>(stiffness.terms.size()) != d)
    throw std::invalid_argument("splitting_defect: stiffness must be a d-term Kronecker sum");
  if (d != 2 && d != 3) throw std::invalid_argument("splitting_defect: only 2D/3D");

  auto mass_factor = [&](int dim) { return mass.terms[0].factors[dim]; };
  auto stiff_factor = [&](int dim) { return stiffness.terms[dim].factors[dim]; };

  KronOperator defect;
  if (d == 2) {
    defect.terms.push_back({eta * eta, {stiff_factor(0), stiff_factor(1)}});
    return defect;
  }
  // pairwise eta^2 terms, then the eta^3 triple term
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      KronTerm t;
      t.coeff = eta * eta;
      for (int dim = 0; dim < 3; ++dim)
        t.factors.push_back(dim == a || dim == b ? stiff_factor(dim) : mass_factor(dim));
      defect.terms.push_back(std::move(t));
    }
  defect.terms.push_back({eta * eta * eta, {stiff_factor(0), stiff_factor(1), stiff_factor(2)}});
  return defect;
}

Eigen::MatrixXd dense_expand(const KronTerm& term) {
  long long n = 1;
  for (const auto& f : term.factors) n *= f.dim();
  if (n > 10000) throw std::invalid_argument("dense_expand: size guard exceeded (N > 1e4)");

  // accumulate pairwise, keeping the already-expanded part fastest
  Eigen::MatrixXd acc = Eigen::MatrixXd::Constant(1, 1, term.coeff);
  for (const auto& f : term.factors) {
    const int ma = static_cast<int>(acc.rows());
    const int mb = f.dim();
    Eigen::MatrixXd next(ma * mb, ma * mb);
    for (int ib = 0; ib < mb; ++ib)
      for (int jb = 0; jb < mb; ++jb) {
        const double v = f.at(ib, jb);
        for (int ia = 0; ia < ma; ++ia)
          for (int ja = 0; ja < ma; ++ja)
            next(ia + ma * ib, ja + ma * jb) = v * acc(ia, ja);
      }
    acc = std::move(next);
  }
  return acc;
}

Eigen::MatrixXd dense_expand(const KronOperator& op) {
  if (op.terms.empty()) throw std::invalid_argument("dense_expand: empty operator");
  Eigen::MatrixXd out = dense_expand(op.terms[0]);
  for (size_t t = 1; t < op.terms.size(); ++t) out += dense_expand(op.terms[t]);
  return out;
}

void apply_dense_along_dim(const Eigen::MatrixXd& a, bool transpose, int dim, const TensorField& in,
                           TensorField& out) {
  if (out.dims != in.dims) throw std::invalid_argument("apply_dense_along_dim: shape mismatch");
  const int nd = in.dim_count();
  const int m = in.dims[dim];
  if (a.rows() != m || a.cols() != m)
    throw std::invalid_argument("apply_dense_along_dim: matrix size mismatch");
  long long before = 1, after = 1;
  for (int d = 0; d < dim; ++d) before *= in.dims[d];
  for (int d = dim + 1; d < nd; ++d) after *= in.dims[d];

  using Map = Eigen::Map<Eigen::MatrixXd>;
  using CMap = Eigen::Map<const Eigen::MatrixXd>;
  if (dim == 0) {
    CMap x(in.data.data(), m, after);
    Map y(out.data.data(), m, after);
    if (transpose)
      y.noalias() = a.transpose() * x;
    else
      y.noalias() = a * x;
    return;
  }
  if (after == 1) {
    CMap x(in.data.data(), before, m);
    Map y(out.data.data(), before, m);
    if (transpose)
      y.noalias() = x * a;
    else
      y.noalias() = x * a.transpose();
    return;
  }
  // middle dimension: one GEMM per trailing slab
  for (long long s = 0; s < after; ++s) {
    CMap x(in.data.data() + s * before * m, before, m);
    Map y(out.data.data() + s * before * m, before, m);
    if (transpose)
      y.noalias() = x * a;
    else
      y.noalias() = x * a.transpose();
  }
}

}  // namespace kronalpha
