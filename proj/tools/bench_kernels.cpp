// Benchmark of the OpenMP fiber kernels against the serial reference:
// kron_matvec, the Kronecker term solve, and banded factor/solve scaling.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kronalpha/assembly1d.hpp"
#include "kronalpha/kronops.hpp"

using namespace kronalpha;

namespace {

double time_median(int reps, const std::function<void()>& fn) {
  std::vector<double> samples;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

TensorField ramp_field(const std::vector<int>& dims) {
  TensorField f(dims);
  for (long long i = 0; i < f.size(); ++i) f.data[i] = 0.5 + 0.001 * static_cast<double>(i % 997);
  return f;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#endif

  std::printf("\n2D kron kernels, C1 quadratics (p=2, k=1)\n");
  std::printf("%10s %14s %14s %14s %9s %14s %14s %9s\n", "N", "matvec_ser_ms", "matvec_par_ms",
              "", "speedup", "solve_ser_ms", "solve_par_ms", "speedup");
  for (int n : {64, 128, 256, 512, 1024}) {
    const BasisSpec1D spec{2, 1, n};
    const auto mass = assemble_mass_1d(spec);
    const auto stiff = assemble_stiffness_1d(spec);
    KronTerm term;
    term.factors = {combine(mass, 1e-3, stiff), combine(mass, 1e-3, stiff)};
    KronOperator op;
    op.terms.push_back(term);
    const KronTermSolver solver(term);
    const TensorField x = ramp_field({mass.dim(), mass.dim()});

    const int reps = n >= 512 ? 5 : 9;
    const double mv_s = time_median(reps, [&] { kron_matvec(op, x, Exec::Serial); });
    const double mv_p = time_median(reps, [&] { kron_matvec(op, x, Exec::Parallel); });
    const double sv_s = time_median(reps, [&] { solver.solve(x, Exec::Serial); });
    const double sv_p = time_median(reps, [&] { solver.solve(x, Exec::Parallel); });

    // the two variants must agree bitwise
    const TensorField a = kron_matvec(op, x, Exec::Serial);
    const TensorField b = kron_matvec(op, x, Exec::Parallel);
    if (a.data != b.data) {
      std::fprintf(stderr, "FATAL: serial/parallel matvec mismatch at N=%lld\n",
                   static_cast<long long>(x.size()));
      return 1;
    }

    std::printf("%10lld %14.3f %14.3f %14s %8.2fx %14.3f %14.3f %8.2fx\n",
                static_cast<long long>(x.size()), mv_s * 1e3, mv_p * 1e3, "", mv_s / mv_p,
                sv_s * 1e3, sv_p * 1e3, sv_s / sv_p);
  }

  std::printf("\nbanded Cholesky factor+solve scaling (p=2 band)\n");
  std::printf("%10s %16s\n", "m", "factor+solve_ms");
  for (int m = 128; m <= 8192; m *= 2) {
    const BasisSpec1D spec{2, 1, m};
    const auto a = combine(assemble_mass_1d(spec), 1e-3, assemble_stiffness_1d(spec));
    std::vector<double> rhs(a.dim(), 1.0);
    const double t = time_median(9, [&] {
      auto f = factor(a);
      auto x = solve_banded(f, rhs);
      (void)x;
    });
    std::printf("%10d %16.4f\n", a.dim(), t * 1e3);
  }
  return 0;
}
