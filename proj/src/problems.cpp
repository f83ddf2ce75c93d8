#include "kronalpha/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kronalpha {

namespace {

constexpr double kPi = std::numbers::pi;

double sin_prod(std::span<const double> x) {
  double v = 1.0;
  for (double xi : x) v *= std::sin(kPi * xi);
  return v;
}

double sin_prod_partial(std::span<const double> x, int dir) {
  double v = 1.0;
  for (int d = 0; d < static_cast<int>(x.size()); ++d)
    v *= d == dir ? kPi * std::cos(kPi * x[d]) : std::sin(kPi * x[d]);
  return v;
}

}  // namespace

ManufacturedProblem heat_manufactured(int dim) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("heat_manufactured: dim must be 2 or 3");
  ManufacturedProblem p;
  p.dim = dim;
  p.name = dim == 2 ? "heat_decay_2d" : "heat_decay_3d";
  const double rate = dim * kPi * kPi;
  p.value = [rate](std::span<const double> x, double t) {
    return std::exp(-rate * t) * sin_prod(x);
  };
  p.partial = [rate](std::span<const double> x, double t, int dir) {
    return std::exp(-rate * t) * sin_prod_partial(x, dir);
  };
  p.forcing = [](std::span<const double>, double) { return 0.0; };
  p.zero_forcing = true;
  return p;
}

ManufacturedProblem forced_manufactured(int dim) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("forced_manufactured: dim must be 2 or 3");
  ManufacturedProblem p;
  p.dim = dim;
  p.name = dim == 2 ? "forced_2d" : "forced_3d";
  const double rate = dim * kPi * kPi;
  // u = (1+t) e^{-rate t} prod sin(pi x_d); the Laplacian cancels the
  // exponential rate, leaving f = e^{-rate t} prod sin(pi x_d)
  p.value = [rate](std::span<const double> x, double t) {
    return (1.0 + t) * std::exp(-rate * t) * sin_prod(x);
  };
  p.partial = [rate](std::span<const double> x, double t, int dir) {
    return (1.0 + t) * std::exp(-rate * t) * sin_prod_partial(x, dir);
  };
  p.forcing = [rate](std::span<const double> x, double t) {
    return std::exp(-rate * t) * sin_prod(x);
  };
  p.zero_forcing = false;
  p.forcing_time = [rate](double t) { return std::exp(-rate * t); };
  for (int d = 0; d < dim; ++d)
    p.forcing_space.emplace_back([](double x) { return std::sin(kPi * x); });
  return p;
}

namespace {

struct DimTables {
  std::vector<BasisTable1D> tables;
  std::vector<int> interior;  // eliminated sizes
  std::vector<int> elems;
};

DimTables make_tables(std::span<const BasisSpec1D> specs, int quad_points, int extra) {
  DimTables dt;
  for (const auto& spec : specs) {
    const int q = quad_points > 0 ? quad_points : spec.degree + extra;
    dt.tables.push_back(tabulate_basis(spec, q));
    dt.interior.push_back(spec.num_interior());
    dt.elems.push_back(spec.elements);
  }
  return dt;
}

}  // namespace

ErrorNorms error_norms(const TensorField& coeffs, double t, const ManufacturedProblem& problem,
                       std::span<const BasisSpec1D> specs, int quad_points, Exec exec) {
  const int d = static_cast<int>(specs.size());
  if (d != problem.dim) throw std::invalid_argument("error_norms: dimension mismatch");
  if (d != 2 && d != 3) throw std::invalid_argument("error_norms: dim must be 2 or 3");
  const DimTables dt = make_tables(specs, quad_points, 2);
  for (int k = 0; k < d; ++k)
    if (coeffs.dims[k] != dt.interior[k])
      throw std::invalid_argument("error_norms: coefficient shape mismatch");

  long long total_elems = 1;
  for (int k = 0; k < d; ++k) total_elems *= dt.elems[k];
  std::vector<double> elem_l2(total_elems, 0.0), elem_grad(total_elems, 0.0);
  const double* cdata = coeffs.data.data();

  auto body2d = [&](long long ef) {
    const int ex = static_cast<int>(ef % dt.elems[0]);
    const int ey = static_cast<int>(ef / dt.elems[0]);
    const BasisTable1D& tx = dt.tables[0];
    const BasisTable1D& ty = dt.tables[1];
    const int px = tx.p(), py = ty.p();
    const int mx = dt.interior[0];
    double acc_l2 = 0.0, acc_grad = 0.0;
    for (int qy = 0; qy < ty.quad_points; ++qy)
      for (int qx = 0; qx < tx.quad_points; ++qx) {
        const double pt[2] = {tx.point(ex, qx), ty.point(ey, qy)};
        const double w = tx.gauss_w[qx] * ty.gauss_w[qy];
        double uh = 0.0, uhx = 0.0, uhy = 0.0;
        for (int ly = 0; ly <= py; ++ly) {
          const int iy = ty.first[ey] + ly - 1;
          if (iy < 0 || iy >= dt.interior[1]) continue;
          const double vy = ty.value(ey, qy, ly), dy = ty.deriv(ey, qy, ly);
          for (int lx = 0; lx <= px; ++lx) {
            const int ix = tx.first[ex] + lx - 1;
            if (ix < 0 || ix >= mx) continue;
            const double c = cdata[ix + static_cast<long long>(mx) * iy];
            uh += c * tx.value(ex, qx, lx) * vy;
            uhx += c * tx.deriv(ex, qx, lx) * vy;
            uhy += c * tx.value(ex, qx, lx) * dy;
          }
        }
        const double du = problem.value(pt, t) - uh;
        const double dgx = problem.partial(pt, t, 0) - uhx;
        const double dgy = problem.partial(pt, t, 1) - uhy;
        acc_l2 += w * du * du;
        acc_grad += w * (dgx * dgx + dgy * dgy);
      }
    elem_l2[ef] = acc_l2;
    elem_grad[ef] = acc_grad;
  };

  auto body3d = [&](long long ef) {
    const int ex = static_cast<int>(ef % dt.elems[0]);
    const int ey = static_cast<int>((ef / dt.elems[0]) % dt.elems[1]);
    const int ez = static_cast<int>(ef / (static_cast<long long>(dt.elems[0]) * dt.elems[1]));
    const BasisTable1D& tx = dt.tables[0];
    const BasisTable1D& ty = dt.tables[1];
    const BasisTable1D& tz = dt.tables[2];
    const int mx = dt.interior[0], my = dt.interior[1];
    double acc_l2 = 0.0, acc_grad = 0.0;
    for (int qz = 0; qz < tz.quad_points; ++qz)
      for (int qy = 0; qy < ty.quad_points; ++qy)
        for (int qx = 0; qx < tx.quad_points; ++qx) {
          const double pt[3] = {tx.point(ex, qx), ty.point(ey, qy), tz.point(ez, qz)};
          const double w = tx.gauss_w[qx] * ty.gauss_w[qy] * tz.gauss_w[qz];
          double uh = 0.0, g0 = 0.0, g1 = 0.0, g2 = 0.0;
          for (int lz = 0; lz <= tz.p(); ++lz) {
            const int iz = tz.first[ez] + lz - 1;
            if (iz < 0 || iz >= dt.interior[2]) continue;
            for (int ly = 0; ly <= ty.p(); ++ly) {
              const int iy = ty.first[ey] + ly - 1;
              if (iy < 0 || iy >= my) continue;
              for (int lx = 0; lx <= tx.p(); ++lx) {
                const int ix = tx.first[ex] + lx - 1;
                if (ix < 0 || ix >= mx) continue;
                const double c =
                    cdata[ix + static_cast<long long>(mx) * (iy + static_cast<long long>(my) * iz)];
                const double vx = tx.value(ex, qx, lx), vy = ty.value(ey, qy, ly),
                             vz = tz.value(ez, qz, lz);
                uh += c * vx * vy * vz;
                g0 += c * tx.deriv(ex, qx, lx) * vy * vz;
                g1 += c * vx * ty.deriv(ey, qy, ly) * vz;
                g2 += c * vx * vy * tz.deriv(ez, qz, lz);
              }
            }
          }
          const double du = problem.value(pt, t) - uh;
          const double d0 = problem.partial(pt, t, 0) - g0;
          const double d1 = problem.partial(pt, t, 1) - g1;
          const double d2 = problem.partial(pt, t, 2) - g2;
          acc_l2 += w * du * du;
          acc_grad += w * (d0 * d0 + d1 * d1 + d2 * d2);
        }
    elem_l2[ef] = acc_l2;
    elem_grad[ef] = acc_grad;
  };

  if (exec == Exec::Serial) {
    for (long long ef = 0; ef < total_elems; ++ef) d == 2 ? body2d(ef) : body3d(ef);
  } else {
#pragma omp parallel for schedule(static)
    for (long long ef = 0; ef < total_elems; ++ef) d == 2 ? body2d(ef) : body3d(ef);
  }

  // fixed-order reduction keeps the result independent of thread count
  double sum_l2 = 0.0, sum_grad = 0.0;
  for (long long ef = 0; ef < total_elems; ++ef) {
    sum_l2 += elem_l2[ef];
    sum_grad += elem_grad[ef];
  }
  return {std::sqrt(sum_l2), std::sqrt(sum_grad)};
}

TensorField assemble_functional(const std::function<double(std::span<const double>)>& g,
                                std::span<const BasisSpec1D> specs, int quad_points, Exec exec) {
  const int d = static_cast<int>(specs.size());
  if (d == 1) {
    auto load = assemble_load_1d(specs[0], [&](double x) { return g(std::span(&x, 1)); }, true,
                                 quad_points);
    TensorField out({static_cast<int>(load.size())});
    out.data = std::move(load);
    return out;
  }
  if (d != 2 && d != 3) throw std::invalid_argument("assemble_functional: dim must be 1, 2, or 3");
  const DimTables dt = make_tables(specs, quad_points, 2);
  std::vector<int> dims(dt.interior);
  TensorField out(dims);

  long long total_elems = 1;
  int local = 1;
  for (int k = 0; k < d; ++k) {
    total_elems *= dt.elems[k];
    local *= specs[k].degree + 1;
  }
  std::vector<double> contrib(static_cast<size_t>(total_elems) * local, 0.0);

  auto body = [&](long long ef) {
    double* elem = contrib.data() + ef * local;
    if (d == 2) {
      const int ex = static_cast<int>(ef % dt.elems[0]);
      const int ey = static_cast<int>(ef / dt.elems[0]);
      const BasisTable1D& tx = dt.tables[0];
      const BasisTable1D& ty = dt.tables[1];
      for (int qy = 0; qy < ty.quad_points; ++qy)
        for (int qx = 0; qx < tx.quad_points; ++qx) {
          const double pt[2] = {tx.point(ex, qx), ty.point(ey, qy)};
          const double wf = tx.gauss_w[qx] * ty.gauss_w[qy] * g(pt);
          for (int ly = 0; ly <= ty.p(); ++ly)
            for (int lx = 0; lx <= tx.p(); ++lx)
              elem[lx + (tx.p() + 1) * ly] += wf * tx.value(ex, qx, lx) * ty.value(ey, qy, ly);
        }
    } else {
      const int ex = static_cast<int>(ef % dt.elems[0]);
      const int ey = static_cast<int>((ef / dt.elems[0]) % dt.elems[1]);
      const int ez = static_cast<int>(ef / (static_cast<long long>(dt.elems[0]) * dt.elems[1]));
      const BasisTable1D& tx = dt.tables[0];
      const BasisTable1D& ty = dt.tables[1];
      const BasisTable1D& tz = dt.tables[2];
      for (int qz = 0; qz < tz.quad_points; ++qz)
        for (int qy = 0; qy < ty.quad_points; ++qy)
          for (int qx = 0; qx < tx.quad_points; ++qx) {
            const double pt[3] = {tx.point(ex, qx), ty.point(ey, qy), tz.point(ez, qz)};
            const double wf = tx.gauss_w[qx] * ty.gauss_w[qy] * tz.gauss_w[qz] * g(pt);
            for (int lz = 0; lz <= tz.p(); ++lz)
              for (int ly = 0; ly <= ty.p(); ++ly)
                for (int lx = 0; lx <= tx.p(); ++lx)
                  elem[lx + (tx.p() + 1) * (ly + (ty.p() + 1) * lz)] +=
                      wf * tx.value(ex, qx, lx) * ty.value(ey, qy, ly) * tz.value(ez, qz, lz);
          }
    }
  };

  if (exec == Exec::Serial) {
    for (long long ef = 0; ef < total_elems; ++ef) body(ef);
  } else {
#pragma omp parallel for schedule(static)
    for (long long ef = 0; ef < total_elems; ++ef) body(ef);
  }

  // serial scatter in element order (deterministic)
  for (long long ef = 0; ef < total_elems; ++ef) {
    const double* elem = contrib.data() + ef * local;
    if (d == 2) {
      const int ex = static_cast<int>(ef % dt.elems[0]);
      const int ey = static_cast<int>(ef / dt.elems[0]);
      for (int ly = 0; ly <= specs[1].degree; ++ly) {
        const int iy = dt.tables[1].first[ey] + ly - 1;
        if (iy < 0 || iy >= dims[1]) continue;
        for (int lx = 0; lx <= specs[0].degree; ++lx) {
          const int ix = dt.tables[0].first[ex] + lx - 1;
          if (ix < 0 || ix >= dims[0]) continue;
          out.data[ix + static_cast<long long>(dims[0]) * iy] +=
              elem[lx + (specs[0].degree + 1) * ly];
        }
      }
    } else {
      const int ex = static_cast<int>(ef % dt.elems[0]);
      const int ey = static_cast<int>((ef / dt.elems[0]) % dt.elems[1]);
      const int ez = static_cast<int>(ef / (static_cast<long long>(dt.elems[0]) * dt.elems[1]));
      for (int lz = 0; lz <= specs[2].degree; ++lz) {
        const int iz = dt.tables[2].first[ez] + lz - 1;
        if (iz < 0 || iz >= dims[2]) continue;
        for (int ly = 0; ly <= specs[1].degree; ++ly) {
          const int iy = dt.tables[1].first[ey] + ly - 1;
          if (iy < 0 || iy >= dims[1]) continue;
          for (int lx = 0; lx <= specs[0].degree; ++lx) {
            const int ix = dt.tables[0].first[ex] + lx - 1;
            if (ix < 0 || ix >= dims[0]) continue;
            out.data[ix + static_cast<long long>(dims[0]) *
                              (iy + static_cast<long long>(dims[1]) * iz)] +=
                elem[lx + (specs[0].degree + 1) * (ly + (specs[1].degree + 1) * lz)];
          }
        }
      }
    }
  }
  return out;
}

TensorField load_vector_general(const ManufacturedProblem& problem,
                                std::span<const BasisSpec1D> specs, double t, int quad_points,
                                Exec exec) {
  std::vector<int> dims;
  for (const auto& s : specs) dims.push_back(s.num_interior());
  if (problem.zero_forcing) return TensorField(dims);
  return assemble_functional([&](std::span<const double> x) { return problem.forcing(x, t); },
                             specs, quad_points, exec);
}

TensorField load_vector(const ManufacturedProblem& problem, std::span<const BasisSpec1D> specs,
                        double t, int quad_points, Exec exec) {
  const int d = static_cast<int>(specs.size());
  std::vector<int> dims;
  for (const auto& s : specs) dims.push_back(s.num_interior());
  if (problem.zero_forcing) return TensorField(dims);

  if (!problem.separable_forcing()) return load_vector_general(problem, specs, t, quad_points, exec);

  // outer product of 1D loads times the scalar time factor
  std::vector<std::vector<double>> loads;
  for (int k = 0; k < d; ++k)
    loads.push_back(assemble_load_1d(specs[k], problem.forcing_space[k], true, quad_points));
  TensorField out(dims);
  const double ft = problem.forcing_time(t);
  const long long n = out.size();
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (long long idx = 0; idx < n; ++idx) {
    long long rest = idx;
    double v = ft;
    for (int k = 0; k < d; ++k) {
      v *= loads[k][rest % dims[k]];
      rest /= dims[k];
    }
    out.data[idx] = v;
  }
  return out;
}

}  // namespace kronalpha
