#include "kronalpha/assembly1d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kronalpha {

GaussRule gauss_legendre(int npoints) {
  if (npoints < 1 || npoints > 64) throw std::invalid_argument("gauss_legendre: npoints out of range");
  GaussRule rule;
  rule.points.resize(npoints);
  rule.weights.resize(npoints);
  // Newton on P_n with the Chebyshev-based initial guess
  for (int i = 0; i < npoints; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (npoints + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      if (npoints == 1) p1 = x;
      for (int k = 2; k <= npoints; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = npoints == 1 ? x : p1;
      const double pm = npoints == 1 ? 1.0 : p0;
      dp = npoints * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.points[npoints - 1 - i] = x;
    rule.weights[npoints - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

BasisTable1D tabulate_basis(const BasisSpec1D& spec, int quad_points) {
  spec.validate();
  const int p = spec.degree;
  const int q = quad_points > 0 ? quad_points : p + 1;
  const int ne = spec.elements;
  const double h = spec.element_size();
  const GaussRule rule = gauss_legendre(q);
  const std::vector<double> knots = make_open_knot_vector(spec);

  BasisTable1D table;
  table.spec = spec;
  table.quad_points = q;
  table.gauss_x.resize(static_cast<size_t>(ne) * q);
  table.gauss_w.resize(q);
  table.values.resize(static_cast<size_t>(ne) * q * (p + 1));
  table.derivs.resize(static_cast<size_t>(ne) * q * (p + 1));
  table.first.resize(ne);

  for (int j = 0; j < q; ++j) table.gauss_w[j] = 0.5 * h * rule.weights[j];

  BasisEvaluation ev;
  for (int e = 0; e < ne; ++e) {
    const double a = e * h;
    for (int j = 0; j < q; ++j) {
      const double x = a + 0.5 * h * (rule.points[j] + 1.0);
      table.gauss_x[e * q + j] = x;
      eval_basis(knots, p, x, ev);
      if (j == 0) table.first[e] = ev.first;
      for (int l = 0; l <= p; ++l) {
        table.values[(static_cast<size_t>(e) * q + j) * (p + 1) + l] = ev.values[l];
        table.derivs[(static_cast<size_t>(e) * q + j) * (p + 1) + l] = ev.derivatives[l];
      }
    }
  }
  return table;
}

namespace {

enum class Integrand { Values, Derivatives };

BandedSpdMatrix assemble_1d(const BasisSpec1D& spec, Integrand kind, bool eliminate, int quad_points) {
  const BasisTable1D table = tabulate_basis(spec, quad_points);
  const int p = spec.degree;
  const int q = table.quad_points;
  const int nfull = spec.num_basis();

  BandedSpdMatrix full(nfull, p);
  for (int e = 0; e < spec.elements; ++e) {
    const int first = table.first[e];
    for (int j = 0; j < q; ++j) {
      const double w = table.gauss_w[j];
      for (int a = 0; a <= p; ++a) {
        const double va = kind == Integrand::Values ? table.value(e, j, a) : table.deriv(e, j, a);
        for (int b = 0; b <= p; ++b) {
          const double vb = kind == Integrand::Values ? table.value(e, j, b) : table.deriv(e, j, b);
          full.add(first + a, first + b, w * va * vb);
        }
      }
    }
  }
  if (!eliminate) return full;

  const int m = nfull - 2;
  if (m < 1) throw std::invalid_argument("assemble_1d: no interior functions left after elimination");
  BandedSpdMatrix out(m, p);
  for (int i = 0; i < m; ++i)
    for (int j = std::max(0, i - p); j <= std::min(m - 1, i + p); ++j)
      out.set(i, j, full.at(i + 1, j + 1));
  return out;
}

}  // namespace

BandedSpdMatrix assemble_mass_1d(const BasisSpec1D& spec, bool eliminate_boundary, int quad_points) {
  return assemble_1d(spec, Integrand::Values, eliminate_boundary, quad_points);
}

BandedSpdMatrix assemble_stiffness_1d(const BasisSpec1D& spec, bool eliminate_boundary,
                                      int quad_points) {
  return assemble_1d(spec, Integrand::Derivatives, eliminate_boundary, quad_points);
}

std::vector<double> assemble_load_1d(const BasisSpec1D& spec, const std::function<double(double)>& f,
                                     bool eliminate_boundary, int quad_points) {
  const BasisTable1D table = tabulate_basis(spec, quad_points > 0 ? quad_points : spec.degree + 2);
  const int p = spec.degree;
  const int q = table.quad_points;
  std::vector<double> full(spec.num_basis(), 0.0);
  for (int e = 0; e < spec.elements; ++e) {
    const int first = table.first[e];
    for (int j = 0; j < q; ++j) {
      const double wf = table.gauss_w[j] * f(table.point(e, j));
      for (int a = 0; a <= p; ++a) full[first + a] += wf * table.value(e, j, a);
    }
  }
  if (!eliminate_boundary) return full;
  return std::vector<double>(full.begin() + 1, full.end() - 1);
}

}  // namespace kronalpha
