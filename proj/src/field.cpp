#include "condcap/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace condcap {

PotentialField PotentialField::from(const CondenserResult& r) {
  return {r.d, r.info, r.constants, r.boundary_f, r.aux_points, r.coefficient.alpha};
}

VectorXcd cauchy_eval(const Discretization& d, const VectorXcd& f, std::span<const Complex> z,
                      bool field_bounded) {
  const Index size = d.size();
  const double w = d.weight();
  VectorXcd out(static_cast<Index>(z.size()));
#pragma omp parallel for schedule(dynamic, 16)
  for (Index p = 0; p < static_cast<Index>(z.size()); ++p) {
    Complex num{0.0, 0.0}, den{0.0, 0.0};
    Index hit = -1;
    for (Index k = 0; k < size; ++k) {
      const Complex diff = d.z[k] - z[p];
      if (diff == Complex{0.0, 0.0}) {
        hit = k;
        break;
      }
      const Complex q = w * d.dz[k] / diff;
      num += f[k] * q;
      den += q;
    }
    if (hit >= 0) {
      out[p] = f[hit];
    } else {
      out[p] = num / (field_bounded ? den : den + two_pi * I);
    }
  }
  return out;
}

std::vector<double> potential_at(const PotentialField& field, std::span<const Complex> z) {
  const VectorXcd f = cauchy_eval(field.d, field.boundary_f, z, field.info.field_bounded);
  std::vector<double> u(z.size());
  for (std::size_t p = 0; p < z.size(); ++p) {
    double v = field.constants.c;
    v += field.alpha ? ((z[p] - *field.alpha) * f[p]).real() : f[p].real();
    for (std::size_t k = 0; k < field.aux_points.size(); ++k) {
      v -= field.constants.a[k] * std::log(std::abs(z[p] - field.aux_points[k]));
    }
    u[p] = v;
  }
  return u;
}

Complex FieldGrid::point(int ix, int iy) const {
  const double x = nx > 1 ? bounds.xmin + ix * (bounds.xmax - bounds.xmin) / (nx - 1) : bounds.xmin;
  const double y = ny > 1 ? bounds.ymin + iy * (bounds.ymax - bounds.ymin) / (ny - 1) : bounds.ymin;
  return {x, y};
}

FieldGrid grid(const PotentialField& field, const GridBounds& bounds, int nx, int ny) {
  if (nx < 1 || ny < 1) throw ConfigError("grid dimensions must be positive");
  FieldGrid g;
  g.bounds = bounds;
  g.nx = nx;
  g.ny = ny;
  const auto total = static_cast<std::size_t>(nx) * ny;
  g.mask.resize(total);
  g.u.assign(total, std::nullopt);

  std::vector<Complex> inside;
  std::vector<std::size_t> where;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const auto k = static_cast<std::size_t>(g.index(ix, iy));
      const Complex z = g.point(ix, iy);
      g.mask[k] = locate_point(field.d, z);
      if (g.mask[k].kind == PointLocation::Kind::in_field) {
        inside.push_back(z);
        where.push_back(k);
      }
    }
  }
  const std::vector<double> u = potential_at(field, inside);
  for (std::size_t i = 0; i < where.size(); ++i) g.u[where[i]] = u[i];
  return g;
}

GridBounds default_bounds(const Discretization& d, double margin) {
  const double inf = std::numeric_limits<double>::infinity();
  GridBounds b{inf, -inf, inf, -inf};
  for (Index k = 0; k < d.size(); ++k) {
    b.xmin = std::min(b.xmin, d.z[k].real());
    b.xmax = std::max(b.xmax, d.z[k].real());
    b.ymin = std::min(b.ymin, d.z[k].imag());
    b.ymax = std::max(b.ymax, d.z[k].imag());
  }
  const double px = margin * (b.xmax - b.xmin), py = margin * (b.ymax - b.ymin);
  return {b.xmin - px, b.xmax + px, b.ymin - py, b.ymax + py};
}

HarmonicMeasure::HarmonicMeasure(const CondenserProblem& geometry, int n, const SolverOptions& opts)
    : solver_(geometry, n, opts) {}

PotentialField HarmonicMeasure::field(int j) const {
  const int m = plates();
  if (j < 0 || j >= m) throw ConfigError("harmonic measure component out of range");
  std::vector<double> levels(m, 0.0);
  levels[j] = 1.0;
  return PotentialField::from(solver_.solve(levels));
}

std::vector<double> HarmonicMeasure::at(int j, std::span<const Complex> z) const {
  return potential_at(field(j), z);
}

std::vector<double> harmonic_measure(const CondenserProblem& geometry, int j,
                                     std::span<const Complex> z, int n, const SolverOptions& opts) {
  return HarmonicMeasure(geometry, n, opts).at(j, z);
}

}  // namespace condcap
