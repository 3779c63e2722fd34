#include "condcap/condenser.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace condcap {
namespace {

// Node count of the coarse sampling used for topology checks and for
// locating auxiliary points; independent of the solve resolution.
constexpr int check_nodes = 256;

std::string component_name(const CaseInfo& info, int j) {
  std::ostringstream s;
  if (j < info.m) {
    s << "plate " << j + 1;
  } else {
    s << "wall " << j - info.m + 1;
  }
  return s.str();
}

int winding_or_throw(const Discretization& d, int j, Complex w, const std::string& what) {
  try {
    return winding_number(d, j, w);
  } catch (const GeometryError&) {
    throw GeometryError(what);
  }
}

// True when w lies in G: outside every hole and inside the external curve.
bool strictly_in_field(const Discretization& d, Complex w) {
  for (int j = 0; j < d.components(); ++j) {
    const int wind = winding_number(d, j, w);
    if (d.orientations[j] == Orientation::cw ? wind != 0 : wind == 0) return false;
  }
  return true;
}

void check_topology(const Discretization& d, const CaseInfo& info) {
  const int count = d.components();
  const int stride = std::max(1, d.n / 32);
  for (int j = 0; j < count; ++j) {
    const bool external = info.external_index && *info.external_index == j;
    for (int i = 0; i < count; ++i) {
      if (i == j) continue;
      int inside = 0, tested = 0;
      for (int p = 0; p < d.n; p += stride, ++tested) {
        const Complex w = d.z[d.offset(i) + p];
        const int wind = winding_or_throw(
            d, j, w, component_name(info, i) + " touches " + component_name(info, j));
        if (external ? wind != 0 : wind == 0) ++inside;
      }
      // `inside` counts nodes on the correct side (in the closure of G).
      if (inside == tested) continue;
      std::ostringstream msg;
      if (inside == 0) {
        msg << component_name(info, i)
            << (external ? " lies outside the external " : " is nested inside ")
            << component_name(info, j);
      } else {
        msg << component_name(info, i) << " intersects " << component_name(info, j);
      }
      throw GeometryError(msg.str());
    }
  }
}

}  // namespace

std::vector<BoundaryComponent> CondenserProblem::components() const {
  std::vector<BoundaryComponent> all;
  all.reserve(plates.size() + walls.size());
  for (const auto& p : plates) all.push_back(p.with_role(Role::plate));
  for (const auto& w : walls) all.push_back(w.with_role(Role::neumann));
  return all;
}

CondenserProblem CondenserProblem::transformed(Complex scale, Complex shift) const {
  CondenserProblem out = *this;
  for (auto& p : out.plates) p = p.transformed(scale, shift);
  for (auto& w : out.walls) w = w.transformed(scale, shift);
  for (auto& a : out.aux_points) {
    if (a) a = scale * *a + shift;
  }
  if (out.alpha) out.alpha = scale * *out.alpha + shift;
  return out;
}

CaseInfo classify(const CondenserProblem& problem) {
  CaseInfo info;
  info.m = static_cast<int>(problem.plates.size());
  info.ell = static_cast<int>(problem.walls.size());
  if (info.m < 2) throw ConfigError("m >= 2 required: a condenser needs at least two plates");
  if (problem.levels.size() != problem.plates.size()) {
    std::ostringstream msg;
    msg << "expected " << info.m << " plate levels, got " << problem.levels.size();
    throw ConfigError(msg.str());
  }
  for (double v : problem.levels) {
    if (!std::isfinite(v)) throw ConfigError("plate levels must be finite");
  }
  if (problem.aux_points.size() > problem.plates.size()) {
    throw ConfigError("more auxiliary points than plates");
  }

  const auto comps = problem.components();
  const int count = static_cast<int>(comps.size());
  for (int j = 0; j < count; ++j) {
    if (comps[j].orientation() != Orientation::ccw) continue;
    if (info.external_index) {
      throw GeometryError("more than one counterclockwise (external) boundary component");
    }
    info.external_index = j;
  }
  if (info.external_index) {
    const int e = *info.external_index;
    if (e < info.m && e != info.m - 1) {
      throw GeometryError("the external plate must be the last plate");
    }
    if (e >= info.m && e != count - 1) {
      throw GeometryError("the external wall must be the last wall");
    }
  }

  info.field_bounded = info.external_index.has_value();
  info.host_bounded = info.field_bounded && *info.external_index >= info.m;
  info.m_prime = info.field_bounded && !info.host_bounded ? info.m - 1 : info.m;
  info.ell_prime = info.host_bounded ? info.ell - 1 : info.ell;

  check_topology(discretize(comps, check_nodes), info);
  return info;
}

RHCoefficient build_coefficient(const CaseInfo& info, const Discretization& d,
                                std::optional<Complex> alpha) {
  if (!info.field_bounded) return make_rh_coefficient(d, std::nullopt);
  if (!alpha) throw GeometryError("a bounded field needs an interior point alpha");
  return make_rh_coefficient(d, alpha);
}

VectorXd build_gamma(const CaseInfo& info, const Discretization& d, Complex alpha_k,
                     std::optional<Complex> alpha) {
  const bool ratio = info.host_bounded;
  if (ratio && !alpha) throw GeometryError("a bounded host domain needs an interior point alpha");
  auto base = [&](Complex z) {
    const Complex r = ratio ? (z - alpha_k) / (z - *alpha) : z - alpha_k;
    if (r == Complex{0.0, 0.0} || !std::isfinite(std::abs(r))) {
      throw GeometryError("auxiliary point lies on the boundary");
    }
    return r;
  };

  VectorXd gamma(d.size());
  for (int j = 0; j < d.components(); ++j) {
    const Index off = d.offset(j);
    if (d.roles[j] == Role::plate) {
      for (int i = 0; i < d.n; ++i) gamma[off + i] = std::log(std::abs(base(d.z[off + i])));
      continue;
    }
    // Wall: Re[-i log r] = arg r, kept on a continuous branch.
    Complex prev = base(d.z[off]);
    double value = std::arg(prev);
    gamma[off] = value;
    for (int i = 1; i < d.n; ++i) {
      const Complex cur = base(d.z[off + i]);
      value += std::arg(cur / prev);
      gamma[off + i] = value;
      prev = cur;
    }
    const double closing = value + std::arg(base(d.z[off]) / prev) - gamma[off];
    const double scale = 1.0 + gamma.segment(off, d.n).cwiseAbs().maxCoeff();
    if (std::abs(closing) > 1e-8 * scale) {
      std::ostringstream msg;
      msg << "gamma is not periodic on wall " << j - info.m + 1
          << "; the auxiliary point is not enclosed consistently";
      throw GeometryError(msg.str());
    }
  }
  return gamma;
}

ConstantsSolution solve_constants(const CaseInfo& info, const MatrixXd& h_means,
                                  std::span<const double> levels) {
  const int m = info.m, ell = info.ell, mp = info.m_prime;
  if (h_means.rows() != m + ell || h_means.cols() != mp) {
    throw SolverError("component means do not match the condenser case");
  }
  if (static_cast<int>(levels.size()) != m) throw ConfigError("level count does not match plates");

  const int extra = info.case_two() ? 0 : 1;
  const int size = mp + 1 + ell;
  if (m + ell + extra != size) throw SolverError("constants system is not square");
  MatrixXd mat = MatrixXd::Zero(size, size);
  VectorXd rhs = VectorXd::Zero(size);
  mat.topLeftCorner(m + ell, mp) = h_means;
  mat.block(0, mp, m, 1).setOnes();
  mat.block(m, mp + 1, ell, ell) = -MatrixXd::Identity(ell, ell);
  for (int j = 0; j < m; ++j) rhs[j] = levels[j];
  if (extra) mat.block(m + ell, 0, 1, mp).setOnes();

  Eigen::PartialPivLU<MatrixXd> lu(mat);
  if (!(lu.rcond() > std::numeric_limits<double>::epsilon())) {
    throw SolverError("constants system is singular to working precision");
  }
  const VectorXd x = lu.solve(rhs);

  ConstantsSolution out;
  out.a.resize(m);
  out.a.head(mp) = x.head(mp);
  if (info.case_two()) out.a[m - 1] = -x.head(mp).sum();
  out.c = x[mp];
  out.nu = x.tail(ell);
  const double scale = std::max(rhs.norm(), 1.0);
  out.residual = (mat * x - rhs).norm() / scale;
  return out;
}

ConstantsSolution solve_constants(const CaseInfo& info, std::span<const BieSolution> solutions,
                                  std::span<const double> levels) {
  MatrixXd h(info.m + info.ell, static_cast<Index>(solutions.size()));
  for (std::size_t k = 0; k < solutions.size(); ++k) h.col(k) = solutions[k].means;
  return solve_constants(info, h, levels);
}

double capacity(const ConstantsSolution& constants, std::span<const double> levels) {
  double sum = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k) sum += levels[k] * constants.a[k];
  return two_pi * sum;
}

std::vector<Complex> resolve_aux_points(const CondenserProblem& problem, const CaseInfo& info,
                                        const Discretization& d) {
  std::vector<Complex> out;
  for (int k = 0; k < info.m_prime; ++k) {
    const bool given = k < static_cast<int>(problem.aux_points.size()) && problem.aux_points[k];
    const Complex a = given ? *problem.aux_points[k] : problem.plates[k].centroid();
    std::ostringstream msg;
    msg << "auxiliary point " << a << " of plate " << k + 1 << " is not inside it";
    if (winding_or_throw(d, k, a, msg.str()) == 0) throw GeometryError(msg.str());
    out.push_back(a);
  }
  return out;
}

Complex choose_interior_point(const Discretization& d) {
  // The search grid lives in a frame attached to the nodes (origin at their
  // mean, first axis through node 0), so a similarity map of the problem
  // maps the chosen point along with it.
  const Complex origin = d.z.mean();
  double radius = 0.0;
  for (Index k = 0; k < d.size(); ++k) radius = std::max(radius, std::abs(d.z[k] - origin));
  Complex axis = d.z[0] - origin;
  axis = std::abs(axis) > 1e-12 * radius ? axis / std::abs(axis) : Complex{1.0, 0.0};

  constexpr int cells = 48;
  Complex best{0.0, 0.0};
  double best_dist = -1.0;
  for (int iy = 0; iy < cells; ++iy) {
    for (int ix = 0; ix < cells; ++ix) {
      const Complex local{-1.0 + (2.0 * ix + 1.0) / cells, -1.0 + (2.0 * iy + 1.0) / cells};
      const Complex w = origin + radius * axis * local;
      double dist = std::numeric_limits<double>::infinity();
      for (int j = 0; j < d.components(); ++j) dist = std::min(dist, distance_to_component(d, j, w));
      // Near-ties keep the earlier point, so rounding cannot reorder them.
      if (dist <= best_dist * (1.0 + 1e-9) || dist < 1e-6 * radius) continue;
      if (!strictly_in_field(d, w)) continue;
      best = w;
      best_dist = dist;
    }
  }
  if (best_dist < 0.0) throw GeometryError("could not find an interior point of the field");
  return best;
}

CondenserSolver::CondenserSolver(const CondenserProblem& problem, int n, const SolverOptions& opts)
    : info_(classify(problem)) {
  const auto comps = problem.components();
  const Discretization coarse = discretize(comps, check_nodes);

  std::optional<Complex> alpha;
  if (info_.field_bounded) {
    if (problem.alpha) {
      std::ostringstream msg;
      msg << "alpha = " << *problem.alpha << " is not in the field";
      bool ok = false;
      try {
        ok = strictly_in_field(coarse, *problem.alpha);
      } catch (const GeometryError&) {
      }
      if (!ok) throw GeometryError(msg.str());
      alpha = problem.alpha;
    } else {
      alpha = choose_interior_point(coarse);
    }
  }
  aux_points_ = resolve_aux_points(problem, info_, coarse);

  d_ = discretize(comps, n);
  coefficient_ = build_coefficient(info_, d_, alpha);
  const GnkSystem system(d_, coefficient_, opts);
  h_means_.resize(info_.m + info_.ell, info_.m_prime);
  for (int k = 0; k < info_.m_prime; ++k) {
    gammas_.push_back(build_gamma(info_, d_, aux_points_[k], alpha));
    solutions_.push_back(system.solve(gammas_.back()));
    h_means_.col(k) = solutions_.back().means;
  }
}

CondenserResult CondenserSolver::solve(std::span<const double> levels) const {
  CondenserResult r;
  r.info = info_;
  r.d = d_;
  r.coefficient = coefficient_;
  r.aux_points = aux_points_;
  r.gammas = gammas_;
  r.solutions = solutions_;
  r.levels.assign(levels.begin(), levels.end());
  r.constants = solve_constants(info_, h_means_, levels);
  r.capacity = capacity(r.constants, levels);

  VectorXcd Af = VectorXcd::Zero(d_.size());
  for (int k = 0; k < info_.m_prime; ++k) {
    const auto& s = solutions_[k];
    for (Index i = 0; i < d_.size(); ++i) {
      Af[i] += r.constants.a[k] * Complex{gammas_[k][i] + s.h[i], s.mu[i]};
    }
  }
  r.boundary_f = Af.cwiseQuotient(coefficient_.A);
  return r;
}

CondenserResult run(const CondenserProblem& problem, int n, const SolverOptions& opts) {
  return CondenserSolver(problem, n, opts).solve(problem.levels);
}

}  // namespace condcap
