#include "condcap/bie.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace condcap {

SolveMode parse_solve_mode(std::string_view name) {
  if (name == "auto" || name == "automatic") return SolveMode::automatic;
  if (name == "direct") return SolveMode::direct;
  if (name == "iterative") return SolveMode::iterative;
  throw ConfigError("unknown solver mode '" + std::string(name) + "'");
}

std::string_view to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::automatic: return "auto";
    case SolveMode::direct: return "direct";
    case SolveMode::iterative: return "iterative";
  }
  return "auto";
}

VectorXd gmres(const std::function<VectorXd(const VectorXd&)>& op, const VectorXd& rhs,
               double tol, int maxit, SolveReport* report) {
  const Index size = rhs.size();
  const double bnorm = rhs.norm();
  SolveReport local{SolveMode::iterative, 0, 0.0};
  if (bnorm == 0.0) {
    if (report) *report = local;
    return VectorXd::Zero(size);
  }

  std::vector<VectorXd> basis;
  basis.reserve(maxit + 1);
  basis.push_back(rhs / bnorm);
  MatrixXd H = MatrixXd::Zero(maxit + 1, maxit);
  VectorXd cs = VectorXd::Zero(maxit), sn = VectorXd::Zero(maxit);
  VectorXd g = VectorXd::Zero(maxit + 1);
  g[0] = bnorm;

  int k = 0;
  double estimate = 1.0;
  while (k < maxit && estimate > tol) {
    VectorXd v = op(basis[k]);
    // Modified Gram-Schmidt, applied twice to keep the basis orthogonal at
    // residual levels near machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= k; ++i) {
        const double c = basis[i].dot(v);
        H(i, k) += c;
        v -= c * basis[i];
      }
    }
    H(k + 1, k) = v.norm();
    for (int i = 0; i < k; ++i) {
      const double tmp = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
      H(i + 1, k) = -sn[i] * H(i, k) + cs[i] * H(i + 1, k);
      H(i, k) = tmp;
    }
    const double r = std::hypot(H(k, k), H(k + 1, k));
    if (r == 0.0) throw SolverError("GMRES breakdown: singular operator", estimate);
    cs[k] = H(k, k) / r;
    sn[k] = H(k + 1, k) / r;
    const double hk1 = H(k + 1, k);
    H(k, k) = r;
    H(k + 1, k) = 0.0;
    g[k + 1] = -sn[k] * g[k];
    g[k] *= cs[k];
    estimate = std::abs(g[k + 1]) / bnorm;
    ++k;
    if (hk1 == 0.0) break;  // lucky breakdown: Krylov space is invariant
    basis.push_back(v / hk1);
  }

  const VectorXd y = H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
  VectorXd x = VectorXd::Zero(size);
  for (int i = 0; i < k; ++i) x += y[i] * basis[i];

  local.iterations = k;
  local.residual = (rhs - op(x)).norm() / bnorm;
  if (report) *report = local;
  if (estimate > tol) {
    std::ostringstream msg;
    msg << "GMRES did not converge in " << maxit << " iterations (relative residual "
        << local.residual << ", tolerance " << tol << ")";
    throw SolverError(msg.str(), local.residual);
  }
  return x;
}

VectorXd linear_solve(const MatrixXd& op, const VectorXd& rhs, const SolverOptions& opts,
                      SolveReport* report) {
  if (op.rows() != op.cols() || op.rows() != rhs.size()) {
    throw SolverError("linear system is not square or does not match the right-hand side");
  }
  const bool direct = opts.mode == SolveMode::direct ||
                      (opts.mode == SolveMode::automatic && op.rows() <= opts.direct_limit);
  if (!direct) {
    return gmres([&op](const VectorXd& x) -> VectorXd { return op * x; }, rhs, opts.tol,
                 opts.maxit, report);
  }
  Eigen::PartialPivLU<MatrixXd> lu(op);
  if (!(lu.rcond() > std::numeric_limits<double>::epsilon())) {
    throw SolverError("linear system is singular to working precision");
  }
  VectorXd x = lu.solve(rhs);
  if (report) {
    const double bnorm = rhs.norm();
    *report = {SolveMode::direct, 0, bnorm == 0.0 ? 0.0 : (rhs - op * x).norm() / bnorm};
  }
  return x;
}

GnkSystem::GnkSystem(Discretization d, RHCoefficient a, const SolverOptions& opts)
    : d_(std::move(d)), a_(std::move(a)), opts_(opts) {
  const Index size = d_.size();
  mode_ = opts.mode;
  if (mode_ == SolveMode::automatic) {
    mode_ = size <= opts.direct_limit ? SolveMode::direct : SolveMode::iterative;
  }
  if (mode_ == SolveMode::direct || size <= opts.dense_limit) {
    dense_ = std::make_unique<MatrixXd>(MatrixXd::Identity(size, size) - assemble_N(d_, a_));
  }
  if (mode_ == SolveMode::direct) {
    lu_ = std::make_unique<Eigen::PartialPivLU<MatrixXd>>(*dense_);
    if (!(lu_->rcond() > std::numeric_limits<double>::epsilon())) {
      throw SolverError("discretized I - N is singular; check geometry and coefficient");
    }
  }
}

VectorXd GnkSystem::apply_I_minus_N(const VectorXd& x) const {
  if (dense_) return *dense_ * x;
  return x - apply_N(d_, a_, x);
}

VectorXd GnkSystem::apply_M(const VectorXd& x) const {
  return opts_.m_scheme == MScheme::split ? condcap::apply_M(d_, a_, x)
                                          : apply_M_subtracted(d_, a_, x);
}

BieSolution GnkSystem::solve(const VectorXd& gamma) const {
  if (gamma.size() != d_.size()) throw SolverError("gamma does not match the discretization");
  const VectorXd rhs = -apply_M(gamma);

  BieSolution sol;
  if (mode_ == SolveMode::direct) {
    sol.mu = lu_->solve(rhs);
    const double bnorm = rhs.norm();
    sol.report = {SolveMode::direct, 0,
                  bnorm == 0.0 ? 0.0 : (rhs - apply_I_minus_N(sol.mu)).norm() / bnorm};
  } else {
    sol.mu = gmres([this](const VectorXd& x) { return apply_I_minus_N(x); }, rhs, opts_.tol,
                   opts_.maxit, &sol.report);
  }

  sol.h = 0.5 * (apply_M(sol.mu) - apply_I_minus_N(gamma));
  const int count = d_.components();
  sol.means.resize(count);
  sol.spread.resize(count);
  for (int j = 0; j < count; ++j) {
    const Index off = d_.offset(j);
    double num = 0.0, den = 0.0;
    for (Index k = off; k < off + d_.n; ++k) {
      const double w = opts_.mean_rule == MeanRule::arc_length ? std::abs(d_.dz[k]) : 1.0;
      num += w * sol.h[k];
      den += w;
    }
    sol.means[j] = num / den;
    double spread = 0.0;
    for (Index k = off; k < off + d_.n; ++k) {
      if (std::abs(d_.dz[k]) != 0.0) spread = std::max(spread, std::abs(sol.h[k] - sol.means[j]));
    }
    sol.spread[j] = spread;
  }
  return sol;
}

BieSolution solve_gnk(const Discretization& d, const RHCoefficient& a, const VectorXd& gamma,
                      const SolverOptions& opts) {
  return GnkSystem(d, a, opts).solve(gamma);
}

}  // namespace condcap
