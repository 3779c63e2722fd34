#pragma once

#include <functional>
#include <memory>
#include <string_view>

#include <Eigen/LU>

#include "condcap/nkernel.hpp"

namespace condcap {

enum class SolveMode { automatic, direct, iterative };

SolveMode parse_solve_mode(std::string_view name);
std::string_view to_string(SolveMode mode);

/// How M is applied: density subtraction (default) or the cotangent split
/// with spectral conjugation. Both agree spectrally on smooth curves.
enum class MScheme { subtracted, split };

/// Collapse of h to one value per component. The arc-length rule weights
/// node values by |eta'|, so nodes crowded into graded corners count for
/// little; on circles it equals the arithmetic mean.
enum class MeanRule { arc_length, arithmetic };

struct SolverOptions {
  double tol = 1e-14;
  int maxit = 100;
  SolveMode mode = SolveMode::automatic;
  Index direct_limit = 4096;    ///< automatic mode: dense LU up to this many unknowns
  Index dense_limit = 16384;    ///< above this the iterative path never stores N
  MScheme m_scheme = MScheme::subtracted;
  MeanRule mean_rule = MeanRule::arc_length;
};

struct SolveReport {
  SolveMode mode = SolveMode::direct;
  int iterations = 0;
  double residual = 0.0;  ///< relative residual ||b - Ax|| / ||b||
};

/// Restart-free GMRES with x0 = 0. Throws SolverError when the relative
/// residual does not reach `tol` within `maxit` iterations.
VectorXd gmres(const std::function<VectorXd(const VectorXd&)>& op, const VectorXd& rhs,
               double tol, int maxit, SolveReport* report = nullptr);

/// Dense solve of a square system, by LU (direct) or GMRES (iterative).
VectorXd linear_solve(const MatrixXd& op, const VectorXd& rhs, const SolverOptions& opts,
                      SolveReport* report = nullptr);

/// Result of (I - N) mu = -M gamma,  h = [M mu - (I - N) gamma] / 2.
struct BieSolution {
  VectorXd mu;
  VectorXd h;
  VectorXd means;      ///< mean of h over each component (see MeanRule)
  VectorXd spread;     ///< max |h - mean| per component (convergence diagnostic)
  SolveReport report;
};

/// The operator I - N for one discretization and coefficient, factorized or
/// prepared once and reused for every right-hand side gamma_k.
class GnkSystem {
 public:
  GnkSystem(Discretization d, RHCoefficient a, const SolverOptions& opts = {});

  BieSolution solve(const VectorXd& gamma) const;

  /// (I - N) x using whichever representation this system holds.
  VectorXd apply_I_minus_N(const VectorXd& x) const;

  /// M x with the configured scheme.
  VectorXd apply_M(const VectorXd& x) const;

  SolveMode mode() const noexcept { return mode_; }
  const Discretization& discretization() const noexcept { return d_; }
  const RHCoefficient& coefficient() const noexcept { return a_; }

 private:
  Discretization d_;
  RHCoefficient a_;
  SolverOptions opts_;
  SolveMode mode_;
  std::unique_ptr<MatrixXd> dense_;  // I - N, when stored
  std::unique_ptr<Eigen::PartialPivLU<MatrixXd>> lu_;
};

BieSolution solve_gnk(const Discretization& d, const RHCoefficient& a, const VectorXd& gamma,
                      const SolverOptions& opts = {});

}  // namespace condcap
