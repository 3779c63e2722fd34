#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "condcap/bie.hpp"

namespace condcap {

/// Generalized condenser (B, E, delta): plate boundaries with their levels
/// and the Neumann walls bounding the host domain B. Every component is
/// oriented so that the field G lies on its left; the external component,
/// if any, must be the last of its group.
struct CondenserProblem {
  std::vector<BoundaryComponent> plates;
  std::vector<BoundaryComponent> walls;
  std::vector<double> levels;
  /// Per-plate override of the auxiliary point alpha_k (default: centroid).
  std::vector<std::optional<Complex>> aux_points;
  /// Interior point of G, used when G is bounded (chosen automatically if empty).
  std::optional<Complex> alpha;

  /// Plates followed by walls: the stacking order of the discretization.
  std::vector<BoundaryComponent> components() const;
  CondenserProblem transformed(Complex scale, Complex shift) const;
};

struct CaseInfo {
  bool field_bounded = false;
  bool host_bounded = false;
  int m = 0;
  int ell = 0;
  int m_prime = 0;
  int ell_prime = 0;
  std::optional<int> external_index;  ///< zero-based index into components()

  bool case_two() const { return m_prime == m - 1; }
  std::string_view label() const { return case_two() ? "II" : "I"; }
};

struct ConstantsSolution {
  VectorXd a;   ///< a_1..a_m
  double c = 0.0;
  VectorXd nu;  ///< nu_1..nu_ell
  double residual = 0.0;  ///< relative residual of the constants system
};

/// Checks orientations, ordering, nesting and disjointness, then derives
/// the boundedness case. Throws ConfigError / GeometryError.
CaseInfo classify(const CondenserProblem& problem);

/// theta and A on the stacked nodes; alpha is required exactly when G is bounded.
RHCoefficient build_coefficient(const CaseInfo& info, const Discretization& d,
                                std::optional<Complex> alpha);

/// gamma_k on the stacked nodes for the auxiliary point alpha_k; the ratio
/// form with alpha is used when the external boundary is a wall. Wall
/// values carry a continuous argument branch, checked for periodicity.
VectorXd build_gamma(const CaseInfo& info, const Discretization& d, Complex alpha_k,
                     std::optional<Complex> alpha);

/// Solves for a, c, nu from the component means h_{j,k} (rows j, columns k).
ConstantsSolution solve_constants(const CaseInfo& info, const MatrixXd& h_means,
                                  std::span<const double> levels);
ConstantsSolution solve_constants(const CaseInfo& info, std::span<const BieSolution> solutions,
                                  std::span<const double> levels);

/// cap = 2 pi sum_k delta_k a_k.
double capacity(const ConstantsSolution& constants, std::span<const double> levels);

/// Auxiliary points alpha_1..alpha_{m'} after defaults and validation.
std::vector<Complex> resolve_aux_points(const CondenserProblem& problem, const CaseInfo& info,
                                        const Discretization& d);

/// Deterministic interior point of G far from every boundary component.
Complex choose_interior_point(const Discretization& d);

struct CondenserResult {
  CaseInfo info;
  Discretization d;
  RHCoefficient coefficient;
  std::vector<Complex> aux_points;
  std::vector<VectorXd> gammas;
  std::vector<BieSolution> solutions;
  ConstantsSolution constants;
  std::vector<double> levels;
  double capacity = 0.0;
  VectorXcd boundary_f;  ///< f(eta(t)) at the nodes
};

/// Geometry-dependent part of the computation (classification through the
/// m' integral equation solves). Different level vectors reuse it.
class CondenserSolver {
 public:
  CondenserSolver(const CondenserProblem& problem, int n, const SolverOptions& opts = {});

  CondenserResult solve(std::span<const double> levels) const;

  const CaseInfo& info() const noexcept { return info_; }
  const Discretization& discretization() const noexcept { return d_; }
  const std::vector<BieSolution>& solutions() const noexcept { return solutions_; }
  const MatrixXd& h_means() const noexcept { return h_means_; }

 private:
  CaseInfo info_;
  Discretization d_;
  RHCoefficient coefficient_;
  std::vector<Complex> aux_points_;
  std::vector<VectorXd> gammas_;
  std::vector<BieSolution> solutions_;
  MatrixXd h_means_;
};

CondenserResult run(const CondenserProblem& problem, int n, const SolverOptions& opts = {});

}  // namespace condcap
