#pragma once

#include <optional>

#include "condcap/geometry.hpp"

namespace condcap {

/// Coefficient A(t) of the Riemann-Hilbert problem Re[A f] = gamma on the
/// stacked nodes. `alpha` is empty for the unbounded form A = e^{-i theta}.
struct RHCoefficient {
  VectorXd theta;
  VectorXcd A;
  VectorXcd dA_over_A;
  /// Diagonal of N used by the Nystrom rule. The singular part of each row
  /// integrates constants over its own component exactly (to +-1); on
  /// smooth curves this is the limit value up to rounding, next to graded
  /// corners the limit value is far off.
  VectorXd n_diagonal;
  std::optional<Complex> alpha;

  bool bounded_form() const { return alpha.has_value(); }
};

/// theta = 0 on plate components and pi/2 on Neumann components;
/// A = e^{-i theta} or, when alpha is given, e^{-i theta} (eta - alpha).
RHCoefficient make_rh_coefficient(const Discretization& d, std::optional<Complex> alpha);

/// Generalized Neumann kernel N(s,t) at node indices s, t (diagonal from
/// `n_diagonal`). Nodes where eta' vanishes (graded corners) give zero.
double kernel_N(const Discretization& d, const RHCoefficient& a, Index s, Index t);

/// Full conjugate kernel M(s,t) for s != t.
double kernel_M(const Discretization& d, const RHCoefficient& a, Index s, Index t);

/// Smooth remainder M1(s,t) = M(s,t) - cot((t-s)/2)/(2 pi) on a single
/// component (s, t in the same block), diagonal by its limit value.
double kernel_M1(const Discretization& d, const RHCoefficient& a, Index s, Index t);

/// Nystrom matrix with entries (2 pi / n) N(s,t).
MatrixXd assemble_N(const Discretization& d, const RHCoefficient& a);

/// Nystrom matrix of the continuous part of M: same-component blocks hold
/// (2 pi / n) M1(s,t), cross-component blocks (2 pi / n) M(s,t).
MatrixXd assemble_M1(const Discretization& d, const RHCoefficient& a);

/// Conjugation operator (1/2pi) PV int cot((t-s)/2) phi(t) dt applied to
/// each component's samples through the Fourier multiplier i sgn(k), with
/// the constant and Nyquist modes mapped to zero. Requires even n.
VectorXd periodic_conjugate(const VectorXd& phi, int n);

/// Matrix-free product with the Nystrom matrix of N.
VectorXd apply_N(const Discretization& d, const RHCoefficient& a, const VectorXd& phi);

/// M phi: spectral conjugation on each component plus trapezoidal M1 and
/// cross-component blocks, computed without forming any matrix.
VectorXd apply_M(const Discretization& d, const RHCoefficient& a, const VectorXd& phi);

/// M phi by density subtraction: since phi is real, the principal value of
/// the Cauchy integral of phi(s)/A(s) contributes nothing to the real part,
/// which leaves the bounded integrand (g(t) - g(s)) eta'/(eta(t) - eta(s)),
/// g = phi/A, for the trapezoidal rule. No cotangent split is involved, so
/// the rule stays accurate next to graded corners.
VectorXd apply_M_subtracted(const Discretization& d, const RHCoefficient& a, const VectorXd& phi);

}  // namespace condcap
