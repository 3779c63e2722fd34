#pragma once

#include <optional>
#include <span>
#include <vector>

#include "condcap/condenser.hpp"

namespace condcap {

/// Everything needed to evaluate the potential u inside the field.
struct PotentialField {
  Discretization d;
  CaseInfo info;
  ConstantsSolution constants;
  VectorXcd boundary_f;
  std::vector<Complex> aux_points;
  std::optional<Complex> alpha;

  static PotentialField from(const CondenserResult& r);
};

/// Cauchy integral of the boundary values f at points z in G. The bounded
/// form divides by the discrete integral of 1 (the quotient form); the
/// unbounded form divides by the same sum shifted by 2 pi i, which is the
/// Cauchy formula for f(eta) - f(z) when f vanishes at infinity (as the
/// boundary values of the unbounded case do). Points on a node are
/// returned as the node value.
VectorXcd cauchy_eval(const Discretization& d, const VectorXcd& f, std::span<const Complex> z,
                      bool field_bounded);

/// u(z) for each z; the caller is responsible for z lying in G.
std::vector<double> potential_at(const PotentialField& field, std::span<const Complex> z);

struct GridBounds {
  double xmin, xmax, ymin, ymax;
};

/// Potential on an nx-by-ny grid, row-major with x varying fastest.
/// Points outside the field or in the near-boundary band carry no value.
struct FieldGrid {
  GridBounds bounds{};
  int nx = 0;
  int ny = 0;
  std::vector<PointLocation> mask;
  std::vector<std::optional<double>> u;

  Complex point(int ix, int iy) const;
  Index index(int ix, int iy) const { return static_cast<Index>(iy) * nx + ix; }
};

FieldGrid grid(const PotentialField& field, const GridBounds& bounds, int nx, int ny);

/// Bounding box of all boundary nodes, padded by `margin` times its size.
GridBounds default_bounds(const Discretization& d, double margin = 0.05);

/// Harmonic measure of plate j (zero-based) relative to the field bounded by
/// `plates`: the potential with levels delta_k = [k == j]. Shares one set
/// of integral equation solves across every j requested.
class HarmonicMeasure {
 public:
  HarmonicMeasure(const CondenserProblem& geometry, int n, const SolverOptions& opts = {});

  int plates() const noexcept { return solver_.info().m; }
  PotentialField field(int j) const;
  std::vector<double> at(int j, std::span<const Complex> z) const;
  const CondenserSolver& solver() const noexcept { return solver_; }

 private:
  CondenserSolver solver_;
};

std::vector<double> harmonic_measure(const CondenserProblem& geometry, int j,
                                     std::span<const Complex> z, int n,
                                     const SolverOptions& opts = {});

}  // namespace condcap
