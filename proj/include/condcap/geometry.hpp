#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "condcap/types.hpp"

namespace condcap {

enum class Role { plate, neumann };
enum class Orientation { ccw, cw };

/// Reparametrization used on each side of a polygon to cluster nodes at the
/// corners. Both variants map [0,1] onto itself with the first p-1
/// derivatives vanishing at the endpoints.
enum class Grading {
  polynomial,  ///< regularized incomplete beta I_x(p, p), a degree 2p-1 polynomial
  kress,       ///< Kress' sigmoidal transformation
};

/// Value and first two parameter derivatives of a curve at one parameter.
struct CurvePoint {
  Complex z;
  Complex dz;
  Complex d2z;
};

struct Circle {
  Complex center;
  double radius;
};

struct Ellipse {
  Complex center;
  double semi_x;
  double semi_y;
  double angle;  ///< rotation of the x semi-axis, radians
};

struct Polygon {
  std::vector<Complex> vertices;
  int grading_order = 3;
  Grading grading = Grading::polynomial;
};

/// Closed curve given by a finite Fourier series z(t) = sum_k c_k e^{ikt}.
struct TrigCurve {
  std::vector<std::pair<int, Complex>> terms;
};

/// One 2pi-periodic Jordan curve of the boundary together with its role and
/// traversal direction. An optional similarity map z -> scale*z + shift is
/// applied on top of the shape, so mapped copies keep their parametrization.
class BoundaryComponent {
 public:
  using Shape = std::variant<Circle, Ellipse, Polygon, TrigCurve>;

  BoundaryComponent(Shape shape, Role role, Orientation orientation);

  CurvePoint eval(double t) const;
  Complex point(double t) const { return eval(t).z; }

  const Shape& shape() const noexcept { return shape_; }
  Role role() const noexcept { return role_; }
  Orientation orientation() const noexcept { return orientation_; }
  Complex scale() const noexcept { return scale_; }
  Complex shift() const noexcept { return shift_; }
  std::string_view kind() const noexcept;

  /// Default auxiliary point: center for conics, vertex centroid for
  /// polygons, mean point for trigonometric curves.
  Complex centroid() const;

  /// Parameters where the first derivative vanishes by construction.
  std::vector<double> corner_parameters() const;

  BoundaryComponent transformed(Complex scale, Complex shift) const;
  BoundaryComponent with_role(Role role) const;

 private:
  CurvePoint eval_shape(double t) const;

  Shape shape_;
  Role role_;
  Orientation orientation_;
  Complex scale_{1.0, 0.0};
  Complex shift_{0.0, 0.0};
};

BoundaryComponent make_circle(Complex center, double radius, Orientation orientation,
                              Role role = Role::plate);
BoundaryComponent make_ellipse(Complex center, double semi_x, double semi_y, double angle,
                               Orientation orientation, Role role = Role::plate);
/// Vertices must be listed in the traversal direction given by `orientation`;
/// a mismatch is rejected rather than silently reversed.
BoundaryComponent make_polygon(std::vector<Complex> vertices, Orientation orientation,
                               int grading_order = 3, Grading grading = Grading::polynomial,
                               Role role = Role::plate);
BoundaryComponent make_trig_curve(std::vector<std::pair<int, Complex>> terms,
                                  Orientation orientation, Role role = Role::plate);

/// Grading substitution on [0,1]: value, first and second derivative.
struct GradingValue {
  double s;
  double ds;
  double d2s;
};
GradingValue grade(double x, int order, Grading kind);

/// Stacked equidistant sampling of all components, n nodes each.
struct Discretization {
  int n = 0;
  VectorXd t;    ///< parameters, n per component
  VectorXcd z;   ///< eta(t)
  VectorXcd dz;  ///< eta'(t)
  VectorXcd d2z; ///< eta''(t)
  std::vector<Role> roles;
  std::vector<Orientation> orientations;
  std::vector<double> diameters;

  int components() const { return static_cast<int>(roles.size()); }
  Index size() const { return t.size(); }
  double weight() const { return two_pi / n; }
  int component_of(Index i) const { return static_cast<int>(i / n); }
  Index offset(int j) const { return static_cast<Index>(j) * n; }
};

Discretization discretize(std::span<const BoundaryComponent> components, int n);

/// Winding number of the sampled component j about w, evaluated as the sum
/// of argument increments along the closed node polygon. Throws
/// GeometryError when w lies (numerically) on that polygon.
int winding_number(const Discretization& d, int j, Complex w);

/// Trapezoidal value of (1/2 pi i) * integral of eta'/(eta - w) over component j.
Complex winding_integral(const Discretization& d, int j, Complex w);

/// Distance from w to the node polygon of component j.
double distance_to_component(const Discretization& d, int j, Complex w);

/// Where a point sits relative to the field G = complement of all the
/// regions G_k bounded by the components.
struct PointLocation {
  enum class Kind { in_field, plate, wall, near_boundary };
  Kind kind = Kind::in_field;
  int component = -1;  ///< zero-based component index for plate/wall/near_boundary
};

/// Near-boundary band: distance < 2 pi diam(component) / n.
PointLocation locate_point(const Discretization& d, Complex w);
bool point_in_field(const Discretization& d, Complex w);

/// Signed area of the closed node polygon (positive for counterclockwise).
double signed_area(const Discretization& d, int j);

/// Checks a single component: orientation, simplicity and non-degenerate
/// derivative away from corners. Throws GeometryError.
void validate_component(const BoundaryComponent& c);

}  // namespace condcap
