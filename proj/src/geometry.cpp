#include "condcap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace condcap {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

double shoelace(std::span<const Complex> pts) {
  double area = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    area += cross(pts[i], pts[(i + 1) % pts.size()]);
  }
  return 0.5 * area;
}

bool on_segment(Complex p, Complex q, Complex r) {
  return std::min(p.real(), r.real()) <= q.real() && q.real() <= std::max(p.real(), r.real()) &&
         std::min(p.imag(), r.imag()) <= q.imag() && q.imag() <= std::max(p.imag(), r.imag());
}

int orient(Complex p, Complex q, Complex r) {
  const double v = cross(q - p, r - p);
  const double scale = std::abs(q - p) * std::abs(r - p);
  if (std::abs(v) <= 1e-14 * scale) return 0;
  return v > 0 ? 1 : -1;
}

bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, q1, p2)) return true;
  if (o2 == 0 && on_segment(p1, q2, p2)) return true;
  if (o3 == 0 && on_segment(q1, p1, q2)) return true;
  if (o4 == 0 && on_segment(q1, p2, q2)) return true;
  return false;
}

// Closed polyline through pts is simple (non-adjacent edges never meet).
bool is_simple_polyline(std::span<const Complex> pts) {
  const std::size_t k = pts.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (pts[i] == pts[(i + 1) % k]) return false;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;
      if (segments_intersect(pts[i], pts[(i + 1) % k], pts[j], pts[(j + 1) % k])) return false;
    }
  }
  return true;
}

double distance_to_segment(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

GradingValue grade_polynomial(double x, int p) {
  // Beta(p,p) = ((p-1)!)^2 / (2p-1)!
  double beta = 1.0;
  for (int i = 1; i <= p - 1; ++i) beta *= static_cast<double>(i) / (p + i);
  beta /= p;
  const double y = 1.0 - x;
  double s = 0.0;
  for (int j = p; j <= 2 * p - 1; ++j) {
    s += binomial(2 * p - 1, j) * std::pow(x, j) * std::pow(y, 2 * p - 1 - j);
  }
  const double ds = std::pow(x * y, p - 1) / beta;
  const double d2s = (p - 1) * std::pow(x * y, p - 2) * (1.0 - 2.0 * x) / beta;
  return {s, ds, d2s};
}

GradingValue grade_kress(double x, int p) {
  const double s = two_pi * x;
  const double c = 1.0 / p - 0.5;
  const double u = (pi - s) / pi;
  const double v = c * u * u * u + (s - pi) / (p * pi) + 0.5;
  const double dv = -3.0 * c * u * u / pi + 1.0 / (p * pi);
  const double d2v = 6.0 * c * u / (pi * pi);
  const double w = 1.0 - v;
  const double a = std::pow(v, p);
  const double b = std::pow(w, p);
  const double den = a + b;
  const double g = a / den;
  const double prod = p * std::pow(v * w, p - 1);
  const double dg = prod / (den * den);
  const double dprod = p * (p - 1) * std::pow(v * w, p - 2) * (1.0 - 2.0 * v);
  const double dden = p * (std::pow(v, p - 1) - std::pow(w, p - 1));
  const double d2g = (dprod * den - 2.0 * prod * dden) / (den * den * den);
  return {g, dg * dv * two_pi, (d2g * dv * dv + dg * d2v) * two_pi * two_pi};
}

double wrap_parameter(double t) {
  double r = std::fmod(t, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

}  // namespace

GradingValue grade(double x, int order, Grading kind) {
  if (order < 2) throw GeometryError("grading order must be at least 2");
  x = std::clamp(x, 0.0, 1.0);
  return kind == Grading::kress ? grade_kress(x, order) : grade_polynomial(x, order);
}

BoundaryComponent::BoundaryComponent(Shape shape, Role role, Orientation orientation)
    : shape_(std::move(shape)), role_(role), orientation_(orientation) {}

std::string_view BoundaryComponent::kind() const noexcept {
  return std::visit(overloaded{[](const Circle&) { return std::string_view{"circle"}; },
                               [](const Ellipse&) { return std::string_view{"ellipse"}; },
                               [](const Polygon&) { return std::string_view{"polygon"}; },
                               [](const TrigCurve&) { return std::string_view{"trig"}; }},
                    shape_);
}

CurvePoint BoundaryComponent::eval_shape(double t) const {
  const double sign = orientation_ == Orientation::ccw ? 1.0 : -1.0;
  return std::visit(
      overloaded{
          [&](const Circle& c) -> CurvePoint {
            const Complex e = c.radius * std::exp(I * (sign * t));
            return {c.center + e, sign * I * e, -e};
          },
          [&](const Ellipse& e) -> CurvePoint {
            const Complex rot = std::polar(1.0, e.angle);
            const double ct = std::cos(t), st = std::sin(t);
            const Complex z{e.semi_x * ct, sign * e.semi_y * st};
            const Complex dz{-e.semi_x * st, sign * e.semi_y * ct};
            return {e.center + rot * z, rot * dz, -rot * z};
          },
          [&](const Polygon& p) -> CurvePoint {
            const auto sides = static_cast<int>(p.vertices.size());
            const double tau = wrap_parameter(t) * sides / two_pi;
            const int side = std::min(static_cast<int>(tau), sides - 1);
            const GradingValue g = grade(tau - side, p.grading_order, p.grading);
            const Complex a = p.vertices[side];
            const Complex edge = p.vertices[(side + 1) % sides] - a;
            const double rate = sides / two_pi;
            return {a + edge * g.s, edge * (g.ds * rate), edge * (g.d2s * rate * rate)};
          },
          [&](const TrigCurve& c) -> CurvePoint {
            CurvePoint r{0.0, 0.0, 0.0};
            for (const auto& [k, coef] : c.terms) {
              const Complex e = coef * std::exp(I * (k * t));
              r.z += e;
              r.dz += I * static_cast<double>(k) * e;
              r.d2z -= static_cast<double>(k) * k * e;
            }
            return r;
          }},
      shape_);
}

CurvePoint BoundaryComponent::eval(double t) const {
  const CurvePoint p = eval_shape(t);
  return {scale_ * p.z + shift_, scale_ * p.dz, scale_ * p.d2z};
}

Complex BoundaryComponent::centroid() const {
  const Complex c = std::visit(
      overloaded{[](const Circle& c) { return c.center; },
                 [](const Ellipse& e) { return e.center; },
                 [](const Polygon& p) {
                   Complex s{0.0, 0.0};
                   for (Complex v : p.vertices) s += v;
                   return s / static_cast<double>(p.vertices.size());
                 },
                 [](const TrigCurve& c) {
                   Complex s{0.0, 0.0};
                   for (const auto& [k, coef] : c.terms)
                     if (k == 0) s += coef;
                   return s;
                 }},
      shape_);
  return scale_ * c + shift_;
}

std::vector<double> BoundaryComponent::corner_parameters() const {
  std::vector<double> out;
  if (const auto* p = std::get_if<Polygon>(&shape_)) {
    const auto sides = p->vertices.size();
    for (std::size_t k = 0; k < sides; ++k) out.push_back(two_pi * k / sides);
  }
  return out;
}

BoundaryComponent BoundaryComponent::transformed(Complex scale, Complex shift) const {
  if (scale == Complex{0.0, 0.0}) throw GeometryError("similarity scale must be non-zero");
  BoundaryComponent r = *this;
  r.scale_ = scale * scale_;
  r.shift_ = scale * shift_ + shift;
  return r;
}

BoundaryComponent BoundaryComponent::with_role(Role role) const {
  BoundaryComponent r = *this;
  r.role_ = role;
  return r;
}

BoundaryComponent make_circle(Complex center, double radius, Orientation orientation, Role role) {
  if (!(radius > 0.0)) throw GeometryError("circle radius must be positive");
  return BoundaryComponent(Circle{center, radius}, role, orientation);
}

BoundaryComponent make_ellipse(Complex center, double semi_x, double semi_y, double angle,
                               Orientation orientation, Role role) {
  if (!(semi_x > 0.0) || !(semi_y > 0.0)) throw GeometryError("ellipse semi-axes must be positive");
  return BoundaryComponent(Ellipse{center, semi_x, semi_y, angle}, role, orientation);
}

BoundaryComponent make_polygon(std::vector<Complex> vertices, Orientation orientation,
                               int grading_order, Grading grading, Role role) {
  BoundaryComponent c(Polygon{std::move(vertices), grading_order, grading}, role, orientation);
  validate_component(c);
  return c;
}

BoundaryComponent make_trig_curve(std::vector<std::pair<int, Complex>> terms,
                                  Orientation orientation, Role role) {
  BoundaryComponent c(TrigCurve{std::move(terms)}, role, orientation);
  validate_component(c);
  return c;
}

void validate_component(const BoundaryComponent& c) {
  const bool ccw = c.orientation() == Orientation::ccw;
  if (const auto* p = std::get_if<Polygon>(&c.shape())) {
    if (p->vertices.size() < 3) throw GeometryError("polygon needs at least 3 vertices");
    if (p->grading_order < 2) throw GeometryError("polygon grading order must be at least 2");
    if (!is_simple_polyline(p->vertices)) throw GeometryError("polygon is not simple");
    const double area = shoelace(p->vertices);
    if ((area > 0.0) != ccw) {
      throw GeometryError("polygon vertex order does not match the declared orientation");
    }
    return;
  }
  if (std::holds_alternative<TrigCurve>(c.shape())) {
    constexpr int samples = 512;
    std::vector<Complex> pts(samples);
    for (int i = 0; i < samples; ++i) {
      const CurvePoint p = c.eval(two_pi * i / samples);
      if (std::abs(p.dz) == 0.0) throw GeometryError("curve derivative vanishes (cusp)");
      pts[i] = p.z;
    }
    if (!is_simple_polyline(pts)) throw GeometryError("curve is self-intersecting");
    const double area = shoelace(pts);
    if (area == 0.0) throw GeometryError("curve encloses no area");
    if ((area > 0.0) != ccw) {
      throw GeometryError("curve traversal does not match the declared orientation");
    }
  }
}

Discretization discretize(std::span<const BoundaryComponent> components, int n) {
  if (n % 2 != 0) throw GeometryError("node count n must be even");
  if (n < 4) throw GeometryError("node count n must be at least 4");
  if (components.empty()) throw GeometryError("no boundary components");
  const auto count = static_cast<Index>(components.size());
  Discretization d;
  d.n = n;
  d.t.resize(count * n);
  d.z.resize(count * n);
  d.dz.resize(count * n);
  d.d2z.resize(count * n);
  for (Index j = 0; j < count; ++j) {
    const BoundaryComponent& c = components[j];
    for (int i = 0; i < n; ++i) {
      const double t = i * two_pi / n;
      const CurvePoint p = c.eval(t);
      const Index k = j * n + i;
      d.t[k] = t;
      d.z[k] = p.z;
      d.dz[k] = p.dz;
      d.d2z[k] = p.d2z;
    }
    d.roles.push_back(c.role());
    d.orientations.push_back(c.orientation());
    const int stride = std::max(1, n / 512);
    double diam = 0.0;
    for (int a = 0; a < n; a += stride) {
      for (int b = a + stride; b < n; b += stride) {
        diam = std::max(diam, std::abs(d.z[j * n + a] - d.z[j * n + b]));
      }
    }
    d.diameters.push_back(diam);
  }
  return d;
}

double distance_to_component(const Discretization& d, int j, Complex w) {
  const Index base = d.offset(j);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d.n; ++i) {
    const Complex a = d.z[base + i];
    const Complex b = d.z[base + (i + 1) % d.n];
    best = std::min(best, distance_to_segment(w, a, b));
  }
  return best;
}

int winding_number(const Discretization& d, int j, Complex w) {
  const Index base = d.offset(j);
  double perimeter = 0.0;
  double turn = 0.0;
  for (int i = 0; i < d.n; ++i) {
    const Complex a = d.z[base + i];
    const Complex b = d.z[base + (i + 1) % d.n];
    perimeter += std::abs(b - a);
    turn += std::arg((b - w) / (a - w));
  }
  const double tol = 1e-3 * perimeter / d.n;
  if (distance_to_component(d, j, w) <= tol) {
    std::ostringstream msg;
    msg << "winding number about " << w << " is indeterminate: point lies on component "
        << j + 1;
    throw GeometryError(msg.str());
  }
  return static_cast<int>(std::lround(turn / two_pi));
}

Complex winding_integral(const Discretization& d, int j, Complex w) {
  Complex sum{0.0, 0.0};
  for (Index k = d.offset(j); k < d.offset(j) + d.n; ++k) sum += d.dz[k] / (d.z[k] - w);
  return sum * d.weight() / (two_pi * I);
}

PointLocation locate_point(const Discretization& d, Complex w) {
  for (int j = 0; j < d.components(); ++j) {
    if (distance_to_component(d, j, w) < two_pi * d.diameters[j] / d.n) {
      return {PointLocation::Kind::near_boundary, j};
    }
  }
  for (int j = 0; j < d.components(); ++j) {
    const int wind = winding_number(d, j, w);
    const bool inside_region =
        d.orientations[j] == Orientation::cw ? wind != 0 : wind == 0;
    if (inside_region) {
      return {d.roles[j] == Role::plate ? PointLocation::Kind::plate : PointLocation::Kind::wall, j};
    }
  }
  return {PointLocation::Kind::in_field, -1};
}

bool point_in_field(const Discretization& d, Complex w) {
  return locate_point(d, w).kind == PointLocation::Kind::in_field;
}

double signed_area(const Discretization& d, int j) {
  const auto seg = d.z.segment(d.offset(j), d.n);
  return shoelace(std::span<const Complex>(seg.data(), static_cast<std::size_t>(d.n)));
}

}  // namespace condcap
