#pragma once
// Closed-form reference values, computed independently of the solver.

#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

using Complex = std::complex<double>;
constexpr double pi = std::numbers::pi;

// Unit circle at 0 and circle |z - a| = r (a real, disjoint): capacity of the
// pair. Root in (0,1) of (1+q)^2/q = K.
inline double two_circles_capacity(double a, double r) {
  const double K = (1.0 + a - r) * (a + r - 1.0) / r;
  const double b = K - 2.0;
  const double q = (b - std::sqrt(b * b - 4.0)) / 2.0;
  return 2.0 * pi / std::log(1.0 / q);
}

// Potential with u = 0 on |z| = 1 and u = 1 on |z - a| = r, through the
// Moebius map sending both circles to concentric ones. The symmetric
// points p1, p2 are real with p1 p2 = 1 and p1 + p2 = (1 + a^2 - r^2)/a.
struct TwoCirclePotential {
  double a, r, p1, p2, l1, l2;

  TwoCirclePotential(double a_, double r_) : a(a_), r(r_) {
    const double s = (1.0 + a * a - r * r) / a;
    const double disc = std::sqrt(s * s - 4.0);
    p1 = (s - disc) / 2.0;  // inside the unit disk
    p2 = (s + disc) / 2.0;
    l1 = log_t(Complex(1.0, 0.0));
    l2 = log_t(Complex(a + r, 0.0));
  }
  double log_t(Complex z) const { return std::log(std::abs((z - p1) / (z - p2))); }
  double operator()(Complex z) const { return (log_t(z) - l1) / (l2 - l1); }
};

// Logarithmic capacity of the unit square.
inline double square_log_capacity() {
  const double g = std::tgamma(0.25);
  return g * g / (4.0 * std::pow(pi, 1.5));
}

// Confocal ellipses with semi-axes (a, b) inside (A, B).
inline double confocal_ellipses_capacity(double a, double b, double A, double B) {
  return 2.0 * pi / std::log((A + B) / (a + b));
}

// Annulus q < |z| < 1: harmonic measure of the inner circle.
inline double annulus_inner_measure(double q, Complex z) {
  return std::log(std::abs(z)) / std::log(q);
}

}  // namespace oracle
