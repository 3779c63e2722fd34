#include <doctest.h>

#include <cmath>
#include <vector>

#include "condcap/nkernel.hpp"

using namespace condcap;

namespace {

Discretization circle(Orientation o, int n, double r = 1.0) {
  const std::vector<BoundaryComponent> c = {make_circle({0, 0}, r, o)};
  return discretize(c, n);
}

VectorXd sample(const Discretization& d, double (*f)(double), int k) {
  VectorXd v(d.size());
  for (Index i = 0; i < d.size(); ++i) v[i] = f(k * d.t[i]);
  return v;
}

double sin_(double x) { return std::sin(x); }
double cos_(double x) { return std::cos(x); }

}  // namespace

TEST_CASE("neumann kernel on circles is constant") {
  for (auto [o, value] : {std::pair{Orientation::ccw, 1.0 / two_pi},
                          std::pair{Orientation::cw, -1.0 / two_pi}}) {
    const auto d = circle(o, 32, 0.7);
    const auto a = make_rh_coefficient(d, std::nullopt);
    for (Index s : {0, 5, 17}) {
      for (Index t : {0, 3, 5, 31}) CHECK(kernel_N(d, a, s, t) == doctest::Approx(value));
    }
    const MatrixXd N = assemble_N(d, a);
    const VectorXd rows = N.rowwise().sum();
    CHECK((rows.array() - two_pi * value).abs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("M acts as conjugation on the unit circle") {
  const int n = 64;
  for (auto o : {Orientation::ccw, Orientation::cw}) {
    const auto d = circle(o, n);
    const auto a = make_rh_coefficient(d, std::nullopt);
    for (int k = 1; k < 6; ++k) {
      const VectorXd c = sample(d, cos_, k), s = sample(d, sin_, k);
      for (const VectorXd& mc : {apply_M(d, a, c), apply_M_subtracted(d, a, c)}) {
        CHECK((mc + s).cwiseAbs().maxCoeff() < 1e-12);
      }
      for (const VectorXd& ms : {apply_M(d, a, s), apply_M_subtracted(d, a, s)}) {
        CHECK((ms - c).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("periodic conjugation is exact on trigonometric monomials") {
  const int n = 32;
  VectorXd t(2 * n);
  for (int i = 0; i < n; ++i) t[i] = t[n + i] = two_pi * i / n;
  for (int k = 1; k < n / 2; ++k) {
    VectorXd c(2 * n), s(2 * n);
    for (int i = 0; i < 2 * n; ++i) {
      c[i] = std::cos(k * t[i]);
      s[i] = (i < n ? 1.0 : 2.0) * std::sin(k * t[i]);
    }
    CHECK((periodic_conjugate(c, n).head(n) + s.head(n)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((periodic_conjugate(s, n).tail(n) - 2.0 * c.tail(n)).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(periodic_conjugate(VectorXd::Ones(n), n).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("matrix-free products match assembled matrices") {
  const std::vector<BoundaryComponent> comps = {
      make_ellipse({0, 0}, 1.0, 0.5, 0.2, Orientation::cw),
      make_circle({3, 0.5}, 0.8, Orientation::cw, Role::neumann)};
  const auto d = discretize(comps, 48);
  for (auto alpha : {std::optional<Complex>{}, std::optional<Complex>{Complex(1.5, -2.0)}}) {
    const auto a = make_rh_coefficient(d, alpha);
    VectorXd phi(d.size());
    for (Index i = 0; i < d.size(); ++i) phi[i] = std::cos(d.t[i] + 0.3 * i) + 0.1 * i;
    CHECK((assemble_N(d, a) * phi - apply_N(d, a, phi)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("both M schemes agree on smooth densities") {
  const std::vector<BoundaryComponent> comps = {
      make_ellipse({0, 0}, 1.0, 0.5, 0.2, Orientation::cw),
      make_circle({3, 0.5}, 0.8, Orientation::cw, Role::neumann)};
  const auto d = discretize(comps, 128);
  VectorXd phi(d.size());
  for (Index i = 0; i < d.size(); ++i) phi[i] = std::exp(std::cos(d.t[i])) * (1 + d.component_of(i));
  for (auto alpha : {std::optional<Complex>{}, std::optional<Complex>{Complex(1.5, -2.0)}}) {
    const auto a = make_rh_coefficient(d, alpha);
    CHECK((apply_M(d, a, phi) - apply_M_subtracted(d, a, phi)).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("kernel diagonals are the limits of neighbouring values") {
  const std::vector<BoundaryComponent> comps = {
      make_ellipse({0, 0}, 2.0, 0.7, 0.4, Orientation::ccw)};
  const int n = 4096;
  const auto d = discretize(comps, n);
  const auto a = make_rh_coefficient(d, Complex(0.1, 0.05));
  for (Index s : {7, 1000, 3001}) {
    CHECK(kernel_N(d, a, s, s) == doctest::Approx(kernel_N(d, a, s, s + 1)).epsilon(1e-2));
    CHECK(kernel_M1(d, a, s, s) == doctest::Approx(kernel_M1(d, a, s, s + 1)).epsilon(1e-2));
  }
}

TEST_CASE("coefficient forms") {
  const std::vector<BoundaryComponent> comps = {
      make_circle({0, 0}, 1.0, Orientation::cw),
      make_circle({3, 0}, 1.0, Orientation::cw, Role::neumann)};
  const auto d = discretize(comps, 8);
  const auto a = make_rh_coefficient(d, std::nullopt);
  CHECK_FALSE(a.bounded_form());
  CHECK(std::abs(a.A[0] - 1.0) < 1e-15);
  CHECK(std::abs(a.A[8] + I) < 1e-15);
  const auto b = make_rh_coefficient(d, Complex(0, 5));
  CHECK(b.bounded_form());
  CHECK(std::abs(b.A[8] - (-I) * (d.z[8] - Complex(0, 5))) < 1e-15);
}
