#include <doctest.h>

#include <cmath>
#include <vector>

#include "condcap/field.hpp"
#include "oracles.hpp"
#include "problems.hpp"

using namespace condcap;

TEST_CASE("cauchy formula reproduces analytic functions") {
  const std::vector<BoundaryComponent> disk = {make_circle({0, 0}, 1.0, Orientation::ccw)};
  const auto d = discretize(disk, 64);
  VectorXcd f(d.size());
  for (Index i = 0; i < d.size(); ++i) f[i] = d.z[i] * d.z[i] - 2.0 * d.z[i] + 3.0;
  const std::vector<Complex> z = {{0.1, 0.2}, {-0.5, 0.3}, {0.0, -0.9}};
  const VectorXcd v = cauchy_eval(d, f, z, true);
  for (std::size_t k = 0; k < z.size(); ++k) {
    CHECK(std::abs(v[k] - (z[k] * z[k] - 2.0 * z[k] + 3.0)) < 1e-12);
  }
  const VectorXcd on = cauchy_eval(d, f, std::vector<Complex>{d.z[5]}, true);
  CHECK(on[0] == f[5]);
}

TEST_CASE("exterior cauchy formula for functions vanishing at infinity") {
  const std::vector<BoundaryComponent> c = {make_circle({0, 0}, 1.0, Orientation::cw)};
  const auto d = discretize(c, 64);
  VectorXcd inv(d.size());
  for (Index i = 0; i < d.size(); ++i) inv[i] = 1.0 / d.z[i];
  const std::vector<Complex> z = {{1.5, 0.0}, {0.0, -3.0}, {1.001, 0.0}};
  const VectorXcd v = cauchy_eval(d, inv, z, false);
  for (std::size_t k = 0; k < z.size(); ++k) CHECK(std::abs(v[k] - 1.0 / z[k]) < 1e-12);
  VectorXcd sq(d.size());
  for (Index i = 0; i < d.size(); ++i) sq[i] = Complex(0.5, 1.0) / (d.z[i] * d.z[i]) + inv[i];
  const VectorXcd w = cauchy_eval(d, sq, z, false);
  for (std::size_t k = 0; k < z.size(); ++k) {
    CHECK(std::abs(w[k] - (Complex(0.5, 1.0) / (z[k] * z[k]) + 1.0 / z[k])) < 1e-12);
  }
}

TEST_CASE("two circles potential against the exact solution") {
  const double a = 2.0, r = 0.5;
  const auto res = run(problems::two_circles(a, r), 1024);
  const auto field = PotentialField::from(res);
  const oracle::TwoCirclePotential exact(a, r);
  std::vector<Complex> z = {{1.5, 0.0}, {0.0, 2.0}, {-3.0, 1.0}, {10.0, 10.0}};
  // Points close to both plates.
  for (double delta : {1e-1, 1e-2, 1e-3}) {
    z.push_back({1.0 + delta, 0.0});
    z.push_back(Complex(a, 0.0) + (r + delta) * std::exp(I * 2.0));
  }
  const auto u = potential_at(field, z);
  for (std::size_t k = 0; k < z.size(); ++k) CHECK(std::abs(u[k] - exact(z[k])) < 1e-11);
}

TEST_CASE("far field of the unbounded potential") {
  const auto res = run(problems::two_circles(2.0, 0.5), 256);
  const auto field = PotentialField::from(res);
  const oracle::TwoCirclePotential exact(2.0, 0.5);
  const std::vector<Complex> far = {{1e4, 0.0}, {0.0, -1e6}};
  const auto u = potential_at(field, far);
  for (std::size_t k = 0; k < far.size(); ++k) CHECK(std::abs(u[k] - exact(far[k])) < 1e-11);
}

TEST_CASE("annulus grid, masks and maximum principle") {
  const double q = 0.5;
  const auto res = run(problems::annulus(q), 256);
  const auto field = PotentialField::from(res);
  const auto g = grid(field, {-1.0, 1.0, -1.0, 1.0}, 41, 41);
  int inside = 0;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const Index k = g.index(ix, iy);
      const Complex z = g.point(ix, iy);
      const auto& m = g.mask[k];
      if (m.kind == PointLocation::Kind::in_field) {
        REQUIRE(g.u[k].has_value());
        ++inside;
        CHECK(std::abs(*g.u[k] - oracle::annulus_inner_measure(q, z)) < 1e-12);
        CHECK(*g.u[k] > -1e-12);
        CHECK(*g.u[k] < 1.0 + 1e-12);
      } else {
        CHECK_FALSE(g.u[k].has_value());
        if (std::abs(z) < q - 0.05) CHECK(m.kind == PointLocation::Kind::plate);
        if (std::abs(z) < q - 0.05) CHECK(m.component == 0);
      }
    }
  }
  CHECK(inside > 400);
  CHECK(std::abs(g.point(0, 0) - Complex(-1.0, -1.0)) < 1e-15);
  CHECK(std::abs(g.point(40, 40) - Complex(1.0, 1.0)) < 1e-15);
  CHECK_THROWS_AS(grid(field, {-1, 1, -1, 1}, 0, 5), ConfigError);

  const auto b = default_bounds(res.d);
  CHECK(b.xmin < -1.0);
  CHECK(b.xmax > 1.0);
}

TEST_CASE("harmonic measures sum to one") {
  const auto geometry = problems::five_circles();
  const HarmonicMeasure hm(geometry, 256);
  CHECK(hm.plates() == 5);
  const std::vector<Complex> z = {{0.0, 0.0}, {1.4, 1.4}, {3.5, 0.0}, {-0.5, 3.3}};
  std::vector<double> total(z.size(), 0.0);
  for (int j = 0; j < hm.plates(); ++j) {
    const auto w = hm.at(j, z);
    for (std::size_t k = 0; k < z.size(); ++k) {
      CHECK(w[k] > 0.0);
      CHECK(w[k] < 1.0);
      total[k] += w[k];
    }
  }
  for (double t : total) CHECK(std::abs(t - 1.0) < 1e-10);
  CHECK_THROWS_AS(hm.field(5), ConfigError);
}

TEST_CASE("annulus harmonic measure at the geometric mean radius") {
  const std::vector<Complex> z = {{std::sqrt(0.5), 0.0}};
  const auto p = problems::annulus(0.5);
  CHECK(harmonic_measure(p, 0, z, 256)[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(harmonic_measure(p, 1, z, 256)[0] == doctest::Approx(0.5).epsilon(1e-12));
}
