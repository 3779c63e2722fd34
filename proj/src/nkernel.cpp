#include "condcap/nkernel.hpp"

#include <atomic>
#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace condcap {
namespace {

// Per-component Fourier multiplier: out_j = IFFT(mult(kappa) * FFT(phi_j)),
// kappa the signed frequency; the Nyquist mode is always dropped.
template <class Multiplier>
VectorXd apply_multiplier(const VectorXd& phi, int n, Multiplier mult) {
  if (n % 2 != 0) throw GeometryError("spectral conjugation needs an even node count");
  if (phi.size() % n != 0) throw GeometryError("sample vector does not match node count");
  Eigen::FFT<double> fft;
  VectorXd out(phi.size());
  std::vector<Complex> in(n), freq(n), back(n);
  for (Index base = 0; base < phi.size(); base += n) {
    for (int i = 0; i < n; ++i) in[i] = phi[base + i];
    fft.fwd(freq, in);
    for (int k = 0; k < n; ++k) {
      const int kappa = k < n / 2 ? k : k - n;
      freq[k] = (k == n / 2) ? Complex{0.0, 0.0} : freq[k] * mult(kappa);
    }
    fft.inv(back, freq);
    for (int i = 0; i < n; ++i) out[base + i] = back[i].real();
  }
  return out;
}

double diagonal_N(const RHCoefficient& a, Index t) { return a.n_diagonal[t]; }

// Within one component N(s,t) = N0(s,t) - Im(eta'(t)/(eta(t) - alpha))/pi
// with N0 = Im(eta'(t)/(eta(t) - eta(s)))/pi, whose integral over the
// component is +-1 by orientation. The N0 diagonal is set so the trapezoidal
// row sum hits that value; the smooth alpha term keeps its limit.
VectorXd corrected_diagonal(const Discretization& d, const RHCoefficient& a) {
  VectorXd diag = VectorXd::Zero(d.size());
  const double w = d.weight();
  for (int j = 0; j < d.components(); ++j) {
    const double exact = d.orientations[j] == Orientation::ccw ? 1.0 : -1.0;
    const Index lo = d.offset(j), hi = lo + d.n;
#pragma omp parallel for schedule(static)
    for (Index s = lo; s < hi; ++s) {
      if (std::abs(d.dz[s]) == 0.0) continue;
      double sum = 0.0;
      for (Index t = lo; t < hi; ++t) {
        if (t == s) continue;
        sum += (d.dz[t] / (d.z[t] - d.z[s])).imag();
      }
      diag[s] = (exact - w * sum / pi) / w - a.dA_over_A[s].imag() / pi;
    }
  }
  return diag;
}

double diagonal_M1(const Discretization& d, const RHCoefficient& a, Index t) {
  if (std::abs(d.dz[t]) == 0.0) return 0.0;
  return (d.d2z[t] / (2.0 * d.dz[t]) - a.dA_over_A[t]).real() / pi;
}

// X(s) = w * sum_{t != s} phi(t) (eta'(t)/A(t)) / (eta(t) - eta(s)).
// Im(A X)/pi and Re(A X)/pi are the punctured trapezoidal sums of N and M.
VectorXcd punctured_cauchy_sums(const Discretization& d, const RHCoefficient& a,
                                const VectorXd& phi) {
  const Index size = d.size();
  std::vector<double> x(size), y(size), qr(size), qi(size);
  for (Index t = 0; t < size; ++t) {
    x[t] = d.z[t].real();
    y[t] = d.z[t].imag();
    const Complex q = std::abs(d.dz[t]) == 0.0 ? Complex{0.0, 0.0} : phi[t] * d.dz[t] / a.A[t];
    qr[t] = q.real();
    qi[t] = q.imag();
  }
  VectorXcd out(size);
  std::atomic<bool> coincident{false};
  const double w = d.weight();
#pragma omp parallel for schedule(static)
  for (Index s = 0; s < size; ++s) {
    const double xs = x[s], ys = y[s];
    double re = 0.0, im = 0.0;
    auto accumulate = [&](Index lo, Index hi) {
      for (Index t = lo; t < hi; ++t) {
        const double dx = x[t] - xs;
        const double dy = y[t] - ys;
        const double inv = 1.0 / (dx * dx + dy * dy);
        re += (qr[t] * dx + qi[t] * dy) * inv;
        im += (qi[t] * dx - qr[t] * dy) * inv;
      }
    };
    accumulate(0, s);
    accumulate(s + 1, size);
    if (!std::isfinite(re) || !std::isfinite(im)) coincident = true;
    out[s] = Complex{re, im} * w;
  }
  if (coincident) throw GeometryError("distinct boundary nodes coincide");
  return out;
}

Complex kernel_ratio(const Discretization& d, const RHCoefficient& a, Index s, Index t) {
  const Complex diff = d.z[t] - d.z[s];
  if (diff == Complex{0.0, 0.0}) throw GeometryError("distinct boundary nodes coincide");
  return a.A[s] / a.A[t] * d.dz[t] / diff;
}

}  // namespace

RHCoefficient make_rh_coefficient(const Discretization& d, std::optional<Complex> alpha) {
  RHCoefficient a;
  a.alpha = alpha;
  const Index size = d.size();
  a.theta.resize(size);
  a.A.resize(size);
  a.dA_over_A.resize(size);
  for (Index k = 0; k < size; ++k) {
    const bool wall = d.roles[d.component_of(k)] == Role::neumann;
    a.theta[k] = wall ? pi / 2.0 : 0.0;
    const Complex rot = wall ? -I : Complex{1.0, 0.0};
    if (alpha) {
      const Complex r = d.z[k] - *alpha;
      if (r == Complex{0.0, 0.0}) throw GeometryError("alpha lies on the boundary");
      a.A[k] = rot * r;
      a.dA_over_A[k] = d.dz[k] / r;
    } else {
      a.A[k] = rot;
      a.dA_over_A[k] = 0.0;
    }
  }
  a.n_diagonal = corrected_diagonal(d, a);
  if (!a.n_diagonal.allFinite()) throw GeometryError("distinct boundary nodes coincide");
  return a;
}

double kernel_N(const Discretization& d, const RHCoefficient& a, Index s, Index t) {
  if (s == t) return diagonal_N(a, t);
  return kernel_ratio(d, a, s, t).imag() / pi;
}

double kernel_M(const Discretization& d, const RHCoefficient& a, Index s, Index t) {
  if (s == t) throw GeometryError("M(s,t) is singular on the diagonal");
  return kernel_ratio(d, a, s, t).real() / pi;
}

double kernel_M1(const Discretization& d, const RHCoefficient& a, Index s, Index t) {
  if (s == t) return diagonal_M1(d, a, t);
  return kernel_M(d, a, s, t) - 1.0 / (std::tan((d.t[t] - d.t[s]) / 2.0) * two_pi);
}

MatrixXd assemble_N(const Discretization& d, const RHCoefficient& a) {
  const Index size = d.size();
  MatrixXd N(size, size);
  const double w = d.weight();
#pragma omp parallel for schedule(static)
  for (Index t = 0; t < size; ++t) {
    const bool corner = std::abs(d.dz[t]) == 0.0;
    const Complex b = corner ? Complex{0.0, 0.0} : d.dz[t] / a.A[t];
    for (Index s = 0; s < size; ++s) {
      N(s, t) = s == t ? 0.0 : w * (a.A[s] * b / (d.z[t] - d.z[s])).imag() / pi;
    }
    N(t, t) = w * diagonal_N(a, t);
  }
  if (!N.allFinite()) throw GeometryError("distinct boundary nodes coincide");
  return N;
}

MatrixXd assemble_M1(const Discretization& d, const RHCoefficient& a) {
  const Index size = d.size();
  MatrixXd M(size, size);
  const double w = d.weight();
#pragma omp parallel for schedule(static)
  for (Index t = 0; t < size; ++t) {
    const int jt = d.component_of(t);
    for (Index s = 0; s < size; ++s) {
      if (d.component_of(s) == jt) {
        M(s, t) = w * kernel_M1(d, a, s, t);
      } else {
        M(s, t) = std::abs(d.dz[t]) == 0.0 ? 0.0 : w * kernel_M(d, a, s, t);
      }
    }
  }
  return M;
}

VectorXd periodic_conjugate(const VectorXd& phi, int n) {
  return apply_multiplier(phi, n, [](int kappa) {
    return kappa == 0 ? Complex{0.0, 0.0} : I * static_cast<double>(kappa > 0 ? 1 : -1);
  });
}

VectorXd apply_N(const Discretization& d, const RHCoefficient& a, const VectorXd& phi) {
  const VectorXcd X = punctured_cauchy_sums(d, a, phi);
  VectorXd out(d.size());
  for (Index s = 0; s < d.size(); ++s) {
    out[s] = (a.A[s] * X[s]).imag() / pi + d.weight() * diagonal_N(a, s) * phi[s];
  }
  return out;
}

VectorXd apply_M(const Discretization& d, const RHCoefficient& a, const VectorXd& phi) {
  const VectorXcd X = punctured_cauchy_sums(d, a, phi);
  // Spectral conjugation minus the punctured trapezoidal cotangent sum. The
  // latter has multiplier i(1 - 2k/n), so the difference is 2i kappa / n.
  const double n = d.n;
  const VectorXd correction =
      apply_multiplier(phi, d.n, [n](int kappa) { return I * (2.0 * kappa / n); });
  VectorXd out(d.size());
  for (Index s = 0; s < d.size(); ++s) {
    out[s] = (a.A[s] * X[s]).real() / pi + correction[s] +
             d.weight() * diagonal_M1(d, a, s) * phi[s];
  }
  return out;
}

VectorXd apply_M_subtracted(const Discretization& d, const RHCoefficient& a, const VectorXd& phi) {
  const VectorXcd X = punctured_cauchy_sums(d, a, phi);
  RHCoefficient unit = a;
  unit.A.setOnes();
  const VectorXcd E = punctured_cauchy_sums(d, unit, VectorXd::Ones(d.size()));
  const VectorXd dphi = apply_multiplier(phi, d.n, [](int kappa) { return I * double(kappa); });
  VectorXd out(d.size());
  for (Index s = 0; s < d.size(); ++s) {
    // A(s) * sum_{t != s} w (g(t) - g(s)) eta'(t) / (eta(t) - eta(s)),  g = phi / A
    double v = (a.A[s] * X[s] - phi[s] * E[s]).real() / pi;
    // Diagonal term of the smooth integrand: Re[A g'] = phi' - phi Re(A'/A).
    if (std::abs(d.dz[s]) != 0.0) v += d.weight() / pi * (dphi[s] - phi[s] * a.dA_over_A[s].real());
    out[s] = v;
  }
  return out;
}

}  // namespace condcap
