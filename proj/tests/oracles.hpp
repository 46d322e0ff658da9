// Brute-force oracles shared by the test binaries.  Everything here is
// deliberately independent of the library's own numerics: plain composite
// quadrature, explicit minimisation over integers, and tridiagonal
// finite-difference Rayleigh solvers.
#ifndef MAGHARDEN_TESTS_ORACLES_HPP
#define MAGHARDEN_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "magharden/circle_potential.hpp"

namespace oracles {

using magharden::complex;
using magharden::pi;

/// Composite Simpson over [lo, hi]; m must be even.
inline complex simpson(const std::function<complex(double)>& f, double lo,
                       double hi, int m = 20000) {
  const double h = (hi - lo) / m;
  complex s{0.0};
  for (int i = 0; i <= m; ++i) {
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * f(lo + i * h);
  }
  return s * (h / 3.0);
}

/// lambda for an angularly constant potential alpha: P_alpha is normal with
/// eigenvalues m - alpha, so the bottom of the modulus spectrum is an
/// explicit minimum over integers.
inline double normal_lambda(complex alpha, int m_range = 1000) {
  double best = 1e300;
  for (int m = -m_range; m <= m_range; ++m)
    best = std::min(best, std::norm(double(m) - alpha));
  return best;
}

/// Smallest generalized Rayleigh quotient u^T K u / u^T M u for tridiagonal
/// symmetric K (diag k_d, offdiag k_e) and diagonal M, by inverse iteration
/// with Thomas solves.
inline double tridiag_min_rayleigh(std::vector<double> k_d,
                                   const std::vector<double>& k_e,
                                   const std::vector<double>& m_d,
                                   int iters = 400) {
  const size_t n = k_d.size();
  // tiny shift keeps the factorisation well-posed if K is near-singular
  for (double& v : k_d) v += 1e-14;
  std::vector<double> x(n, 1.0), c(n), d(n), y(n);
  double rq = 0.0;
  for (int it = 0; it < iters; ++it) {
    for (size_t i = 0; i < n; ++i) y[i] = m_d[i] * x[i];
    // Thomas factorisation of K
    d[0] = k_d[0];
    for (size_t i = 1; i < n; ++i) {
      c[i] = k_e[i - 1] / d[i - 1];
      d[i] = k_d[i] - c[i] * k_e[i - 1];
    }
    for (size_t i = 1; i < n; ++i) y[i] -= c[i] * y[i - 1];
    x[n - 1] = y[n - 1] / d[n - 1];
    for (size_t i = n - 1; i-- > 0;) x[i] = (y[i] - k_e[i] * x[i + 1]) / d[i];
    double nrm = 0.0;
    for (size_t i = 0; i < n; ++i) nrm += m_d[i] * x[i] * x[i];
    nrm = std::sqrt(nrm);
    for (double& v : x) v /= nrm;
    double num = 0.0;
    for (size_t i = 0; i < n; ++i) num += k_d[i] * x[i] * x[i];
    for (size_t i = 0; i + 1 < n; ++i) num += 2.0 * k_e[i] * x[i] * x[i + 1];
    const double prev = rq;
    rq = num;
    if (it > 10 && std::abs(rq - prev) < 1e-13 * std::abs(rq)) break;
  }
  return rq;
}

/// Exterior auxiliary constant by discretised Rayleigh minimisation:
/// after t = log(r/r0) the quotient is int u'^2 dt / int u^2/t^2 dt on
/// (0, infty) with u(0) = 0, minimised on a log-spaced t-grid.  The infimum
/// 1/4 is approached (from above) logarithmically, hence the huge range.
inline double gamma_exterior_oracle(int n = 6000, double t_lo = 1e-11,
                                    double t_hi = 1e11) {
  const double s_lo = std::log(t_lo), s_hi = std::log(t_hi);
  std::vector<double> t(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    t[static_cast<size_t>(i)] =
        std::exp(s_lo + (s_hi - s_lo) * (i + 1) / (n + 1));
  // stiffness: sum (u_{i+1}-u_i)^2 / h_i; mass: u_i^2/t_i^2 * cell width
  std::vector<double> kd(static_cast<size_t>(n), 0.0), ke(static_cast<size_t>(n - 1)),
      md(static_cast<size_t>(n));
  auto gap = [&](int i, int j) { return t[static_cast<size_t>(j)] - t[static_cast<size_t>(i)]; };
  kd[0] += 1.0 / t[0];  // Dirichlet link to u(0) = 0
  for (int i = 0; i + 1 < n; ++i) {
    const double h = gap(i, i + 1);
    kd[static_cast<size_t>(i)] += 1.0 / h;
    kd[static_cast<size_t>(i + 1)] += 1.0 / h;
    ke[static_cast<size_t>(i)] = -1.0 / h;
  }
  for (int i = 0; i < n; ++i) {
    const double left = (i == 0) ? t[0] : 0.5 * gap(i - 1, i + 1);
    const double w = (i == 0) ? t[0] + 0.5 * gap(0, 1)
                  : (i == n - 1) ? 0.5 * gap(n - 2, n - 1)
                                 : left;
    md[static_cast<size_t>(i)] =
        w / (t[static_cast<size_t>(i)] * t[static_cast<size_t>(i)]);
  }
  return tridiag_min_rayleigh(kd, ke, md);
}

/// Interior auxiliary constant: int_0^{r0} f'^2 r dr / int f^2 r dr with
/// f(r0) = 0 and a natural condition at 0; expected (j_{0,1}/r0)^2.
inline double gamma_interior_oracle(double r0, int n = 8000) {
  const double h = r0 / (n + 1);  // nodes r_i = (i+1) h, Dirichlet at r0
  std::vector<double> kd(static_cast<size_t>(n), 0.0), ke(static_cast<size_t>(n - 1)),
      md(static_cast<size_t>(n));
  for (int i = 0; i <= n; ++i) {
    // edge between node i-1 and i (node -1 is the free value at r ~ 0)
    const double r_mid = (i + 0.5) * h;
    const double w = r_mid / h;
    if (i > 0) kd[static_cast<size_t>(i - 1)] += w;
    if (i < n) kd[static_cast<size_t>(i)] += w;
    if (i > 0 && i < n) ke[static_cast<size_t>(i - 1)] -= w;
  }
  // natural boundary at r ~ 0: drop the ghost edge counted at i = 0
  kd[0] -= (0.5 * h) / h;
  for (int i = 0; i < n; ++i) md[static_cast<size_t>(i)] = (i + 1) * h * h;
  return tridiag_min_rayleigh(kd, ke, md);
}

/// Seeded band-limited potential: coefficients for 0 < |k| <= band with
/// decaying random amplitudes, plus a random constant term.  When
/// force_quasi, the constant's imaginary part is dropped and conjugate
/// symmetry of the imaginary part's mean is automatic (mean = coeff 0).
inline magharden::CirclePotential random_potential(unsigned seed, int band = 6,
                                                   int n = 256,
                                                   bool force_quasi = false) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::vector<std::pair<int, complex>> coeffs;
  complex c0{amp(rng), force_quasi ? 0.0 : amp(rng)};
  coeffs.emplace_back(0, c0);
  for (int k = 1; k <= band; ++k) {
    const double decay = 1.0 / (1.0 + k);
    coeffs.emplace_back(k, complex{amp(rng), amp(rng)} * decay);
    coeffs.emplace_back(-k, complex{amp(rng), amp(rng)} * decay);
  }
  return magharden::CirclePotential::from_fourier(n, coeffs);
}

}  // namespace oracles

#endif
