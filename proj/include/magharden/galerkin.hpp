#ifndef MAGHARDEN_GALERKIN_HPP
#define MAGHARDEN_GALERKIN_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "magharden/circle_momentum.hpp"
#include "magharden/circle_potential.hpp"
#include "magharden/errors.hpp"

// Matrix discretisations of P_a, its adjoint and P_a* P_a in the truncated
// Fourier basis, plus a periodic finite-difference oracle and residual
// validators for the similarity and metric relations.

namespace magharden {

using Matrix = Eigen::MatrixXcd;

struct OperatorMatrix {
  enum class Basis { fourier, grid };
  Matrix entries;
  Basis basis;
  int size;  // mode bound M for fourier, grid size N for grid
};

struct SpectralResult {
  std::vector<complex> eigenvalues;  // sorted by (Re, Im)
  double smallest_singular_sq;       // Galerkin approximation of lambda_a
  int truncation;
  double residual;  // |lambda(M) - lambda(2M)| from the doubling rule
  bool converged;
};

/// Galerkin projection of -i d/dx - a onto e^{imx}, |m| <= M:
/// (P)_{mn} = m delta_{mn} - a_hat_{m-n}.
inline OperatorMatrix momentum_matrix(const CirclePotential& a, int mode_bound) {
  // Entries need a_hat_{m-n} for |m-n| <= 2M.  A potential whose band fills
  // the upper half of its stored range is likely truncated, so its missing
  // coefficients cannot be assumed zero.
  if (2 * mode_bound > a.k_max() && 2 * a.band(1e-12) > a.k_max())
    throw InvalidInput("momentum_matrix: need coefficients up to |k| = " +
                       std::to_string(2 * mode_bound) +
                       "; increase the potential grid");
  const int d = 2 * mode_bound + 1;
  OperatorMatrix P{Matrix::Zero(d, d), OperatorMatrix::Basis::fourier, mode_bound};
  for (int m = -mode_bound; m <= mode_bound; ++m)
    for (int n = -mode_bound; n <= mode_bound; ++n) {
      complex v = -a.coeff(m - n);
      if (m == n) v += double(m);
      P.entries(m + mode_bound, n + mode_bound) = v;
    }
  return P;
}

/// Adjoint via P_a* = P_{conj a}; also equals the conjugate transpose of
/// momentum_matrix(a).
inline OperatorMatrix adjoint_matrix(const CirclePotential& a, int mode_bound) {
  return momentum_matrix(a.conj(), mode_bound);
}

namespace detail {
inline double sigma_min_sq(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  const double s = svd.singularValues()(svd.singularValues().size() - 1);
  return s * s;
}
}  // namespace detail

/// lambda_a as sigma_min(P)^2 of the Galerkin matrix, with the doubling
/// consistency check |lambda(M) - lambda(2M)| <= 1e-8.
inline SpectralResult lambda_min(const CirclePotential& a, int mode_bound,
                                 double doubling_tol = 1e-8) {
  CirclePotential af = a;
  if (4 * mode_bound > a.k_max()) {
    int n_new = a.n();
    while (n_new / 2 - 1 < 4 * mode_bound) n_new *= 2;
    af = a.resampled(n_new);
  }
  const OperatorMatrix P = momentum_matrix(af, mode_bound);
  SpectralResult res;
  res.truncation = mode_bound;
  res.smallest_singular_sq = detail::sigma_min_sq(P.entries);
  const OperatorMatrix P2 = momentum_matrix(af, 2 * mode_bound);
  res.residual = std::abs(res.smallest_singular_sq - detail::sigma_min_sq(P2.entries));
  res.converged = res.residual <= doubling_tol;
  Eigen::ComplexEigenSolver<Matrix> es(P.entries, false);
  if (es.info() != Eigen::Success) throw NonConvergence("eigensolver failed");
  res.eigenvalues.assign(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(res.eigenvalues.begin(), res.eigenvalues.end(),
            [](const complex& x, const complex& y) {
              if (x.real() != y.real()) return x.real() < y.real();
              return x.imag() < y.imag();
            });
  return res;
}

namespace detail {
/// Dense spectral differentiation matrix on the uniform periodic grid,
/// D = F^{-1} diag(ik) F with the Nyquist mode dropped.
inline Matrix spectral_derivative(int n) {
  Matrix D = Matrix::Zero(n, n);
  // column-by-column: derivative of the j-th cardinal function
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      complex s{0.0};
      for (int k = -n / 2 + 1; k <= n / 2 - 1; ++k) {
        const double xk = 2.0 * pi * k * (l - j) / n;
        s += iu * double(k) * std::exp(iu * xk);
      }
      D(l, j) = s / double(n);
    }
  }
  return D;
}

inline Matrix grid_momentum(const CirclePotential& a, const Matrix& D) {
  Matrix P = -iu * D;
  for (int j = 0; j < a.n(); ++j) P(j, j) -= a.samples()[static_cast<size_t>(j)];
  return P;
}

/// Projection onto the modes |k| <= kmax.  Conjugating by a multiplier pushes
/// frequency content beyond the grid for modes near +-n/2, so operator
/// identities are checked on a mode range that leaves headroom for aliasing.
inline Matrix mode_projector(int n, int kmax) {
  Matrix Pi = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      complex s{0.0};
      for (int k = -kmax; k <= kmax; ++k)
        s += std::exp(iu * (2.0 * pi * k * (l - j) / n));
      Pi(l, j) = s / double(n);
    }
  return Pi;
}
}  // namespace detail

/// Max-norm of (Omega P_a Omega^{-1} - P_<a>) Pi_M assembled on the grid
/// (multipliers diagonal, derivative spectral, Pi_M the projection onto
/// modes |m| <= M).
inline double similarity_residual(const CirclePotential& a, int mode_bound = 0) {
  const int n = a.n();
  if (mode_bound <= 0) mode_bound = n / 4;
  if (2 * mode_bound >= n) throw InvalidInput("similarity_residual: mode bound too large for grid");
  const Matrix D = detail::spectral_derivative(n);
  const Matrix P = detail::grid_momentum(a, D);
  const Multiplier w = omega(a);
  Matrix S = P;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      S(r, c) = w.values[static_cast<size_t>(r)] * P(r, c) / w.values[static_cast<size_t>(c)];
  const complex m = mean(a).mean;
  Matrix T = -iu * D;
  for (int j = 0; j < n; ++j) T(j, j) -= m;
  return ((S - T) * detail::mode_projector(n, mode_bound)).cwiseAbs().maxCoeff();
}

/// Max-norm of Theta P_a Theta^{-1} - P_a* on the grid; requires
/// quasi-self-adjointness.
inline double metric_residual(const CirclePotential& a, int mode_bound = 0,
                              double tol = kQuasiTol) {
  const Multiplier th = metric_theta(a, tol);  // throws NotQuasiSelfAdjoint
  const int n = a.n();
  if (mode_bound <= 0) mode_bound = n / 4;
  if (2 * mode_bound >= n) throw InvalidInput("metric_residual: mode bound too large for grid");
  const Matrix D = detail::spectral_derivative(n);
  const Matrix P = detail::grid_momentum(a, D);
  const Matrix Pstar = detail::grid_momentum(a.conj(), D);
  Matrix S = P;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      S(r, c) = th.values[static_cast<size_t>(r)].real() * P(r, c) /
                th.values[static_cast<size_t>(c)].real();
  return ((S - Pstar) * detail::mode_projector(n, mode_bound)).cwiseAbs().maxCoeff();
}

/// Periodic central-difference discretisation of -i d/dx - a on N points.
/// Cross-check oracle only; O(N^-2) accurate.
inline OperatorMatrix fd_momentum_matrix(const CirclePotential& a, int n_grid) {
  if (n_grid < 16) throw InvalidInput("fd_momentum_matrix: N >= 16 required");
  const CirclePotential af = (n_grid == a.n()) ? a : a.resampled(n_grid);
  const double h = 2.0 * pi / n_grid;
  OperatorMatrix P{Matrix::Zero(n_grid, n_grid), OperatorMatrix::Basis::grid, n_grid};
  for (int j = 0; j < n_grid; ++j) {
    const int jp = (j + 1) % n_grid, jm = (j + n_grid - 1) % n_grid;
    P.entries(j, jp) += -iu / (2.0 * h);
    P.entries(j, jm) += iu / (2.0 * h);
    P.entries(j, j) -= af.samples()[static_cast<size_t>(j)];
  }
  return P;
}

inline double fd_sigma_min_sq(const OperatorMatrix& P) {
  return detail::sigma_min_sq(P.entries);
}

}  // namespace magharden

#endif
