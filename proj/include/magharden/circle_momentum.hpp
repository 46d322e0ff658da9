#ifndef MAGHARDEN_CIRCLE_MOMENTUM_HPP
#define MAGHARDEN_CIRCLE_MOMENTUM_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "magharden/circle_potential.hpp"
#include "magharden/errors.hpp"

// Closed-form objects attached to the momentum P_a = -i d/dx - a(x) on the
// circle: spectrum, eigenfunctions and their biorthogonal partners, the
// similarity multiplier omega, the metric theta, the factorisation function
// xi, symmetry classification and basis diagnostics.

namespace magharden {

inline constexpr double kQuasiTol = 1e-12;

struct Multiplier {
  enum class Label { omega, omega_inv, theta, xi, w };
  std::vector<complex> values;  // on the potential's grid
  Label label;

  double min_abs() const {
    double m = std::abs(values.front());
    for (const complex& v : values) m = std::min(m, std::abs(v));
    return m;
  }
  double max_abs() const {
    double m = 0.0;
    for (const complex& v : values) m = std::max(m, std::abs(v));
    return m;
  }
};

struct EigenFamily {
  std::vector<int> indices;              // m
  std::vector<complex> eigenvalues;      // m - <a>, exact
  std::vector<std::vector<complex>> psi; // psi[j] = grid samples of psi_{m_j}
  std::vector<std::vector<complex>> phi; // adjoint eigenfunctions
};

inline bool quasi_self_adjoint(const CirclePotential& a, double tol = kQuasiTol) {
  return std::abs(mean(a).mean_im) <= tol;
}

/// Samples of the similarity multiplier
/// omega(x) = exp(i <a> x - i int_{-pi}^x a).
inline Multiplier omega(const CirclePotential& a) {
  Multiplier w;
  w.label = Multiplier::Label::omega;
  const complex m = mean(a).mean;
  w.values.resize(static_cast<size_t>(a.n()));
  for (int j = 0; j < a.n(); ++j) {
    const double x = a.node(j);
    w.values[static_cast<size_t>(j)] =
        std::exp(iu * m * x - iu * antiderivative(a, x));
  }
  return w;
}

inline Multiplier omega_inv(const CirclePotential& a) {
  Multiplier w = omega(a);
  w.label = Multiplier::Label::omega_inv;
  for (complex& v : w.values) v = 1.0 / v;
  return w;
}

/// Metric theta(x) = exp(2 int_{-pi}^x Im a); requires <Im a> = 0, otherwise
/// the spectrum is non-real and no bounded positive metric exists.
inline Multiplier metric_theta(const CirclePotential& a, double tol = kQuasiTol) {
  const double mi = mean(a).mean_im;
  if (std::abs(mi) > tol) throw NotQuasiSelfAdjoint(mi);
  Multiplier t;
  t.label = Multiplier::Label::theta;
  t.values.resize(static_cast<size_t>(a.n()));
  for (int j = 0; j < a.n(); ++j) {
    const double x = a.node(j);
    t.values[static_cast<size_t>(j)] =
        std::exp(2.0 * antiderivative(a, x).imag());
  }
  return t;
}

/// xi(x) = exp(<Im a> x - int_{-pi}^x Im a); real, positive, periodic.
/// Satisfies psi_m = xi e_m and phi_m = xi^{-1} e_m.
inline Multiplier xi_function(const CirclePotential& a) {
  Multiplier xi;
  xi.label = Multiplier::Label::xi;
  const double mi = mean(a).mean_im;
  xi.values.resize(static_cast<size_t>(a.n()));
  for (int j = 0; j < a.n(); ++j) {
    const double x = a.node(j);
    xi.values[static_cast<size_t>(j)] =
        std::exp(mi * x - antiderivative(a, x).imag());
  }
  return xi;
}

/// Eigenpairs of P_a for |m| <= M.  Eigenvalues are exact (m - <a>);
/// eigenfunctions are sampled from the closed forms
/// psi_m = (2pi)^{-1/2} exp(i (m - <a>) x + i int_{-pi}^x a),
/// phi_m the same with conj(a), normalised so that (phi_n, psi_m) = delta.
inline EigenFamily spectrum(const CirclePotential& a, int mode_bound) {
  if (mode_bound < 0) throw InvalidInput("spectrum: M must be >= 0");
  EigenFamily fam;
  const complex m_a = mean(a).mean;
  const complex m_ac = std::conj(m_a);
  const int n = a.n();
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  std::vector<complex> anti(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) anti[static_cast<size_t>(j)] = antiderivative(a, a.node(j));
  for (int m = -mode_bound; m <= mode_bound; ++m) {
    fam.indices.push_back(m);
    fam.eigenvalues.push_back(double(m) - m_a);
    std::vector<complex> psi(static_cast<size_t>(n)), phi(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      const double x = a.node(j);
      const complex ia = anti[static_cast<size_t>(j)];
      psi[static_cast<size_t>(j)] =
          norm * std::exp(iu * (double(m) - m_a) * x + iu * ia);
      phi[static_cast<size_t>(j)] =
          norm * std::exp(iu * (double(m) - m_ac) * x + iu * std::conj(ia));
    }
    fam.psi.push_back(std::move(psi));
    fam.phi.push_back(std::move(phi));
  }
  return fam;
}

/// Gram matrix G_{nm} = (phi_n, psi_m) by periodic trapezoid quadrature;
/// identity within 1e-10 for band-limited a at sufficient resolution.
/// Returns row-major (2M+1)^2 entries.  Throws on gross under-resolution.
inline std::vector<complex> biorth_gram(const CirclePotential& a, int mode_bound) {
  // Under-resolution guard: coefficients beyond n/4 should be negligible.
  for (int k = a.n() / 4; k <= a.k_max(); ++k)
    if (std::abs(a.coeff(k)) > 1e-12 || std::abs(a.coeff(-k)) > 1e-12)
      throw InvalidInput("biorth_gram: potential under-resolved on this grid");
  const EigenFamily fam = spectrum(a, mode_bound);
  const int d = 2 * mode_bound + 1;
  const double h = 2.0 * pi / a.n();
  std::vector<complex> gram(static_cast<size_t>(d * d));
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      complex s{0.0};
      for (int j = 0; j < a.n(); ++j)
        s += std::conj(fam.phi[static_cast<size_t>(r)][static_cast<size_t>(j)]) *
             fam.psi[static_cast<size_t>(c)][static_cast<size_t>(j)];
      gram[static_cast<size_t>(r * d + c)] = s * h;
    }
  return gram;
}

struct SymmetryFlags {
  bool self_adjoint;
  bool pt_symmetric;         // Re a even, Im a odd
  bool anti_p_self_adjoint;  // Re a odd, Im a even
};

namespace detail {
// Parity of a real-valued grid function f(x_j), comparing f(x) with f(-x).
// Grid is x_j = -pi + 2pi j/n, so -x_j corresponds to index n - j (mod n).
inline bool grid_even(const CirclePotential& a, bool imag_part, double tol) {
  const int n = a.n();
  for (int j = 1; j < n; ++j) {
    const complex va = a.samples()[static_cast<size_t>(j)];
    const complex vb = a.samples()[static_cast<size_t>(n - j)];
    const double fa = imag_part ? va.imag() : va.real();
    const double fb = imag_part ? vb.imag() : vb.real();
    if (std::abs(fa - fb) > tol) return false;
  }
  return true;
}
inline bool grid_odd(const CirclePotential& a, bool imag_part, double tol) {
  const int n = a.n();
  for (int j = 0; j < n; ++j) {
    const complex va = a.samples()[static_cast<size_t>(j)];
    const complex vb = a.samples()[static_cast<size_t>(j == 0 ? 0 : n - j)];
    const double fa = imag_part ? va.imag() : va.real();
    const double fb = imag_part ? vb.imag() : vb.real();
    if (std::abs(fa + fb) > tol) return false;
  }
  return true;
}
}  // namespace detail

inline SymmetryFlags symmetry_class(const CirclePotential& a, double tol = 1e-10) {
  bool im_zero = true;
  for (const complex& v : a.samples())
    if (std::abs(v.imag()) > tol) { im_zero = false; break; }
  SymmetryFlags f;
  f.self_adjoint = im_zero;
  f.pt_symmetric = detail::grid_even(a, false, tol) && detail::grid_odd(a, true, tol);
  f.anti_p_self_adjoint = detail::grid_odd(a, false, tol) && detail::grid_even(a, true, tol);
  return f;
}

/// Riesz frame bounds (min xi^2, max xi^2) for the eigenfunction family.
inline std::pair<double, double> riesz_bounds(const CirclePotential& a) {
  const Multiplier xi = xi_function(a);
  double lo = xi.min_abs(), hi = xi.max_abs();
  return {lo * lo, hi * hi};
}

/// Condition number kappa_a = sup|omega| * sup|omega^{-1}|; multiplication
/// operator norms are supremum norms.
inline double condition_number(const CirclePotential& a) {
  const Multiplier w = omega(a);
  return w.max_abs() / w.min_abs();
}

/// Sum_{|m| <= M} ||psi_m - phi_m||^2, evaluated directly.  Equals
/// (2M+1) ||xi - xi^{-1}||^2 / (2pi) since |psi_m - phi_m| is independent
/// of m.
inline double bari_partial_sum(const CirclePotential& a, int mode_bound) {
  const EigenFamily fam = spectrum(a, mode_bound);
  const double h = 2.0 * pi / a.n();
  double total = 0.0;
  for (size_t i = 0; i < fam.psi.size(); ++i) {
    double nrm = 0.0;
    for (size_t j = 0; j < fam.psi[i].size(); ++j)
      nrm += std::norm(fam.psi[i][j] - fam.phi[i][j]);
    total += nrm * h;
  }
  return total;
}

}  // namespace magharden

#endif
