#ifndef MAGHARDEN_CIRCLE_POTENTIAL_HPP
#define MAGHARDEN_CIRCLE_POTENTIAL_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "magharden/errors.hpp"

namespace magharden {

using complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr complex iu{0.0, 1.0};

/// Complex-valued magnetic potential a on the circle, identified with
/// [-pi, pi) sampled at x_j = -pi + 2*pi*j/n.  Carries both grid samples
/// and Fourier coefficients a_hat_k for |k| <= K, K = n/2 - 1, with the
/// convention a(x) = sum_k a_hat_k e^{ikx}.
class CirclePotential {
 public:
  static CirclePotential from_samples(std::vector<complex> samples) {
    CirclePotential a;
    a.n_ = static_cast<int>(samples.size());
    check_grid_size(a.n_);
    a.samples_ = std::move(samples);
    a.k_max_ = a.n_ / 2 - 1;
    a.compute_fourier();
    return a;
  }

  /// coeffs is a list of (k, value) pairs; everything else is zero.
  static CirclePotential from_fourier(
      int n, const std::vector<std::pair<int, complex>>& coeffs) {
    check_grid_size(n);
    const int k_max = n / 2 - 1;
    CirclePotential a;
    a.n_ = n;
    a.k_max_ = k_max;
    a.fourier_.assign(2 * k_max + 1, complex{0.0});
    for (const auto& [k, c] : coeffs) {
      if (std::abs(k) > k_max)
        throw InvalidInput("fourier mode k = " + std::to_string(k) +
                           " exceeds cutoff K = " + std::to_string(k_max));
      a.fourier_[static_cast<size_t>(k + k_max)] += c;
    }
    a.samples_.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) a.samples_[static_cast<size_t>(j)] = a.eval_fourier(a.node(j));
    return a;
  }

  static CirclePotential constant(complex c, int n = 64) {
    return from_fourier(n, {{0, c}});
  }

  int n() const { return n_; }
  int k_max() const { return k_max_; }
  double node(int j) const { return -pi + 2.0 * pi * j / n_; }
  const std::vector<complex>& samples() const { return samples_; }

  /// a_hat_k; zero outside the stored band.
  complex coeff(int k) const {
    if (std::abs(k) > k_max_) return {0.0, 0.0};
    return fourier_[static_cast<size_t>(k + k_max_)];
  }

  /// Evaluate a(x) at an arbitrary angle from the Fourier representation.
  complex operator()(double x) const { return eval_fourier(x); }

  CirclePotential conj() const {
    std::vector<complex> s(samples_.size());
    for (size_t j = 0; j < s.size(); ++j) s[j] = std::conj(samples_[j]);
    return from_samples(std::move(s));
  }

  CirclePotential real_part() const {
    std::vector<complex> s(samples_.size());
    for (size_t j = 0; j < s.size(); ++j) s[j] = samples_[j].real();
    return from_samples(std::move(s));
  }

  /// Largest |k| carrying a coefficient above `tol`.
  int band(double tol = 1e-14) const {
    int b = 0;
    for (int k = -k_max_; k <= k_max_; ++k)
      if (std::abs(coeff(k)) > tol) b = std::max(b, std::abs(k));
    return b;
  }

  /// Resample onto a finer grid (same function, larger n).
  CirclePotential resampled(int n_new) const {
    check_grid_size(n_new);
    std::vector<std::pair<int, complex>> coeffs;
    for (int k = -k_max_; k <= k_max_; ++k)
      if (coeff(k) != complex{0.0}) coeffs.emplace_back(k, coeff(k));
    return from_fourier(n_new, coeffs);
  }

 private:
  static void check_grid_size(int n) {
    if (n < 4 || (n & (n - 1)) != 0)
      throw InvalidInput("grid size must be a power of two >= 4, got " +
                         std::to_string(n));
  }

  // Trapezoid rule on a uniform periodic grid; this is the DFT, spectrally
  // exact for band-limited data with |k| <= n/2 - 1.
  void compute_fourier() {
    fourier_.assign(static_cast<size_t>(2 * k_max_ + 1), complex{0.0});
    for (int k = -k_max_; k <= k_max_; ++k) {
      complex s{0.0};
      for (int j = 0; j < n_; ++j)
        s += samples_[static_cast<size_t>(j)] * std::exp(-iu * double(k) * node(j));
      fourier_[static_cast<size_t>(k + k_max_)] = s / double(n_);
    }
  }

  complex eval_fourier(double x) const {
    complex s{0.0};
    for (int k = -k_max_; k <= k_max_; ++k) {
      const complex c = fourier_[static_cast<size_t>(k + k_max_)];
      if (c != complex{0.0}) s += c * std::exp(iu * double(k) * x);
    }
    return s;
  }

  int n_ = 0;
  int k_max_ = 0;
  std::vector<complex> samples_;
  std::vector<complex> fourier_;
};

/// Periodic trapezoid rule over the circle: (2*pi/n) * sum of samples.
inline complex circle_integral(const std::vector<complex>& samples) {
  complex s{0.0};
  for (const complex& v : samples) s += v;
  return s * (2.0 * pi / static_cast<double>(samples.size()));
}

inline double circle_integral(const std::vector<double>& samples) {
  double s = 0.0;
  for (double v : samples) s += v;
  return s * (2.0 * pi / static_cast<double>(samples.size()));
}

struct MeanDecomposition {
  complex mean;     // <a>
  double mean_re;   // <Re a>
  double mean_im;   // <Im a>
};

/// <a> = (1/2pi) integral of a; equals the zeroth Fourier coefficient.
inline MeanDecomposition mean(const CirclePotential& a) {
  const complex m = a.coeff(0);
  return {m, m.real(), m.imag()};
}

/// Cumulative integral of a from -pi to x, evaluated spectrally:
/// a_hat_0 (x + pi) + sum_{k != 0} a_hat_k (e^{ikx} - e^{-ik pi}) / (ik).
/// At x = pi this equals 2*pi*<a>.
inline complex antiderivative(const CirclePotential& a, double x) {
  if (x < -pi - 1e-12 || x > pi + 1e-12)
    throw InvalidInput("antiderivative: x outside [-pi, pi]");
  complex s = a.coeff(0) * (x + pi);
  for (int k = -a.k_max(); k <= a.k_max(); ++k) {
    if (k == 0) continue;
    const complex c = a.coeff(k);
    if (c == complex{0.0}) continue;
    const double kk = static_cast<double>(k);
    s += c * (std::exp(iu * kk * x) - std::exp(-iu * kk * pi)) / (iu * kk);
  }
  return s;
}

}  // namespace magharden

#endif
