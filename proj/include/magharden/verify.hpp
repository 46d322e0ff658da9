#ifndef MAGHARDEN_VERIFY_HPP
#define MAGHARDEN_VERIFY_HPP

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "magharden/field2d.hpp"
#include "magharden/hardy.hpp"

// Independent brute-force oracles: 2D quadratic-form quadrature, direct
// Hardy-inequality verification on test-function families, the polar
// reduction identity and the relative-boundedness estimate.

namespace magharden {

struct TestFunction2D {
  std::string name;
  std::function<complex(double, double)> eval;
  std::function<CVec2(double, double)> grad;
  double extent = 6.0;  // half-width of a box containing the effective support
};

/// Gaussian packet amp * exp(-|x-c|^2/(2 s^2)) * exp(i q.x).
inline TestFunction2D gaussian_packet(Vec2 center, double width, Vec2 wavevec,
                                      complex amp = {1.0, 0.0}) {
  TestFunction2D f;
  f.name = "gaussian_packet";
  f.extent = std::hypot(center[0], center[1]) + 8.0 * width;
  const double s2 = width * width;
  f.eval = [=](double x, double y) {
    const double dx = x - center[0], dy = y - center[1];
    return amp * std::exp(-(dx * dx + dy * dy) / (2.0 * s2)) *
           std::exp(iu * (wavevec[0] * x + wavevec[1] * y));
  };
  f.grad = [=](double x, double y) -> CVec2 {
    const double dx = x - center[0], dy = y - center[1];
    const complex v = amp * std::exp(-(dx * dx + dy * dy) / (2.0 * s2)) *
                      std::exp(iu * (wavevec[0] * x + wavevec[1] * y));
    return {v * (-dx / s2 + iu * wavevec[0]), v * (-dy / s2 + iu * wavevec[1])};
  };
  return f;
}

/// Compactly supported ring bump exp(-1/(1-t^2)) in t = (2r-r1-r2)/(r2-r1),
/// times the angular mode e^{i k theta}.  Support excludes the origin.
inline TestFunction2D ring_bump(double r1, double r2, int k_mode) {
  if (!(0.0 < r1 && r1 < r2)) throw InvalidInput("ring_bump: need 0 < r1 < r2");
  TestFunction2D f;
  f.name = "ring_bump";
  f.extent = r2 * 1.05;
  auto profile = [=](double r, double& g, double& gp) {
    const double t = (2.0 * r - r1 - r2) / (r2 - r1);
    if (std::abs(t) >= 1.0) { g = 0.0; gp = 0.0; return; }
    const double q = 1.0 - t * t;
    g = std::exp(-1.0 / q);
    gp = g * (-2.0 * t / (q * q)) * (2.0 / (r2 - r1));
  };
  f.eval = [=](double x, double y) -> complex {
    const double r = std::hypot(x, y);
    double g, gp;
    profile(r, g, gp);
    if (g == 0.0) return {0.0, 0.0};
    const double th = std::atan2(y, x);
    return g * std::exp(iu * double(k_mode) * th);
  };
  f.grad = [=](double x, double y) -> CVec2 {
    const double r = std::hypot(x, y);
    double g, gp;
    profile(r, g, gp);
    if (g == 0.0 && gp == 0.0) return {complex{0.0}, complex{0.0}};
    const double th = std::atan2(y, x);
    const complex ang = std::exp(iu * double(k_mode) * th);
    // d/dx = cos(th) d/dr - sin(th)/r d/dth
    const complex dr = gp * ang;
    const complex dth = g * iu * double(k_mode) * ang;
    const double ct = x / r, st = y / r;
    return {ct * dr - st * dth / r, st * dr + ct * dth / r};
  };
  return f;
}

/// Radially symmetric lift of the minimising sequence member f_n.
inline TestFunction2D fn_sequence(int n) {
  const FnRadial fn(n);
  TestFunction2D f;
  f.name = "fn_sequence_" + std::to_string(n);
  f.extent = std::pow(double(n), 3.0) * 1.05;
  f.eval = [fn](double x, double y) -> complex {
    return {fn.value(std::hypot(x, y)), 0.0};
  };
  f.grad = [fn](double x, double y) -> CVec2 {
    const double r = std::hypot(x, y);
    if (r == 0.0) return {complex{0.0}, complex{0.0}};
    const double d = fn.deriv(r);
    return {complex{d * x / r, 0.0}, complex{d * y / r, 0.0}};
  };
  return f;
}

/// Seeded sum of a few random Gaussian packets; reproducible by seed.
inline TestFunction2D random_bandlimited(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> pos(-2.5, 2.5), wid(0.6, 1.4),
      wav(-2.0, 2.0), ampd(-1.0, 1.0);
  std::vector<TestFunction2D> parts;
  for (int i = 0; i < 3; ++i) {
    const Vec2 c{pos(rng), pos(rng)};
    const double s = wid(rng);
    const Vec2 q{wav(rng), wav(rng)};
    const complex amp{ampd(rng), ampd(rng)};
    parts.push_back(gaussian_packet(c, s, q, amp));
  }
  TestFunction2D f;
  f.name = "random_bandlimited_" + std::to_string(seed);
  f.extent = 0.0;
  for (const auto& p : parts) f.extent = std::max(f.extent, p.extent);
  f.eval = [parts](double x, double y) {
    complex v{0.0};
    for (const auto& p : parts) v += p.eval(x, y);
    return v;
  };
  f.grad = [parts](double x, double y) -> CVec2 {
    CVec2 g{complex{0.0}, complex{0.0}};
    for (const auto& p : parts) {
      const CVec2 gi = p.grad(x, y);
      g[0] += gi[0];
      g[1] += gi[1];
    }
    return g;
  };
  return f;
}

struct GridSpec {
  double half_width;  // box [-L, L]^2
  int n;              // points per axis (midpoint rule)
};

/// Tensor midpoint quadrature of |grad psi - i A psi|^2 over the box.
inline double quadratic_form_2d(const VectorPotential& A,
                                const TestFunction2D& psi,
                                const GridSpec& grid) {
  const double L = grid.half_width;
  const double h = 2.0 * L / grid.n;
  double total = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    const double x = -L + (i + 0.5) * h;
    for (int j = 0; j < grid.n; ++j) {
      const double y = -L + (j + 0.5) * h;
      const complex v = psi.eval(x, y);
      const CVec2 g = psi.grad(x, y);
      if (v == complex{0.0} && g[0] == complex{0.0} && g[1] == complex{0.0})
        continue;
      const CVec2 a = A(x, y);
      total += std::norm(g[0] - iu * a[0] * v) + std::norm(g[1] - iu * a[1] * v);
    }
  }
  return total * h * h;
}

/// Quadrature of weight(x) |psi(x)|^2 over the box.
inline double weighted_norm_2d(const TestFunction2D& psi,
                               const std::function<double(double, double)>& weight,
                               const GridSpec& grid) {
  const double L = grid.half_width;
  const double h = 2.0 * L / grid.n;
  double total = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    const double x = -L + (i + 0.5) * h;
    for (int j = 0; j < grid.n; ++j) {
      const double y = -L + (j + 0.5) * h;
      const double m = std::norm(psi.eval(x, y));
      if (m != 0.0) total += weight(x, y) * m;
    }
  }
  return total * h * h;
}

inline std::function<double(double, double)> weight_one_plus_r2() {
  return [](double x, double y) { return 1.0 / (1.0 + x * x + y * y); };
}
inline std::function<double(double, double)> weight_inv_r2() {
  return [](double x, double y) { return 1.0 / (x * x + y * y); };
}
inline std::function<double(double, double)> weight_log() {
  return [](double x, double y) {
    const double r2 = x * x + y * y;
    const double lr = 0.5 * std::log(r2);  // log r
    return 1.0 / (1.0 + r2 * lr * lr);
  };
}

struct HardyMargin {
  std::string function;
  double form;
  double weighted;
  double margin;  // form/weighted - c
};

struct HardyReport {
  std::vector<HardyMargin> margins;
  double constant;
  bool pass;  // all margins >= -1e-6
};

/// Evaluate form/weighted - c for every suite member.  Failures are report
/// content, not errors.
inline HardyReport check_hardy(const VectorPotential& A,
                               const std::function<double(double, double)>& weight,
                               double c, const std::vector<TestFunction2D>& suite,
                               int base_n = 192, double slack = 1e-6) {
  HardyReport report;
  report.constant = c;
  report.pass = true;
  for (const auto& psi : suite) {
    const GridSpec grid{psi.extent, base_n};
    const double form = quadratic_form_2d(A, psi, grid);
    const double wnorm = weighted_norm_2d(psi, weight, grid);
    const double margin = form / wnorm - c;
    report.margins.push_back({psi.name, form, wnorm, margin});
    if (!(margin >= -slack)) report.pass = false;
  }
  return report;
}

/// Relative difference between the Cartesian form and its polar-coordinate
/// reduction through a(r, theta); validates the transverse-gauge identity.
inline double polar_identity_check(const ComplexField2D& B,
                                   const TestFunction2D& psi, int n_r = 400,
                                   int n_theta = 256) {
  const VectorPotential A = canonical_gauge(B);
  const GridSpec grid{psi.extent, 2 * n_r};
  const double cart = quadratic_form_2d(A, psi, grid);

  const double r_max = psi.extent * std::numbers::sqrt2;
  const double dr = r_max / n_r, dth = 2.0 * pi / n_theta;
  double polar = 0.0;
  for (int i = 0; i < n_r; ++i) {
    const double r = (i + 0.5) * dr;
    for (int j = 0; j < n_theta; ++j) {
      const double th = -pi + (j + 0.5) * dth;
      const double x = r * std::cos(th), y = r * std::sin(th);
      const complex v = psi.eval(x, y);
      const CVec2 g = psi.grad(x, y);
      if (v == complex{0.0} && g[0] == complex{0.0} && g[1] == complex{0.0})
        continue;
      const double ct = x / r, st = y / r;
      const complex dphi_dr = ct * g[0] + st * g[1];
      const complex dphi_dth = r * (-st * g[0] + ct * g[1]);
      const complex a = polar_potential(B, r, th);
      polar += (std::norm(dphi_dr) +
                std::norm(-iu * dphi_dth - a * v) / (r * r)) *
               r * dr * dth;
    }
  }
  return std::abs(cart - polar) / cart;
}

struct RelativeBoundResult {
  double lhs;  // ||a psi||^2
  double rhs;  // eps ||a||^2 ||psi'||^2 + ||a||^2 (1/eps + 1/2pi) ||psi||^2
  bool pass;
};

/// ||a psi||^2 <= eps ||a||^2 ||psi'||^2 + ||a||^2 (1/eps + 1/(2pi)) ||psi||^2
/// for band-limited psi given as a CirclePotential; psi' is spectral.
inline std::vector<RelativeBoundResult> relative_bound_check(
    const CirclePotential& a, const std::vector<CirclePotential>& psi_suite,
    double eps) {
  if (!(eps > 0.0)) throw InvalidInput("relative_bound_check: eps > 0 required");
  std::vector<RelativeBoundResult> out;
  double a_norm_sq = 0.0;
  for (const complex& v : a.samples()) a_norm_sq += std::norm(v);
  a_norm_sq *= 2.0 * pi / a.n();
  for (const CirclePotential& psi : psi_suite) {
    const CirclePotential p = (psi.n() == a.n()) ? psi : psi.resampled(a.n());
    double lhs = 0.0, psi_sq = 0.0;
    for (int j = 0; j < a.n(); ++j) {
      const size_t sj = static_cast<size_t>(j);
      lhs += std::norm(a.samples()[sj] * p.samples()[sj]);
      psi_sq += std::norm(p.samples()[sj]);
    }
    lhs *= 2.0 * pi / a.n();
    psi_sq *= 2.0 * pi / a.n();
    double dpsi_sq = 0.0;  // Parseval: sum |ik psi_hat_k|^2 * 2pi
    for (int k = -p.k_max(); k <= p.k_max(); ++k)
      dpsi_sq += double(k) * double(k) * std::norm(p.coeff(k));
    dpsi_sq *= 2.0 * pi;
    const double rhs =
        eps * a_norm_sq * dpsi_sq + a_norm_sq * (1.0 / eps + 1.0 / (2.0 * pi)) * psi_sq;
    out.push_back({lhs, rhs, lhs <= rhs + 1e-12});
  }
  return out;
}

}  // namespace magharden

#endif
