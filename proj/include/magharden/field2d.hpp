#ifndef MAGHARDEN_FIELD2D_HPP
#define MAGHARDEN_FIELD2D_HPP

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <vector>

#include "magharden/circle_momentum.hpp"
#include "magharden/circle_potential.hpp"
#include "magharden/errors.hpp"

// Complex 2D magnetic fields B, the transverse-gauge potential
// A(x) = (-x2, x1) int_0^1 B(tx) t dt, the polar reduction
// a(r,theta) = int_0^r B(t cos theta, t sin theta) t dt and flux profiles.

namespace magharden {

using Vec2 = std::array<double, 2>;
using CVec2 = std::array<complex, 2>;

/// x |-> A(x); the common currency between field2d, hardy and verify.
using VectorPotential = std::function<CVec2(double, double)>;

struct FieldComponent {
  enum class Kind { gaussian, compact_bump, disk_constant };
  Kind kind;
  Vec2 center{0.0, 0.0};
  double scale = 1.0;  // > 0
  complex amplitude{1.0, 0.0};
};

namespace detail {
// int_0^1 exp(-1/(1-t^2)) t dt, for normalising compact bumps.  The profile
// integral over R^2 is then 2*pi*scale^2 times this.
inline double bump_radial_moment() {
  static const double v = [] {
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        [](double t) { return std::exp(-1.0 / (1.0 - t * t)) * t; }, 0.0, 1.0,
        12, 1e-14);
  }();
  return v;
}
}  // namespace detail

class ComplexField2D {
 public:
  ComplexField2D() = default;
  explicit ComplexField2D(std::vector<FieldComponent> comps)
      : components_(std::move(comps)) {
    for (const auto& c : components_)
      if (!(c.scale > 0.0)) throw InvalidInput("field component scale must be > 0");
  }

  const std::vector<FieldComponent>& components() const { return components_; }

  complex operator()(double x1, double x2) const {
    complex b{0.0};
    for (const auto& c : components_) {
      const double dx = x1 - c.center[0], dy = x2 - c.center[1];
      const double rho2 = (dx * dx + dy * dy) / (c.scale * c.scale);
      switch (c.kind) {
        case FieldComponent::Kind::gaussian:
          b += c.amplitude * std::exp(-0.5 * rho2);
          break;
        case FieldComponent::Kind::compact_bump:
          if (rho2 < 1.0) b += c.amplitude * std::exp(-1.0 / (1.0 - rho2));
          break;
        case FieldComponent::Kind::disk_constant:
          if (rho2 <= 1.0) b += c.amplitude;
          break;
      }
    }
    return b;
  }

  bool trivial() const {
    for (const auto& c : components_)
      if (std::abs(c.amplitude) > 0.0) return false;
    return true;
  }

  bool compactly_supported() const {
    for (const auto& c : components_)
      if (c.kind == FieldComponent::Kind::gaussian && std::abs(c.amplitude) > 0.0)
        return false;
    return true;
  }

  /// Radius of a disk centred at the origin containing the support
  /// (for Gaussians, the radius where the tail drops below ~1e-300).
  double support_radius() const {
    double r = 0.0;
    for (const auto& c : components_) {
      if (std::abs(c.amplitude) == 0.0) continue;
      const double d = std::hypot(c.center[0], c.center[1]);
      const double reach = (c.kind == FieldComponent::Kind::gaussian)
                               ? 38.0 * c.scale
                               : c.scale;
      r = std::max(r, d + reach);
    }
    return r;
  }

  /// (1/2pi) int_{R^2} B, from the closed-form component integrals.
  complex total_flux() const {
    complex f{0.0};
    for (const auto& c : components_) {
      const double s2 = c.scale * c.scale;
      switch (c.kind) {
        case FieldComponent::Kind::gaussian:
          f += c.amplitude * s2;  // (1/2pi) * amp * 2pi s^2
          break;
        case FieldComponent::Kind::compact_bump:
          f += c.amplitude * s2 * detail::bump_radial_moment();
          break;
        case FieldComponent::Kind::disk_constant:
          f += c.amplitude * s2 * 0.5;  // (1/2pi) * amp * pi s^2
          break;
      }
    }
    return f;
  }

 private:
  std::vector<FieldComponent> components_;
};

/// a(r,theta) = int_0^r B(t cos theta, t sin theta) t dt by adaptive
/// Gauss-Kronrod quadrature.
inline complex polar_potential(const ComplexField2D& B, double r, double theta) {
  if (r < 0.0) throw InvalidInput("polar_potential: r must be >= 0");
  if (r == 0.0) return {0.0, 0.0};
  const double ct = std::cos(theta), st = std::sin(theta);
  // Split at each component's entry/exit along the ray: adaptive quadrature
  // can otherwise miss a narrow bump inside a long interval, or stall on a
  // disk_constant jump.
  std::vector<double> cuts{0.0, r};
  for (const auto& c : B.components()) {
    const double proj = ct * c.center[0] + st * c.center[1];
    const double reach =
        (c.kind == FieldComponent::Kind::gaussian) ? 10.0 * c.scale : c.scale;
    for (double t : {proj - reach, proj, proj + reach})
      if (t > 0.0 && t < r) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
  complex total{0.0};
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-14) continue;
    double err_re = 0.0, err_im = 0.0;
    const double re = gk::integrate(
        [&](double t) { return B(t * ct, t * st).real() * t; }, cuts[i],
        cuts[i + 1], 12, 1e-12, &err_re);
    const double im = gk::integrate(
        [&](double t) { return B(t * ct, t * st).imag() * t; }, cuts[i],
        cuts[i + 1], 12, 1e-12, &err_im);
    if (err_re > 1e-8 || err_im > 1e-8)
      throw NonConvergence("polar_potential: radial quadrature did not converge");
    total += complex{re, im};
  }
  return total;
}

/// A(x) = (-x2, x1) int_0^1 B(tx) t dt; relative error <= 1e-10.
inline CVec2 gauge_potential(const ComplexField2D& B, double x1, double x2) {
  const double r = std::hypot(x1, x2);
  if (r == 0.0) return {complex{0.0}, complex{0.0}};
  const complex a = polar_potential(B, r, std::atan2(x2, x1));
  const complex g = a / (r * r);  // int_0^1 B(tx) t dt
  return {-x2 * g, x1 * g};
}

/// The transverse gauge as a VectorPotential.
inline VectorPotential canonical_gauge(const ComplexField2D& B) {
  return [B](double x, double y) { return gauge_potential(B, x, y); };
}

/// Aharonov-Bohm potential (-x2, x1) alpha / |x|^2, handled analytically.
inline VectorPotential ab_potential(complex alpha) {
  return [alpha](double x, double y) -> CVec2 {
    const double r2 = x * x + y * y;
    return {-y * alpha / r2, x * alpha / r2};
  };
}

struct FluxProfile {
  std::vector<double> radii;
  std::vector<double> mean_re;  // <Re a(r,.)>
  std::vector<double> mean_im;
  double total_re = 0.0;  // limiting means (compact support)
  double total_im = 0.0;
};

/// Angular means <a(r,.)> by periodic trapezoid over n_angles points.
inline FluxProfile flux_profile(const ComplexField2D& B,
                                const std::vector<double>& radii,
                                int n_angles = 256) {
  FluxProfile p;
  p.radii = radii;
  for (double r : radii) {
    complex s{0.0};
    for (int k = 0; k < n_angles; ++k)
      s += polar_potential(B, r, -pi + 2.0 * pi * k / n_angles);
    s /= double(n_angles);
    p.mean_re.push_back(s.real());
    p.mean_im.push_back(s.imag());
  }
  const complex total = B.total_flux();
  p.total_re = total.real();
  p.total_im = total.imag();
  return p;
}

enum class FluxMode { asymptotic, some_radius, ab };

inline double dist_to_integers(double x) {
  return std::abs(x - std::round(x));
}

/// Flux-condition gates.  asymptotic: limiting means; some_radius: any grid
/// radius; ab: Re alpha not integer or Im alpha != 0.
inline bool check_flux_condition(const FluxProfile& profile, FluxMode mode,
                                 complex alpha = {0.0, 0.0},
                                 double tol = 1e-9) {
  switch (mode) {
    case FluxMode::asymptotic:
      return dist_to_integers(profile.total_re) > tol ||
             std::abs(profile.total_im) > tol;
    case FluxMode::some_radius:
      for (size_t i = 0; i < profile.radii.size(); ++i)
        if (dist_to_integers(profile.mean_re[i]) > tol ||
            std::abs(profile.mean_im[i]) > tol)
          return true;
      return false;
    case FluxMode::ab:
      return dist_to_integers(alpha.real()) > tol ||
             std::abs(alpha.imag()) > tol;
  }
  return false;
}

/// max over sample points of |rot A - B| via central differences, h = 1e-5.
inline double curl_residual(const VectorPotential& A, const ComplexField2D& B,
                            const std::vector<Vec2>& points, double h = 1e-5) {
  double worst = 0.0;
  for (const auto& p : points) {
    const CVec2 axp = A(p[0] + h, p[1]), axm = A(p[0] - h, p[1]);
    const CVec2 ayp = A(p[0], p[1] + h), aym = A(p[0], p[1] - h);
    const complex rot =
        (axp[1] - axm[1]) / (2.0 * h) - (ayp[0] - aym[0]) / (2.0 * h);
    worst = std::max(worst, std::abs(rot - B(p[0], p[1])));
  }
  return worst;
}

/// Weight w(x) = exp(int_{-pi}^x Im a) of the weighted-space reformulation:
/// with phi = w psi one has |P_{Re a} phi|^2 w^{-2} = |P_a psi|^2 pointwise.
inline Multiplier weight_w(const CirclePotential& a_slice) {
  Multiplier w;
  w.label = Multiplier::Label::w;
  w.values.resize(static_cast<size_t>(a_slice.n()));
  for (int j = 0; j < a_slice.n(); ++j)
    w.values[static_cast<size_t>(j)] =
        std::exp(antiderivative(a_slice, a_slice.node(j)).imag());
  return w;
}

/// Sample a(r, .) on a circle as a CirclePotential.
inline CirclePotential circle_slice(const ComplexField2D& B, double r,
                                    int n_grid = 256) {
  std::vector<complex> s(static_cast<size_t>(n_grid));
  for (int j = 0; j < n_grid; ++j)
    s[static_cast<size_t>(j)] = polar_potential(B, r, -pi + 2.0 * pi * j / n_grid);
  return CirclePotential::from_samples(std::move(s));
}

}  // namespace magharden

#endif
