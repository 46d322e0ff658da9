#ifndef MAGHARDEN_HARDY_HPP
#define MAGHARDEN_HARDY_HPP

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "magharden/field2d.hpp"
#include "magharden/galerkin.hpp"

// lambda_a(r) curves, the 1D auxiliary Hardy constants, cutoff functions,
// and certified lower bounds on the Hardy constants of the four global
// inequalities (compact, logarithmic, Aharonov-Bohm, robust), plus the
// optimality-breaking minimising sequence.

namespace magharden {

namespace detail {
inline int thread_cap() {
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap < 1) cap = 1;
  if (const char* env = std::getenv("MAGHARDEN_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) cap = std::min(cap, v);
  }
  return cap;
}

// Deterministic parallel loop: fixed index partition, results written by
// index, no reduction-order dependence.
template <typename F>
void parallel_for(int count, F&& body) {
  const int nt = std::min(thread_cap(), std::max(1, count));
  if (nt == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nt));
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += nt) body(i);
    });
  for (auto& th : pool) th.join();
}
}  // namespace detail

struct LambdaCurve {
  std::vector<double> radii;
  std::vector<double> lambda;
  std::vector<bool> converged;
  std::vector<double> mean_re;  // flux annotations: <Re a(r,.)>
  std::vector<double> mean_im;
  std::vector<double> mean_abs_sq;  // <|a(r,.)|^2>, the upper bound
};

/// Per radius, build a(r,.) as a CirclePotential and take the smallest
/// singular value squared of the Galerkin momentum matrix.
inline LambdaCurve lambda_curve(const ComplexField2D& B,
                                const std::vector<double>& radii,
                                int mode_bound = 24, int n_slice = 256) {
  const int count = static_cast<int>(radii.size());
  LambdaCurve curve;
  curve.radii = radii;
  curve.lambda.assign(radii.size(), 0.0);
  curve.converged.assign(radii.size(), false);
  curve.mean_re.assign(radii.size(), 0.0);
  curve.mean_im.assign(radii.size(), 0.0);
  curve.mean_abs_sq.assign(radii.size(), 0.0);
  detail::parallel_for(count, [&](int i) {
    const CirclePotential slice = circle_slice(B, radii[static_cast<size_t>(i)], n_slice);
    const SpectralResult res = lambda_min(slice, mode_bound);
    const size_t si = static_cast<size_t>(i);
    curve.lambda[si] = res.smallest_singular_sq;
    curve.converged[si] = res.converged;
    const MeanDecomposition m = mean(slice);
    curve.mean_re[si] = m.mean_re;
    curve.mean_im[si] = m.mean_im;
    double s = 0.0;
    for (const complex& v : slice.samples()) s += std::norm(v);
    curve.mean_abs_sq[si] = s / slice.n();
  });
  return curve;
}

/// lambda_a(|x|)/|x|^2 with linear interpolation of lambda in r.
inline double local_hardy_weight(const LambdaCurve& curve, double x1, double x2) {
  const double r = std::hypot(x1, x2);
  if (curve.radii.empty() || r < curve.radii.front() || r > curve.radii.back())
    throw InvalidInput("local_hardy_weight: |x| outside the curve range");
  size_t i = 1;
  while (i < curve.radii.size() && curve.radii[i] < r) ++i;
  if (i == curve.radii.size()) i = curve.radii.size() - 1;
  const double r0 = curve.radii[i - 1], r1 = curve.radii[i];
  const double t = (r1 > r0) ? (r - r0) / (r1 - r0) : 0.0;
  const double lam = (1.0 - t) * curve.lambda[i - 1] + t * curve.lambda[i];
  return lam / (r * r);
}

struct Gamma1D {
  double gamma_interior;  // (j_{0,1}/r0)^2, first Bessel J0 zero
  double gamma_exterior;  // 1/4, half-line Hardy after t = log(r/r0)
  double gamma;
};

/// Constants of the two auxiliary radial inequalities on (0, r0) and
/// (r0, infty).  Closed forms; the discretised Rayleigh oracles live in the
/// test suite.
inline Gamma1D gamma_1d(double r0) {
  if (!(r0 > 0.0)) throw InvalidInput("gamma_1d: r0 must be > 0");
  static const double j01 = boost::math::cyl_bessel_j_zero(0.0, 1);
  Gamma1D g;
  g.gamma_interior = (j01 / r0) * (j01 / r0);
  g.gamma_exterior = 0.25;
  g.gamma = std::min(g.gamma_interior, g.gamma_exterior);
  return g;
}

namespace detail {
// C-infinity step: 0 for t <= 0, 1 for t >= 1.
inline double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double f = std::exp(-1.0 / t);
  const double g = std::exp(-1.0 / (1.0 - t));
  return f / (f + g);
}
}  // namespace detail

/// Smooth cutoff: 1 outside the interval, 0 on a neighbourhood of its
/// midpoint r0, mollification width 1% of the half-width.
class CutoffFunction {
 public:
  CutoffFunction(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(hi > lo)) throw InvalidInput("build_cutoff: degenerate interval");
    r0_ = 0.5 * (lo + hi);
    delta_ = 0.01 * 0.5 * (hi - lo);
    // dense sampling for the derivative sup
    const int n = 100000;
    double sup = 0.0;
    const double h = (hi - lo) / n;
    double prev = (*this)(lo);
    for (int i = 1; i <= n; ++i) {
      const double cur = (*this)(lo + i * h);
      sup = std::max(sup, std::abs(cur - prev) / h);
      prev = cur;
    }
    xi_prime_sup_ = sup;
  }

  double r0() const { return r0_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double xi_prime_sup() const { return xi_prime_sup_; }

  double operator()(double r) const {
    if (r <= lo_ || r >= hi_) return 1.0;
    if (r <= r0_ - delta_)
      return 1.0 - detail::smooth_step((r - lo_) / (r0_ - delta_ - lo_));
    if (r < r0_ + delta_) return 0.0;
    return detail::smooth_step((r - r0_ - delta_) / (hi_ - r0_ - delta_));
  }

 private:
  double lo_, hi_, r0_, delta_, xi_prime_sup_;
};

inline CutoffFunction build_cutoff(double lo, double hi) {
  return CutoffFunction(lo, hi);
}

/// inf over r in (0, infty) of (1 + r^2 log^2 r) / (1 + r^2 log^2(r/r0)),
/// evaluated on a log grid; both endpoint limits equal 1.
inline double inf_weight_ratio(double r0) {
  double inf = 1.0;
  const int n = 4000;
  for (int i = 0; i <= n; ++i) {
    const double r = std::pow(10.0, -6.0 + 12.0 * i / n);
    const double lr = std::log(r), lr0 = std::log(r / r0);
    const double v = (1.0 + r * r * lr * lr) / (1.0 + r * r * lr0 * lr0);
    inf = std::min(inf, v);
  }
  return inf;
}

struct HardyEstimate {
  enum class Kind { compact_c, log_c_tilde, ab_c_inf, robust_c_hat };
  double constant = 0.0;
  Kind kind;
  std::map<std::string, double> ledger;
};

/// c_tilde for the logarithmic Hardy inequality.  Interval selection:
/// nu = half the max of lambda(r)/r^2 over the grid, I the longest
/// contiguous bracket where the threshold holds.
inline HardyEstimate hardy_constant_log(const LambdaCurve& curve,
                                        double flux_tol = 1e-9) {
  // gate: some radius with non-integer real mean or nonzero imaginary mean
  bool gate = false;
  for (size_t i = 0; i < curve.radii.size(); ++i)
    if (dist_to_integers(curve.mean_re[i]) > flux_tol ||
        std::abs(curve.mean_im[i]) > flux_tol)
      gate = true;
  if (!gate)
    throw FluxConditionFailed(
        "hardy_constant_log: no radius satisfies the flux condition");

  double peak = 0.0;
  for (size_t i = 0; i < curve.radii.size(); ++i)
    peak = std::max(peak, curve.lambda[i] / (curve.radii[i] * curve.radii[i]));
  const double nu = 0.5 * peak;

  // longest contiguous run with lambda/r^2 >= nu
  size_t best_lo = 0, best_hi = 0;
  size_t run_lo = 0;
  bool in_run = false;
  for (size_t i = 0; i <= curve.radii.size(); ++i) {
    const bool ok =
        i < curve.radii.size() &&
        curve.lambda[i] / (curve.radii[i] * curve.radii[i]) >= nu;
    if (ok && !in_run) { run_lo = i; in_run = true; }
    if (!ok && in_run) {
      if (i - 1 - run_lo >= best_hi - best_lo) { best_lo = run_lo; best_hi = i - 1; }
      in_run = false;
    }
  }
  double lo = curve.radii[best_lo], hi = curve.radii[best_hi];
  if (best_hi == best_lo) {  // widen a degenerate bracket to its neighbours
    lo = curve.radii[best_lo > 0 ? best_lo - 1 : 0];
    hi = curve.radii[std::min(best_hi + 1, curve.radii.size() - 1)];
  }

  const CutoffFunction xi = build_cutoff(lo, hi);
  const double r0 = xi.r0();
  const Gamma1D g = gamma_1d(r0);
  const double xp2 = xi.xi_prime_sup() * xi.xi_prime_sup();
  const double ratio = inf_weight_ratio(r0);
  // conservative denominator: ||xi'||^2 >= ||xi||^2 = 1 here
  const double c_tilde =
      (g.gamma / 4.0 * nu) / (nu + xp2 + g.gamma / 2.0) * ratio;

  HardyEstimate est;
  est.kind = HardyEstimate::Kind::log_c_tilde;
  est.constant = c_tilde;
  est.ledger = {{"nu", nu},
                {"interval_lo", lo},
                {"interval_hi", hi},
                {"r0", r0},
                {"gamma", g.gamma},
                {"gamma_interior", g.gamma_interior},
                {"gamma_exterior", g.gamma_exterior},
                {"xi_prime_sup", xi.xi_prime_sup()},
                {"xi_sup", 1.0},
                {"inf_weight_ratio", ratio}};
  return est;
}

/// c for compactly supported fields: min{c_tilde * a_R, lambda(R)} with
/// a_R = inf_{r < R} (1 + r^2)/(1 + r^2 log^2 r).
inline HardyEstimate hardy_constant_compact(const ComplexField2D& B,
                                            const LambdaCurve& curve, double R,
                                            double flux_tol = 1e-9) {
  if (!B.compactly_supported() || B.support_radius() > R)
    throw SupportExceedsR("hardy_constant_compact: support of B not inside D_R");
  const complex flux = B.total_flux();
  if (dist_to_integers(flux.real()) <= flux_tol && std::abs(flux.imag()) <= flux_tol)
    throw FluxConditionFailed(
        "hardy_constant_compact: asymptotic flux condition fails");

  HardyEstimate log_est = hardy_constant_log(curve, flux_tol);

  double a_R = 1.0;
  const int n = 4000;
  for (int i = 1; i <= n; ++i) {
    const double r = R * i / n;
    const double lr = std::log(r);
    a_R = std::min(a_R, (1.0 + r * r) / (1.0 + r * r * lr * lr));
  }

  // lambda at the grid radius closest to R
  size_t iR = 0;
  for (size_t i = 0; i < curve.radii.size(); ++i)
    if (std::abs(curve.radii[i] - R) < std::abs(curve.radii[iR] - R)) iR = i;
  const double lam_R = curve.lambda[iR];

  HardyEstimate est;
  est.kind = HardyEstimate::Kind::compact_c;
  est.constant = std::min(log_est.constant * a_R, lam_R);
  est.ledger = log_est.ledger;
  est.ledger["c_tilde"] = log_est.constant;
  est.ledger["a_R"] = a_R;
  est.ledger["R"] = R;
  est.ledger["lambda_R"] = lam_R;
  return est;
}

/// c_infty = lambda_alpha = dist(Re alpha, Z)^2 + (Im alpha)^2 for the
/// Aharonov-Bohm potential; P_alpha is normal, so the closed form is exact.
inline HardyEstimate ab_constant(complex alpha, double flux_tol = 1e-9) {
  const double d = dist_to_integers(alpha.real());
  if (d <= flux_tol && std::abs(alpha.imag()) <= flux_tol)
    throw FluxConditionFailed("ab_constant: Re alpha integer and Im alpha zero");
  HardyEstimate est;
  est.kind = HardyEstimate::Kind::ab_c_inf;
  est.constant = d * d + alpha.imag() * alpha.imag();
  est.ledger = {{"lambda_alpha", est.constant},
                {"dist_re", d},
                {"im_alpha", alpha.imag()}};
  return est;
}

/// Lowest magnetic Neumann eigenvalue on the disk D_R, discretised on a
/// polar grid with link-variable (Peierls phase) covariant differences, so
/// that exact gauges A = grad F give zero at machine precision.
inline double mu_disk(const VectorPotential& A, double R, int n_r, int n_theta) {
  if (n_r < 4 || n_theta < 8) throw InvalidInput("mu_disk: grid too coarse");
  const int dim = n_r * n_theta;
  const double dr = R / n_r;
  const double dth = 2.0 * pi / n_theta;
  auto idx = [&](int j, int k) { return j * n_theta + ((k % n_theta + n_theta) % n_theta); };
  auto node = [&](int j, int k) -> Vec2 {
    const double r = (j + 0.5) * dr;
    const double th = -pi + k * dth;
    return {r * std::cos(th), r * std::sin(th)};
  };
  // complex line integral of A along a straight segment, 5-point Gauss
  auto line_phase = [&](const Vec2& p, const Vec2& q) -> complex {
    static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                 0.5384693101056831, 0.9061798459386640};
    static const double gw[5] = {0.2369268850561891, 0.4786286704993665,
                                 0.5688888888888889, 0.4786286704993665,
                                 0.2369268850561891};
    const double tx = q[0] - p[0], ty = q[1] - p[1];
    complex s{0.0};
    for (int i = 0; i < 5; ++i) {
      const double t = 0.5 * (gx[i] + 1.0);
      const CVec2 a = A(p[0] + t * tx, p[1] + t * ty);
      s += gw[i] * 0.5 * (a[0] * tx + a[1] * ty);
    }
    return s;
  };

  std::vector<Eigen::Triplet<complex>> trip;
  trip.reserve(static_cast<size_t>(8 * dim));
  Eigen::VectorXd massv(dim);
  for (int j = 0; j < n_r; ++j)
    for (int k = 0; k < n_theta; ++k)
      massv(idx(j, k)) = (j + 0.5) * dr * dr * dth;

  // Edge term |e^{-i Phi} psi1 - psi0|^2 * weight / len^2 with
  // Phi = int_edge A . dl.
  auto accumulate = [&](int i0, int i1, const Vec2& p, const Vec2& q,
                        double len, double weight) {
    const complex ph = std::exp(-iu * line_phase(p, q));
    const double w = weight / (len * len);
    // |e^{-iPhi} psi1 - psi0|^2 = |psi0|^2 + |ph|^2 |psi1|^2
    //                             - 2 Re(conj(psi0) ph psi1)
    trip.emplace_back(i0, i0, complex{w});
    trip.emplace_back(i1, i1, complex{w * std::norm(ph)});
    trip.emplace_back(i0, i1, -w * ph);
    trip.emplace_back(i1, i0, -w * std::conj(ph));
  };

  for (int j = 0; j + 1 < n_r; ++j)
    for (int k = 0; k < n_theta; ++k) {
      const Vec2 p = node(j, k), q = node(j + 1, k);
      const double r_edge = (j + 1.0) * dr;
      accumulate(idx(j, k), idx(j + 1, k), p, q, dr, r_edge * dr * dth);
    }
  for (int j = 0; j < n_r; ++j)
    for (int k = 0; k < n_theta; ++k) {
      const Vec2 p = node(j, k), q = node(j, k + 1);
      const double r = (j + 0.5) * dr;
      accumulate(idx(j, k), idx(j, k + 1), p, q, r * dth, r * dr * dth);
    }

  // smallest generalized eigenvalue of (Q, diag(mass)) via shifted inverse
  // iteration
  const double eps = 1e-10;
  Eigen::SparseMatrix<complex> Q(dim, dim);
  for (int i = 0; i < dim; ++i) trip.emplace_back(i, i, complex{0.0});
  Q.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseMatrix<complex> Qs = Q;
  for (int i = 0; i < dim; ++i) Qs.coeffRef(i, i) += eps * massv(i);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<complex>> solver(Qs);
  if (solver.info() != Eigen::Success)
    throw NonConvergence("mu_disk: factorisation failed");
  const Eigen::VectorXcd massc = massv.cast<complex>();
  Eigen::VectorXcd x = Eigen::VectorXcd::Ones(dim);
  x.normalize();
  double mu_prev = -1.0, mu = 0.0;
  for (int it = 0; it < 200; ++it) {
    x = solver.solve(Eigen::VectorXcd(x.cwiseProduct(massc)));
    x.normalize();
    const double num = std::real(x.dot(Q * x));
    const double den = std::real(x.dot(x.cwiseProduct(massc)));
    mu = num / den;
    if (it > 3 && std::abs(mu - mu_prev) <= 1e-12 + 1e-9 * std::abs(mu)) break;
    mu_prev = mu;
  }
  return std::max(mu, 0.0);
}

/// Grid-doubling wrapper; converged to ~3 significant digits.
inline double mu_disk_converged(const VectorPotential& A, double R,
                                int n_r0 = 12, int n_theta0 = 24,
                                int max_levels = 3, double rel_tol = 5e-3,
                                double* out_residual = nullptr) {
  double prev = mu_disk(A, R, n_r0, n_theta0);
  for (int l = 1; l <= max_levels; ++l) {
    const double cur = mu_disk(A, R, n_r0 << l, n_theta0 << l);
    const double res = std::abs(cur - prev) / std::max(1e-12, std::abs(cur));
    if (res <= rel_tol || std::abs(cur) < 1e-10) {
      if (out_residual) *out_residual = res;
      return cur;
    }
    prev = cur;
  }
  throw NonConvergence("mu_disk: grid doubling did not converge");
}

/// k_R = sup_{|x| >= r0} |Im A(x)| |x| log(|x|/r0) over a log-spaced
/// radius/angle grid, with an empirical tail-decay check of the hypothesis
/// |Im A(x)| |x| log|x| -> 0.
inline double k_R(const VectorPotential& A, double r0,
                  const std::vector<double>& search_radii, int n_angles = 64) {
  double sup = 0.0;
  std::vector<double> tail_profile;
  for (double r : search_radii) {
    if (r < r0) continue;
    double worst = 0.0;
    for (int k = 0; k < n_angles; ++k) {
      const double th = -pi + 2.0 * pi * k / n_angles;
      const CVec2 a = A(r * std::cos(th), r * std::sin(th));
      const double im = std::hypot(a[0].imag(), a[1].imag());
      worst = std::max(worst, im);
    }
    sup = std::max(sup, worst * r * std::log(std::max(r / r0, 1.0)));
    tail_profile.push_back(worst * r * std::abs(std::log(std::max(r, 1.0 + 1e-12))));
  }
  // hypothesis (decay of |Im A| |x| log|x|): the sampled tail must not be
  // rising at the grid edge
  const size_t m = tail_profile.size();
  if (m >= 3) {
    const double t0 = tail_profile[m - 3], t1 = tail_profile[m - 2],
                 t2 = tail_profile[m - 1];
    if (t2 > 1e-12 && t2 >= t1 && t1 >= t0)
      throw HypothesisViolated("k_R: |Im A| |x| log|x| does not decay on the grid");
  }
  return sup;
}

/// c_hat for the robust inequality (arbitrary smooth gauge).
inline HardyEstimate robust_constant(const VectorPotential& A,
                                     const ComplexField2D& B, double R) {
  if (B.trivial())
    throw TrivialField("robust_constant: B identically zero, mu_A vanishes");
  const double r0 = R / 2.0;
  double mu_res = 0.0;
  const double mu = mu_disk_converged(A, R, 12, 24, 3, 5e-3, &mu_res);

  std::vector<double> radii;
  for (int i = 0; i <= 60; ++i)
    radii.push_back(r0 * std::pow(10.0, 4.0 * i / 60.0));
  const double k = k_R(A, r0, radii);
  if (k >= 0.5)
    throw HypothesisViolated("robust_constant: k_R >= 1/2 at R = " +
                             std::to_string(R));
  const double gamma_R = (1.0 - 2.0 * k) * (1.0 - 2.0 * k) / 4.0;
  const double ratio = inf_weight_ratio(r0);
  // ||xi||_inf = 1 by construction of the cutoff
  const double c_hat = (gamma_R / 4.0 * mu) / (mu + 1.0 + gamma_R) * ratio;

  HardyEstimate est;
  est.kind = HardyEstimate::Kind::robust_c_hat;
  est.constant = c_hat;
  est.ledger = {{"mu_A_R", mu},     {"mu_residual", mu_res},
                {"k_R", k},         {"gamma_R", gamma_R},
                {"r0", r0},         {"R", R},
                {"xi_sup", 1.0},    {"inf_weight_ratio", ratio}};
  return est;
}

struct OptimalityResult {
  double numerator;    // int |f_n'|^2 r dr  (-> 2/log n)
  double denominator;  // int |f_n|^2 / (1+r^2) r dr
  double rayleigh;
};

/// Piecewise-log minimising sequence member f_n: supported on [n, n^3],
/// log(r/n)/log n rising to 1 at n^2, log(n^3/r)/log n falling back.
/// Piecewise linear in u = log r, with C^1 corner rounding of half-width
/// 1% of the breakpoint spacing log n.
class FnRadial {
 public:
  explicit FnRadial(int n) : n_(n) {
    if (n < 3) throw InvalidInput("FnRadial: n >= 3 required");
    L_ = std::log(double(n));
    s_ = 1.0 / L_;
    w_ = 0.01 * L_;
  }

  int n() const { return n_; }
  double u_lo() const { return L_ - w_; }
  double u_hi() const { return 3.0 * L_ + w_; }

  double value_u(double u) const {
    if (std::abs(u - L_) < w_) return corner(u, L_, 0.0, s_, 0.0);
    if (std::abs(u - 2.0 * L_) < w_) return corner(u, 2.0 * L_, s_, -s_, 1.0);
    if (std::abs(u - 3.0 * L_) < w_) return corner(u, 3.0 * L_, -s_, 0.0, 0.0);
    if (u <= L_ || u >= 3.0 * L_) return 0.0;
    return (u <= 2.0 * L_) ? s_ * (u - L_) : s_ * (3.0 * L_ - u);
  }

  double deriv_u(double u) const {
    if (std::abs(u - L_) < w_) return ramp(u, L_, 0.0, s_);
    if (std::abs(u - 2.0 * L_) < w_) return ramp(u, 2.0 * L_, s_, -s_);
    if (std::abs(u - 3.0 * L_) < w_) return ramp(u, 3.0 * L_, -s_, 0.0);
    if (u <= L_ || u >= 3.0 * L_) return 0.0;
    return (u <= 2.0 * L_) ? s_ : -s_;
  }

  double value(double r) const { return r > 0.0 ? value_u(std::log(r)) : 0.0; }
  double deriv(double r) const { return r > 0.0 ? deriv_u(std::log(r)) / r : 0.0; }

 private:
  double corner(double u, double c, double sl, double sr, double fc) const {
    const double d = u - c;
    return fc + sl * d + (sr - sl) * (d + w_) * (d + w_) / (4.0 * w_);
  }
  double ramp(double u, double c, double sl, double sr) const {
    return sl + (sr - sl) * (u - c + w_) / (2.0 * w_);
  }
  int n_;
  double L_, s_, w_;
};

/// Radial Rayleigh quotient of f_n: int |f'|^2 r dr over
/// int |f|^2/(1+r^2) r dr; numerator tends to 2/log n.
inline OptimalityResult optimality_sequence(int n, double R) {
  if (n < 3 || double(n) <= R)
    throw InvalidInput("optimality_sequence: need n >= 3 and n > R");
  const FnRadial fn(n);
  // composite Simpson in u = log r, where the integrands are smooth
  const int m = 200000;  // even
  const double a = fn.u_lo(), b = fn.u_hi(), h = (b - a) / m;
  double num = 0.0, den = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double u = a + i * h;
    const double wgt = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double fv = fn.value_u(u), dv = fn.deriv_u(u);
    const double e2u = std::exp(2.0 * u);
    num += wgt * dv * dv;
    den += wgt * fv * fv * e2u / (1.0 + e2u);
  }
  num *= h / 3.0;
  den *= h / 3.0;
  return {num, den, num / den};
}

}  // namespace magharden

#endif
