#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "magharden/verify.hpp"
#include "oracles.hpp"

using namespace magharden;

namespace {

ComplexField2D bump_with_flux(complex flux, double scale = 1.0,
                              Vec2 center = {0.0, 0.0}) {
  FieldComponent c;
  c.kind = FieldComponent::Kind::compact_bump;
  c.center = center;
  c.scale = scale;
  c.amplitude = flux / (scale * scale * detail::bump_radial_moment());
  return ComplexField2D(std::vector<FieldComponent>{c});
}

// max relative deviation of psi.grad from central differences over random
// points inside the effective support
double grad_defect(const TestFunction2D& psi, unsigned seed, double box) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-box, box);
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng), y = u(rng);
    const CVec2 g = psi.grad(x, y);
    const complex gx =
        (psi.eval(x + h, y) - psi.eval(x - h, y)) / (2.0 * h);
    const complex gy =
        (psi.eval(x, y + h) - psi.eval(x, y - h)) / (2.0 * h);
    const double scale = std::abs(g[0]) + std::abs(g[1]) + 1.0;
    worst = std::max(worst,
                     (std::abs(g[0] - gx) + std::abs(g[1] - gy)) / scale);
  }
  return worst;
}

}  // namespace

TEST_CASE("analytic gradients match central differences") {
  CHECK(grad_defect(gaussian_packet({0.4, -0.7}, 0.9, {1.2, -0.5},
                                    complex{0.8, 0.2}),
                    1, 3.0) < 1e-6);
  CHECK(grad_defect(ring_bump(1.0, 3.0, 2), 2, 3.2) < 1e-6);
  CHECK(grad_defect(ring_bump(0.5, 1.5, -1), 3, 1.6) < 1e-6);
  for (unsigned s : {7u, 11u, 23u})
    CHECK(grad_defect(random_bandlimited(s), s, 4.0) < 1e-6);
  // fn_sequence: sample inside the ramp region, away from the r = 0 kink
  const TestFunction2D fn = fn_sequence(4);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(5.0, 60.0);
  const double h = 1e-4;
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng), y = u(rng);
    const CVec2 g = fn.grad(x, y);
    const complex gx = (fn.eval(x + h, y) - fn.eval(x - h, y)) / (2.0 * h);
    const complex gy = (fn.eval(x, y + h) - fn.eval(x, y - h)) / (2.0 * h);
    CHECK(std::abs(g[0] - gx) + std::abs(g[1] - gy) < 1e-6);
  }
}

TEST_CASE("quadratic form: free Gaussian has form pi (1 + |q|^2)") {
  const GridSpec grid{8.0, 400};
  const VectorPotential zero = [](double, double) { return CVec2{0.0, 0.0}; };
  // psi = exp(-r^2/2): int |grad psi|^2 = pi
  const TestFunction2D flat = gaussian_packet({0.0, 0.0}, 1.0, {0.0, 0.0});
  CHECK(quadratic_form_2d(zero, flat, grid) == doctest::Approx(pi).epsilon(1e-6));
  // adding e^{i q.x} contributes |q|^2 int |psi|^2 = |q|^2 pi
  const TestFunction2D boosted = gaussian_packet({0.0, 0.0}, 1.0, {1.5, -0.5});
  CHECK(quadratic_form_2d(zero, boosted, grid) ==
        doctest::Approx(pi * (1.0 + 2.5)).epsilon(1e-6));
  // refinement stability with a magnetic potential
  const VectorPotential A = canonical_gauge(bump_with_flux(0.5));
  const TestFunction2D ring = ring_bump(1.0, 3.0, 1);
  const double q1 = quadratic_form_2d(A, ring, {3.2, 300});
  const double q2 = quadratic_form_2d(A, ring, {3.2, 600});
  CHECK(std::abs(q1 - q2) / q2 < 1e-4);
}

TEST_CASE("weighted norms") {
  const GridSpec grid{8.0, 400};
  const TestFunction2D flat = gaussian_packet({0.0, 0.0}, 1.0, {0.0, 0.0});
  auto one = [](double, double) { return 1.0; };
  CHECK(weighted_norm_2d(flat, one, grid) == doctest::Approx(pi).epsilon(1e-6));
  CHECK(weighted_norm_2d(flat, weight_one_plus_r2(), grid) <
        weighted_norm_2d(flat, one, grid));
  // ring bump avoids the origin, so the 1/r^2 norm is finite and below the
  // 1/(1+r^2) norm scaled by sup (1+r^2)/r^2 on the support
  const TestFunction2D ring = ring_bump(1.0, 3.0, 0);
  const double n_inv = weighted_norm_2d(ring, weight_inv_r2(), {3.2, 400});
  const double n_log = weighted_norm_2d(ring, weight_log(), {3.2, 400});
  const double n_one = weighted_norm_2d(ring, one, {3.2, 400});
  CHECK(n_inv > 0.0);
  CHECK(n_log > 0.0);
  // 1/r^2 <= 1 on the support r in [1, 3]
  CHECK(n_inv < n_one);
}

TEST_CASE("check_hardy: zero constant always passes, inflated fails") {
  const VectorPotential zero = [](double, double) { return CVec2{0.0, 0.0}; };
  std::vector<TestFunction2D> suite;
  suite.push_back(ring_bump(1.0, 3.0, 0));
  suite.push_back(ring_bump(0.8, 2.0, 1));
  for (unsigned s : {1u, 2u, 3u}) suite.push_back(random_bandlimited(s));
  const HardyReport trivial = check_hardy(zero, weight_one_plus_r2(), 0.0, suite);
  CHECK(trivial.pass);
  for (const auto& m : trivial.margins) CHECK(m.margin >= 0.0);

  // the smallest observed quotient, doubled, must fail
  double qmin = 1e300;
  for (const auto& m : trivial.margins) qmin = std::min(qmin, m.form / m.weighted);
  const HardyReport fail = check_hardy(zero, weight_one_plus_r2(), 2.0 * qmin, suite);
  CHECK(!fail.pass);
}

TEST_CASE("check_hardy: certified compact constant is sound") {
  const ComplexField2D B = bump_with_flux(0.5);
  std::vector<double> radii;
  for (int i = 0; i <= 19; ++i) radii.push_back(0.25 * std::pow(64.0, i / 19.0));
  const auto curve = lambda_curve(B, radii);
  const HardyEstimate est = hardy_constant_compact(B, curve, 1.5);
  std::vector<TestFunction2D> suite;
  suite.push_back(ring_bump(1.0, 3.0, 0));
  suite.push_back(ring_bump(2.0, 5.0, 1));
  suite.push_back(gaussian_packet({2.0, 1.0}, 0.8, {0.5, 0.0}));
  for (unsigned s : {4u, 9u}) suite.push_back(random_bandlimited(s));
  const HardyReport rep =
      check_hardy(canonical_gauge(B), weight_one_plus_r2(), est.constant, suite);
  CHECK(rep.pass);
  for (const auto& m : rep.margins) CHECK(m.margin >= -1e-6);
}

namespace {

// f_n(r) e^{i theta}: the gauge-matched minimising sequence member for a
// field of total flux 1
TestFunction2D gauged_fn(int n) {
  const FnRadial fn(n);
  TestFunction2D f;
  f.name = "gauged_fn_" + std::to_string(n);
  f.extent = std::pow(double(n), 3.0) * 1.05;
  f.eval = [fn](double x, double y) -> complex {
    const double r = std::hypot(x, y);
    const double g = fn.value(r);
    if (g == 0.0) return {0.0, 0.0};
    return g * std::exp(iu * std::atan2(y, x));
  };
  f.grad = [fn](double x, double y) -> CVec2 {
    const double r = std::hypot(x, y);
    const double g = fn.value(r), gp = fn.deriv(r);
    if (g == 0.0 && gp == 0.0) return {complex{0.0}, complex{0.0}};
    const complex ang = std::exp(iu * std::atan2(y, x));
    const double ct = x / r, st = y / r;
    const complex dth = g * iu * ang;
    return {ct * gp * ang - st * dth / r, st * gp * ang + ct * dth / r};
  };
  return f;
}

}  // namespace

TEST_CASE("check_hardy: violated flux lets the minimising sequence win") {
  // integer flux: no Hardy inequality; the gauge-matched piecewise-log
  // sequence drives the quotient to zero, so the quotient achieved by one
  // member is broken by a later one
  const ComplexField2D B = bump_with_flux(1.0);
  const VectorPotential A = canonical_gauge(B);
  auto quotient = [&](int n, int grid_n) {
    const HardyReport r =
        check_hardy(A, weight_one_plus_r2(), 0.0, {gauged_fn(n)}, grid_n);
    return r.margins[0].form / r.margins[0].weighted;
  };
  const double q8 = quotient(8, 3000);
  const double q15 = quotient(15, 4800);
  CHECK(q15 < q8);
  const HardyReport rep =
      check_hardy(A, weight_one_plus_r2(), q8, {gauged_fn(15)}, 4800);
  CHECK(!rep.pass);
  CHECK(rep.margins[0].margin < 0.0);
}

TEST_CASE("fn 2D quadrature agrees with the radial quotient") {
  const int n = 4;
  const TestFunction2D fn = fn_sequence(n);
  const VectorPotential zero = [](double, double) { return CVec2{0.0, 0.0}; };
  const GridSpec grid{fn.extent, 3000};
  const double form = quadratic_form_2d(zero, fn, grid);
  const double wnorm = weighted_norm_2d(fn, weight_one_plus_r2(), grid);
  const OptimalityResult r = optimality_sequence(n, 1.5);
  CHECK(std::abs(form - 2.0 * pi * r.numerator) / (2.0 * pi * r.numerator) < 1e-3);
  CHECK(std::abs(wnorm - 2.0 * pi * r.denominator) / (2.0 * pi * r.denominator) <
        1e-3);
}

TEST_CASE("polar reduction identity") {
  const TestFunction2D ring = ring_bump(1.0, 3.0, 1);
  const ComplexField2D none(std::vector<FieldComponent>{});
  CHECK(polar_identity_check(none, ring) < 1e-4);
  const ComplexField2D B = bump_with_flux(complex{0.7, 0.2});
  CHECK(polar_identity_check(B, ring) < 1e-4);
  FieldComponent g;
  g.kind = FieldComponent::Kind::gaussian;
  g.center = {0.5, 0.0};
  g.scale = 0.8;
  g.amplitude = complex{1.0, 0.3};
  const ComplexField2D gauss{std::vector<FieldComponent>{g}};
  const TestFunction2D packet = gaussian_packet({1.0, 0.5}, 0.7, {0.8, -0.3});
  CHECK(polar_identity_check(gauss, packet, 500, 256) < 1e-4);
}

TEST_CASE("relative boundedness of the potential") {
  const CirclePotential a = oracles::random_potential(17);
  std::vector<CirclePotential> psis;
  for (unsigned s : {3u, 5u, 8u, 13u})
    psis.push_back(oracles::random_potential(s, 10));
  psis.push_back(CirclePotential::constant(complex{1.0, 0.0}, 256));
  for (double eps : {0.05, 0.5, 2.0}) {
    const auto res = relative_bound_check(a, psis, eps);
    REQUIRE(res.size() == psis.size());
    for (const auto& r : res) {
      CHECK(r.pass);
      CHECK(r.lhs >= 0.0);
      CHECK(r.lhs <= r.rhs + 1e-12);
    }
  }
  CHECK_THROWS_AS(relative_bound_check(a, psis, 0.0), InvalidInput);
}
