#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "spiraldim/errors.hpp"
#include "spiraldim/integrate.hpp"
#include "spiraldim/polar_system.hpp"

using namespace spiraldim;
using std::numbers::pi;

namespace {

// Max relative error of l = 1, a0 = 0 against rho = sqrt(rho0^2 - 2 phi).
double l1_error(double step) {
  const auto tr = integrate_polar(PolarSystem::takens_inverted(1, {0.0}), 10.0, 40.0, step);
  double e = 0.0;
  for (const auto& p : tr.curve.polar_points()) {
    const double exact = std::sqrt(100.0 - 2.0 * p.phi);
    e = std::max(e, std::abs(p.r - exact) / exact);
  }
  return e;
}

// Radii where rho^-4 - 2 rho^-2 + a0 = 0.
std::vector<double> l2_cycles(double a0) {
  std::vector<double> out;
  if (a0 > 1.0) return out;
  for (double s : {1.0, -1.0}) {
    const double w = 1.0 + s * std::sqrt(1.0 - a0);
    if (w > 0.0) out.push_back(1.0 / std::sqrt(w));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }), out.end());
  return out;
}

}  // namespace

TEST_CASE("rho_dot of the four kinds") {
  CHECK(PolarSystem::hopf(1, 0.5).rho_dot(2.0) == doctest::Approx(-2.0 * (4.0 + 0.5)));
  CHECK(PolarSystem::hopf_inverted(1, 0.5).rho_dot(2.0) == doctest::Approx(2.0 * (0.25 + 0.5)));
  CHECK(PolarSystem::takens(2, {1.0, -2.0}).rho_dot(2.0) == doctest::Approx(2.0 * (16.0 - 8.0 + 1.0)));
  CHECK(PolarSystem::takens_inverted(2, {1.0, -2.0}).rho_dot(2.0) ==
        doctest::Approx(-2.0 * (1.0 / 16 - 2.0 / 4 + 1.0)));
  CHECK(PolarSystem::takens(1, {0.3}, -1).rho_dot(1.0) == doctest::Approx(-1.3));
}

TEST_CASE("property: inversion conjugates rho_dot") {
  const std::vector<PolarSystem> systems{PolarSystem::hopf(1, 0.2), PolarSystem::hopf_inverted(2, -0.1),
                                         PolarSystem::takens(2, {0.5, -2.0}),
                                         PolarSystem::takens_inverted(3, {0.1, 0.2, -1.0}, -1)};
  for (const auto& s : systems) {
    const auto inv = s.inverted();
    for (double rho : {0.3, 0.9, 1.7, 4.0}) {
      // rho = 1/r: d rho / d phi = -r' / r^2
      const double expect = -s.rho_dot(1.0 / rho) * rho * rho;
      CHECK(inv.rho_dot(rho) == doctest::Approx(expect).epsilon(1e-12));
      CHECK(inv.inverted().rho_dot(rho) == doctest::Approx(s.rho_dot(rho)).epsilon(1e-12));
    }
  }
  CHECK(PolarSystem::hopf(1, 0.3).inverted().kind() == PolarSystem::Kind::hopf_inverted);
  CHECK(PolarSystem::takens_inverted(2, {1.0, -2.0}).inverted().kind() == PolarSystem::Kind::takens);
}

TEST_CASE("leading exponent") {
  CHECK(PolarSystem::hopf(1, 0.0).leading_exponent() == 1);
  CHECK(PolarSystem::hopf(2, 0.0).leading_exponent() == 2);
  CHECK(PolarSystem::hopf(1, 0.1).leading_exponent() == 0);
  CHECK(PolarSystem::takens(1, {0.0}).leading_exponent() == 1);
  CHECK(PolarSystem::takens(2, {0.0, -2.0}).leading_exponent() == 1);
}

TEST_CASE("limit cycles of the l = 2 family with a1 = -2") {
  for (double a0 : {-0.5, 0.0, 0.5, 1.0, 1.5}) {
    const auto cycles = PolarSystem::takens_inverted(2, {a0, -2.0}).limit_cycles();
    const auto expect = l2_cycles(a0);
    REQUIRE(cycles.size() == expect.size());
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      CHECK(cycles[i].radius == doctest::Approx(expect[i]).epsilon(1e-8));
      CHECK(cycles[i].multiplicity == (a0 == 1.0 ? 2 : 1));
    }
  }
  const auto c = PolarSystem::takens_inverted(2, {1.0, -2.0}).limit_cycles();
  CHECK(c[0].stability == CycleStability::semi_stable);
  const auto two = PolarSystem::takens_inverted(2, {0.5, -2.0}).limit_cycles();
  CHECK(two[0].stability != two[1].stability);
}

TEST_CASE("l = 1 cycle at (-a0)^(-1/2)") {
  const auto s = PolarSystem::takens_inverted(1, {-1.0 / 25});
  const auto cycles = s.limit_cycles();
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].radius == doctest::Approx(5.0).epsilon(1e-10));
  // the cycle repels forward in phi, so follow the orbit backwards
  const auto tr = integrate_polar(s, 10.0, -2000.0, 0.05);
  CHECK(tr.reason == Termination::converged_to_cycle);
  CHECK(tr.curve.polar_points().back().r == doctest::Approx(5.0).epsilon(1e-8));
  CHECK(tr.curve.polar_points().back().phi < 0.0);
  const auto fwd = integrate_polar(s, 4.0, 2000.0, 0.05);
  CHECK(fwd.reason == Termination::rho_floor);
}

TEST_CASE("RK4 against the closed form sqrt(rho0^2 - 2 phi)") {
  CHECK(l1_error(0.05) < 1e-6);
  const auto tr = integrate_polar(PolarSystem::takens_inverted(1, {0.0}), 10.0, 40.0, 0.05);
  CHECK(tr.reason == Termination::phi_budget);
  CHECK(tr.curve.polar_points().back().phi == 40.0);
  CHECK(tr.solver == "rk4");
  for (const auto& p : tr.curve.polar_points()) CHECK(std::abs(p.r * p.r + 2.0 * p.phi - 100.0) < 1e-6);
}

TEST_CASE("property: RK4 convergence order") {
  double prev = l1_error(0.8);
  for (double h : {0.4, 0.2, 0.1}) {
    const double e = l1_error(h);
    CHECK(prev / e >= 8.0);
    CHECK(std::log2(prev / e) >= 3.8);
    prev = e;
  }
}

TEST_CASE("Hopf k = 1, a = 0 follows r0 / sqrt(1 + 2 r0^2 phi)") {
  const auto tr = integrate_polar(PolarSystem::hopf(1, 0.0), 0.5, 1e5, 0.5);
  double e = 0.0;
  for (const auto& p : tr.curve.polar_points())
    e = std::max(e, std::abs(p.r / (0.5 / std::sqrt(1 + 0.5 * p.phi)) - 1.0));
  CHECK(e < 1e-6);
  const auto fit = fit_focus_exponent(tr.curve, 0.1);
  CHECK(fit.exponent == doctest::Approx(0.5).epsilon(0.02));
  CHECK(fit.k_estimate == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("integrate_polar preconditions and non-finite rates") {
  const auto s = PolarSystem::hopf(1, 0.0);
  CHECK_THROWS_AS(integrate_polar(s, 0.0, 1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(integrate_polar(s, 1.0, 1.0, 0.0), std::invalid_argument);
  // r' = r^3 blows up at phi = 1/2: the ceiling stops it first
  const auto up = integrate_polar(PolarSystem::takens(1, {0.0}), 1.0, 10.0, 1e-3);
  CHECK(up.reason == Termination::rho_ceiling);
}

TEST_CASE("rigid rotation stays on the unit circle") {
  CartesianOptions o;
  o.revolutions = 10;
  const auto tr = integrate_cartesian(linear(0.0, -1.0, 1.0, 0.0), {1.0, 0.0}, 1e3, o);
  CHECK(tr.reason == Termination::phi_budget);
  const auto pp = tr.curve.to_polar();
  for (const auto& p : pp) CHECK(std::abs(p.r - 1.0) < 1e-8);
  // stops on the first accepted step past ten turns
  CHECK(pp.back().phi >= 20 * pi);
  CHECK(pp.back().phi <= 20 * pi + o.max_step * 1.001);
  CHECK(tr.solver == "dopri5");
}

TEST_CASE("damped oscillator spirals into the origin") {
  CartesianOptions o;
  o.revolutions = 50;
  const auto tr = integrate_cartesian(damped_oscillator(2, 1, 1.0), {2.0, 0.0}, 1e6, o);
  const auto pp = tr.curve.to_polar();
  // d(r^2)/dt = -2 x^2 y^2 for this field
  for (std::size_t i = 1; i < pp.size(); ++i) CHECK(pp[i].r <= pp[i - 1].r * (1 + 1e-12));
  CHECK(pp.back().r < 0.5);
}

TEST_CASE("inverted Lienard orbit tends to infinity") {
  CartesianOptions o;
  o.r_max = 5.0;
  o.revolutions = 1e5;
  const auto tr = integrate_cartesian(lienard_inverted({{3, -1.0}}), {1.0, 0.0}, 1e9, o);
  CHECK(tr.reason == Termination::rho_ceiling);
  CHECK(tr.curve.system() == CoordSystem::polar2);
}

TEST_CASE("property: phase-portrait conjugacy under inversion") {
  CartesianOptions o;
  o.rtol = 1e-11;
  o.atol = 1e-13;
  o.max_step = 0.002;
  const std::vector<std::pair<VectorField2D, Point2>> cases{
      {linear(-0.1, -1.0, 1.0, -0.1), {1.0, 0.0}}, {hopf(1, 0.2), {0.5, 0.3}}};
  for (const auto& [field, x0] : cases) {
    // P* is the push-forward of P, so both orbits run on the same clock
    const auto a = integrate_cartesian(field, x0, 20.0, o);
    const auto b = integrate_cartesian(invert_field(field), invert_point(x0), 20.0, o);
    const auto ia = invert_curve(a.curve).planar_points();
    const auto pb = b.curve.planar_points();
    CHECK(hausdorff_distance(ia, pb) < 1e-5);
  }
}

TEST_CASE("extract_arc windows") {
  const auto s = PolarSystem::takens_inverted(2, {1.0, -2.0});
  const auto tr = integrate_polar(s, 1.3, 2000.0, 0.05);
  const auto arc = extract_arc(tr, ArcWindow::annulus(1.0, 0.1));
  const auto pp = arc.polar_points();
  REQUIRE(pp.size() > 100);
  for (const auto& p : pp) CHECK(std::abs(p.r - 1.0) <= 0.1);
  // rho - 1 ~ 1 / (4 phi): comparable with rho = 1 + phi^-1
  const double x0 = pp.front().r - 1.0, x1 = pp.back().r - 1.0;
  const double c = x1 * (pp.back().phi - pp.front().phi + 1.0 / (4.0 * x0));
  CHECK(c == doctest::Approx(0.25).epsilon(0.05));

  const auto focus = integrate_polar(PolarSystem::hopf(1, 0.0), 0.5, 500.0, 0.1);
  CHECK(extract_arc(focus, ArcWindow::near_origin(0.6)).size() == focus.curve.size());
  CHECK_THROWS_AS(extract_arc(focus, ArcWindow::near_infinity(10.0)), PreconditionError);
  CHECK(ArcWindow::annulus(1.0, 0.1).contains(1.05));
  CHECK_FALSE(ArcWindow::near_origin(1.0).contains(1.5));
}

TEST_CASE("Hausdorff distance") {
  const std::vector<Point2> a{{0, 0}, {1, 0}}, b{{0, 0.5}, {1, 0.5}}, c{{0.5, 0}};
  CHECK(hausdorff_distance(a, b) == doctest::Approx(0.5));
  CHECK(hausdorff_distance(a, c) == doctest::Approx(0.5));
  CHECK(hausdorff_distance(a, a) == 0.0);
  CHECK_THROWS(hausdorff_distance(a, std::vector<Point2>{}));
}
