#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "spiraldim/errors.hpp"
#include "spiraldim/geometry.hpp"

using namespace spiraldim;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

Point2 random_point(std::mt19937_64& rng, double rmin, double rmax) {
  std::uniform_real_distribution<double> logr(std::log(rmin), std::log(rmax));
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  const double r = std::exp(logr(rng)), t = ang(rng);
  return {r * std::cos(t), r * std::sin(t)};
}

}  // namespace

TEST_CASE("invert_point examples") {
  const Point2 p = invert_point(Point2{2.0, 0.0});
  CHECK(p.x == doctest::Approx(0.5));
  CHECK(p.y == 0.0);

  const Point2 q{0.3, -1.7};
  const Point2 qq = invert_point(invert_point(q));
  CHECK(std::abs(qq.x - q.x) < 1e-12);
  CHECK(std::abs(qq.y - q.y) < 1e-12);

  const Point2 a{1.0, 0.0}, b{0.0, 2.0};
  CHECK(norm(invert_point(a) - invert_point(b)) == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-14));
  CHECK(norm(a - b) / (norm(a) * norm(b)) == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-14));

  const Point3 s = invert_point(Point3{0.0, 0.0, 4.0});
  CHECK(s.z == doctest::Approx(0.25));
}

TEST_CASE("inversion at the origin is a domain error") {
  CHECK_THROWS_AS(invert_point(Point2{}), DomainError);
  CHECK_THROWS_AS(invert_point(Point3{}), DomainError);
  const auto c = SampledCurve::cartesian({{0.0, 0.0}, {1.0, 0.0}});
  CHECK_THROWS_AS(invert_curve(c), DomainError);
}

TEST_CASE("property: involution and distance identity on random points") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Point2 p = random_point(rng, 0.01, 100.0);
    const Point2 pp = invert_point(invert_point(p));
    CHECK(rel(pp.x, p.x) < 1e-10);
    CHECK(rel(pp.y, p.y) < 1e-10);

    const Point2 a = random_point(rng, 1e-3, 1e3), b = random_point(rng, 1e-3, 1e3);
    const double lhs = norm(invert_point(a) - invert_point(b)) * norm(a) * norm(b);
    CHECK(rel(lhs, norm(a - b)) < 1e-10);
  }
}

TEST_CASE("invert_curve: polar spirals and the unit circle") {
  std::vector<PolarPoint> pts;
  for (double phi = 1.0; phi <= 100.0; phi += 0.5) pts.push_back({std::pow(phi, -0.25), phi});
  const auto inv = invert_curve(SampledCurve::polar(pts, false, "r=phi^-1/4"));
  REQUIRE(inv.system() == CoordSystem::polar2);
  const auto ip = inv.polar_points();
  REQUIRE(ip.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(ip[i].phi == pts[i].phi);  // angle grid preserved exactly
    CHECK(rel(ip[i].r, std::pow(pts[i].phi, 0.25)) < 1e-14);
  }

  std::vector<PolarPoint> circle;
  for (int i = 0; i < 64; ++i) circle.push_back({1.0, 2.0 * std::numbers::pi * i / 64});
  const auto ic = invert_curve(SampledCurve::polar(circle, true));
  CHECK(ic.closed());
  for (const auto& p : ic.polar_points()) CHECK(p.r == 1.0);

  std::vector<PolarPoint> ex;
  for (double phi = 0.0; phi <= 5.0; phi += 0.1) ex.push_back({std::exp(phi), phi});
  const auto ie = invert_curve(SampledCurve::polar(ex));
  for (const auto& p : ie.polar_points()) CHECK(rel(p.r, std::exp(-p.phi)) < 1e-14);
}

TEST_CASE("invert_curve on Cartesian curves preserves the unwrapped angle") {
  std::vector<Point2> xy;
  for (int i = 0; i < 200; ++i) {
    const double t = 0.05 * i, r = 1.0 + 0.1 * t;
    xy.push_back({r * std::cos(t), r * std::sin(t)});
  }
  const auto c = SampledCurve::cartesian(xy);
  const auto a = c.to_polar();
  const auto b = invert_curve(c).to_polar();
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i].phi - b[i].phi) < 1e-12);
}

TEST_CASE("SampledCurve validation") {
  CHECK_THROWS(SampledCurve::cartesian({{1.0, 0.0}}));
  CHECK_THROWS(SampledCurve::cartesian({{1.0, 0.0}, {1.0, 0.0}}));
  CHECK_THROWS(SampledCurve::polar({{1.0, 0.0}, {1.0, 1.0}, {1.0, 0.5}}));
  CHECK_THROWS(SampledCurve::cartesian({{1.0, 0.0}, {NAN, 0.0}}));
  const auto c = SampledCurve::polar({{1.0, 0.0}, {2.0, std::numbers::pi / 2}});
  CHECK_THROWS_AS(c.cartesian_points(), std::logic_error);
  const auto xy = c.planar_points();
  CHECK(xy[1].x == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(xy[1].y == doctest::Approx(2.0));
  CHECK(coord_system_from_string(to_string(CoordSystem::cartesian3)) == CoordSystem::cartesian3);
}

TEST_CASE("riemann_project examples") {
  const auto s1 = riemann_project(Point2{1.0, 0.0}, 0.5);
  CHECK(s1.horizontal_radius() == doctest::Approx(0.5));

  const auto s2 = riemann_project(Point2{2.0, 0.0}, 0.5);
  CHECK(s2.horizontal_radius() == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(s2.position().z == doctest::Approx(0.8).epsilon(1e-14));

  const auto far = riemann_project(Point2{1e9, 0.0}, 0.5);
  CHECK(far.position().z == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(far.horizontal_radius() < 1e-8);

  const auto origin = riemann_project(Point2{}, 0.5);
  CHECK(norm(origin.position()) == 0.0);

  // General radius: g(r) = 4R^2 r / (r^2 + 4R^2) in the plane picture.
  const double R = 2.0, r = 3.0;
  CHECK(riemann_project(Point2{0.0, r}, R).horizontal_radius() ==
        doctest::Approx(4 * R * R * r / (r * r + 4 * R * R)).epsilon(1e-14));
  const auto az = riemann_project(Point2{-1.0, 1.0}, 1.0).position();
  CHECK(std::atan2(az.y, az.x) == doctest::Approx(3 * std::numbers::pi / 4));
}

TEST_CASE("riemann_project_inverted and the horizontal map") {
  for (double r : {0.1, 1.0, 7.0}) {
    const auto s = riemann_project_inverted(Point2{r, 0.0}, 0.5);
    CHECK(s.horizontal_radius() == doctest::Approx(r / (r * r + 1.0)).epsilon(1e-14));
    CHECK(riemann_horizontal_map(r, 0.5) == doctest::Approx(r / (r * r + 1.0)).epsilon(1e-14));
  }
  CHECK(riemann_horizontal_map(2.0, 1.0) == doctest::Approx(8.0 / 17.0).epsilon(1e-14));
}

TEST_CASE("property: g-map secant slopes on the inversion window") {
  // Points of Phi(B_r0) have |p| >= 1/r0; in s = 1/|p| in [0, r0] the
  // horizontal radius is g(s) = s / (s^2 + 1) with g' in (g'(r0), 1).
  const double r0 = 0.8;
  const double gp_edge = (1 - r0 * r0) / std::pow(1 + r0 * r0, 2);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1e-4, r0);
  for (int i = 0; i < 500; ++i) {
    double s1 = u(rng), s2 = u(rng);
    if (std::abs(s1 - s2) < 1e-6) continue;
    const double g1 = riemann_horizontal_map(1.0 / s1, 0.5), g2 = riemann_horizontal_map(1.0 / s2, 0.5);
    const double slope = (g2 - g1) / (s2 - s1);
    CHECK(slope <= 1.0);
    CHECK(slope >= gp_edge - 1e-12);
  }
}

TEST_CASE("poincare_project examples") {
  const auto e = poincare_project(Point2{}, 1.0);
  CHECK(e.horizontal_radius() == doctest::Approx(1.0));
  CHECK(e.position().z == doctest::Approx(0.0));

  const auto h = poincare_project(Point2{1.0, 0.0}, 1.0);
  CHECK(h.horizontal_radius() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(h.position().z == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  const auto pole = poincare_project(Point2{1e9, 0.0}, 1.0);
  CHECK(pole.position().z == doctest::Approx(1.0).epsilon(1e-12));

  const Point2 d = disc_project(h);
  CHECK(d.x == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(d.y == doctest::Approx(0.0));
}

TEST_CASE("property: sphere constraint to 1e-12") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Point2 p = random_point(rng, 1e-3, 1e3);
    for (double R : {0.5, 1.0, 3.0}) {
      CHECK(riemann_project(p, R).constraint_residual() < 1e-12);
      CHECK(riemann_project_inverted(p, R).constraint_residual() < 1e-12);
      CHECK(poincare_project(p, R).constraint_residual() < 1e-12);
    }
  }
}

TEST_CASE("curve projections") {
  std::vector<PolarPoint> pts;
  for (double phi = 1.0; phi < 200.0; phi += 0.25) pts.push_back({std::pow(phi, 0.25), phi});
  const auto c = SampledCurve::polar(pts);
  const auto sphere = poincare_project_curve(c, 1.0);
  REQUIRE(sphere.system() == CoordSystem::cartesian3);
  const auto disc = disc_project_curve(sphere);
  REQUIRE(disc.size() == c.size());
  // horizontal radius R / sqrt(1 + R^2 f^2) with f = |p|
  const auto dp = disc.planar_points();
  for (std::size_t i = 0; i < dp.size(); ++i)
    CHECK(norm(dp[i]) == doctest::Approx(1.0 / std::sqrt(1.0 + pts[i].r * pts[i].r)).epsilon(1e-12));
  CHECK(riemann_project_curve(c, 0.5).size() == c.size());
}
