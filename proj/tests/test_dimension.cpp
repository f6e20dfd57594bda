#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "spiraldim/analytic.hpp"
#include "spiraldim/dimension.hpp"
#include "spiraldim/errors.hpp"

using namespace spiraldim;
using std::numbers::pi;

namespace {

const std::vector<double> kEps = eps_schedule(1e-2, 1e-4);

// Angle past which turns of r = phi^-alpha are closer than eps_min / 4.
double phi_for_spacing(double alpha, double eps_min) {
  return 1.3 * std::pow(2 * pi * alpha / (0.25 * eps_min), 1.0 / (1.0 + alpha));
}

SampledCurve focus(double alpha, double eps_min = 1e-4, double phi_start = 1.0) {
  SamplingOptions so;
  so.max_gap = 0.05;
  so.max_sagitta = eps_min / 50;
  return generate(SpiralSpec::power_focus(alpha, Orientation::inward, phi_start),
                  phi_for_spacing(alpha, eps_min), so);
}

SampledCurve map_points(const SampledCurve& c, double angle, double scale, Point2 shift = {}) {
  std::vector<Point2> out;
  const double cs = std::cos(angle), sn = std::sin(angle);
  for (const auto& p : c.planar_points())
    out.push_back({scale * (cs * p.x - sn * p.y) + shift.x, scale * (sn * p.x + cs * p.y) + shift.y});
  return SampledCurve::cartesian(std::move(out), false, c.source());
}

}  // namespace

TEST_CASE("eps schedules") {
  const auto e = eps_schedule(1e-2, 1e-4);
  CHECK(e.front() == 1e-2);
  CHECK(e.back() == doctest::Approx(1e-4));
  CHECK(e.size() == 15);
  for (std::size_t i = 1; i + 1 < e.size(); ++i) CHECK(e[i] / e[i - 1] == doctest::Approx(std::sqrt(0.5)));
  const auto f = eps_schedule(1.0, 0.3);
  CHECK(f.back() == 0.3);
  CHECK(eps_schedule_count(1.0, 12).size() == 12);
  const auto d = default_eps_schedule(5.0);
  CHECK(d.size() == 12);
  CHECK(d.front() == doctest::Approx(0.5));
  CHECK_THROWS_AS(eps_schedule(1e-4, 1e-2), std::invalid_argument);
}

TEST_CASE("fit_dimension on exact power-law profiles") {
  SausageProfile p;
  for (double e : kEps) {
    p.eps.push_back(e);
    p.area.push_back(2.5 * std::pow(e, 0.4));
  }
  const auto d = fit_dimension(p, 2);
  CHECK(d.dimension == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(d.r_squared == doctest::Approx(1.0));
  CHECK(*d.content_at_d == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(d.num_scales == static_cast<int>(kEps.size()));
  CHECK(d.eps_min < d.eps_max);

  SausageProfile zero = p;
  zero.area[3] = 0.0;
  CHECK_THROWS_AS(fit_dimension(zero, 2), NumericalError);
  SausageProfile few;
  few.eps = {1.0, 0.5, 0.25};
  few.area = {1.0, 0.5, 0.25};
  CHECK_THROWS_AS(fit_dimension(few, 2), PreconditionError);
}

TEST_CASE("unit segment has dimension 1") {
  PlanarSet s;
  s.add_polyline({{0.0, 0.0}, {1.0, 0.0}});
  const auto d = dim_bounded(s, kEps);
  CHECK(d.dimension == doctest::Approx(1.0).epsilon(0.02));
  CHECK(d.r_squared > 0.98);
  CHECK(d.profile.size() == kEps.size());
}

TEST_CASE("box counting agrees on a segment") {
  PlanarSet s;
  s.add_polyline({{0.0, 0.0}, {1.0, 0.3}});
  CHECK(dim_box_count(s, kEps).dimension == doctest::Approx(1.0).epsilon(0.03));
  CHECK(dim_box_count(s, kEps).method == DimensionMethod::box_count);
}

TEST_CASE("bounded spiral r = phi^-1/4 has dimension 8/5") {
  const auto d = dim_bounded(focus(0.25), kEps);
  CHECK(std::abs(d.dimension - 1.6) < 0.05);
  CHECK(d.r_squared > 0.98);
}

TEST_CASE("unbounded spiral r = phi^1/4 has dimension 8/5") {
  SamplingOptions so;
  so.max_gap = 1e3;
  so.max_dphi = 0.008;
  const double phi_max = phi_for_spacing(0.25, 1e-4);
  const auto c = generate(SpiralSpec::power_focus(0.25, Orientation::outward), phi_max, so);
  const auto d = dim_unbounded(c, kEps);
  CHECK(std::abs(d.dimension - 1.6) < 0.05);
}

TEST_CASE("the point set {1/k} has dimension 1/2") {
  std::vector<Point2> pts;
  for (int k = 1; k <= 20000; ++k) pts.push_back({1.0 / k, 0.0});
  const auto set = condense_sequence(pts, {0.0, 0.0}, 0.5 * kEps.back());
  CHECK(std::abs(dim_bounded(set, kEps).dimension - 0.5) < 0.05);
}

TEST_CASE("ray to infinity has dimension 1") {
  std::vector<Point2> ray;
  for (double t = 1.0; t < 1e7; t *= 1.01) ray.push_back({t, 0.0});
  const auto d = dim_unbounded(SampledCurve::cartesian(ray), kEps);
  CHECK(std::abs(d.dimension - 1.0) < 0.03);
}

TEST_CASE("the point set {k} has dimension 1/2") {
  std::vector<Point2> pts;
  for (int k = 1; k <= 100000; ++k) pts.push_back({static_cast<double>(k), 0.0});
  CHECK(std::abs(dim_unbounded_points(pts, kEps).dimension - 0.5) < 0.05);
}

TEST_CASE("touching the origin is a domain error") {
  const auto c = SampledCurve::cartesian({{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}});
  CHECK_THROWS_AS(dim_unbounded(c, kEps), DomainError);
}

TEST_CASE("dim_general of a bounded and an unbounded spiral") {
  SamplingOptions so;
  so.max_gap = 1e3;
  so.max_dphi = 0.008;
  const auto outer = generate(SpiralSpec::power_focus(0.5, Orientation::outward), phi_for_spacing(0.5, 1e-4), so);
  const auto inner = focus(0.25);
  const std::vector<SampledCurve> both{inner, outer};
  const auto g = dim_general(both, kEps);
  CHECK(std::abs(g.combined.dimension - std::max(1.0, 2.0 / 1.25)) < 0.05);
  REQUIRE(g.inner);
  REQUIRE(g.outer);
  CHECK(g.combined.dimension == std::max(g.inner->dimension, g.outer->dimension));

  const std::vector<SampledCurve> only_outer{outer};
  const auto u = dim_general(only_outer, kEps);
  CHECK_FALSE(u.inner);
  CHECK(u.combined.dimension == doctest::Approx(dim_unbounded(outer, kEps).dimension).epsilon(1e-9));
}

TEST_CASE("Minkowski content of a circle at d = 1") {
  std::vector<Point2> pts;
  for (int i = 0; i < 20000; ++i) pts.push_back({std::cos(2 * pi * i / 20000), std::sin(2 * pi * i / 20000)});
  EstimatorOptions o;
  o.accumulation = Accumulation::none();
  const auto m = minkowski_content(SampledCurve::cartesian(pts, true), 1.0, kEps, o);
  CHECK(m.value == doctest::Approx(4 * pi).epsilon(0.05));
  CHECK(m.spread >= 1.0);
  CHECK(m.ratios.size() == kEps.size());
}

TEST_CASE("Minkowski content of r = phi^-1/2 and its Riemann rescaling") {
  const double d = 4.0 / 3.0;
  const double formula = std::pow(pi / 2, -2.0 / 3) * pi * 3;  // m = 1, alpha = 1/2
  const auto c = focus(0.5);
  const auto m = minkowski_content(c, d, kEps);
  CHECK(m.value == doctest::Approx(formula).epsilon(0.10));

  // rho = g(r) with g(r) = 4R^2 r / (4R^2 r^2 + 1), R = 1
  SamplingOptions so;
  so.max_gap = 0.05;
  so.max_sagitta = 1e-4 / 200;
  std::vector<PolarPoint> dense;
  for (const auto& p : generate(SpiralSpec::power_focus(0.5), phi_for_spacing(0.5, 1e-4) * 2, so).polar_points())
    dense.push_back({riemann_horizontal_map(p.r, 1.0), p.phi});
  const auto mr = minkowski_content(SampledCurve::polar(dense), d, kEps);
  CHECK(mr.value / m.value == doctest::Approx(std::pow(4.0, d)).epsilon(0.10));
}

TEST_CASE("property: excision of the first turn") {
  const auto full = focus(0.5);
  const auto cut = focus(0.5, 1e-4, 1.0 + 2 * pi);
  const double d = 4.0 / 3.0;
  const auto a = minkowski_content(full, d, kEps);
  const auto b = minkowski_content(cut, d, kEps);
  const double spread = std::max(a.spread, b.spread) - 1.0;
  CHECK(std::abs(a.value - b.value) / a.value < spread);
}

TEST_CASE("property: monotonicity under inclusion") {
  const auto a = focus(1.0 / 3);
  const double da = dim_bounded(a, kEps).dimension;
  PlanarSet cb = condense_spiral(a, Accumulation::at_point(), 0.5 * kEps.back());
  cb.add_polyline({{1.5, -1.0}, {1.5, 1.0}});
  const double db = dim_bounded(cb, kEps).dimension;
  CHECK(da <= db + 0.05);
}

TEST_CASE("property: finite stability") {
  const auto spiral = focus(1.0 / 3);
  PlanarSet seg;
  seg.add_polyline({{3.0, 0.0}, {4.0, 0.5}});
  const double d_spiral = dim_bounded(spiral, kEps).dimension;
  const double d_seg = dim_bounded(seg, kEps).dimension;
  PlanarSet u = condense_spiral(spiral, Accumulation::at_point(), 0.5 * kEps.back());
  u.append(seg);
  const double d_union = dim_bounded(u, kEps).dimension;
  CHECK(std::abs(d_union - std::max(d_spiral, d_seg)) < 0.05);
}

TEST_CASE("property: origin-shift invariance of the unbounded estimate") {
  SamplingOptions so;
  so.max_gap = 1e3;
  so.max_dphi = 0.008;
  const auto c = generate(SpiralSpec::power_focus(1.0 / 3, Orientation::outward, 2.0),
                          phi_for_spacing(1.0 / 3, 1e-4), so);
  const double d0 = dim_unbounded(c, kEps).dimension;
  const double dw = dim_unbounded_about(c, {0.05, -0.03}, kEps).dimension;
  CHECK(std::abs(d0 - 1.5) < 0.05);
  CHECK(std::abs(d0 - dw) < 0.05);
}

TEST_CASE("property: rotation plus scaling by 2 leaves the estimate unchanged") {
  const auto c = focus(1.0 / 3, 0.5e-4);
  const double d0 = dim_bounded(c, kEps).dimension;
  const double d1 = dim_bounded(map_points(c, 0.7, 2.0), kEps).dimension;
  CHECK(std::abs(d0 - d1) < 0.05);
}
