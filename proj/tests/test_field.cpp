#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "spiraldim/errors.hpp"
#include "spiraldim/field.hpp"

using namespace spiraldim;

namespace {

const auto kSamples = random_annulus_points(100, 0.1, 10.0, 42);

// Inversion written out from scratch: P~(u) = P(u/|u|^2),
// P*(u) = |u|^2 P~(u) - 2 u (u . P~(u)).
Point2 star_by_hand(const VectorField2D& f, const Point2& u) {
  const double n2 = u.x * u.x + u.y * u.y;
  const Point2 pt = f({u.x / n2, u.y / n2});
  const double dot = u.x * pt.x + u.y * pt.y;
  return {n2 * pt.x - 2 * u.x * dot, n2 * pt.y - 2 * u.y * dot};
}

double rel_gap(const Point2& a, const Point2& b) {
  const double s = std::max(norm(a), norm(b));
  return s > 0 ? norm(a - b) / s : 0.0;
}

VectorField2D quadratic() {
  const Poly2 x = Poly2::x(), y = Poly2::y();
  return VectorField2D::polynomial(-1.0 * y + 0.5 * (x * x) - 0.3 * (x * y), x + 0.2 * (y * y), "quadratic");
}

}  // namespace

TEST_CASE("invert_field agrees with the definition") {
  for (const auto& f : {quadratic(), lienard({{2, 0.5}, {3, -1.0}}), hopf(2, 0.1), damped_oscillator(2, 1, 1.0)}) {
    const auto fs = invert_field(f);
    for (const auto& u : kSamples) CHECK(rel_gap(fs(u), star_by_hand(f, u)) < 1e-12);
  }
}

TEST_CASE("antisymmetric linear fields are fixed, scalings flip sign") {
  const auto r = linear(0.0, -2.0, 2.0, 0.0);
  CHECK(max_relative_gap(invert_field(r), r, kSamples) < 1e-12);
  const auto c = linear(0.7, 0.0, 0.0, 0.7);
  CHECK(max_relative_gap(invert_field(c), linear(-0.7, 0.0, 0.0, -0.7), kSamples) < 1e-12);
}

TEST_CASE("rotation with radial damping inverts to the closed form") {
  auto g = [](double t) { return t * t; };
  const auto p = rotation_radial(1.5, 0.4, g);
  const auto closed = rotation_radial_inverted(1.5, 0.4, g);
  CHECK(max_relative_gap(invert_field(p), closed, kSamples) < 1e-9);
  // R u + gamma u |u|^-2 written directly
  for (const auto& u : kSamples) {
    const double n2 = u.x * u.x + u.y * u.y;
    const Point2 expect{-1.5 * u.y + 0.4 * u.x / n2, 1.5 * u.x + 0.4 * u.y / n2};
    CHECK(rel_gap(closed(u), expect) < 1e-12);
  }
}

TEST_CASE("property: involution") {
  CHECK(involution_deviation(quadratic(), kSamples) < 1e-9);
  CHECK(involution_deviation(linear(0.0, -1.0, 1.0, 0.0), kSamples) < 1e-14);
  CHECK(involution_deviation(lienard({{3, -1.0}, {5, 0.2}}), kSamples) < 1e-9);
  CHECK(involution_deviation(damped_oscillator(2, 1, 1.0), kSamples) < 1e-9);
}

TEST_CASE("property: linearity of the inversion operator") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double lam = u(rng), mu = u(rng);
    const auto f = quadratic();
    const auto g = lienard({{2, u(rng)}, {3, u(rng)}});
    const auto comb = VectorField2D::closed_form(
        [=](const Point2& x) { return lam * f(x) + mu * g(x); }, "combination");
    const auto fs = invert_field(f), gs = invert_field(g), cs = invert_field(comb);
    const auto rhs = VectorField2D::closed_form(
        [=](const Point2& x) { return lam * fs(x) + mu * gs(x); }, "combined stars", true);
    CHECK(max_relative_gap(cs, rhs, kSamples) < 1e-10);
  }
}

TEST_CASE("property: Rx . x = 0 exactly when R is antisymmetric") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    const bool anti = trial % 2 == 0;
    const double r11 = anti ? 0.0 : a, r12 = b, r21 = anti ? -b : c, r22 = anti ? 0.0 : d;
    const auto f = linear(r11, r12, r21, r22);
    double worst = 0.0;
    for (const auto& x : kSamples) {
      const Point2 v = f(x);
      worst = std::max(worst, std::abs(v.x * x.x + v.y * x.y) / (norm(v) * norm(x)));
    }
    if (anti)
      CHECK(worst < 1e-14);
    else
      CHECK(worst > 1e-6);
  }
}

TEST_CASE("Hopf inversion and its polynomial form") {
  for (int k : {1, 2})
    for (double a : {-0.3, 0.0, 0.4}) {
      CHECK(max_relative_gap(invert_field(hopf(k, a)), hopf_inverted(k, a), kSamples) < 1e-9);
      const auto pc = parallel_check(invert_field(hopf(k, a)), hopf_inverted_polynomial(k, a), kSamples);
      CHECK(pc.max_sine < 1e-9);
      CHECK(pc.min_cosine > 0.0);
    }
  const auto hp = polynomialize(invert_field(hopf(1, 0.3)), 1);
  const auto ref = hopf_inverted_polynomial(1, 0.3);
  REQUIRE(hp.kind() == VectorField2D::Kind::polynomial);
  CHECK(hp.p().max_coefficient_gap(ref.p()) < 1e-12);
  CHECK(hp.q().max_coefficient_gap(ref.q()) < 1e-12);
}

TEST_CASE("damped oscillator inversion and its polynomial form") {
  const auto f = damped_oscillator(2, 1, 1.0);
  CHECK(max_relative_gap(invert_field(f), damped_oscillator_inverted(2, 1, 1.0), kSamples) < 1e-9);
  const auto dp = polynomialize(invert_field(f), 3);
  const auto ref = damped_oscillator_inverted_polynomial(2, 1, 1.0);
  REQUIRE(dp.kind() == VectorField2D::Kind::polynomial);
  CHECK(dp.p().max_coefficient_gap(ref.p()) < 1e-12);
  CHECK(dp.q().max_coefficient_gap(ref.q()) < 1e-12);
  CHECK(max_relative_gap(dp, ref, kSamples) < 1e-12);
}

TEST_CASE("polynomialize multiplies by |u|^2k") {
  const auto f = invert_field(quadratic());
  const auto g = polynomialize(f, 2);
  for (const auto& u : kSamples) {
    const double m = std::pow(u.x * u.x + u.y * u.y, 2);
    CHECK(rel_gap(g(u), m * f(u)) < 1e-12);
  }
  const auto [p, q] = inverted_numerator(quadratic().p(), quadratic().q());
  const auto num = VectorField2D::polynomial(p, q, "numerator");
  const auto pc = parallel_check(num, f, kSamples);
  CHECK(pc.max_sine < 1e-9);
  CHECK(pc.min_cosine > 0.0);
}

TEST_CASE("weak_focus_invert") {
  const auto rot = weak_focus_invert([](double, double) { return 0.0; }, [](double, double) { return 0.0; });
  for (const auto& u : kSamples) CHECK(rel_gap(rot(u), {-u.y, u.x}) < 1e-15);

  const std::map<int, double> coeffs{{2, 0.5}, {3, -1.0}};
  const auto lp = weak_focus_invert(
      [&](double x, double) { return 0.5 * x * x - x * x * x; }, [](double, double) { return 0.0; });
  CHECK(max_relative_gap(lp, lienard_inverted(coeffs), kSamples) < 1e-9);
  CHECK(max_relative_gap(invert_field(lienard(coeffs)), lienard_inverted(coeffs), kSamples) < 1e-9);

  // cross-path: the formula route and the general operator agree
  const Poly2 x = Poly2::x(), y = Poly2::y();
  const Poly2 p = 0.3 * (x * x) - 0.2 * (x * y * y), q = 0.7 * (y * y * y) + 0.1 * (x * y);
  const auto direct = invert_field(VectorField2D::polynomial(-1.0 * y + p, x + q, "weak focus"));
  CHECK(max_relative_gap(weak_focus_invert(p, q), direct, kSamples) < 1e-9);
}

TEST_CASE("inverted fields are singular at the origin") {
  CHECK_THROWS_AS(invert_field(quadratic())(Point2{}), DomainError);
  CHECK_THROWS_AS(hopf_inverted(1, 0.0)(Point2{}), DomainError);
  CHECK_NOTHROW(hopf_inverted_polynomial(1, 0.0)(Point2{}));
  const auto f = invert_field(linear(0.0, -1.0, 1.0, 0.0));
  REQUIRE(f.inverted_from() != nullptr);
  CHECK(f.inverted_from()->description() == "linear");
}

TEST_CASE("random annulus points") {
  const auto pts = random_annulus_points(500, 0.5, 2.0, 3);
  CHECK(pts.size() == 500);
  for (const auto& p : pts) {
    CHECK(norm(p) >= 0.5);
    CHECK(norm(p) <= 2.0);
  }
  const auto again = random_annulus_points(500, 0.5, 2.0, 3);
  CHECK(again[17].x == pts[17].x);
}
