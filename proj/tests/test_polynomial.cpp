#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "spiraldim/polynomial.hpp"

using namespace spiraldim;

TEST_CASE("Poly2 arithmetic and evaluation") {
  const Poly2 x = Poly2::x(), y = Poly2::y();
  const Poly2 p = x * x - 2.0 * (x * y) + Poly2::constant(3.0);
  CHECK(p.degree() == 2);
  CHECK(p.coefficient(1, 1) == -2.0);
  CHECK(p.coefficient(5, 5) == 0.0);
  CHECK(p.eval(2.0, 1.0) == doctest::Approx(4.0 - 4.0 + 3.0));

  const Poly2 zero = p - p;
  CHECK(zero.is_zero());
  CHECK(zero.degree() == -1);
  CHECK(zero.terms().empty());

  Poly2 q = -p;
  q += p;
  CHECK(q.is_zero());
  CHECK((p * 0.0).is_zero());
}

TEST_CASE("norm2_pow matches a direct evaluation") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k <= 4; ++k) {
    const Poly2 n = Poly2::norm2_pow(k);
    CHECK(n.degree() == 2 * k);
    for (int i = 0; i < 20; ++i) {
      const double a = u(rng), b = u(rng);
      CHECK(n.eval(a, b) == doctest::Approx(std::pow(a * a + b * b, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("divide_by_norm2") {
  const Poly2 x = Poly2::x(), y = Poly2::y();
  const Poly2 f = x * x * y - 3.0 * y + x;
  Poly2 q;
  REQUIRE((f * Poly2::norm2_pow(1)).divide_by_norm2(q));
  CHECK(q.max_coefficient_gap(f) < 1e-12);
  CHECK_FALSE((x * x).divide_by_norm2(q));
  CHECK(Poly2().divide_by_norm2(q));
  CHECK(q.is_zero());
}

TEST_CASE("Poly2 to_string") {
  CHECK(Poly2().to_string() == "0");
  CHECK(Poly2::monomial(-2.0, 1, 3).to_string() == "-2 x^1 y^3");
}

TEST_CASE("Poly1 evaluation, derivative and Taylor coefficients") {
  const Poly1 p{{1.0, -3.0, 0.0, 2.0}};  // 1 - 3t + 2t^3
  CHECK(p.degree() == 3);
  CHECK(p.eval(2.0) == doctest::Approx(1.0 - 6.0 + 16.0));
  const Poly1 d = p.derivative();
  CHECK(d.eval(1.0) == doctest::Approx(-3.0 + 6.0));
  CHECK(p.taylor_coefficient(1.0, 2) == doctest::Approx(6.0));  // p''(1)/2 = 12/2
  CHECK(p.taylor_coefficient(1.0, 3) == doctest::Approx(2.0));
  CHECK(Poly1{{0.0, 0.0}}.degree() == -1);
}

TEST_CASE("real_roots: simple, double and triple roots") {
  // (t - 1)(t - 3) = t^2 - 4t + 3
  auto r = real_roots(Poly1{{3.0, -4.0, 1.0}}, 0.0, 10.0);
  REQUIRE(r.size() == 2);
  CHECK(r[0].x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r[1].x == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r[0].multiplicity == 1);

  // (t - 1)^2 = t^2 - 2t + 1: no sign change, found as a critical point
  r = real_roots(Poly1{{1.0, -2.0, 1.0}}, 0.0, 10.0);
  REQUIRE(r.size() == 1);
  CHECK(r[0].x == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r[0].multiplicity == 2);

  // (t - 2)^3
  r = real_roots(Poly1{{-8.0, 12.0, -6.0, 1.0}}, 0.0, 10.0);
  REQUIRE(r.size() == 1);
  CHECK(r[0].x == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(r[0].multiplicity == 3);

  // t^2 + 1 has no real roots
  CHECK(real_roots(Poly1{{1.0, 0.0, 1.0}}, -5.0, 5.0).empty());
  // the interval restricts the search
  CHECK(real_roots(Poly1{{3.0, -4.0, 1.0}}, 2.0, 10.0).size() == 1);
}
