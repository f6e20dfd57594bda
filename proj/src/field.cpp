#include "spiraldim/field.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

#include "spiraldim/errors.hpp"

namespace spiraldim {

VectorField2D VectorField2D::polynomial(Poly2 p, Poly2 q, std::string description) {
  VectorField2D f;
  f.kind_ = Kind::polynomial;
  f.p_ = std::move(p);
  f.q_ = std::move(q);
  f.description_ = std::move(description);
  return f;
}

VectorField2D VectorField2D::closed_form(Evaluator eval, std::string description,
                                         bool singular_at_origin) {
  if (!eval) throw std::invalid_argument("closed-form field needs an evaluator");
  VectorField2D f;
  f.kind_ = Kind::closed_form;
  f.eval_ = std::move(eval);
  f.description_ = std::move(description);
  f.singular_ = singular_at_origin;
  return f;
}

Point2 VectorField2D::operator()(const Point2& x) const {
  if (singular_ && x.x == 0.0 && x.y == 0.0)
    throw DomainError("field '" + description_ + "' is undefined at the origin");
  if (kind_ == Kind::polynomial) return {p_.eval(x.x, x.y), q_.eval(x.x, x.y)};
  return eval_(x);
}

VectorField2D invert_field(const VectorField2D& field) {
  auto source = std::make_shared<const VectorField2D>(field);
  VectorField2D out = VectorField2D::closed_form(
      [source](const Point2& u) {
        const double s = norm2(u);
        const Point2 pt = (*source)(u * (1.0 / s));
        return s * pt - 2.0 * dot(u, pt) * u;
      },
      field.description() + " (inverted)", true);
  out.source_ = std::move(source);
  return out;
}

std::pair<Poly2, Poly2> inverted_numerator(const Poly2& p, const Poly2& q) {
  const int deg = std::max(p.degree(), q.degree());
  if (deg < 0) return {};
  // A = |u|^(2 deg) P~(u); then |u|^(2 deg) P* = |u|^2 A - 2u (u . A).
  auto lift = [deg](const Poly2& c) {
    Poly2 a;
    for (const auto& [e, coef] : c.terms())
      a += Poly2::monomial(coef, e.first, e.second) * Poly2::norm2_pow(deg - e.first - e.second);
    return a;
  };
  const Poly2 ax = lift(p);
  const Poly2 ay = lift(q);
  const Poly2 s = Poly2::norm2_pow(1);
  const Poly2 u = Poly2::x();
  const Poly2 v = Poly2::y();
  const Poly2 udota = u * ax + v * ay;
  return {s * ax - 2.0 * (u * udota), s * ay - 2.0 * (v * udota)};
}

VectorField2D polynomialize(const VectorField2D& field, int k) {
  if (k < 0) throw std::invalid_argument("polynomialize needs k >= 0");
  const std::string desc = field.description() + " x |u|^" + std::to_string(2 * k);
  if (field.kind() == VectorField2D::Kind::polynomial) {
    const Poly2 s = Poly2::norm2_pow(k);
    return VectorField2D::polynomial(field.p() * s, field.q() * s, desc);
  }
  const VectorField2D* src = field.inverted_from();
  if (src != nullptr && src->kind() == VectorField2D::Kind::polynomial) {
    const int deg = std::max(src->p().degree(), src->q().degree());
    auto [np, nq] = inverted_numerator(src->p(), src->q());
    bool exact = true;
    if (k >= deg) {
      const Poly2 s = Poly2::norm2_pow(k - deg);
      np = np * s;
      nq = nq * s;
    } else {
      for (int n = 0; n < deg - k && exact; ++n) {
        Poly2 qp, qq;
        exact = np.divide_by_norm2(qp) && nq.divide_by_norm2(qq);
        np = std::move(qp);
        nq = std::move(qq);
      }
    }
    if (exact) return VectorField2D::polynomial(std::move(np), std::move(nq), desc);
  }
  return VectorField2D::closed_form(
      [field, k](const Point2& u) { return std::pow(norm2(u), k) * field(u); }, desc,
      field.singular_at_origin());
}

VectorField2D weak_focus_invert(Scalar2 p, Scalar2 q, std::string description) {
  return VectorField2D::closed_form(
      [p = std::move(p), q = std::move(q)](const Point2& w) {
        const double u = w.x, v = w.y;
        const double s = u * u + v * v;
        const double pt = p(u / s, v / s);
        const double qt = q(u / s, v / s);
        return Point2{-v + (v * v - u * u) * pt - 2.0 * u * v * qt,
                      u + (u * u - v * v) * qt - 2.0 * u * v * pt};
      },
      std::move(description), true);
}

VectorField2D weak_focus_invert(const Poly2& p, const Poly2& q) {
  return weak_focus_invert([p](double x, double y) { return p.eval(x, y); },
                           [q](double x, double y) { return q.eval(x, y); },
                           "weak focus inverted: p = " + p.to_string() + ", q = " + q.to_string());
}

VectorField2D rotation_radial(double omega, double gamma, std::function<double(double)> g) {
  return VectorField2D::closed_form(
      [=](const Point2& x) {
        const double m = gamma * g(norm(x));
        return Point2{-omega * x.y - m * x.x, omega * x.x - m * x.y};
      },
      "R x - gamma x g(|x|)", true);
}

VectorField2D rotation_radial_inverted(double omega, double gamma, std::function<double(double)> g) {
  return VectorField2D::closed_form(
      [=](const Point2& u) {
        const double m = gamma * g(1.0 / norm(u));
        return Point2{-omega * u.y + m * u.x, omega * u.x + m * u.y};
      },
      "R u + gamma u g(1/|u|)", true);
}

VectorField2D linear(double a11, double a12, double a21, double a22) {
  return VectorField2D::polynomial(Poly2::monomial(a11, 1, 0) + Poly2::monomial(a12, 0, 1),
                                   Poly2::monomial(a21, 1, 0) + Poly2::monomial(a22, 0, 1),
                                   "linear");
}

VectorField2D hopf(int k, double a) {
  if (k < 1) throw std::invalid_argument("hopf needs k >= 1");
  const Poly2 g = Poly2::norm2_pow(k) + Poly2::constant(a);
  return VectorField2D::polynomial(-Poly2::y() - Poly2::x() * g, Poly2::x() - Poly2::y() * g,
                                   "hopf k=" + std::to_string(k));
}

VectorField2D hopf_inverted(int k, double a) {
  if (k < 1) throw std::invalid_argument("hopf needs k >= 1");
  return VectorField2D::closed_form(
      [k, a](const Point2& u) {
        const double g = std::pow(norm2(u), -k) + a;
        return Point2{-u.y + u.x * g, u.x + u.y * g};
      },
      "hopf inverted k=" + std::to_string(k), true);
}

VectorField2D hopf_inverted_polynomial(int k, double a) {
  if (k < 1) throw std::invalid_argument("hopf needs k >= 1");
  const Poly2 s = Poly2::norm2_pow(k);
  const Poly2 g = Poly2::constant(1.0) + a * s;
  return VectorField2D::polynomial(-Poly2::y() * s + Poly2::x() * g, Poly2::x() * s + Poly2::y() * g,
                                   "hopf inverted polynomial k=" + std::to_string(k));
}

namespace {

Poly2 lienard_p(const std::map<int, double>& coefficients) {
  Poly2 p;
  for (const auto& [i, a] : coefficients) {
    if (i < 2) throw std::invalid_argument("Lienard coefficients start at index 2");
    p.add_term(a, i, 0);
  }
  return p;
}

}  // namespace

VectorField2D lienard(const std::map<int, double>& coefficients) {
  return VectorField2D::polynomial(-Poly2::y() + lienard_p(coefficients), Poly2::x(), "lienard");
}

VectorField2D lienard_inverted(const std::map<int, double>& coefficients) {
  lienard_p(coefficients);  // validates indices
  return VectorField2D::closed_form(
      [coefficients](const Point2& w) {
        const double u = w.x, v = w.y;
        const double s = u * u + v * v;
        double pt = 0.0;
        for (const auto& [i, a] : coefficients) pt += a * std::pow(u, i) / std::pow(s, i);
        return Point2{-v + (v * v - u * u) * pt, u - 2.0 * u * v * pt};
      },
      "lienard inverted", true);
}

namespace {

void check_oscillator(int alpha, int beta) {
  if (alpha < 2 || alpha % 2 != 0) throw std::invalid_argument("alpha must be a positive even integer");
  if (beta < 1 || beta % 2 != 1) throw std::invalid_argument("beta must be a positive odd integer");
}

}  // namespace

VectorField2D damped_oscillator(int alpha, int beta, double c) {
  check_oscillator(alpha, beta);
  return VectorField2D::polynomial(-Poly2::y() - Poly2::monomial(c, beta, alpha), Poly2::x(),
                                   "damped oscillator");
}

VectorField2D damped_oscillator_inverted(int alpha, int beta, double c) {
  check_oscillator(alpha, beta);
  return VectorField2D::closed_form(
      [=](const Point2& w) {
        const double u = w.x, v = w.y;
        const double d = std::pow(u * u + v * v, alpha + beta);
        return Point2{-v + c * std::pow(u, beta) * std::pow(v, alpha) * (u * u - v * v) / d,
                      u + 2.0 * c * std::pow(u, beta + 1) * std::pow(v, alpha + 1) / d};
      },
      "damped oscillator inverted", true);
}

VectorField2D damped_oscillator_inverted_polynomial(int alpha, int beta, double c) {
  check_oscillator(alpha, beta);
  const Poly2 s = Poly2::norm2_pow(alpha + beta);
  const Poly2 m = Poly2::monomial(c, beta, alpha);
  const Poly2 p = -Poly2::y() * s + m * (Poly2::monomial(1.0, 2, 0) - Poly2::monomial(1.0, 0, 2));
  const Poly2 q = Poly2::x() * s + Poly2::monomial(2.0 * c, beta + 1, alpha + 1);
  return VectorField2D::polynomial(p, q, "damped oscillator inverted polynomial");
}

std::vector<Point2> random_annulus_points(std::size_t n, double r_min, double r_max,
                                          std::uint64_t seed) {
  if (!(r_min > 0.0) || !(r_max >= r_min)) throw std::invalid_argument("need 0 < r_min <= r_max");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(r_min, r_max);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Point2> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(to_cartesian({radius(rng), angle(rng)}));
  return out;
}

double max_relative_gap(const VectorField2D& f, const VectorField2D& g,
                        std::span<const Point2> samples) {
  double worst = 0.0;
  for (const auto& x : samples) {
    const Point2 a = f(x);
    const Point2 b = g(x);
    const double scale = std::max(norm(a), norm(b));
    if (scale == 0.0) continue;
    worst = std::max(worst, norm(a - b) / scale);
  }
  return worst;
}

double involution_deviation(const VectorField2D& field, std::span<const Point2> samples) {
  return max_relative_gap(invert_field(invert_field(field)), field, samples);
}

ParallelCheck parallel_check(const VectorField2D& f, const VectorField2D& g,
                             std::span<const Point2> samples) {
  ParallelCheck out;
  for (const auto& x : samples) {
    const Point2 a = f(x);
    const Point2 b = g(x);
    const double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0) continue;
    out.max_sine = std::max(out.max_sine, std::abs(a.x * b.y - a.y * b.x) / (na * nb));
    out.min_cosine = std::min(out.min_cosine, dot(a, b) / (na * nb));
  }
  return out;
}

}  // namespace spiraldim
