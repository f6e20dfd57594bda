#include "spiraldim/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spiraldim/errors.hpp"
#include "spiraldim/regression.hpp"

namespace spiraldim {

std::string to_string(Termination reason) {
  switch (reason) {
    case Termination::phi_budget: return "phi_budget";
    case Termination::time_budget: return "time_budget";
    case Termination::rho_floor: return "rho_floor";
    case Termination::rho_ceiling: return "rho_ceiling";
    case Termination::converged_to_cycle: return "converged_to_cycle";
  }
  return "?";
}

Trajectory integrate_polar(const PolarSystem& system, double rho0, double phi_span, double step,
                           const PolarOptions& options) {
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) throw std::invalid_argument("rho0 must be positive");
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (phi_span == 0.0 || !std::isfinite(phi_span)) throw std::invalid_argument("phi_span must be nonzero");

  const double dir = phi_span > 0 ? 1.0 : -1.0;
  const double phi_end = options.phi_start + phi_span;
  std::vector<double> cycles;
  if (options.cycle_tolerance > 0.0)
    for (const auto& c : system.limit_cycles()) cycles.push_back(c.radius);

  std::vector<PolarPoint> pts{{rho0, options.phi_start}};
  std::vector<double> time{0.0};
  Termination reason = Termination::phi_budget;
  auto f = [&system](double rho) { return system.rho_dot(rho); };
  double rho = rho0;
  double phi = options.phi_start;
  std::size_t steps = 0;
  for (;;) {
    const double remaining = (phi_end - phi) * dir;
    if (remaining <= 1e-12 * std::max(1.0, std::abs(phi_end))) break;
    const double h = dir * std::min(step, remaining);
    const double k1 = f(rho);
    const double k2 = f(rho + 0.5 * h * k1);
    const double k3 = f(rho + 0.5 * h * k2);
    const double k4 = f(rho + h * k3);
    const double next = rho + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(k3) || !std::isfinite(k4) ||
        !std::isfinite(next)) {
      if (next < options.rho_floor || rho < 4.0 * options.rho_floor) {
        reason = Termination::rho_floor;
        break;
      }
      std::ostringstream msg;
      msg << "non-finite rho_dot after phi = " << phi << " (last good rho = " << rho << ")";
      throw NumericalError(msg.str());
    }
    ++steps;
    if (next < options.rho_floor) {
      reason = Termination::rho_floor;
      break;
    }
    rho = next;
    phi = std::abs(phi_end - (phi + h)) < 1e-12 * std::max(1.0, std::abs(phi_end)) ? phi_end : phi + h;
    pts.push_back({rho, phi});
    time.push_back(phi - options.phi_start);
    if (rho > options.rho_ceiling) {
      reason = Termination::rho_ceiling;
      break;
    }
    const bool at_cycle = std::any_of(cycles.begin(), cycles.end(), [&](double a) {
      return std::abs(rho - a) <= options.cycle_tolerance * std::max(1.0, a);
    });
    if (at_cycle) {
      reason = Termination::converged_to_cycle;
      break;
    }
  }
  if (pts.size() < 2) throw NumericalError("integration stopped before the first step");
  return {SampledCurve::polar(std::move(pts), false, "integrate_polar: " + system.description()),
          std::move(time), "rk4", step, steps, reason, {}};
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 - -92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

double wrap_angle(double d) {
  while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
  while (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
  return d;
}

std::string where(double t, const Point2& x) {
  std::ostringstream msg;
  msg << "t = " << t << ", x = (" << x.x << ", " << x.y << ")";
  return msg.str();
}

}  // namespace

Trajectory integrate_cartesian(const VectorField2D& field, const Point2& x0, double t_span,
                               const CartesianOptions& options) {
  if (t_span == 0.0 || !std::isfinite(t_span)) throw std::invalid_argument("t_span must be nonzero");
  if (!(options.max_step > 0.0) || !(options.initial_step > 0.0))
    throw std::invalid_argument("step sizes must be positive");
  if (norm(x0) == 0.0 && field.singular_at_origin())
    throw DomainError("initial point at the origin of a field singular there");

  const double dir = t_span > 0 ? 1.0 : -1.0;
  auto eval = [&field](double t, const Point2& x) {
    const Point2 v = field(x);
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw NumericalError("non-finite field value at " + where(t, x));
    return v;
  };

  std::vector<Point2> xs{x0};
  std::vector<double> ts{0.0};
  std::vector<double> angles{std::atan2(x0.y, x0.x)};
  const double angle_budget = 2.0 * std::numbers::pi * options.revolutions;

  double t = 0.0;
  Point2 x = x0;
  double h = std::min(options.initial_step, options.max_step);
  Point2 k1 = eval(t, x);
  Termination reason = Termination::time_budget;
  std::size_t steps = 0;
  while (true) {
    const double remaining = (t_span - t) * dir;
    if (remaining <= 1e-14 * std::max(1.0, std::abs(t_span))) break;
    if (steps >= options.max_steps) throw NumericalError("step budget exhausted at " + where(t, x));
    h = std::min({h, options.max_step, remaining});
    if (h < options.min_step) throw NumericalError("step underflow near " + where(t, x));
    const double s = dir * h;
    const Point2 k2 = eval(t + c2 * s, x + s * (a21 * k1));
    const Point2 k3 = eval(t + c3 * s, x + s * (a31 * k1 + a32 * k2));
    const Point2 k4 = eval(t + c4 * s, x + s * (a41 * k1 + a42 * k2 + a43 * k3));
    const Point2 k5 = eval(t + c5 * s, x + s * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Point2 k6 = eval(t + s, x + s * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Point2 xn = x + s * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Point2 k7 = eval(t + s, xn);
    const Point2 err = s * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double sx = options.atol + options.rtol * std::max(std::abs(x.x), std::abs(xn.x));
    const double sy = options.atol + options.rtol * std::max(std::abs(x.y), std::abs(xn.y));
    const double en = std::sqrt(0.5 * ((err.x / sx) * (err.x / sx) + (err.y / sy) * (err.y / sy)));
    if (!std::isfinite(en)) throw NumericalError("non-finite error estimate near " + where(t, x));
    const double factor = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    if (en > 1.0) {
      h *= std::min(factor, 0.9);
      continue;
    }
    ++steps;
    t = (remaining - h) <= 1e-14 * std::max(1.0, std::abs(t_span)) ? t_span : t + s;
    x = xn;
    k1 = k7;
    h *= factor;
    if (!(x == xs.back())) {
      xs.push_back(x);
      ts.push_back(t);
      angles.push_back(angles.back() + wrap_angle(std::atan2(x.y, x.x) - std::atan2(xs[xs.size() - 2].y, xs[xs.size() - 2].x)));
    }
    const double r = norm(x);
    if (r < options.r_min) {
      reason = Termination::rho_floor;
      break;
    }
    if (r > options.r_max) {
      reason = Termination::rho_ceiling;
      break;
    }
    if (std::abs(angles.back() - angles.front()) >= angle_budget) {
      reason = Termination::phi_budget;
      break;
    }
  }
  if (xs.size() < 2) throw NumericalError("integration produced a single point");

  bool monotone = norm(xs.front()) > 0.0;
  const double sign = angles[1] > angles[0] ? 1.0 : -1.0;
  for (std::size_t i = 1; monotone && i < angles.size(); ++i)
    monotone = (angles[i] - angles[i - 1]) * sign > 0.0 && norm(xs[i]) > 0.0;

  const std::string source = "integrate_cartesian: " + field.description();
  std::string note;
  auto curve = [&]() {
    if (!monotone) {
      note = "angle is not monotone along the orbit; kept in Cartesian form";
      return SampledCurve::cartesian(std::move(xs), false, source);
    }
    std::vector<PolarPoint> pts(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) pts[i] = {norm(xs[i]), angles[i]};
    return SampledCurve::polar(std::move(pts), false, source);
  }();
  Trajectory out{std::move(curve), std::move(ts), "dopri5", h, steps, reason, std::move(note)};
  return out;
}

bool ArcWindow::contains(double r) const {
  switch (kind) {
    case Kind::near_origin: return r <= c;
    case Kind::near_infinity: return r >= c;
    case Kind::annulus: return r >= center - delta && r <= center + delta;
  }
  return false;
}

SampledCurve extract_arc(const Trajectory& trajectory, const ArcWindow& window) {
  const SampledCurve& c = trajectory.curve;
  std::vector<double> radii;
  if (c.system() == CoordSystem::polar2) {
    for (const auto& p : c.polar_points()) radii.push_back(p.r);
  } else {
    for (const auto& p : c.planar_points()) radii.push_back(norm(p));
  }
  std::size_t end = radii.size();
  while (end > 0 && !window.contains(radii[end - 1])) --end;
  std::size_t begin = end;
  while (begin > 0 && window.contains(radii[begin - 1])) --begin;
  if (end - begin < 2) throw PreconditionError("arc window does not meet the trajectory");
  const std::string source = c.source() + "|arc";
  if (c.system() == CoordSystem::polar2) {
    const auto pts = c.polar_points();
    return SampledCurve::polar({pts.begin() + static_cast<std::ptrdiff_t>(begin),
                                pts.begin() + static_cast<std::ptrdiff_t>(end)},
                               false, source);
  }
  const auto pts = c.planar_points();
  return SampledCurve::cartesian({pts.begin() + static_cast<std::ptrdiff_t>(begin),
                                  pts.begin() + static_cast<std::ptrdiff_t>(end)},
                                 false, source);
}

FocusExponentFit fit_focus_exponent(const SampledCurve& arc, double tail_start) {
  const std::vector<PolarPoint> pts = arc.to_polar();
  const double phi0 = pts.front().phi;
  const double span = std::abs(pts.back().phi - phi0);
  std::vector<double> lx, ly;
  for (const auto& p : pts) {
    const double d = std::abs(p.phi - phi0);
    if (d >= tail_start * span && d > 0.0) {
      lx.push_back(std::log(d));
      ly.push_back(std::log(p.r));
    }
  }
  if (lx.size() < 3) throw PreconditionError("arc too short for an exponent fit");
  const LinearFit fit = fit_line(lx, ly);
  FocusExponentFit out;
  out.exponent = -fit.slope;
  out.k_estimate = out.exponent != 0.0 ? 1.0 / (2.0 * std::abs(out.exponent)) : 0.0;
  out.r_squared = fit.r_squared;
  return out;
}

namespace {

double point_segment(const Point2& p, const Point2& a, const Point2& b) {
  const Point2 d = b - a;
  const double l2 = norm2(d);
  double t = l2 > 0.0 ? dot(p - a, d) / l2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * d));
}

double directed(std::span<const Point2> a, std::span<const Point2> b) {
  double worst = 0.0;
  for (const auto& p : a) {
    double best = std::numeric_limits<double>::infinity();
    if (b.size() == 1) best = norm(p - b[0]);
    for (std::size_t i = 1; i < b.size(); ++i) best = std::min(best, point_segment(p, b[i - 1], b[i]));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(std::span<const Point2> a, std::span<const Point2> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("Hausdorff distance of an empty set");
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace spiraldim
