#include "spiraldim/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include "spiraldim/analytic.hpp"
#include "spiraldim/errors.hpp"
#include "spiraldim/sausage.hpp"

namespace spiraldim {

std::optional<double> ArcResult::gap() const {
  if (!oracle) return std::nullopt;
  return std::abs(estimate.dimension - *oracle);
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double eps_min_of(const ArcOptions& options) {
  if (options.eps.size() < 5) throw PreconditionError("arc estimates need at least five scales");
  return *std::min_element(options.eps.begin(), options.eps.end());
}

// Chord sagitta target: half of what the sausage precondition allows.
double sagitta_target(const ArcOptions& options) {
  return eps_min_of(options) / (2.0 * options.estimator.sausage.cells_per_eps);
}

// Radial gap between the last sample and the one a full turn earlier.
double last_turn_spacing(const std::vector<PolarPoint>& pts, double center_radius) {
  const double target = pts.back().phi;
  const double dir = pts.back().phi > pts.front().phi ? 1.0 : -1.0;
  for (std::size_t i = pts.size(); i-- > 0;) {
    if ((target - pts[i].phi) * dir >= two_pi)
      return std::abs(std::abs(pts[i].r - center_radius) - std::abs(pts.back().r - center_radius));
  }
  return std::numeric_limits<double>::infinity();
}

struct PolarRun {
  std::vector<PolarPoint> pts;
  Termination reason = Termination::phi_budget;
};

// Integrates in chunks until the turns around `center_radius` are closer than
// the target spacing, the angle budget is spent, or the integrator stops.
PolarRun run_polar(const PolarSystem& system, double rho0, double dir, double center_radius,
                   const ArcOptions& options) {
  const double eps_min = eps_min_of(options);
  const double sag = sagitta_target(options);
  PolarRun run;
  run.pts.push_back({rho0, 0.0});
  double covered = 0.0;
  while (covered < options.phi_budget) {
    const PolarPoint last = run.pts.back();
    const double scale = std::max(last.r, center_radius);
    double step = std::min(0.05, std::sqrt(8.0 * sag / scale));
    const double chunk = std::min(options.phi_chunk, options.phi_budget - covered);
    PolarOptions po;
    po.phi_start = last.phi;
    Trajectory t = integrate_polar(system, last.r, dir * chunk, step, po);
    // Fast radial motion bends chords more than the circle estimate allows.
    for (int retry = 0; retry < 12; ++retry) {
      const double s = max_chord_sagitta(t.curve.planar_points());
      if (s <= sag) break;
      step *= 0.9 * std::sqrt(sag / s);
      t = integrate_polar(system, last.r, dir * chunk, step, po);
    }
    const auto pts = t.curve.polar_points();
    run.pts.insert(run.pts.end(), pts.begin() + 1, pts.end());
    covered = std::abs(run.pts.back().phi);
    run.reason = t.reason;
    if (t.reason != Termination::phi_budget) break;
    if (last_turn_spacing(run.pts, center_radius) < eps_min * options.spacing_fraction) break;
  }
  return run;
}

std::optional<double> origin_oracle(const PolarSystem& system) {
  for (const auto& t : system.terms())
    if (t.coefficient != 0.0 && t.exponent < 0) return std::nullopt;
  const int e = system.leading_exponent();
  return e == 0 ? 1.0 : focus_dim_at_infinity(e);
}

ArcResult finish(const std::string& label, std::vector<PolarPoint> pts, Termination reason,
                 const Accumulation& acc, std::optional<double> oracle, const std::string& source,
                 const ArcOptions& options) {
  ArcResult r;
  r.label = label;
  r.reason = reason;
  r.phi_span = pts.back().phi - pts.front().phi;
  r.rho_end = pts.back().r;
  r.points = pts.size();
  r.oracle = oracle;
  r.accumulation = acc.kind == Accumulation::Kind::circle ? "circle" : "point";
  r.accumulation_radius = acc.radius;
  const SampledCurve curve = SampledCurve::polar(std::move(pts), false, source);
  EstimatorOptions est = options.estimator;
  est.accumulation = acc;
  r.estimate = dim_bounded(curve, options.eps, est);
  return r;
}

}  // namespace

ArcResult polar_arc_near_origin(const PolarSystem& system, const ArcOptions& options,
                                const std::string& label) {
  const auto cycles = system.limit_cycles();
  double rho0 = options.max_start_radius;
  if (!cycles.empty()) rho0 = std::min(rho0, options.start_fraction * cycles.front().radius);
  const double v = system.rho_dot(rho0);
  if (v == 0.0) throw PreconditionError("start radius is an equilibrium radius");
  const double dir = v < 0.0 ? 1.0 : -1.0;
  PolarRun run = run_polar(system, rho0, dir, 0.0, options);

  // The orbit may settle on a cycle instead of reaching the origin.
  Accumulation acc = Accumulation::at_point();
  std::optional<double> oracle = origin_oracle(system);
  for (const auto& c : cycles) {
    if (std::abs(run.pts.back().r - c.radius) < 0.05 * c.radius) {
      acc = Accumulation::at_circle(c.radius);
      oracle = limit_cycle_dim(c.multiplicity);
    }
  }
  return finish(label, std::move(run.pts), run.reason, acc, oracle, system.description(), options);
}

ArcResult polar_arc_near_infinity(const PolarSystem& system, const ArcOptions& options) {
  return polar_arc_near_origin(system.inverted(), options, "near_infinity");
}

ArcResult polar_arc_near_cycle(const PolarSystem& system, const LimitCycle& cycle, int side,
                               const ArcOptions& options) {
  if (side != 1 && side != -1) throw std::invalid_argument("side must be +1 or -1");
  const double a = cycle.radius;
  double room = side < 0 ? a : std::numeric_limits<double>::infinity();
  for (const auto& c : system.limit_cycles()) {
    const double d = (c.radius - a) * side;
    if (d > 1e-9 * a) room = std::min(room, d);
  }
  const double offset = std::min(options.cycle_offset * a, 0.5 * room);
  const double rho0 = a + side * offset;
  const double v = system.rho_dot(rho0);
  if (v == 0.0) throw PreconditionError("start radius is an equilibrium radius");
  // Move towards the cycle: rho' must point at a.
  const double dir = (v < 0.0) == (side > 0) ? 1.0 : -1.0;
  PolarRun run = run_polar(system, rho0, dir, a, options);
  const std::string label = side > 0 ? "cycle_outside" : "cycle_inside";
  return finish(label, std::move(run.pts), run.reason, Accumulation::at_circle(a),
                limit_cycle_dim(cycle.multiplicity), system.description(), options);
}

std::vector<ArcResult> analyze_polar_system(const PolarSystem& system, const ArcOptions& options) {
  std::vector<ArcResult> out{polar_arc_near_infinity(system, options)};
  for (const auto& c : system.limit_cycles()) {
    out.push_back(polar_arc_near_cycle(system, c, +1, options));
    out.push_back(polar_arc_near_cycle(system, c, -1, options));
  }
  return out;
}

// -----------------------------------------------------------------------------

ArcResult field_arc_near_origin(const VectorField2D& field, const Point2& x0,
                                const FieldArcOptions& options, std::optional<double> oracle) {
  const double r0 = norm(x0);
  if (r0 == 0.0) throw DomainError("orbit starts at the origin");
  const double sag = sagitta_target(options.arc);
  const double eps_min = eps_min_of(options.arc);

  CartesianOptions probe = options.ode;
  probe.revolutions = 1.0;
  const Trajectory fwd = integrate_cartesian(field, x0, 1e9, probe);
  const double dir = norm(fwd.curve.planar_points().back()) < r0 ? 1.0 : -1.0;

  std::vector<PolarPoint> pts;
  Termination reason = Termination::phi_budget;
  Point2 x = x0;
  double angle_offset = 0.0;
  double revolutions = 0.0;
  while (revolutions < options.max_revolutions) {
    const Point2 v = field(x);
    const double omega = std::max(std::abs(x.x * v.y - x.y * v.x) / norm2(x), 1e-12);
    CartesianOptions ode = options.ode;
    ode.max_step = std::min(ode.max_step, std::sqrt(8.0 * sag / norm(x)) / omega);
    ode.revolutions = std::min(options.revolutions_chunk, options.max_revolutions - revolutions);
    const Trajectory t = integrate_cartesian(field, x, dir * 1e12, ode);
    if (t.curve.system() != CoordSystem::polar2)
      throw NumericalError("orbit does not wind monotonically about the origin: " + t.note);
    const auto chunk = t.curve.polar_points();
    // Continue the unwrapped angle across chunks.
    const double shift = pts.empty() ? 0.0 : angle_offset - chunk.front().phi;
    for (std::size_t i = pts.empty() ? 0 : 1; i < chunk.size(); ++i)
      pts.push_back({chunk[i].r, chunk[i].phi + shift});
    angle_offset = pts.back().phi;
    x = to_cartesian(chunk.back());
    revolutions = std::abs(pts.back().phi - pts.front().phi) / two_pi;
    reason = t.reason;
    if (t.reason != Termination::phi_budget) break;
    if (last_turn_spacing(pts, 0.0) < eps_min * options.arc.spacing_fraction) break;
  }
  return finish("near_origin", std::move(pts), reason, Accumulation::at_point(), oracle,
                field.description(), options.arc);
}

ArcResult field_arc_near_infinity(const VectorField2D& field, const Point2& x0,
                                  const FieldArcOptions& options, std::optional<double> oracle) {
  ArcResult r = field_arc_near_origin(invert_field(field), invert_point(x0), options, oracle);
  r.label = "near_infinity";
  return r;
}

// -----------------------------------------------------------------------------

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::exponential: return "exponential";
    case Regime::power_focus: return "power_focus";
    case Regime::limit_cycle: return "limit_cycle";
  }
  return "?";
}

Classification classify_dimension(double dimension, double exponential_threshold) {
  Classification c;
  if (dimension < exponential_threshold) {
    c.residual = std::abs(dimension - 1.0);
    return c;
  }
  double best = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 200; ++n) {
    const double f = focus_dim_at_infinity(n);
    if (std::abs(dimension - f) < best) {
      best = std::abs(dimension - f);
      c = {Regime::power_focus, f, best};
    }
    const double l = limit_cycle_dim(n + 1);
    if (std::abs(dimension - l) < best) {
      best = std::abs(dimension - l);
      c = {Regime::limit_cycle, l, best};
    }
  }
  return c;
}

namespace {

void check_grid(const std::vector<double>& grid) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("sweep grid must be strictly increasing");
}

SweepPoint summarize(double value, std::vector<ArcResult> arcs) {
  SweepPoint p;
  p.value = value;
  p.arcs = std::move(arcs);
  for (const auto& a : p.arcs) p.dimension = std::max(p.dimension, a.estimate.dimension);
  p.classification = classify_dimension(p.dimension);
  return p;
}

template <class Job>
std::vector<SweepPoint> run_grid(const std::vector<double>& grid, Job job) {
  std::vector<std::future<SweepPoint>> futures;
  futures.reserve(grid.size());
  for (double v : grid) futures.push_back(std::async(std::launch::async, job, v));
  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace

SweepReport sweep_hopf_inverted(int k, const std::vector<double>& grid, const ArcOptions& options) {
  check_grid(grid);
  SweepReport report{"hopf_inverted k=" + std::to_string(k), "a", {}};
  report.points = run_grid(grid, [k, &options](double a) {
    return summarize(a, {polar_arc_near_infinity(PolarSystem::hopf_inverted(k, a), options)});
  });
  return report;
}

SweepReport sweep_takens_inverted(int l, const std::vector<double>& base, int index,
                                  const std::vector<double>& grid, const ArcOptions& options) {
  check_grid(grid);
  if (index < 0 || index >= l || base.size() != static_cast<std::size_t>(l))
    throw std::invalid_argument("swept coefficient index out of range");
  std::ostringstream family;
  family << "takens_inverted l=" << l;
  SweepReport report{family.str(), "a" + std::to_string(index), {}};
  report.points = run_grid(grid, [l, base, index, &options](double v) {
    std::vector<double> a = base;
    a[static_cast<std::size_t>(index)] = v;
    return summarize(v, analyze_polar_system(PolarSystem::takens_inverted(l, a), options));
  });
  return report;
}

}  // namespace spiraldim
