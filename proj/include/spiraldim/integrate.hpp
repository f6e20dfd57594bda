#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "spiraldim/field.hpp"
#include "spiraldim/geometry.hpp"
#include "spiraldim/polar_system.hpp"

namespace spiraldim {

enum class Termination { phi_budget, time_budget, rho_floor, rho_ceiling, converged_to_cycle };

std::string to_string(Termination reason);

/// Integrated orbit. `curve` is polar with a strictly monotone unwrapped
/// angle (increasing for forward runs in phi, decreasing for backward runs).
/// A Cartesian orbit whose angle is not monotone is kept as cartesian2.
struct Trajectory {
  SampledCurve curve;
  std::vector<double> time;  // phi for polar systems, t for fields
  std::string solver;
  double step = 0.0;         // fixed step, or the last accepted step
  std::size_t steps = 0;
  Termination reason = Termination::phi_budget;
  std::string note;
};

struct PolarOptions {
  double phi_start = 0.0;
  double rho_floor = 1e-6;
  double rho_ceiling = 1e6;
  /// Stop once |rho - a| <= cycle_tolerance * max(1, a) for a cycle a of the
  /// system. Zero disables the check.
  double cycle_tolerance = 1e-10;
};

/// Classical RK4 in phi for d rho / d phi = rho_dot(rho). `phi_span` may be
/// negative (integrate backwards). The last step is shortened to land on the
/// budget exactly.
Trajectory integrate_polar(const PolarSystem& system, double rho0, double phi_span, double step,
                           const PolarOptions& options = {});

struct CartesianOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double initial_step = 1e-3;
  double max_step = 0.05;
  double min_step = 1e-14;
  double r_min = 0.0;
  double r_max = std::numeric_limits<double>::infinity();
  double revolutions = 200.0;
  std::size_t max_steps = 50'000'000;
};

/// Dormand-Prince 5(4) with error control on every component; every
/// accepted step is kept. `t_span` may be negative.
Trajectory integrate_cartesian(const VectorField2D& field, const Point2& x0, double t_span,
                               const CartesianOptions& options = {});

struct ArcWindow {
  enum class Kind { near_origin, near_infinity, annulus };
  Kind kind = Kind::near_origin;
  double c = 0.0;      // radius threshold for near_origin / near_infinity
  double center = 0.0; // annulus mid radius
  double delta = 0.0;  // annulus half width

  static ArcWindow near_origin(double c) { return {Kind::near_origin, c, 0.0, 0.0}; }
  static ArcWindow near_infinity(double c) { return {Kind::near_infinity, c, 0.0, 0.0}; }
  static ArcWindow annulus(double a, double delta) { return {Kind::annulus, 0.0, a, delta}; }
  bool contains(double r) const;
};

/// Last maximal run of samples inside the window (the tail of the orbit
/// when the orbit ends inside). Throws PreconditionError when fewer than
/// two samples qualify.
SampledCurve extract_arc(const Trajectory& trajectory, const ArcWindow& window);

/// Fit of r ~ |phi - phi_0|^(-s) on the part of the arc with
/// |phi - phi_0| >= tail_start * |phi_end - phi_0|. A weak focus of order k
/// has s = 1 / (2k).
struct FocusExponentFit {
  double exponent = 0.0;
  double k_estimate = 0.0;
  double r_squared = 0.0;
};
FocusExponentFit fit_focus_exponent(const SampledCurve& arc, double tail_start = 0.1);

/// Symmetric Hausdorff distance between two polylines.
double hausdorff_distance(std::span<const Point2> a, std::span<const Point2> b);

}  // namespace spiraldim
