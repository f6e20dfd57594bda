#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spiraldim/dimension.hpp"
#include "spiraldim/field.hpp"
#include "spiraldim/integrate.hpp"
#include "spiraldim/polar_system.hpp"

namespace spiraldim {

/// Dimension of one spiral arc of a system, with the closed-form value
/// when one applies.
struct ArcResult {
  std::string label;             // near_infinity, near_origin, cycle_outside, cycle_inside
  DimensionEstimate estimate;
  std::optional<double> oracle;
  std::string accumulation;      // "point" or "circle"
  double accumulation_radius = 0.0;
  Termination reason = Termination::phi_budget;
  double phi_span = 0.0;         // signed angle covered
  double rho_end = 0.0;
  std::size_t points = 0;
  std::optional<double> gap() const;
};

struct ArcOptions {
  std::vector<double> eps = eps_schedule(1e-2, 1e-4);
  /// Integration continues in chunks until successive turns are closer than
  /// eps_min * spacing_fraction, or the angle budget runs out.
  double spacing_fraction = 0.25;
  double phi_chunk = 1000.0;
  double phi_budget = 60000.0;
  /// Start radius for arcs at a point, as a fraction of the nearest cycle
  /// radius (capped at max_start_radius).
  double start_fraction = 0.75;
  double max_start_radius = 0.5;
  /// Relative offset from a cycle for arcs near it.
  double cycle_offset = 0.25;
  EstimatorOptions estimator;
};

/// Arc of a polar system accumulating at its origin (integrated in the
/// direction where rho decreases). `label` names it in the result.
ArcResult polar_arc_near_origin(const PolarSystem& system, const ArcOptions& options,
                                const std::string& label = "near_origin");

/// Arc at infinity: the system is inverted and the arc near the origin of
/// the inverted system is measured.
ArcResult polar_arc_near_infinity(const PolarSystem& system, const ArcOptions& options);

/// Arcs approaching `cycle` from outside (side = +1) or inside (side = -1).
ArcResult polar_arc_near_cycle(const PolarSystem& system, const LimitCycle& cycle, int side,
                               const ArcOptions& options);

/// Near-infinity arc plus both sides of every limit cycle.
std::vector<ArcResult> analyze_polar_system(const PolarSystem& system, const ArcOptions& options);

struct FieldArcOptions {
  ArcOptions arc;
  CartesianOptions ode;
  double revolutions_chunk = 100.0;
  double max_revolutions = 5000.0;
};

/// Orbit of a Cartesian field from x0 accumulating at the origin (forward or
/// backward, whichever brings it closer).
ArcResult field_arc_near_origin(const VectorField2D& field, const Point2& x0,
                                const FieldArcOptions& options,
                                std::optional<double> oracle = std::nullopt);

/// Orbit tending to infinity: measured on the inverted field near its origin.
ArcResult field_arc_near_infinity(const VectorField2D& field, const Point2& x0,
                                  const FieldArcOptions& options,
                                  std::optional<double> oracle = std::nullopt);

// Regime classification -------------------------------------------------------

enum class Regime { exponential, power_focus, limit_cycle };
std::string to_string(Regime regime);

struct Classification {
  Regime regime = Regime::exponential;
  double nearest = 1.0;   // nearest admissible value
  double residual = 0.0;  // |dimension - nearest|
};

/// Below `exponential_threshold` the arc is exponential (nearest value 1);
/// otherwise the estimate snaps to the nearest member of D0 or D1.
Classification classify_dimension(double dimension, double exponential_threshold = 1.12);

struct SweepPoint {
  double value = 0.0;
  std::vector<ArcResult> arcs;
  double dimension = 0.0;  // largest arc estimate
  Classification classification;
};

struct SweepReport {
  std::string family;
  std::string parameter;
  std::vector<SweepPoint> points;
};

/// Near-infinity arcs of the inverted Hopf system rho' = rho(rho^(-2k) + a).
SweepReport sweep_hopf_inverted(int k, const std::vector<double>& grid, const ArcOptions& options);

/// All arcs of the inverted Hopf-Takens system with coefficient `index`
/// swept over `grid` and the others fixed to `base`.
SweepReport sweep_takens_inverted(int l, const std::vector<double>& base, int index,
                                  const std::vector<double>& grid, const ArcOptions& options);

}  // namespace spiraldim
