#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spiraldim/geometry.hpp"
#include "spiraldim/sausage.hpp"

namespace spiraldim {

enum class DimensionMethod { sausage_grid, box_count };

std::string to_string(DimensionMethod method);

/// Fitted scaling exponent with regression diagnostics.
struct DimensionEstimate {
  double dimension = 0.0;
  std::optional<double> content_at_d;
  double eps_min = 0.0;
  double eps_max = 0.0;
  int num_scales = 0;
  double r_squared = 0.0;
  double slope = 0.0;
  double slope_stderr = 0.0;
  int ambient_dim = 2;
  DimensionMethod method = DimensionMethod::sausage_grid;
  std::vector<std::string> diagnostics;
  SausageProfile profile;  // the fitted (eps, area) pairs
};

/// Geometric schedule eps_max, eps_max * ratio, ... down to no less than
/// eps_min (eps_min itself is appended when the ratio does not land on it).
std::vector<double> eps_schedule(double eps_max, double eps_min,
                                 double ratio = 0.70710678118654752);

/// `count` scales starting at eps_max with the given ratio.
std::vector<double> eps_schedule_count(double eps_max, int count,
                                       double ratio = 0.70710678118654752);

/// Default window: 12 scales of ratio 2^(-1/2) ending at diameter / 10.
std::vector<double> default_eps_schedule(double diameter);

/// Where a truncated spiral or sequence accumulates.
struct Accumulation {
  enum class Kind { none, point, circle };
  Kind kind = Kind::none;
  Point2 center{};
  double radius = 0.0;

  static Accumulation none() { return {}; }
  static Accumulation at_point(Point2 c = {}) { return {Kind::point, c, 0.0}; }
  static Accumulation at_circle(double radius, Point2 c = {}) { return {Kind::circle, c, radius}; }
};

struct CondenseReport {
  bool condensed = false;
  std::size_t kept_points = 0;
  double cut_angle = 0.0;
  double core_inner = 0.0;
  double core_outer = 0.0;
  std::string note;
};

/// Truncates a spiral where successive turns are closer than `gap` and
/// replaces the rest (and the unsampled remainder up to the accumulation
/// set) by a filled disc or annulus. Everything inside that region lies
/// within gap / 2 of the true spiral, so the eps-neighbourhood is unchanged
/// up to O(gap) for eps >= gap. Curves that never get that tight are
/// returned as-is with the accumulation point appended.
PlanarSet condense_spiral(const SampledCurve& curve, const Accumulation& accumulation,
                          double gap, CondenseReport* report = nullptr);

/// Same idea for a point sequence converging to `accumulation`: once
/// consecutive distances drop below `gap` the remaining points are joined
/// into a polyline ending at the accumulation point.
PlanarSet condense_sequence(std::span<const Point2> points, const Point2& accumulation,
                            double gap, CondenseReport* report = nullptr);

struct EstimatorOptions {
  SausageOptions sausage;
  /// Turn spacing, as a fraction of eps_min, below which a nucleus is filled.
  double core_gap_fraction = 0.5;
  /// Where the (inverted) curve accumulates. `none` disables condensing.
  Accumulation accumulation = Accumulation::at_point();
};

/// Least-squares slope of log|A_eps| against log eps; dimension is
/// ambient_dim - slope. content_at_d is the median of |A_eps| / eps^(n-d).
/// Needs at least five scales and positive areas.
DimensionEstimate fit_dimension(const SausageProfile& profile, int ambient_dim);

/// Bounded planar set: sausage + fit.
DimensionEstimate dim_bounded(const PlanarSet& set, std::span<const double> eps_list,
                              const SausageOptions& options = {});

/// Bounded planar curve; condenses the nucleus per `options.accumulation`.
DimensionEstimate dim_bounded(const SampledCurve& curve, std::span<const double> eps_list,
                              const EstimatorOptions& options = {});

/// Unbounded curve away from the origin: estimate on its inversion, which
/// accumulates at the origin. Polar curves invert in closed form (r -> 1/r).
DimensionEstimate dim_unbounded(const SampledCurve& curve, std::span<const double> eps_list,
                                const EstimatorOptions& options = {});

/// Same with inversion about `center` instead of the origin.
DimensionEstimate dim_unbounded_about(const SampledCurve& curve, const Point2& center,
                                      std::span<const double> eps_list,
                                      const EstimatorOptions& options = {});

/// Unbounded point sequence (ordered towards infinity).
DimensionEstimate dim_unbounded_points(std::span<const Point2> points,
                                       std::span<const double> eps_list,
                                       const EstimatorOptions& options = {});

struct GeneralEstimate {
  DimensionEstimate combined;
  std::optional<DimensionEstimate> inner;  // part inside the unit disc
  std::optional<DimensionEstimate> outer;  // inverted part outside it
};

/// Splits at the unit circle: the bounded estimator runs on the inner part,
/// the inversion estimator on the outer part, and the larger value wins.
/// Each input curve is one connected piece; `bounded_accumulation` says
/// where inner pieces accumulate.
GeneralEstimate dim_general(std::span<const SampledCurve> pieces,
                            std::span<const double> eps_list,
                            const EstimatorOptions& options = {});

struct MinkowskiContent {
  double value = 0.0;   // median of |A_eps| / eps^(2-d)
  double spread = 0.0;  // max / min of the ratio over the window
  double d = 0.0;
  std::vector<double> ratios;
};

/// d-dimensional Minkowski content of a bounded planar curve.
MinkowskiContent minkowski_content(const SampledCurve& curve, double d,
                                   std::span<const double> eps_list,
                                   const EstimatorOptions& options = {});
MinkowskiContent minkowski_content(const PlanarSet& set, double d,
                                   std::span<const double> eps_list,
                                   const SausageOptions& options = {});

/// Content of an unbounded curve, defined through its inversion.
MinkowskiContent minkowski_content_unbounded(const SampledCurve& curve, double d,
                                             std::span<const double> eps_list,
                                             const EstimatorOptions& options = {});

/// Box-counting cross-check: number of eps-grid boxes meeting the set.
std::vector<double> box_counts(const PlanarSet& set, std::span<const double> eps_list);
DimensionEstimate dim_box_count(const PlanarSet& set, std::span<const double> eps_list);

}  // namespace spiraldim
