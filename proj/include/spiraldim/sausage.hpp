#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spiraldim/geometry.hpp"

namespace spiraldim {

struct Disc {
  Point2 center;
  double radius = 0.0;
};

/// Closed annulus inner <= |x - center| <= outer.
struct Annulus {
  Point2 center;
  double inner = 0.0;
  double outer = 0.0;
};

/// A planar set assembled from polylines, isolated points and filled
/// regions. Filled regions stand in for the nucleus of a truncated spiral.
class PlanarSet {
 public:
  void add_polyline(std::vector<Point2> points, bool closed = false);
  void add_points(std::span<const Point2> points);
  void add_disc(const Disc& disc);
  void add_annulus(const Annulus& annulus);
  void append(const PlanarSet& other);

  const std::vector<std::vector<Point2>>& polylines() const { return polylines_; }
  const std::vector<bool>& closed_flags() const { return closed_; }
  const std::vector<Point2>& points() const { return points_; }
  const std::vector<Disc>& discs() const { return discs_; }
  const std::vector<Annulus>& annuli() const { return annuli_; }

  bool empty() const;
  std::size_t primitive_count() const;

  /// Axis-aligned bounding box {min corner, max corner}.
  std::pair<Point2, Point2> bounds() const;
  double diameter_bound() const;

  static PlanarSet from_curve(const SampledCurve& curve);
  static PlanarSet from_points(std::span<const Point2> points);

 private:
  std::vector<std::vector<Point2>> polylines_;
  std::vector<bool> closed_;
  std::vector<Point2> points_;
  std::vector<Disc> discs_;
  std::vector<Annulus> annuli_;
};

/// Areas of epsilon-neighbourhoods, ordered by strictly decreasing epsilon.
struct SausageProfile {
  std::vector<double> eps;
  std::vector<double> area;

  std::size_t size() const { return eps.size(); }
};

struct SausageOptions {
  /// Raster rows per epsilon; the row pitch is eps / cells_per_eps.
  double cells_per_eps = 8.0;
  /// Polylines are simplified per scale: a vertex is dropped when it lies
  /// within eps * simplify_fraction of the replacing chord. Zero disables.
  double simplify_fraction = 1.0 / 64.0;
  /// Resource guard on the number of raster rows at the finest scale.
  std::size_t max_rows = 40'000'000;
  /// Evaluate scales on worker threads (results are merged in eps order).
  bool parallel = true;
};

/// |A_eps| for a single epsilon.
///
/// Rows are placed at pitch h = eps / cells_per_eps starting from the lower
/// edge of the eps-expanded bounding box. Along each row the covered set is
/// computed exactly as a union of intervals, so the only discretisation is
/// the midpoint rule across rows.
double sausage_area(const PlanarSet& set, double eps, const SausageOptions& options = {});

/// |A_eps| for each eps in `eps_list` (must be strictly decreasing).
SausageProfile sausage_areas(const PlanarSet& set, std::span<const double> eps_list,
                             const SausageOptions& options = {});

/// Curve overload: treats the curve as a polyline and checks it resolves the
/// finest scale (estimated chord sagitta at most eps_min / cells_per_eps).
SausageProfile sausage_areas(const SampledCurve& curve, std::span<const double> eps_list,
                             const SausageOptions& options = {});

/// Largest chord-to-arc deviation of a polyline, estimated from the discrete
/// curvature through consecutive vertex triples.
double max_chord_sagitta(std::span<const Point2> points);

}  // namespace spiraldim
