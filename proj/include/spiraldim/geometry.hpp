#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace spiraldim {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2& operator+=(const Point2& o) { x += o.x; y += o.y; return *this; }
  Point2& operator-=(const Point2& o) { x -= o.x; y -= o.y; return *this; }
  Point2& operator*=(double s) { x *= s; y *= s; return *this; }
  friend Point2 operator+(Point2 a, const Point2& b) { return a += b; }
  friend Point2 operator-(Point2 a, const Point2& b) { return a -= b; }
  friend Point2 operator*(Point2 a, double s) { return a *= s; }
  friend Point2 operator*(double s, Point2 a) { return a *= s; }
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Point3& operator+=(const Point3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Point3& operator-=(const Point3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Point3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
  friend Point3 operator+(Point3 a, const Point3& b) { return a += b; }
  friend Point3 operator-(Point3 a, const Point3& b) { return a -= b; }
  friend Point3 operator*(Point3 a, double s) { return a *= s; }
  friend Point3 operator*(double s, Point3 a) { return a *= s; }
  friend bool operator==(const Point3&, const Point3&) = default;
};

/// Polar coordinates with an unwrapped angle (phi is never reduced mod 2 pi).
struct PolarPoint {
  double r = 0.0;
  double phi = 0.0;
  friend bool operator==(const PolarPoint&, const PolarPoint&) = default;
};

inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(const Point2& a) { return dot(a, a); }
inline double norm2(const Point3& a) { return dot(a, a); }
inline double norm(const Point2& a) { return std::hypot(a.x, a.y); }
inline double norm(const Point3& a) { return std::sqrt(norm2(a)); }

inline Point2 to_cartesian(const PolarPoint& p) {
  return {p.r * std::cos(p.phi), p.r * std::sin(p.phi)};
}

enum class CoordSystem { cartesian2, polar2, cartesian3 };

std::string to_string(CoordSystem system);
CoordSystem coord_system_from_string(const std::string& name);

/// Ordered polyline in one native coordinate system.
///
/// Invariants checked on construction: at least two points, all coordinates
/// finite, no two consecutive points equal, and for polar curves a strictly
/// monotone (unwrapped) angle. Conversions never happen implicitly; use
/// planar_points() to get Cartesian coordinates of a planar curve.
class SampledCurve {
 public:
  static SampledCurve cartesian(std::vector<Point2> points, bool closed = false,
                                std::string source = {});
  static SampledCurve polar(std::vector<PolarPoint> points, bool closed = false,
                            std::string source = {});
  static SampledCurve spatial(std::vector<Point3> points, bool closed = false,
                              std::string source = {});

  CoordSystem system() const { return system_; }
  bool closed() const { return closed_; }
  const std::string& source() const { return source_; }
  std::size_t size() const;
  bool is_planar() const { return system_ != CoordSystem::cartesian3; }

  /// Native storage; each throws std::logic_error on a system mismatch.
  std::span<const Point2> cartesian_points() const;
  std::span<const PolarPoint> polar_points() const;
  std::span<const Point3> spatial_points() const;

  /// Cartesian coordinates of a planar curve (converted when polar).
  std::vector<Point2> planar_points() const;

  /// Polar form of a planar curve about the origin with the angle unwrapped
  /// along the curve. Throws DomainError if the curve passes through 0.
  std::vector<PolarPoint> to_polar() const;

  SampledCurve with_source(std::string source) const;

 private:
  SampledCurve() = default;
  void validate() const;

  CoordSystem system_ = CoordSystem::cartesian2;
  bool closed_ = false;
  std::string source_;
  std::vector<Point2> xy_;
  std::vector<PolarPoint> polar_;
  std::vector<Point3> xyz_;
};

// ---------------------------------------------------------------------------
// Geometric inversion x -> x / |x|^2.

Point2 invert_point(const Point2& p);
Point3 invert_point(const Point3& p);

/// Inversion with respect to an arbitrary centre w: x -> (x - w) / |x - w|^2.
Point2 invert_point_about(const Point2& p, const Point2& center);

/// Pointwise inversion. Polar curves map r -> 1/r with the angle grid kept
/// bit-for-bit; Cartesian curves are inverted componentwise.
SampledCurve invert_curve(const SampledCurve& c);

// ---------------------------------------------------------------------------
// Sphere projections.

enum class SphereKind { riemann, poincare };

/// A point on either the Riemann sphere (radius R, centre (0,0,R), touching
/// the plane at the origin) or the Poincare sphere (radius R, centre 0).
class SpherePoint {
 public:
  SpherePoint(Point3 position, SphereKind kind, double radius);

  const Point3& position() const { return position_; }
  SphereKind kind() const { return kind_; }
  double radius() const { return radius_; }
  Point3 center() const;
  double horizontal_radius() const { return std::hypot(position_.x, position_.y); }

  /// | |position - center| - R | / R.
  double constraint_residual() const;

 private:
  Point3 position_;
  SphereKind kind_;
  double radius_;
};

/// Stereographic projection from the north pole (0,0,2R) onto the sphere of
/// radius R resting on the plane at the origin. Horizontal radius is
/// 4R^2 r / (r^2 + 4R^2); for R = 1/2 this is r / (r^2 + 1).
SpherePoint riemann_project(const Point2& p, double radius);

/// Inversion followed by stereographic projection; the origin maps to the
/// north pole. Horizontal radius is 4R^2 r / (4R^2 r^2 + 1).
SpherePoint riemann_project_inverted(const Point2& p, double radius);

/// Horizontal radius of riemann_project_inverted as a function of |p|.
double riemann_horizontal_map(double r, double radius);

/// Central projection of the inverted point onto the Poincare sphere.
/// In cylindrical coordinates, with f = |p|:
///   (R / sqrt(1 + R^2 f^2), phi, R^2 f / sqrt(1 + R^2 f^2)).
/// f = 0 (a point at infinity of the inverted plane) lands on the equator and
/// f -> infinity approaches the north pole (0, 0, R).
SpherePoint poincare_project(const Point2& p, double radius);

/// Orthogonal projection onto the xy-plane (the Poincare disc).
Point2 disc_project(const SpherePoint& s);

/// Pointwise helpers on whole planar curves.
SampledCurve riemann_project_curve(const SampledCurve& c, double radius);
SampledCurve poincare_project_curve(const SampledCurve& c, double radius);
SampledCurve disc_project_curve(const SampledCurve& sphere_curve);

}  // namespace spiraldim
