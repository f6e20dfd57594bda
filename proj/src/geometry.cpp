#include "spiraldim/geometry.hpp"

#include <numbers>
#include <stdexcept>

#include "spiraldim/errors.hpp"

namespace spiraldim {

std::string to_string(CoordSystem system) {
  switch (system) {
    case CoordSystem::cartesian2: return "cartesian2";
    case CoordSystem::polar2: return "polar2";
    case CoordSystem::cartesian3: return "cartesian3";
  }
  return "unknown";
}

CoordSystem coord_system_from_string(const std::string& name) {
  if (name == "cartesian2") return CoordSystem::cartesian2;
  if (name == "polar2") return CoordSystem::polar2;
  if (name == "cartesian3") return CoordSystem::cartesian3;
  throw std::invalid_argument("unknown coordinate system '" + name + "'");
}

SampledCurve SampledCurve::cartesian(std::vector<Point2> points, bool closed,
                                     std::string source) {
  SampledCurve c;
  c.system_ = CoordSystem::cartesian2;
  c.closed_ = closed;
  c.source_ = std::move(source);
  c.xy_ = std::move(points);
  c.validate();
  return c;
}

SampledCurve SampledCurve::polar(std::vector<PolarPoint> points, bool closed,
                                 std::string source) {
  SampledCurve c;
  c.system_ = CoordSystem::polar2;
  c.closed_ = closed;
  c.source_ = std::move(source);
  c.polar_ = std::move(points);
  c.validate();
  return c;
}

SampledCurve SampledCurve::spatial(std::vector<Point3> points, bool closed,
                                   std::string source) {
  SampledCurve c;
  c.system_ = CoordSystem::cartesian3;
  c.closed_ = closed;
  c.source_ = std::move(source);
  c.xyz_ = std::move(points);
  c.validate();
  return c;
}

std::size_t SampledCurve::size() const {
  switch (system_) {
    case CoordSystem::cartesian2: return xy_.size();
    case CoordSystem::polar2: return polar_.size();
    case CoordSystem::cartesian3: return xyz_.size();
  }
  return 0;
}

void SampledCurve::validate() const {
  if (size() < 2) throw std::invalid_argument("a curve needs at least two points");
  switch (system_) {
    case CoordSystem::cartesian2:
      for (std::size_t i = 0; i < xy_.size(); ++i) {
        if (!std::isfinite(xy_[i].x) || !std::isfinite(xy_[i].y))
          throw std::invalid_argument("non-finite curve coordinate at index " + std::to_string(i));
        if (i > 0 && xy_[i] == xy_[i - 1])
          throw std::invalid_argument("repeated consecutive point at index " + std::to_string(i));
      }
      break;
    case CoordSystem::polar2: {
      const double dir = polar_[1].phi - polar_[0].phi;
      for (std::size_t i = 0; i < polar_.size(); ++i) {
        const auto& p = polar_[i];
        if (!std::isfinite(p.r) || !std::isfinite(p.phi) || p.r < 0.0)
          throw std::invalid_argument("invalid polar coordinate at index " + std::to_string(i));
        if (i > 0) {
          const double step = p.phi - polar_[i - 1].phi;
          if (!(step * dir > 0.0))
            throw std::invalid_argument("polar angle not strictly monotone at index " +
                                        std::to_string(i));
        }
      }
      break;
    }
    case CoordSystem::cartesian3:
      for (std::size_t i = 0; i < xyz_.size(); ++i) {
        const auto& p = xyz_[i];
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
          throw std::invalid_argument("non-finite curve coordinate at index " + std::to_string(i));
        if (i > 0 && p == xyz_[i - 1])
          throw std::invalid_argument("repeated consecutive point at index " + std::to_string(i));
      }
      break;
  }
}

std::span<const Point2> SampledCurve::cartesian_points() const {
  if (system_ != CoordSystem::cartesian2) throw std::logic_error("curve is not cartesian2");
  return xy_;
}

std::span<const PolarPoint> SampledCurve::polar_points() const {
  if (system_ != CoordSystem::polar2) throw std::logic_error("curve is not polar2");
  return polar_;
}

std::span<const Point3> SampledCurve::spatial_points() const {
  if (system_ != CoordSystem::cartesian3) throw std::logic_error("curve is not cartesian3");
  return xyz_;
}

std::vector<Point2> SampledCurve::planar_points() const {
  switch (system_) {
    case CoordSystem::cartesian2: return xy_;
    case CoordSystem::polar2: {
      std::vector<Point2> out;
      out.reserve(polar_.size());
      for (const auto& p : polar_) out.push_back(to_cartesian(p));
      return out;
    }
    case CoordSystem::cartesian3: break;
  }
  throw std::logic_error("planar_points() on a spatial curve");
}

std::vector<PolarPoint> SampledCurve::to_polar() const {
  if (system_ == CoordSystem::polar2) return polar_;
  if (system_ == CoordSystem::cartesian3) throw std::logic_error("to_polar() on a spatial curve");
  std::vector<PolarPoint> out;
  out.reserve(xy_.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < xy_.size(); ++i) {
    const double r = norm(xy_[i]);
    if (r == 0.0) throw DomainError("curve passes through the origin at index " + std::to_string(i));
    double phi = std::atan2(xy_[i].y, xy_[i].x);
    if (i > 0) {
      const double two_pi = 2.0 * std::numbers::pi;
      phi += two_pi * std::round((prev - phi) / two_pi);
    }
    out.push_back({r, phi});
    prev = phi;
  }
  return out;
}

SampledCurve SampledCurve::with_source(std::string source) const {
  SampledCurve c = *this;
  c.source_ = std::move(source);
  return c;
}

// ---------------------------------------------------------------------------

Point2 invert_point(const Point2& p) {
  const double n2 = norm2(p);
  if (!(n2 > 0.0)) throw DomainError("inversion undefined at origin");
  return {p.x / n2, p.y / n2};
}

Point3 invert_point(const Point3& p) {
  const double n2 = norm2(p);
  if (!(n2 > 0.0)) throw DomainError("inversion undefined at origin");
  return {p.x / n2, p.y / n2, p.z / n2};
}

Point2 invert_point_about(const Point2& p, const Point2& center) {
  return invert_point(p - center);
}

SampledCurve invert_curve(const SampledCurve& c) {
  const std::string source = c.source().empty() ? "inverted" : c.source() + "|inverted";
  switch (c.system()) {
    case CoordSystem::polar2: {
      std::vector<PolarPoint> out;
      out.reserve(c.size());
      for (const auto& p : c.polar_points()) {
        if (!(p.r > 0.0)) throw DomainError("inversion undefined at origin");
        out.push_back({1.0 / p.r, p.phi});
      }
      return SampledCurve::polar(std::move(out), c.closed(), source);
    }
    case CoordSystem::cartesian2: {
      std::vector<Point2> out;
      out.reserve(c.size());
      for (const auto& p : c.cartesian_points()) out.push_back(invert_point(p));
      return SampledCurve::cartesian(std::move(out), c.closed(), source);
    }
    case CoordSystem::cartesian3: {
      std::vector<Point3> out;
      out.reserve(c.size());
      for (const auto& p : c.spatial_points()) out.push_back(invert_point(p));
      return SampledCurve::spatial(std::move(out), c.closed(), source);
    }
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------

SpherePoint::SpherePoint(Point3 position, SphereKind kind, double radius)
    : position_(position), kind_(kind), radius_(radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("sphere radius must be positive");
}

Point3 SpherePoint::center() const {
  return kind_ == SphereKind::riemann ? Point3{0.0, 0.0, radius_} : Point3{};
}

double SpherePoint::constraint_residual() const {
  return std::abs(norm(position_ - center()) - radius_) / radius_;
}

namespace {

void require_radius(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("sphere radius must be positive and finite");
}

}  // namespace

SpherePoint riemann_project(const Point2& p, double radius) {
  require_radius(radius);
  const double r = norm(p);
  const double four_r2 = 4.0 * radius * radius;
  if (r == 0.0) return SpherePoint({0.0, 0.0, 0.0}, SphereKind::riemann, radius);
  // Line from the north pole (0,0,2R) through (x,y,0) hits the sphere at
  // parameter t = 4R^2 / (r^2 + 4R^2).
  const double t = four_r2 / (r * r + four_r2);
  return SpherePoint({t * p.x, t * p.y, 2.0 * radius * (1.0 - t)}, SphereKind::riemann, radius);
}

double riemann_horizontal_map(double r, double radius) {
  const double four_r2 = 4.0 * radius * radius;
  return four_r2 * r / (four_r2 * r * r + 1.0);
}

SpherePoint riemann_project_inverted(const Point2& p, double radius) {
  require_radius(radius);
  if (p.x == 0.0 && p.y == 0.0)
    return SpherePoint({0.0, 0.0, 2.0 * radius}, SphereKind::riemann, radius);
  return riemann_project(invert_point(p), radius);
}

SpherePoint poincare_project(const Point2& p, double radius) {
  require_radius(radius);
  const double f = norm(p);
  const double s = std::sqrt(1.0 + radius * radius * f * f);
  const double h = radius / s;
  const double z = radius * radius * f / s;
  const double c = f > 0.0 ? p.x / f : 1.0;
  const double sn = f > 0.0 ? p.y / f : 0.0;
  return SpherePoint({h * c, h * sn, z}, SphereKind::poincare, radius);
}

Point2 disc_project(const SpherePoint& s) { return {s.position().x, s.position().y}; }

namespace {

template <typename Map>
SampledCurve project_planar(const SampledCurve& c, Map map, const std::string& tag) {
  std::vector<Point3> out;
  out.reserve(c.size());
  if (c.system() == CoordSystem::polar2) {
    // Keep the exact angle of each sample rather than re-deriving it.
    for (const auto& p : c.polar_points()) {
      const SpherePoint s = map(to_cartesian(p));
      const double h = s.horizontal_radius();
      out.push_back({h * std::cos(p.phi), h * std::sin(p.phi), s.position().z});
    }
  } else {
    for (const auto& p : c.planar_points()) out.push_back(map(p).position());
  }
  return SampledCurve::spatial(std::move(out), c.closed(),
                               c.source().empty() ? tag : c.source() + "|" + tag);
}

}  // namespace

SampledCurve riemann_project_curve(const SampledCurve& c, double radius) {
  return project_planar(c, [radius](const Point2& p) { return riemann_project(p, radius); },
                        "riemann");
}

SampledCurve poincare_project_curve(const SampledCurve& c, double radius) {
  return project_planar(c, [radius](const Point2& p) { return poincare_project(p, radius); },
                        "poincare");
}

SampledCurve disc_project_curve(const SampledCurve& sphere_curve) {
  std::vector<Point2> out;
  out.reserve(sphere_curve.size());
  for (const auto& p : sphere_curve.spatial_points()) {
    const Point2 q{p.x, p.y};
    if (out.empty() || !(out.back() == q)) out.push_back(q);
  }
  return SampledCurve::cartesian(std::move(out), sphere_curve.closed(),
                                 sphere_curve.source() + "|disc");
}

}  // namespace spiraldim
