#include "spiraldim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace spiraldim {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  return out;
}

std::vector<double> split_numbers(const std::string& line, std::size_t lineno) {
  std::vector<double> v;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      v.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw std::invalid_argument("curve CSV line " + std::to_string(lineno) + ": not a number: " + cell);
    }
  }
  return v;
}

}  // namespace

void write_curve_csv(std::ostream& out, const SampledCurve& curve) {
  out << "coord_system," << to_string(curve.system()) << (curve.closed() ? ",closed" : "") << "\n";
  switch (curve.system()) {
    case CoordSystem::cartesian2:
      out << "x,y\n";
      for (const auto& p : curve.cartesian_points()) out << fmt(p.x) << "," << fmt(p.y) << "\n";
      break;
    case CoordSystem::polar2:
      out << "r,phi\n";
      for (const auto& p : curve.polar_points()) out << fmt(p.r) << "," << fmt(p.phi) << "\n";
      break;
    case CoordSystem::cartesian3:
      out << "x,y,z\n";
      for (const auto& p : curve.spatial_points())
        out << fmt(p.x) << "," << fmt(p.y) << "," << fmt(p.z) << "\n";
      break;
  }
}

void write_curve_csv(const std::string& path, const SampledCurve& curve) {
  auto out = open_out(path);
  write_curve_csv(out, curve);
}

SampledCurve read_curve_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty curve CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::stringstream head(line);
  std::string key, name, flag;
  std::getline(head, key, ',');
  std::getline(head, name, ',');
  std::getline(head, flag, ',');
  if (key != "coord_system") throw std::invalid_argument("curve CSV must start with a coord_system line");
  const CoordSystem system = coord_system_from_string(name);
  const bool closed = flag == "closed";
  if (!std::getline(in, line)) throw std::invalid_argument("curve CSV has no column header");

  const std::size_t width = system == CoordSystem::cartesian3 ? 3 : 2;
  std::vector<Point2> xy;
  std::vector<PolarPoint> polar;
  std::vector<Point3> xyz;
  std::size_t lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto v = split_numbers(line, lineno);
    if (v.size() != width)
      throw std::invalid_argument("curve CSV line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(width) + " values");
    if (system == CoordSystem::cartesian2) xy.push_back({v[0], v[1]});
    if (system == CoordSystem::polar2) polar.push_back({v[0], v[1]});
    if (system == CoordSystem::cartesian3) xyz.push_back({v[0], v[1], v[2]});
  }
  switch (system) {
    case CoordSystem::cartesian2: return SampledCurve::cartesian(std::move(xy), closed, source);
    case CoordSystem::polar2: return SampledCurve::polar(std::move(polar), closed, source);
    case CoordSystem::cartesian3: break;
  }
  return SampledCurve::spatial(std::move(xyz), closed, source);
}

SampledCurve read_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_curve_csv(in, path);
}

void write_profile_csv(std::ostream& out, const SausageProfile& profile) {
  out << "eps,area\n";
  for (std::size_t i = 0; i < profile.eps.size(); ++i)
    out << fmt(profile.eps[i]) << "," << fmt(profile.area[i]) << "\n";
}

void write_profile_csv(const std::string& path, const SausageProfile& profile) {
  auto out = open_out(path);
  write_profile_csv(out, profile);
}

}  // namespace spiraldim
