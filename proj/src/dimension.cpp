#include "spiraldim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "spiraldim/errors.hpp"
#include "spiraldim/regression.hpp"

namespace spiraldim {

std::string to_string(DimensionMethod method) {
  return method == DimensionMethod::sausage_grid ? "sausage_grid" : "box_count";
}

std::vector<double> eps_schedule(double eps_max, double eps_min, double ratio) {
  if (!(eps_max > eps_min) || !(eps_min > 0.0))
    throw std::invalid_argument("eps_schedule needs eps_max > eps_min > 0");
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("eps ratio must be in (0,1)");
  std::vector<double> out;
  const int steps = static_cast<int>(std::floor(std::log(eps_min / eps_max) / std::log(ratio) + 1e-9));
  for (int i = 0; i <= steps; ++i) out.push_back(eps_max * std::pow(ratio, i));
  if (out.back() > eps_min * (1.0 + 1e-9)) out.push_back(eps_min);
  return out;
}

std::vector<double> eps_schedule_count(double eps_max, int count, double ratio) {
  if (!(eps_max > 0.0) || count < 1) throw std::invalid_argument("eps_schedule_count: bad arguments");
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("eps ratio must be in (0,1)");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(eps_max * std::pow(ratio, i));
  return out;
}

std::vector<double> default_eps_schedule(double diameter) {
  if (!(diameter > 0.0)) throw std::invalid_argument("default_eps_schedule needs a positive diameter");
  return eps_schedule_count(diameter / 10.0, 12);
}

// ---------------------------------------------------------------------------
// Nucleus condensing.

namespace {

// Linear interpolation of r at angle t on a polar polyline with increasing phi.
double radius_at(const std::vector<PolarPoint>& pts, double t) {
  auto it = std::lower_bound(pts.begin(), pts.end(), t,
                             [](const PolarPoint& p, double v) { return p.phi < v; });
  if (it == pts.begin()) return it->r;
  if (it == pts.end()) return pts.back().r;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (t - lo.phi) / (hi.phi - lo.phi);
  return lo.r + w * (hi.r - lo.r);
}

}  // namespace

PlanarSet condense_spiral(const SampledCurve& curve, const Accumulation& accumulation,
                          double gap, CondenseReport* report) {
  CondenseReport local;
  CondenseReport& rep = report ? *report : local;
  rep = {};
  PlanarSet set;
  if (accumulation.kind == Accumulation::Kind::none || !curve.is_planar()) {
    set.add_polyline(curve.planar_points(), curve.closed());
    rep.kept_points = curve.size();
    rep.note = "no accumulation set";
    return set;
  }
  const Point2 c = accumulation.center;
  const double a = accumulation.kind == Accumulation::Kind::circle ? accumulation.radius : 0.0;

  // Polar form about the accumulation centre, ordered towards the nucleus.
  std::vector<PolarPoint> pts;
  if (curve.system() == CoordSystem::polar2 && c == Point2{}) {
    const auto span = curve.polar_points();
    pts.assign(span.begin(), span.end());
  } else {
    std::vector<Point2> shifted = curve.planar_points();
    for (auto& p : shifted) p -= c;
    pts = SampledCurve::cartesian(std::move(shifted)).to_polar();
  }
  if (std::abs(pts.back().r - a) > std::abs(pts.front().r - a)) std::reverse(pts.begin(), pts.end());
  const bool increasing = pts.back().phi > pts.front().phi;
  if (!increasing)
    for (auto& p : pts) p.phi = -p.phi;  // mirror so phi increases towards the nucleus
  bool monotone = true;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i].phi > pts[i - 1].phi)) monotone = false;

  auto emit = [&](std::size_t count) {
    std::vector<Point2> xy;
    xy.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double phi = increasing ? pts[i].phi : -pts[i].phi;
      xy.push_back(c + Point2{pts[i].r * std::cos(phi), pts[i].r * std::sin(phi)});
    }
    set.add_polyline(std::move(xy));
    rep.kept_points = count;
  };

  const double two_pi = 2.0 * std::numbers::pi;
  const double phi_end = pts.back().phi;
  if (!monotone || phi_end - pts.front().phi < 2.0 * two_pi) {
    emit(pts.size());
    if (accumulation.kind == Accumulation::Kind::point) set.add_points(std::span(&c, 1));
    rep.note = monotone ? "fewer than two turns; accumulation point appended"
                        : "angle not monotone about the accumulation centre";
    return set;
  }

  // Spacing to the next turn, for samples with a full turn after them.
  std::size_t last_wide = std::numeric_limits<std::size_t>::max();
  std::size_t last_valid = 0;
  for (std::size_t i = 0; i < pts.size() && pts[i].phi + two_pi <= phi_end; ++i) {
    last_valid = i;
    const double spacing = std::abs(pts[i].r - radius_at(pts, pts[i].phi + two_pi));
    if (spacing >= gap) last_wide = i;
  }
  const std::size_t cut = last_wide == std::numeric_limits<std::size_t>::max() ? 0 : last_wide + 1;
  if (cut > last_valid) {
    emit(pts.size());
    if (accumulation.kind == Accumulation::Kind::point) set.add_points(std::span(&c, 1));
    rep.note = "turns never closer than the gap; accumulation point appended";
    return set;
  }
  // Keep the arm through one full turn past the cut so the core boundary is
  // traced by the curve itself.
  const double keep_phi = pts[cut].phi + two_pi;
  std::size_t keep = cut;
  while (keep < pts.size() && pts[keep].phi <= keep_phi) ++keep;
  double inner = a, outer = a;
  for (std::size_t i = std::min(keep, pts.size() - 1); i < pts.size(); ++i) {
    inner = std::min(inner, pts[i].r);
    outer = std::max(outer, pts[i].r);
  }
  emit(std::min(keep + 1, pts.size()));
  set.add_annulus({c, inner, outer});
  rep.condensed = true;
  rep.cut_angle = increasing ? pts[cut].phi : -pts[cut].phi;
  rep.core_inner = inner;
  rep.core_outer = outer;
  return set;
}

PlanarSet condense_sequence(std::span<const Point2> points, const Point2& accumulation,
                            double gap, CondenseReport* report) {
  CondenseReport local;
  CondenseReport& rep = report ? *report : local;
  rep = {};
  PlanarSet set;
  if (points.empty()) return set;
  std::vector<Point2> pts(points.begin(), points.end());
  if (norm(pts.back() - accumulation) > norm(pts.front() - accumulation))
    std::reverse(pts.begin(), pts.end());
  std::size_t cut = pts.size();
  for (std::size_t i = pts.size() - 1; i > 0; --i) {
    if (norm(pts[i] - pts[i - 1]) >= gap) break;
    cut = i - 1;
  }
  if (cut + 1 >= pts.size()) {
    set.add_points(pts);
    set.add_points(std::span(&accumulation, 1));
    rep.kept_points = pts.size();
    rep.note = "sequence never tighter than the gap; accumulation point appended";
    return set;
  }
  set.add_points(std::span(pts.data(), cut));
  std::vector<Point2> tail(pts.begin() + static_cast<std::ptrdiff_t>(cut), pts.end());
  if (norm(tail.back() - accumulation) > 0.0) tail.push_back(accumulation);
  set.add_polyline(std::move(tail));
  rep.condensed = true;
  rep.kept_points = cut;
  rep.core_outer = norm(pts[cut] - accumulation);
  return set;
}

// ---------------------------------------------------------------------------

DimensionEstimate fit_dimension(const SausageProfile& profile, int ambient_dim) {
  if (profile.eps.size() != profile.area.size())
    throw std::invalid_argument("fit_dimension: malformed profile");
  if (profile.size() < 5) throw PreconditionError("fit_dimension needs at least 5 scales");
  for (double a : profile.area)
    if (!(a > 0.0) || !std::isfinite(a))
      throw NumericalError("fit_dimension: degenerate profile (non-positive area)");
  const LinearFit fit = fit_log_log(profile.eps, profile.area);
  DimensionEstimate est;
  est.slope = fit.slope;
  est.slope_stderr = fit.slope_stderr;
  est.dimension = ambient_dim - fit.slope;
  est.r_squared = fit.r_squared;
  est.eps_max = *std::max_element(profile.eps.begin(), profile.eps.end());
  est.eps_min = *std::min_element(profile.eps.begin(), profile.eps.end());
  est.num_scales = static_cast<int>(profile.size());
  est.ambient_dim = ambient_dim;
  est.method = DimensionMethod::sausage_grid;
  est.profile = profile;
  std::vector<double> ratios;
  for (std::size_t i = 0; i < profile.size(); ++i)
    ratios.push_back(profile.area[i] / std::pow(profile.eps[i], ambient_dim - est.dimension));
  est.content_at_d = median(ratios);
  if (est.r_squared < 0.98) {
    std::ostringstream msg;
    msg << "warning: log-log fit r^2 = " << est.r_squared << " < 0.98";
    est.diagnostics.push_back(msg.str());
  }
  if (est.dimension < -0.1 || est.dimension > ambient_dim + 0.1)
    est.diagnostics.push_back("warning: dimension outside [0, ambient_dim]");
  return est;
}

namespace {

double gap_for(std::span<const double> eps_list, const EstimatorOptions& options) {
  if (eps_list.empty()) throw std::invalid_argument("empty eps list");
  return options.core_gap_fraction * *std::min_element(eps_list.begin(), eps_list.end());
}

void check_sampling(const SampledCurve& curve, std::span<const double> eps_list,
                    const SausageOptions& options) {
  const double eps_min = *std::min_element(eps_list.begin(), eps_list.end());
  const double tolerance = eps_min / options.cells_per_eps;
  const double sag = max_chord_sagitta(curve.planar_points());
  if (sag > tolerance) {
    std::ostringstream msg;
    msg << "under-sampled curve: chord sagitta " << sag << " exceeds " << tolerance
        << "; resample with a sagitta tolerance of at most eps_min / "
        << options.cells_per_eps;
    throw PreconditionError(msg.str());
  }
}

}  // namespace

DimensionEstimate dim_bounded(const PlanarSet& set, std::span<const double> eps_list,
                              const SausageOptions& options) {
  return fit_dimension(sausage_areas(set, eps_list, options), 2);
}

DimensionEstimate dim_bounded(const SampledCurve& curve, std::span<const double> eps_list,
                              const EstimatorOptions& options) {
  check_sampling(curve, eps_list, options.sausage);
  CondenseReport report;
  const PlanarSet set = condense_spiral(curve, options.accumulation, gap_for(eps_list, options), &report);
  DimensionEstimate est = dim_bounded(set, eps_list, options.sausage);
  if (!report.note.empty()) est.diagnostics.push_back("nucleus: " + report.note);
  return est;
}

DimensionEstimate dim_unbounded(const SampledCurve& curve, std::span<const double> eps_list,
                                const EstimatorOptions& options) {
  EstimatorOptions inverted_options = options;
  if (options.accumulation.kind != Accumulation::Kind::none)
    inverted_options.accumulation = Accumulation::at_point();
  return dim_bounded(invert_curve(curve), eps_list, inverted_options);
}

DimensionEstimate dim_unbounded_about(const SampledCurve& curve, const Point2& center,
                                      std::span<const double> eps_list,
                                      const EstimatorOptions& options) {
  std::vector<Point2> pts = curve.planar_points();
  for (auto& p : pts) p = invert_point_about(p, center);
  EstimatorOptions inverted_options = options;
  if (options.accumulation.kind != Accumulation::Kind::none)
    inverted_options.accumulation = Accumulation::at_point();
  return dim_bounded(SampledCurve::cartesian(std::move(pts), curve.closed(), "inverted"),
                     eps_list, inverted_options);
}

DimensionEstimate dim_unbounded_points(std::span<const Point2> points,
                                       std::span<const double> eps_list,
                                       const EstimatorOptions& options) {
  if (points.empty()) throw std::invalid_argument("dim_unbounded_points: empty input");
  std::vector<Point2> inv;
  inv.reserve(points.size());
  for (const auto& p : points) inv.push_back(invert_point(p));
  PlanarSet set;
  if (options.accumulation.kind == Accumulation::Kind::none) {
    set.add_points(inv);
  } else {
    set = condense_sequence(inv, Point2{}, gap_for(eps_list, options));
  }
  return dim_bounded(set, eps_list, options.sausage);
}

GeneralEstimate dim_general(std::span<const SampledCurve> pieces,
                            std::span<const double> eps_list,
                            const EstimatorOptions& options) {
  if (pieces.empty()) throw std::invalid_argument("dim_general: empty input");
  const double gap = gap_for(eps_list, options);
  PlanarSet inner_set;
  PlanarSet outer_set;
  // Each piece is split into maximal runs inside / outside the unit disc.
  for (const auto& piece : pieces) {
    const std::vector<Point2> pts = piece.planar_points();
    std::vector<Point2> run;
    bool run_inside = norm(pts.front()) < 1.0;
    auto flush = [&] {
      if (run.empty()) return;
      if (run_inside) {
        if (run.size() >= 2) {
          inner_set.append(condense_spiral(SampledCurve::cartesian(run), options.accumulation, gap));
        } else {
          inner_set.add_points(run);
        }
      } else {
        std::vector<Point2> inv;
        inv.reserve(run.size());
        for (const auto& p : run) inv.push_back(invert_point(p));
        if (inv.size() >= 2) {
          outer_set.append(condense_spiral(SampledCurve::cartesian(std::move(inv)),
                                           Accumulation::at_point(), gap));
        } else {
          outer_set.add_points(inv);
        }
      }
      run.clear();
    };
    for (const auto& p : pts) {
      const bool inside = norm(p) < 1.0;
      if (inside != run_inside) {
        flush();
        run_inside = inside;
      }
      run.push_back(p);
    }
    flush();
  }
  GeneralEstimate out;
  if (!inner_set.empty()) out.inner = dim_bounded(inner_set, eps_list, options.sausage);
  if (!outer_set.empty()) out.outer = dim_bounded(outer_set, eps_list, options.sausage);
  if (out.inner && out.outer) {
    out.combined = out.inner->dimension >= out.outer->dimension ? *out.inner : *out.outer;
    out.combined.diagnostics.push_back(out.inner->dimension >= out.outer->dimension
                                           ? "max attained by the bounded part"
                                           : "max attained by the inverted unbounded part");
  } else {
    out.combined = out.inner ? *out.inner : *out.outer;
  }
  return out;
}

// ---------------------------------------------------------------------------

MinkowskiContent minkowski_content(const PlanarSet& set, double d,
                                   std::span<const double> eps_list,
                                   const SausageOptions& options) {
  if (!(d > 0.0 && d <= 2.0)) throw std::invalid_argument("minkowski_content needs d in (0, 2]");
  const SausageProfile profile = sausage_areas(set, eps_list, options);
  MinkowskiContent out;
  out.d = d;
  for (std::size_t i = 0; i < profile.size(); ++i)
    out.ratios.push_back(profile.area[i] / std::pow(profile.eps[i], 2.0 - d));
  out.value = median(out.ratios);
  const auto [lo, hi] = std::minmax_element(out.ratios.begin(), out.ratios.end());
  out.spread = *hi / *lo;
  return out;
}

MinkowskiContent minkowski_content(const SampledCurve& curve, double d,
                                   std::span<const double> eps_list,
                                   const EstimatorOptions& options) {
  if (!(d > 0.0 && d <= 2.0)) throw std::invalid_argument("minkowski_content needs d in (0, 2]");
  check_sampling(curve, eps_list, options.sausage);
  const PlanarSet set = condense_spiral(curve, options.accumulation, gap_for(eps_list, options));
  return minkowski_content(set, d, eps_list, options.sausage);
}

MinkowskiContent minkowski_content_unbounded(const SampledCurve& curve, double d,
                                             std::span<const double> eps_list,
                                             const EstimatorOptions& options) {
  EstimatorOptions inverted_options = options;
  if (options.accumulation.kind != Accumulation::Kind::none)
    inverted_options.accumulation = Accumulation::at_point();
  return minkowski_content(invert_curve(curve), d, eps_list, inverted_options);
}

// ---------------------------------------------------------------------------
// Box counting.

namespace {

struct IndexRange {
  long long lo;
  long long hi;
};

void add_range(double xl, double xr, double x0, double eps, std::vector<IndexRange>& out) {
  if (xl > xr) return;
  out.push_back({static_cast<long long>(std::floor((xl - x0) / eps)),
                 static_cast<long long>(std::floor((xr - x0) / eps))});
}

double count_boxes(const PlanarSet& set, double eps) {
  const auto [lo, hi] = set.bounds();
  const double x0 = lo.x;
  const double y0 = lo.y;
  const auto rows = static_cast<long long>(std::floor((hi.y - y0) / eps)) + 1;
  std::vector<std::vector<IndexRange>> per_row(static_cast<std::size_t>(rows));
  auto row_of = [&](double y) {
    return std::clamp(static_cast<long long>(std::floor((y - y0) / eps)), 0LL, rows - 1);
  };
  auto segment = [&](const Point2& a, const Point2& b) {
    const long long r0 = row_of(std::min(a.y, b.y));
    const long long r1 = row_of(std::max(a.y, b.y));
    for (long long r = r0; r <= r1; ++r) {
      const double ya = y0 + static_cast<double>(r) * eps;
      const double yb = ya + eps;
      double t0 = 0.0, t1 = 1.0;
      const double dy = b.y - a.y;
      if (dy != 0.0) {
        double ta = (ya - a.y) / dy, tb = (yb - a.y) / dy;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1) continue;
      }
      const double xa = a.x + t0 * (b.x - a.x);
      const double xb = a.x + t1 * (b.x - a.x);
      add_range(std::min(xa, xb), std::max(xa, xb), x0, eps, per_row[static_cast<std::size_t>(r)]);
    }
  };
  for (std::size_t i = 0; i < set.polylines().size(); ++i) {
    const auto& line = set.polylines()[i];
    for (std::size_t k = 1; k < line.size(); ++k) segment(line[k - 1], line[k]);
    if (set.closed_flags()[i] && line.size() > 2) segment(line.back(), line.front());
  }
  for (const auto& p : set.points()) segment(p, p);
  auto round_region = [&](const Point2& c, double inner, double outer) {
    const long long r0 = row_of(c.y - outer);
    const long long r1 = row_of(c.y + outer);
    for (long long r = r0; r <= r1; ++r) {
      const double ya = y0 + static_cast<double>(r) * eps;
      const double yb = ya + eps;
      const double dmin = (c.y >= ya && c.y <= yb) ? 0.0 : std::min(std::abs(ya - c.y), std::abs(yb - c.y));
      const double dmax = std::max(std::abs(ya - c.y), std::abs(yb - c.y));
      if (dmin > outer) continue;
      const double wo = std::sqrt(outer * outer - dmin * dmin);
      auto& row = per_row[static_cast<std::size_t>(r)];
      if (inner <= dmax) {
        add_range(c.x - wo, c.x + wo, x0, eps, row);
        continue;
      }
      const double wh = std::sqrt(inner * inner - dmax * dmax);
      // Boxes strictly inside the hole are skipped.
      const auto lo_box = static_cast<long long>(std::floor((c.x - wo - x0) / eps));
      const auto hole_lo = static_cast<long long>(std::ceil((c.x - wh - x0) / eps));
      const auto hole_hi = static_cast<long long>(std::floor((c.x + wh - x0) / eps)) - 1;
      const auto hi_box = static_cast<long long>(std::floor((c.x + wo - x0) / eps));
      if (hole_lo > hole_hi) {
        row.push_back({lo_box, hi_box});
      } else {
        row.push_back({lo_box, hole_lo - 1});
        row.push_back({hole_hi + 1, hi_box});
      }
    }
  };
  for (const auto& d : set.discs()) round_region(d.center, 0.0, d.radius);
  for (const auto& a : set.annuli()) round_region(a.center, a.inner, a.outer);

  double total = 0.0;
  for (auto& row : per_row) {
    if (row.empty()) continue;
    std::sort(row.begin(), row.end(), [](const IndexRange& l, const IndexRange& r) { return l.lo < r.lo; });
    long long cur_lo = row.front().lo, cur_hi = row.front().hi;
    for (std::size_t k = 1; k < row.size(); ++k) {
      if (row[k].lo > cur_hi + 1) {
        total += static_cast<double>(cur_hi - cur_lo + 1);
        cur_lo = row[k].lo;
        cur_hi = row[k].hi;
      } else {
        cur_hi = std::max(cur_hi, row[k].hi);
      }
    }
    total += static_cast<double>(cur_hi - cur_lo + 1);
  }
  return total;
}

}  // namespace

std::vector<double> box_counts(const PlanarSet& set, std::span<const double> eps_list) {
  if (set.empty()) throw std::invalid_argument("box_counts of an empty set");
  std::vector<double> out;
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps values must be positive");
    out.push_back(count_boxes(set, eps));
  }
  return out;
}

DimensionEstimate dim_box_count(const PlanarSet& set, std::span<const double> eps_list) {
  if (eps_list.size() < 5) throw PreconditionError("dim_box_count needs at least 5 scales");
  const std::vector<double> counts = box_counts(set, eps_list);
  const LinearFit fit = fit_log_log(eps_list, counts);
  DimensionEstimate est;
  est.slope = fit.slope;
  est.slope_stderr = fit.slope_stderr;
  est.dimension = -fit.slope;
  est.r_squared = fit.r_squared;
  est.eps_max = *std::max_element(eps_list.begin(), eps_list.end());
  est.eps_min = *std::min_element(eps_list.begin(), eps_list.end());
  est.num_scales = static_cast<int>(eps_list.size());
  est.method = DimensionMethod::box_count;
  if (est.r_squared < 0.98) est.diagnostics.push_back("warning: log-log fit r^2 < 0.98");
  return est;
}

}  // namespace spiraldim
