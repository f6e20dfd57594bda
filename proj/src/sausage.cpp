#include "spiraldim/sausage.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <thread>

#include "spiraldim/errors.hpp"

namespace spiraldim {

void PlanarSet::add_polyline(std::vector<Point2> points, bool closed) {
  if (points.empty()) return;
  if (points.size() == 1) {
    points_.push_back(points.front());
    return;
  }
  polylines_.push_back(std::move(points));
  closed_.push_back(closed);
}

void PlanarSet::add_points(std::span<const Point2> points) {
  points_.insert(points_.end(), points.begin(), points.end());
}

void PlanarSet::add_disc(const Disc& disc) {
  if (!(disc.radius >= 0.0)) throw std::invalid_argument("disc radius must be nonnegative");
  discs_.push_back(disc);
}

void PlanarSet::add_annulus(const Annulus& annulus) {
  if (!(annulus.inner >= 0.0) || !(annulus.outer >= annulus.inner))
    throw std::invalid_argument("annulus radii must satisfy 0 <= inner <= outer");
  if (annulus.inner == 0.0) {
    discs_.push_back({annulus.center, annulus.outer});
    return;
  }
  annuli_.push_back(annulus);
}

void PlanarSet::append(const PlanarSet& other) {
  polylines_.insert(polylines_.end(), other.polylines_.begin(), other.polylines_.end());
  closed_.insert(closed_.end(), other.closed_.begin(), other.closed_.end());
  points_.insert(points_.end(), other.points_.begin(), other.points_.end());
  discs_.insert(discs_.end(), other.discs_.begin(), other.discs_.end());
  annuli_.insert(annuli_.end(), other.annuli_.begin(), other.annuli_.end());
}

bool PlanarSet::empty() const {
  return polylines_.empty() && points_.empty() && discs_.empty() && annuli_.empty();
}

std::size_t PlanarSet::primitive_count() const {
  std::size_t n = points_.size() + discs_.size() + annuli_.size();
  for (const auto& p : polylines_) n += p.size();
  return n;
}

std::pair<Point2, Point2> PlanarSet::bounds() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Point2 lo{inf, inf};
  Point2 hi{-inf, -inf};
  auto take = [&](const Point2& p, double pad) {
    lo.x = std::min(lo.x, p.x - pad);
    lo.y = std::min(lo.y, p.y - pad);
    hi.x = std::max(hi.x, p.x + pad);
    hi.y = std::max(hi.y, p.y + pad);
  };
  for (const auto& line : polylines_)
    for (const auto& p : line) take(p, 0.0);
  for (const auto& p : points_) take(p, 0.0);
  for (const auto& d : discs_) take(d.center, d.radius);
  for (const auto& a : annuli_) take(a.center, a.outer);
  return {lo, hi};
}

double PlanarSet::diameter_bound() const {
  if (empty()) return 0.0;
  const auto [lo, hi] = bounds();
  return norm(hi - lo);
}

PlanarSet PlanarSet::from_curve(const SampledCurve& curve) {
  PlanarSet set;
  set.add_polyline(curve.planar_points(), curve.closed());
  return set;
}

PlanarSet PlanarSet::from_points(std::span<const Point2> points) {
  PlanarSet set;
  set.add_points(points);
  return set;
}

// ---------------------------------------------------------------------------

namespace {

enum class PrimKind : unsigned char { segment, disc, annulus };

struct Prim {
  PrimKind kind;
  Point2 a;
  Point2 b;        // segment end
  double r0 = 0;   // disc radius / annulus inner
  double r1 = 0;   // annulus outer
  double ymin = 0; // raw extent, without eps
  double ymax = 0;
  double ux = 0;   // segment unit direction and length
  double uy = 0;
  double len = 0;
};

struct Interval {
  double lo;
  double hi;
  std::size_t src = 0;
};

bool by_lo(const Interval& l, const Interval& r) { return l.lo < r.lo; }

// Insertion sort with a fallback when the input is far from sorted.
void insertion_sort(std::vector<Interval>& v) {
  std::size_t budget = 16 * v.size() + 64;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const Interval x = v[i];
    std::size_t k = i;
    while (k > 0 && x.lo < v[k - 1].lo) {
      v[k] = v[k - 1];
      --k;
      if (--budget == 0) {
        v[k] = x;
        std::sort(v.begin(), v.end(), by_lo);
        return;
      }
    }
    v[k] = x;
  }
}

// Greedy simplification: drop vertices while every skipped vertex stays
// within `tolerance` of the replacing chord. Runs are capped so the cost is
// linear in the number of vertices.
std::vector<Point2> simplify(const std::vector<Point2>& line, double tolerance) {
  constexpr std::size_t max_run = 48;
  if (line.size() <= 2 || !(tolerance > 0.0)) return line;
  std::vector<Point2> out;
  out.reserve(line.size() / 4 + 2);
  out.push_back(line.front());
  std::size_t anchor = 0;
  while (anchor + 1 < line.size()) {
    std::size_t best = anchor + 1;
    for (std::size_t j = anchor + 2; j < line.size() && j - anchor <= max_run; ++j) {
      const Point2 d = line[j] - line[anchor];
      const double len = norm(d);
      bool ok = len > 0.0;
      for (std::size_t k = anchor + 1; ok && k < j; ++k) {
        const Point2 v = line[k] - line[anchor];
        const double t = dot(v, d) / (len * len);
        if (t < 0.0 || t > 1.0 || std::abs(v.x * d.y - v.y * d.x) / len > tolerance) ok = false;
      }
      if (!ok) break;
      best = j;
    }
    out.push_back(line[best]);
    anchor = best;
  }
  return out;
}

std::vector<Prim> flatten(const PlanarSet& set, double tolerance) {
  std::vector<Prim> prims;
  prims.reserve(set.primitive_count() + 1);
  auto add_segment = [&](const Point2& a, const Point2& b) {
    if (a == b) {
      prims.push_back({PrimKind::disc, a, a, 0.0, 0.0, a.y, a.y});
      return;
    }
    const Point2 d = b - a;
    const double len = norm(d);
    prims.push_back({PrimKind::segment, a, b, 0.0, 0.0, std::min(a.y, b.y), std::max(a.y, b.y),
                     d.x / len, d.y / len, len});
  };
  const auto& lines = set.polylines();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::vector<Point2> line = simplify(lines[i], tolerance);
    for (std::size_t k = 1; k < line.size(); ++k) add_segment(line[k - 1], line[k]);
    if (set.closed_flags()[i] && line.size() > 2) add_segment(line.back(), line.front());
  }
  for (const auto& p : set.points()) prims.push_back({PrimKind::disc, p, p, 0.0, 0.0, p.y, p.y});
  for (const auto& d : set.discs())
    prims.push_back({PrimKind::disc, d.center, d.center, d.radius, 0.0, d.center.y - d.radius,
                     d.center.y + d.radius});
  for (const auto& a : set.annuli())
    prims.push_back({PrimKind::annulus, a.center, a.center, a.inner, a.outer,
                     a.center.y - a.outer, a.center.y + a.outer});
  std::sort(prims.begin(), prims.end(),
            [](const Prim& l, const Prim& r) { return l.ymin < r.ymin; });
  return prims;
}

// x-range where c0 + c1 * x lies in [lo, hi]; returns false if empty.
bool linear_range(double c0, double c1, double lo, double hi, double& xl, double& xr) {
  if (std::abs(c1) < 1e-300) {
    if (c0 < lo || c0 > hi) return false;
    xl = -std::numeric_limits<double>::infinity();
    xr = std::numeric_limits<double>::infinity();
    return true;
  }
  double a = (lo - c0) / c1;
  double b = (hi - c0) / c1;
  if (a > b) std::swap(a, b);
  xl = a;
  xr = b;
  return true;
}

void disc_row(const Point2& c, double radius, double y, std::vector<Interval>& out) {
  const double dy = y - c.y;
  const double w2 = radius * radius - dy * dy;
  if (w2 < 0.0) return;
  const double w = std::sqrt(w2);
  out.push_back({c.x - w, c.x + w, 0});
}

void segment_row(const Prim& s, double eps, double y, std::vector<Interval>& out) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto cap = [&](const Point2& c) {
    const double dy = y - c.y;
    const double w2 = eps * eps - dy * dy;
    if (w2 < 0.0) return;
    const double w = std::sqrt(w2);
    lo = std::min(lo, c.x - w);
    hi = std::max(hi, c.x + w);
  };
  cap(s.a);
  cap(s.b);
  const double len = s.len;
  const double ux = s.ux;
  const double uy = s.uy;
  const double dy = y - s.a.y;
  // Along-segment coordinate t = x' ux + dy uy, normal coordinate
  // n = -x' uy + dy ux, with x' = x - a.x.
  double tl, tr, nl, nr;
  if (linear_range(dy * uy, ux, 0.0, len, tl, tr) &&
      linear_range(dy * ux, -uy, -eps, eps, nl, nr)) {
    const double l = std::max(tl, nl);
    const double r = std::min(tr, nr);
    if (l <= r) {
      lo = std::min(lo, s.a.x + l);
      hi = std::max(hi, s.a.x + r);
    }
  }
  if (lo <= hi) out.push_back({lo, hi, 0});
}

void annulus_row(const Prim& a, double eps, double y, std::vector<Interval>& out) {
  const double outer = a.r1 + eps;
  const double inner = a.r0 - eps;
  const double dy = y - a.a.y;
  const double wo2 = outer * outer - dy * dy;
  if (wo2 < 0.0) return;
  const double wo = std::sqrt(wo2);
  const double wi2 = inner > 0.0 ? inner * inner - dy * dy : -1.0;
  if (wi2 <= 0.0) {
    out.push_back({a.a.x - wo, a.a.x + wo, 0});
    return;
  }
  const double wi = std::sqrt(wi2);
  out.push_back({a.a.x - wo, a.a.x - wi, 0});
  out.push_back({a.a.x + wi, a.a.x + wo, 0});
}

double sweep(const std::vector<Prim>& prims, double eps, const SausageOptions& options) {
  if (prims.empty()) return 0.0;
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be positive");
  double ylo = std::numeric_limits<double>::infinity();
  double yhi = -ylo;
  for (const auto& p : prims) {
    ylo = std::min(ylo, p.ymin - eps);
    yhi = std::max(yhi, p.ymax + eps);
  }
  const double h = eps / options.cells_per_eps;
  const double rows_d = std::ceil((yhi - ylo) / h);
  if (rows_d > static_cast<double>(options.max_rows)) {
    std::ostringstream msg;
    msg << "eps = " << eps << " needs " << rows_d << " raster rows, over the budget of "
        << options.max_rows << "; raise eps_min or shrink the set";
    throw ResourceError(msg.str());
  }
  const auto rows = static_cast<std::size_t>(rows_d);

  // The active list is kept ordered by the left end of each primitive's
  // interval on the previous row. Consecutive rows change that order only
  // locally, so an insertion sort restores it in near-linear time.
  std::vector<std::size_t> active;
  std::vector<Interval> intervals;
  std::vector<Interval> fresh;
  std::vector<std::size_t> order;
  std::vector<std::size_t> stamp(prims.size(), 0);
  std::size_t next = 0;
  double total = 0.0;
  auto emit = [&](std::size_t index, double y, std::vector<Interval>& out) {
    const Prim& p = prims[index];
    const std::size_t before = out.size();
    switch (p.kind) {
      case PrimKind::segment: segment_row(p, eps, y, out); break;
      case PrimKind::disc: disc_row(p.a, p.r0 + eps, y, out); break;
      case PrimKind::annulus: annulus_row(p, eps, y, out); break;
    }
    for (std::size_t k = before; k < out.size(); ++k) out[k].src = index;
    return out.size() > before;
  };
  for (std::size_t j = 0; j < rows; ++j) {
    const double y = ylo + (static_cast<double>(j) + 0.5) * h;
    if (active.empty() && next < prims.size()) {
      // Skip empty rows up to the next primitive.
      const double start = prims[next].ymin - eps;
      if (start > y) {
        const double first = std::ceil((start - ylo) / h - 0.5);
        if (first - 1.0 > static_cast<double>(j)) {
          j = static_cast<std::size_t>(first) - 1;
          continue;  // the loop increment lands on the first candidate row
        }
      }
    }
    intervals.clear();
    order.clear();
    std::size_t kept = 0;
    for (std::size_t index : active) {
      if (prims[index].ymax + eps < y) continue;
      active[kept++] = index;
      if (!emit(index, y, intervals)) order.push_back(index);
    }
    active.resize(kept);
    insertion_sort(intervals);
    fresh.clear();
    while (next < prims.size() && prims[next].ymin - eps <= y) {
      if (!emit(next, y, fresh)) order.push_back(next);
      ++next;
    }
    if (!fresh.empty()) {
      std::sort(fresh.begin(), fresh.end(), by_lo);
      const auto mid = static_cast<std::ptrdiff_t>(intervals.size());
      intervals.insert(intervals.end(), fresh.begin(), fresh.end());
      std::inplace_merge(intervals.begin(), intervals.begin() + mid, intervals.end(), by_lo);
    }
    // Rebuild the active list in interval order; primitives that produced
    // nothing on this row go last.
    const std::size_t tag = j + 1;
    const std::size_t silent = order.size();
    for (const Interval& iv : intervals) {
      if (stamp[iv.src] == tag) continue;
      stamp[iv.src] = tag;
      order.push_back(iv.src);
    }
    std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(silent), order.end());
    active.swap(order);
    if (intervals.empty()) continue;
    double cur_lo = intervals.front().lo;
    double cur_hi = intervals.front().hi;
    double covered = 0.0;
    for (std::size_t k = 1; k < intervals.size(); ++k) {
      if (intervals[k].lo > cur_hi) {
        covered += cur_hi - cur_lo;
        cur_lo = intervals[k].lo;
        cur_hi = intervals[k].hi;
      } else {
        cur_hi = std::max(cur_hi, intervals[k].hi);
      }
    }
    covered += cur_hi - cur_lo;
    total += covered * h;
  }
  return total;
}

void check_eps_list(std::span<const double> eps_list) {
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0) || !std::isfinite(eps_list[i]))
      throw std::invalid_argument("eps values must be positive and finite");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      throw std::invalid_argument("eps values must be strictly decreasing");
  }
}

}  // namespace

double sausage_area(const PlanarSet& set, double eps, const SausageOptions& options) {
  return sweep(flatten(set, eps * options.simplify_fraction), eps, options);
}

SausageProfile sausage_areas(const PlanarSet& set, std::span<const double> eps_list,
                             const SausageOptions& options) {
  check_eps_list(eps_list);
  if (set.empty()) throw std::invalid_argument("sausage of an empty set");
  SausageProfile profile;
  profile.eps.assign(eps_list.begin(), eps_list.end());
  profile.area.assign(eps_list.size(), 0.0);
  auto run = [&set, &options](double eps) {
    return sweep(flatten(set, eps * options.simplify_fraction), eps, options);
  };
  const unsigned workers = options.parallel ? std::thread::hardware_concurrency() : 1;
  if (workers <= 1 || eps_list.size() < 2) {
    for (std::size_t i = 0; i < eps_list.size(); ++i) profile.area[i] = run(eps_list[i]);
    return profile;
  }
  std::vector<std::future<double>> jobs;
  jobs.reserve(eps_list.size());
  for (double eps : eps_list) jobs.push_back(std::async(std::launch::async, run, eps));
  for (std::size_t i = 0; i < jobs.size(); ++i) profile.area[i] = jobs[i].get();
  return profile;
}

double max_chord_sagitta(std::span<const Point2> points) {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < points.size(); ++i) {
    const Point2 u = points[i] - points[i - 1];
    const Point2 v = points[i + 1] - points[i];
    const Point2 w = points[i + 1] - points[i - 1];
    const double lu = norm(u), lv = norm(v), lw = norm(w);
    if (lu == 0.0 || lv == 0.0 || lw == 0.0) continue;
    // Menger curvature of the vertex triple.
    const double kappa = 2.0 * std::abs(u.x * v.y - u.y * v.x) / (lu * lv * lw);
    const double chord = std::max(lu, lv);
    worst = std::max(worst, chord * chord * kappa / 8.0);
  }
  return worst;
}

SausageProfile sausage_areas(const SampledCurve& curve, std::span<const double> eps_list,
                             const SausageOptions& options) {
  if (!curve.is_planar()) throw std::invalid_argument("sausage_areas needs a planar curve");
  check_eps_list(eps_list);
  if (eps_list.empty()) return {};
  const std::vector<Point2> pts = curve.planar_points();
  const double eps_min = eps_list.back();
  const double tolerance = eps_min / options.cells_per_eps;
  const double sag = max_chord_sagitta(pts);
  if (sag > tolerance) {
    std::ostringstream msg;
    msg << "under-sampled curve: chord sagitta " << sag << " exceeds " << tolerance
        << " (eps_min / " << options.cells_per_eps
        << "); resample with a chord sagitta tolerance of at most " << tolerance;
    throw PreconditionError(msg.str());
  }
  PlanarSet set;
  set.add_polyline(pts, curve.closed());
  return sausage_areas(set, eps_list, options);
}

}  // namespace spiraldim
