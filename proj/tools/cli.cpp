#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "spiraldim/analytic.hpp"
#include "spiraldim/dimension.hpp"
#include "spiraldim/errors.hpp"
#include "spiraldim/field.hpp"
#include "spiraldim/integrate.hpp"
#include "spiraldim/io.hpp"
#include "spiraldim/pipeline.hpp"
#include "spiraldim/polar_system.hpp"
#include "spiraldim/strings.hpp"

namespace spiraldim::cli {

namespace fs = std::filesystem;

json global_defaults() {
  return {{"out", "."}, {"eps_max", 1e-2}, {"eps_min", 1e-4}, {"scales", 0}, {"seed", 1}};
}

json command_defaults(const std::string& command) {
  if (command == "spiral")
    return {{"kind", "power"},     {"alpha", 0.25},      {"outward", false},   {"rate", 1.0},
            {"radius", 1.0},       {"multiplicity", 2},  {"beta", nullptr},    {"side", 1},
            {"coefficient", 1.0},  {"phi_start", 1.0},   {"phi_max", 500.0},   {"max_gap", 1e-3},
            {"invert", false},     {"riemann", nullptr}, {"poincare", nullptr}, {"disc", false},
            {"estimate", false},   {"name", "spiral"}};
  if (command == "integrate")
    return {{"system", nullptr}, {"rho0", 0.5},      {"phi_span", 200.0}, {"step", 0.01},
            {"x0", {1.0, 0.0}},  {"t_span", 1e6},    {"revolutions", 200.0}, {"max_step", 0.05},
            {"invert", false},   {"name", "trajectory"}};
  if (command == "dim")
    return {{"curve", nullptr},    {"system", nullptr},  {"sequence", nullptr}, {"unbounded", false},
            {"points", false},     {"accumulation", "point"}, {"center", {0.0, 0.0}},
            {"radius", 0.0},       {"oracle", nullptr},  {"arc", "auto"},      {"x0", {1.0, 0.0}},
            {"max_revolutions", 5000.0}, {"phi_budget", 60000.0}, {"name", "dim"}};
  if (command == "sweep")
    return {{"family", "hopf_inverted"}, {"k", 1}, {"l", 2}, {"a", {0.0, -2.0}}, {"index", 0},
            {"grid", {-0.04, 0.0, 0.04}}, {"phi_budget", 60000.0}, {"name", "sweep"}};
  if (command == "string")
    return {{"generator", "power"}, {"alpha", 1.0}, {"ratio", 2.0}, {"n", 100000},
            {"csv", nullptr},       {"geometric", false}, {"gaps", false}, {"name", "string"}};
  if (command == "oracle")
    return {{"formula", nullptr}, {"k", nullptr},  {"m", nullptr},  {"alpha", nullptr},
            {"beta", nullptr},    {"d1", nullptr}, {"d2", nullptr}, {"count", 10}};
  throw std::invalid_argument("unknown command '" + command + "'");
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"spiral", "integrate", "dim", "sweep", "string", "oracle"};
  return names;
}

namespace {

const std::map<std::string, json>& paper_cases() {
  static const std::map<std::string, json> cases{
      {"fig1", {{"command", "spiral"}, {"config", {{"alpha", 0.25}, {"phi_max", 500.0}, {"invert", true}}}}},
      {"fig2", {{"command", "spiral"}, {"config", {{"alpha", 0.25}, {"riemann", 0.5}}}}},
      {"fig3", {{"command", "spiral"}, {"config", {{"alpha", 0.25}, {"poincare", 1.0}, {"disc", true}}}}},
      {"hopf-k1", {{"command", "sweep"}, {"config", {{"family", "hopf_inverted"}, {"k", 1}, {"grid", {-0.04, 0.0, 0.04}}}}}},
      {"hopf-k2", {{"command", "dim"}, {"config", {{"system", {{"kind", "hopf_inverted"}, {"k", 2}, {"a", 0.0}}}, {"arc", "near_infinity"}}}}},
      {"takens-l1", {{"command", "dim"}, {"config", {{"system", {{"kind", "takens_inverted"}, {"l", 1}, {"a", {0.0}}}}, {"arc", "near_infinity"}}}}},
      {"takens-l2", {{"command", "sweep"}, {"config", {{"family", "takens_inverted"}, {"l", 2}, {"a", {0.0, -2.0}}, {"index", 0}, {"grid", {-0.5, 0.0, 0.5, 1.0, 1.5}}}}}},
      {"takens-d", {{"command", "dim"}, {"config", {{"system", {{"kind", "takens_inverted"}, {"l", 2}, {"a", {1.0, -2.0}}}}, {"arc", "cycles"}}}}},
      {"lienard", {{"command", "dim"}, {"config", {{"system", {{"kind", "lienard_inverted"}, {"coeffs", {{"3", -1.0}}}}}}}}},
      {"oscillator", {{"command", "dim"}, {"config", {{"system", {{"kind", "damped_oscillator_inverted"}, {"alpha", 2}, {"beta", 1}, {"c", 1.0}}}}}}},
      {"a-string", {{"command", "dim"}, {"config", {{"sequence", {{"kind", "power"}, {"alpha", 2.0}}}}}}},
  };
  return cases;
}

}  // namespace

json paper_case(const std::string& id) {
  const auto it = paper_cases().find(id);
  if (it == paper_cases().end()) throw std::invalid_argument("unknown paper case '" + id + "'");
  return it->second;
}

std::vector<std::string> paper_case_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, _] : paper_cases()) ids.push_back(id);
  return ids;
}

namespace {

// ---------------------------------------------------------------------------
// Shared helpers

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> eps_from(const json& c) {
  const double emax = c.at("eps_max").get<double>();
  const double emin = c.at("eps_min").get<double>();
  const int scales = c.at("scales").get<int>();
  if (!(emax > 0.0)) throw std::invalid_argument("eps_max must be positive");
  if (scales > 0) return eps_schedule_count(emax, scales);
  if (!(emin > 0.0 && emin < emax)) throw std::invalid_argument("need 0 < eps_min < eps_max");
  return eps_schedule(emax, emin);
}

fs::path out_dir(const json& c) {
  fs::path dir = c.at("out").get<std::string>();
  fs::create_directories(dir);
  return dir;
}

std::optional<double> opt_number(const json& c, const std::string& key) {
  const auto it = c.find(key);
  if (it == c.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

json maybe(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json estimate_json(const DimensionEstimate& e) {
  return {{"dimension", e.dimension},
          {"content", maybe(e.content_at_d)},
          {"eps_min", e.eps_min},
          {"eps_max", e.eps_max},
          {"r2", e.r_squared},
          {"method", to_string(e.method)},
          {"num_scales", e.num_scales},
          {"slope_stderr", e.slope_stderr},
          {"diagnostics", e.diagnostics}};
}

void attach_oracle(json& report, std::optional<double> oracle, double dimension) {
  report["oracle"] = maybe(oracle);
  report["gap"] = oracle ? json(std::abs(dimension - *oracle)) : json(nullptr);
}

json base_report(const std::string& command) {
  return {{"schema_version", schema_version}, {"command", command}};
}

std::string write_profile(const fs::path& dir, const std::string& stem, const DimensionEstimate& e) {
  const fs::path path = dir / (stem + "_profile.csv");
  write_profile_csv(path.string(), e.profile);
  return path.string();
}

Point2 point_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected a point [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

// ---------------------------------------------------------------------------
// System specs

struct System {
  std::string kind;
  std::optional<PolarSystem> polar;
  std::optional<VectorField2D> field;
  std::optional<double> origin_oracle;
  std::optional<double> infinity_oracle;
};

std::vector<double> coefficient_list(const json& j) {
  if (j.is_number()) return {j.get<double>()};
  return j.get<std::vector<double>>();
}

std::map<int, double> lienard_coefficients(const json& j) {
  std::map<int, double> out;
  for (const auto& [key, value] : j.items()) out[std::stoi(key)] = value.get<double>();
  return out;
}

std::optional<double> lienard_oracle(const std::map<int, double>& coeffs) {
  for (const auto& [i, a] : coeffs)
    if (i % 2 == 1 && a != 0.0) return lienard_dim((i - 1) / 2);
  return std::nullopt;
}

System parse_system(const json& s) {
  if (!s.is_object() || !s.contains("kind"))
    throw std::invalid_argument("system spec must be a JSON object with a \"kind\"");
  System sys;
  sys.kind = s.at("kind").get<std::string>();
  const auto& k = sys.kind;
  if (k == "hopf" || k == "hopf_inverted") {
    const int order = s.value("k", 1);
    const double a = s.value("a", 0.0);
    sys.polar = k == "hopf" ? PolarSystem::hopf(order, a) : PolarSystem::hopf_inverted(order, a);
  } else if (k == "takens" || k == "takens_inverted") {
    const int l = s.value("l", 1);
    const auto a = coefficient_list(s.at("a"));
    const int sign = s.value("sign", 1);
    sys.polar = k == "takens" ? PolarSystem::takens(l, a, sign) : PolarSystem::takens_inverted(l, a, sign);
  } else if (k == "hopf_field" || k == "hopf_field_inverted") {
    const int order = s.value("k", 1);
    const double a = s.value("a", 0.0);
    const double d = a == 0.0 ? focus_dim_at_infinity(order) : 1.0;
    if (k == "hopf_field") {
      sys.field = hopf(order, a);
      sys.origin_oracle = d;
    } else {
      sys.field = hopf_inverted(order, a);
      sys.infinity_oracle = d;
    }
  } else if (k == "lienard" || k == "lienard_inverted") {
    const auto coeffs = lienard_coefficients(s.at("coeffs"));
    if (k == "lienard") {
      sys.field = lienard(coeffs);
      sys.origin_oracle = lienard_oracle(coeffs);
    } else {
      sys.field = lienard_inverted(coeffs);
      sys.infinity_oracle = lienard_oracle(coeffs);
    }
  } else if (k == "damped_oscillator" || k == "damped_oscillator_inverted") {
    const int alpha = s.value("alpha", 2), beta = s.value("beta", 1);
    const double c = s.value("c", 1.0);
    if (k == "damped_oscillator") {
      sys.field = damped_oscillator(alpha, beta, c);
      sys.origin_oracle = oscillator_dim(alpha, beta);
    } else {
      sys.field = damped_oscillator_inverted(alpha, beta, c);
      sys.infinity_oracle = oscillator_dim(alpha, beta);
    }
  } else if (k == "linear") {
    const auto a = s.at("a").get<std::vector<double>>();
    if (a.size() != 4) throw std::invalid_argument("linear system needs a = [a11, a12, a21, a22]");
    sys.field = linear(a[0], a[1], a[2], a[3]);
  } else {
    throw std::invalid_argument("unknown system kind '" + k + "'");
  }
  return sys;
}

json cycles_json(const PolarSystem& p) {
  json out = json::array();
  for (const auto& c : p.limit_cycles())
    out.push_back({{"radius", c.radius}, {"multiplicity", c.multiplicity},
                   {"stability", to_string(c.stability)}, {"oracle", limit_cycle_dim(c.multiplicity)}});
  return out;
}

json arc_json(const ArcResult& a) {
  json j{{"label", a.label},
         {"dimension", a.estimate.dimension},
         {"estimate", estimate_json(a.estimate)},
         {"accumulation", a.accumulation},
         {"accumulation_radius", a.accumulation_radius},
         {"reason", to_string(a.reason)},
         {"phi_span", a.phi_span},
         {"rho_end", a.rho_end},
         {"points", a.points}};
  attach_oracle(j, a.oracle, a.estimate.dimension);
  return j;
}

ArcOptions arc_options(const json& c) {
  ArcOptions o;
  o.eps = eps_from(c);
  o.phi_budget = c.at("phi_budget").get<double>();
  return o;
}

// ---------------------------------------------------------------------------
// spiral

SpiralSpec spiral_spec(const json& c) {
  const std::string kind = c.at("kind");
  const double phi_start = c.at("phi_start");
  SpiralSpec s;
  if (kind == "power") {
    s = SpiralSpec::power_focus(c.at("alpha"), c.at("outward").get<bool>() ? Orientation::outward : Orientation::inward,
                                phi_start);
  } else if (kind == "exponential") {
    s = SpiralSpec::exponential(c.at("rate"), phi_start);
  } else if (kind == "power_cycle") {
    const auto beta = opt_number(c, "beta");
    s = beta ? SpiralSpec::power_limit_cycle_decay(c.at("radius"), *beta, c.at("side"), phi_start)
             : SpiralSpec::power_limit_cycle(c.at("radius"), c.at("multiplicity"), c.at("side"), phi_start);
  } else if (kind == "exp_cycle") {
    s = SpiralSpec::exponential_limit_cycle(c.at("radius"), c.at("rate"), c.at("side"), phi_start);
  } else {
    throw std::invalid_argument("unknown spiral kind '" + kind + "' (power, exponential, power_cycle, exp_cycle)");
  }
  s.coefficient = c.at("coefficient");
  s.validate();
  return s;
}

DimensionEstimate estimate_curve(const SampledCurve& curve, bool bounded, double accumulation_radius,
                                 const std::vector<double>& eps) {
  if (!bounded) return dim_unbounded(curve, eps);
  EstimatorOptions o;
  o.accumulation = accumulation_radius > 0.0 ? Accumulation::at_circle(accumulation_radius)
                                             : Accumulation::at_point();
  return dim_bounded(curve, eps, o);
}

}  // namespace

json cmd_spiral(const json& c) {
  const SpiralSpec spec = spiral_spec(c);
  const auto eps = eps_from(c);
  const fs::path dir = out_dir(c);
  const std::string name = c.at("name");
  SamplingOptions sampling;
  sampling.max_gap = c.at("max_gap");
  sampling.max_sagitta = *std::min_element(eps.begin(), eps.end()) / 16.0;
  const SampledCurve curve = generate(spec, c.at("phi_max"), sampling);
  const bool outward = spec.orientation == Orientation::outward;

  json report = base_report("spiral");
  report["model"] = {{"kind", c.at("kind")}, {"alpha", spec.alpha}, {"outward", outward},
                     {"phi_start", spec.phi_start}, {"phi_max", c.at("phi_max")},
                     {"coefficient", spec.coefficient}, {"accumulation_radius", spec.accumulation_radius()}};
  report["points"] = curve.size();
  json files = json::array();
  auto emit = [&](const std::string& suffix, const SampledCurve& cv) {
    const fs::path path = dir / (name + suffix + ".csv");
    write_curve_csv(path.string(), cv);
    files.push_back(path.string());
  };
  emit("", curve);

  const SampledCurve inverted = invert_curve(curve);
  if (c.at("invert").get<bool>()) emit("_inverted", inverted);
  // Sphere pictures show the unbounded member of the pair.
  const SampledCurve& unbounded = outward ? curve : inverted;
  if (const auto r = opt_number(c, "riemann")) emit("_riemann", riemann_project_curve(unbounded, *r));
  const auto pr = opt_number(c, "poincare");
  if (pr) emit("_poincare", poincare_project_curve(unbounded, *pr));
  if (c.at("disc").get<bool>()) {
    if (!pr) throw std::invalid_argument("--disc needs --poincare R");
    emit("_disc", disc_project_curve(poincare_project_curve(unbounded, *pr)));
  }

  const double oracle = spec.box_dimension();
  report["oracle"] = oracle;
  if (c.at("estimate").get<bool>()) {
    const double acc = outward ? 0.0 : spec.accumulation_radius();
    const DimensionEstimate e = estimate_curve(curve, !outward, acc, eps);
    json est = estimate_json(e);
    attach_oracle(est, oracle, e.dimension);
    files.push_back(write_profile(dir, name, e));
    report["estimate"] = est;
    report["dimension"] = e.dimension;
    report["gap"] = std::abs(e.dimension - oracle);
    if (c.at("invert").get<bool>()) {
      const DimensionEstimate ei = estimate_curve(inverted, outward, acc, eps);
      json inv = estimate_json(ei);
      attach_oracle(inv, oracle, ei.dimension);
      files.push_back(write_profile(dir, name + "_inverted", ei));
      report["inverted_estimate"] = inv;
    }
  }
  report["files"] = files;
  return report;
}

json cmd_integrate(const json& c) {
  if (c.at("system").is_null()) throw std::invalid_argument("integrate needs --system");
  const System sys = parse_system(c.at("system"));
  const fs::path dir = out_dir(c);
  const std::string name = c.at("name");
  json report = base_report("integrate");
  report["system"] = c.at("system");

  Trajectory t = [&] {
    if (sys.polar) return integrate_polar(*sys.polar, c.at("rho0"), c.at("phi_span"), c.at("step"));
    CartesianOptions o;
    o.revolutions = c.at("revolutions");
    o.max_step = c.at("max_step");
    return integrate_cartesian(*sys.field, point_from(c.at("x0")), c.at("t_span"), o);
  }();
  if (sys.polar) report["limit_cycles"] = cycles_json(*sys.polar);
  report["solver"] = t.solver;
  report["steps"] = t.steps;
  report["reason"] = to_string(t.reason);
  report["note"] = t.note;
  report["points"] = t.curve.size();
  report["coord_system"] = to_string(t.curve.system());

  json files = json::array();
  const fs::path path = dir / (name + ".csv");
  write_curve_csv(path.string(), t.curve);
  files.push_back(path.string());
  if (c.at("invert").get<bool>()) {
    const fs::path ipath = dir / (name + "_inverted.csv");
    write_curve_csv(ipath.string(), invert_curve(t.curve));
    files.push_back(ipath.string());
  }
  report["files"] = files;
  return report;
}

json cmd_dim(const json& c) {
  const auto eps = eps_from(c);
  const fs::path dir = out_dir(c);
  const std::string name = c.at("name");
  json report = base_report("dim");
  json files = json::array();
  const int given = !c.at("curve").is_null() + !c.at("system").is_null() + !c.at("sequence").is_null();
  if (given != 1) throw std::invalid_argument("dim needs exactly one of --curve, --system, --sequence");

  auto single = [&](const DimensionEstimate& e, std::optional<double> oracle) {
    json est = estimate_json(e);
    for (auto& [key, value] : est.items()) report[key] = value;
    attach_oracle(report, oracle, e.dimension);
    files.push_back(write_profile(dir, name, e));
  };

  if (!c.at("sequence").is_null()) {
    const json& s = c.at("sequence");
    const std::string kind = s.value("kind", "power");
    const std::size_t n = s.value("n", std::size_t{100000});
    std::vector<double> a;
    std::optional<double> oracle;
    if (kind == "power") {
      const double alpha = s.value("alpha", 1.0);
      a = power_string(alpha, n);
      oracle = 1.0 / (1.0 + alpha);
    } else if (kind == "csv") {
      a = read_sequence_csv(s.at("path").get<std::string>());
    } else {
      throw std::invalid_argument("unknown string kind '" + kind + "' (power, csv)");
    }
    std::vector<Point2> pts;
    pts.reserve(a.size());
    for (double v : a) pts.push_back({v, 0.0});
    report["input"] = {{"sequence", s}};
    single(dim_unbounded_points(pts, eps), opt_number(c, "oracle") ? opt_number(c, "oracle") : oracle);
  } else if (!c.at("curve").is_null()) {
    const SampledCurve curve = read_curve_csv(c.at("curve").get<std::string>());
    report["input"] = {{"curve", c.at("curve")}, {"points", curve.size()}};
    DimensionEstimate e;
    if (c.at("unbounded").get<bool>()) {
      const Point2 center = point_from(c.at("center"));
      if (c.at("points").get<bool>()) {
        e = dim_unbounded_points(curve.planar_points(), eps);
      } else {
        e = center == Point2{} ? dim_unbounded(curve, eps) : dim_unbounded_about(curve, center, eps);
      }
    } else {
      EstimatorOptions o;
      const std::string acc = c.at("accumulation");
      const Point2 center = point_from(c.at("center"));
      if (acc == "point") o.accumulation = Accumulation::at_point(center);
      else if (acc == "circle") o.accumulation = Accumulation::at_circle(c.at("radius"), center);
      else if (acc == "none") o.accumulation = Accumulation::none();
      else throw std::invalid_argument("accumulation must be point, circle or none");
      if (!c.at("points").get<bool>()) {
        e = dim_bounded(curve, eps, o);
      } else {
        const auto pts = curve.planar_points();
        const double gap = o.core_gap_fraction * *std::min_element(eps.begin(), eps.end());
        e = dim_bounded(acc == "point" ? condense_sequence(pts, center, gap) : PlanarSet::from_points(pts),
                        eps, o.sausage);
      }
    }
    single(e, opt_number(c, "oracle"));
  } else {
    const System sys = parse_system(c.at("system"));
    report["input"] = {{"system", c.at("system")}};
    const std::string arc = c.at("arc");
    std::vector<ArcResult> arcs;
    if (sys.polar) {
      const ArcOptions o = arc_options(c);
      report["limit_cycles"] = cycles_json(*sys.polar);
      if (arc == "auto" || arc == "all") {
        arcs = analyze_polar_system(*sys.polar, o);
      } else if (arc == "near_infinity") {
        arcs.push_back(polar_arc_near_infinity(*sys.polar, o));
      } else if (arc == "near_origin") {
        arcs.push_back(polar_arc_near_origin(*sys.polar, o));
      } else if (arc == "cycles") {
        for (const auto& cyc : sys.polar->limit_cycles())
          for (int side : {+1, -1}) arcs.push_back(polar_arc_near_cycle(*sys.polar, cyc, side, o));
        if (arcs.empty()) throw PreconditionError("the system has no limit cycles; use --arc near_infinity");
      } else {
        throw std::invalid_argument("arc must be auto, all, near_infinity, near_origin or cycles");
      }
    } else {
      FieldArcOptions o;
      o.arc = arc_options(c);
      o.max_revolutions = c.at("max_revolutions");
      const Point2 x0 = point_from(c.at("x0"));
      const bool infinity = arc == "near_infinity" ||
                            (arc == "auto" && sys.infinity_oracle && !sys.origin_oracle);
      if (arc != "auto" && arc != "near_infinity" && arc != "near_origin")
        throw std::invalid_argument("arc must be auto, near_infinity or near_origin for fields");
      arcs.push_back(infinity ? field_arc_near_infinity(*sys.field, x0, o, sys.infinity_oracle)
                              : field_arc_near_origin(*sys.field, x0, o, sys.origin_oracle));
    }
    json list = json::array();
    std::size_t best = 0;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      list.push_back(arc_json(arcs[i]));
      files.push_back(write_profile(dir, name + "_" + std::to_string(i) + "_" + arcs[i].label, arcs[i].estimate));
      if (arcs[i].estimate.dimension > arcs[best].estimate.dimension) best = i;
    }
    report["arcs"] = list;
    // Headline numbers: the arc with the largest estimate.
    const json headline = estimate_json(arcs[best].estimate);
    for (const auto& [key, value] : headline.items()) report[key] = value;
    attach_oracle(report, arcs[best].oracle, arcs[best].estimate.dimension);
    report["arc"] = arcs[best].label;
  }
  report["files"] = files;
  std::ofstream(dir / (name + ".json")) << report.dump(2) << "\n";
  return report;
}

json cmd_sweep(const json& c) {
  const std::string family = c.at("family");
  const auto grid = c.at("grid").get<std::vector<double>>();
  const ArcOptions o = arc_options(c);
  const fs::path dir = out_dir(c);
  const std::string name = c.at("name");
  SweepReport sweep;
  if (family == "hopf_inverted") {
    sweep = sweep_hopf_inverted(c.at("k"), grid, o);
  } else if (family == "takens_inverted") {
    sweep = sweep_takens_inverted(c.at("l"), c.at("a").get<std::vector<double>>(), c.at("index"), grid, o);
  } else {
    throw std::invalid_argument("family must be hopf_inverted or takens_inverted");
  }

  json report = base_report("sweep");
  report["family"] = sweep.family;
  report["parameter"] = sweep.parameter;
  json points = json::array();
  const fs::path csv = dir / (name + ".csv");
  std::ofstream out(csv);
  if (!out) throw std::invalid_argument("cannot write " + csv.string());
  out << "value,dimension,regime,nearest,residual\n";
  for (const auto& p : sweep.points) {
    json arcs = json::array();
    for (const auto& a : p.arcs) arcs.push_back(arc_json(a));
    points.push_back({{"value", p.value},
                      {"dimension", p.dimension},
                      {"regime", to_string(p.classification.regime)},
                      {"nearest", p.classification.nearest},
                      {"residual", p.classification.residual},
                      {"arcs", arcs}});
    out << fmt(p.value) << "," << fmt(p.dimension) << "," << to_string(p.classification.regime) << ","
        << fmt(p.classification.nearest) << "," << fmt(p.classification.residual) << "\n";
  }
  report["points"] = points;
  report["files"] = {csv.string(), (dir / (name + ".json")).string()};
  std::ofstream(dir / (name + ".json")) << report.dump(2) << "\n";
  return report;
}

json cmd_string(const json& c) {
  std::vector<double> a;
  std::optional<double> oracle;
  const std::string gen = c.at("generator");
  const std::size_t n = c.at("n").get<std::size_t>();
  if (!c.at("csv").is_null()) {
    a = read_sequence_csv(c.at("csv").get<std::string>());
  } else if (gen == "power") {
    const double alpha = c.at("alpha");
    a = power_string(alpha, n);
    oracle = 1.0 / (1.0 + alpha);
  } else if (gen == "geometric") {
    a = geometric_string(c.at("ratio"), n);
    oracle = 0.0;
  } else {
    throw std::invalid_argument("generator must be power or geometric (or pass --csv)");
  }
  const fs::path dir = out_dir(c);
  const std::string name = c.at("name");
  json report = base_report("string");
  report["input"] = c.at("csv").is_null() ? json{{"generator", gen}, {"n", n}} : json{{"csv", c.at("csv")}};
  const StringDimension s = string_dimension(a);
  report["dimension"] = s.dimension;
  report["exponent"] = s.exponent;
  report["r2"] = s.r_squared;
  report["k_range"] = {s.k_min, s.k_max};
  report["failed"] = s.failed;
  report["irregular"] = s.irregular;
  report["diagnostics"] = s.diagnostics;
  attach_oracle(report, oracle, s.dimension);
  if (a.size() >= 3) {
    const MonotoneCheck m = is_monotone_string(a);
    report["monotone"] = m.monotone;
    report["first_violation"] = m.first_violation ? json(*m.first_violation) : json(nullptr);
  }
  json files = json::array();
  if (c.at("geometric").get<bool>()) {
    std::vector<Point2> pts;
    for (double v : a)
      if (std::isfinite(v)) pts.push_back({v, 0.0});
    const DimensionEstimate e = dim_unbounded_points(pts, eps_from(c));
    json g = estimate_json(e);
    attach_oracle(g, oracle, e.dimension);
    report["geometric"] = g;
    files.push_back(write_profile(dir, name, e));
  }
  if (c.at("gaps").get<bool>()) {
    const fs::path path = dir / (name + "_gaps.csv");
    std::ofstream out(path);
    out << "k,mu\n";
    std::size_t usable = 0;
    while (usable < a.size() && std::isfinite(a[usable])) ++usable;
    const auto mu = gaps(std::span<const double>(a).first(usable));
    for (std::size_t k = 0; k < mu.size(); ++k) out << k + 1 << "," << fmt(mu[k]) << "\n";
    files.push_back(path.string());
  }
  report["files"] = files;
  return report;
}

json cmd_oracle(const json& c) {
  if (c.at("formula").is_null()) throw std::invalid_argument("oracle needs a formula name");
  const std::string f = c.at("formula");
  auto need = [&](const char* key) {
    const auto v = opt_number(c, key);
    if (!v) throw std::invalid_argument(f + " needs --" + std::string(key));
    return *v;
  };
  auto need_int = [&](const char* key) {
    const double v = need(key);
    if (v != std::floor(v)) throw std::invalid_argument("--" + std::string(key) + " must be an integer");
    return static_cast<int>(v);
  };
  json report = base_report("oracle");
  report["formula"] = f;
  json params = json::object();
  if (f == "focus_dim") {
    params["k"] = need_int("k");
    report["value"] = focus_dim_at_infinity(need_int("k"));
  } else if (f == "limit_cycle_dim") {
    params["m"] = need_int("m");
    report["value"] = limit_cycle_dim(need_int("m"));
  } else if (f == "limit_cycle_power_dim") {
    params["beta"] = need("beta");
    report["value"] = limit_cycle_power_dim(need("beta"));
  } else if (f == "spiral_dim") {
    params["alpha"] = need("alpha");
    report["value"] = spiral_dim(need("alpha"));
  } else if (f == "mink_content") {
    const double m = opt_number(c, "m").value_or(1.0);
    params = {{"m", m}, {"alpha", need("alpha")}};
    report["value"] = mink_content_formula(m, need("alpha"));
    report["d"] = spiral_dim(need("alpha"));
  } else if (f == "oscillator_dim") {
    params = {{"alpha", need_int("alpha")}, {"beta", need_int("beta")}};
    report["value"] = oscillator_dim(need_int("alpha"), need_int("beta"));
  } else if (f == "lienard_dim") {
    params["k"] = need_int("k");
    report["value"] = lienard_dim(need_int("k"));
  } else if (f == "sphere") {
    SphereDims d;
    if (const auto alpha = opt_number(c, "alpha")) {
      params["alpha"] = *alpha;
      d = sphere_dim_transforms(*alpha);
    } else {
      params["d1"] = need("d1");
      d = sphere_dim_transforms_from_dim(need("d1"));
    }
    report["value"] = {{"gamma2", d.gamma2}, {"gamma3", d.gamma3}};
  } else if (f == "gamma3_from_gamma2") {
    params["d2"] = need("d2");
    report["value"] = gamma3_from_gamma2(need("d2"));
  } else if (f == "table") {
    const int n = c.at("count");
    params["count"] = n;
    report["value"] = {{"D0", focus_dim_set(n)}, {"D1", limit_cycle_dim_set(n)}};
  } else {
    throw std::invalid_argument(
        "unknown formula '" + f +
        "' (focus_dim, limit_cycle_dim, limit_cycle_power_dim, spiral_dim, mink_content, oscillator_dim, "
        "lienard_dim, sphere, gamma3_from_gamma2, table)");
  }
  report["params"] = params;
  return report;
}

json run_command(const std::string& command, const json& config) {
  if (command == "spiral") return cmd_spiral(config);
  if (command == "integrate") return cmd_integrate(config);
  if (command == "dim") return cmd_dim(config);
  if (command == "sweep") return cmd_sweep(config);
  if (command == "string") return cmd_string(config);
  if (command == "oracle") return cmd_oracle(config);
  throw std::invalid_argument("unknown command '" + command + "'");
}

// ---------------------------------------------------------------------------
// Argument parsing

namespace {

std::string flag_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

// Flag text to a JSON value shaped like the default.
json parse_value(const std::string& key, const std::string& text, const json& def) {
  try {
    if (def.is_array()) return json::parse("[" + text + "]");
    if (def.is_number_integer()) {
      const json v = json::parse(text);
      if (!v.is_number_integer()) throw std::invalid_argument("");
      return v;
    }
    if (def.is_number()) {
      const json v = json::parse(text);
      if (!v.is_number()) throw std::invalid_argument("");
      return v;
    }
    if (def.is_string()) return text;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad value for " + flag_name(key) + ": '" + text + "'");
  }
  // No typed default: inline JSON, a JSON file, or plain text.
  const json v = json::parse(text, nullptr, false);
  if (!v.is_discarded()) return v;
  if ((key == "system" || key == "sequence") && fs::exists(text)) {
    std::ifstream in(text);
    return json::parse(in);
  }
  return text;
}

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  return j;
}

void overlay(json& config, const json& layer, const std::string& command) {
  for (const auto& [key, value] : layer.items()) {
    if (key == command && value.is_object()) continue;
    if (std::find(command_names().begin(), command_names().end(), key) != command_names().end()) continue;
    if (!config.contains(key)) throw std::invalid_argument("unknown config key '" + key + "' for " + command);
    config[key] = value;
  }
  if (layer.contains(command) && layer[command].is_object()) overlay(config, layer[command], command);
}

struct Flag {
  std::string key;
  json def;
  std::string text;
  bool on = false;
  CLI::Option* option = nullptr;
};

void add_flags(CLI::App& app, const json& defaults, std::vector<Flag>& flags) {
  flags.reserve(defaults.size());
  for (const auto& [key, def] : defaults.items()) {
    flags.push_back({key, def, {}, false, nullptr});
    Flag& f = flags.back();
    if (def.is_boolean()) {
      f.option = app.add_flag(flag_name(key), f.on, "default " + def.dump());
    } else {
      f.option = app.add_option(flag_name(key), f.text, "default " + def.dump());
    }
  }
}

void apply_flags(json& config, const std::vector<Flag>& flags) {
  for (const auto& f : flags) {
    if (f.option->count() == 0) continue;
    config[f.key] = f.def.is_boolean() ? json(f.on) : parse_value(f.key, f.text, f.def);
  }
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const PreconditionError*>(&e)) return precondition;
  if (dynamic_cast<const NumericalError*>(&e) || dynamic_cast<const ResourceError*>(&e)) return numerical;
  if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e) ||
      dynamic_cast<const std::out_of_range*>(&e) || dynamic_cast<const json::exception*>(&e))
    return usage;
  return numerical;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"spiraldim: box dimension and Minkowski content of spiral trajectories"};
  app.fallthrough();
  std::string config_file, case_id;
  std::vector<Flag> global;
  add_flags(app, global_defaults(), global);
  app.add_option("--config", config_file, "JSON config file (flags override it)");
  std::string ids;
  for (const auto& id : paper_case_ids()) ids += (ids.empty() ? "" : ", ") + id;
  app.add_option("--paper-case", case_id, "preset scenario: " + ids);

  std::map<std::string, std::vector<Flag>> command_flags;
  std::map<std::string, CLI::App*> subs;
  std::string formula;
  const std::map<std::string, std::string> help{
      {"spiral", "generate a model spiral and its inverted / projected versions"},
      {"integrate", "integrate a system and write the trajectory"},
      {"dim", "estimate box dimension of a curve, system or string"},
      {"sweep", "dimension and regime across a parameter grid"},
      {"string", "gap-string dimension of an increasing sequence"},
      {"oracle", "evaluate a closed-form dimension formula"}};
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    json defs = command_defaults(name);
    if (name == "oracle") {
      defs.erase("formula");
      sub->add_option("formula", formula, "formula name");
    }
    add_flags(*sub, defs, command_flags[name]);
    subs[name] = sub;
  }
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    std::string command;
    for (const auto& [name, sub] : subs)
      if (sub->parsed()) command = name;
    json preset;
    if (!case_id.empty()) {
      preset = paper_case(case_id);
      if (command.empty()) command = preset.at("command");
      if (command != preset.at("command"))
        throw std::invalid_argument("paper case " + case_id + " belongs to the " +
                                    preset.at("command").get<std::string>() + " command");
    }
    if (command.empty()) {
      std::cerr << app.help();
      return usage;
    }
    json config = global_defaults();
    config.update(command_defaults(command));
    if (!preset.is_null()) overlay(config, preset.at("config"), command);
    if (!config_file.empty()) overlay(config, read_config_file(config_file), command);
    apply_flags(config, global);
    apply_flags(config, command_flags[command]);
    if (command == "oracle" && !formula.empty()) config["formula"] = formula;

    const json report = run_command(command, config);
    std::cout << report.dump(2) << "\n";
    return ok;
  } catch (const std::exception& e) {
    const int code = exit_code(e);
    std::cerr << "error: " << e.what() << "\n";
    if (code == precondition) std::cerr << "(estimator precondition; see the message for the fix)\n";
    return code;
  }
}

}  // namespace spiraldim::cli
