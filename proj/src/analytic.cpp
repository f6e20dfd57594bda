#include "spiraldim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spiraldim {

SpiralSpec SpiralSpec::power_focus(double alpha, Orientation orientation, double phi_start) {
  SpiralSpec s;
  s.kind = SpiralKind::power_focus;
  s.alpha = alpha;
  s.orientation = orientation;
  s.phi_start = phi_start;
  s.validate();
  return s;
}

SpiralSpec SpiralSpec::exponential(double a0, double phi_start) {
  SpiralSpec s;
  s.kind = SpiralKind::exponential;
  s.rate = a0;
  s.phi_start = phi_start;
  s.validate();
  return s;
}

SpiralSpec SpiralSpec::power_limit_cycle(double radius, int multiplicity, int side,
                                         double phi_start) {
  SpiralSpec s;
  s.kind = SpiralKind::power_limit_cycle;
  s.cycle_radius = radius;
  s.multiplicity = multiplicity;
  s.decay = multiplicity >= 2 ? 1.0 / (multiplicity - 1) : 0.0;
  s.side = side;
  s.phi_start = phi_start;
  s.validate();
  return s;
}

SpiralSpec SpiralSpec::power_limit_cycle_decay(double radius, double beta, int side,
                                               double phi_start) {
  SpiralSpec s;
  s.kind = SpiralKind::power_limit_cycle;
  s.cycle_radius = radius;
  s.multiplicity = 0;  // not an integer multiplicity
  s.decay = beta;
  s.side = side;
  s.phi_start = phi_start;
  s.validate();
  return s;
}

SpiralSpec SpiralSpec::exponential_limit_cycle(double radius, double beta, int side,
                                               double phi_start) {
  SpiralSpec s;
  s.kind = SpiralKind::exponential_limit_cycle;
  s.cycle_radius = radius;
  s.rate = beta;
  s.side = side;
  s.phi_start = phi_start;
  s.validate();
  return s;
}

void SpiralSpec::validate() const {
  if (!(coefficient > 0.0)) throw std::invalid_argument("spiral coefficient must be positive");
  if (!std::isfinite(phi_start)) throw std::invalid_argument("phi_start must be finite");
  switch (kind) {
    case SpiralKind::power_focus:
      if (!(alpha > 0.0)) throw std::invalid_argument("power focus needs alpha > 0");
      if (!(phi_start > 0.0)) throw std::invalid_argument("power spirals need phi_start > 0");
      break;
    case SpiralKind::exponential:
      if (rate == 0.0 || !std::isfinite(rate))
        throw std::invalid_argument("exponential spiral needs a0 != 0");
      break;
    case SpiralKind::power_limit_cycle:
      if (!(cycle_radius > 0.0)) throw std::invalid_argument("limit cycle radius must be positive");
      if (multiplicity != 0 && multiplicity < 2)
        throw std::invalid_argument("power limit-cycle spiral needs multiplicity m >= 2");
      if (!(decay > 0.0)) throw std::invalid_argument("limit-cycle decay exponent must be positive");
      if (side != 1 && side != -1) throw std::invalid_argument("side must be +1 or -1");
      if (!(phi_start > 0.0)) throw std::invalid_argument("power spirals need phi_start > 0");
      if (!(radius(phi_start) > 0.0))
        throw std::invalid_argument("inner limit-cycle spiral crosses the origin; raise phi_start");
      break;
    case SpiralKind::exponential_limit_cycle:
      if (!(cycle_radius > 0.0)) throw std::invalid_argument("limit cycle radius must be positive");
      if (rate == 0.0 || !std::isfinite(rate))
        throw std::invalid_argument("exponential limit-cycle spiral needs beta != 0");
      if (side != 1 && side != -1) throw std::invalid_argument("side must be +1 or -1");
      if (!(radius(phi_start) > 0.0))
        throw std::invalid_argument("inner limit-cycle spiral crosses the origin; raise phi_start");
      break;
  }
}

double SpiralSpec::radius(double phi) const {
  const double c = coefficient;
  switch (kind) {
    case SpiralKind::power_focus:
      return orientation == Orientation::inward ? c * std::pow(phi, -alpha) : c * std::pow(phi, alpha);
    case SpiralKind::exponential: return c * std::exp(-rate * phi);
    case SpiralKind::power_limit_cycle: return cycle_radius + side * c * std::pow(phi, -decay);
    case SpiralKind::exponential_limit_cycle:
      return cycle_radius + side * c * std::exp(-rate * phi);
  }
  return 0.0;
}

double SpiralSpec::radius_d1(double phi) const {
  const double c = coefficient;
  switch (kind) {
    case SpiralKind::power_focus:
      return orientation == Orientation::inward ? -alpha * c * std::pow(phi, -alpha - 1.0)
                                                : alpha * c * std::pow(phi, alpha - 1.0);
    case SpiralKind::exponential: return -rate * c * std::exp(-rate * phi);
    case SpiralKind::power_limit_cycle: return -side * decay * c * std::pow(phi, -decay - 1.0);
    case SpiralKind::exponential_limit_cycle: return -side * rate * c * std::exp(-rate * phi);
  }
  return 0.0;
}

double SpiralSpec::radius_d2(double phi) const {
  const double c = coefficient;
  switch (kind) {
    case SpiralKind::power_focus:
      return orientation == Orientation::inward
                 ? alpha * (alpha + 1.0) * c * std::pow(phi, -alpha - 2.0)
                 : alpha * (alpha - 1.0) * c * std::pow(phi, alpha - 2.0);
    case SpiralKind::exponential: return rate * rate * c * std::exp(-rate * phi);
    case SpiralKind::power_limit_cycle:
      return side * decay * (decay + 1.0) * c * std::pow(phi, -decay - 2.0);
    case SpiralKind::exponential_limit_cycle:
      return side * rate * rate * c * std::exp(-rate * phi);
  }
  return 0.0;
}

double SpiralSpec::accumulation_radius() const {
  switch (kind) {
    case SpiralKind::power_focus:
      return orientation == Orientation::inward ? 0.0 : std::numeric_limits<double>::infinity();
    case SpiralKind::exponential:
      return rate > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    case SpiralKind::power_limit_cycle:
    case SpiralKind::exponential_limit_cycle: return cycle_radius;
  }
  return 0.0;
}

double SpiralSpec::box_dimension() const {
  switch (kind) {
    case SpiralKind::power_focus: return spiral_dim(alpha);
    case SpiralKind::exponential: return 1.0;
    case SpiralKind::power_limit_cycle: return limit_cycle_power_dim(decay);
    case SpiralKind::exponential_limit_cycle: return 1.0;
  }
  return 1.0;
}

SampledCurve generate(const SpiralSpec& spec, double phi_end, const SamplingOptions& sampling) {
  spec.validate();
  if (!(phi_end > spec.phi_start)) throw std::invalid_argument("phi_end must exceed phi_start");
  if (!(sampling.max_gap > 0.0)) throw std::invalid_argument("max_gap must be positive");
  if (!(sampling.max_sagitta > 0.0)) throw std::invalid_argument("max_sagitta must be positive");
  std::vector<PolarPoint> pts;
  double phi = spec.phi_start;
  pts.push_back({spec.radius(phi), phi});
  auto step_at = [&](double t) {
    const double r = spec.radius(t);
    const double r1 = spec.radius_d1(t);
    const double r2 = spec.radius_d2(t);
    const double speed = std::sqrt(r * r + r1 * r1);
    double step = std::min(sampling.max_dphi, sampling.max_gap / speed);
    if (std::isfinite(sampling.max_sagitta)) {
      const double kappa = std::abs(r * r + 2.0 * r1 * r1 - r * r2) / (speed * speed * speed);
      if (kappa > 0.0) step = std::min(step, std::sqrt(8.0 * sampling.max_sagitta / kappa) / speed);
    }
    return step;
  };
  while (phi < phi_end) {
    double step = step_at(phi);
    // The integrand varies slowly over a step; re-check at the far end.
    step = std::min(step, step_at(std::min(phi + step, phi_end)));
    double next = phi + step;
    if (next >= phi_end || phi_end - next < 1e-3 * step) next = phi_end;
    if (!(next > phi)) throw std::runtime_error("generate: angular step underflow");
    const double r = spec.radius(next);
    if (!(r > 0.0) || !std::isfinite(r)) throw std::runtime_error("generate: radius left (0, inf)");
    pts.push_back({r, next});
    phi = next;
  }
  std::string source = "spiral";
  return SampledCurve::polar(std::move(pts), false, source);
}

SampledCurve generate(const SpiralSpec& spec, double phi_end, double max_gap) {
  SamplingOptions sampling;
  sampling.max_gap = max_gap;
  return generate(spec, phi_end, sampling);
}

// ---------------------------------------------------------------------------

double spiral_dim(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("spiral_dim needs alpha > 0");
  return std::max(1.0, 2.0 / (1.0 + alpha));
}

double mink_content_formula(double m, double alpha) {
  if (!(m > 0.0)) throw std::invalid_argument("mink_content_formula needs m > 0");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("mink_content_formula needs alpha in (0,1)");
  const double pi = std::numbers::pi;
  const double d = 2.0 / (1.0 + alpha);
  return std::pow(m, d) * pi * std::pow(pi * alpha, -2.0 * alpha / (1.0 + alpha)) *
         (1.0 + alpha) / (1.0 - alpha);
}

double focus_dim_at_infinity(int k) {
  if (k < 1) throw std::invalid_argument("focus_dim_at_infinity needs k >= 1");
  return 4.0 * k / (2.0 * k + 1.0);
}

double limit_cycle_dim(int m) {
  if (m < 1) throw std::invalid_argument("limit_cycle_dim needs m >= 1");
  return 2.0 - 1.0 / m;
}

double limit_cycle_power_dim(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("limit_cycle_power_dim needs beta > 0");
  return 1.0 + 1.0 / (1.0 + beta);
}

double oscillator_dim(int alpha, int beta) {
  if (alpha <= 0 || alpha % 2 != 0) throw std::invalid_argument("oscillator alpha must be a positive even integer");
  if (beta <= 0 || beta % 2 != 1) throw std::invalid_argument("oscillator beta must be a positive odd integer");
  return 2.0 * (1.0 - 1.0 / (alpha + beta));
}

double lienard_dim(int k) {
  if (k < 1) throw std::invalid_argument("lienard_dim needs k >= 1");
  return 2.0 * (1.0 - 1.0 / (2.0 * k + 1.0));
}

std::vector<double> focus_dim_set(int count) {
  std::vector<double> out;
  for (int k = 1; k <= count; ++k) out.push_back(focus_dim_at_infinity(k));
  return out;
}

std::vector<double> limit_cycle_dim_set(int count) {
  std::vector<double> out;
  for (int m = 1; m <= count; ++m) out.push_back(limit_cycle_dim(m));
  return out;
}

bool in_focus_dim_set(double d, double tolerance) {
  // 4k/(2k+1) = d  <=>  k = d / (4 - 2d)
  if (!(d > 0.0 && d < 2.0)) return false;
  const double k = d / (4.0 - 2.0 * d);
  const double kr = std::round(k);
  return kr >= 1.0 && std::abs(focus_dim_at_infinity(static_cast<int>(kr)) - d) <= tolerance;
}

bool in_limit_cycle_dim_set(double d, double tolerance) {
  // 2 - 1/m = d  <=>  m = 1 / (2 - d)
  if (!(d >= 1.0 && d < 2.0)) return false;
  const double mr = std::round(1.0 / (2.0 - d));
  return mr >= 1.0 && std::abs(limit_cycle_dim(static_cast<int>(mr)) - d) <= tolerance;
}

SphereDims sphere_dim_transforms(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("sphere_dim_transforms needs alpha > 0");
  return {(2.0 + alpha) / (1.0 + alpha), (2.0 + 2.0 * alpha) / (1.0 + 2.0 * alpha)};
}

SphereDims sphere_dim_transforms_from_dim(double d1) {
  if (!(d1 > 1.0 && d1 < 2.0))
    throw std::invalid_argument("sphere_dim_transforms_from_dim needs d1 in (1,2)");
  return {1.0 + 0.5 * d1, 4.0 / (4.0 - d1)};
}

double gamma3_from_gamma2(double d2) {
  if (!(d2 < 3.0)) throw std::invalid_argument("gamma3_from_gamma2 needs d2 < 3");
  return 2.0 / (3.0 - d2);
}

}  // namespace spiraldim
