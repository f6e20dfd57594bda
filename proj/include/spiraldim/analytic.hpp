#pragma once

#include <limits>
#include <string>
#include <vector>

#include "spiraldim/geometry.hpp"

namespace spiraldim {

enum class SpiralKind { power_focus, exponential, power_limit_cycle, exponential_limit_cycle };

enum class Orientation { inward, outward };

/// Comparison spirals r = f(phi), phi >= phi_start.
///
///   power_focus             r = c phi^(-alpha)   (outward: r = c phi^alpha)
///   exponential             r = c exp(-a0 phi)
///   power_limit_cycle       r = a + side * c phi^(-beta), beta = 1/(m-1)
///   exponential_limit_cycle r = a + side * c exp(-beta phi)
struct SpiralSpec {
  SpiralKind kind = SpiralKind::power_focus;
  double alpha = 0.25;
  Orientation orientation = Orientation::inward;
  double rate = 1.0;        // a0 or beta of the exponential kinds
  double cycle_radius = 1.0;
  int multiplicity = 2;
  double decay = 1.0;       // beta of the power limit-cycle kind
  int side = +1;
  double coefficient = 1.0;
  double phi_start = 1.0;

  static SpiralSpec power_focus(double alpha, Orientation orientation = Orientation::inward,
                                double phi_start = 1.0);
  static SpiralSpec exponential(double a0, double phi_start = 0.0);
  static SpiralSpec power_limit_cycle(double radius, int multiplicity, int side,
                                      double phi_start = 1.0);
  /// Limit-cycle spiral r = a +- c phi^(-beta) with an arbitrary beta > 0.
  static SpiralSpec power_limit_cycle_decay(double radius, double beta, int side,
                                            double phi_start = 1.0);
  static SpiralSpec exponential_limit_cycle(double radius, double beta, int side,
                                            double phi_start = 0.0);

  /// Throws std::invalid_argument when a parameter is out of range.
  void validate() const;

  double radius(double phi) const;
  double radius_d1(double phi) const;
  double radius_d2(double phi) const;

  /// Accumulation radius of the inward spiral (0 for foci, a for cycles);
  /// infinity for the outward power focus.
  double accumulation_radius() const;

  /// Exact box dimension of the comparison model.
  double box_dimension() const;
};

struct SamplingOptions {
  double max_gap = 1e-2;
  double max_sagitta = std::numeric_limits<double>::infinity();
  double max_dphi = 0.25;
};

/// Samples the spiral on [phi_start, phi_end] with consecutive chords at most
/// max_gap and estimated chord sagitta at most max_sagitta. Output is polar
/// with an unwrapped, strictly increasing angle that ends exactly at phi_end.
SampledCurve generate(const SpiralSpec& spec, double phi_end, const SamplingOptions& sampling);
SampledCurve generate(const SpiralSpec& spec, double phi_end, double max_gap);

// ---------------------------------------------------------------------------
// Closed-form dimensions and contents.

/// Box dimension of r = phi^(-alpha) (and of its inversion): max{1, 2/(1+alpha)}.
double spiral_dim(double alpha);

/// Minkowski content of r ~ m phi^(-alpha) at d = 2/(1+alpha):
/// m^d pi (pi alpha)^(-2 alpha/(1+alpha)) (1+alpha)/(1-alpha), alpha in (0,1).
double mink_content_formula(double m, double alpha);

/// Weak focus at infinity with first nonzero coefficient of index k: 4k/(2k+1).
double focus_dim_at_infinity(int k);

/// Limit cycle of multiplicity m: 2 - 1/m.
double limit_cycle_dim(int m);

/// Limit-cycle spiral r = a +- phi^(-beta): 1 + 1/(1+beta).
double limit_cycle_power_dim(double beta);

/// Weakly damped oscillator y'' + C y^alpha (y')^beta + y = 0 with alpha even
/// and beta odd: 2(1 - 1/(alpha+beta)).
double oscillator_dim(int alpha, int beta);

/// Lienard system whose first nonzero odd coefficient has index 2k+1.
double lienard_dim(int k);

/// First `count` members of D0 = {4k/(2k+1)} and D1 = {2 - 1/m}.
std::vector<double> focus_dim_set(int count);
std::vector<double> limit_cycle_dim_set(int count);
bool in_focus_dim_set(double d, double tolerance = 1e-12);
bool in_limit_cycle_dim_set(double d, double tolerance = 1e-12);

struct SphereDims {
  double gamma2 = 0.0;  // inverted spiral on the Poincare sphere
  double gamma3 = 0.0;  // its orthogonal projection onto the disc
};

/// From the focus exponent alpha > 0: (2+alpha)/(1+alpha), (2+2alpha)/(1+2alpha).
SphereDims sphere_dim_transforms(double alpha);

/// From the focus-spiral dimension d1 in (1,2): 1 + d1/2, 4/(4 - d1).
SphereDims sphere_dim_transforms_from_dim(double d1);

/// Gamma_3 from Gamma_2 alone: 2/(3 - dim Gamma_2).
double gamma3_from_gamma2(double d2);

}  // namespace spiraldim
