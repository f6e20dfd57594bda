#pragma once

#include <string>
#include <vector>

#include "spiraldim/polynomial.hpp"

namespace spiraldim {

/// One term c * rho^(2e) of the radial factor.
struct PolarTerm {
  double coefficient = 0.0;
  int exponent = 0;
};

enum class CycleStability { stable, unstable, semi_stable };

struct LimitCycle {
  double radius = 0.0;
  int multiplicity = 1;
  CycleStability stability = CycleStability::stable;
};

std::string to_string(CycleStability stability);

/// rho' = sigma rho sum_j c_j rho^(2 e_j),  phi' = 1.
///
///   hopf(k, a)                 r'   = -r (r^(2k) + a)
///   hopf_inverted(k, a)        rho' =  rho (rho^(-2k) + a)
///   takens(l, a)               r'   =  s r (r^(2l) + sum a_j r^(2j))
///   takens_inverted(l, a)      rho' = -s rho (rho^(-2l) + sum a_j rho^(-2j))
///
/// with s = +1 or -1. Inversion rho = 1/r flips sigma and every exponent,
/// so the four kinds map onto each other in closed form.
class PolarSystem {
 public:
  enum class Kind { hopf, hopf_inverted, takens, takens_inverted, custom };

  static PolarSystem hopf(int k, double a);
  static PolarSystem hopf_inverted(int k, double a);
  static PolarSystem takens(int l, std::vector<double> a, int sign = +1);
  static PolarSystem takens_inverted(int l, std::vector<double> a, int sign = +1);
  static PolarSystem custom(int sigma, std::vector<PolarTerm> terms, std::string description);

  Kind kind() const { return kind_; }
  int sigma() const { return sigma_; }
  const std::vector<PolarTerm>& terms() const { return terms_; }
  const std::string& description() const { return description_; }
  /// l for the Takens kinds, k for the Hopf kinds.
  int order() const { return order_; }
  /// a_0 .. a_(l-1) for the Takens kinds, {a} for the Hopf kinds.
  const std::vector<double>& parameters() const { return params_; }

  double rho_dot(double rho) const;

  /// The system in rho = 1/r.
  PolarSystem inverted() const;

  /// rho^(-2 e_min) sum_j c_j rho^(2 e_j), a polynomial in rho whose
  /// positive roots are the limit cycles.
  Poly1 radial_polynomial() const;

  /// Positive roots of the radial polynomial with multiplicity and side
  /// behaviour (bisection to 1e-12, multiplicity from Taylor coefficients
  /// vanishing below 1e-8).
  std::vector<LimitCycle> limit_cycles() const;

  /// Smallest exponent with a nonzero coefficient. When it is 0 the origin is
  /// a strong focus (exponential spirals); when it is k > 0 it is a weak
  /// focus of order k, provided all exponents are nonnegative.
  int leading_exponent() const;

 private:
  Kind kind_ = Kind::custom;
  int sigma_ = 1;
  std::vector<PolarTerm> terms_;
  std::string description_;
  int order_ = 0;
  std::vector<double> params_;
};

}  // namespace spiraldim
