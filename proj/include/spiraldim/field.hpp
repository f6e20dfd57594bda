#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spiraldim/geometry.hpp"
#include "spiraldim/polynomial.hpp"

namespace spiraldim {

/// Planar vector field x' = F(x).
class VectorField2D {
 public:
  enum class Kind { polynomial, closed_form };
  using Evaluator = std::function<Point2(const Point2&)>;

  /// Polynomial field (p, q) stored as sparse monomial tables.
  static VectorField2D polynomial(Poly2 p, Poly2 q, std::string description);
  /// Arbitrary evaluator. `singular_at_origin` makes evaluation at 0 throw.
  static VectorField2D closed_form(Evaluator f, std::string description,
                                   bool singular_at_origin = false);

  Point2 operator()(const Point2& x) const;

  Kind kind() const { return kind_; }
  const std::string& description() const { return description_; }
  bool singular_at_origin() const { return singular_; }
  /// Components; empty unless kind() == polynomial.
  const Poly2& p() const { return p_; }
  const Poly2& q() const { return q_; }
  /// Field this one was obtained from by inversion, if any.
  const VectorField2D* inverted_from() const { return source_.get(); }

 private:
  friend VectorField2D invert_field(const VectorField2D& field);

  Kind kind_ = Kind::closed_form;
  Evaluator eval_;
  Poly2 p_;
  Poly2 q_;
  std::string description_;
  bool singular_ = false;
  std::shared_ptr<const VectorField2D> source_;
};

/// P*(u) = |u|^2 P~(u) - 2u (u . P~(u)) with P~(u) = P(u / |u|^2).
/// Evaluating the result at the origin throws DomainError.
VectorField2D invert_field(const VectorField2D& field);

/// |u|^(2k) F(u): same orbits off the origin, time rescaled. When F is the
/// inversion of a polynomial field the product is built term by term and
/// the result is polynomial whenever the multiplier clears all negative
/// powers; otherwise the product is returned as a closed form.
VectorField2D polynomialize(const VectorField2D& field, int k);

/// |u|^(2 deg P) P*(u) as exact polynomials (always polynomial).
std::pair<Poly2, Poly2> inverted_numerator(const Poly2& p, const Poly2& q);

using Scalar2 = std::function<double(double, double)>;

/// Inversion of x' = -y + p(x, y), y' = x + q(x, y) written out:
///   u' = -v + (v^2 - u^2) p~ - 2uv q~,  v' = u + (u^2 - v^2) q~ - 2uv p~.
VectorField2D weak_focus_invert(Scalar2 p, Scalar2 q, std::string description = "weak focus inverted");
VectorField2D weak_focus_invert(const Poly2& p, const Poly2& q);

// Named fields ---------------------------------------------------------------

/// x' = R x - gamma x g(|x|) with R = omega [[0, -1], [1, 0]].
VectorField2D rotation_radial(double omega, double gamma, std::function<double(double)> g);
/// Closed form of its inversion: R u + gamma u g(1 / |u|).
VectorField2D rotation_radial_inverted(double omega, double gamma, std::function<double(double)> g);

/// x' = A x.
VectorField2D linear(double a11, double a12, double a21, double a22);

/// x' = -y - x(|x|^(2k) + a), y' = x - y(|x|^(2k) + a).
VectorField2D hopf(int k, double a);
/// u' = -v + u(|u|^(-2k) + a), v' = u + v(|u|^(-2k) + a).
VectorField2D hopf_inverted(int k, double a);
/// u' = -v|u|^(2k) + u(1 + a|u|^(2k)), v' = u|u|^(2k) + v(1 + a|u|^(2k)).
VectorField2D hopf_inverted_polynomial(int k, double a);

/// x' = -y + sum_i a_i x^i, y' = x; `coefficients` maps i -> a_i (i >= 2).
VectorField2D lienard(const std::map<int, double>& coefficients);
/// u' = -v + (v^2 - u^2) p~, v' = u - 2uv p~ with p~ = sum a_i u^i / |u|^(2i).
VectorField2D lienard_inverted(const std::map<int, double>& coefficients);

/// Weakly damped oscillator y'' + C y^alpha (y')^beta + y = 0 as the system
/// x' = -y - C x^beta y^alpha, y' = x.
VectorField2D damped_oscillator(int alpha, int beta, double c);
/// u' = -v + C u^beta v^alpha (u^2 - v^2) / |u|^(2(alpha+beta)),
/// v' = u + 2C u^(beta+1) v^(alpha+1) / |u|^(2(alpha+beta)).
VectorField2D damped_oscillator_inverted(int alpha, int beta, double c);
/// The same multiplied through by |u|^(2(alpha+beta)).
VectorField2D damped_oscillator_inverted_polynomial(int alpha, int beta, double c);

// Pointwise checks ------------------------------------------------------------

/// Points with radius uniform in [r_min, r_max] and uniform angle.
std::vector<Point2> random_annulus_points(std::size_t n, double r_min, double r_max,
                                          std::uint64_t seed);

/// max |F(x) - G(x)| / max(|F(x)|, |G(x)|) over the samples (0 where both vanish).
double max_relative_gap(const VectorField2D& f, const VectorField2D& g,
                        std::span<const Point2> samples);

/// max |P**(x) - P(x)| relative, as above.
double involution_deviation(const VectorField2D& field, std::span<const Point2> samples);

struct ParallelCheck {
  double max_sine = 0.0;       // largest |sin| of the angle between F and G
  double min_cosine = 1.0;     // smallest cosine; > 0 means same direction
};
ParallelCheck parallel_check(const VectorField2D& f, const VectorField2D& g,
                             std::span<const Point2> samples);

}  // namespace spiraldim
