#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace spiraldim {

/// Sparse bivariate polynomial: (i, j) -> coefficient of x^i y^j.
/// Zero coefficients are never stored.
class Poly2 {
 public:
  using Exponents = std::pair<int, int>;

  Poly2() = default;
  static Poly2 constant(double c);
  static Poly2 monomial(double c, int i, int j);
  static Poly2 x() { return monomial(1.0, 1, 0); }
  static Poly2 y() { return monomial(1.0, 0, 1); }
  /// (x^2 + y^2)^k.
  static Poly2 norm2_pow(int k);

  const std::map<Exponents, double>& terms() const { return terms_; }
  double coefficient(int i, int j) const;
  void add_term(double c, int i, int j);

  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // total degree; -1 for the zero polynomial
  double eval(double x, double y) const;

  Poly2 operator-() const;
  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  Poly2& operator*=(double s);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(Poly2 a, double s) { return a *= s; }
  friend Poly2 operator*(double s, Poly2 a) { return a *= s; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);

  /// Exact division by x^2 + y^2. Returns false (and leaves `quotient`
  /// unspecified) when the remainder has a coefficient above `tolerance`.
  bool divide_by_norm2(Poly2& quotient, double tolerance = 1e-12) const;

  /// Largest coefficient difference against `o`.
  double max_coefficient_gap(const Poly2& o) const;

  std::string to_string() const;

 private:
  std::map<Exponents, double> terms_;
};

/// Dense univariate polynomial, c[0] + c[1] t + ... .
struct Poly1 {
  std::vector<double> c;

  int degree() const;
  double eval(double t) const;
  Poly1 derivative() const;
  /// k-th derivative divided by k!.
  double taylor_coefficient(double t, int k) const;
};

/// Real roots of p in [lo, hi], each with its multiplicity. Roots of odd
/// order are bracketed by sign changes; even-order roots are found among
/// the critical points (recursively, roots of p'). Bisection runs to
/// `x_tolerance`; multiplicity counts Taylor coefficients below
/// `zero_tolerance` (relative to the largest coefficient of p).
struct RealRoot {
  double x = 0.0;
  int multiplicity = 1;
};
std::vector<RealRoot> real_roots(const Poly1& p, double lo, double hi,
                                 double x_tolerance = 1e-12, double zero_tolerance = 1e-8);

}  // namespace spiraldim
