#include "spiraldim/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace spiraldim {

Poly2 Poly2::constant(double c) { return monomial(c, 0, 0); }

Poly2 Poly2::monomial(double c, int i, int j) {
  Poly2 p;
  p.add_term(c, i, j);
  return p;
}

Poly2 Poly2::norm2_pow(int k) {
  Poly2 base = monomial(1.0, 2, 0) + monomial(1.0, 0, 2);
  Poly2 out = constant(1.0);
  for (int n = 0; n < k; ++n) out = out * base;
  return out;
}

double Poly2::coefficient(int i, int j) const {
  const auto it = terms_.find({i, j});
  return it == terms_.end() ? 0.0 : it->second;
}

void Poly2::add_term(double c, int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("negative exponent in monomial");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

int Poly2::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

double Poly2::eval(double x, double y) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) sum += c * std::pow(x, e.first) * std::pow(y, e.second);
  return sum;
}

Poly2 Poly2::operator-() const { return *this * -1.0; }

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [e, c] : o.terms_) add_term(c, e.first, e.second);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  for (const auto& [e, c] : o.terms_) add_term(-c, e.first, e.second);
  return *this;
}

Poly2& Poly2::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      out.add_term(ca * cb, ea.first + eb.first, ea.second + eb.second);
  return out;
}

bool Poly2::divide_by_norm2(Poly2& quotient, double tolerance) const {
  // Long division in x: x^i y^j with i >= 2 is reduced through
  // x^2 = (x^2 + y^2) - y^2, highest powers of x first.
  std::map<Exponents, double> rem = terms_;
  quotient = Poly2();
  for (;;) {
    auto it = std::find_if(rem.rbegin(), rem.rend(),
                           [](const auto& t) { return t.first.first >= 2; });
    if (it == rem.rend()) break;
    const auto [i, j] = it->first;
    const double c = it->second;
    rem.erase(std::next(it).base());
    quotient.add_term(c, i - 2, j);
    rem[{i - 2, j + 2}] -= c;
  }
  double scale = 0.0;
  for (const auto& [e, c] : terms_) scale = std::max(scale, std::abs(c));
  for (const auto& [e, c] : rem)
    if (std::abs(c) > tolerance * std::max(scale, 1.0)) return false;
  return true;
}

double Poly2::max_coefficient_gap(const Poly2& o) const {
  double gap = 0.0;
  for (const auto& [e, c] : terms_) gap = std::max(gap, std::abs(c - o.coefficient(e.first, e.second)));
  for (const auto& [e, c] : o.terms_) gap = std::max(gap, std::abs(c - coefficient(e.first, e.second)));
  return gap;
}

std::string Poly2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto [i, j] = it->first;
    const double c = it->second;
    out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ")) << std::abs(c);
    if (i > 0) out << " x^" << i;
    if (j > 0) out << " y^" << j;
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

int Poly1::degree() const {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (c[static_cast<std::size_t>(i)] != 0.0) return i;
  return -1;
}

double Poly1::eval(double t) const {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

Poly1 Poly1::derivative() const {
  Poly1 d;
  for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * static_cast<double>(i));
  return d;
}

double Poly1::taylor_coefficient(double t, int k) const {
  Poly1 d = *this;
  double fact = 1.0;
  for (int n = 1; n <= k; ++n) {
    d = d.derivative();
    fact *= n;
  }
  return d.eval(t) / fact;
}

namespace {

// Magnitude against which the k-th Taylor coefficient at t is judged zero.
double taylor_scale(const Poly1& p, double t, int k) {
  double scale = 0.0;
  const double at = std::max(1.0, std::abs(t));
  for (std::size_t i = static_cast<std::size_t>(k); i < p.c.size(); ++i) {
    double binom = 1.0;
    for (int n = 0; n < k; ++n) binom *= static_cast<double>(i - static_cast<std::size_t>(n)) / (n + 1);
    scale = std::max(scale, std::abs(p.c[i]) * binom * std::pow(at, static_cast<double>(i) - k));
  }
  return scale;
}

double bisect(const Poly1& p, double a, double b, double tol) {
  double fa = p.eval(a);
  for (int it = 0; it < 400 && b - a > tol * std::max(1.0, std::abs(a)); ++it) {
    const double m = 0.5 * (a + b);
    const double fm = p.eval(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> root_positions(const Poly1& p, double lo, double hi, double xtol, double ztol) {
  const int deg = p.degree();
  std::vector<double> out;
  if (deg <= 0) return out;
  if (deg == 1) {
    const double x = -p.c[0] / p.c[1];
    if (x >= lo && x <= hi) out.push_back(x);
    return out;
  }
  const std::vector<double> crit = root_positions(p.derivative(), lo, hi, xtol, ztol);
  std::vector<double> breaks{lo};
  breaks.insert(breaks.end(), crit.begin(), crit.end());
  breaks.push_back(hi);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double fa = p.eval(breaks[i]);
    const double fb = p.eval(breaks[i + 1]);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) out.push_back(bisect(p, breaks[i], breaks[i + 1], xtol));
  }
  for (double c : crit)
    if (std::abs(p.eval(c)) <= ztol * taylor_scale(p, c, 0)) out.push_back(c);
  std::sort(out.begin(), out.end());
  std::vector<double> merged;
  for (double x : out)
    if (merged.empty() || std::abs(x - merged.back()) > 1e3 * xtol * std::max(1.0, std::abs(x)))
      merged.push_back(x);
  return merged;
}

}  // namespace

std::vector<RealRoot> real_roots(const Poly1& p, double lo, double hi, double x_tolerance,
                                 double zero_tolerance) {
  std::vector<RealRoot> roots;
  for (double x : root_positions(p, lo, hi, x_tolerance, zero_tolerance)) {
    int m = 1;
    while (m < p.degree() &&
           std::abs(p.taylor_coefficient(x, m)) <= zero_tolerance * taylor_scale(p, x, m))
      ++m;
    roots.push_back({x, m});
  }
  return roots;
}

}  // namespace spiraldim
