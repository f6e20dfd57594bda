#include "spiraldim/polar_system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace spiraldim {

std::string to_string(CycleStability stability) {
  switch (stability) {
    case CycleStability::stable: return "stable";
    case CycleStability::unstable: return "unstable";
    case CycleStability::semi_stable: return "semi_stable";
  }
  return "?";
}

namespace {

std::string join(const std::vector<double>& a) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < a.size(); ++i) out << (i ? ", " : "") << a[i];
  out << "]";
  return out.str();
}

}  // namespace

PolarSystem PolarSystem::hopf(int k, double a) {
  if (k < 1) throw std::invalid_argument("hopf needs k >= 1");
  PolarSystem s;
  s.kind_ = Kind::hopf;
  s.sigma_ = -1;
  s.terms_ = {{1.0, k}, {a, 0}};
  s.order_ = k;
  s.params_ = {a};
  s.description_ = "hopf k=" + std::to_string(k) + " a=" + join({a});
  return s;
}

PolarSystem PolarSystem::hopf_inverted(int k, double a) { return hopf(k, a).inverted(); }

PolarSystem PolarSystem::takens(int l, std::vector<double> a, int sign) {
  if (l < 1) throw std::invalid_argument("takens needs l >= 1");
  if (a.size() != static_cast<std::size_t>(l))
    throw std::invalid_argument("takens needs exactly l coefficients a_0 .. a_(l-1)");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  PolarSystem s;
  s.kind_ = Kind::takens;
  s.sigma_ = sign;
  s.terms_.push_back({1.0, l});
  for (int j = 0; j < l; ++j) s.terms_.push_back({a[static_cast<std::size_t>(j)], j});
  s.order_ = l;
  s.description_ = "takens l=" + std::to_string(l) + " a=" + join(a);
  s.params_ = std::move(a);
  return s;
}

PolarSystem PolarSystem::takens_inverted(int l, std::vector<double> a, int sign) {
  return takens(l, std::move(a), sign).inverted();
}

PolarSystem PolarSystem::custom(int sigma, std::vector<PolarTerm> terms, std::string description) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
  if (terms.empty()) throw std::invalid_argument("polar system needs at least one term");
  PolarSystem s;
  s.sigma_ = sigma;
  s.terms_ = std::move(terms);
  s.description_ = std::move(description);
  return s;
}

double PolarSystem::rho_dot(double rho) const {
  double sum = 0.0;
  for (const auto& t : terms_)
    if (t.coefficient != 0.0) sum += t.coefficient * std::pow(rho, 2 * t.exponent);
  return sigma_ * rho * sum;
}

PolarSystem PolarSystem::inverted() const {
  PolarSystem s = *this;
  s.sigma_ = -sigma_;
  for (auto& t : s.terms_) t.exponent = -t.exponent;
  switch (kind_) {
    case Kind::hopf: s.kind_ = Kind::hopf_inverted; break;
    case Kind::hopf_inverted: s.kind_ = Kind::hopf; break;
    case Kind::takens: s.kind_ = Kind::takens_inverted; break;
    case Kind::takens_inverted: s.kind_ = Kind::takens; break;
    case Kind::custom: break;
  }
  const std::string tag = " (inverted)";
  if (s.description_.size() > tag.size() &&
      s.description_.compare(s.description_.size() - tag.size(), tag.size(), tag) == 0)
    s.description_.erase(s.description_.size() - tag.size());
  else
    s.description_ += tag;
  return s;
}

Poly1 PolarSystem::radial_polynomial() const {
  int emin = 0, emax = 0;
  bool first = true;
  for (const auto& t : terms_) {
    if (t.coefficient == 0.0) continue;
    emin = first ? t.exponent : std::min(emin, t.exponent);
    emax = first ? t.exponent : std::max(emax, t.exponent);
    first = false;
  }
  Poly1 p;
  if (first) return p;
  p.c.assign(static_cast<std::size_t>(2 * (emax - emin) + 1), 0.0);
  for (const auto& t : terms_)
    if (t.coefficient != 0.0) p.c[static_cast<std::size_t>(2 * (t.exponent - emin))] += t.coefficient;
  return p;
}

std::vector<LimitCycle> PolarSystem::limit_cycles() const {
  const Poly1 p = radial_polynomial();
  const int deg = p.degree();
  std::vector<LimitCycle> out;
  if (deg <= 0) return out;
  // Cauchy bound on root magnitudes.
  double bound = 0.0;
  for (int i = 0; i < deg; ++i)
    bound = std::max(bound, std::abs(p.c[static_cast<std::size_t>(i)] / p.c[static_cast<std::size_t>(deg)]));
  bound += 1.0;
  for (const auto& root : real_roots(p, 0.0, bound)) {
    if (root.x <= 1e-9) continue;
    LimitCycle c{root.x, root.multiplicity, CycleStability::semi_stable};
    if (root.multiplicity % 2 == 1) {
      // rho' ~ sigma t_m (rho - a)^m near the cycle.
      const double lead = sigma_ * p.taylor_coefficient(root.x, root.multiplicity);
      c.stability = lead < 0 ? CycleStability::stable : CycleStability::unstable;
    }
    out.push_back(c);
  }
  return out;
}

int PolarSystem::leading_exponent() const {
  int e = 0;
  bool first = true;
  for (const auto& t : terms_) {
    if (t.coefficient == 0.0) continue;
    e = first ? t.exponent : std::min(e, t.exponent);
    first = false;
  }
  if (first) throw std::logic_error("polar system with all coefficients zero");
  return e;
}

}  // namespace spiraldim
