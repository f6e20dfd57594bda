#include "spiraldim/strings.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "spiraldim/errors.hpp"
#include "spiraldim/regression.hpp"

namespace spiraldim {

std::vector<double> gaps(std::span<const double> a) {
  std::vector<double> mu;
  if (a.empty()) return mu;
  mu.reserve(a.size() - 1);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a[k] > 0.0)) throw DomainError("string terms must be positive (term " + std::to_string(k + 1) + ")");
    if (k + 1 == a.size()) break;
    if (a[k + 1] < a[k])
      throw PreconditionError("string must be nondecreasing: a_" + std::to_string(k + 2) + " < a_" +
                              std::to_string(k + 1));
    mu.push_back((a[k + 1] - a[k]) / a[k] / a[k + 1]);
  }
  return mu;
}

MonotoneCheck is_monotone_string(std::span<const double> a) {
  if (a.size() < 3) throw PreconditionError("monotonicity check needs at least three terms");
  MonotoneCheck out;
  for (std::size_t k = 0; k + 2 < a.size(); ++k) {
    if (a[k + 1] / a[k] + a[k + 1] / a[k + 2] < 2.0) {
      out.monotone = false;
      out.first_violation = k + 1;
      return out;
    }
  }
  return out;
}

namespace {

LinearFit fit_range(const std::vector<double>& mu, std::size_t lo, std::size_t hi) {
  std::vector<double> x, y;
  x.reserve(hi - lo + 1);
  y.reserve(hi - lo + 1);
  for (std::size_t k = lo; k <= hi; ++k) {
    x.push_back(static_cast<double>(k));
    y.push_back(mu[k - 1]);
  }
  return fit_log_log(x, y);
}

}  // namespace

StringDimension string_dimension(std::span<const double> a) {
  StringDimension out;
  // Usable prefix: finite terms with positive finite gaps.
  std::size_t n = 0;
  while (n < a.size() && std::isfinite(a[n]) && a[n] > 0.0) ++n;
  const std::vector<double> mu = gaps(a.first(n));
  std::size_t k_max = 0;
  while (k_max < mu.size() && mu[k_max] > 0.0 && std::isfinite(mu[k_max])) ++k_max;
  if (k_max < 10) {
    out.failed = true;
    out.diagnostics.push_back("fewer than 10 positive gaps at the start of the sequence");
    return out;
  }
  if (n < a.size()) out.diagnostics.push_back("sequence truncated at term " + std::to_string(n) + " (overflow or non-positive)");
  if (k_max < mu.size()) out.diagnostics.push_back("gaps stop being positive after k = " + std::to_string(k_max));

  const std::size_t k_min = std::max<std::size_t>(1, k_max / 100);
  const LinearFit fit = fit_range(mu, k_min, k_max);
  out.k_min = k_min;
  out.k_max = k_max;
  out.exponent = -fit.slope;
  out.r_squared = fit.r_squared;
  if (!(out.exponent > 0.0)) {
    out.failed = true;
    out.diagnostics.push_back("gaps do not decay on the fitted range");
    return out;
  }
  out.dimension = 1.0 / out.exponent;

  const std::size_t k_mid = std::max(k_min + 2, std::min(k_max - 2, k_max / 10));
  if (k_mid > k_min + 1 && k_mid + 1 < k_max) {
    const double s1 = -fit_range(mu, k_min, k_mid).slope;
    const double s2 = -fit_range(mu, k_mid, k_max).slope;
    if (s1 > 0.0 && s2 > 0.0 && std::abs(1.0 / s1 - 1.0 / s2) > 0.05) {
      out.irregular = true;
      std::ostringstream msg;
      msg << "decade exponents differ (dimension " << 1.0 / s1 << " vs " << 1.0 / s2
          << "); the fit sits between lower and upper values";
      out.diagnostics.push_back(msg.str());
    }
  }
  return out;
}

std::vector<double> power_string(double alpha, std::size_t n) {
  if (!(alpha > 0.0)) throw DomainError("power string needs alpha > 0");
  std::vector<double> a(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = std::pow(static_cast<double>(k + 1), alpha);
  return a;
}

std::vector<double> geometric_string(double ratio, std::size_t n) {
  if (!(ratio > 1.0)) throw DomainError("geometric string needs ratio > 1");
  std::vector<double> a(n);
  double v = 1.0;
  for (std::size_t k = 0; k < n; ++k) a[k] = v *= ratio;
  return a;
}

std::vector<double> read_sequence_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::vector<double> a;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string cell = line.substr(first, line.find(',', first) - first);
    try {
      std::size_t used = 0;
      a.push_back(std::stod(cell, &used));
    } catch (const std::exception&) {
      if (a.empty() && lineno == 1) continue;  // header
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": not a number: " + cell);
    }
  }
  return a;
}

}  // namespace spiraldim
