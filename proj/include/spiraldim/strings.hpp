#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace spiraldim {

/// mu_k = 1/a_k - 1/a_(k+1), computed as (a_(k+1) - a_k) / (a_k a_(k+1)).
/// Throws DomainError on a non-positive entry, PreconditionError on a
/// decreasing step.
std::vector<double> gaps(std::span<const double> a);

struct MonotoneCheck {
  bool monotone = true;
  /// 1-based k of the first failing a_(k+1)/a_k + a_(k+1)/a_(k+2) >= 2.
  std::optional<std::size_t> first_violation;
};

/// Needs at least three terms.
MonotoneCheck is_monotone_string(std::span<const double> a);

struct StringDimension {
  double dimension = 0.0;  // 1/s for mu_k ~ k^(-s)
  double exponent = 0.0;   // s
  double r_squared = 0.0;
  std::size_t k_min = 0, k_max = 0;  // fitted index range (1-based)
  bool failed = false;     // gaps not decaying on the prefix
  /// Set when the two decades give exponents further apart than 0.05 in
  /// dimension (upper and lower values may then differ).
  bool irregular = false;
  std::vector<std::string> diagnostics;
};

/// Fit of log mu_k against log k over the last two decades of the usable
/// prefix (terms with finite positive gaps).
StringDimension string_dimension(std::span<const double> a);

/// a_k = k^alpha, k = 1..n.
std::vector<double> power_string(double alpha, std::size_t n = 100000);

/// a_k = ratio^k, k = 1..n.
std::vector<double> geometric_string(double ratio, std::size_t n = 100000);

/// One value per line; blank lines and lines starting with '#' skipped, a
/// non-numeric first line is taken as a header.
std::vector<double> read_sequence_csv(const std::string& path);

}  // namespace spiraldim
