#pragma once

#include <span>
#include <vector>

namespace spiraldim {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
  std::size_t n = 0;
};

/// Ordinary least squares y = intercept + slope * x.
/// Requires at least two points with distinct x. r_squared is clamped to
/// [0, 1]; a constant y gives r_squared = 1.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// OLS on (log x, log y). Every value must be positive.
LinearFit fit_log_log(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> values);

}  // namespace spiraldim
