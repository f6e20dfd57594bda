#pragma once

#include <iosfwd>
#include <string>

#include "spiraldim/geometry.hpp"
#include "spiraldim/sausage.hpp"

namespace spiraldim {

/// Curve CSV: a `coord_system,<name>[,closed]` line, a column header
/// (`x,y`, `r,phi` or `x,y,z`), then one row per point. Values are written
/// with 17 significant digits so a round trip is exact.
void write_curve_csv(std::ostream& out, const SampledCurve& curve);
void write_curve_csv(const std::string& path, const SampledCurve& curve);
SampledCurve read_curve_csv(std::istream& in, const std::string& source = {});
SampledCurve read_curve_csv(const std::string& path);

/// `eps,area` rows, eps decreasing.
void write_profile_csv(std::ostream& out, const SausageProfile& profile);
void write_profile_csv(const std::string& path, const SausageProfile& profile);

}  // namespace spiraldim
