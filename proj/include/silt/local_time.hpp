#pragma once

#include <vector>

#include "silt/fbm.hpp"

namespace silt {

/// Occupation-measure histogram of a path. Bin i is centred at
/// bin_centers[i] = (first_bin + i) * bin_width.
struct LocalTimeProfile {
  double bin_width = 0.0;
  long first_bin = 0;
  std::vector<double> bin_centers;
  std::vector<double> values;
  double horizon = 0.0;
};

/// Grid times are weighted by the trapezoid rule (dt/2 at both ends), so
/// bin_width * sum(values) equals the horizon.
LocalTimeProfile local_time(const FbmPath& path, double bin_width);

/// (max - min of the path) / 256.
double default_bin_width(const FbmPath& path);

enum class ShiftMode { snap, interpolate };

struct LocalTimeAlpha {
  double value = 0.0;
  double y_used = 0.0;        // y after snapping
  double snap_distance = 0.0;  // y - y_used
};

/// (bin_width / 2) * sum_i L(x_i + y) L(x_i). snap moves y to the nearest
/// multiple of bin_width; interpolate evaluates the shifted profile linearly.
LocalTimeAlpha alpha_via_local_time(const LocalTimeProfile& profile, double y, ShiftMode mode = ShiftMode::snap);

}  // namespace silt
