#include "silt/local_time.hpp"

#include <algorithm>
#include <cmath>

#include "silt/error.hpp"

namespace silt {

LocalTimeProfile local_time(const FbmPath& path, double bin_width) {
  if (!(bin_width > 0.0)) throw DomainError("bin_width must be positive");
  const auto& v = path.values();
  auto bin_of = [bin_width](double x) { return static_cast<long>(std::floor(x / bin_width + 0.5)); };
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const long lo = bin_of(*lo_it);
  const long hi = bin_of(*hi_it);

  LocalTimeProfile p;
  p.bin_width = bin_width;
  p.first_bin = lo;
  p.horizon = path.horizon();
  p.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  const double dt = path.step();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double w = (i == 0 || i + 1 == v.size()) ? 0.5 * dt : dt;
    p.values[static_cast<std::size_t>(bin_of(v[i]) - lo)] += w / bin_width;
  }
  p.bin_centers.resize(p.values.size());
  for (std::size_t i = 0; i < p.values.size(); ++i)
    p.bin_centers[i] = static_cast<double>(lo + static_cast<long>(i)) * bin_width;
  return p;
}

double default_bin_width(const FbmPath& path) {
  const auto [lo, hi] = std::minmax_element(path.values().begin(), path.values().end());
  const double range = *hi - *lo;
  return range > 0.0 ? range / 256.0 : path.horizon() / 256.0;
}

LocalTimeAlpha alpha_via_local_time(const LocalTimeProfile& profile, double y, ShiftMode mode) {
  const auto& L = profile.values;
  const auto n = static_cast<long>(L.size());
  const double bw = profile.bin_width;
  auto at = [&](long i) { return (i >= 0 && i < n) ? L[static_cast<std::size_t>(i)] : 0.0; };

  LocalTimeAlpha out;
  double sum = 0.0;
  if (mode == ShiftMode::snap) {
    const long shift = std::lround(y / bw);
    out.y_used = static_cast<double>(shift) * bw;
    out.snap_distance = y - out.y_used;
    for (long i = 0; i < n; ++i) sum += at(i + shift) * at(i);
  } else {
    out.y_used = y;
    const double q = y / bw;
    const long base = static_cast<long>(std::floor(q));
    const double frac = q - static_cast<double>(base);
    for (long i = 0; i < n; ++i)
      sum += ((1.0 - frac) * at(i + base) + frac * at(i + base + 1)) * at(i);
  }
  out.value = 0.5 * bw * sum;
  return out;
}

}  // namespace silt
