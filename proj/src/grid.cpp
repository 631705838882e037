#include "silt/grid.hpp"

#include <cmath>

namespace silt {

std::vector<double> UniformGrid::points() const {
  std::vector<double> p(count);
  for (std::size_t k = 0; k < count; ++k) p[k] = at(k);
  return p;
}

UniformGrid UniformGrid::spanning(double lo, double hi, std::size_t count) {
  if (count < 2) return {lo, 1.0, count};
  return {lo, (hi - lo) / static_cast<double>(count - 1), count};
}

UniformGrid UniformGrid::symmetric(double half_width, double step) {
  const auto half = static_cast<std::size_t>(std::ceil(half_width / step));
  return {-static_cast<double>(half) * step, step, 2 * half + 1};
}

double trapezoid(const std::vector<double>& samples, double step) {
  if (samples.size() < 2) return 0.0;
  double s = 0.5 * (samples.front() + samples.back());
  for (std::size_t k = 1; k + 1 < samples.size(); ++k) s += samples[k];
  return s * step;
}

}  // namespace silt
