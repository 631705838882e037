#pragma once

#include <cstddef>
#include <vector>

namespace silt {

/// Uniform grid lo, lo + step, ..., lo + (count - 1) * step.
struct UniformGrid {
  double lo = 0.0;
  double step = 1.0;
  std::size_t count = 0;

  double at(std::size_t k) const noexcept { return lo + step * static_cast<double>(k); }
  double hi() const noexcept { return at(count == 0 ? 0 : count - 1); }
  std::vector<double> points() const;

  /// count points covering [lo, hi] (both included).
  static UniformGrid spanning(double lo, double hi, std::size_t count);
  /// Symmetric grid with the given step covering at least [-half_width, half_width]; 0 is a node.
  static UniformGrid symmetric(double half_width, double step);
};

/// Trapezoid rule of samples on a uniform grid.
double trapezoid(const std::vector<double>& samples, double step);

}  // namespace silt
