#pragma once

// Cell-sum kernels over the (r, s) grid of a path.
//
// Cell (i, j) covers [t_i, t_{i+1}] x [t_j, t_{j+1}]. Full cells are evaluated
// at their midpoint, using the path interpolated at cell-centre times. Cells
// cut by the line s - r = kappa keep their upper-left triangle (area dt^2/2)
// and are evaluated at its centroid (r, s) = (t_i + dt/3, t_j + 2 dt/3), which
// never lies on the diagonal.
//
// silt::kernels holds the OpenMP versions; silt::reference the serial
// implementations kept for testing and benchmarking.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "silt/fbm.hpp"
#include "silt/grid.hpp"
#include "silt/region.hpp"

namespace silt {

enum class Integrand {
  density,            // f_eps(x - y)
  derivative,         // -f'_eps(x - y)
  tanaka_derivative,  // -f'_eps(x - y) (s - r)^{2H - 1}
};

struct KernelParams {
  Integrand integrand = Integrand::density;
  double y = 0.0;
  double epsilon = 1.0;
  double hurst = 0.5;  // only used by tanaka_derivative
};

/// Range of the increments B_s - B_r over the cells of a plan.
struct IncrementRange {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
};

namespace detail {

/// Path interpolated at cell-centre times: mid[i] = (B_i + B_{i+1}) / 2.
std::vector<double> cell_midpoints(PathView path);

inline double half_cell_increment(PathView path, std::size_t i, std::size_t j) {
  const auto& v = path.values;
  const double at_s = v[j] + 2.0 * (v[j + 1] - v[j]) / 3.0;
  const double at_r = v[i] + (v[i + 1] - v[i]) / 3.0;
  return at_s - at_r;
}

/// Rows are summed in fixed blocks so the reduction order does not depend on
/// the thread count.
inline constexpr std::size_t kRowBlock = 32;

}  // namespace detail

namespace kernels {

/// sum over cells of weight * g(x, lag), x = B_s - B_r at the evaluation point,
/// lag = s - r there; weight is dt^2 (full) or dt^2 / 2 (cut cell).
template <class G>
double accumulate(PathView path, const CellPlan& plan, G&& g) {
  const std::vector<double> mid = detail::cell_midpoints(path);
  const double dt = plan.step;
  const auto n_rows = plan.rows.size();
  std::vector<double> row_sums(n_rows, 0.0);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t q = 0; q < n_rows; ++q) {
    const CellRow& row = plan.rows[q];
    const double base = mid[row.i];
    double full = 0.0;
    for (std::size_t j = row.j_full_begin; j < row.j_end; ++j)
      full += g(mid[j] - base, static_cast<double>(j - row.i) * dt);
    double total = full * (dt * dt);
    if (row.half) {
      const std::size_t j = row.i + plan.offset;
      const double lag = (static_cast<double>(plan.offset) + 1.0 / 3.0) * dt;
      total += 0.5 * dt * dt * g(detail::half_cell_increment(path, row.i, j), lag);
    }
    row_sums[q] = total;
  }
  double sum = 0.0;
  for (std::size_t b = 0; b < n_rows; b += detail::kRowBlock) {
    double block = 0.0;
    for (std::size_t q = b; q < std::min(n_rows, b + detail::kRowBlock); ++q) block += row_sums[q];
    sum += block;
  }
  return sum;
}

double region_sum(PathView path, const CellPlan& plan, const KernelParams& params);

/// The density or derivative estimator evaluated at every y of a uniform grid.
/// Per cell, consecutive Gaussian values are generated by a multiplicative
/// recurrence; contributions with exponent below -60 are dropped.
std::vector<double> region_sum_on_grid(PathView path, const CellPlan& plan, Integrand integrand,
                                       const UniformGrid& y_grid, double epsilon);

/// alpha_{t_k, eps}(y) over D restricted to s <= t_k, for k = 0..n.
std::vector<double> time_profile(PathView path, Integrand integrand, double y, double epsilon, double hurst = 0.5);

IncrementRange increment_range(PathView path, const CellPlan& plan);

}  // namespace kernels

namespace reference {

/// Serial double loop over every grid cell; the cell's share of the region is
/// found from its exact clipped area rather than from a CellPlan.
double region_sum(PathView path, const Region& region, const KernelParams& params);

std::vector<double> region_sum_on_grid(PathView path, const Region& region, Integrand integrand,
                                       const UniformGrid& y_grid, double epsilon);

std::vector<double> time_profile(PathView path, Integrand integrand, double y, double epsilon, double hurst = 0.5);

}  // namespace reference

}  // namespace silt
