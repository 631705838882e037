#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace silt {

/// Axis-aligned rectangle [r_lo, r_hi] x [s_lo, s_hi] in the (r, s) plane.
struct Rectangle {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double s_lo = 0.0;
  double s_hi = 0.0;
};

/// Union of rectangles intersected with {s - r > kappa}. kappa = 0 gives
/// subsets of the triangle D = {0 < r < s < t}.
class Region {
 public:
  /// D = {0 < r < s < t}.
  static Region full_triangle(double t);
  /// D_kappa = {0 < r < s - kappa < t - kappa}.
  static Region offset_triangle(double t, double kappa);
  /// A_k^j = [(2k-2)2^-j, (2k-1)2^-j] x [(2k-1)2^-j, (2k)2^-j], scaled by t.
  static Region dyadic_square(int j, int k, double t = 1.0);
  static Region from_rectangles(std::vector<Rectangle> rectangles, double kappa = 0.0, std::string id = "custom");
  /// Disjoint union; both operands must share kappa.
  static Region disjoint_union(const Region& a, const Region& b);

  const std::vector<Rectangle>& rectangles() const noexcept { return rectangles_; }
  double kappa() const noexcept { return kappa_; }
  const std::string& id() const noexcept { return id_; }
  /// Largest time coordinate touched by the region.
  double extent() const noexcept;
  /// Exact Lebesgue measure.
  double area() const noexcept;

 private:
  Region(std::vector<Rectangle> rectangles, double kappa, std::string id);

  std::vector<Rectangle> rectangles_;
  double kappa_;
  std::string id_;
};

/// One row of grid cells (r-cell i) that a region covers. Cells j in
/// [j_full_begin, j_end) are fully inside; when `half` is set the cell
/// (i, i + offset) contributes its upper-left triangle.
struct CellRow {
  std::size_t i = 0;
  std::size_t j_full_begin = 0;
  std::size_t j_end = 0;
  bool half = false;
};

struct CellPlan {
  std::size_t n_steps = 0;
  double step = 0.0;
  std::size_t offset = 0;  // kappa / step
  std::vector<CellRow> rows;

  std::size_t cell_count() const noexcept;
};

/// Maps a region onto the uniform grid of a path. Rectangle edges and kappa
/// must be grid-aligned (relative tolerance 1e-9 of a step) and inside [0, horizon].
CellPlan plan_cells(const Region& region, std::size_t n_steps, double horizon);

}  // namespace silt
