#include "silt/region.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "silt/error.hpp"

namespace silt {

namespace {

double overlap(double a_lo, double a_hi, double b_lo, double b_hi) {
  return std::max(0.0, std::min(a_hi, b_hi) - std::max(a_lo, b_lo));
}

// Area of [r_lo,r_hi] x [s_lo,s_hi] intersected with {s - r > kappa}.
double clipped_area(const Rectangle& rect, double kappa) {
  // Integrate over r the length of s in [max(s_lo, r + kappa), s_hi].
  auto length_at = [&](double r) { return std::clamp(rect.s_hi - std::max(rect.s_lo, r + kappa), 0.0, rect.s_hi - rect.s_lo); };
  // Piecewise linear in r with kinks at r = s_lo - kappa and r = s_hi - kappa.
  std::vector<double> knots{rect.r_lo, rect.r_hi};
  for (double k : {rect.s_lo - kappa, rect.s_hi - kappa})
    if (k > rect.r_lo && k < rect.r_hi) knots.push_back(k);
  std::sort(knots.begin(), knots.end());
  double area = 0.0;
  for (std::size_t q = 0; q + 1 < knots.size(); ++q)
    area += 0.5 * (length_at(knots[q]) + length_at(knots[q + 1])) * (knots[q + 1] - knots[q]);
  return area;
}

std::size_t aligned_index(double x, double step, const char* what) {
  const double q = x / step;
  const double rounded = std::round(q);
  if (std::abs(q - rounded) > 1e-9 || rounded < 0.0) {
    std::ostringstream os;
    os << what << " = " << x << " is not aligned with the path grid (step " << step << ")";
    throw DomainError(os.str());
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace

Region::Region(std::vector<Rectangle> rectangles, double kappa, std::string id)
    : rectangles_(std::move(rectangles)), kappa_(kappa), id_(std::move(id)) {
  if (kappa_ < 0.0) throw DomainError("region offset kappa must be nonnegative");
  for (const auto& r : rectangles_) {
    if (r.r_lo < 0.0 || r.s_lo < 0.0 || !(r.r_hi > r.r_lo) || !(r.s_hi > r.s_lo))
      throw DomainError("region rectangle must be nondegenerate with nonnegative corners");
    if (!(clipped_area(r, kappa_) > 0.0)) throw DomainError("region rectangle lies outside {s - r > kappa}");
  }
  for (std::size_t a = 0; a < rectangles_.size(); ++a)
    for (std::size_t b = a + 1; b < rectangles_.size(); ++b) {
      const auto& x = rectangles_[a];
      const auto& y = rectangles_[b];
      if (overlap(x.r_lo, x.r_hi, y.r_lo, y.r_hi) * overlap(x.s_lo, x.s_hi, y.s_lo, y.s_hi) > 0.0)
        throw DomainError("region rectangles overlap");
    }
}

Region Region::full_triangle(double t) {
  if (!(t > 0.0)) throw DomainError("full_triangle: t must be positive");
  return Region({{0.0, t, 0.0, t}}, 0.0, "D");
}

Region Region::offset_triangle(double t, double kappa) {
  if (!(t > kappa)) throw DomainError("offset_triangle: need t > kappa");
  std::ostringstream id;
  id << "D_kappa=" << kappa;
  return Region({{0.0, t - kappa, kappa, t}}, kappa, id.str());
}

Region Region::dyadic_square(int j, int k, double t) {
  if (j < 1 || k < 1 || k > (1 << (j - 1))) throw DomainError("dyadic_square: need j >= 1 and 1 <= k <= 2^(j-1)");
  const double w = t * std::ldexp(1.0, -j);
  std::ostringstream id;
  id << "A_" << k << "^" << j;
  return Region({{(2 * k - 2) * w, (2 * k - 1) * w, (2 * k - 1) * w, (2 * k) * w}}, 0.0, id.str());
}

Region Region::from_rectangles(std::vector<Rectangle> rectangles, double kappa, std::string id) {
  return Region(std::move(rectangles), kappa, std::move(id));
}

Region Region::disjoint_union(const Region& a, const Region& b) {
  if (a.kappa_ != b.kappa_) throw DomainError("disjoint_union: regions must share kappa");
  std::vector<Rectangle> rects = a.rectangles_;
  rects.insert(rects.end(), b.rectangles_.begin(), b.rectangles_.end());
  return Region(std::move(rects), a.kappa_, a.id_ + "+" + b.id_);
}

double Region::extent() const noexcept {
  double e = 0.0;
  for (const auto& r : rectangles_) e = std::max({e, r.r_hi, r.s_hi});
  return e;
}

double Region::area() const noexcept {
  double total = 0.0;
  for (const auto& r : rectangles_) total += clipped_area(r, kappa_);
  return total;
}

std::size_t CellPlan::cell_count() const noexcept {
  std::size_t c = 0;
  for (const auto& row : rows) c += (row.j_end - row.j_full_begin) + (row.half ? 1 : 0);
  return c;
}

CellPlan plan_cells(const Region& region, std::size_t n_steps, double horizon) {
  if (n_steps < 2) throw DomainError("estimators need a path with at least 2 steps");
  const double step = horizon / static_cast<double>(n_steps);
  if (region.extent() > horizon * (1.0 + 1e-12))
    throw DomainError("region " + region.id() + " extends beyond the path horizon");

  CellPlan plan;
  plan.n_steps = n_steps;
  plan.step = step;
  plan.offset = aligned_index(region.kappa(), step, "kappa");
  for (const auto& rect : region.rectangles()) {
    const std::size_t ia = aligned_index(rect.r_lo, step, "r_lo");
    const std::size_t ib = std::min(aligned_index(rect.r_hi, step, "r_hi"), n_steps);
    const std::size_t ja = aligned_index(rect.s_lo, step, "s_lo");
    const std::size_t jb = std::min(aligned_index(rect.s_hi, step, "s_hi"), n_steps);
    for (std::size_t i = ia; i < ib; ++i) {
      const std::size_t diag = i + plan.offset;
      CellRow row;
      row.i = i;
      row.j_end = jb;
      row.half = diag >= ja && diag < jb;
      row.j_full_begin = std::max(ja, diag + 1);
      if (row.j_full_begin > jb) row.j_full_begin = jb;
      if (row.half || row.j_full_begin < row.j_end) plan.rows.push_back(row);
    }
  }
  return plan;
}

}  // namespace silt
