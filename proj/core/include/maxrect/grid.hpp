#pragma once

// Cell-constant functions and sets on an axis-aligned box, with exact
// rectangle sums from summed-area tables. Grids have rank 1..3; internally
// every index is padded to three axes with trailing extents of 1.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "maxrect/errors.hpp"

namespace maxrect {

inline constexpr int kMaxDim = 3;
using Index = std::array<int, kMaxDim>;

/// Half-open cell-index box. Axes beyond the grid rank hold lo = 0, hi = 1.
struct Rect {
  Index lo{0, 0, 0};
  Index hi{1, 1, 1};

  std::int64_t cells() const noexcept {
    return std::int64_t(hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
  }
  bool contains(const Index& c) const noexcept {
    for (int a = 0; a < kMaxDim; ++a)
      if (c[a] < lo[a] || c[a] >= hi[a]) return false;
    return true;
  }
  int side(int axis) const noexcept { return hi[axis] - lo[axis]; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

Rect make_rect(std::span<const int> lo, std::span<const int> hi);

class Box {
 public:
  Box() = default;
  Box(std::vector<double> lower, std::vector<double> upper, std::vector<int> dims);

  int rank() const noexcept { return rank_; }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  const std::vector<int>& dims() const noexcept { return dims_; }
  /// Extents padded to kMaxDim axes.
  const Index& extent() const noexcept { return extent_; }

  std::size_t cell_count() const noexcept { return cell_count_; }
  double cell_volume() const noexcept { return cell_volume_; }
  double cell_width(int axis) const { return (upper_[axis] - lower_[axis]) / dims_[axis]; }

  std::size_t flat(const Index& c) const noexcept {
    return (std::size_t(c[0]) * extent_[1] + c[1]) * extent_[2] + c[2];
  }
  Index unflat(std::size_t i) const noexcept {
    Index c{};
    c[2] = int(i % extent_[2]);
    i /= extent_[2];
    c[1] = int(i % extent_[1]);
    c[0] = int(i / extent_[1]);
    return c;
  }
  bool in_bounds(const Index& c) const noexcept;
  /// Physical coordinates of a cell center (length rank()).
  std::vector<double> center(const Index& c) const;
  /// Whole grid as one rectangle.
  Rect full() const noexcept;

  friend bool operator==(const Box& a, const Box& b) {
    return a.lower_ == b.lower_ && a.upper_ == b.upper_ && a.dims_ == b.dims_;
  }

 private:
  int rank_ = 0;
  std::vector<double> lower_, upper_;
  std::vector<int> dims_;
  Index extent_{1, 1, 1};
  std::size_t cell_count_ = 0;
  double cell_volume_ = 0.0;
};

/// Nonnegative cell-constant function.
class GridFunction {
 public:
  GridFunction() = default;
  /// Validates finiteness and nonnegativity of every value.
  GridFunction(Box box, std::vector<double> values);
  /// Constant function.
  static GridFunction constant(const Box& box, double value);

  const Box& box() const noexcept { return box_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double at(const Index& c) const noexcept { return values_[box_.flat(c)]; }

  /// ∫ g = Σ values × cell volume.
  double integral() const;
  double max() const;
  bool is_zero() const;

 private:
  Box box_;
  std::vector<double> values_;
};

using Sampler = std::function<double(std::span<const double>)>;

/// Evaluates the sampler at every cell center.
GridFunction build_grid(const Box& box, const Sampler& sampler);

/// Membership bitmap over the cells of a box.
class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(Box box) : box_(std::move(box)), bits_(box_.cell_count(), 0) {}
  static CellSet all(const Box& box);
  static CellSet of_rect(const Box& box, const Rect& r);

  const Box& box() const noexcept { return box_; }
  bool contains(std::size_t i) const noexcept { return bits_[i] != 0; }
  void insert(std::size_t i) noexcept { bits_[i] = 1; }
  void insert(const Rect& r);
  std::size_t count() const noexcept;
  double measure() const noexcept { return double(count()) * box_.cell_volume(); }
  bool empty() const noexcept { return count() == 0; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  /// Number of cells of r inside the set.
  std::int64_t overlap(const Rect& r) const noexcept;
  CellSet& operator|=(const CellSet& other);
  bool disjoint(const CellSet& other) const;
  /// Indicator function of the set.
  GridFunction indicator() const;

 private:
  Box box_;
  std::vector<std::uint8_t> bits_;
};

/// Lower-orthant partial sums, padded with a zero layer on each axis.
class SummedTable {
 public:
  explicit SummedTable(const GridFunction& g);

  const Box& box() const noexcept { return box_; }
  /// Σ of cell values over r via 2^rank-corner inclusion-exclusion.
  long double rect_sum(const Rect& r) const;
  /// Σ of cell values over the orthant [0, c).
  long double orthant_sum(const Index& upper) const { return table_[offset(upper)]; }
  /// Rank-2 rectangle [a,b)×[c,d); identical arithmetic to rect_sum.
  long double rect_sum2(int a, int b, int c, int d) const noexcept {
    return (table_[offset({b, d, 1})] - table_[offset({a, d, 1})]) -
           (table_[offset({b, c, 1})] - table_[offset({a, c, 1})]);
  }

 private:
  std::size_t offset(const Index& c) const noexcept {
    return (std::size_t(c[0]) * stride_[1] + c[1]) * stride_[2] + c[2];
  }

  Box box_;
  Index stride_{};
  std::vector<long double> table_;
};

SummedTable prefix_sums(const GridFunction& g);

/// Exact mean of the cell values in r. Throws InputError for empty or
/// out-of-range rectangles.
double rect_average(const SummedTable& t, const Rect& r);
/// Unchecked mean, for kernels that enumerate valid rectangles.
inline double rect_average_unchecked(const SummedTable& t, const Rect& r) {
  return double(t.rect_sum(r) / (long double)r.cells());
}

/// |{g > λ}|, counted in cells × cell volume.
double superlevel_measure(const GridFunction& g, double lambda);
/// Cells where g > λ.
CellSet superlevel_set(const GridFunction& g, double lambda);

/// w(E) = Σ_{c∈E} w[c] × cell volume.
double set_mass(const GridFunction& w, const CellSet& e);

void check_same_grid(const Box& a, const Box& b, const char* what);

/// Box parsed from the `lower`, `upper`, `dims` fields.
Box parse_box(const std::string& json_text);

/// Reads a grid function document: `lower`, `upper`, `dims` and either a
/// row-major `values` array or an `expr` preset (`indicator_box`,
/// `constant[|c]`, `power|alpha`, `scaled_indicator|N`).
GridFunction read_grid_function(const std::string& path);
GridFunction grid_function_from_json_text(const std::string& text);
std::string grid_function_to_json_text(const GridFunction& g);

/// Preset samplers: indicator of [0,1]^n, constant, |x|^alpha, N·indicator.
GridFunction preset(const Box& box, const std::string& expr);

}  // namespace maxrect
