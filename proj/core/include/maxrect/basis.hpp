#pragma once

// Enumerable, cell-aligned families of axis-parallel rectangles.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "maxrect/errors.hpp"
#include "maxrect/grid.hpp"

namespace maxrect {

enum class BasisKind { cubes, dyadic_cubes, rectangles, eccentricity, zygmund_sts };

struct BasisSpec {
  BasisKind kind = BasisKind::rectangles;
  /// Eccentricity parameter, used only by BasisKind::eccentricity.
  double eccentricity = 2.0;

  static BasisSpec rectangles() { return {BasisKind::rectangles, 0.0}; }
  static BasisSpec cubes() { return {BasisKind::cubes, 0.0}; }
  static BasisSpec dyadic() { return {BasisKind::dyadic_cubes, 0.0}; }
  static BasisSpec with_eccentricity(double n) { return {BasisKind::eccentricity, n}; }
  static BasisSpec zygmund() { return {BasisKind::zygmund_sts, 0.0}; }
};

inline constexpr std::int64_t kDefaultBudget = 100'000'000;

struct BasisBudget {
  std::int64_t max_sets = kDefaultBudget;
};

std::string to_string(BasisKind kind);
BasisKind basis_kind_from_string(const std::string& name);
/// Parses `{"kind": "eccentricity", "N": 4.0}` style config.
BasisSpec basis_spec_from_json_text(const std::string& text);

/// Throws InputError when the spec cannot be used on a grid of this rank.
void validate(const BasisSpec& spec, int rank);

/// Side-length vectors (in cells) of the non-dyadic families, in
/// enumeration order. Unused axes carry side 1.
std::vector<Index> shapes(const BasisSpec& spec, const Box& box);

/// Number of members on this grid, without visiting them.
std::int64_t count_members(const BasisSpec& spec, const Box& box);
/// Σ over members of their cell counts (cost model for brute force).
std::int64_t count_cell_visits(const BasisSpec& spec, const Box& box);

namespace detail {

class BudgetCounter {
 public:
  explicit BudgetCounter(BasisBudget b) : budget_(b.max_sets) {
    if (budget_ < 1) throw InputError("budget must be >= 1");
  }
  void tick() {
    if (++count_ > budget_) throw BudgetExceeded(count_, budget_);
  }
  std::int64_t count() const noexcept { return count_; }

 private:
  std::int64_t budget_;
  std::int64_t count_ = 0;
};

}  // namespace detail

/// Calls visit(rect) for every member of the family on the grid, in a fixed
/// order. Returns the number of members. Throws BudgetExceeded once the count
/// passes the budget.
template <class Visit>
std::int64_t for_each_member(const BasisSpec& spec, const Box& box, BasisBudget budget, Visit&& visit) {
  validate(spec, box.rank());
  detail::BudgetCounter counter(budget);
  const Index& e = box.extent();
  if (spec.kind == BasisKind::dyadic_cubes) {
    for (int side = 1;; side *= 2) {
      bool fits = true;
      for (int a = 0; a < box.rank(); ++a) fits = fits && side <= e[a];
      if (!fits) break;
      Index step{1, 1, 1};
      for (int a = 0; a < box.rank(); ++a) step[a] = side;
      for (int i = 0; i + step[0] <= e[0]; i += step[0])
        for (int j = 0; j + step[1] <= e[1]; j += step[1])
          for (int k = 0; k + step[2] <= e[2]; k += step[2]) {
            counter.tick();
            visit(Rect{{i, j, k}, {i + step[0], j + step[1], k + step[2]}});
          }
    }
    return counter.count();
  }
  for (const Index& s : shapes(spec, box)) {
    for (int i = 0; i + s[0] <= e[0]; ++i)
      for (int j = 0; j + s[1] <= e[1]; ++j)
        for (int k = 0; k + s[2] <= e[2]; ++k) {
          counter.tick();
          visit(Rect{{i, j, k}, {i + s[0], j + s[1], k + s[2]}});
        }
  }
  return counter.count();
}

/// Calls visit(rect) for every member containing the cell.
template <class Visit>
std::int64_t for_each_containing(const BasisSpec& spec, const Box& box, const Index& cell,
                                 BasisBudget budget, Visit&& visit) {
  validate(spec, box.rank());
  if (!box.in_bounds(cell)) throw InputError("containing: cell outside the grid");
  detail::BudgetCounter counter(budget);
  const Index& e = box.extent();
  if (spec.kind == BasisKind::dyadic_cubes) {
    for (int side = 1;; side *= 2) {
      bool fits = true;
      for (int a = 0; a < box.rank(); ++a) fits = fits && side <= e[a];
      if (!fits) break;
      Rect r;
      bool inside = true;
      for (int a = 0; a < box.rank(); ++a) {
        r.lo[a] = (cell[a] / side) * side;
        r.hi[a] = r.lo[a] + side;
        inside = inside && r.hi[a] <= e[a];
      }
      if (inside) {
        counter.tick();
        visit(r);
      }
    }
    return counter.count();
  }
  for (const Index& s : shapes(spec, box)) {
    Index from{}, to{};
    for (int a = 0; a < kMaxDim; ++a) {
      from[a] = std::max(0, cell[a] - s[a] + 1);
      to[a] = std::min(cell[a], e[a] - s[a]);
    }
    for (int i = from[0]; i <= to[0]; ++i)
      for (int j = from[1]; j <= to[1]; ++j)
        for (int k = from[2]; k <= to[2]; ++k) {
          counter.tick();
          visit(Rect{{i, j, k}, {i + s[0], j + s[1], k + s[2]}});
        }
  }
  return counter.count();
}

/// Materialized enumeration, for small grids and tests.
std::vector<Rect> enumerate(const BasisSpec& spec, const Box& box, BasisBudget budget = {});
std::vector<Rect> containing(const BasisSpec& spec, const Box& box, const Index& cell,
                             BasisBudget budget = {});

}  // namespace maxrect
