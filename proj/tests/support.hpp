#pragma once

#include <maxrect/grid.hpp>

#include <cmath>
#include <random>
#include <vector>

namespace maxrect::testing {

inline Box unit_box(std::vector<int> dims) {
  std::vector<double> lo(dims.size(), 0.0), hi(dims.size(), 1.0);
  return Box(lo, hi, dims);
}

inline GridFunction random_function(const Box& box, std::mt19937_64& rng, double zero_fraction = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(box.cell_count());
  for (auto& x : v) x = u(rng) < zero_fraction ? 0.0 : u(rng);
  return GridFunction(box, std::move(v));
}

inline GridFunction random_weight(const Box& box, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(box.cell_count());
  for (auto& x : v) x = std::exp(u(rng));
  return GridFunction(box, std::move(v));
}

inline GridFunction from_values(const Box& box, std::vector<double> v) { return GridFunction(box, std::move(v)); }

inline Rect rect2(int a, int b, int c, int d) { return Rect{{a, c, 0}, {b, d, 1}}; }

inline bool bitwise_equal(const GridFunction& a, const GridFunction& b) {
  if (a.values().size() != b.values().size()) return false;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace maxrect::testing
