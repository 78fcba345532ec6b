#pragma once

// Maximal operators over a basis: M_B f, the weighted M_{B,w} f, and the
// multilinear M_B(f_1, ..., f_m). Every path takes the sup over cell-aligned
// members only; cells covered by no member get 0.

#include <optional>
#include <span>
#include <vector>

#include "maxrect/basis.hpp"
#include "maxrect/grid.hpp"

namespace maxrect {

enum class Algorithm { brute, sweep, automatic };

/// Below this many rectangle-cell visits `automatic` picks brute force.
inline constexpr std::int64_t kAutoBruteVisits = 100'000;

struct MaximalRequest {
  std::vector<GridFunction> functions;
  std::optional<GridFunction> weight;
  BasisSpec spec = BasisSpec::rectangles();
  Algorithm algorithm = Algorithm::automatic;
  BasisBudget budget{};
  int threads = 1;
};

/// Dispatches on the request shape (m = 1, weighted, multilinear).
GridFunction compute(const MaximalRequest& req);

GridFunction maximal_map(const GridFunction& f, const BasisSpec& spec,
                         Algorithm algorithm = Algorithm::automatic, BasisBudget budget = {},
                         int threads = 1);

/// max over r ∋ c of (Σ_r f·w)/(Σ_r w). The weight must be strictly positive.
GridFunction weighted_maximal_map(const GridFunction& f, const GridFunction& w, const BasisSpec& spec,
                                  Algorithm algorithm = Algorithm::automatic, BasisBudget budget = {},
                                  int threads = 1);

/// max over r ∋ c of ∏_i avg_r f_i.
GridFunction multilinear_maximal_map(std::span<const GridFunction> fs, const BasisSpec& spec,
                                     Algorithm algorithm = Algorithm::automatic,
                                     BasisBudget budget = {}, int threads = 1);

struct RectValue {
  Rect rect;
  double value = 0.0;
};

/// Per-cell maximum of the values of all rectangles containing the cell
/// (0 where none does). Offline range-assign-max: segment tree over axis 0
/// whose nodes solve the same problem on the remaining axes.
GridFunction sweep_engine(const Box& box, std::span<const RectValue> rects, int threads = 1);

/// Cellwise max of b into a (same grid).
void merge_max(std::vector<double>& a, std::span<const double> b);

}  // namespace maxrect
