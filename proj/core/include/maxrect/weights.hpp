#pragma once

// Weight-class constants over a basis. Every constant is a maximum over the
// enumerated cell-aligned members, i.e. a lower bound for the continuous
// supremum; reports carry the attaining member.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "maxrect/basis.hpp"
#include "maxrect/grid.hpp"

namespace maxrect {

/// (p_1, ..., p_m) with each p_j ≥ 1 and 1/p = Σ 1/p_j.
class ExponentVector {
 public:
  explicit ExponentVector(std::vector<double> ps);

  std::size_t size() const noexcept { return ps_.size(); }
  double operator[](std::size_t j) const noexcept { return ps_[j]; }
  double p() const noexcept { return p_; }
  /// p_j' = p_j/(p_j − 1); +inf for p_j = 1.
  double conjugate(std::size_t j) const noexcept;
  const std::vector<double>& values() const noexcept { return ps_; }

 private:
  std::vector<double> ps_;
  double p_ = 1.0;
};

struct ConstantReport {
  double value = 0.0;
  Rect attaining_rect{};
  std::int64_t sets_scanned = 0;
};

/// Throws unless every cell of every weight is finite and > 0.
void check_weights(std::span<const GridFunction> ws);

/// ν = ∏ w_j^{p/p_j}, cellwise.
GridFunction nu_of(std::span<const GridFunction> ws, const ExponentVector& ps);

/// p > 1: max over B of avg_B w · (avg_B w^{1−p'})^{p−1}.
/// p = 1: max over cells of M_B w / w.
ConstantReport ap_constant(const GridFunction& w, double p, const BasisSpec& spec, BasisBudget budget = {});

/// max over B of avg_B ν · ∏_j (avg_B w_j^{1−p_j'})^{p/p_j'}; factors with
/// p_j = 1 are (min_B w_j)^{−p}. ν defaults to nu_of(ws, ps).
ConstantReport multi_ap_constant(std::span<const GridFunction> ws, const ExponentVector& ps,
                                 const BasisSpec& spec, const GridFunction* nu_override = nullptr,
                                 BasisBudget budget = {});

/// max over B of avg_B ν · ∏_j (avg_B w_j^{(1−p_j')r})^{p/(p_j' r)}, r > 1.
ConstantReport bump_constant(const GridFunction& nu, std::span<const GridFunction> ws, const ExponentVector& ps,
                             double r, const BasisSpec& spec, BasisBudget budget = {});

/// w({M_B χ_E > λ}) / w(E).
double condition_a_ratio(const GridFunction& w, const BasisSpec& spec, const CellSet& e, double lambda,
                         BasisBudget budget = {});

struct ConditionAReport {
  double c_hat = 0.0;
  CellSet worst_e;
  int trials = 0;
  int skipped = 0;
};

/// Samples E as unions of 1..max_rects random rectangles and reports the
/// largest condition_a_ratio seen.
ConditionAReport condition_a_probe(const GridFunction& w, const BasisSpec& spec, double lambda,
                                   std::uint64_t seed, int trials, int max_rects = 3,
                                   BasisBudget budget = {});

/// Uniform random nonempty rectangle on the grid.
Rect random_rect(const Box& box, std::mt19937_64& rng, int max_side = 0);

}  // namespace maxrect
