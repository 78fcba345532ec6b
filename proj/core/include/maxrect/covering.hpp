#pragma once

// Greedy selections from ordered rectangle families. All are deterministic
// given the input order; indices in results refer to the input list.

#include <cstddef>
#include <span>
#include <vector>

#include "maxrect/basis.hpp"
#include "maxrect/grid.hpp"

namespace maxrect {

enum class SelectionOrder { given, by_measure_desc };

SelectionOrder selection_order_from_string(const std::string& name);

/// Input permutation for the given order (stable).
std::vector<std::size_t> order_rects(std::span<const Rect> rects, SelectionOrder order);

struct SelectionResult {
  std::vector<std::size_t> selected;
  std::vector<std::size_t> rejected;
  /// Input indices in the order they were examined.
  std::vector<std::size_t> examined;
  /// E_k: selected[k] minus the union of earlier selections.
  std::vector<CellSet> disjoint_parts;
  /// Overlap with the accepted union at the time each input was examined,
  /// as a fraction of its own measure; indexed by input position.
  std::vector<double> overlap_ratio;
  /// Number of selections made before each input was examined.
  std::vector<std::size_t> accepted_before;
  /// Exponential-overlap extras.
  double union_ratio = 1.0;
  double psi_norm = 0.0;
  /// max_k |Ã_k ∩ ∪_{s<k} Ã_s| / |Ã_k| over the selection.
  double alpha = 0.0;
};

/// Accept B iff |B ∩ ∪accepted| < |B|/2.
SelectionResult select_half_overlap(const Box& box, std::span<const Rect> rects,
                                    SelectionOrder order = SelectionOrder::given);

/// Accept A iff |A ∩ ∪accepted| ≤ λ|A|.
SelectionResult select_alpha_scattered(const Box& box, std::span<const Rect> rects, double lambda,
                                       SelectionOrder order = SelectionOrder::given);

/// Sort by decreasing axis-1 side; accept R iff
/// Σ_{c∈R} exp((δ0·Σ_accepted χ)(c))^{1/(n−1)} ≤ 2·#R.
SelectionResult select_exp_overlap(const Box& box, std::span<const Rect> rects, int n, double delta0);

/// Union of the chosen rectangles.
CellSet union_of(const Box& box, std::span<const Rect> rects, std::span<const std::size_t> which);
CellSet union_of(const Box& box, std::span<const Rect> rects);

/// Every rejected B has |B ∩ ∪selected| ≥ |B|/2 and every |E_k| > |B̃_k|/2.
bool verify_half_overlap(const Box& box, std::span<const Rect> rects, const SelectionResult& sel);

/// Every selected Ã_k has overlap ≤ λ|Ã_k| with the earlier selections.
bool verify_scattered(const Box& box, std::span<const Rect> rects, const SelectionResult& sel, double lambda);

/// Every rejected A lies in {M_B χ_{∪selected so far} > λ}.
bool verify_scattered_containment(const Box& box, std::span<const Rect> rects, const SelectionResult& sel,
                                  const BasisSpec& spec, double lambda);

struct ChainReport {
  /// max over i<j of w(∪_{s<j}A_s) / [w(∪_{s<i}A_s) + w(∪_{i≤s<j}Ã_s)].
  double ratio = 0.0;
  /// 1 + max over i<j of condition_a_ratio(w, ∪_{s<i}A_s ∪ ∪_{i≤s<j}Ã_s, λ).
  double constant = 0.0;
};

/// Weighted chain property of an α-scattered selection, with indices in
/// examination order and Ã_s = ∅ for rejected s.
ChainReport weighted_chain(const GridFunction& w, std::span<const Rect> rects, const SelectionResult& sel,
                           const BasisSpec& spec, double lambda);

}  // namespace maxrect
