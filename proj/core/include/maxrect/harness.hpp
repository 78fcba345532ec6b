#pragma once

// End-to-end experiments and the analytic oracle for the unit-square
// indicator.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxrect/basis.hpp"
#include "maxrect/grid.hpp"
#include "maxrect/orlicz.hpp"

namespace maxrect {

/// Rows of named columns; written as CSV with %.17g.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const;
  /// Values of one column.
  std::vector<double> column(const std::string& name) const;
};

struct ExperimentRow {
  std::vector<std::pair<std::string, double>> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  std::int64_t runtime_ms = 0;
  bool flagged = false;  ///< degenerate or divergent row
};

Table to_table(const std::vector<ExperimentRow>& rows);

/// s(x₁)s(x₂) with s(u) = 1 on [0,1], 1/u for u > 1, 1/(1−u) for u < 0.
double analytic_square_profile(double x1, double x2);

/// |{s(x)s(y) > λ}| = 1 + (4/λ)ln(1/λ).
double analytic_square_superlevel(double lambda);

/// |{s(x)s(y) > λ} ∩ box| for a rank-2 box, by midpoint integration over x
/// of the exact y-measure.
double analytic_square_superlevel_in(double lambda, const Box& box, int steps = 200000);

/// Geometric grid from hi down to lo, `per_decade` points per decade,
/// endpoints included.
std::vector<double> geometric_grid(double lo, double hi, int per_decade);
/// Exactly `count` geometric points from hi down to lo.
std::vector<double> geometric_points(double lo, double hi, int count);

/// Per (f, λ): lhs = |{M_ℛ f > λ}|, rhs = ∫Φₙ(f/λ). Params: f, lambda.
std::vector<ExperimentRow> jmz_experiment(const std::vector<GridFunction>& fs, const std::vector<double>& lambdas,
                                          int n, int threads = 1, BasisBudget budget = {});

struct BsmfRow {
  double lambda = 0.0;
  double lhs = 0.0;
  /// rhs[k−1] = (∏ᵢ ∫Φₙ⁽ᵏ⁾(fᵢ/λ))^{1/m}, k = 1..m.
  std::vector<double> rhs;
  std::vector<double> ratio;
  bool flagged = false;
};

struct BsmfReport {
  std::vector<BsmfRow> rows;
  /// multilinear map ≤ ∏ maximal maps at every cell.
  bool tensor_bound_holds = true;
  /// When all fᵢ coincide: multilinear map equals (M_ℛ f)^m exactly.
  std::optional<bool> identity_holds;
};

BsmfReport bsmf_experiment(const std::vector<GridFunction>& fs, const std::vector<double>& lambdas, int n,
                           int threads = 1, BasisBudget budget = {});
Table to_table(const BsmfReport& report);

struct SharpnessRow {
  double N = 0.0, lambda = 0.0, lhs = 0.0, rhs_phi1 = 0.0, rhs_phi2 = 0.0, ratio1 = 0.0, ratio2 = 0.0;
  std::int64_t runtime_ms = 0;
};

/// f = χ_{[0,1]²}, g = Nχ_{[0,1]²}, α = 1/10: lhs = analytic area at
/// λ = 1/(10√N); rhs_phik = (Φ₂⁽ᵏ⁾(10)Φ₂⁽ᵏ⁾(10N))^{1/2}.
std::vector<SharpnessRow> sharpness_sweep(const std::vector<double>& Ns);
Table to_table(const std::vector<SharpnessRow>& rows);

struct LinearFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

enum class ProbeMode { weak, strong };

struct ProbeReport {
  double value = 0.0;           ///< sup over the test tuples
  std::size_t argmax = 0;       ///< index of the attaining tuple
  std::vector<double> per_test; ///< NaN for flagged tuples
};

/// weak: sup_λ ν({M f⃗ > λ})^{1/p}·λ / ∏‖fᵢ‖_{L^{pᵢ}(wᵢ)};
/// strong: ‖M f⃗‖_{Lᵖ(ν)} / ∏‖fᵢ‖_{L^{pᵢ}(wᵢ)}. ν defaults to ν_w⃗.
ProbeReport weighted_bound_probe(const std::vector<GridFunction>& ws, const std::vector<double>& ps,
                                 const BasisSpec& spec, const std::vector<std::vector<GridFunction>>& tests,
                                 ProbeMode mode, const GridFunction* nu = nullptr, int threads = 1);

/// Standard test tuples on w's grid: first-cell spikes, initial-segment
/// indicators and the extremal functions wᵢ^{1−pᵢ'} on initial segments.
std::vector<std::vector<GridFunction>> default_probe_tests(const std::vector<GridFunction>& ws,
                                                           const std::vector<double>& ps);

/// FNV-1a 64-bit hash, hex encoded.
std::string config_hash(const std::string& text);

/// JSON run manifest: command, resolved config, hash, seed, version, timestamp.
std::string run_manifest(const std::string& command, const std::string& config_json, std::uint64_t seed);

/// Library version string.
const char* version();

}  // namespace maxrect
