#pragma once

// Young functions, Luxemburg norms and the averaging lemmas built on them.
//
//   Φₙ(t) = t·log(e+t)^{n−1}          (canonical, smooth)
//   Φₙ(t) = t·(1 + (log⁺t)^{n−1})     (classic variant, for comparison)
//   Ψₙ(t) = exp(t^{1/(n−1)}) − 1
//   Φ⁽ᵐ⁾  = Φ∘…∘Φ (m times)

#include <span>
#include <string>
#include <vector>

#include "maxrect/grid.hpp"

namespace maxrect {

enum class YoungFamily { phi, phi_classic, psi, linear };

struct YoungSpec {
  YoungFamily family = YoungFamily::phi;
  int n = 2;  ///< dimension parameter (phi, phi_classic, psi); n ≥ 2
  int m = 1;  ///< iteration count (phi, phi_classic); m ≥ 1

  static YoungSpec phi(int n, int m = 1) { return {YoungFamily::phi, n, m}; }
  static YoungSpec phi_classic(int n, int m = 1) { return {YoungFamily::phi_classic, n, m}; }
  static YoungSpec psi(int n) { return {YoungFamily::psi, n, 1}; }
  static YoungSpec linear() { return {YoungFamily::linear, 2, 1}; }
};

void validate(const YoungSpec& spec);
/// Parses "n=2,m=1", "psi,n=2", "linear", "classic,n=2".
YoungSpec young_spec_from_string(const std::string& text);
std::string to_string(const YoungSpec& spec);

double young_eval(const YoungSpec& spec, double t);
/// The t ≥ 0 with young_eval(t) = y, by bracket doubling and bisection.
double young_inverse(const YoungSpec& spec, double y);

struct NormResult {
  double value = 0.0;
  int iterations = 0;
  /// |modular(value) − 1|; 0 when value is 0.
  double residual = 0.0;
};

/// Mean over E of Φ(f/λ).
double modular(std::span<const double> f, std::span<const std::uint8_t> in_set, const YoungSpec& spec,
               double lambda);
double modular(const GridFunction& f, const CellSet& e, const YoungSpec& spec, double lambda);

/// inf{λ > 0 : modular ≤ 1}.
NormResult luxemburg_norm(std::span<const double> f, std::span<const std::uint8_t> in_set,
                          const YoungSpec& spec);
NormResult luxemburg_norm(const GridFunction& f, const CellSet& e, const YoungSpec& spec);

/// Mean over E of Φ(f).
double young_mean(const GridFunction& f, const CellSet& e, const YoungSpec& spec);

struct HolderCheck {
  double lhs = 0.0;  ///< mean over E of |f·g|
  double rhs = 0.0;  ///< 2·‖f‖_{Φₙ,E}·‖g‖_{Ψₙ,E}
};

HolderCheck holder_check(const GridFunction& f, const GridFunction& g, const CellSet& e, int n = 2);

struct KeyLemmaReport {
  bool applicable = false;   ///< ∏‖fᵢ‖_{Φₙ,E} > 1
  double lhs_product = 0.0;  ///< ∏‖fᵢ‖_{Φₙ,E}
  double rhs_product = 0.0;  ///< ∏ mean_E Φₙ⁽ᵐ⁾(fᵢ)
  double c_required = 0.0;   ///< lhs/rhs
};

/// Both sides of the product-of-norms estimate with the m-fold iterate on
/// the right; m is the number of functions.
KeyLemmaReport keylemma_check(std::span<const GridFunction> fs, const CellSet& e, int n);

}  // namespace maxrect
