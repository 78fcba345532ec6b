#pragma once

// Constant bookkeeping for the bilinear interpolation estimates.

#include "maxrect/grid.hpp"
#include "maxrect/orlicz.hpp"

namespace maxrect {

struct L1xLpResult {
  double epsilon = 0.0;
  double phi_epsilon = 0.0;
  double f_norm = 0.0;   ///< ∫ Φ(f/√α)
  double g_norm = 0.0;   ///< (∫ Φ(g/√α)^p)^{1/p}
  double doubling = 0.0; ///< D with Φ(√2·t) ≤ D·Φ(t)
  double L1_bound = 0.0;
  double L2_bound = 0.0;
  double bound = 0.0;
};

/// Φ(c·t) ≤ factor·Φ(t) for all t ≥ 0, c ≥ 1.
double young_dilation_factor(const YoungSpec& young, double c);

/// Split bounds at the ε with Φ(ε)^{p+1} = B1·‖Φ(g/√α)‖_p^p / (B2²·‖Φ(f/√α)‖_1).
L1xLpResult l1xlp_bound(const GridFunction& f, const GridFunction& g, double alpha, double B1, double B2, double p,
                        const YoungSpec& young);
L1xLpResult l1xlp_bound(const GridFunction& f, const GridFunction& g, double alpha, double B1, double B2, double p,
                        int n);

struct InterpConstants {
  double A = 0.0, B1 = 0.0, B2 = 0.0, B = 0.0;
  double s1 = 0.0, s2 = 0.0, p = 0.0;
  /// 1/s = 1/s1 + 1/s2.
  double s() const noexcept { return 1.0 / (1.0 / s1 + 1.0 / s2); }
};

struct StrongTypeConstant {
  double I = 0.0, II = 0.0, III = 0.0, IV = 0.0, total = 0.0;
};

/// I = 2A∫₀¹λ^{2p−1}Φ(1/λ)dλ, II = B1^s(p−s1/2)^{−s/s1}(s2/2−p)^{−s/s2},
/// III likewise with B2, IV = B^s/(s−p). Throws DivergenceError on the
/// boundary of the finite region.
StrongTypeConstant strong_type_constant(const InterpConstants& c, const YoungSpec& young);

/// ∫₀¹ λ^{2p−1} Φ(1/λ) dλ by adaptive Simpson.
double interp_integral_I(double p, const YoungSpec& young);

}  // namespace maxrect
