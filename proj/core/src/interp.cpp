#include "maxrect/interp.hpp"

#include <cmath>
#include <limits>

#include "maxrect/errors.hpp"

namespace maxrect {

namespace {

double simpson(const auto& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = f(0.5 * (a + m)), rm = f(0.5 * (m + b));
  const double left = (m - a) / 6.0 * (fa + 4.0 * lm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * rm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, a, m, fa, lm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, rm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const auto& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 60);
}

double composed_norm_l1(const GridFunction& f, double root_alpha, const YoungSpec& y) {
  double s = 0.0;
  for (double v : f.values()) s += young_eval(y, v / root_alpha);
  return s * f.box().cell_volume();
}

double composed_norm_lp(const GridFunction& g, double root_alpha, const YoungSpec& y, double p) {
  double s = 0.0;
  for (double v : g.values()) s += std::pow(young_eval(y, v / root_alpha), p);
  return std::pow(s * g.box().cell_volume(), 1.0 / p);
}

}  // namespace

double young_dilation_factor(const YoungSpec& young, double c) {
  validate(young);
  if (!(c >= 1.0)) throw InputError("young_dilation_factor: c must be >= 1");
  switch (young.family) {
    case YoungFamily::linear:
      return c;
    case YoungFamily::psi:
      throw InputError("young_dilation_factor: Psi is not doubling");
    case YoungFamily::phi:
    case YoungFamily::phi_classic:
      break;
  }
  // Φₙ(ct) ≤ c(1+ln c)^{n−1}Φₙ(t); composing, each stage dilates by the
  // previous factor.
  double d = c;
  for (int k = 0; k < young.m; ++k) d = d * std::pow(1.0 + std::log(d), young.n - 1);
  return d;
}

L1xLpResult l1xlp_bound(const GridFunction& f, const GridFunction& g, double alpha, double B1, double B2, double p,
                        const YoungSpec& young) {
  if (!(alpha > 0.0)) throw InputError("l1xlp_bound: alpha must be > 0");
  if (!(p > 1.0) || !std::isfinite(p)) throw InputError("l1xlp_bound: p must be in (1, inf)");
  if (!(B1 > 0.0) || !(B2 > 0.0)) throw InputError("l1xlp_bound: B1 and B2 must be > 0");
  check_same_grid(f.box(), g.box(), "l1xlp_bound");
  if (g.is_zero()) throw InputError("l1xlp_bound: g vanishes identically");

  L1xLpResult r;
  const double ra = std::sqrt(alpha);
  r.f_norm = composed_norm_l1(f, ra, young);
  r.g_norm = composed_norm_lp(g, ra, young, p);
  r.doubling = young_dilation_factor(young, std::sqrt(2.0));
  if (r.f_norm == 0.0) {
    r.epsilon = std::numeric_limits<double>::infinity();
    r.phi_epsilon = std::numeric_limits<double>::infinity();
    return r;
  }
  const double gp = std::pow(r.g_norm, p);
  r.phi_epsilon = std::pow(B1 * gp / (B2 * B2 * r.f_norm), 1.0 / (p + 1.0));
  r.epsilon = young_inverse(young, r.phi_epsilon);
  const double d = r.doubling;
  r.L1_bound = std::pow(d, 0.5 * (p + 1.0)) * std::sqrt(B1 * r.f_norm * gp / std::pow(r.phi_epsilon, p - 1.0));
  r.L2_bound = d * B2 * r.phi_epsilon * r.f_norm;
  r.bound = r.L1_bound + r.L2_bound;
  return r;
}

L1xLpResult l1xlp_bound(const GridFunction& f, const GridFunction& g, double alpha, double B1, double B2, double p,
                        int n) {
  return l1xlp_bound(f, g, alpha, B1, B2, p, YoungSpec::phi(n));
}

double interp_integral_I(double p, const YoungSpec& young) {
  validate(young);
  if (!(p > 0.5)) throw DivergenceError("I", "p <= 1/2");
  const double q = std::max(1.0, 2.0 / (2.0 * p - 1.0));
  const bool stable_phi = young.family == YoungFamily::phi && young.m == 1;
  // λ^{2p−1}Φ(1/λ) = λ^{2p−2}·[λΦ(1/λ)], with dλ = q t^{q−1} dt.
  auto integrand = [&](double t) -> double {
    if (t <= 0.0) return 0.0;
    const double lam = std::pow(t, q);
    if (lam <= 0.0) return 0.0;
    double lphi;
    if (stable_phi) {
      lphi = std::pow(std::log1p(std::exp(1.0) * lam) - std::log(lam), young.n - 1);
    } else {
      lphi = lam * young_eval(young, 1.0 / lam);
    }
    if (!std::isfinite(lphi)) return 0.0;
    return std::pow(lam, 2.0 * p - 2.0) * lphi * q * std::pow(t, q - 1.0);
  };
  return adaptive_simpson(integrand, 0.0, 1.0, 1e-10);
}

StrongTypeConstant strong_type_constant(const InterpConstants& c, const YoungSpec& young) {
  if (!(c.s1 > 1.0 && c.s2 > c.s1)) throw InputError("strong_type_constant: need 1 < s1 < s2");
  if (c.A < 0 || c.B1 < 0 || c.B2 < 0 || c.B < 0) throw InputError("strong_type_constant: constants must be >= 0");
  const double p = c.p, s = c.s();
  if (!(p > 0.5)) throw DivergenceError("I", "p <= 1/2");
  if (!(p > 0.5 * c.s1)) throw DivergenceError("II", "p <= s1/2");
  if (!(p < 0.5 * c.s2)) throw DivergenceError("II", "p >= s2/2");
  if (!(p < s)) throw DivergenceError("IV", "p >= s");

  StrongTypeConstant r;
  r.I = 2.0 * c.A * interp_integral_I(p, young);
  const double mid = std::pow(p - 0.5 * c.s1, -s / c.s1) * std::pow(0.5 * c.s2 - p, -s / c.s2);
  r.II = std::pow(c.B1, s) * mid;
  r.III = std::pow(c.B2, s) * mid;
  r.IV = std::pow(c.B, s) / (s - p);
  r.total = r.I + r.II + r.III + r.IV;
  return r;
}

}  // namespace maxrect
