#include "maxrect/orlicz.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace maxrect {

namespace {

constexpr double kE = std::numbers::e;

double phi_once(const YoungSpec& s, double t) {
  switch (s.family) {
    case YoungFamily::phi:
      return s.n == 2 ? t * std::log(kE + t) : t * std::pow(std::log(kE + t), s.n - 1);
    case YoungFamily::phi_classic:
      return t > 1.0 ? t * (1.0 + std::pow(std::log(t), s.n - 1)) : t;
    case YoungFamily::psi:
      return std::expm1(s.n == 2 ? t : std::pow(t, 1.0 / (s.n - 1)));
    case YoungFamily::linear:
      return t;
  }
  return t;
}

}  // namespace

void validate(const YoungSpec& spec) {
  if (spec.family == YoungFamily::linear) return;
  if (spec.n < 2) throw InputError("young: n must be >= 2");
  if (spec.m < 1) throw InputError("young: m must be >= 1");
  if (spec.family == YoungFamily::psi && spec.m != 1) throw InputError("young: psi has no iterates");
}

YoungSpec young_spec_from_string(const std::string& text) {
  YoungSpec spec = YoungSpec::phi(2, 1);
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part == "phi") spec.family = YoungFamily::phi;
    else if (part == "classic") spec.family = YoungFamily::phi_classic;
    else if (part == "psi") spec.family = YoungFamily::psi;
    else if (part == "linear") spec.family = YoungFamily::linear;
    else if (part.rfind("n=", 0) == 0) spec.n = std::stoi(part.substr(2));
    else if (part.rfind("m=", 0) == 0) spec.m = std::stoi(part.substr(2));
    else throw InputError("young spec: cannot parse '" + part + "'");
  }
  validate(spec);
  return spec;
}

std::string to_string(const YoungSpec& spec) {
  switch (spec.family) {
    case YoungFamily::phi: return "phi,n=" + std::to_string(spec.n) + ",m=" + std::to_string(spec.m);
    case YoungFamily::phi_classic:
      return "classic,n=" + std::to_string(spec.n) + ",m=" + std::to_string(spec.m);
    case YoungFamily::psi: return "psi,n=" + std::to_string(spec.n);
    case YoungFamily::linear: return "linear";
  }
  return "?";
}

double young_eval(const YoungSpec& spec, double t) {
  if (!(t >= 0.0)) throw InputError("young_eval: t must be >= 0");
  double v = t;
  const int reps = spec.family == YoungFamily::linear || spec.family == YoungFamily::psi ? 1 : spec.m;
  for (int i = 0; i < reps; ++i) v = phi_once(spec, v);
  return v;
}

double young_inverse(const YoungSpec& spec, double y) {
  if (!(y >= 0.0)) throw InputError("young_inverse: y must be >= 0");
  if (y == 0.0) return 0.0;
  if (spec.family == YoungFamily::linear) return y;
  double lo = 0.0, hi = 1.0;
  while (young_eval(spec, hi) < y) {
    lo = hi;
    hi *= 2.0;
  }
  // Bisect to adjacent doubles, then pick the closer end.
  for (int it = 0; it < 2000; ++it) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    (young_eval(spec, mid) < y ? lo : hi) = mid;
  }
  return std::abs(young_eval(spec, lo) - y) <= std::abs(young_eval(spec, hi) - y) ? lo : hi;
}

double modular(std::span<const double> f, std::span<const std::uint8_t> in_set, const YoungSpec& spec,
               double lambda) {
  if (!(lambda > 0.0)) throw InputError("modular: lambda must be > 0");
  long double sum = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!in_set[i]) continue;
    ++count;
    sum += young_eval(spec, f[i] / lambda);
  }
  if (count == 0) throw InputError("modular: empty set");
  return double(sum / (long double)count);
}

double modular(const GridFunction& f, const CellSet& e, const YoungSpec& spec, double lambda) {
  check_same_grid(f.box(), e.box(), "modular");
  return modular(f.values(), e.bits(), spec, lambda);
}

NormResult luxemburg_norm(std::span<const double> f, std::span<const std::uint8_t> in_set,
                          const YoungSpec& spec) {
  validate(spec);
  bool zero = true;
  std::size_t count = 0;
  long double mean = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!in_set[i]) continue;
    ++count;
    mean += f[i];
    zero = zero && f[i] == 0.0;
  }
  if (count == 0) throw InputError("luxemburg_norm: empty set");
  if (zero) return {};
  if (spec.family == YoungFamily::linear) return {double(mean / (long double)count), 0, 0.0};

  auto mod = [&](double lambda) { return modular(f, in_set, spec, lambda); };
  NormResult out;
  double hi = 1.0;
  while (mod(hi) > 1.0) {
    hi *= 2.0;
    ++out.iterations;
  }
  double lo = hi / 2.0;
  while (mod(lo) <= 1.0) {
    lo /= 2.0;
    ++out.iterations;
  }
  // Invariant: mod(lo) > 1 ≥ mod(hi).
  for (int it = 0; it < 200; ++it, ++out.iterations) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    (mod(mid) > 1.0 ? lo : hi) = mid;
  }
  const double rlo = std::abs(mod(lo) - 1.0), rhi = std::abs(mod(hi) - 1.0);
  out.value = rlo < rhi ? lo : hi;
  out.residual = std::min(rlo, rhi);
  return out;
}

NormResult luxemburg_norm(const GridFunction& f, const CellSet& e, const YoungSpec& spec) {
  check_same_grid(f.box(), e.box(), "luxemburg_norm");
  return luxemburg_norm(f.values(), e.bits(), spec);
}

double young_mean(const GridFunction& f, const CellSet& e, const YoungSpec& spec) {
  return modular(f, e, spec, 1.0);
}

HolderCheck holder_check(const GridFunction& f, const GridFunction& g, const CellSet& e, int n) {
  check_same_grid(f.box(), g.box(), "holder_check");
  check_same_grid(f.box(), e.box(), "holder_check");
  long double sum = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    if (!e.contains(i)) continue;
    ++count;
    sum += (long double)f[i] * g[i];
  }
  if (count == 0) throw InputError("holder_check: empty set");
  HolderCheck out;
  out.lhs = double(sum / (long double)count);
  out.rhs = 2.0 * luxemburg_norm(f, e, YoungSpec::phi(n)).value * luxemburg_norm(g, e, YoungSpec::psi(n)).value;
  return out;
}

KeyLemmaReport keylemma_check(std::span<const GridFunction> fs, const CellSet& e, int n) {
  if (fs.empty()) throw InputError("keylemma_check: need at least one function");
  const int m = int(fs.size());
  KeyLemmaReport out;
  out.lhs_product = 1.0;
  out.rhs_product = 1.0;
  for (const auto& f : fs) {
    out.lhs_product *= luxemburg_norm(f, e, YoungSpec::phi(n)).value;
    out.rhs_product *= young_mean(f, e, YoungSpec::phi(n, m));
  }
  out.applicable = out.lhs_product > 1.0;
  out.c_required = out.rhs_product > 0.0 ? out.lhs_product / out.rhs_product : 0.0;
  return out;
}

}  // namespace maxrect
