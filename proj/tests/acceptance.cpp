#include <maxrect/covering.hpp>
#include <maxrect/harness.hpp>
#include <maxrect/interp.hpp>
#include <maxrect/maximal.hpp>
#include <maxrect/orlicz.hpp>
#include <maxrect/weights.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "support.hpp"

using namespace maxrect;
using namespace maxrect::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

GridFunction scaled(const GridFunction& g, double s) {
  std::vector<double> v(g.values().begin(), g.values().end());
  for (auto& x : v) x *= s;
  return GridFunction(g.box(), std::move(v));
}

std::vector<Rect> random_family(const Box& b, std::mt19937_64& rng, int count, int max_side) {
  std::vector<Rect> out;
  for (int i = 0; i < count; ++i) out.push_back(random_rect(b, rng, max_side));
  return out;
}

Outcome sharpness() {
  Timer t;
  std::vector<double> Ns;
  for (int k = 0; k <= 10; ++k) Ns.push_back(std::pow(4.0, k));
  const auto rows = sharpness_sweep(Ns);
  std::vector<double> x, r1, r2;
  for (const auto& r : rows) {
    x.push_back(std::sqrt(std::log(r.N)));
    r1.push_back(r.ratio1);
    r2.push_back(r.ratio2);
  }
  const auto fit = fit_line(x, r1);
  const double spread = *std::max_element(r2.begin(), r2.end()) / *std::min_element(r2.begin(), r2.end());
  const double secs = t.seconds();
  Outcome o;
  o.pass = fit.slope > 0 && fit.r2 >= 0.98 && spread <= 3.0 && secs <= 10.0;
  o.detail = fmt("(a) slope %.4g R2 %.4f (need > 0, >= 0.98); (b) ratio2 max/min %.4f (<= 3); %.2f s (<= 10)",
                 fit.slope, fit.r2, spread, secs);
  return o;
}

Outcome oracle_equivalence() {
  Timer t;
  int mismatches = 0;
  std::mt19937_64 rng(2024);
  const Box b2 = unit_box({12, 12});
  for (int k = 0; k < 50; ++k) {
    const std::vector<GridFunction> fs{random_function(b2, rng, 0.2), random_function(b2, rng, 0.2)};
    const auto sweep = multilinear_maximal_map(fs, BasisSpec::rectangles(), Algorithm::sweep);
    const auto brute = multilinear_maximal_map(fs, BasisSpec::rectangles(), Algorithm::brute);
    mismatches += !bitwise_equal(sweep, brute);
  }
  const Box b3 = unit_box({8, 8, 1});
  for (int k = 0; k < 20; ++k) {
    const std::vector<GridFunction> fs{random_function(b3, rng, 0.2), random_function(b3, rng, 0.2),
                                       random_function(b3, rng, 0.2)};
    const auto sweep = multilinear_maximal_map(fs, BasisSpec::rectangles(), Algorithm::sweep);
    const auto brute = multilinear_maximal_map(fs, BasisSpec::rectangles(), Algorithm::brute);
    mismatches += !bitwise_equal(sweep, brute);
  }
  const double secs = t.seconds();
  return {mismatches == 0 && secs <= 60.0, fmt("%d/70 bitwise mismatches; %.2f s (<= 60)", mismatches, secs)};
}

std::vector<GridFunction> jmz_family(const Box& b) {
  using Patch = std::tuple<int, int, int, int, double>;
  auto blocks = [&](std::vector<Patch> ps) {
    std::vector<double> v(b.cell_count(), 0.0);
    for (auto [i, j, w, h, val] : ps)
      for (int x = i; x < i + w; ++x)
        for (int y = j; y < j + h; ++y) v[b.flat({x, y, 0})] += val;
    return GridFunction(b, v);
  };
  std::vector<GridFunction> fs{
      blocks({{0, 0, 1, 1, 1.0}}),
      blocks({{0, 0, 1, 1, 0.6}}),
      blocks({{0, 0, 2, 2, 1.0}}),
      blocks({{0, 0, 1, 3, 1.0}}),
      blocks({{0, 0, 3, 1, 0.8}}),
      blocks({{0, 0, 2, 1, 1.0}, {0, 1, 1, 1, 1.0}}),
      blocks({{0, 0, 1, 1, 1.0}, {0, 2, 1, 1, 1.0}}),
      blocks({{0, 0, 1, 1, 1.0}, {2, 2, 1, 1, 0.5}}),
      blocks({{0, 0, 2, 2, 0.5}, {0, 0, 1, 1, 0.5}}),
  };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.3, 1.0);
  for (int t = 0; t < 3; ++t) {
    std::vector<Patch> ps;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i + j < 3) ps.emplace_back(i, j, 1, 1, u(rng));
    fs.push_back(blocks(ps));
  }
  return fs;
}

Outcome jmz() {
  const Box b({0, 0}, {1, 1}, {128, 128});
  const auto fs = jmz_family(b);
  const auto lambdas = geometric_points(0.01, 0.1, 24);
  const auto rows = jmz_experiment(fs, lambdas, 2);
  double worst_spread = 0, worst_slope = 0;
  bool flagged = false;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    std::vector<double> x, y;
    for (const auto& r : rows)
      if (r.params[0].second == double(k)) {
        flagged = flagged || r.flagged;
        x.push_back(std::log(1.0 / r.params[1].second));
        y.push_back(std::log(r.ratio));
      }
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    worst_spread = std::max(worst_spread, std::exp(*hi - *lo));
    const double s = fit_line(x, y).slope;
    if (std::abs(s) > std::abs(worst_slope)) worst_slope = s;
  }
  return {!flagged && worst_spread <= 5.0 && std::abs(worst_slope) <= 0.1,
          fmt("%zu functions x %zu lambdas: worst max/min %.4f (<= 5), worst log-slope %+.4f (|.| <= 0.1)", fs.size(),
              lambdas.size(), worst_spread, worst_slope)};
}

Outcome orlicz() {
  Timer t;
  std::mt19937_64 rng(4);
  const Box b = unit_box({8, 8});
  const CellSet all = CellSet::all(b);
  const std::vector<YoungSpec> specs{YoungSpec::phi(2), YoungSpec::psi(2), YoungSpec::phi(2, 2), YoungSpec::phi(3)};
  std::uniform_real_distribution<double> scale(0.05, 20.0);
  double worst_residual = 0;
  for (int k = 0; k < 500; ++k) {
    const auto f = scaled(random_function(b, rng, 0.3), scale(rng));
    const auto n = luxemburg_norm(f, all, specs[k % specs.size()]);
    worst_residual = std::max(worst_residual, n.residual);
  }

  int iff_fail = 0, above = 0, below = 0;
  std::uniform_real_distribution<double> target(0.5, 2.0);
  for (int k = 0; k < 500; ++k) {
    const auto& s = specs[k % specs.size()];
    const auto base = random_function(b, rng, 0.3);
    if (base.is_zero()) continue;
    const auto f = scaled(base, target(rng) / luxemburg_norm(base, all, s).value);
    const bool big = luxemburg_norm(f, all, s).value > 1.0;
    iff_fail += big != (young_mean(f, all, s) > 1.0);
    (big ? above : below)++;
  }

  int holder_fail = 0;
  for (int k = 0; k < 500; ++k) {
    const auto f = scaled(random_function(b, rng, 0.3), scale(rng));
    const auto g = scaled(random_function(b, rng, 0.3), scale(rng));
    const auto h = holder_check(f, g, all, 2);
    holder_fail += !(h.lhs <= h.rhs);
  }

  int lemma1_fail = 0, lemma1_applicable = 0;
  std::uniform_real_distribution<double> amp(0.2, 6.0);
  for (int k = 0; k < 10000; ++k) {
    const std::vector<GridFunction> one{scaled(random_function(b, rng, 0.4), amp(rng))};
    const auto rep = keylemma_check(one, all, 2);
    if (!rep.applicable) continue;
    ++lemma1_applicable;
    lemma1_fail += !(rep.c_required <= 1.0);
  }

  double c2 = 0, c3 = 0;
  for (int m : {2, 3})
    for (int k = 0; k < 1000; ++k) {
      std::vector<GridFunction> fs;
      for (int i = 0; i < m; ++i) fs.push_back(scaled(random_function(b, rng, 0.3), amp(rng) * (i == 0 ? 0.2 : 4.0)));
      const auto rep = keylemma_check(fs, all, 2);
      if (!rep.applicable) continue;
      (m == 2 ? c2 : c3) = std::max(m == 2 ? c2 : c3, rep.c_required);
    }
  const double secs = t.seconds();
  Outcome o;
  o.pass = worst_residual <= 1e-10 && iff_fail == 0 && above > 50 && below > 50 && holder_fail == 0 &&
           lemma1_fail == 0 && lemma1_applicable > 0 && std::isfinite(c2) && std::isfinite(c3) && c2 > 0 && c3 > 0 &&
           secs <= 30.0;
  o.detail = fmt("residual %.2e (<= 1e-10); norm>1 iff mean>1: %d failures (%d above, %d below); Hoelder: %d/500 "
                 "violations; m=1 lemma: %d/%d violations; empirical c: m=2 %.4g, m=3 %.4g; %.2f s (<= 30)",
                 worst_residual, iff_fail, above, below, holder_fail, lemma1_fail, lemma1_applicable, c2, c3, secs);
  return o;
}

bool disjoint_parts_ok(const Box& b, const std::vector<Rect>& rs, const SelectionResult& sel) {
  if (sel.selected.size() + sel.rejected.size() != rs.size()) return false;
  CellSet seen(b);
  for (std::size_t k = 0; k < sel.selected.size(); ++k) {
    const CellSet& e = sel.disjoint_parts[k];
    if (!e.disjoint(seen)) return false;
    for (std::size_t i = 0; i < b.cell_count(); ++i)
      if (e.contains(i) && !rs[sel.selected[k]].contains(b.unflat(i))) return false;
    seen |= e;
  }
  return true;
}

Outcome covering() {
  std::mt19937_64 rng(5);
  int half_fail = 0;
  const Box b = unit_box({24, 24});
  for (int t = 0; t < 100; ++t) {
    const auto rs = random_family(b, rng, 50, 10);
    const auto sel = select_half_overlap(b, rs, t % 2 ? SelectionOrder::by_measure_desc : SelectionOrder::given);
    bool ok = disjoint_parts_ok(b, rs, sel) && verify_half_overlap(b, rs, sel);
    double sum_e = 0, sum_b = 0;
    for (std::size_t k = 0; k < sel.selected.size(); ++k) {
      sum_e += double(sel.disjoint_parts[k].count());
      sum_b += double(rs[sel.selected[k]].cells());
    }
    const auto u = union_of(b, rs, sel.selected);
    ok = ok && sum_e >= 0.5 * sum_b && double(u.count()) >= 0.5 * sum_b;
    const auto chi = u.indicator();
    for (int m : {1, 2}) {
      const std::vector<GridFunction> fs(m, chi);
      const auto mm = multilinear_maximal_map(fs, BasisSpec::rectangles());
      const double level = std::pow(2.0, -m);
      for (const auto& r : rs)
        for (int i = r.lo[0]; i < r.hi[0]; ++i)
          for (int j = r.lo[1]; j < r.hi[1]; ++j) ok = ok && mm.at({i, j, 0}) >= level;
    }
    half_fail += !ok;
  }

  int scattered_fail = 0;
  const Box g = unit_box({20, 20});
  for (double lambda : {0.25, 0.5, 0.75})
    for (int t = 0; t < 100; ++t) {
      const auto rs = random_family(g, rng, 30, 8);
      const auto sel = select_alpha_scattered(g, rs, lambda);
      const bool ok = disjoint_parts_ok(g, rs, sel) && verify_scattered(g, rs, sel, lambda) && sel.alpha <= lambda &&
                      verify_scattered_containment(g, rs, sel, BasisSpec::rectangles(), lambda);
      scattered_fail += !ok;
    }

  const Box e = unit_box({64, 64});
  double max_union = 0, psi_lo = INFINITY, psi_hi = 0;
  bool psi_finite = true;
  for (int seed = 0; seed < 20; ++seed) {
    std::mt19937_64 r(1000 + seed);
    const auto rs = random_family(e, r, 200, 24);
    const auto sel = select_exp_overlap(e, rs, 2, 1.0);
    max_union = std::max(max_union, sel.union_ratio);
    psi_finite = psi_finite && std::isfinite(sel.psi_norm) && sel.psi_norm > 0;
    psi_lo = std::min(psi_lo, sel.psi_norm);
    psi_hi = std::max(psi_hi, sel.psi_norm);
  }
  Outcome o;
  o.pass = half_fail == 0 && scattered_fail == 0 && max_union <= 10.0 && psi_finite && psi_hi <= 2.0 * psi_lo;
  o.detail = fmt("half-overlap: %d/100 violating families; scattered: %d/300; exp-overlap over 20 seeds: max "
                 "union_ratio %.4f (<= 10), psi_norm in [%.4f, %.4f] spread %.4f (<= 2)",
                 half_fail, scattered_fail, max_union, psi_lo, psi_hi, psi_hi / psi_lo);
  return o;
}

Outcome multilinear_identities() {
  std::mt19937_64 rng(6);
  int runs = 0, failures = 0;
  const std::vector<double> lambdas{0.8, 0.4, 0.2, 0.1};
  for (int k = 0; k < 20; ++k) {
    const Box b = k % 2 ? unit_box({10, 10}) : unit_box({6, 5, 3});
    const auto f = random_function(b, rng, 0.3);
    for (int m : {2, 3}) {
      std::vector<GridFunction> same(m, f), mixed;
      for (int i = 0; i < m; ++i) mixed.push_back(random_function(b, rng, 0.3));
      const auto rs = bsmf_experiment(same, lambdas, 2);
      const auto rm = bsmf_experiment(mixed, lambdas, 2);
      runs += 2;
      failures += !(rs.tensor_bound_holds && rs.identity_holds.value_or(false));
      failures += !(rm.tensor_bound_holds && !rm.identity_holds.has_value());
    }
  }
  return {failures == 0, fmt("%d randomized runs, %d with a failed tensor bound or identity", runs, failures)};
}

GridFunction power_weight(int cells, double alpha) {
  return build_grid(Box({0}, {1}, {cells}), [alpha](std::span<const double> x) { return std::pow(x[0], alpha); });
}

Outcome weights() {
  int unit_fail = 0;
  const std::vector<BasisSpec> bases{BasisSpec::rectangles(), BasisSpec::cubes(), BasisSpec::dyadic(),
                                     BasisSpec::with_eccentricity(2.0), BasisSpec::zygmund()};
  for (const auto& spec : bases) {
    const Box b = spec.kind == BasisKind::zygmund_sts ? unit_box({4, 4, 4}) : unit_box({8, 8});
    const auto one = GridFunction::constant(b, 1.0);
    for (double p : {1.0, 1.5, 2.0, 4.0}) unit_fail += ap_constant(one, p, spec).value != 1.0;
  }

  std::mt19937_64 rng(3);
  int class_fail = 0, basis_fail = 0;
  const Box b = unit_box({8, 8});
  for (int k = 0; k < 50; ++k) {
    const auto w = random_weight(b, rng);
    double prev = ap_constant(w, 1.0, BasisSpec::rectangles()).value;
    for (double p : {1.25, 1.5, 2.0, 3.0, 6.0}) {
      const double v = ap_constant(w, p, BasisSpec::rectangles()).value;
      class_fail += !(v <= prev * (1 + 1e-12));
      prev = v;
    }
    for (double p : {1.0, 2.0, 3.0}) {
      const double d = ap_constant(w, p, BasisSpec::dyadic()).value;
      const double q = ap_constant(w, p, BasisSpec::cubes()).value;
      const double r = ap_constant(w, p, BasisSpec::rectangles()).value;
      basis_fail += !(d <= q && q <= r);
    }
  }

  std::vector<double> growth;
  double prev = ap_constant(power_weight(64, 3.0), 2.0, BasisSpec::rectangles()).value;
  for (int n : {128, 256, 512}) {
    const double v = ap_constant(power_weight(n, 3.0), 2.0, BasisSpec::rectangles()).value;
    growth.push_back(v / prev);
    prev = v;
  }
  const double min_growth = *std::min_element(growth.begin(), growth.end());
  Outcome o;
  o.pass = unit_fail == 0 && class_fail == 0 && basis_fail == 0 && min_growth >= 2.0;
  o.detail = fmt("w=1 gives %d non-unit constants over 5 bases; class monotonicity %d, basis order %d violations on 50 "
                 "weights; x^3, p=2 growth per doubling %.3f, %.3f, %.3f (>= 2)",
                 unit_fail, class_fail, basis_fail, growth[0], growth[1], growth[2]);
  return o;
}

double phi_integral(const GridFunction& h, double a, double power = 1.0) {
  double s = 0;
  for (double v : h.values()) s += std::pow(young_eval(YoungSpec::phi(2), v / std::sqrt(a)), power);
  return s * h.box().cell_volume();
}

Outcome interp() {
  int boundary_fail = 0, boundary_samples = 0, interior_fail = 0, interior = 0;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (interior < 100 || boundary_samples < 100) {
    InterpConstants c;
    c.A = 0.5 + u(rng);
    c.B1 = 0.5 + u(rng);
    c.B2 = 0.5 + u(rng);
    c.B = 0.5 + u(rng);
    c.s1 = 1.0 + 2.0 * u(rng) + 1e-3;
    c.s2 = c.s1 + 0.5 + 10.0 * u(rng);
    const double s = c.s();
    const double lo = std::max(0.5, 0.5 * c.s1), hi = std::min(s, 0.5 * c.s2);
    for (double p : {0.5, 0.5 * c.s1, 0.5 * c.s2, s, 0.4, 0.5 * c.s2 + 0.1, s + 0.1}) {
      if (p > lo && p < hi) continue;
      c.p = p;
      ++boundary_samples;
      try {
        strong_type_constant(c, YoungSpec::phi(2));
        ++boundary_fail;
      } catch (const DivergenceError&) {
      }
    }
    if (lo < hi && interior < 100) {
      c.p = lo + (hi - lo) * (0.01 + 0.98 * u(rng));
      ++interior;
      try {
        interior_fail += !std::isfinite(strong_type_constant(c, YoungSpec::phi(2)).total);
      } catch (const DivergenceError&) {
        ++interior_fail;
      }
    }
  }

  double worst_quad = 0;
  for (double p : {0.75, 1.0, 1.6}) {
    const int n = 1000000;
    long double sum = 0;
    for (int i = 0; i < n; ++i) {
      const double t = (i + 0.5) / n, l = t * t * t * t;
      sum += 4 * t * t * t * std::pow(l, 2 * p - 1) * young_eval(YoungSpec::phi(2), 1.0 / l);
    }
    const double riemann = double(sum / n);
    worst_quad = std::max(worst_quad, std::abs(interp_integral_I(p, YoungSpec::phi(2)) - riemann) / riemann);
  }

  const Box b({0, 0}, {2, 2}, {12, 12});
  const double p = 2.0;
  int violations = 0, checked = 0;
  for (int inst = 0; inst < 3; ++inst) {
    const auto f = scaled(random_function(b, rng, 0.5), 3.0);
    const auto g = scaled(random_function(b, rng, 0.3), 3.0);
    std::vector<double> levels(g.values().begin(), g.values().end());
    levels.push_back(0.0);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    struct Piece {
      GridFunction g, map;
    };
    std::vector<Piece> high, low;
    auto push = [&](std::vector<Piece>& to, std::vector<double> v) {
      GridFunction h(b, std::move(v));
      if (h.is_zero()) return;
      const std::vector<GridFunction> pair{f, h};
      to.push_back({h, multilinear_maximal_map(pair, BasisSpec::rectangles())});
    };
    for (double tau : levels) {
      std::vector<double> up(g.values().begin(), g.values().end()), down = up;
      for (std::size_t i = 0; i < up.size(); ++i) (g[i] > tau ? down[i] : up[i]) = 0.0;
      push(high, up);
      push(low, down);
    }
    const std::vector<GridFunction> fg{f, g};
    const auto full = multilinear_maximal_map(fg, BasisSpec::rectangles());
    const auto alphas = geometric_points(1e-3, 2.0, 16);
    double B1 = 0, B2 = 0;
    for (double alpha : alphas)
      for (double a : {alpha, alpha / 2}) {
        const double af = phi_integral(f, a);
        if (af == 0) continue;
        for (const auto& pc : high) {
          const double m = superlevel_measure(pc.map, a);
          B1 = std::max(B1, m * m / (af * phi_integral(pc.g, a)));
        }
        for (const auto& pc : low) {
          const double m = superlevel_measure(pc.map, a);
          B2 = std::max(B2, m / (af * young_eval(YoungSpec::phi(2), pc.g.max() / std::sqrt(a))));
        }
      }
    for (double alpha : alphas) {
      const double measured = superlevel_measure(full, alpha);
      const auto r = l1xlp_bound(f, g, alpha, B1, B2, p, 2);
      ++checked;
      violations += !(measured <= r.bound);
    }
  }
  Outcome o;
  o.pass = boundary_fail == 0 && interior_fail == 0 && worst_quad <= 1e-6 && violations == 0;
  o.detail = fmt("boundary: %d/%d not raised; interior: %d/%d not finite; I-integral rel. error %.2e (<= 1e-6); "
                 "L1xLp bound: %d/%d violations",
                 boundary_fail, boundary_samples, interior_fail, interior, worst_quad, violations, checked);
  return o;
}

Outcome performance() {
  std::mt19937_64 rng(9);
  const Box b = unit_box({128, 128});
  const auto f = random_function(b, rng);
  Timer t;
  const auto single = maximal_map(f, BasisSpec::rectangles(), Algorithm::automatic, {}, 1);
  const double secs = t.seconds();
  int differing = 0;
  for (int threads : {2, 3, 8}) {
    const auto m = maximal_map(f, BasisSpec::rectangles(), Algorithm::automatic, {}, threads);
    differing += std::memcmp(m.values().data(), single.values().data(), single.values().size_bytes()) != 0;
  }
  const Box s = unit_box({20, 20});
  const std::vector<GridFunction> fs{random_function(s, rng), random_function(s, rng)};
  const auto ml = multilinear_maximal_map(fs, BasisSpec::rectangles(), Algorithm::sweep, {}, 1);
  for (int threads : {2, 4}) {
    const auto m = multilinear_maximal_map(fs, BasisSpec::rectangles(), Algorithm::sweep, {}, threads);
    differing += std::memcmp(m.values().data(), ml.values().data(), ml.values().size_bytes()) != 0;
  }
  const auto j1 = to_table(jmz_experiment({f}, {0.9, 0.5}, 2, 1)).column("lhs");
  const auto j4 = to_table(jmz_experiment({f}, {0.9, 0.5}, 2, 4)).column("lhs");
  differing += j1 != j4;
  return {secs <= 5.0 && differing == 0,
          fmt("128x128 map %.3f s single-threaded (<= 5); %d thread counts changed output bytes", secs, differing)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "sharpness", sharpness},          {2, "oracle equivalence", oracle_equivalence},
      {3, "jmz property suite", jmz},       {4, "orlicz suite", orlicz},
      {5, "covering suite", covering},      {6, "tensor bound and identity", multilinear_identities},
      {7, "weight suite", weights},         {8, "interp calculators", interp},
      {9, "performance", performance},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
