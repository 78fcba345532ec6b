#include <doctest.h>
#include <maxrect/maximal.hpp>
#include <maxrect/weights.hpp>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace maxrect;
using namespace maxrect::testing;

namespace {

GridFunction power_weight(int cells, double alpha) {
  return build_grid(Box({0}, {1}, {cells}), [alpha](std::span<const double> x) { return std::pow(x[0], alpha); });
}

double direct_a2(const GridFunction& w) {
  const int n = w.box().extent()[0];
  double best = 0;
  for (int a = 0; a < n; ++a) {
    double s = 0, si = 0;
    for (int b = a; b < n; ++b) {
      s += w[b];
      si += 1.0 / w[b];
      const double len = b - a + 1;
      best = std::max(best, (s / len) * (si / len));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("ExponentVector") {
  const ExponentVector v({2.0, 2.0});
  CHECK(v.p() == 1.0);
  CHECK(v.conjugate(0) == 2.0);
  CHECK(std::isinf(ExponentVector({1.0, 3.0}).conjugate(0)));
  CHECK_THROWS_AS(ExponentVector({0.5}), InputError);
  CHECK_THROWS_AS(ExponentVector({}), InputError);
}

TEST_CASE("nu_of") {
  std::mt19937_64 rng(1);
  const Box b = unit_box({5, 4});
  const auto one = GridFunction::constant(b, 1.0);
  const std::vector<GridFunction> ones{one, one};
  const auto nu1 = nu_of(ones, ExponentVector({2, 3}));
  for (double v : nu1.values()) CHECK(v == 1.0);
  const auto w1 = random_weight(b, rng), w2 = random_weight(b, rng);
  const std::vector<GridFunction> pair{w1, w2};
  const auto nu = nu_of(pair, ExponentVector({2, 2}));
  for (std::size_t i = 0; i < b.cell_count(); ++i) CHECK(nu[i] == doctest::Approx(std::sqrt(w1[i] * w2[i])).epsilon(1e-15));
  const std::vector<GridFunction> same{w1, w1};
  const auto nu2 = nu_of(same, ExponentVector({1.5, 4}));
  for (std::size_t i = 0; i < b.cell_count(); ++i) CHECK(nu2[i] == doctest::Approx(w1[i]).epsilon(1e-14));
}

TEST_CASE("unit weight gives constant 1 exactly on every basis") {
  for (const auto& dims : std::vector<std::vector<int>>{{9}, {6, 7}, {3, 3, 4}}) {
    const Box b = unit_box(dims);
    const auto one = GridFunction::constant(b, 1.0);
    std::vector<BasisSpec> specs{BasisSpec::rectangles(), BasisSpec::cubes(), BasisSpec::dyadic()};
    if (b.rank() == 2) specs.push_back(BasisSpec::with_eccentricity(2));
    if (b.rank() == 3) specs.push_back(BasisSpec::zygmund());
    for (const auto& spec : specs) {
      for (double p : {1.0, 1.5, 2.0, 4.0}) CHECK(ap_constant(one, p, spec).value == 1.0);
      const std::vector<GridFunction> ones{one, one};
      CHECK(multi_ap_constant(ones, ExponentVector({2, 3}), spec).value == 1.0);
      CHECK(multi_ap_constant(ones, ExponentVector({1, 2}), spec).value == 1.0);
      for (double r : {1.1, 2.0, 5.0}) CHECK(bump_constant(one, ones, ExponentVector({2, 3}), r, spec).value == 1.0);
    }
  }
}

TEST_CASE("A_2 of a 1D weight matches a direct scan") {
  std::mt19937_64 rng(2);
  const auto w = random_weight(Box({0}, {1}, {40}), rng);
  const auto rep = ap_constant(w, 2.0, BasisSpec::rectangles());
  CHECK(rep.value == doctest::Approx(direct_a2(w)).epsilon(1e-12));
  CHECK(rep.sets_scanned == 40 * 41 / 2);
  const SummedTable t(w);
  std::vector<double> inv(40);
  for (int i = 0; i < 40; ++i) inv[i] = 1.0 / w[i];
  const SummedTable ti(GridFunction(w.box(), inv));
  CHECK(rect_average(t, rep.attaining_rect) * rect_average(ti, rep.attaining_rect) ==
        doctest::Approx(rep.value).epsilon(1e-14));
}

TEST_CASE("power weights: stable inside A_2, growing outside") {
  const double a64 = ap_constant(power_weight(64, 0.5), 2.0, BasisSpec::rectangles()).value;
  const double a512 = ap_constant(power_weight(512, 0.5), 2.0, BasisSpec::rectangles()).value;
  CHECK(std::isfinite(a512));
  CHECK(std::abs(a512 - a64) < 0.05 * a64);

  double prev = 0;
  for (int n : {64, 128, 256, 512}) {
    const double a = ap_constant(power_weight(n, 1.5), 2.0, BasisSpec::rectangles()).value;
    CHECK(a > prev * 1.2);
    prev = a;
  }
}

TEST_CASE("class, basis and scale monotonicity") {
  std::mt19937_64 rng(3);
  const Box b = unit_box({8, 8});
  for (int k = 0; k < 10; ++k) {
    const auto w = random_weight(b, rng);
    double prev = ap_constant(w, 1.0, BasisSpec::rectangles()).value;
    for (double p : {1.25, 1.5, 2.0, 3.0, 6.0}) {
      const double v = ap_constant(w, p, BasisSpec::rectangles()).value;
      CHECK(v <= prev * (1 + 1e-12));
      prev = v;
    }
    for (double p : {1.0, 2.0, 3.0}) {
      const double d = ap_constant(w, p, BasisSpec::dyadic()).value;
      const double q = ap_constant(w, p, BasisSpec::cubes()).value;
      const double r = ap_constant(w, p, BasisSpec::rectangles()).value;
      CHECK(d <= q);
      CHECK(q <= r);
      std::vector<double> v2(w.values().begin(), w.values().end());
      for (auto& x : v2) x *= 2.0;
      const GridFunction w2(b, v2);
      if (p == 2.0 || p == 1.0) {
        CHECK(ap_constant(w2, p, BasisSpec::rectangles()).value == r);
      }
      for (auto& x : v2) x *= 1.37;
      CHECK(ap_constant(GridFunction(b, v2), p, BasisSpec::rectangles()).value == doctest::Approx(r).epsilon(1e-12));
    }
  }
}

TEST_CASE("multilinear constants") {
  std::mt19937_64 rng(4);
  const Box b = unit_box({7, 6});
  for (int k = 0; k < 10; ++k) {
    const auto w = random_weight(b, rng);
    const std::vector<GridFunction> same{w, w};
    const auto m = multi_ap_constant(same, ExponentVector({2, 2}), BasisSpec::rectangles());
    CHECK(m.value == doctest::Approx(ap_constant(w, 2.0, BasisSpec::rectangles()).value).epsilon(1e-12));

    const auto w1 = random_weight(b, rng), w2 = random_weight(b, rng);
    const std::vector<GridFunction> pair{w1, w2};
    const ExponentVector pv({2.0, 3.0});
    const auto nu = nu_of(pair, pv);
    const auto one = multi_ap_constant(pair, pv, BasisSpec::rectangles());
    const auto two = multi_ap_constant(pair, pv, BasisSpec::rectangles(), &nu);
    CHECK(one.value == two.value);
    CHECK(one.attaining_rect == two.attaining_rect);
    for (double r : {1.2, 2.0, 4.0})
      CHECK(bump_constant(nu, pair, pv, r, BasisSpec::rectangles()).value >= one.value * (1 - 1e-12));

    const ExponentVector with_one({1.0, 2.0});
    const auto p1 = multi_ap_constant(pair, with_one, BasisSpec::rectangles());
    const auto nu1 = nu_of(pair, with_one);
    double direct = 0;
    for (const auto& r : enumerate(BasisSpec::rectangles(), b)) {
      double sn = 0, s2 = 0, mn = INFINITY;
      for (int i = r.lo[0]; i < r.hi[0]; ++i)
        for (int j = r.lo[1]; j < r.hi[1]; ++j) {
          const std::size_t c = b.flat({i, j, 0});
          sn += nu1[c];
          s2 += 1.0 / w2[c];
          mn = std::min(mn, w1[c]);
        }
      const double cells = double(r.cells());
      const double p = with_one.p();
      direct = std::max(direct, (sn / cells) * std::pow(mn, -p) * std::pow(s2 / cells, p / 2.0));
    }
    CHECK(p1.value == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("products of A_pj weights stay finite under refinement") {
  for (double a1 : {-0.5, 0.0, 0.5})
    for (double a2 : {-0.5, 0.9}) {
      double prev = 0;
      for (int n : {64, 256}) {
        const std::vector<GridFunction> ws{power_weight(n, a1), power_weight(n, a2)};
        for (const auto& w : ws) CHECK(std::isfinite(ap_constant(w, 2.0, BasisSpec::rectangles()).value));
        const double v = multi_ap_constant(ws, ExponentVector({2, 2}), BasisSpec::rectangles()).value;
        CHECK(std::isfinite(v));
        if (prev > 0) CHECK(v < 1.25 * prev);
        prev = v;
      }
    }
}

TEST_CASE("bump constant grows with r near the A_p boundary") {
  const auto w = power_weight(256, 0.95);
  const std::vector<GridFunction> ws{w, w};
  const ExponentVector pv({2, 2});
  const double low = bump_constant(w, ws, pv, 1.01, BasisSpec::rectangles()).value;
  const double high = bump_constant(w, ws, pv, 1.5, BasisSpec::rectangles()).value;
  CHECK(high > 2.0 * low);
  MESSAGE("bump r=1.01: " << low << "  r=1.5: " << high);
}

TEST_CASE("condition (A)") {
  const Box b = unit_box({16, 16});
  const auto one = GridFunction::constant(b, 1.0);
  const auto rep = condition_a_probe(one, BasisSpec::rectangles(), 0.5, 7, 40, 1);
  CHECK(rep.c_hat >= 1.0);
  CHECK(rep.c_hat <= 16.0);
  const auto again = condition_a_probe(one, BasisSpec::rectangles(), 0.5, 7, 40, 1);
  CHECK(again.c_hat == rep.c_hat);

  const CellSet e = CellSet::of_rect(b, rect2(4, 9, 3, 7));
  CHECK(condition_a_ratio(one, BasisSpec::rectangles(), e, 0.999) == 1.0);

  const auto w = build_grid(b, [](std::span<const double> x) { return std::pow(x[0] * x[0] + x[1] * x[1], 0.25); });
  const auto pw = condition_a_probe(w, BasisSpec::rectangles(), 0.5, 11, 100);
  CHECK(std::isfinite(pw.c_hat));
  CHECK(pw.trials == 100);
  CHECK(pw.skipped == 0);
  CHECK_THROWS_AS(condition_a_probe(w, BasisSpec::rectangles(), 1.0, 1, 10), InputError);
}

TEST_CASE("nonpositive weights are rejected") {
  const Box b = unit_box({4});
  CHECK_THROWS_AS(ap_constant(GridFunction(b, {1, 0, 1, 1}), 2.0, BasisSpec::rectangles()), InputError);
}
