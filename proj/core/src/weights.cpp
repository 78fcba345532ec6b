#include "maxrect/weights.hpp"

#include <cmath>
#include <limits>

#include "maxrect/maximal.hpp"

namespace maxrect {

namespace {

GridFunction cellwise_pow(const GridFunction& w, double exponent) {
  std::vector<double> v(w.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(w[i], exponent);
  return GridFunction(w.box(), std::move(v));
}

/// Range minimum over rectangles: sparse table with one power-of-two level
/// per axis.
class RangeMin {
 public:
  explicit RangeMin(const GridFunction& w) : box_(w.box()) {
    const Index& e = box_.extent();
    for (int a = 0; a < kMaxDim; ++a) {
      levels_[a] = 1;
      while ((1 << levels_[a]) <= e[a]) ++levels_[a];
    }
    const std::size_t cells = box_.cell_count();
    table_.resize(std::size_t(levels_[0]) * levels_[1] * levels_[2], {});
    auto& base = table_[0];
    base.assign(w.values().begin(), w.values().end());
    for (int l0 = 0; l0 < levels_[0]; ++l0)
      for (int l1 = 0; l1 < levels_[1]; ++l1)
        for (int l2 = 0; l2 < levels_[2]; ++l2) {
          if (l0 == 0 && l1 == 0 && l2 == 0) continue;
          // Build from the previous level along the first nonzero axis.
          int axis = l0 > 0 ? 0 : (l1 > 0 ? 1 : 2);
          Index prev{l0, l1, l2};
          --prev[axis];
          const auto& src = table_[level_index(prev)];
          auto& dst = table_[level_index({l0, l1, l2})];
          dst.assign(cells, std::numeric_limits<double>::infinity());
          const int half = 1 << prev[axis];
          const int span = 2 * half;
          for (std::size_t i = 0; i < cells; ++i) {
            Index c = box_.unflat(i);
            if (c[axis] + span > e[axis]) continue;
            Index d = c;
            d[axis] += half;
            dst[i] = std::min(src[i], src[box_.flat(d)]);
          }
        }
  }

  double min(const Rect& r) const {
    Index lvl{};
    for (int a = 0; a < kMaxDim; ++a) {
      int len = r.hi[a] - r.lo[a], k = 0;
      while ((2 << k) <= len) ++k;
      lvl[a] = k;
    }
    const auto& t = table_[level_index(lvl)];
    double m = std::numeric_limits<double>::infinity();
    for (int mask = 0; mask < 8; ++mask) {
      Index c{};
      for (int a = 0; a < kMaxDim; ++a)
        c[a] = (mask >> a) & 1 ? r.hi[a] - (1 << lvl[a]) : r.lo[a];
      m = std::min(m, t[box_.flat(c)]);
    }
    return m;
  }

 private:
  std::size_t level_index(const Index& l) const noexcept {
    return (std::size_t(l[0]) * levels_[1] + l[1]) * levels_[2] + l[2];
  }

  Box box_;
  Index levels_{};
  std::vector<std::vector<double>> table_;
};

/// Shared scan for the A_{P⃗}-type products; `bump` is the inner power r.
ConstantReport scan_multi(const GridFunction& nu, std::span<const GridFunction> ws, const ExponentVector& ps,
                          double bump, const BasisSpec& spec, BasisBudget budget) {
  if (ws.size() != ps.size()) throw InputError("weights: number of weights differs from number of exponents");
  check_weights(ws);
  check_weights(std::span(&nu, 1));
  for (const auto& w : ws) check_same_grid(nu.box(), w.box(), "weights");
  const double p = ps.p();
  const SummedTable nu_table(nu);
  struct Factor {
    std::optional<SummedTable> table;
    std::optional<RangeMin> mins;
    double outer = 1.0;
  };
  std::vector<Factor> factors(ws.size());
  for (std::size_t j = 0; j < ws.size(); ++j) {
    if (ps[j] == 1.0) {
      factors[j].mins.emplace(ws[j]);
      factors[j].outer = -p;
    } else {
      const double pc = ps.conjugate(j);
      factors[j].table.emplace(cellwise_pow(ws[j], (1.0 - pc) * bump));
      factors[j].outer = p / (pc * bump);
    }
  }
  ConstantReport out;
  out.sets_scanned = for_each_member(spec, nu.box(), budget, [&](const Rect& r) {
    double v = rect_average_unchecked(nu_table, r);
    for (const auto& f : factors)
      v *= f.mins ? std::pow(f.mins->min(r), f.outer) : std::pow(rect_average_unchecked(*f.table, r), f.outer);
    if (v > out.value) {
      out.value = v;
      out.attaining_rect = r;
    }
  });
  return out;
}

}  // namespace

ExponentVector::ExponentVector(std::vector<double> ps) : ps_(std::move(ps)) {
  if (ps_.empty()) throw InputError("exponents: need at least one p_j");
  double inv = 0.0;
  for (double pj : ps_) {
    if (!(pj >= 1.0) || !std::isfinite(pj)) throw InputError("exponents: each p_j must be finite and >= 1");
    inv += 1.0 / pj;
  }
  p_ = 1.0 / inv;
}

double ExponentVector::conjugate(std::size_t j) const noexcept {
  return ps_[j] == 1.0 ? std::numeric_limits<double>::infinity() : ps_[j] / (ps_[j] - 1.0);
}

void check_weights(std::span<const GridFunction> ws) {
  for (std::size_t j = 0; j < ws.size(); ++j)
    for (std::size_t i = 0; i < ws[j].values().size(); ++i)
      if (!(ws[j][i] > 0.0))
        throw InputError("weight " + std::to_string(j) + " is not strictly positive at cell " + std::to_string(i));
}

GridFunction nu_of(std::span<const GridFunction> ws, const ExponentVector& ps) {
  if (ws.size() != ps.size()) throw InputError("nu_of: number of weights differs from number of exponents");
  check_weights(ws);
  std::vector<double> v(ws[0].values().size(), 1.0);
  for (std::size_t j = 0; j < ws.size(); ++j) {
    check_same_grid(ws[0].box(), ws[j].box(), "nu_of");
    const double e = ps.p() / ps[j];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::pow(ws[j][i], e);
  }
  return GridFunction(ws[0].box(), std::move(v));
}

ConstantReport ap_constant(const GridFunction& w, double p, const BasisSpec& spec, BasisBudget budget) {
  if (!(p >= 1.0)) throw InputError("ap_constant: p must be >= 1");
  check_weights(std::span(&w, 1));
  ConstantReport out;
  if (p == 1.0) {
    const auto mw = maximal_map(w, spec, Algorithm::automatic, budget);
    out.sets_scanned = count_members(spec, w.box());
    std::size_t best = 0;
    for (std::size_t i = 0; i < w.values().size(); ++i) {
      const double v = mw[i] / w[i];
      if (v > out.value) {
        out.value = v;
        best = i;
      }
    }
    const Index c = w.box().unflat(best);
    out.attaining_rect = Rect{c, {c[0] + 1, c[1] + 1, c[2] + 1}};
    return out;
  }
  return multi_ap_constant(std::span(&w, 1), ExponentVector({p}), spec, &w, budget);
}

ConstantReport multi_ap_constant(std::span<const GridFunction> ws, const ExponentVector& ps, const BasisSpec& spec,
                                 const GridFunction* nu_override, BasisBudget budget) {
  if (nu_override) return scan_multi(*nu_override, ws, ps, 1.0, spec, budget);
  return scan_multi(nu_of(ws, ps), ws, ps, 1.0, spec, budget);
}

ConstantReport bump_constant(const GridFunction& nu, std::span<const GridFunction> ws, const ExponentVector& ps,
                             double r, const BasisSpec& spec, BasisBudget budget) {
  if (!(r > 1.0)) throw InputError("bump_constant: r must be > 1");
  for (std::size_t j = 0; j < ps.size(); ++j)
    if (ps[j] == 1.0) throw InputError("bump_constant: exponents must exceed 1");
  return scan_multi(nu, ws, ps, r, spec, budget);
}

double condition_a_ratio(const GridFunction& w, const BasisSpec& spec, const CellSet& e, double lambda,
                         BasisBudget budget) {
  check_same_grid(w.box(), e.box(), "condition_a_ratio");
  const double we = set_mass(w, e);
  if (!(we > 0.0)) throw InputError("condition_a_ratio: w(E) = 0");
  const auto m = maximal_map(e.indicator(), spec, Algorithm::automatic, budget);
  return set_mass(w, superlevel_set(m, lambda)) / we;
}

Rect random_rect(const Box& box, std::mt19937_64& rng, int max_side) {
  Rect r;
  for (int a = 0; a < box.rank(); ++a) {
    const int n = box.extent()[a];
    const int cap = max_side > 0 ? std::min(max_side, n) : n;
    const int side = std::uniform_int_distribution<int>(1, cap)(rng);
    r.lo[a] = std::uniform_int_distribution<int>(0, n - side)(rng);
    r.hi[a] = r.lo[a] + side;
  }
  return r;
}

ConditionAReport condition_a_probe(const GridFunction& w, const BasisSpec& spec, double lambda, std::uint64_t seed,
                                   int trials, int max_rects, BasisBudget budget) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InputError("condition_a_probe: lambda must be in (0,1)");
  if (trials < 1) throw InputError("condition_a_probe: trials must be >= 1");
  if (max_rects < 1) throw InputError("condition_a_probe: max_rects must be >= 1");
  check_weights(std::span(&w, 1));
  std::mt19937_64 rng(seed);
  ConditionAReport out;
  for (int t = 0; t < trials; ++t) {
    CellSet e(w.box());
    const int k = std::uniform_int_distribution<int>(1, max_rects)(rng);
    for (int i = 0; i < k; ++i) e.insert(random_rect(w.box(), rng));
    ++out.trials;
    if (!(set_mass(w, e) > 0.0)) {
      ++out.skipped;
      continue;
    }
    const double ratio = condition_a_ratio(w, spec, e, lambda, budget);
    if (ratio > out.c_hat) {
      out.c_hat = ratio;
      out.worst_e = e;
    }
  }
  return out;
}

}  // namespace maxrect
