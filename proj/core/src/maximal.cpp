#include "maxrect/maximal.hpp"

#include <algorithm>
#include <functional>

#include "maxrect/parallel.hpp"

namespace maxrect {

namespace {

/// Candidate value of one rectangle. All algorithms share this so their
/// outputs agree bit for bit.
class Candidate {
 public:
  Candidate(std::span<const GridFunction> fs, const GridFunction* weight) {
    if (weight) {
      std::vector<double> fw(fs[0].values().size());
      for (std::size_t i = 0; i < fw.size(); ++i) fw[i] = fs[0][i] * (*weight)[i];
      tables_.emplace_back(GridFunction(fs[0].box(), std::move(fw)));
      weight_table_.emplace(*weight);
    } else {
      for (const auto& f : fs) tables_.emplace_back(f);
    }
  }

  double operator()(const Rect& r) const {
    if (weight_table_) return double(tables_[0].rect_sum(r) / weight_table_->rect_sum(r));
    double v = rect_average_unchecked(tables_[0], r);
    for (std::size_t i = 1; i < tables_.size(); ++i) v *= rect_average_unchecked(tables_[i], r);
    return v;
  }

  /// Same arithmetic as operator() for a rank-2 rectangle [a,b)×[c,d).
  double rank2(int a, int b, int c, int d) const {
    if (weight_table_) return double(tables_[0].rect_sum2(a, b, c, d) / weight_table_->rect_sum2(a, b, c, d));
    const long double cells = (long double)(std::int64_t(b - a) * (d - c));
    double v = double(tables_[0].rect_sum2(a, b, c, d) / cells);
    for (std::size_t i = 1; i < tables_.size(); ++i) v *= double(tables_[i].rect_sum2(a, b, c, d) / cells);
    return v;
  }

 private:
  std::vector<SummedTable> tables_;
  std::optional<SummedTable> weight_table_;
};

GridFunction brute(const Box& box, const BasisSpec& spec, const Candidate& value, BasisBudget budget,
                   int threads) {
  const std::size_t n = box.cell_count();
  std::vector<double> out(n, 0.0);
  parallel_workers(threads, [&](int w) {
    for (std::size_t i = std::size_t(w); i < n; i += std::size_t(std::max(1, threads))) {
      double best = 0.0;
      for_each_containing(spec, box, box.unflat(i), budget,
                          [&](const Rect& r) { best = std::max(best, value(r)); });
      out[i] = best;
    }
  });
  return GridFunction(box, std::move(out));
}

/// Full rectangle family on a rank-2 grid. For every row interval J = [c,d)
/// the problem is one-dimensional in the column marginal averaged over J:
/// for each left end a, a suffix max over right ends b gives the best
/// interval starting at a that contains column b-1. Rows are then filled by
/// a suffix max over d. O(E0² E1²) rectangle evaluations.
GridFunction rectangles_rank2(const Box& box, const Candidate& value, int threads) {
  const int nx = box.extent()[0], ny = box.extent()[1];
  const int workers = std::max(1, threads);
  std::vector<std::vector<double>> partial(workers, std::vector<double>(box.cell_count(), 0.0));
  parallel_workers(workers, [&](int w) {
    auto& out = partial[w];
    std::vector<double> best_j(nx), running(nx);
    for (int c = w; c < ny; c += workers) {
      std::fill(running.begin(), running.end(), 0.0);
      for (int d = ny; d > c; --d) {
        std::fill(best_j.begin(), best_j.end(), 0.0);
        for (int a = 0; a < nx; ++a) {
          double suffix = 0.0;
          for (int b = nx; b > a; --b) {
            suffix = std::max(suffix, value.rank2(a, b, c, d));
            best_j[b - 1] = std::max(best_j[b - 1], suffix);
          }
        }
        for (int u = 0; u < nx; ++u) {
          running[u] = std::max(running[u], best_j[u]);
          double& cell = out[box.flat({u, d - 1, 0})];
          cell = std::max(cell, running[u]);
        }
      }
    }
  });
  for (int w = 1; w < workers; ++w) merge_max(partial[0], partial[w]);
  return GridFunction(box, std::move(partial[0]));
}

GridFunction enumerate_and_sweep(const Box& box, const BasisSpec& spec, const Candidate& value,
                                 BasisBudget budget, int threads) {
  constexpr std::size_t kBatch = 1 << 20;
  std::vector<double> out(box.cell_count(), 0.0);
  std::vector<RectValue> batch;
  batch.reserve(kBatch);
  auto flush = [&] {
    const auto part = sweep_engine(box, batch, threads);
    merge_max(out, part.values());
    batch.clear();
  };
  for_each_member(spec, box, budget, [&](const Rect& r) {
    const double v = value(r);
    if (v > 0.0) batch.push_back({r, v});
    if (batch.size() == kBatch) flush();
  });
  if (!batch.empty()) flush();
  return GridFunction(box, std::move(out));
}

GridFunction run(std::span<const GridFunction> fs, const GridFunction* weight, const BasisSpec& spec,
                 Algorithm algorithm, BasisBudget budget, int threads) {
  if (fs.empty()) throw InputError("maximal: need at least one function");
  const Box& box = fs[0].box();
  for (const auto& f : fs) check_same_grid(box, f.box(), "maximal: functions");
  if (weight) {
    check_same_grid(box, weight->box(), "maximal: weight");
    if (fs.size() != 1) throw InputError("maximal: weights apply to m = 1 only");
    for (std::size_t i = 0; i < weight->values().size(); ++i)
      if (!((*weight)[i] > 0.0))
        throw InputError("maximal: weight must be strictly positive (cell " + std::to_string(i) + ")");
  }
  validate(spec, box.rank());
  const std::int64_t members = count_members(spec, box);
  if (members > budget.max_sets) throw BudgetExceeded(members, budget.max_sets);

  if (algorithm == Algorithm::automatic)
    algorithm = count_cell_visits(spec, box) < kAutoBruteVisits ? Algorithm::brute : Algorithm::sweep;

  const Candidate value(fs, weight);
  if (algorithm == Algorithm::brute) return brute(box, spec, value, budget, threads);
  if (fs.size() == 1 && spec.kind == BasisKind::rectangles && box.rank() == 2)
    return rectangles_rank2(box, value, threads);
  return enumerate_and_sweep(box, spec, value, budget, threads);
}

// ---- sweep engine -------------------------------------------------------

struct Item {
  Rect rect;
  double value;
};

/// Dense per-cell maxima over axes [axis, kMaxDim) for items restricted to
/// those axes.
std::vector<double> solve_axes(std::vector<Item>& items, int axis, const Index& ext) {
  std::size_t sub = 1;
  for (int a = axis + 1; a < kMaxDim; ++a) sub *= std::size_t(ext[a]);
  const int n = ext[axis];
  std::vector<double> out(std::size_t(n) * sub, 0.0);

  if (axis == kMaxDim - 1 || sub == 1) {
    // Remaining axes are trivial beyond this one: 1D stabbing via a
    // bottom-up segment tree of max tags.
    int size = 1;
    while (size < n) size *= 2;
    std::vector<double> tag(2 * std::size_t(size), 0.0);
    for (const Item& it : items) {
      int l = it.rect.lo[axis] + size, r = it.rect.hi[axis] + size;
      while (l < r) {
        if (l & 1) { tag[l] = std::max(tag[l], it.value); ++l; }
        if (r & 1) { --r; tag[r] = std::max(tag[r], it.value); }
        l /= 2;
        r /= 2;
      }
    }
    for (int i = 1; i < size; ++i) {
      tag[2 * i] = std::max(tag[2 * i], tag[i]);
      tag[2 * i + 1] = std::max(tag[2 * i + 1], tag[i]);
    }
    for (int i = 0; i < n; ++i)
      for (std::size_t s = 0; s < sub; ++s) out[std::size_t(i) * sub + s] = tag[size + i];
    return out;
  }

  // Canonical decomposition of each item's interval on this axis.
  std::vector<std::vector<Item>> bucket(4 * std::size_t(n));
  std::function<void(int, int, int, const Item&)> place = [&](int node, int l, int r, const Item& it) {
    if (it.rect.hi[axis] <= l || r <= it.rect.lo[axis]) return;
    if (it.rect.lo[axis] <= l && r <= it.rect.hi[axis]) {
      bucket[node].push_back(it);
      return;
    }
    const int mid = (l + r) / 2;
    place(2 * node, l, mid, it);
    place(2 * node + 1, mid, r, it);
  };
  for (const Item& it : items) place(1, 0, n, it);
  items.clear();
  items.shrink_to_fit();

  std::function<void(int, int, int, const std::vector<double>&)> descend =
      [&](int node, int l, int r, const std::vector<double>& inherited) {
        std::vector<double> acc = inherited;
        if (!bucket[node].empty()) {
          const auto own = solve_axes(bucket[node], axis + 1, ext);
          for (std::size_t s = 0; s < sub; ++s) acc[s] = std::max(acc[s], own[s]);
        }
        if (r - l == 1) {
          std::copy(acc.begin(), acc.end(), out.begin() + std::ptrdiff_t(std::size_t(l) * sub));
          return;
        }
        const int mid = (l + r) / 2;
        descend(2 * node, l, mid, acc);
        descend(2 * node + 1, mid, r, acc);
      };
  descend(1, 0, n, std::vector<double>(sub, 0.0));
  return out;
}

}  // namespace

void merge_max(std::vector<double>& a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::max(a[i], b[i]);
}

GridFunction sweep_engine(const Box& box, std::span<const RectValue> rects, int threads) {
  const Index& ext = box.extent();
  for (const auto& rv : rects)
    for (int a = 0; a < kMaxDim; ++a)
      if (rv.rect.lo[a] < 0 || rv.rect.hi[a] > ext[a] || rv.rect.lo[a] >= rv.rect.hi[a])
        throw InputError("sweep_engine: rectangle out of range or empty");
  const int workers = std::max(1, threads);
  std::vector<std::vector<double>> partial(workers);
  parallel_workers(workers, [&](int w) {
    std::vector<Item> items;
    for (std::size_t i = std::size_t(w); i < rects.size(); i += std::size_t(workers))
      items.push_back({rects[i].rect, rects[i].value});
    partial[w] = solve_axes(items, 0, ext);
  });
  for (int w = 1; w < workers; ++w) merge_max(partial[0], partial[w]);
  return GridFunction(box, std::move(partial[0]));
}

GridFunction maximal_map(const GridFunction& f, const BasisSpec& spec, Algorithm algorithm,
                         BasisBudget budget, int threads) {
  return run(std::span(&f, 1), nullptr, spec, algorithm, budget, threads);
}

GridFunction weighted_maximal_map(const GridFunction& f, const GridFunction& w, const BasisSpec& spec,
                                  Algorithm algorithm, BasisBudget budget, int threads) {
  return run(std::span(&f, 1), &w, spec, algorithm, budget, threads);
}

GridFunction multilinear_maximal_map(std::span<const GridFunction> fs, const BasisSpec& spec,
                                     Algorithm algorithm, BasisBudget budget, int threads) {
  return run(fs, nullptr, spec, algorithm, budget, threads);
}

GridFunction compute(const MaximalRequest& req) {
  return run(req.functions, req.weight ? &*req.weight : nullptr, req.spec, req.algorithm, req.budget,
             req.threads);
}

}  // namespace maxrect
