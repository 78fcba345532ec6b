#include "maxrect/covering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maxrect/errors.hpp"
#include "maxrect/maximal.hpp"
#include "maxrect/orlicz.hpp"
#include "maxrect/weights.hpp"

namespace maxrect {

namespace {

void check_rects(const Box& box, std::span<const Rect> rects) {
  if (rects.empty()) throw InputError("selection: empty rectangle list");
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const Rect& r = rects[i];
    for (int a = 0; a < kMaxDim; ++a) {
      const int n = a < box.rank() ? box.extent()[a] : 1;
      if (r.lo[a] < 0 || r.hi[a] > n || r.lo[a] >= r.hi[a])
        throw InputError("selection: rectangle " + std::to_string(i) + " is empty or outside the grid");
    }
  }
}

CellSet cells_of(const Box& box, const Rect& r) { return CellSet::of_rect(box, r); }

CellSet minus(const CellSet& a, const CellSet& b) {
  CellSet out(a.box());
  for (std::size_t i = 0; i < a.bits().size(); ++i)
    if (a.contains(i) && !b.contains(i)) out.insert(i);
  return out;
}

template <class Accept>
SelectionResult greedy(const Box& box, std::span<const Rect> rects, std::span<const std::size_t> order,
                       Accept&& accept) {
  SelectionResult out;
  out.overlap_ratio.assign(rects.size(), 0.0);
  out.accepted_before.assign(rects.size(), 0);
  CellSet u(box);
  for (std::size_t idx : order) {
    const Rect& r = rects[idx];
    const std::int64_t cells = r.cells();
    const std::int64_t ov = u.overlap(r);
    out.overlap_ratio[idx] = double(ov) / double(cells);
    out.accepted_before[idx] = out.selected.size();
    out.examined.push_back(idx);
    if (accept(ov, cells)) {
      CellSet rc = cells_of(box, r);
      out.disjoint_parts.push_back(minus(rc, u));
      out.alpha = std::max(out.alpha, out.overlap_ratio[idx]);
      u |= rc;
      out.selected.push_back(idx);
    } else {
      out.rejected.push_back(idx);
    }
  }
  return out;
}

}  // namespace

SelectionOrder selection_order_from_string(const std::string& name) {
  if (name == "given") return SelectionOrder::given;
  if (name == "by-measure-desc") return SelectionOrder::by_measure_desc;
  throw InputError("unknown order '" + name + "' (expected given|by-measure-desc)");
}

std::vector<std::size_t> order_rects(std::span<const Rect> rects, SelectionOrder order) {
  std::vector<std::size_t> idx(rects.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (order == SelectionOrder::by_measure_desc)
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return rects[a].cells() > rects[b].cells(); });
  return idx;
}

SelectionResult select_half_overlap(const Box& box, std::span<const Rect> rects, SelectionOrder order) {
  check_rects(box, rects);
  const auto perm = order_rects(rects, order);
  return greedy(box, rects, perm, [](std::int64_t ov, std::int64_t cells) { return 2 * ov < cells; });
}

SelectionResult select_alpha_scattered(const Box& box, std::span<const Rect> rects, double lambda,
                                       SelectionOrder order) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InputError("select_alpha_scattered: lambda must be in (0,1)");
  check_rects(box, rects);
  const auto perm = order_rects(rects, order);
  return greedy(box, rects, perm,
                [lambda](std::int64_t ov, std::int64_t cells) { return double(ov) <= lambda * double(cells); });
}

SelectionResult select_exp_overlap(const Box& box, std::span<const Rect> rects, int n, double delta0) {
  if (n < 2) throw InputError("select_exp_overlap: n must be >= 2");
  if (!(delta0 > 0.0)) throw InputError("select_exp_overlap: delta0 must be > 0");
  check_rects(box, rects);
  std::vector<std::size_t> perm(rects.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return rects[a].side(1) > rects[b].side(1); });

  std::vector<double> count(box.cell_count(), 0.0);
  const double root = 1.0 / double(n - 1);
  auto accept_rect = [&](const Rect& r) {
    double s = 0.0;
    for (int i = r.lo[0]; i < r.hi[0]; ++i)
      for (int j = r.lo[1]; j < r.hi[1]; ++j)
        for (int k = r.lo[2]; k < r.hi[2]; ++k) s += std::exp(std::pow(delta0 * count[box.flat({i, j, k})], root));
    return s <= 2.0 * double(r.cells());
  };

  SelectionResult out;
  out.overlap_ratio.assign(rects.size(), 0.0);
  out.accepted_before.assign(rects.size(), 0);
  CellSet u(box);
  for (std::size_t idx : perm) {
    const Rect& r = rects[idx];
    out.overlap_ratio[idx] = double(u.overlap(r)) / double(r.cells());
    out.accepted_before[idx] = out.selected.size();
    out.examined.push_back(idx);
    if (accept_rect(r)) {
      CellSet rc = cells_of(box, r);
      out.disjoint_parts.push_back(minus(rc, u));
      out.alpha = std::max(out.alpha, out.overlap_ratio[idx]);
      u |= rc;
      for (int i = r.lo[0]; i < r.hi[0]; ++i)
        for (int j = r.lo[1]; j < r.hi[1]; ++j)
          for (int k = r.lo[2]; k < r.hi[2]; ++k) count[box.flat({i, j, k})] += 1.0;
      out.selected.push_back(idx);
    } else {
      out.rejected.push_back(idx);
    }
  }
  out.union_ratio = union_of(box, rects).measure() / u.measure();
  out.psi_norm = luxemburg_norm(count, u.bits(), YoungSpec::psi(n)).value;
  return out;
}

CellSet union_of(const Box& box, std::span<const Rect> rects, std::span<const std::size_t> which) {
  CellSet u(box);
  for (std::size_t i : which) u.insert(rects[i]);
  return u;
}

CellSet union_of(const Box& box, std::span<const Rect> rects) {
  CellSet u(box);
  for (const Rect& r : rects) u.insert(r);
  return u;
}

bool verify_half_overlap(const Box& box, std::span<const Rect> rects, const SelectionResult& sel) {
  const CellSet u = union_of(box, rects, sel.selected);
  for (std::size_t i : sel.rejected)
    if (2 * u.overlap(rects[i]) < rects[i].cells()) return false;
  for (std::size_t k = 0; k < sel.selected.size(); ++k)
    if (!(2 * std::int64_t(sel.disjoint_parts[k].count()) > rects[sel.selected[k]].cells())) return false;
  return true;
}

bool verify_scattered(const Box& box, std::span<const Rect> rects, const SelectionResult& sel, double lambda) {
  CellSet u(box);
  for (std::size_t i : sel.selected) {
    if (double(u.overlap(rects[i])) > lambda * double(rects[i].cells())) return false;
    u.insert(rects[i]);
  }
  return true;
}

bool verify_scattered_containment(const Box& box, std::span<const Rect> rects, const SelectionResult& sel,
                                  const BasisSpec& spec, double lambda) {
  std::vector<std::size_t> todo = sel.rejected;
  std::stable_sort(todo.begin(), todo.end(),
                   [&](std::size_t a, std::size_t b) { return sel.accepted_before[a] < sel.accepted_before[b]; });
  std::size_t prefix = std::size_t(-1);
  GridFunction m;
  for (std::size_t i : todo) {
    if (sel.accepted_before[i] != prefix) {
      prefix = sel.accepted_before[i];
      const CellSet u = union_of(box, rects, std::span(sel.selected).first(prefix));
      m = maximal_map(u.indicator(), spec, Algorithm::automatic);
    }
    const Rect& r = rects[i];
    for (int a = r.lo[0]; a < r.hi[0]; ++a)
      for (int b = r.lo[1]; b < r.hi[1]; ++b)
        for (int c = r.lo[2]; c < r.hi[2]; ++c)
          if (!(m[box.flat({a, b, c})] > lambda)) return false;
  }
  return true;
}

ChainReport weighted_chain(const GridFunction& w, std::span<const Rect> rects, const SelectionResult& sel,
                           const BasisSpec& spec, double lambda) {
  const Box& box = w.box();
  const auto& examined = sel.examined;
  std::vector<bool> is_sel(rects.size(), false);
  for (std::size_t i : sel.selected) is_sel[i] = true;

  ChainReport out;
  const std::size_t n = examined.size();
  for (std::size_t i = 0; i < n; ++i) {
    CellSet f(box);
    for (std::size_t s = 0; s < i; ++s) f.insert(rects[examined[s]]);
    CellSet all_j = f;
    CellSet g(box);
    for (std::size_t j = i + 1; j <= n; ++j) {
      const std::size_t s = examined[j - 1];
      all_j.insert(rects[s]);
      if (is_sel[s]) g.insert(rects[s]);
      const double denom = set_mass(w, f) + set_mass(w, g);
      const double ratio = set_mass(w, all_j) / denom;
      out.ratio = std::max(out.ratio, ratio);
      CellSet e = f;
      e |= g;
      out.constant = std::max(out.constant, 1.0 + condition_a_ratio(w, spec, e, lambda));
    }
  }
  return out;
}

}  // namespace maxrect
