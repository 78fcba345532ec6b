#include "maxrect/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace maxrect {

Rect make_rect(std::span<const int> lo, std::span<const int> hi) {
  if (lo.size() != hi.size() || lo.empty() || lo.size() > std::size_t(kMaxDim))
    throw InputError("rect: lo/hi must have equal length in 1..3");
  Rect r;
  for (std::size_t a = 0; a < lo.size(); ++a) {
    if (lo[a] >= hi[a]) throw InputError("rect: empty along axis " + std::to_string(a));
    r.lo[a] = lo[a];
    r.hi[a] = hi[a];
  }
  return r;
}

Box::Box(std::vector<double> lower, std::vector<double> upper, std::vector<int> dims)
    : lower_(std::move(lower)), upper_(std::move(upper)), dims_(std::move(dims)) {
  rank_ = int(dims_.size());
  if (rank_ < 1 || rank_ > kMaxDim) throw InputError("box: rank must be 1..3");
  if (int(lower_.size()) != rank_ || int(upper_.size()) != rank_)
    throw InputError("box: lower/upper/dims lengths differ");
  cell_count_ = 1;
  cell_volume_ = 1.0;
  for (int a = 0; a < rank_; ++a) {
    if (!(upper_[a] > lower_[a]) || !std::isfinite(lower_[a]) || !std::isfinite(upper_[a]))
      throw InputError("box: upper must exceed lower on axis " + std::to_string(a));
    if (dims_[a] < 1) throw InputError("box: dims must be >= 1 on axis " + std::to_string(a));
    extent_[a] = dims_[a];
    cell_count_ *= std::size_t(dims_[a]);
    cell_volume_ *= (upper_[a] - lower_[a]) / dims_[a];
  }
  if (!(cell_volume_ > 0.0)) throw InputError("box: cell volume must be positive");
}

bool Box::in_bounds(const Index& c) const noexcept {
  for (int a = 0; a < kMaxDim; ++a)
    if (c[a] < 0 || c[a] >= extent_[a]) return false;
  return true;
}

std::vector<double> Box::center(const Index& c) const {
  std::vector<double> x(rank_);
  for (int a = 0; a < rank_; ++a) x[a] = lower_[a] + (c[a] + 0.5) * cell_width(a);
  return x;
}

Rect Box::full() const noexcept {
  Rect r;
  for (int a = 0; a < kMaxDim; ++a) r.hi[a] = extent_[a];
  return r;
}

GridFunction::GridFunction(Box box, std::vector<double> values)
    : box_(std::move(box)), values_(std::move(values)) {
  if (values_.size() != box_.cell_count())
    throw InputError("grid function: values length " + std::to_string(values_.size()) +
                     " does not match cell count " + std::to_string(box_.cell_count()));
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      std::ostringstream os;
      os << "grid function: value at cell " << i << " is " << values_[i]
         << " (must be finite and >= 0)";
      throw InputError(os.str());
    }
  }
}

GridFunction GridFunction::constant(const Box& box, double value) {
  return GridFunction(box, std::vector<double>(box.cell_count(), value));
}

double GridFunction::integral() const {
  long double s = 0;
  for (double v : values_) s += v;
  return double(s * box_.cell_volume());
}

double GridFunction::max() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, v);
  return m;
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

GridFunction build_grid(const Box& box, const Sampler& sampler) {
  std::vector<double> values(box.cell_count());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Index c = box.unflat(i);
    const auto x = box.center(c);
    const double v = sampler(x);
    if (!std::isfinite(v) || v < 0.0) {
      std::ostringstream os;
      os << "build_grid: sample " << v << " at cell (";
      for (int a = 0; a < box.rank(); ++a) os << (a ? "," : "") << c[a];
      os << ") is not finite and nonnegative";
      throw InputError(os.str());
    }
    values[i] = v;
  }
  return GridFunction(box, std::move(values));
}

CellSet CellSet::all(const Box& box) {
  CellSet s(box);
  std::fill(s.bits_.begin(), s.bits_.end(), std::uint8_t{1});
  return s;
}

CellSet CellSet::of_rect(const Box& box, const Rect& r) {
  CellSet s(box);
  s.insert(r);
  return s;
}

void CellSet::insert(const Rect& r) {
  for (int i = r.lo[0]; i < r.hi[0]; ++i)
    for (int j = r.lo[1]; j < r.hi[1]; ++j)
      for (int k = r.lo[2]; k < r.hi[2]; ++k) bits_[box_.flat({i, j, k})] = 1;
}

std::size_t CellSet::count() const noexcept {
  return std::size_t(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::int64_t CellSet::overlap(const Rect& r) const noexcept {
  std::int64_t n = 0;
  for (int i = r.lo[0]; i < r.hi[0]; ++i)
    for (int j = r.lo[1]; j < r.hi[1]; ++j)
      for (int k = r.lo[2]; k < r.hi[2]; ++k) n += bits_[box_.flat({i, j, k})];
  return n;
}

CellSet& CellSet::operator|=(const CellSet& other) {
  check_same_grid(box_, other.box_, "cell set union");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

bool CellSet::disjoint(const CellSet& other) const {
  check_same_grid(box_, other.box_, "cell set disjointness");
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && other.bits_[i]) return false;
  return true;
}

GridFunction CellSet::indicator() const {
  std::vector<double> v(bits_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = bits_[i] ? 1.0 : 0.0;
  return GridFunction(box_, std::move(v));
}

SummedTable::SummedTable(const GridFunction& g) : box_(g.box()) {
  const Index& e = box_.extent();
  for (int a = 0; a < kMaxDim; ++a) stride_[a] = e[a] + 1;
  table_.assign(std::size_t(stride_[0]) * stride_[1] * stride_[2], 0.0L);
  for (int i = 0; i < e[0]; ++i)
    for (int j = 0; j < e[1]; ++j)
      for (int k = 0; k < e[2]; ++k) table_[offset({i + 1, j + 1, k + 1})] = g.at({i, j, k});
  // Cumulative sums axis 2, then 1, then 0; the fixed order keeps results
  // reproducible.
  for (int i = 1; i <= e[0]; ++i)
    for (int j = 1; j <= e[1]; ++j)
      for (int k = 1; k <= e[2]; ++k) table_[offset({i, j, k})] += table_[offset({i, j, k - 1})];
  for (int i = 1; i <= e[0]; ++i)
    for (int j = 1; j <= e[1]; ++j)
      for (int k = 1; k <= e[2]; ++k) table_[offset({i, j, k})] += table_[offset({i, j - 1, k})];
  for (int i = 1; i <= e[0]; ++i)
    for (int j = 1; j <= e[1]; ++j)
      for (int k = 1; k <= e[2]; ++k) table_[offset({i, j, k})] += table_[offset({i - 1, j, k})];
}

long double SummedTable::rect_sum(const Rect& r) const {
  switch (box_.rank()) {
    case 1:
      return table_[offset({r.hi[0], 1, 1})] - table_[offset({r.lo[0], 1, 1})];
    case 2:
      return rect_sum2(r.lo[0], r.hi[0], r.lo[1], r.hi[1]);
    default: {
      long double s = 0;
      for (int mask = 0; mask < 8; ++mask) {
        Index c{};
        int lows = 0;
        for (int a = 0; a < 3; ++a) {
          const bool low = (mask >> a) & 1;
          c[a] = low ? r.lo[a] : r.hi[a];
          lows += low;
        }
        s += (lows % 2 ? -1.0L : 1.0L) * table_[offset(c)];
      }
      return s;
    }
  }
}

SummedTable prefix_sums(const GridFunction& g) { return SummedTable(g); }

double rect_average(const SummedTable& t, const Rect& r) {
  const Index& e = t.box().extent();
  for (int a = 0; a < kMaxDim; ++a) {
    if (r.lo[a] >= r.hi[a]) throw InputError("rect_average: empty rectangle on axis " + std::to_string(a));
    if (r.lo[a] < 0 || r.hi[a] > e[a])
      throw InputError("rect_average: rectangle out of range on axis " + std::to_string(a));
  }
  return rect_average_unchecked(t, r);
}

double superlevel_measure(const GridFunction& g, double lambda) {
  std::size_t n = 0;
  for (double v : g.values()) n += v > lambda;
  return double(n) * g.box().cell_volume();
}

CellSet superlevel_set(const GridFunction& g, double lambda) {
  CellSet s(g.box());
  for (std::size_t i = 0; i < g.values().size(); ++i)
    if (g[i] > lambda) s.insert(i);
  return s;
}

double set_mass(const GridFunction& w, const CellSet& e) {
  check_same_grid(w.box(), e.box(), "set_mass");
  long double s = 0;
  for (std::size_t i = 0; i < w.values().size(); ++i)
    if (e.contains(i)) s += w[i];
  return double(s * w.box().cell_volume());
}

void check_same_grid(const Box& a, const Box& b, const char* what) {
  if (!(a == b)) throw InputError(std::string(what) + ": grids differ in box or dims");
}

namespace {

Box box_from_json(const nlohmann::json& j) {
  for (const char* key : {"lower", "upper", "dims"})
    if (!j.contains(key)) throw InputError(std::string("grid document: missing field '") + key + "'");
  return Box(j.at("lower").get<std::vector<double>>(), j.at("upper").get<std::vector<double>>(),
             j.at("dims").get<std::vector<int>>());
}

}  // namespace

Box parse_box(const std::string& json_text) {
  try {
    return box_from_json(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("grid document: ") + e.what());
  }
}

GridFunction preset(const Box& box, const std::string& expr) {
  const auto bar = expr.find('|');
  const std::string name = expr.substr(0, bar);
  double param = 1.0;
  const bool has_param = bar != std::string::npos;
  if (has_param) {
    try {
      param = std::stod(expr.substr(bar + 1));
    } catch (const std::exception&) {
      throw InputError("expr: bad parameter in '" + expr + "'");
    }
  }
  auto in_unit = [](std::span<const double> x) {
    for (double xi : x)
      if (xi < 0.0 || xi > 1.0) return false;
    return true;
  };
  if (name == "indicator_box")
    return build_grid(box, [&](std::span<const double> x) { return in_unit(x) ? 1.0 : 0.0; });
  if (name == "scaled_indicator") {
    if (!has_param) throw InputError("expr: scaled_indicator needs |N");
    return build_grid(box, [&](std::span<const double> x) { return in_unit(x) ? param : 0.0; });
  }
  if (name == "constant") return GridFunction::constant(box, param);
  if (name == "power") {
    if (!has_param) throw InputError("expr: power needs |alpha");
    return build_grid(box, [&](std::span<const double> x) {
      double r2 = 0.0;
      for (double xi : x) r2 += xi * xi;
      return std::pow(std::sqrt(r2), param);
    });
  }
  throw InputError("expr: unknown preset '" + name + "'");
}

GridFunction grid_function_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const Box box = box_from_json(j);
    if (j.contains("values")) return GridFunction(box, j.at("values").get<std::vector<double>>());
    if (j.contains("expr")) return preset(box, j.at("expr").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("grid document: ") + e.what());
  }
  throw InputError("grid document: needs 'values' or 'expr'");
}

GridFunction read_grid_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open grid file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return grid_function_from_json_text(ss.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string grid_function_to_json_text(const GridFunction& g) {
  nlohmann::json j;
  j["lower"] = g.box().lower();
  j["upper"] = g.box().upper();
  j["dims"] = g.box().dims();
  j["values"] = std::vector<double>(g.values().begin(), g.values().end());
  return j.dump();
}

}  // namespace maxrect
