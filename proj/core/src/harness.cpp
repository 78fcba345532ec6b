#include "maxrect/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <nlohmann/json.hpp>
#include <numeric>

#include "maxrect/errors.hpp"
#include "maxrect/maximal.hpp"
#include "maxrect/weights.hpp"

namespace maxrect {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

double young_integral(const GridFunction& f, double lambda, const YoungSpec& y) {
  double s = 0.0;
  for (double v : f.values()) s += young_eval(y, v / lambda);
  return s * f.box().cell_volume();
}

double lp_norm(const GridFunction& f, const GridFunction& w, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i) s += std::pow(f[i], p) * w[i];
  return std::pow(s * f.box().cell_volume(), 1.0 / p);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + fmt17(row[c]);
    out += '\n';
  }
  return out;
}

std::vector<double> Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw InputError("table has no column '" + name + "'");
  const std::size_t c = std::size_t(it - columns.begin());
  std::vector<double> out;
  for (const auto& row : rows) out.push_back(row[c]);
  return out;
}

Table to_table(const std::vector<ExperimentRow>& rows) {
  Table t;
  if (!rows.empty())
    for (const auto& [k, v] : rows.front().params) t.columns.push_back(k);
  for (const char* c : {"lhs", "rhs", "ratio", "flagged", "runtime_ms"}) t.columns.push_back(c);
  for (const auto& r : rows) {
    std::vector<double> v;
    for (const auto& [k, x] : r.params) v.push_back(x);
    v.insert(v.end(), {r.lhs, r.rhs, r.ratio, r.flagged ? 1.0 : 0.0, double(r.runtime_ms)});
    t.rows.push_back(std::move(v));
  }
  return t;
}

double analytic_square_profile(double x1, double x2) {
  auto s = [](double u) { return u > 1.0 ? 1.0 / u : (u < 0.0 ? 1.0 / (1.0 - u) : 1.0); };
  return s(x1) * s(x2);
}

double analytic_square_superlevel(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InputError("analytic_square_superlevel: lambda must be in (0,1)");
  return 1.0 - 4.0 * std::log(lambda) / lambda;
}

double analytic_square_superlevel_in(double lambda, const Box& box, int steps) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InputError("analytic_square_superlevel_in: lambda must be in (0,1)");
  if (box.rank() != 2) throw InputError("analytic_square_superlevel_in: box must have rank 2");
  const double x0 = box.lower()[0], x1 = box.upper()[0], y0 = box.lower()[1], y1 = box.upper()[1];
  // s(y) > t  <=>  y ∈ (1 − 1/t, 1/t) for 0 < t < 1.
  auto y_measure = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double lo = std::max(y0, 1.0 - 1.0 / t), hi = std::min(y1, 1.0 / t);
    return std::max(0.0, hi - lo);
  };
  auto piece = [&](double a, double b) {
    if (!(b > a)) return 0.0;
    const double h = (b - a) / steps;
    double s = 0.0;
    for (int i = 0; i < steps; ++i) s += y_measure(lambda / analytic_square_profile(a + (i + 0.5) * h, 0.5));
    return s * h;
  };
  return piece(x0, std::min(x1, 0.0)) + piece(std::max(x0, 0.0), std::min(x1, 1.0)) + piece(std::max(x0, 1.0), x1);
}

std::vector<double> geometric_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0 && hi > lo) || per_decade < 1) throw InputError("geometric_grid: need 0 < lo < hi, per_decade >= 1");
  const int count = std::max(2, int(std::lround(std::log10(hi / lo) * per_decade)) + 1);
  return geometric_points(lo, hi, count);
}

std::vector<double> geometric_points(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi > lo) || count < 2) throw InputError("geometric_points: need 0 < lo < hi, count >= 2");
  std::vector<double> out(count);
  const double step = std::log(lo / hi) / double(count - 1);
  for (int i = 0; i < count; ++i) out[i] = hi * std::exp(step * i);
  out.back() = lo;
  return out;
}

std::vector<ExperimentRow> jmz_experiment(const std::vector<GridFunction>& fs, const std::vector<double>& lambdas,
                                          int n, int threads, BasisBudget budget) {
  const YoungSpec y = YoungSpec::phi(n);
  validate(y);
  std::vector<ExperimentRow> rows;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const auto t0 = Clock::now();
    const auto m = maximal_map(fs[k], BasisSpec::rectangles(), Algorithm::automatic, budget, threads);
    for (double lambda : lambdas) {
      if (!(lambda > 0.0)) throw InputError("jmz_experiment: lambda must be > 0");
      ExperimentRow r;
      r.params = {{"f", double(k)}, {"lambda", lambda}};
      r.lhs = superlevel_measure(m, lambda);
      r.rhs = young_integral(fs[k], lambda, y);
      r.flagged = !(r.rhs > 0.0);
      r.ratio = r.flagged ? 0.0 : r.lhs / r.rhs;
      r.runtime_ms = elapsed_ms(t0);
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

BsmfReport bsmf_experiment(const std::vector<GridFunction>& fs, const std::vector<double>& lambdas, int n,
                           int threads, BasisBudget budget) {
  if (fs.empty()) throw InputError("bsmf_experiment: need at least one function");
  const int m = int(fs.size());
  for (const auto& f : fs) check_same_grid(fs[0].box(), f.box(), "bsmf_experiment");
  const BasisSpec spec = BasisSpec::rectangles();
  BsmfReport rep;
  const auto mm = multilinear_maximal_map(fs, spec, Algorithm::automatic, budget, threads);

  std::vector<GridFunction> singles;
  for (const auto& f : fs) singles.push_back(maximal_map(f, spec, Algorithm::automatic, budget, threads));
  for (std::size_t c = 0; c < mm.values().size(); ++c) {
    double prod = singles[0][c];
    for (int i = 1; i < m; ++i) prod *= singles[i][c];
    if (mm[c] > prod) rep.tensor_bound_holds = false;
  }
  const bool same = std::all_of(fs.begin(), fs.end(), [&](const GridFunction& f) {
    return std::equal(f.values().begin(), f.values().end(), fs[0].values().begin());
  });
  if (same) {
    bool ok = true;
    for (std::size_t c = 0; c < mm.values().size(); ++c) {
      double prod = singles[0][c];
      for (int i = 1; i < m; ++i) prod *= singles[0][c];
      if (mm[c] != prod) ok = false;
    }
    rep.identity_holds = ok;
  }

  for (double lambda : lambdas) {
    if (!(lambda > 0.0)) throw InputError("bsmf_experiment: lambda must be > 0");
    BsmfRow row;
    row.lambda = lambda;
    row.lhs = superlevel_measure(mm, std::pow(lambda, m));
    for (int k = 1; k <= m; ++k) {
      double prod = 1.0;
      for (const auto& f : fs) prod *= young_integral(f, lambda, YoungSpec::phi(n, k));
      const double rhs = std::pow(prod, 1.0 / m);
      row.rhs.push_back(rhs);
      row.ratio.push_back(rhs > 0.0 ? row.lhs / rhs : 0.0);
      if (!(rhs > 0.0)) row.flagged = true;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

Table to_table(const BsmfReport& report) {
  Table t;
  t.columns = {"lambda", "lhs"};
  const std::size_t m = report.rows.empty() ? 0 : report.rows.front().rhs.size();
  for (std::size_t k = 1; k <= m; ++k) t.columns.push_back("rhs_phi" + std::to_string(k));
  for (std::size_t k = 1; k <= m; ++k) t.columns.push_back("ratio" + std::to_string(k));
  t.columns.push_back("flagged");
  for (const auto& r : report.rows) {
    std::vector<double> v{r.lambda, r.lhs};
    v.insert(v.end(), r.rhs.begin(), r.rhs.end());
    v.insert(v.end(), r.ratio.begin(), r.ratio.end());
    v.push_back(r.flagged ? 1.0 : 0.0);
    t.rows.push_back(std::move(v));
  }
  return t;
}

std::vector<SharpnessRow> sharpness_sweep(const std::vector<double>& Ns) {
  const YoungSpec p1 = YoungSpec::phi(2, 1), p2 = YoungSpec::phi(2, 2);
  std::vector<SharpnessRow> rows;
  for (double N : Ns) {
    if (!(N >= 1.0) || !std::isfinite(N)) throw InputError("sharpness_sweep: N must be finite and >= 1");
    const auto t0 = Clock::now();
    SharpnessRow r;
    r.N = N;
    r.lambda = 1.0 / (10.0 * std::sqrt(N));
    r.lhs = analytic_square_superlevel(r.lambda);
    r.rhs_phi1 = std::sqrt(young_eval(p1, 10.0) * young_eval(p1, 10.0 * N));
    r.rhs_phi2 = std::sqrt(young_eval(p2, 10.0) * young_eval(p2, 10.0 * N));
    r.ratio1 = r.lhs / r.rhs_phi1;
    r.ratio2 = r.lhs / r.rhs_phi2;
    r.runtime_ms = elapsed_ms(t0);
    rows.push_back(r);
  }
  return rows;
}

Table to_table(const std::vector<SharpnessRow>& rows) {
  Table t;
  t.columns = {"N", "lambda", "lhs", "rhs_phi1", "rhs_phi2", "ratio1", "ratio2", "runtime_ms"};
  for (const auto& r : rows)
    t.rows.push_back({r.N, r.lambda, r.lhs, r.rhs_phi1, r.rhs_phi2, r.ratio1, r.ratio2, double(r.runtime_ms)});
  return t;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("fit_line: need two equal-length series of >= 2 points");
  const double n = double(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  f.r2 = (sxx > 0 && syy > 0) ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

ProbeReport weighted_bound_probe(const std::vector<GridFunction>& ws, const std::vector<double>& ps,
                                 const BasisSpec& spec, const std::vector<std::vector<GridFunction>>& tests,
                                 ProbeMode mode, const GridFunction* nu, int threads) {
  const ExponentVector pv(ps);
  for (std::size_t j = 0; j < pv.size(); ++j)
    if (!(pv[j] > 1.0)) throw InputError("weighted_bound_probe: exponents must exceed 1");
  const GridFunction nu_w = nu ? *nu : nu_of(ws, pv);
  const double p = pv.p();
  ProbeReport rep;
  for (std::size_t t = 0; t < tests.size(); ++t) {
    const auto& fs = tests[t];
    if (fs.size() != ws.size()) throw InputError("weighted_bound_probe: test tuple size differs from weight count");
    double denom = 1.0;
    for (std::size_t j = 0; j < fs.size(); ++j) denom *= lp_norm(fs[j], ws[j], pv[j]);
    if (!(denom > 0.0) || !std::isfinite(denom)) {
      rep.per_test.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const auto m = multilinear_maximal_map(fs, spec, Algorithm::automatic, {}, threads);
    double num = 0.0;
    if (mode == ProbeMode::strong) {
      num = lp_norm(m, nu_w, p);
    } else {
      std::vector<std::size_t> idx(m.values().size());
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return m[a] > m[b]; });
      double mass = 0.0;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        mass += nu_w[idx[k]] * m.box().cell_volume();
        if (k + 1 < idx.size() && m[idx[k + 1]] == m[idx[k]]) continue;
        num = std::max(num, m[idx[k]] * std::pow(mass, 1.0 / p));
      }
    }
    const double v = num / denom;
    rep.per_test.push_back(v);
    if (!std::isfinite(v)) continue;
    if (v > rep.value) {
      rep.value = v;
      rep.argmax = t;
    }
  }
  return rep;
}

std::vector<std::vector<GridFunction>> default_probe_tests(const std::vector<GridFunction>& ws,
                                                           const std::vector<double>& ps) {
  if (ws.empty()) throw InputError("default_probe_tests: need at least one weight");
  const Box& box = ws[0].box();
  const ExponentVector pv(ps);
  int longest = 1;
  for (int a = 0; a < box.rank(); ++a) longest = std::max(longest, box.extent()[a]);
  auto corner = [&](int k) {
    Rect r;
    for (int a = 0; a < box.rank(); ++a) r.hi[a] = std::min(k, box.extent()[a]);
    return CellSet::of_rect(box, r);
  };
  std::vector<std::vector<GridFunction>> out;
  for (int k = 1; k <= longest; k *= 2) {
    const CellSet s = corner(k);
    const GridFunction ind = s.indicator();
    out.push_back(std::vector<GridFunction>(ws.size(), ind));
    std::vector<GridFunction> extremal;
    for (std::size_t j = 0; j < ws.size(); ++j) {
      std::vector<double> v(box.cell_count(), 0.0);
      const double e = 1.0 - pv.conjugate(j);
      for (std::size_t i = 0; i < v.size(); ++i)
        if (s.contains(i)) v[i] = std::pow(ws[j][i], e);
      extremal.emplace_back(box, std::move(v));
    }
    out.push_back(std::move(extremal));
  }
  return out;
}

std::string config_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const char* version() { return "0.1.0"; }

std::string run_manifest(const std::string& command, const std::string& config_json, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["config"] = nlohmann::json::parse(config_json);
  j["config_hash"] = config_hash(config_json);
  j["seed"] = seed;
  j["version"] = version();
  const std::time_t now = std::time(nullptr);
  char ts[32];
  std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  j["timestamp"] = ts;
  return j.dump(2) + "\n";
}

}  // namespace maxrect
