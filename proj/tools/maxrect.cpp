#include <maxrect/covering.hpp>
#include <maxrect/harness.hpp>
#include <maxrect/interp.hpp>
#include <maxrect/maximal.hpp>
#include <maxrect/orlicz.hpp>
#include <maxrect/weights.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using namespace maxrect;
using nlohmann::ordered_json;

namespace {

struct State {
  std::string config, out, manifest, format = "csv";
  int threads = 1;
  std::uint64_t seed = 0;
  std::int64_t budget = kDefaultBudget;

  std::string basis = "rectangles", algorithm = "auto";
  double ecc = 2.0;
  int m = 0;
  std::vector<std::string> f, w;
  std::string weight, nu, g;

  std::string phi = "n=2,m=1", set = "all";

  std::string p_list;
  double p = 2.0, bump_r = 0.0, lambda = 0.5;
  int trials = 200, max_rects = 3;

  std::string method = "half", order = "given", rects;
  int n = 2;
  double delta0 = 1.0;

  double alpha = 0.25, B1 = 1.0, B2 = 1.0, A = 1.0, B = 1.0, s1 = 1.5, s2 = 6.0;

  double lambda_min = 0.01, lambda_max = 0.5;
  int per_decade = 24;

  double Nmax = 1048576.0, factor = 4.0;
  std::string mode = "strong";
};

void common(CLI::App* sub, State& st, bool table) {
  sub->add_option("--config", st.config, "JSON file of option values, overridden by explicit flags");
  sub->add_option("--out", st.out, "Output path (stdout when omitted)");
  sub->add_option("--manifest", st.manifest, "Run manifest path (default <out>.manifest.json)");
  sub->add_option("--threads", st.threads, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--seed", st.seed, "Random seed");
  sub->add_option("--budget", st.budget, "Maximum basis sets visited")->check(CLI::PositiveNumber);
  if (table) sub->add_option("--format", st.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void basis_flags(CLI::App* sub, State& st) {
  sub->add_option("--basis", st.basis, "rectangles, cubes, dyadic, eccentricity or sts");
  sub->add_option("--N", st.ecc, "Eccentricity bound for the eccentricity basis");
}

std::unique_ptr<CLI::App> build(State& st) {
  auto app = std::make_unique<CLI::App>("Strong and multilinear maximal function toolkit", "maxrect");
  app->option_defaults()->always_capture_default();
  app->require_subcommand(1);
  app->set_version_flag("--version", version());

  auto* compute = app->add_subcommand("compute", "Maximal map of one or more grid functions");
  basis_flags(compute, st);
  compute->add_option("--m", st.m, "Number of functions (defaults to the number of --f)");
  compute->add_option("--f", st.f, "Grid function file (repeat for the multilinear operator)");
  compute->add_option("--w", st.weight, "Weight file for the weighted maximal operator");
  compute->add_option("--algorithm", st.algorithm, "auto, brute or sweep")
      ->check(CLI::IsMember({"auto", "brute", "sweep"}));
  common(compute, st, false);

  auto* orlicz = app->add_subcommand("orlicz", "Luxemburg norms");
  orlicz->require_subcommand(1);
  auto* norm = orlicz->add_subcommand("norm", "Luxemburg norm of f over a cell set");
  norm->add_option("--phi", st.phi, "Young function, e.g. n=2,m=1 or psi,n=2");
  norm->add_option("--f", st.f, "Grid function file")->expected(1);
  norm->add_option("--set", st.set, "all, or cell ranges a:b,c:d[,e:f]");
  common(norm, st, false);

  auto* weights = app->add_subcommand("weights", "Weight-class constants");
  weights->require_subcommand(1);
  auto* ap = weights->add_subcommand("ap", "A_p constant of one weight");
  basis_flags(ap, st);
  ap->add_option("--w", st.w, "Weight file")->expected(1);
  ap->add_option("--p", st.p, "Exponent p >= 1");
  common(ap, st, false);
  auto* apvec = weights->add_subcommand("apvec", "Multilinear A_P constant or its power bump");
  basis_flags(apvec, st);
  apvec->add_option("--p", st.p_list, "Comma-separated exponents p_1,...,p_m");
  apvec->add_option("--w", st.w, "Weight files, one per exponent");
  apvec->add_option("--nu", st.nu, "Weight on the left (default: product of the w_j^(p/p_j))");
  apvec->add_option("--bump-r", st.bump_r, "Power bump exponent r > 1 (0: plain constant)");
  common(apvec, st, false);
  auto* cond = weights->add_subcommand("condition-a", "Sampled condition (A) constant");
  basis_flags(cond, st);
  cond->add_option("--w", st.w, "Weight file")->expected(1);
  cond->add_option("--lambda", st.lambda, "Level in (0,1)");
  cond->add_option("--trials", st.trials, "Number of sampled sets");
  cond->add_option("--max-rects", st.max_rects, "Rectangles per sampled set");
  common(cond, st, false);

  auto* cover = app->add_subcommand("cover", "Greedy rectangle selections");
  cover->add_option("--method", st.method, "half, scattered or exp")
      ->check(CLI::IsMember({"half", "scattered", "exp"}));
  cover->add_option("--lambda", st.lambda, "Overlap level for scattered selection");
  cover->add_option("--order", st.order, "given or by-measure-desc");
  cover->add_option("--rects", st.rects, "Rectangle family file");
  cover->add_option("--n", st.n, "Dimension parameter for exponential overlap");
  cover->add_option("--delta0", st.delta0, "Exponential overlap scale");
  common(cover, st, false);

  auto* interp = app->add_subcommand("interp", "Interpolation constants");
  interp->require_subcommand(1);
  auto* l1lp = interp->add_subcommand("l1lp", "L1 x Lp distribution bound");
  l1lp->add_option("--p", st.p, "Exponent p > 1");
  l1lp->add_option("--alpha", st.alpha, "Level alpha > 0");
  l1lp->add_option("--B1", st.B1, "Constant of the L1 x L1 hypothesis");
  l1lp->add_option("--B2", st.B2, "Constant of the L1 x Linf hypothesis");
  l1lp->add_option("--f", st.f, "First function")->expected(1);
  l1lp->add_option("--g", st.g, "Second function");
  l1lp->add_option("--phi", st.phi, "Young function, e.g. n=2,m=1");
  common(l1lp, st, false);
  auto* strong = interp->add_subcommand("strong", "Strong-type constant assembly");
  strong->add_option("--s1", st.s1, "Lower exponent s1 > 1");
  strong->add_option("--s2", st.s2, "Upper exponent s2 > s1");
  strong->add_option("--p", st.p, "Target exponent");
  strong->add_option("--A", st.A, "Endpoint constant");
  strong->add_option("--B1", st.B1, "Constant at s1");
  strong->add_option("--B2", st.B2, "Constant at s2");
  strong->add_option("--B", st.B, "Constant at s");
  strong->add_option("--phi", st.phi, "Young function, e.g. n=2,m=1");
  common(strong, st, false);

  for (const char* name : {"jmz", "bsmf"}) {
    auto* e = app->add_subcommand(name, std::string(name) == "jmz" ? "Endpoint distribution estimate"
                                                                    : "Multilinear endpoint estimate");
    e->add_option("--f", st.f, "Grid function files");
    e->add_option("--n", st.n, "Dimension parameter of Phi_n");
    e->add_option("--lambda-min", st.lambda_min, "Smallest level");
    e->add_option("--lambda-max", st.lambda_max, "Largest level");
    e->add_option("--per-decade", st.per_decade, "Geometric levels per decade");
    common(e, st, true);
  }

  auto* sharp = app->add_subcommand("sharpness", "Sharpness sweep for (chi, N chi)");
  sharp->add_option("--Nmax", st.Nmax, "Largest N");
  sharp->add_option("--factor", st.factor, "Ratio between consecutive N");
  common(sharp, st, true);

  auto* probe = app->add_subcommand("probe", "Empirical weighted operator norms");
  basis_flags(probe, st);
  probe->add_option("--w", st.w, "Weight files, one per exponent");
  probe->add_option("--p", st.p_list, "Comma-separated exponents");
  probe->add_option("--mode", st.mode, "weak or strong")->check(CLI::IsMember({"weak", "strong"}));
  probe->add_option("--nu", st.nu, "Weight on the left (default: product of the w_j^(p/p_j))");
  common(probe, st, false);
  return app;
}

CLI::App* leaf(CLI::App* app) {
  for (;;) {
    const auto subs = app->get_subcommands();
    if (subs.empty()) return app;
    app = subs.front();
  }
}

std::string command_path(CLI::App* app) {
  std::string s;
  for (auto subs = app->get_subcommands(); !subs.empty(); subs = subs.front()->get_subcommands())
    s += (s.empty() ? "" : " ") + subs.front()->get_name();
  return s;
}

std::string read_text(const std::string& path, const char* field) {
  std::ifstream in(path);
  if (!in) throw InputError(std::string(field) + ": cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string scalar_token(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number() || v.is_boolean()) return v.dump();
  throw InputError("config: value of '" + key + "' must be a scalar or a list of scalars");
}

std::vector<std::string> config_tokens(CLI::App* sub, const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path, "config"));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config: " + path + ": " + e.what());
  }
  if (!j.is_object()) throw InputError("config: " + path + " must hold a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, v] : j.items()) {
    const CLI::Option* opt = key == "config" ? nullptr : sub->get_option_no_throw("--" + key);
    if (!opt) throw InputError("config: unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    if (!v.is_array()) {
      tokens.insert(tokens.end(), {"--" + key, scalar_token(v, key)});
    } else if (opt->get_items_expected_max() > 1) {
      for (const auto& x : v) tokens.insert(tokens.end(), {"--" + key, scalar_token(x, key)});
    } else {
      std::string joined;
      for (const auto& x : v) joined += (joined.empty() ? "" : ",") + scalar_token(x, key);
      tokens.insert(tokens.end(), {"--" + key, joined});
    }
  }
  return tokens;
}

ordered_json typed(const std::string& text) {
  const auto v = ordered_json::parse(text, nullptr, false);
  return !v.is_discarded() && v.is_number() ? v : ordered_json(text);
}

ordered_json typed(const std::vector<std::string>& items) {
  ordered_json a = ordered_json::array();
  for (const auto& s : items) a.push_back(typed(s));
  return a;
}

ordered_json resolved_config(CLI::App* sub) {
  ordered_json j = ordered_json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config" || name.empty()) continue;
    if (opt->count() > 0) {
      const auto& r = opt->results();
      j[name] = opt->get_items_expected_max() > 1 ? typed(r) : typed(r.back());
    } else if (opt->get_items_expected_max() > 1) {
      j[name] = ordered_json::array();
    } else {
      j[name] = typed(opt->get_default_str());
    }
  }
  return j;
}

std::vector<double> parse_list(const std::string& text, const char* field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(std::string(field) + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw InputError(std::string(field) + ": empty list");
  return out;
}

BasisSpec basis_of(const State& st) {
  BasisSpec spec{basis_kind_from_string(st.basis), 0.0};
  if (spec.kind == BasisKind::eccentricity) spec.eccentricity = st.ecc;
  return spec;
}

std::vector<GridFunction> read_all(const std::vector<std::string>& paths, const char* field) {
  if (paths.empty()) throw InputError(std::string(field) + ": at least one file is required");
  std::vector<GridFunction> out;
  for (const auto& p : paths) out.push_back(read_grid_function(p));
  return out;
}

CellSet parse_set(const std::string& text, const Box& box) {
  if (text == "all") return CellSet::all(box);
  std::vector<int> lo, hi;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int a = 0, b = 0;
    char colon = 0;
    std::stringstream is(item);
    if (!(is >> a >> colon >> b) || colon != ':' || !is.eof())
      throw InputError("set: expected 'all' or ranges a:b,c:d, got '" + text + "'");
    lo.push_back(a);
    hi.push_back(b);
  }
  if (int(lo.size()) != box.rank()) throw InputError("set: needs one range per grid axis");
  const Rect r = make_rect(lo, hi);
  for (int a = 0; a < box.rank(); ++a)
    if (r.lo[a] < 0 || r.hi[a] > box.dims()[a]) throw InputError("set: range outside the grid on axis " + std::to_string(a));
  return CellSet::of_rect(box, r);
}

ordered_json rect_json(const Rect& r, int rank) {
  return {{"lo", std::vector<int>(r.lo.begin(), r.lo.begin() + rank)},
          {"hi", std::vector<int>(r.hi.begin(), r.hi.begin() + rank)}};
}

ordered_json report_json(const ConstantReport& r, int rank) {
  return {{"constant", r.value}, {"attaining_rect", rect_json(r.attaining_rect, rank)}, {"sets_scanned", r.sets_scanned}};
}

std::string table_text(const Table& t, const State& st) {
  if (st.format == "csv") return t.to_csv();
  return ordered_json{{"columns", t.columns}, {"rows", t.rows}}.dump(2) + "\n";
}

std::vector<double> lambda_grid(const State& st) {
  if (!(st.lambda_min > 0 && st.lambda_max > st.lambda_min))
    throw InputError("lambda-min/lambda-max: need 0 < lambda-min < lambda-max");
  if (st.per_decade < 1) throw InputError("per-decade: must be >= 1");
  return geometric_grid(st.lambda_min, st.lambda_max, st.per_decade);
}

struct Output {
  std::string text;
  ordered_json extra = ordered_json::object();
};

Output run_compute(const State& st) {
  MaximalRequest req;
  req.functions = read_all(st.f, "f");
  if (st.m != 0 && std::size_t(st.m) != req.functions.size())
    throw InputError("m: " + std::to_string(st.m) + " does not match " + std::to_string(req.functions.size()) +
                     " --f files");
  if (!st.weight.empty()) req.weight = read_grid_function(st.weight);
  req.spec = basis_of(st);
  req.algorithm = st.algorithm == "brute" ? Algorithm::brute : st.algorithm == "sweep" ? Algorithm::sweep
                                                                                       : Algorithm::automatic;
  req.budget = {st.budget};
  req.threads = st.threads;
  return {grid_function_to_json_text(compute(req)) + "\n"};
}

Output run_norm(const State& st) {
  const auto f = read_grid_function(st.f.at(0));
  const auto spec = young_spec_from_string(st.phi);
  const CellSet e = parse_set(st.set, f.box());
  const auto r = luxemburg_norm(f, e, spec);
  ordered_json j{{"norm", r.value},
                 {"iterations", r.iterations},
                 {"residual", r.residual},
                 {"mean_phi", young_mean(f, e, spec)},
                 {"young", to_string(spec)}};
  return {j.dump(2) + "\n"};
}

std::vector<GridFunction> weights_for(const State& st, std::size_t count) {
  auto ws = read_all(st.w, "w");
  if (ws.size() != count)
    throw InputError("w: " + std::to_string(ws.size()) + " weight files for " + std::to_string(count) + " exponents");
  return ws;
}

Output run_ap(const State& st) {
  if (st.w.size() != 1) throw InputError("w: exactly one weight file is required");
  const auto w = read_grid_function(st.w[0]);
  const auto r = ap_constant(w, st.p, basis_of(st), {st.budget});
  return {report_json(r, w.box().rank()).dump(2) + "\n"};
}

Output run_apvec(const State& st) {
  const ExponentVector ps(parse_list(st.p_list, "p"));
  const auto ws = weights_for(st, ps.size());
  std::optional<GridFunction> nu;
  if (!st.nu.empty()) nu = read_grid_function(st.nu);
  const int rank = ws[0].box().rank();
  ordered_json j;
  if (st.bump_r != 0.0) {
    const GridFunction base = nu ? *nu : nu_of(ws, ps);
    j = report_json(bump_constant(base, ws, ps, st.bump_r, basis_of(st), {st.budget}), rank);
    j["bump_r"] = st.bump_r;
  } else {
    j = report_json(multi_ap_constant(ws, ps, basis_of(st), nu ? &*nu : nullptr, {st.budget}), rank);
  }
  j["p"] = ps.p();
  return {j.dump(2) + "\n"};
}

Output run_condition_a(const State& st) {
  if (st.w.size() != 1) throw InputError("w: exactly one weight file is required");
  const auto w = read_grid_function(st.w[0]);
  const auto r = condition_a_probe(w, basis_of(st), st.lambda, st.seed, st.trials, st.max_rects, {st.budget});
  ordered_json j{{"c_hat", r.c_hat}, {"trials", r.trials}, {"skipped", r.skipped}, {"lambda", st.lambda}};
  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i < w.box().cell_count(); ++i)
    if (r.worst_e.box().cell_count() && r.worst_e.contains(i)) cells.push_back(i);
  j["worst_set_cells"] = cells;
  return {j.dump(2) + "\n"};
}

Output run_cover(const State& st) {
  if (st.rects.empty()) throw InputError("rects: a rectangle file is required");
  const std::string text = read_text(st.rects, "rects");
  const Box box = parse_box(text);
  std::vector<Rect> rs;
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.contains("rects")) throw InputError("rects: " + st.rects + ": missing field 'rects'");
    for (const auto& r : j.at("rects")) {
      const Rect rect = make_rect(r.at("lo").get<std::vector<int>>(), r.at("hi").get<std::vector<int>>());
      for (int a = 0; a < box.rank(); ++a)
        if (rect.lo[a] < 0 || rect.hi[a] > box.dims()[a])
          throw InputError("rects: " + st.rects + ": rectangle outside the grid");
      rs.push_back(rect);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError("rects: " + st.rects + ": " + e.what());
  }
  if (rs.empty()) throw InputError("rects: " + st.rects + ": empty family");
  const auto order = selection_order_from_string(st.order);
  SelectionResult sel;
  ordered_json checks = ordered_json::object();
  if (st.method == "half") {
    sel = select_half_overlap(box, rs, order);
    checks["half_overlap"] = verify_half_overlap(box, rs, sel);
  } else if (st.method == "scattered") {
    sel = select_alpha_scattered(box, rs, st.lambda, order);
    checks["scattered"] = verify_scattered(box, rs, sel, st.lambda);
    checks["containment"] = verify_scattered_containment(box, rs, sel, BasisSpec::rectangles(), st.lambda);
  } else {
    sel = select_exp_overlap(box, rs, st.n, st.delta0);
  }
  std::vector<std::size_t> parts;
  for (const auto& e : sel.disjoint_parts) parts.push_back(e.count());
  ordered_json j{{"method", st.method},
                 {"selected", sel.selected},
                 {"rejected", sel.rejected},
                 {"examined", sel.examined},
                 {"disjoint_part_cells", parts},
                 {"overlap_ratio", sel.overlap_ratio},
                 {"alpha", sel.alpha}};
  if (st.method == "exp") {
    j["union_ratio"] = sel.union_ratio;
    j["psi_norm"] = sel.psi_norm;
  }
  j["checks"] = checks;
  return {j.dump(2) + "\n"};
}

Output run_l1lp(const State& st) {
  const auto f = read_grid_function(st.f.at(0));
  if (st.g.empty()) throw InputError("g: a grid function file is required");
  const auto g = read_grid_function(st.g);
  const auto r = l1xlp_bound(f, g, st.alpha, st.B1, st.B2, st.p, young_spec_from_string(st.phi));
  ordered_json j{{"epsilon", r.epsilon},   {"phi_epsilon", r.phi_epsilon}, {"f_norm", r.f_norm},
                 {"g_norm", r.g_norm},     {"doubling", r.doubling},       {"L1_bound", r.L1_bound},
                 {"L2_bound", r.L2_bound}, {"bound", r.bound}};
  return {j.dump(2) + "\n"};
}

Output run_strong(const State& st) {
  InterpConstants c;
  c.A = st.A;
  c.B1 = st.B1;
  c.B2 = st.B2;
  c.B = st.B;
  c.s1 = st.s1;
  c.s2 = st.s2;
  c.p = st.p;
  const auto r = strong_type_constant(c, young_spec_from_string(st.phi));
  ordered_json j{{"I", r.I}, {"II", r.II}, {"III", r.III}, {"IV", r.IV}, {"total", r.total}, {"s", c.s()}};
  return {j.dump(2) + "\n"};
}

Output run_jmz(const State& st) {
  const auto rows = jmz_experiment(read_all(st.f, "f"), lambda_grid(st), st.n, st.threads, {st.budget});
  double worst = 0;
  for (const auto& r : rows)
    if (!r.flagged) worst = std::max(worst, r.ratio);
  Output o{table_text(to_table(rows), st)};
  o.extra["max_ratio"] = worst;
  return o;
}

Output run_bsmf(const State& st) {
  const auto rep = bsmf_experiment(read_all(st.f, "f"), lambda_grid(st), st.n, st.threads, {st.budget});
  Output o{table_text(to_table(rep), st)};
  o.extra["tensor_bound_holds"] = rep.tensor_bound_holds;
  o.extra["identity_holds"] = rep.identity_holds ? ordered_json(*rep.identity_holds) : ordered_json(nullptr);
  if (!rep.tensor_bound_holds || !rep.identity_holds.value_or(true))
    throw std::runtime_error("bsmf: multilinear self-check failed");
  return o;
}

Output run_sharpness(const State& st) {
  if (!(st.Nmax >= 1.0)) throw InputError("Nmax: must be >= 1");
  if (!(st.factor > 1.0)) throw InputError("factor: must be > 1");
  std::vector<double> Ns;
  for (double N = 1.0; N <= st.Nmax * (1 + 1e-12); N *= st.factor) Ns.push_back(N);
  return {table_text(to_table(sharpness_sweep(Ns)), st)};
}

Output run_probe(const State& st) {
  const ExponentVector ps(parse_list(st.p_list, "p"));
  const auto ws = weights_for(st, ps.size());
  std::optional<GridFunction> nu;
  if (!st.nu.empty()) nu = read_grid_function(st.nu);
  const auto spec = basis_of(st);
  const auto r = weighted_bound_probe(ws, ps.values(), spec, default_probe_tests(ws, ps.values()),
                                      st.mode == "weak" ? ProbeMode::weak : ProbeMode::strong, nu ? &*nu : nullptr,
                                      st.threads);
  std::vector<ordered_json> per;
  for (double v : r.per_test) per.push_back(std::isnan(v) ? ordered_json(nullptr) : ordered_json(v));
  ordered_json j{{"mode", st.mode}, {"value", r.value}, {"argmax", r.argmax}, {"per_test", per}};
  j["multi_ap_constant"] = multi_ap_constant(ws, ps, spec, nu ? &*nu : nullptr, {st.budget}).value;
  return {j.dump(2) + "\n"};
}

Output dispatch(const std::string& cmd, const State& st) {
  if (cmd == "compute") return run_compute(st);
  if (cmd == "orlicz norm") return run_norm(st);
  if (cmd == "weights ap") return run_ap(st);
  if (cmd == "weights apvec") return run_apvec(st);
  if (cmd == "weights condition-a") return run_condition_a(st);
  if (cmd == "cover") return run_cover(st);
  if (cmd == "interp l1lp") return run_l1lp(st);
  if (cmd == "interp strong") return run_strong(st);
  if (cmd == "jmz") return run_jmz(st);
  if (cmd == "bsmf") return run_bsmf(st);
  if (cmd == "sharpness") return run_sharpness(st);
  if (cmd == "probe") return run_probe(st);
  throw InputError("unknown command '" + cmd + "'");
}

void write_file(const std::string& path, const std::string& text, const char* field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(std::string(field) + ": cannot write '" + path + "'");
  out << text;
}

bool parse(CLI::App& app, const std::vector<std::string>& args, int& code) {
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
    return true;
  } catch (const CLI::Success& e) {
    code = app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  }
  return false;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  int code = 0;
  State first;
  auto probe = build(first);
  if (!parse(*probe, args, code)) return code;

  if (!first.config.empty()) {
    const auto extra = config_tokens(leaf(probe.get()), first.config);
    args.insert(args.end(), extra.begin(), extra.end());
  }
  State st;
  auto app = build(st);
  if (!parse(*app, args, code)) return code;

  const std::string cmd = command_path(app.get());
  const Output out = dispatch(cmd, st);
  if (st.out.empty()) {
    std::cout << out.text;
  } else {
    write_file(st.out, out.text, "out");
  }
  const std::string manifest_path = !st.manifest.empty() ? st.manifest : st.out.empty() ? "" : st.out + ".manifest.json";
  if (!manifest_path.empty()) {
    auto m = ordered_json::parse(run_manifest(cmd, resolved_config(leaf(app.get())).dump(), st.seed));
    for (const auto& [k, v] : out.extra.items()) m[k] = v;
    write_file(manifest_path, m.dump(2) + "\n", "manifest");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
