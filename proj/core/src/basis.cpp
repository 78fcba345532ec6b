#include "maxrect/basis.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace maxrect {

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::cubes: return "cubes";
    case BasisKind::dyadic_cubes: return "dyadic_cubes";
    case BasisKind::rectangles: return "rectangles";
    case BasisKind::eccentricity: return "eccentricity";
    case BasisKind::zygmund_sts: return "zygmund_sts";
  }
  return "?";
}

BasisKind basis_kind_from_string(const std::string& name) {
  if (name == "cubes") return BasisKind::cubes;
  if (name == "dyadic_cubes" || name == "dyadic") return BasisKind::dyadic_cubes;
  if (name == "rectangles") return BasisKind::rectangles;
  if (name == "eccentricity") return BasisKind::eccentricity;
  if (name == "zygmund_sts" || name == "sts") return BasisKind::zygmund_sts;
  throw InputError("basis: unknown kind '" + name + "'");
}

BasisSpec basis_spec_from_json_text(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& [key, _] : j.items())
      if (key != "kind" && key != "N") throw InputError("basis: unknown key '" + key + "'");
    BasisSpec spec{basis_kind_from_string(j.at("kind").get<std::string>()), 0.0};
    if (spec.kind == BasisKind::eccentricity) {
      if (!j.contains("N")) throw InputError("basis: eccentricity needs 'N'");
      spec.eccentricity = j.at("N").get<double>();
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("basis: ") + e.what());
  }
}

void validate(const BasisSpec& spec, int rank) {
  if (spec.kind == BasisKind::eccentricity) {
    if (rank != 2) throw InputError("basis: eccentricity requires a 2-dimensional grid");
    if (!(spec.eccentricity > 1.0) || !std::isfinite(spec.eccentricity))
      throw InputError("basis: eccentricity N must be > 1");
  }
  if (spec.kind == BasisKind::zygmund_sts && rank != 3)
    throw InputError("basis: zygmund_sts requires a 3-dimensional grid");
}

std::vector<Index> shapes(const BasisSpec& spec, const Box& box) {
  validate(spec, box.rank());
  const Index& e = box.extent();
  std::vector<Index> out;
  switch (spec.kind) {
    case BasisKind::rectangles:
      for (int a = 1; a <= e[0]; ++a)
        for (int b = 1; b <= e[1]; ++b)
          for (int c = 1; c <= e[2]; ++c) out.push_back({a, b, c});
      break;
    case BasisKind::cubes: {
      int smax = e[0];
      for (int a = 1; a < box.rank(); ++a) smax = std::min(smax, e[a]);
      for (int s = 1; s <= smax; ++s) {
        Index side{1, 1, 1};
        for (int a = 0; a < box.rank(); ++a) side[a] = s;
        out.push_back(side);
      }
      break;
    }
    case BasisKind::eccentricity:
      for (int s = 1; s <= e[0]; ++s) {
        const int t = std::max(1, int(std::lround(spec.eccentricity * s)));
        if (t > e[1]) break;
        out.push_back({s, t, 1});
      }
      break;
    case BasisKind::zygmund_sts:
      for (int s = 1; s <= e[0]; ++s)
        for (int t = 1; t <= e[1]; ++t)
          if (std::int64_t(s) * t <= e[2]) out.push_back({s, t, s * t});
      break;
    case BasisKind::dyadic_cubes:
      throw InputError("shapes: dyadic cubes are enumerated by scale");
  }
  return out;
}

std::int64_t count_members(const BasisSpec& spec, const Box& box) {
  const Index& e = box.extent();
  std::int64_t n = 0;
  if (spec.kind == BasisKind::dyadic_cubes) {
    validate(spec, box.rank());
    for (int side = 1;; side *= 2) {
      std::int64_t per = 1;
      for (int a = 0; a < box.rank(); ++a) per *= e[a] / side;
      if (per == 0) break;
      n += per;
    }
    return n;
  }
  for (const Index& s : shapes(spec, box))
    n += std::int64_t(e[0] - s[0] + 1) * (e[1] - s[1] + 1) * (e[2] - s[2] + 1);
  return n;
}

std::int64_t count_cell_visits(const BasisSpec& spec, const Box& box) {
  const Index& e = box.extent();
  std::int64_t n = 0;
  if (spec.kind == BasisKind::dyadic_cubes) {
    validate(spec, box.rank());
    for (int side = 1;; side *= 2) {
      std::int64_t per = 1, vol = 1;
      for (int a = 0; a < box.rank(); ++a) {
        per *= e[a] / side;
        vol *= side;
      }
      if (per == 0) break;
      n += per * vol;
    }
    return n;
  }
  for (const Index& s : shapes(spec, box))
    n += std::int64_t(e[0] - s[0] + 1) * (e[1] - s[1] + 1) * (e[2] - s[2] + 1) *
         (std::int64_t(s[0]) * s[1] * s[2]);
  return n;
}

std::vector<Rect> enumerate(const BasisSpec& spec, const Box& box, BasisBudget budget) {
  std::vector<Rect> out;
  for_each_member(spec, box, budget, [&](const Rect& r) { out.push_back(r); });
  return out;
}

std::vector<Rect> containing(const BasisSpec& spec, const Box& box, const Index& cell, BasisBudget budget) {
  std::vector<Rect> out;
  for_each_containing(spec, box, cell, budget, [&](const Rect& r) { out.push_back(r); });
  return out;
}

}  // namespace maxrect
