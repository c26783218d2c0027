#include "isolat/serialize.hpp"

#include <cmath>
#include <stdexcept>

namespace isolat {

Json gamma_json(double gamma) { return std::isinf(gamma) ? Json("inf") : Json(gamma); }

double gamma_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfinity;
    return std::stod(j.get<std::string>());
  }
  return j.get<double>();
}

void to_json(Json& j, const IntegrationLattice& lat) {
  Json basis = Json::array();
  for (const auto& row : lat.basis) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    basis.push_back(r);
  }
  j = Json{{"label", lat.label}, {"dim", lat.dim}, {"n_points", lat.n_points}, {"basis", basis}};
}

void to_json(Json& j, const SpectralReport& r) {
  j = Json{{"sigma", r.sigma},         {"shortest_dual", r.shortest_dual}, {"dual_norm_sq", r.dual_norm_sq},
           {"dual_norm", r.dual_norm},
           {"diam_cell", r.diam_cell}, {"lll_delta", r.lll_delta},         {"diam_bound", r.diam_bound}};
}

void to_json(Json& j, const VolumeEstimate& v) {
  j = Json{{"value", v.value}, {"std_error", v.std_error}, {"n_samples", v.n_samples}, {"seed", v.seed}, {"exact", v.exact}};
}

void to_json(Json& j, const ConvexBody& k) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) j = Json{{"variant", "ball"}, {"center", s.center}, {"radius", s.radius}};
        if constexpr (std::is_same_v<T, AxisBox>) j = Json{{"variant", "box"}, {"lower", s.lower}, {"upper", s.upper}};
        if constexpr (std::is_same_v<T, HPolytope>) {
          j = Json{{"variant", "hpolytope"}, {"normals", s.normals}, {"offsets", s.offsets}};
        }
        if constexpr (std::is_same_v<T, VPolytope>) j = Json{{"variant", "vpolytope"}, {"vertices", s.vertices}};
      },
      k.shape());
}

void to_json(Json& j, const DiscrepancyWitness& w) {
  j = Json{{"family", std::string(to_string(w.family))},
           {"description", w.description},
           {"inside_count", w.inside_count},
           {"volume", w.volume},
           {"local_value", w.local_value},
           {"uncertainty", w.uncertainty},
           {"certified", w.certified}};
  if (w.certified) j["exact_volume"] = to_string(w.exact_volume);
  j["body"] = w.body;
}

void to_json(Json& j, const Thm1Report& r) {
  j = Json{{"sigma", r.sigma},
           {"j_lower", r.j_lower},
           {"best_family", r.best_family},
           {"bound", r.bound},
           {"old_bound", r.old_bound},
           {"verdict", std::string(to_string(r.verdict))},
           {"slab_value", r.slab_value},
           {"slab_section", r.slab_section},
           {"slab_ratio", r.slab_ratio}};
}

void to_json(Json& j, const CoveringRadius& r) {
  j = Json{{"lb", r.lb}, {"ub", r.ub}, {"witness", r.witness}, {"boxes", r.boxes}, {"budget_exhausted", r.budget_exhausted}};
}

void to_json(Json& j, const DistanceNormReport& r) {
  j = Json{{"gamma", gamma_json(r.gamma)},
           {"value", r.value},
           {"lower_certified", r.lower_certified},
           {"upper_certified", r.upper_certified},
           {"method", r.method},
           {"resolution", r.resolution},
           {"samples", r.samples},
           {"seed", r.seed}};
  if (r.samples > 0) {
    j["mc_value"] = r.mc_value;
    j["mc_std_error"] = r.mc_std_error;
  }
}

void to_json(Json& j, const Prop1Report& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"gamma", gamma_json(row.gamma)},
                        {"norm", row.norm},
                        {"norm_lower", row.norm_lower},
                        {"norm_upper", row.norm_upper},
                        {"lhs", row.lhs},
                        {"ratio", row.ratio},
                        {"method", row.method},
                        {"verdict", std::string(to_string(row.verdict))}});
  }
  j = Json{{"sigma", r.sigma},
           {"t_d", r.t_d},
           {"v_d", r.v_d},
           {"c_d", r.c_d},
           {"t_certified", to_string(r.t_certified)},
           {"volume_a", to_string(r.volume_a)},
           {"volume_ok", r.volume_ok},
           {"volume_b", r.volume_b},
           {"volume_b_bound", r.volume_b_bound},
           {"rows", rows},
           {"upper_ratio", r.upper_ratio},
           {"verdict", std::string(to_string(r.verdict))}};
}

void to_json(Json& j, const ProxySpec& s) {
  j = Json{{"s", s.s},
           {"inv_p", to_string(s.inv_p)},
           {"inv_q", to_string(s.inv_q)},
           {"d", s.dim},
           {"gamma", s.gamma ? Json(to_string(*s.gamma)) : Json("inf")},
           {"exponent", to_string(s.exponent)}};
}

void to_json(Json& j, const HyperplaneFamily& f) {
  j = Json{{"normal", f.normal}, {"spacing", f.spacing}, {"k_min", f.k_min}, {"k_max", f.k_max}, {"count", f.count()}};
}

ConvexBody body_from_json(const Json& j) {
  const std::string v = j.at("variant").get<std::string>();
  if (v == "ball") return ConvexBody(Ball{j.at("center").get<Point>(), j.at("radius").get<double>()});
  if (v == "box") return ConvexBody(AxisBox{j.at("lower").get<Point>(), j.at("upper").get<Point>()});
  if (v == "hpolytope") {
    return ConvexBody(HPolytope{j.at("normals").get<std::vector<Point>>(), j.at("offsets").get<std::vector<double>>()});
  }
  if (v == "vpolytope") return ConvexBody(VPolytope{j.at("vertices").get<std::vector<Point>>()});
  if (v == "cube") return ConvexBody::unit_cube(j.at("dim").get<std::size_t>());
  throw std::invalid_argument("unknown body variant: " + v);
}

}  // namespace isolat
