#include "vgit/io.hpp"

#include "vgit/errors.hpp"

namespace vgit::io {

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::size_t parse_count(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(what + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

json indices_json(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (auto i : v) out.push_back(i);
  return out;
}

json rationals_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

}  // namespace

Rational parse_fraction(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected an integer or a fraction string, got " + j.dump());
}

QVector parse_vector(const json& j) {
  if (!j.is_array()) throw InputError("expected an array, got " + j.dump());
  QVector out;
  for (const auto& x : j) out.push_back(parse_fraction(x));
  return out;
}

git::WeightConfiguration parse_weights(const json& j) {
  if (j.contains("kind") && j.at("kind") != "torus") throw InputError("weights: kind must be \"torus\"");
  const std::size_t dim = parse_count(field(j, "dim", "weights"), "dim");
  const json& ws = field(j, "weights", "weights");
  if (!ws.is_array()) throw InputError("weights: \"weights\" must be an array");
  std::vector<QVector> weights;
  for (const auto& w : ws) {
    for (const auto& x : w) {
      if (!x.is_number_integer()) throw InputError("weights: entries must be integers, got " + x.dump());
    }
    weights.push_back(parse_vector(w));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  std::optional<geom::GramForm> gram;
  if (j.contains("gram")) {
    QMatrix g;
    for (const auto& row : j.at("gram")) g.push_back(parse_vector(row));
    gram.emplace(std::move(g));
  }
  return git::WeightConfiguration(dim, std::move(weights), std::move(labels), std::move(gram));
}

git::LinearizationClass parse_linearization(const json& j, std::size_t dim) {
  QVector p = parse_vector(field(j, "p", "linearization"));
  if (p.size() != dim) throw InputError("linearization: p has the wrong length");
  return {std::move(p), parse_fraction(field(j, "d", "linearization"))};
}

git::ProjPoint parse_point(const json& j, std::size_t m) {
  if (!j.is_object()) throw InputError("point: expected an object mapping index to value");
  git::ProjPoint out;
  for (const auto& [key, value] : j.items()) {
    std::size_t i = 0;
    try {
      std::size_t used = 0;
      i = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw InputError("point: bad index \"" + key + "\"");
    }
    if (i >= m) throw InputError("point: index " + key + " out of range");
    Rational v = parse_fraction(value);
    if (v != 0) out.entries[i] = std::move(v);
  }
  if (out.entries.empty()) throw InputError("point: all coordinates are zero");
  return out;
}

pconf::PointConfig parse_points(const json& j) {
  if (j.contains("kind") && j.at("kind") != "pointconfig") throw InputError("points: kind must be \"pointconfig\"");
  const std::size_t n = parse_count(field(j, "n", "points"), "n");
  std::vector<QVector> pts;
  for (const auto& p : field(j, "points", "points")) pts.push_back(parse_vector(p));
  return pconf::PointConfig(n, std::move(pts));
}

pconf::KVector parse_k(const json& j) {
  if (!j.is_array()) throw InputError("k: expected an array of integers");
  pconf::KVector out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError("k: entries must be integers, got " + x.dump());
    out.emplace_back(x.get<long long>());
  }
  return out;
}

json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

json to_json(const Rational& x) { return to_string(x); }

json to_json(const QVector& v) { return rationals_json(v); }

json to_json(const git::StateSet& s) { return indices_json(s.indices()); }

json to_json(const git::StateFamily& f) {
  json out = json::array();
  for (const auto& s : f) out.push_back(to_json(s));
  return out;
}

json to_json(const geom::SignedDistance& m) { return {{"sign", m.sign}, {"sq", to_json(m.squared)}}; }

json to_json(const geom::QHyperplane& h) { return {{"normal", to_json(h.normal)}, {"offset", to_json(h.offset)}}; }

json walls_json(const std::vector<git::WallDesc>& walls) {
  json out = json::array();
  for (const auto& w : walls) {
    out.push_back({{"hyperplane", to_json(w.hyperplane)}, {"pieces", to_json(w.pieces)}, {"boundary", w.is_boundary}});
  }
  return out;
}

json cell_json(const git::CellDesc& c) {
  return {{"kind", git::to_string(c.kind)},
          {"dim", c.dim},
          {"witness", to_json(c.witness.normalized())},
          {"signature", to_json(c.signature)},
          {"walls", indices_json(c.walls)}};
}

json cone_json(const git::AmpleCone& cone) {
  json verts = json::array();
  for (const auto& v : cone.slice_vertices) verts.push_back(to_json(v));
  json gens = json::array();
  for (const auto& g : cone.cone_generators) gens.push_back(to_json(g));
  return {{"slice_vertices", verts}, {"cone_generators", gens}, {"slice_dim", cone.slice.affine_dim()}};
}

json stratification_json(const git::Stratification& s) {
  json out = json::array();
  for (const auto& st : s.strata) {
    out.push_back({{"beta", to_json(st.beta)}, {"d_squared", to_json(st.d_squared)}, {"states", to_json(st.member_states)}});
  }
  return out;
}

json crossing_json(const crossing::WallCrossing& x, const git::ChamberComplex& cc) {
  json comps = json::array();
  for (const auto& c : x.components) {
    comps.push_back({{"lambda", to_json(c.lambda.lambda())},
                     {"level", to_json(c.level)},
                     {"level_indices", indices_json(c.level_indices)},
                     {"pivotal_states", to_json(c.pivotal_states)},
                     {"plus_indices", indices_json(c.plus_indices)},
                     {"minus_indices", indices_json(c.minus_indices)},
                     {"plus_weights", rationals_json(c.plus_weights)},
                     {"minus_weights", rationals_json(c.minus_weights)},
                     {"d_plus", c.d_plus},
                     {"d_minus", c.d_minus},
                     {"codim", c.codim}});
  }
  auto report = [](const crossing::InclusionReport& r) {
    return json{{"semistable_inclusion", r.semistable_inclusion},
                {"stable_inclusion", r.stable_inclusion},
                {"semistable_difference", to_json(r.semistable_difference)},
                {"stable_difference", to_json(r.stable_difference)}};
  };
  const auto& p = x.pair;
  json segment = json::array();
  for (const auto& s : p.segment) segment.push_back(to_json(s));
  return {{"cell", p.cell},
          {"wall", p.wall},
          {"hyperplane", to_json(cc.walls[p.wall].hyperplane)},
          {"plus_chamber", p.plus},
          {"minus_chamber", p.minus},
          {"segment", segment},
          {"components", comps},
          {"plus_report", report(x.plus_report)},
          {"minus_report", report(x.minus_report)},
          {"stable_intersection", x.stable_intersection},
          {"stable_union", x.stable_union}};
}

json gm_report_json(const pconf::GmReport& r) {
  json gm = json::array();
  for (const auto& h : r.gm_walls) gm.push_back(to_json(h));
  json cfg = json::array();
  for (const auto& h : r.config_walls) cfg.push_back(to_json(h));
  json regions = json::array();
  for (const auto& m : r.regions) {
    regions.push_back({{"witness", to_json(m.witness)},
                       {"gm_region", m.gm_region},
                       {"signature_match", m.signature_match},
                       {"configs_checked", m.configs_checked},
                       {"configs_agreeing", m.configs_agreeing}});
  }
  return {{"n", r.n},
          {"m", r.m},
          {"gm_walls", gm},
          {"config_walls", cfg},
          {"gm_regions", r.gm_regions},
          {"config_regions", r.config_regions},
          {"gm_chambers", r.gm_chambers},
          {"regions", regions},
          {"walls_match", r.walls_match},
          {"match", r.match}};
}

json document(const std::string& command, json result) {
  return {{"command", command}, {"result", std::move(result)}, {"version", kVersion}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace vgit::io
