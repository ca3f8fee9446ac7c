#pragma once

// JSON input parsing and canonical result serialization shared by the CLI
// and the Python bindings. Objects are std::map backed, so keys come out
// sorted; every exact value is a string "a" or "a/b".

#include <string>

#include "json.hpp"
#include "vgit/crossing.hpp"
#include "vgit/pointconfig.hpp"

namespace vgit::io {

using nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

// --- inputs (InputError on schema violations) -------------------------------

/// Integer or "a/b" string.
Rational parse_fraction(const json& j);
QVector parse_vector(const json& j);

/// {"dim": n, "weights": [[...]], "gram": optional [[...]], "labels": optional}
git::WeightConfiguration parse_weights(const json& j);
/// {"p": [...], "d": ...}
git::LinearizationClass parse_linearization(const json& j, std::size_t dim);
/// Sparse map index -> fraction; zero entries are dropped.
git::ProjPoint parse_point(const json& j, std::size_t m);
/// {"n": int, "points": [[...]]}
pconf::PointConfig parse_points(const json& j);
pconf::KVector parse_k(const json& j);

/// Parses text, raising InputError with `what` in the message.
json parse_text(const std::string& text, const std::string& what);

// --- outputs ----------------------------------------------------------------

json to_json(const Rational& x);
json to_json(const QVector& v);
json to_json(const git::StateSet& s);
json to_json(const git::StateFamily& f);
json to_json(const geom::SignedDistance& m);
json to_json(const geom::QHyperplane& h);

json walls_json(const std::vector<git::WallDesc>& walls);
json cell_json(const git::CellDesc& c);
json cone_json(const git::AmpleCone& cone);
json stratification_json(const git::Stratification& s);
json crossing_json(const crossing::WallCrossing& x, const git::ChamberComplex& cc);
json gm_report_json(const pconf::GmReport& r);

/// {"command": ..., "result": ..., "version": ...}
json document(const std::string& command, json result);
/// Two-space indented, trailing newline.
std::string dump(const json& j);

}  // namespace vgit::io
