#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vgit/errors.hpp"
#include "vgit/io.hpp"
#include "vgit/plot.hpp"

namespace py = pybind11;
using namespace vgit;
using io::json;

namespace {

py::object fraction_type() {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls;
}

// Python int, Fraction or "a/b" string.
json from_py(const py::handle& x) {
  if (py::isinstance<py::bool_>(x)) throw InputError("expected a number, got a bool");
  if (py::isinstance<py::int_>(x)) return py::str(x).cast<std::string>();
  if (py::isinstance(x, fraction_type())) {
    return py::str(x.attr("numerator")).cast<std::string>() + "/" + py::str(x.attr("denominator")).cast<std::string>();
  }
  if (py::isinstance<py::str>(x)) return x.cast<std::string>();
  throw InputError("expected an int, Fraction or fraction string");
}

json vector_from_py(const py::handle& seq) {
  json out = json::array();
  for (auto x : seq) out.push_back(from_py(x));
  return out;
}

bool looks_rational(const std::string& s) {
  try {
    parse_rational(s);
    return true;
  } catch (const InputError&) {
    return false;
  }
}

// Exact strings become Fractions; everything else maps structurally.
py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return py::none();
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case json::value_t::string: {
      const auto& s = j.get_ref<const std::string&>();
      if (looks_rational(s)) return fraction_type()(py::str(s));
      return py::str(s);
    }
    case json::value_t::array: {
      py::list out;
      for (const auto& x : j) out.append(to_py(x));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
    default:
      throw std::runtime_error("unsupported JSON value");
  }
}

git::WeightConfiguration weights_from_py(const py::sequence& weights, const py::object& gram) {
  if (py::len(weights) == 0) throw InputError("weights must be nonempty");
  json j{{"dim", py::len(weights[0])}, {"weights", json::array()}};
  for (auto w : weights) {
    json row = json::array();
    for (auto x : w) row.push_back(x.cast<long long>());
    j["weights"].push_back(row);
  }
  if (!gram.is_none()) {
    j["gram"] = json::array();
    for (auto row : gram) j["gram"].push_back(vector_from_py(row));
  }
  return io::parse_weights(j);
}

git::LinearizationClass lin_from_py(const py::sequence& p, const py::handle& d, std::size_t dim) {
  return io::parse_linearization({{"p", vector_from_py(p)}, {"d", from_py(d)}}, dim);
}

py::object classify(const py::sequence& weights, const py::sequence& p, const py::handle& d, const py::dict& point,
                    const py::object& gram) {
  const auto w = weights_from_py(weights, gram);
  const auto l = lin_from_py(p, d, w.dim());
  json pj = json::object();
  for (auto [k, v] : point) pj[py::str(k).cast<std::string>()] = from_py(v);
  const auto s = git::state_set(io::parse_point(pj, w.size()), w);
  const auto cls = git::classify(s, l, w);
  const auto big = git::bigM(s, l, w);
  json r{{"class", git::to_string(cls)},
         {"state_set", io::to_json(s)},
         {"M", io::to_json(geom::SignedDistance{big.sign, big.squared / (l.d() * l.d())})},
         {"M_level", io::to_json(big)}};
  if (cls == git::Stability::Unstable) {
    const auto a = git::adapted(s, l, w);
    r["beta"] = io::to_json(a.beta);
    r["lambda"] = io::to_json(a.lambda.lambda());
  }
  return to_py(r);
}

json cells_json(const std::vector<git::CellDesc>& cells) {
  json out = json::array();
  for (const auto& c : cells) out.push_back(io::cell_json(c));
  return out;
}

pconf::PointConfig points_from_py(std::size_t n, const py::sequence& points) {
  json pts = json::array();
  for (auto p : points) pts.push_back(vector_from_py(p));
  return io::parse_points({{"n", n}, {"points", pts}});
}

pconf::KVector k_from_py(const py::sequence& k) {
  pconf::KVector out;
  for (auto x : k) out.emplace_back(x.cast<long long>());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact GIT chambers and wall crossings for torus actions";
  m.attr("__version__") = io::kVersion;

  static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
  static py::exception<DomainError> domain_error(m, "DomainError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      PyErr_SetString(input_error.ptr(), e.what());
    } catch (const DomainError& e) {
      PyErr_SetString(domain_error.ptr(), (e.code() + ": " + e.what()).c_str());
    }
  });

  m.def("classify", &classify, py::arg("weights"), py::arg("p"), py::arg("d"), py::arg("point"),
        py::arg("gram") = py::none());

  m.def(
      "ample_cone",
      [](const py::sequence& weights) { return to_py(io::cone_json(git::g_ample_cone(weights_from_py(weights, py::none())))); },
      py::arg("weights"));

  m.def(
      "walls", [](const py::sequence& weights) { return to_py(io::walls_json(git::walls(weights_from_py(weights, py::none())))); },
      py::arg("weights"));

  m.def(
      "chambers",
      [](const py::sequence& weights) { return to_py(cells_json(git::chamber_complex(weights_from_py(weights, py::none())).chambers)); },
      py::arg("weights"));

  m.def(
      "cells",
      [](const py::sequence& weights) { return to_py(cells_json(git::chamber_complex(weights_from_py(weights, py::none())).cells)); },
      py::arg("weights"));

  m.def(
      "git_class",
      [](const py::sequence& weights, const py::sequence& p, const py::handle& d) {
        const auto w = weights_from_py(weights, py::none());
        auto fam = git::git_class(lin_from_py(p, d, w.dim()), w);
        return fam ? to_py(io::to_json(*fam)) : py::object(py::none());
      },
      py::arg("weights"), py::arg("p"), py::arg("d"));

  m.def(
      "stratify",
      [](const py::sequence& weights, const py::sequence& p, const py::handle& d) {
        const auto w = weights_from_py(weights, py::none());
        return to_py(io::stratification_json(git::stratify(w, lin_from_py(p, d, w.dim()))));
      },
      py::arg("weights"), py::arg("p"), py::arg("d"));

  m.def(
      "cross_wall",
      [](const py::sequence& weights, const py::sequence& cell_at) {
        const auto w = weights_from_py(weights, py::none());
        const auto cc = git::chamber_complex(w);
        const QVector x = io::parse_vector(vector_from_py(cell_at));
        if (x.size() != w.dim()) throw InputError("cell_at has the wrong length");
        auto cell = cc.locate_cell(x, w);
        if (!cell) throw DomainError("OutsideCone", "point outside the slice polytope");
        return to_py(io::crossing_json(crossing::cross_wall(cc, *cell, w), cc));
      },
      py::arg("weights"), py::arg("cell_at"));

  m.def(
      "config_stability",
      [](std::size_t n, const py::sequence& points, const py::sequence& k) {
        return std::string(git::to_string(pconf::is_semistable(points_from_py(n, points), k_from_py(k))));
      },
      py::arg("n"), py::arg("points"), py::arg("k"));

  m.def(
      "classify_via_pluecker",
      [](std::size_t n, const py::sequence& points, const py::sequence& k) {
        return std::string(git::to_string(pconf::classify_via_pluecker(points_from_py(n, points), k_from_py(k))));
      },
      py::arg("n"), py::arg("points"), py::arg("k"));

  m.def(
      "nonempty_ss", [](const py::sequence& k, std::size_t n) { return pconf::nonempty_ss(k_from_py(k), n); }, py::arg("k"),
      py::arg("n"));

  m.def(
      "config_walls",
      [](std::size_t n, std::size_t mm) {
        json out = json::array();
        for (const auto& h : pconf::config_walls(n, mm)) out.push_back(io::to_json(h));
        return to_py(out);
      },
      py::arg("n"), py::arg("m"));

  m.def(
      "gm_check", [](std::size_t n, std::size_t mm) { return to_py(io::gm_report_json(pconf::gm_crosscheck(n, mm))); },
      py::arg("n"), py::arg("m"));

  m.def(
      "plot_svg",
      [](const py::sequence& weights, std::optional<std::size_t> cell) {
        const auto w = weights_from_py(weights, py::none());
        return plot::svg(git::chamber_complex(w), w, std::nullopt, cell);
      },
      py::arg("weights"), py::arg("cell") = py::none());
}
