#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "vgit/combinatorics.hpp"
#include "vgit/errors.hpp"
#include "vgit/io.hpp"
#include "vgit/plot.hpp"

namespace vgit::cli {

namespace {

using io::json;

constexpr std::size_t kMaxCliWeights = 16;
constexpr std::uint64_t kDefaultMaxSubsets = 3003;

struct Options {
  std::string weights;
  std::string lin;
  std::string point;
  std::string cell_at;
  long long cell = -1;
  std::string points;
  std::string k;
  long long n = -1;
  long long m = -1;
  std::string section;
  std::string out;
};

std::uint64_t max_subsets() {
  const char* env = std::getenv("VGIT_MAX_SUBSETS");
  if (env == nullptr || *env == '\0') return kDefaultMaxSubsets;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw InputError("VGIT_MAX_SUBSETS must be a positive integer");
  return v;
}

// Inline JSON, or the contents of a file when the text is a path.
json load(const std::string& text, const std::string& what) {
  if (text.empty()) throw InputError("missing --" + what);
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && std::string("{[\"-0123456789").find(text[first]) != std::string::npos) {
    return io::parse_text(text, what);
  }
  std::ifstream in(text);
  if (!in) throw InputError(what + ": cannot read '" + text + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return io::parse_text(buf.str(), what + " (" + text + ")");
}

void guard_weights(std::size_t m) {
  if (m > kMaxCliWeights) {
    throw DomainError("TooLarge", std::to_string(m) + " weights exceed the cap of " + std::to_string(kMaxCliWeights));
  }
}

void guard_config(std::size_t n, std::size_t m) {
  guard_weights(m);
  const std::uint64_t cap = max_subsets();
  if (n + 1 <= m && binomial(m, n + 1) > cap) {
    throw DomainError("TooLarge", "C(" + std::to_string(m) + "," + std::to_string(n + 1) + ") exceeds the cap of " +
                                      std::to_string(cap) + " (set VGIT_MAX_SUBSETS to raise it)");
  }
}

git::WeightConfiguration weights_of(const Options& o) {
  auto w = io::parse_weights(load(o.weights, "weights"));
  guard_weights(w.size());
  return w;
}

std::pair<std::size_t, std::size_t> nm_of(const Options& o) {
  if (o.n < 0 || o.m < 0) throw InputError("--n and --m are required");
  const auto n = static_cast<std::size_t>(o.n);
  const auto m = static_cast<std::size_t>(o.m);
  guard_config(n, m);
  return {n, m};
}

std::size_t cell_of(const Options& o, const git::ChamberComplex& cc, const git::WeightConfiguration& w) {
  if (o.cell >= 0) {
    if (static_cast<std::size_t>(o.cell) >= cc.cells.size()) throw InputError("--cell out of range");
    return static_cast<std::size_t>(o.cell);
  }
  const QVector x = io::parse_vector(load(o.cell_at, "cell-at"));
  if (x.size() != w.dim()) throw InputError("--cell-at has the wrong length");
  auto c = cc.locate_cell(x, w);
  if (!c) throw DomainError("OutsideCone", "the point " + to_string(x) + " is outside the slice polytope");
  return *c;
}

json m_json(const git::StateSet& s, const git::LinearizationClass& l, const git::WeightConfiguration& w) {
  const auto big = git::bigM(s, l, w);
  return {{"M", io::to_json(geom::SignedDistance{big.sign, big.squared / (l.d() * l.d())})},
          {"M_level", io::to_json(big)}};
}

json cmd_classify(const Options& o) {
  const auto w = weights_of(o);
  const auto l = io::parse_linearization(load(o.lin, "lin"), w.dim());
  const auto x = io::parse_point(load(o.point, "point"), w.size());
  const auto s = git::state_set(x, w);
  const auto cls = git::classify(s, l, w);
  json r = m_json(s, l, w);
  r["class"] = git::to_string(cls);
  r["state_set"] = io::to_json(s);
  r["normalized"] = io::to_json(l.normalized());
  if (cls == git::Stability::Unstable) {
    const auto a = git::adapted(s, l, w);
    r["beta"] = io::to_json(a.beta);
    r["lambda"] = io::to_json(a.lambda.lambda());
    r["mu"] = io::to_json(git::mu(s, a.lambda, l, w));
  }
  return r;
}

json cmd_cone(const Options& o) {
  const auto w = weights_of(o);
  json r = io::cone_json(git::g_ample_cone(w));
  if (!o.lin.empty()) r["effective"] = git::is_effective(io::parse_linearization(load(o.lin, "lin"), w.dim()), w);
  return r;
}

json cmd_walls(const Options& o) {
  const auto w = weights_of(o);
  const auto ws = git::walls(w);
  std::size_t interior = 0;
  for (const auto& x : ws) interior += x.is_boundary ? 0 : 1;
  return {{"walls", io::walls_json(ws)}, {"count", ws.size()}, {"interior_count", interior}};
}

json cells_array(const std::vector<git::CellDesc>& cells) {
  json out = json::array();
  for (const auto& c : cells) out.push_back(io::cell_json(c));
  return out;
}

json cmd_chambers(const Options& o) {
  const auto w = weights_of(o);
  const auto cc = git::chamber_complex(w);
  return {{"chambers", cells_array(cc.chambers)}, {"count", cc.chambers.size()}};
}

json cmd_cells(const Options& o) {
  const auto w = weights_of(o);
  const auto cc = git::chamber_complex(w);
  return {{"cells", cells_array(cc.cells)}, {"count", cc.cells.size()}, {"chamber_count", cc.chambers.size()}};
}

json cmd_class(const Options& o) {
  const auto w = weights_of(o);
  const auto l = io::parse_linearization(load(o.lin, "lin"), w.dim());
  const auto fam = git::git_class(l, w);
  json r{{"effective", fam.has_value()}, {"signature", fam ? io::to_json(*fam) : json(nullptr)}};
  if (fam && w.spanning()) {
    const auto cc = git::chamber_complex(w);
    auto cell = cc.locate_cell(l.normalized(), w);
    r["cell"] = cell ? json(*cell) : json(nullptr);
    if (cell) r["kind"] = git::to_string(cc.cells[*cell].kind);
  }
  return r;
}

json cmd_stratify(const Options& o) {
  const auto w = weights_of(o);
  const auto l = io::parse_linearization(load(o.lin, "lin"), w.dim());
  const auto st = git::stratify(w, l);
  json r{{"strata", io::stratification_json(st)}, {"count", st.strata.size()}};
  if (!o.point.empty()) r["assigned"] = st.assign(io::parse_point(load(o.point, "point"), w.size()), w);
  return r;
}

json cmd_cross(const Options& o) {
  const auto w = weights_of(o);
  const auto cc = git::chamber_complex(w);
  const std::size_t cell = cell_of(o, cc, w);
  return io::crossing_json(crossing::cross_wall(cc, cell, w), cc);
}

json cmd_config_stability(const Options& o) {
  const auto p = io::parse_points(load(o.points, "points"));
  guard_config(p.n, p.size());
  const auto k = io::parse_k(load(o.k, "k"));
  json r{{"class", git::to_string(pconf::is_semistable(p, k))}, {"nonempty_ss", pconf::nonempty_ss(k, p.n)}};
  if (p.n + 1 < p.size()) r["pluecker_class"] = git::to_string(pconf::classify_via_pluecker(p, k));
  return r;
}

json cmd_config_walls(const Options& o) {
  const auto [n, m] = nm_of(o);
  const auto model = pconf::hypersimplex(n, m);
  json walls = json::array();
  json charted = json::array();
  for (const auto& h : model.walls) {
    walls.push_back(io::to_json(h));
    charted.push_back(io::to_json(pconf::chart_hyperplane(h, n)));
  }
  return {{"walls", walls}, {"chart_walls", charted}, {"count", model.walls.size()}, {"vertices", model.vertices.size()}};
}

json cmd_gm_check(const Options& o) {
  const auto [n, m] = nm_of(o);
  return io::gm_report_json(pconf::gm_crosscheck(n, m, max_subsets()));
}

std::optional<plot::Section> section_of(const Options& o, std::optional<std::size_t> chart_n) {
  if (o.section.empty()) return std::nullopt;
  const json j = load(o.section, "section");
  auto get = [&](const char* key) {
    if (!j.contains(key)) throw InputError(std::string("section: missing \"") + key + "\"");
    return j.at(key);
  };
  const QVector bounds = io::parse_vector(get("bounds"));
  if (bounds.size() != 4) throw InputError("section: bounds must be [s0, s1, t0, t1]");
  plot::Section s{io::parse_vector(get("origin")), io::parse_vector(get("u")), io::parse_vector(get("v")),
                  bounds[0], bounds[1], bounds[2], bounds[3]};
  if (chart_n) {
    // Ambient coordinates of Q^m: the plane must lie in sum x = n+1.
    auto total = [](const QVector& v) {
      Rational t = 0;
      for (const auto& x : v) t += x;
      return t;
    };
    if (total(s.origin) != Rational(*chart_n + 1) || total(s.u) != 0 || total(s.v) != 0) {
      throw InputError("section: the plane must lie in the hyperplane sum x = n+1");
    }
    s.origin = pconf::to_chart(s.origin);
    s.u = pconf::to_chart(s.u);
    s.v = pconf::to_chart(s.v);
  }
  return s;
}

std::string cmd_plot(const Options& o) {
  std::optional<git::WeightConfiguration> w;
  std::optional<std::size_t> chart_n;
  if (!o.weights.empty()) {
    w.emplace(weights_of(o));
  } else {
    const auto [n, m] = nm_of(o);
    w.emplace(pconf::chart(pconf::gm_weights(n, m)));
    chart_n = n;
  }
  const auto cc = git::chamber_complex(*w);
  std::optional<std::size_t> highlight;
  if (o.cell >= 0 || !o.cell_at.empty()) {
    if (chart_n && !o.cell_at.empty()) throw InputError("plot: use --cell with --n/--m");
    highlight = cell_of(o, cc, *w);
  }
  return plot::svg(cc, *w, section_of(o, chart_n), highlight);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"GIT chambers and wall crossings for torus actions on projective space", "vgit"};
  app.require_subcommand(1);
  Options o;

  struct Command {
    const char* name;
    const char* help;
    std::function<json(const Options&)> fn;
    std::vector<const char*> flags;
  };
  const std::vector<Command> commands{
      {"classify", "Stability and M of a point", cmd_classify, {"weights", "lin", "point"}},
      {"cone", "G-ample cone", cmd_cone, {"weights", "lin"}},
      {"walls", "Walls of the slice", cmd_walls, {"weights"}},
      {"chambers", "Chambers with witnesses and signatures", cmd_chambers, {"weights"}},
      {"cells", "All GIT cells", cmd_cells, {"weights"}},
      {"class", "GIT class of a linearization", cmd_class, {"weights", "lin"}},
      {"stratify", "Stratification of the unstable locus", cmd_stratify, {"weights", "lin", "point"}},
      {"cross", "Wall crossing at a codimension-one cell", cmd_cross, {"weights", "cell-at", "cell"}},
      {"config-stability", "Stability of a weighted point configuration", cmd_config_stability, {"points", "k"}},
      {"config-walls", "Walls of the hypersimplex", cmd_config_walls, {"n", "m"}},
      {"gm-check", "Compare the configuration and Pluecker routes", cmd_gm_check, {"n", "m"}},
      {"plot", "SVG section of the chamber complex", nullptr, {"weights", "n", "m", "section", "cell-at", "cell", "out"}},
  };
  auto add_flag = [&](CLI::App* sub, const std::string& flag) {
    if (flag == "weights") sub->add_option("--weights", o.weights, "Weights JSON file or inline JSON");
    if (flag == "lin") sub->add_option("--lin", o.lin, "Linearization {\"p\": [...], \"d\": ...}");
    if (flag == "point") sub->add_option("--point", o.point, "Sparse point {\"index\": value}");
    if (flag == "cell-at") sub->add_option("--cell-at", o.cell_at, "Slice point inside the cell");
    if (flag == "cell") sub->add_option("--cell", o.cell, "Cell index");
    if (flag == "points") sub->add_option("--points", o.points, "Points JSON file or inline JSON");
    if (flag == "k") sub->add_option("--k", o.k, "Integer weights [k1, ...]");
    if (flag == "n") sub->add_option("--n", o.n, "Projective dimension");
    if (flag == "m") sub->add_option("--m", o.m, "Number of points");
    if (flag == "section") sub->add_option("--section", o.section, "{\"origin\", \"u\", \"v\", \"bounds\"}");
    if (flag == "out") sub->add_option("--out", o.out, "Write the SVG here instead of stdout");
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    for (const auto* f : c.flags) add_flag(sub, f);
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::size_t which = 0;
  while (!subs[which]->parsed()) ++which;
  const Command& cmd = commands[which];
  try {
    if (cmd.fn == nullptr) {
      const std::string doc = cmd_plot(o);
      if (o.out.empty()) {
        out << doc;
      } else {
        std::ofstream file(o.out);
        if (!file) throw InputError("cannot write '" + o.out + "'");
        file << doc;
      }
      return 0;
    }
    out << io::dump(io::document(cmd.name, cmd.fn(o)));
    return 0;
  } catch (const InputError& e) {
    err << "vgit " << cmd.name << ": " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "vgit " << cmd.name << ": " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    out << io::dump(json{{"error", {{"code", e.code()}, {"message", e.what()}}}});
    return 1;
  }
}

}  // namespace vgit::cli
