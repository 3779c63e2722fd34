#include "condcap/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace condcap {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
  return obj.at(key);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, "expected a finite number");
  return x;
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<int>();
}

Complex complex_value(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) fail(where, "expected a complex number [re, im]");
  return {number(v[0], where), number(v[1], where)};
}

std::vector<Complex> complex_list(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected a list of [re, im] pairs");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(complex_value(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

BoundaryComponent parse_curve(const json& c, const std::string& where, Role role) {
  const std::string kind = text(require(c, "kind", where), where + ".kind");
  const std::string orient = text(require(c, "orientation", where), where + ".orientation");
  Orientation o;
  if (orient == "ccw") {
    o = Orientation::ccw;
  } else if (orient == "cw") {
    o = Orientation::cw;
  } else {
    fail(where + ".orientation", "expected \"ccw\" or \"cw\"");
  }

  if (kind == "circle") {
    return make_circle(complex_value(require(c, "center", where), where + ".center"),
                       number(require(c, "radius", where), where + ".radius"), o, role);
  }
  if (kind == "ellipse") {
    const json& axes = require(c, "semi_axes", where);
    if (!axes.is_array() || axes.size() != 2) fail(where + ".semi_axes", "expected [a, b]");
    const double angle = c.contains("angle") ? number(c["angle"], where + ".angle") : 0.0;
    return make_ellipse(complex_value(require(c, "center", where), where + ".center"),
                        number(axes[0], where + ".semi_axes"),
                        number(axes[1], where + ".semi_axes"), angle, o, role);
  }
  if (kind == "polygon") {
    int order = 3;
    Grading grading = Grading::polynomial;
    if (c.contains("grading_order")) order = integer(c["grading_order"], where + ".grading_order");
    if (c.contains("grading")) {
      const std::string g = text(c["grading"], where + ".grading");
      if (g == "polynomial") {
        grading = Grading::polynomial;
      } else if (g == "kress") {
        grading = Grading::kress;
      } else {
        fail(where + ".grading", "expected \"polynomial\" or \"kress\"");
      }
    }
    return make_polygon(complex_list(require(c, "vertices", where), where + ".vertices"), o,
                        order, grading, role);
  }
  if (kind == "trig") {
    const json& terms = require(c, "terms", where);
    if (!terms.is_array() || terms.empty()) fail(where + ".terms", "expected [[k, re, im], ...]");
    std::vector<std::pair<int, Complex>> out;
    for (const json& t : terms) {
      if (!t.is_array() || t.size() != 3) fail(where + ".terms", "expected [k, re, im] entries");
      out.emplace_back(integer(t[0], where + ".terms"),
                       Complex{number(t[1], where + ".terms"), number(t[2], where + ".terms")});
    }
    return make_trig_curve(std::move(out), o, role);
  }
  fail(where + ".kind", "unknown curve kind '" + kind + "'");
}

json rounded(const VectorXd& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(round15(v[i]));
  return out;
}

}  // namespace

double round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

ProblemConfig parse_config(const std::string& source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("config", "expected a JSON object");
  const int version = integer(require(doc, "schema_version", "config"), "schema_version");
  if (version != schema_version) {
    fail("schema_version", "unsupported version " + std::to_string(version));
  }

  ProblemConfig cfg;
  const json& curves = require(doc, "curves", "config");
  if (!curves.is_array() || curves.empty()) fail("curves", "expected a non-empty list");
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const std::string where = "curves[" + std::to_string(i) + "]";
    const json& c = curves[i];
    if (!c.is_object()) fail(where, "expected an object");
    const std::string role = text(require(c, "role", where), where + ".role");
    if (role == "plate") {
      cfg.problem.plates.push_back(parse_curve(c, where, Role::plate));
      cfg.problem.aux_points.push_back(
          c.contains("aux") ? std::optional(complex_value(c["aux"], where + ".aux")) : std::nullopt);
    } else if (role == "wall") {
      if (c.contains("aux")) fail(where + ".aux", "only plates carry auxiliary points");
      cfg.problem.walls.push_back(parse_curve(c, where, Role::neumann));
    } else {
      fail(where + ".role", "expected \"plate\" or \"wall\"");
    }
  }

  if (doc.contains("levels")) {
    const json& levels = doc["levels"];
    if (!levels.is_array()) fail("levels", "expected a list of numbers");
    for (const json& v : levels) cfg.problem.levels.push_back(number(v, "levels"));
    if (cfg.problem.levels.size() != cfg.problem.plates.size()) {
      fail("levels", "expected " + std::to_string(cfg.problem.plates.size()) +
                         " values (one per plate), got " +
                         std::to_string(cfg.problem.levels.size()));
    }
  }
  if (doc.contains("n")) cfg.n = integer(doc["n"], "n");
  if (doc.contains("alpha")) cfg.problem.alpha = complex_value(doc["alpha"], "alpha");

  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    if (!s.is_object()) fail("solver", "expected an object");
    if (s.contains("tol")) cfg.solver.tol = number(s["tol"], "solver.tol");
    if (s.contains("maxit")) cfg.solver.maxit = integer(s["maxit"], "solver.maxit");
    if (s.contains("mode")) cfg.solver.mode = parse_solve_mode(text(s["mode"], "solver.mode"));
  }
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    if (!g.is_object()) fail("grid", "expected an object");
    const json& b = require(g, "bounds", "grid");
    if (!b.is_array() || b.size() != 4) fail("grid.bounds", "expected [xmin, xmax, ymin, ymax]");
    GridRequest req;
    req.bounds = {number(b[0], "grid.bounds"), number(b[1], "grid.bounds"),
                  number(b[2], "grid.bounds"), number(b[3], "grid.bounds")};
    if (!(req.bounds.xmin <= req.bounds.xmax && req.bounds.ymin <= req.bounds.ymax)) {
      fail("grid.bounds", "expected xmin <= xmax and ymin <= ymax");
    }
    if (g.contains("nx")) req.nx = integer(g["nx"], "grid.nx");
    if (g.contains("ny")) req.ny = integer(g["ny"], "grid.ny");
    if (req.nx < 1 || req.ny < 1) fail("grid", "nx and ny must be positive");
    cfg.grid = req;
  }
  if (doc.contains("points")) cfg.points = complex_list(doc["points"], "points");

  if (cfg.n < 4 || cfg.n % 2 != 0) fail("n", "node count must be even and at least 4");
  if (!(cfg.solver.tol > 0.0)) fail("solver.tol", "must be positive");
  if (cfg.solver.maxit < 1) fail("solver.maxit", "must be positive");
  return cfg;
}

ProblemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string result_document(const CondenserResult& r, double seconds) {
  json doc;
  doc["schema_version"] = schema_version;
  doc["capacity"] = round15(r.capacity);
  doc["case"] = std::string(r.info.label());
  doc["n"] = r.d.n;
  doc["m"] = r.info.m;
  doc["ell"] = r.info.ell;
  doc["field_bounded"] = r.info.field_bounded;
  doc["host_bounded"] = r.info.host_bounded;
  doc["a"] = rounded(r.constants.a);
  doc["c"] = round15(r.constants.c);
  doc["nu"] = rounded(r.constants.nu);
  if (r.coefficient.alpha) {
    doc["alpha"] = {round15(r.coefficient.alpha->real()), round15(r.coefficient.alpha->imag())};
  }

  json diag;
  double worst = 0.0, spread = 0.0;
  int iterations = 0;
  std::string mode = "direct";
  for (const auto& s : r.solutions) {
    worst = std::max(worst, s.report.residual);
    spread = std::max(spread, s.spread.maxCoeff());
    iterations = std::max(iterations, s.report.iterations);
    mode = std::string(to_string(s.report.mode));
  }
  diag["solver_mode"] = mode;
  diag["bie_residual"] = round15(worst);
  diag["gmres_iterations"] = iterations;
  diag["h_spread"] = round15(spread);
  diag["constants_residual"] = round15(r.constants.residual);
  diag["sum_a"] = round15(r.constants.a.sum());
  doc["diagnostics"] = diag;
  if (seconds >= 0.0) doc["seconds"] = round15(seconds);
  return doc.dump(2) + "\n";
}

}  // namespace condcap
