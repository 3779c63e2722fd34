// condcap: capacity, potential and harmonic measure of generalized condensers.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "condcap/config.hpp"

using namespace condcap;

namespace {

struct Overrides {
  int n = 0;
  double tol = 0.0;
  int maxit = 0;
  std::string mode;
};

void apply(const Overrides& o, ProblemConfig& cfg) {
  if (o.n != 0) {
    if (o.n < 4 || o.n % 2 != 0) throw ConfigError("--n must be even and at least 4");
    cfg.n = o.n;
  }
  if (o.tol != 0.0) {
    if (!(o.tol > 0.0)) throw ConfigError("--tol must be positive");
    cfg.solver.tol = o.tol;
  }
  if (o.maxit != 0) {
    if (o.maxit < 1) throw ConfigError("--maxit must be positive");
    cfg.solver.maxit = o.maxit;
  }
  if (!o.mode.empty()) cfg.solver.mode = parse_solve_mode(o.mode);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string mask_label(const PointLocation& loc) {
  switch (loc.kind) {
    case PointLocation::Kind::in_field: return "field";
    case PointLocation::Kind::plate: return "plate" + std::to_string(loc.component + 1);
    case PointLocation::Kind::wall: return "wall";
    case PointLocation::Kind::near_boundary: return "near";
  }
  return "field";
}

void write_grid(const FieldGrid& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << "x,y,u,mask\n";
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const Index k = g.index(ix, iy);
      const Complex z = g.point(ix, iy);
      out << fmt(z.real()) << ',' << fmt(z.imag()) << ',';
      if (g.u[k]) out << fmt(*g.u[k]);
      out << ',' << mask_label(g.mask[k]) << '\n';
    }
  }
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

GridBounds grid_bounds(const ProblemConfig& cfg, const Discretization& d) {
  return cfg.grid ? cfg.grid->bounds : default_bounds(d);
}

int cmd_cap(const std::string& path, const Overrides& o) {
  ProblemConfig cfg = load_config(path);
  apply(o, cfg);
  const auto start = std::chrono::steady_clock::now();
  const CondenserResult r = run(cfg.problem, cfg.n, cfg.solver);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << result_document(r, secs);
  return 0;
}

int cmd_field(const std::string& path, const std::string& out, const Overrides& o) {
  ProblemConfig cfg = load_config(path);
  apply(o, cfg);
  const CondenserResult r = run(cfg.problem, cfg.n, cfg.solver);
  const PotentialField field = PotentialField::from(r);
  const int nx = cfg.grid ? cfg.grid->nx : 51, ny = cfg.grid ? cfg.grid->ny : 51;
  write_grid(grid(field, grid_bounds(cfg, r.d), nx, ny), out);
  return 0;
}

int cmd_hm(const std::string& path, int component, const std::string& out, const Overrides& o) {
  ProblemConfig cfg = load_config(path);
  apply(o, cfg);
  if (!cfg.problem.walls.empty()) {
    throw ConfigError("harmonic measure needs a config without Neumann walls");
  }
  const int m = static_cast<int>(cfg.problem.plates.size());
  if (component < 1 || component > m) {
    throw ConfigError("--component must lie in 1.." + std::to_string(m));
  }
  cfg.problem.levels.assign(m, 0.0);
  const HarmonicMeasure hm(cfg.problem, cfg.n, cfg.solver);
  const PotentialField field = hm.field(component - 1);

  nlohmann::json doc;
  doc["schema_version"] = schema_version;
  doc["component"] = component;
  doc["n"] = cfg.n;
  nlohmann::json values = nlohmann::json::array();
  const std::vector<double> u = potential_at(field, cfg.points);
  for (std::size_t i = 0; i < u.size(); ++i) {
    values.push_back({{"z", {round15(cfg.points[i].real()), round15(cfg.points[i].imag())}},
                      {"omega", round15(u[i])},
                      {"in_field", point_in_field(field.d, cfg.points[i])}});
  }
  doc["values"] = values;
  std::cout << doc.dump(2) << "\n";

  if (!out.empty()) {
    const int nx = cfg.grid ? cfg.grid->nx : 51, ny = cfg.grid ? cfg.grid->ny : 51;
    write_grid(grid(field, grid_bounds(cfg, field.d), nx, ny), out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformal capacity and potential of generalized condensers"};
  app.require_subcommand(1);
  Overrides o;
  auto add_overrides = [&o](CLI::App* sub) {
    sub->add_option("--n", o.n, "nodes per boundary component (even)");
    sub->add_option("--tol", o.tol, "GMRES relative tolerance");
    sub->add_option("--maxit", o.maxit, "GMRES iteration limit");
    sub->add_option("--mode", o.mode, "linear solver: auto, direct or iterative");
  };

  std::string config, out;
  int component = 0;
  auto* cap = app.add_subcommand("cap", "compute the capacity; prints a JSON result");
  cap->add_option("config", config, "problem file (JSON)")->required();
  add_overrides(cap);

  auto* field = app.add_subcommand("field", "evaluate the potential on the configured grid");
  field->add_option("config", config, "problem file (JSON)")->required();
  field->add_option("--out", out, "CSV output file")->required();
  add_overrides(field);

  auto* hm = app.add_subcommand("hm", "harmonic measure of one plate");
  hm->add_option("config", config, "problem file (JSON)")->required();
  hm->add_option("--component", component, "plate index, 1-based")->required();
  hm->add_option("--out", out, "optional CSV grid output");
  add_overrides(hm);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cap) return cmd_cap(config, o);
    if (*field) return cmd_field(config, out, o);
    if (*hm) return cmd_hm(config, component, out, o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return 3;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
