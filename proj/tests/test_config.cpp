#include <doctest.h>

#include <string>

#include "condcap/config.hpp"

using namespace condcap;

namespace {

const std::string two_circles = R"({
  "schema_version": 1,
  "curves": [
    {"kind": "circle", "center": [0, 0], "radius": 1, "role": "plate", "orientation": "cw"},
    {"kind": "circle", "center": [2, 0], "radius": 0.5, "role": "plate", "orientation": "cw"}
  ],
  "levels": [0, 1],
  "n": 128
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("parse a minimal config") {
  const auto cfg = parse_config(two_circles);
  CHECK(cfg.n == 128);
  CHECK(cfg.problem.plates.size() == 2);
  CHECK(cfg.problem.levels == std::vector<double>{0.0, 1.0});
  CHECK_FALSE(cfg.grid.has_value());
  CHECK(cfg.solver.mode == SolveMode::automatic);
}

TEST_CASE("all curve kinds, walls and options") {
  const auto cfg = parse_config(R"({
    "schema_version": 1,
    "curves": [
      {"kind": "polygon", "vertices": [[0,0],[0,1],[1,1],[1,0]], "role": "plate",
       "orientation": "cw", "grading": "kress", "grading_order": 4, "aux": [0.5, 0.5]},
      {"kind": "ellipse", "center": [3, 0], "semi_axes": [1, 0.5], "angle": 0.3,
       "role": "wall", "orientation": "cw"},
      {"kind": "trig", "terms": [[0, -3, 0], [-1, 0.5, 0]], "role": "plate", "orientation": "cw"}
    ],
    "levels": [0, 1],
    "alpha": [10, 10],
    "solver": {"tol": 1e-12, "maxit": 50, "mode": "iterative"},
    "grid": {"bounds": [-4, 4, -2, 2], "nx": 11, "ny": 7},
    "points": [[0, 3], [5, 5]]
  })");
  CHECK(cfg.problem.plates.size() == 2);
  CHECK(cfg.problem.walls.size() == 1);
  CHECK(cfg.problem.plates[0].kind() == "polygon");
  CHECK(cfg.problem.walls[0].role() == Role::neumann);
  CHECK(cfg.problem.aux_points[0] == Complex(0.5, 0.5));
  CHECK_FALSE(cfg.problem.aux_points[1].has_value());
  CHECK(cfg.problem.alpha == Complex(10, 10));
  CHECK(cfg.solver.tol == 1e-12);
  CHECK(cfg.solver.maxit == 50);
  CHECK(cfg.solver.mode == SolveMode::iterative);
  REQUIRE(cfg.grid.has_value());
  CHECK(cfg.grid->nx == 11);
  CHECK(cfg.grid->bounds.ymax == 2.0);
  CHECK(cfg.points.size() == 2);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config("[]"), ConfigError);
  CHECK_THROWS_AS(parse_config(replace(two_circles, "\"schema_version\": 1", "\"schema_version\": 2")),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(replace(two_circles, "\"levels\": [0, 1]", "\"levels\": [0]")),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(replace(two_circles, "\"n\": 128", "\"n\": 127")), ConfigError);
  CHECK_THROWS_AS(parse_config(replace(two_circles, "\"kind\": \"circle\"", "\"kind\": \"blob\"")),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(replace(two_circles, "\"role\": \"plate\"", "\"role\": \"rim\"")),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(replace(two_circles, "\"radius\": 1,", "")), ConfigError);
  CHECK_THROWS_AS(parse_config(replace(two_circles, "\"n\": 128", "\"n\": 128, \"solver\": {\"mode\": \"x\"}")),
                  ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/problem.json"), ConfigError);
}

TEST_CASE("invalid geometry in a config") {
  CHECK_THROWS_AS(parse_config(replace(two_circles, "\"radius\": 1,", "\"radius\": -1,")),
                  GeometryError);
}

TEST_CASE("a single plate is a config error") {
  const auto cfg = parse_config(R"({
    "schema_version": 1,
    "curves": [{"kind": "circle", "center": [0, 0], "radius": 1, "role": "plate",
                "orientation": "cw"}],
    "levels": [1]
  })");
  CHECK_THROWS_AS(run(cfg.problem, cfg.n), ConfigError);
}

TEST_CASE("result document") {
  const auto cfg = parse_config(two_circles);
  const auto r = run(cfg.problem, cfg.n, cfg.solver);
  const std::string doc = result_document(r);
  CHECK(doc.find("\"capacity\"") != std::string::npos);
  CHECK(doc.find("\"case\": \"I\"") != std::string::npos);
  CHECK(doc.find("\"seconds\"") == std::string::npos);
  CHECK(doc == result_document(run(cfg.problem, cfg.n, cfg.solver)));
  CHECK(round15(0.1 + 0.2) == 0.3);
}
