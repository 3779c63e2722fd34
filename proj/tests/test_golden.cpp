// Runs every problem in the corpus and compares with the recorded results.
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "condcap/config.hpp"

using namespace condcap;
namespace fs = std::filesystem;

namespace {

const fs::path corpus = CONDCAP_CORPUS_DIR;

nlohmann::json goldens() {
  std::ifstream in(corpus / "golden.json");
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("every corpus problem has a golden entry") {
  const auto g = goldens();
  std::set<std::string> files;
  for (const auto& e : fs::directory_iterator(corpus)) {
    if (e.path().extension() == ".json" && e.path().stem() != "golden") {
      files.insert(e.path().stem().string());
    }
  }
  std::set<std::string> recorded;
  for (const auto& [name, _] : g["runs"].items()) recorded.insert(name);
  CHECK(files == recorded);
}

TEST_CASE("corpus results match the goldens") {
  const auto g = goldens();
  const double rtol = g["rtol"].get<double>();
  for (const auto& [name, want] : g["runs"].items()) {
    CAPTURE(name);
    const auto cfg = load_config(corpus / (name + ".json"));
    const auto r = run(cfg.problem, cfg.n, cfg.solver);
    const double cap = want["capacity"].get<double>();
    CHECK(std::abs(r.capacity - cap) <= rtol * std::abs(cap));
    CHECK(r.info.label() == want["case"].get<std::string>());
    const auto a = want["a"].get<std::vector<double>>();
    REQUIRE(a.size() == static_cast<std::size_t>(r.constants.a.size()));
    const double scale = r.constants.a.cwiseAbs().maxCoeff();
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(std::abs(r.constants.a[k] - a[k]) <= rtol * scale);
    }
    CHECK(std::abs(r.constants.a.sum()) < 1e-10);
    for (const auto& s : r.solutions) CHECK(s.report.iterations <= 100);
  }
}
