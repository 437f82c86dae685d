#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "courant/config.hpp"
#include "courant/error.hpp"

using namespace courant;
namespace fs = std::filesystem;

namespace {

bool config_invalid(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == ErrorCode::ConfigInvalid;
  }
  return false;
}

const char* kSu2 = R"({"dim": 3,
  "structure_constants": [[0,1,2,1],[1,2,0,1],[2,0,1,1]],
  "pairing": [1,0,0, 0,1,0, 0,0,1]})";

}  // namespace

TEST_CASE("algebra config reproduces su2") {
  const QuadraticLieAlgebra alg = parse_algebra_config(kSu2, "su2_json");
  const QuadraticLieAlgebra ref = su2();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK((alg.bracket(Vec::Unit(3, i), Vec::Unit(3, j)) - ref.bracket(Vec::Unit(3, i), Vec::Unit(3, j))).norm() == 0.0);
  CHECK(alg.name() == "su2_json");
}

TEST_CASE("invalid algebra configs") {
  CHECK(config_invalid([] { parse_algebra_config("{not json"); }));
  CHECK(config_invalid([] { parse_algebra_config(R"({"dim": 2, "structure_constants": [], "pairing": [1,0,0,1], "x": 1})"); }));
  CHECK(config_invalid([] { parse_algebra_config(R"({"dim": 2, "structure_constants": [[0,5,0,1]], "pairing": [1,0,0,1]})"); }));
  CHECK(config_invalid([] { parse_algebra_config(R"({"dim": 2, "structure_constants": [], "pairing": [1,0,0]})"); }));
  // Jacobi holds but the pairing is not invariant.
  CHECK(config_invalid([] {
    parse_algebra_config(R"({"dim": 3, "structure_constants": [[0,1,2,1],[1,2,0,1],[2,0,1,1]], "pairing": [1,0,0,0,2,0,0,0,1]})");
  }));
  CHECK(config_invalid([] { load_algebra("definitely_missing"); }));
}

TEST_CASE("chart configs") {
  const Background flat = parse_chart_config(R"({"dim": 2, "H": "zero", "domain": [[-1,1],[-2,2]]})");
  CHECK(flat.ca.dim() == 2);
  CHECK(flat.ca.domain().hi(1) == 2.0);
  const Background poly = parse_chart_config(
      R"({"dim": 3, "H": {"terms": [{"indices": [0,1,2], "coeff": 0.5, "powers": [1,0,0]}]}, "g": [[2,0,0],[0,1,0],[0,0,1]]})");
  const Vec x = (Vec(3) << 0.4, 0.0, 0.0).finished();
  const Tensor3 h = poly.ca.h(x);
  CHECK(h(0, 1, 2) == doctest::Approx(0.2));
  CHECK(h(1, 0, 2) == doctest::Approx(-0.2));
  CHECK(h.antisymmetry_residual() == 0.0);
  CHECK(poly.metric.g(x)(0, 0) == 2.0);
  const Background vol = parse_chart_config(R"({"dim": 3, "H": {"preset": "su2_volume", "lambda": 1.0}})");
  CHECK(vol.ca.h(Vec::Zero(3))(0, 1, 2) == doctest::Approx(1.0));
  CHECK(config_invalid([] { parse_chart_config(R"({"dim": 2, "H": "mystery"})"); }));
  CHECK(config_invalid([] { parse_chart_config(R"({"dim": 2, "g": [[1,0],[0,-1]]})"); }));
  CHECK(config_invalid([] { parse_chart_config(R"({"dim": 2, "domain": [[1,0],[0,1]]})"); }));
}

TEST_CASE("user catalog directory") {
  const fs::path dir = fs::path(COURANT_TEST_TMP) / "catalog";
  fs::create_directories(dir);
  std::ofstream(dir / "my_su2.json") << kSu2;
  setenv("COURANT_FLOW_CATALOG", dir.c_str(), 1);
  CHECK(load_algebra("my_su2").dim() == 3);
  const auto entries = user_catalog_entries();
  CHECK(std::find(entries.begin(), entries.end(), "my_su2") != entries.end());
  unsetenv("COURANT_FLOW_CATALOG");
  CHECK(config_invalid([] { load_algebra("my_su2"); }));
}

TEST_CASE("matrix specs") {
  CHECK(load_matrix("identity", 2, 2) == Mat::Identity(2, 2));
  CHECK(load_matrix("[[1,2],[3,4]]", 2, 2)(1, 0) == 3.0);
  CHECK(load_matrix("{\"e0\": [1,2,3,4]}", 2, 2)(0, 1) == 2.0);
  CHECK(config_invalid([] { load_matrix("[[1,2]]", 2, 2); }));
  CHECK(config_invalid([] { load_matrix("identity", 2, 3); }));
}
