#include "courant/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "courant/error.hpp"

namespace courant {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

json parse_json(const std::string& text, const std::string& name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    invalid(name + ": " + e.what());
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) invalid(where + ": expected a number");
  return j.get<double>();
}

int index(const json& j, int bound, const std::string& where) {
  if (!j.is_number_integer()) invalid(where + ": expected an integer index");
  const int i = j.get<int>();
  if (i < 0 || i >= bound) invalid(where + ": index out of range");
  return i;
}

int positive_dim(const json& cfg, const std::string& name) {
  if (!cfg.contains("dim") || !cfg["dim"].is_number_integer() || cfg["dim"].get<int>() <= 0)
    invalid(name + ": \"dim\" must be a positive integer");
  return cfg["dim"].get<int>();
}

Mat matrix_from_json(const json& j, int rows, int cols, const std::string& where) {
  Mat out(rows, cols);
  if (j.is_array() && !j.empty() && j[0].is_array()) {
    if (static_cast<int>(j.size()) != rows) invalid(where + ": wrong number of rows");
    for (int r = 0; r < rows; ++r) {
      if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) invalid(where + ": wrong number of columns");
      for (int c = 0; c < cols; ++c) out(r, c) = number(j[r][c], where);
    }
    return out;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != rows * cols)
    invalid(where + ": expected " + std::to_string(rows * cols) + " entries");
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out(r, c) = number(j[r * cols + c], where);
  return out;
}

void check_keys(const json& cfg, const std::vector<std::string>& allowed, const std::string& name) {
  if (!cfg.is_object()) invalid(name + ": expected a JSON object");
  for (const auto& item : cfg.items())
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      invalid(name + ": unknown key \"" + item.key() + "\"");
}

struct PolyTerm {
  int i, j, k;
  double coeff;
  std::vector<int> powers;
};

ThreeForm polynomial_h(int d, std::vector<PolyTerm> terms) {
  return [d, terms = std::move(terms)](const Vec& x) {
    Tensor3 h(d);
    for (const auto& t : terms) {
      double v = t.coeff;
      for (int l = 0; l < d; ++l) v *= std::pow(x(l), t.powers[static_cast<std::size_t>(l)]);
      h(t.i, t.j, t.k) += v;
      h(t.j, t.k, t.i) += v;
      h(t.k, t.i, t.j) += v;
      h(t.j, t.i, t.k) -= v;
      h(t.i, t.k, t.j) -= v;
      h(t.k, t.j, t.i) -= v;
    }
    return h;
  };
}

ThreeForm h_from_json(const json& j, int d, const std::string& name) {
  if (j.is_string()) {
    if (j.get<std::string>() == "zero") return [d](const Vec&) { return Tensor3(d); };
    invalid(name + ": unknown H preset \"" + j.get<std::string>() + "\"");
  }
  if (!j.is_object()) invalid(name + ": \"H\" must be a preset name or an object");
  if (j.contains("preset")) {
    check_keys(j, {"preset", "lambda"}, name + ".H");
    const std::string preset = j["preset"].is_string() ? j["preset"].get<std::string>() : "";
    if (preset == "zero") return [d](const Vec&) { return Tensor3(d); };
    if (preset == "su2_volume") {
      if (d != 3) invalid(name + ": su2_volume needs dim 3");
      return su2_volume_form(j.contains("lambda") ? number(j["lambda"], name + ".H.lambda") : 1.0);
    }
    invalid(name + ": unknown H preset \"" + preset + "\"");
  }
  check_keys(j, {"terms"}, name + ".H");
  if (!j.contains("terms") || !j["terms"].is_array()) invalid(name + ": \"H.terms\" must be an array");
  std::vector<PolyTerm> terms;
  for (const auto& t : j["terms"]) {
    const std::string where = name + ".H.terms";
    check_keys(t, {"indices", "coeff", "powers"}, where);
    if (!t.contains("indices") || !t["indices"].is_array() || t["indices"].size() != 3)
      invalid(where + ": \"indices\" must hold three entries");
    PolyTerm p{index(t["indices"][0], d, where), index(t["indices"][1], d, where), index(t["indices"][2], d, where),
               t.contains("coeff") ? number(t["coeff"], where) : 1.0, std::vector<int>(static_cast<std::size_t>(d), 0)};
    if (t.contains("powers")) {
      if (!t["powers"].is_array() || static_cast<int>(t["powers"].size()) != d)
        invalid(where + ": \"powers\" must have dim entries");
      for (int l = 0; l < d; ++l) {
        if (!t["powers"][l].is_number_integer() || t["powers"][l].get<int>() < 0)
          invalid(where + ": powers must be non-negative integers");
        p.powers[static_cast<std::size_t>(l)] = t["powers"][l].get<int>();
      }
    }
    terms.push_back(std::move(p));
  }
  return polynomial_h(d, std::move(terms));
}

std::optional<std::string> resolve_file(const std::string& key) {
  if (const auto dir = user_catalog_dir()) {
    const fs::path p = fs::path(*dir) / (key + ".json");
    if (fs::is_regular_file(p)) return p.string();
  }
  if (fs::is_regular_file(key)) return key;
  return std::nullopt;
}

}  // namespace

std::optional<std::string> user_catalog_dir() {
  const char* dir = std::getenv("COURANT_FLOW_CATALOG");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::string(dir);
}

std::vector<std::string> user_catalog_entries() {
  std::vector<std::string> out;
  const auto dir = user_catalog_dir();
  if (!dir || !fs::is_directory(*dir)) return out;
  for (const auto& entry : fs::directory_iterator(*dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

QuadraticLieAlgebra parse_algebra_config(const std::string& json_text, const std::string& name) {
  const json cfg = parse_json(json_text, name);
  check_keys(cfg, {"dim", "structure_constants", "pairing", "name"}, name);
  const int n = positive_dim(cfg, name);
  if (!cfg.contains("structure_constants") || !cfg["structure_constants"].is_array())
    invalid(name + ": \"structure_constants\" must be an array of [i,j,k,value]");
  if (!cfg.contains("pairing")) invalid(name + ": missing \"pairing\"");
  Tensor3 c(n);
  for (const auto& t : cfg["structure_constants"]) {
    if (!t.is_array() || t.size() != 4) invalid(name + ": structure constant entries are [i,j,k,value]");
    const int i = index(t[0], n, name), j = index(t[1], n, name), k = index(t[2], n, name);
    const double v = number(t[3], name);
    c(i, j, k) = v;
    c(j, i, k) = -v;
  }
  const Mat gram = matrix_from_json(cfg["pairing"], n, n, name + ".pairing");
  const std::string label = cfg.contains("name") && cfg["name"].is_string() ? cfg["name"].get<std::string>() : name;
  try {
    QuadraticLieAlgebra alg(label, c, Pairing(gram));
    alg.validate();
    return alg;
  } catch (const Error& e) {
    invalid(name + ": " + e.what());
  }
}

Background parse_chart_config(const std::string& json_text, const std::string& name) {
  const json cfg = parse_json(json_text, name);
  check_keys(cfg, {"dim", "H", "domain", "g", "b", "name"}, name);
  const int d = positive_dim(cfg, name);
  Box domain = Box::cube(d, 1.0);
  if (cfg.contains("domain")) {
    const Mat lohi = matrix_from_json(cfg["domain"], d, 2, name + ".domain");
    if ((lohi.col(0).array() >= lohi.col(1).array()).any()) invalid(name + ": domain needs lo < hi");
    domain = Box{lohi.col(0), lohi.col(1)};
  }
  const ThreeForm h = cfg.contains("H") ? h_from_json(cfg["H"], d, name) : ThreeForm([d](const Vec&) { return Tensor3(d); });
  const Mat g = cfg.contains("g") ? matrix_from_json(cfg["g"], d, d, name + ".g") : Mat(Mat::Identity(d, d));
  const Mat b = cfg.contains("b") ? matrix_from_json(cfg["b"], d, d, name + ".b") : Mat(Mat::Zero(d, d));
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 || g.llt().info() != Eigen::Success)
    invalid(name + ": g must be symmetric positive definite");
  if ((b + b.transpose()).cwiseAbs().maxCoeff() > 1e-12) invalid(name + ": b must be antisymmetric");
  const std::string label = cfg.contains("name") && cfg["name"].is_string() ? cfg["name"].get<std::string>() : name;
  return {label, ExactChartCA(d, h, domain, label), ChartMetric(d, [e = Mat(g + b)](const Vec&) { return e; })};
}

QuadraticLieAlgebra load_algebra(const std::string& key) {
  const auto names = builtin_algebra_names();
  if (std::find(names.begin(), names.end(), key) != names.end()) return builtin_algebra(key);
  if (const auto path = resolve_file(key)) return parse_algebra_config(read_text_file(*path), key);
  invalid("unknown algebra '" + key + "'");
}

Background load_background(const std::string& key) {
  const auto names = background_names();
  if (std::find(names.begin(), names.end(), key) != names.end()) return background(key);
  if (const auto path = resolve_file(key)) return parse_chart_config(read_text_file(*path), key);
  invalid("unknown background '" + key + "'");
}

Mat load_matrix(const std::string& spec, int rows, int cols) {
  if (spec == "identity") {
    if (rows != cols) invalid("identity needs a square matrix");
    return Mat::Identity(rows, cols);
  }
  if (spec == "zero") return Mat::Zero(rows, cols);
  const std::string text = (!spec.empty() && (spec[0] == '[' || spec[0] == '{')) ? spec : read_text_file(spec);
  json j = parse_json(text, "matrix");
  if (j.is_object()) {
    if (!j.contains("e0")) invalid("matrix object needs an \"e0\" key");
    j = j["e0"];
  }
  return matrix_from_json(j, rows, cols, "matrix");
}

}  // namespace courant
