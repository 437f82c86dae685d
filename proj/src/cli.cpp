#include "courant/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

#include <json.hpp>

#include "courant/config.hpp"
#include "courant/duality.hpp"
#include "courant/error.hpp"
#include "courant/flow.hpp"

namespace courant {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kAlgebraicTol = 1e-12;
constexpr double kFirstDerivativeTol = 1e-5;
constexpr double kSecondDerivativeTol = 1e-4;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

json ladder(const RunConfig& cfg) {
  json j{{"algebraic", kAlgebraicTol}, {"first_derivative", kFirstDerivativeTol},
         {"second_derivative", kSecondDerivativeTol}};
  j["override"] = cfg.tol ? json(*cfg.tol) : json(nullptr);
  return j;
}

json config_json(const RunConfig& cfg) {
  return {{"subcommand", cfg.subcommand}, {"backend", cfg.backend}, {"algebra", cfg.algebra},
          {"preset", cfg.preset},         {"triple", cfg.triple},   {"e0", cfg.e0},
          {"samples", cfg.samples},       {"tol", cfg.tol ? json(*cfg.tol) : json(nullptr)},
          {"seed", cfg.seed},             {"t_end", cfg.t_end},     {"h", cfg.h}};
}

json matrix_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

/// Collects checks, CSV files and the report for one run.
class Session {
 public:
  Session(const RunConfig& cfg, std::ostream& log) : cfg_(cfg), log_(log) {}

  double tol(double fallback) const { return cfg_.tol ? *cfg_.tol : fallback; }

  void check(const std::string& name, const std::string& subject, double residual, double tol) {
    const bool pass = std::isfinite(residual) && residual < tol;
    checks_.push_back({{"check", name}, {"background", subject}, {"max_residual", residual}, {"tol", tol}, {"pass", pass}});
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-28s %-20s residual %.3e  tol %.1e\n", pass ? "ok" : "FAIL", name.c_str(),
                  subject.c_str(), residual, tol);
    log_ << line;
    pass_ = pass_ && pass;
  }

  void fail(const std::string& what) {
    error_ = what;
    pass_ = false;
    log_ << "error: " << what << "\n";
  }

  json& extra() { return extra_; }

  void write_csv(const std::string& file, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows, const std::vector<std::string>& labels = {}) {
    std::ofstream out(fs::path(cfg_.out) / file);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::size_t col = 0;
      if (!labels.empty()) {
        out << labels[r];
        ++col;
      }
      for (double v : rows[r]) out << (col++ ? "," : "") << format_double(v);
      out << "\n";
    }
    artifacts_.push_back(file);
  }

  int finish(const std::string& report_file) {
    json report{{"subcommand", cfg_.subcommand}, {"tolerances", ladder(cfg_)}, {"checks", checks_}, {"pass", pass_}};
    if (!extra_.is_null()) report["data"] = extra_;
    if (!error_.empty()) report["error"] = error_;
    std::ofstream(fs::path(cfg_.out) / report_file) << report.dump(2) << "\n";
    artifacts_.push_back(report_file);
    const int code = pass_ ? 0 : 1;
    write_manifest(code);
    return code;
  }

 private:
  void write_manifest(int code) {
    const json config = config_json(cfg_);
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    const json manifest{{"tool", "courant-flow"}, {"config", config},        {"config_hash", hash},
                        {"seed", cfg_.seed},      {"timestamp", stamp},      {"artifacts", artifacts_},
                        {"tolerances", ladder(cfg_)}, {"exit_code", code}};
    std::ofstream(fs::path(cfg_.out) / "manifest.json") << manifest.dump(2) << "\n";
  }

  const RunConfig& cfg_;
  std::ostream& log_;
  json checks_ = json::array();
  json extra_;
  std::vector<std::string> artifacts_;
  std::string error_;
  bool pass_ = true;
};

std::vector<Vec> random_points(const Box& box, int count, std::mt19937_64& rng, double shrink = 0.5) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec> out;
  for (int s = 0; s < count; ++s) {
    const Vec mid = 0.5 * (box.lo + box.hi);
    const Vec half = 0.5 * shrink * (box.hi - box.lo);
    Vec x(mid.size());
    for (int i = 0; i < x.size(); ++i) x(i) = mid(i) + half(i) * u(rng);
    out.push_back(x);
  }
  return out;
}

std::vector<double> flatten(const Mat& m) {
  std::vector<double> out;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  return out;
}

std::vector<std::string> matrix_header(const std::string& prefix, int rows, int cols) {
  std::vector<std::string> out;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out.push_back(prefix + std::to_string(r) + std::to_string(c));
  return out;
}

/// V+ for the point backend: graph of E0 over the first Lagrangian of a Manin
/// layout, otherwise the built-in default.
Subspace point_vplus(const QuadraticLieAlgebra& alg, const std::string& e0) {
  if (e0 == "identity" || !is_manin_layout(alg)) {
    if (e0 != "identity") invalid("--e0 needs an algebra in Manin-triple layout");
    return default_vplus(alg);
  }
  const int m = alg.dim() / 2;
  Mat basis(2 * m, m);
  basis << Mat::Identity(m, m), load_matrix(e0, m, m).transpose();
  return Subspace(basis);
}

void verify_point(Session& s, const RunConfig& cfg, std::mt19937_64& rng) {
  const QuadraticLieAlgebra alg = load_algebra(cfg.algebra);
  const AxiomReport ax = check_axioms(alg, s.tol(kAlgebraicTol));
  s.check("axioms", alg.name(), ax.max_residual(), s.tol(kAlgebraicTol));
  s.check("torsion_antisymmetry", alg.name(), alg.antisymmetry_residual(), s.tol(kAlgebraicTol));
  const PointMetric pm(alg.pairing(), point_vplus(alg, cfg.e0));
  const GRicResult gr = gric_point(alg, pm);
  s.check("gric_finite", alg.name(), gr.value.allFinite() ? 0.0 : INFINITY, s.tol(kAlgebraicTol));
  if (alg.dim() % 2 == 0 && is_manin_layout(alg)) {
    const ManinTriple triple(alg);
    for (Side side : {Side::A, Side::B}) {
      const GroupChart chart(triple, side);
      const auto xs = random_points(chart.domain(), cfg.samples, rng);
      const auto nat = pullback_naturality_check(triple, side, xs, s.tol(kFirstDerivativeTol));
      s.check(std::string("pullback_naturality_") + side_name(side), alg.name(), nat.residual, nat.tol);
      const auto pb = verify_pullback_conditions(pullback_action(triple, side), xs, s.tol(kFirstDerivativeTol));
      s.check(std::string("pullback_conditions_") + side_name(side), alg.name(),
              std::max(pb.closure_residual, pb.coisotropy_residual) + (pb.exact ? 0.0 : INFINITY), pb.tol);
    }
  }
}

void verify_chart(Session& s, const RunConfig& cfg, std::mt19937_64& rng) {
  const Background bg = load_background(cfg.preset);
  const auto xs = random_points(bg.ca.domain(), cfg.samples, rng);
  const AxiomReport ax = check_axioms(bg.ca, xs, s.tol(kFirstDerivativeTol), cfg.seed);
  s.check("axioms", bg.name, ax.max_residual(), ax.tol);
  s.check("closedness", bg.name, closedness_residual(bg.ca, xs), s.tol(kFirstDerivativeTol));
  const ChartConnection can = canonical_minus(bg.ca, bg.metric, levi_civita_pair(bg.metric));
  const ThreeForm h = effective_h(bg.ca, bg.metric);
  double torsion = 0.0;
  for (const Vec& x : xs) torsion = std::max(torsion, torsion_identity_residual(bg.metric.g(x), can.minus(x), h(x)));
  s.check("torsion_identity", bg.name, torsion, s.tol(kFirstDerivativeTol));
  const auto thm = check_exact_theorem(bg.ca, bg.metric, levi_civita_pair(bg.metric), true, xs,
                                       s.tol(kSecondDerivativeTol), s.tol(kFirstDerivativeTol));
  s.check("exact_theorem", bg.name, thm.residual, thm.tol);
  s.check("exact_theorem_t2_t3", bg.name, std::max(thm.t2, thm.t3), thm.term_tol);
}

void gric_point_cmd(Session& s, const RunConfig& cfg) {
  const QuadraticLieAlgebra alg = load_algebra(cfg.algebra);
  const PointMetric pm(alg.pairing(), point_vplus(alg, cfg.e0));
  const GRicResult gr = gric_point(alg, pm);
  s.check("gric_finite", alg.name(), gr.value.allFinite() ? 0.0 : INFINITY, s.tol(kAlgebraicTol));
  s.extra() = {{"algebra", alg.name()}, {"gric", matrix_json(gr.value)}, {"t1", matrix_json(gr.t1)},
               {"t2", matrix_json(gr.t2)}, {"plus_basis", matrix_json(gr.plus_basis)},
               {"minus_basis", matrix_json(gr.minus_basis)}};
  std::vector<std::vector<double>> rows;
  for (int a = 0; a < gr.value.rows(); ++a)
    for (int b = 0; b < gr.value.cols(); ++b) rows.push_back({double(a), double(b), gr.value(a, b)});
  s.write_csv("gric.csv", {"a", "b", "gric"}, rows);
}

void gric_chart_cmd(Session& s, const RunConfig& cfg, std::mt19937_64& rng) {
  const Background bg = load_background(cfg.preset);
  const int d = bg.ca.dim();
  const auto xs = random_points(bg.ca.domain(), cfg.samples, rng);
  const ChartConnection can = canonical_minus(bg.ca, bg.metric, levi_civita_pair(bg.metric));
  const ThreeForm h = effective_h(bg.ca, bg.metric);
  const MatField g = [&bg](const Vec& x) { return bg.metric.g(x); };
  std::vector<std::string> header{"sample"};
  for (int i = 0; i < d; ++i) header.push_back("x" + std::to_string(i));
  for (const auto& c : matrix_header("gric_", d, d)) header.push_back(c);
  for (const auto& c : matrix_header("ric_", d, d)) header.push_back(c);
  std::vector<std::vector<double>> rows;
  double resid = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const GRicResult gr = gric_chart(bg.ca, bg.metric, can, xs[k]);
    const Mat coord = signed_to_coord(bg.metric, xs[k], gr.value);
    const Mat ric = classical_ricci_gH(g, h, xs[k]);
    resid = std::max(resid, (coord - ric).cwiseAbs().maxCoeff());
    std::vector<double> row{double(k)};
    for (int i = 0; i < d; ++i) row.push_back(xs[k](i));
    for (double v : flatten(coord)) row.push_back(v);
    for (double v : flatten(ric)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  s.check("gric_vs_ricci", bg.name, resid, s.tol(kSecondDerivativeTol));
  s.write_csv("gric.csv", header, rows);
}

void write_trajectory(Session& s, const FlowTrajectory& traj, const std::vector<std::string>& names) {
  std::vector<std::string> header{"t"};
  header.insert(header.end(), names.begin(), names.end());
  header.push_back("gric_norm");
  std::vector<std::vector<double>> rows;
  for (const auto& p : traj.points) {
    std::vector<double> row{p.t};
    for (int i = 0; i < p.state.size(); ++i) row.push_back(p.state(i));
    row.push_back(p.gric_norm);
    rows.push_back(std::move(row));
  }
  s.write_csv("trajectory.csv", header, rows);
}

void flow_cmd(Session& s, const RunConfig& cfg) {
  FlowOptions opts;
  opts.t_end = cfg.t_end;
  opts.h = cfg.h;
  if (cfg.backend == "point") {
    const QuadraticLieAlgebra alg = load_algebra(cfg.algebra);
    const PointMetric start(alg.pairing(), point_vplus(alg, cfg.e0));
    const PointFlow flow(alg, start);
    const FlowTrajectory traj = flow.integrate(start, opts);
    std::vector<std::string> names;
    for (int i = 0; i < static_cast<int>(traj.points.front().state.size()); ++i) names.push_back("q" + std::to_string(i));
    write_trajectory(s, traj, names);
    s.extra() = {{"algebra", alg.name()}, {"stop_reason", traj.stop_reason}, {"steps", traj.points.size() - 1}};
    s.check("flow_completed", alg.name(), traj.points.back().state.allFinite() ? 0.0 : INFINITY, 1.0);
    return;
  }
  const auto names = family_names();
  if (std::find(names.begin(), names.end(), cfg.preset) == names.end())
    invalid("flow on a chart needs an invariant family preset (" + cfg.preset + " is not one)");
  const InvariantFamily fam = family(cfg.preset, cfg.preset == "su2_wzw" ? 1.0 : 0.0);
  const int k = static_cast<int>(fam.param_names.size());
  Vec params = Vec::Ones(k);
  if (cfg.preset == "squashed_s3") params << 1.0, 0.6;
  if (cfg.e0 != "identity") params = load_matrix(cfg.e0, 1, k).row(0).transpose();
  const ReducedOde ode = invariant_ansatz_reduce(fam, params);
  s.check("ansatz_consistency", fam.name, ode.consistency(params), s.tol(kSecondDerivativeTol));
  const FlowTrajectory traj = ode.integrate(params, opts);
  write_trajectory(s, traj, fam.param_names);
  s.extra() = {{"family", fam.name}, {"stop_reason", traj.stop_reason}, {"steps", traj.points.size() - 1}};
  if (cfg.preset == "round_s3") {
    double err = 0.0;
    for (const auto& p : traj.points) err = std::max(err, std::abs(p.state(0) - (params(0) - 4.0 * p.t)));
    s.check("round_s3_closed_form", fam.name, err, s.tol(kSecondDerivativeTol));
  }
}

void dualize_cmd(Session& s, const RunConfig& cfg, std::mt19937_64& rng) {
  const ManinTriple triple = builtin_triple(cfg.triple);
  const int m = triple.half_dim();
  const Mat e0 = load_matrix(cfg.e0, m, m);
  Mat basis(2 * m, m);
  basis << Mat::Identity(m, m), e0.transpose();
  const Subspace v_plus(basis);
  try {
    PointMetric check(triple.algebra().pairing(), v_plus);
  } catch (const Error& e) {
    invalid(std::string("--e0 does not define a generalized metric: ") + e.what());
  }
  std::vector<Vec> samples[2];
  for (Side side : {Side::A, Side::B}) {
    const GroupChart chart(triple, side, 1.0);
    samples[side == Side::A ? 0 : 1] = random_points(chart.domain(), cfg.samples, rng, 0.6);
  }
  const std::string subject = triple.algebra().name();
  for (Side side : {Side::A, Side::B}) {
    const auto nat = pullback_naturality_check(triple, side, samples[side == Side::A ? 0 : 1], s.tol(kFirstDerivativeTol));
    s.check(std::string("naturality_") + side_name(side), subject, nat.residual, nat.tol);
  }
  const DualityReport rep = duality_compare(triple, v_plus, samples[0], samples[1], s.tol(kSecondDerivativeTol));
  json sides = json::array();
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  for (const auto& sr : rep.sides) {
    const std::string name = side_name(sr.side);
    s.check("duality_gauge_fit_" + name, subject, sr.gauge_fit_residual, rep.tol);
    sides.push_back({{"side", name},
                     {"gauge_fit_residual", sr.gauge_fit_residual},
                     {"theorem_residual", sr.theorem_residual},
                     {"pushforward_residual", sr.pushforward_residual},
                     {"gauge_scale", sr.gauge_scale},
                     {"gauge_section", std::vector<double>(sr.gauge_section.data(), sr.gauge_section.data() + sr.gauge_section.size())},
                     {"max_chart_rhs", sr.max_chart_rhs}});
    labels.push_back(name);
    rows.push_back({sr.gauge_fit_residual, sr.theorem_residual, sr.pushforward_residual, sr.gauge_scale, sr.max_chart_rhs});
  }
  s.extra() = {{"triple", cfg.triple}, {"e0", matrix_json(e0)}, {"sides", sides}, {"max_residual", rep.residual}};
  s.write_csv("comparison.csv",
              {"side", "gauge_fit_residual", "theorem_residual", "pushforward_residual", "gauge_scale", "max_chart_rhs"},
              rows, labels);
  for (Side side : {Side::A, Side::B}) {
    std::vector<std::string> header{"sample"};
    for (int i = 0; i < m; ++i) header.push_back("x" + std::to_string(i));
    for (const auto& c : matrix_header("g", m, m)) header.push_back(c);
    for (const auto& c : matrix_header("b", m, m)) header.push_back(c);
    std::vector<std::vector<double>> gb_rows;
    const auto& xs = samples[side == Side::A ? 0 : 1];
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const GB gb = pullback_metric(triple, v_plus, side, xs[k]);
      std::vector<double> row{double(k)};
      for (int i = 0; i < m; ++i) row.push_back(xs[k](i));
      for (double v : flatten(gb.g)) row.push_back(v);
      for (double v : flatten(gb.b)) row.push_back(v);
      gb_rows.push_back(std::move(row));
    }
    s.write_csv(std::string("gb_") + side_name(side) + ".csv", header, gb_rows);
  }
}

void list_cmd(Session& s, std::ostream& log) {
  const json cat{{"algebras", builtin_algebra_names()},
                 {"triples", builtin_triple_names()},
                 {"backgrounds", background_names()},
                 {"families", family_names()},
                 {"user_catalog", user_catalog_entries()}};
  for (const auto& item : cat.items()) {
    log << item.key() << ":";
    for (const auto& v : item.value()) log << " " << v.get<std::string>();
    log << "\n";
  }
  s.extra() = cat;
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

void validate(RunConfig& cfg) {
  static const std::vector<std::string> subcommands{"verify", "gric", "flow", "dualize", "list"};
  if (std::find(subcommands.begin(), subcommands.end(), cfg.subcommand) == subcommands.end())
    invalid("unknown subcommand '" + cfg.subcommand + "'");
  if (cfg.backend != "point" && cfg.backend != "chart") invalid("--backend must be point or chart");
  if (!cfg.preset.empty() && cfg.subcommand != "dualize" && cfg.subcommand != "list" && cfg.algebra.empty())
    cfg.backend = "chart";
  if (cfg.backend == "point" && cfg.algebra.empty()) cfg.algebra = "abelian4";
  if (cfg.backend == "chart" && cfg.preset.empty()) cfg.preset = cfg.subcommand == "flow" ? "round_s3" : "flat3";
  if (cfg.samples < 1) invalid("--samples must be at least 1");
  if (cfg.tol && !(*cfg.tol > 0.0)) invalid("--tol must be positive");
  if (!(cfg.h > 0.0) || !(cfg.t_end > 0.0)) invalid("--h and --t-end must be positive");
  if (cfg.h > cfg.t_end) invalid("--h exceeds --t-end");
  if (cfg.out.empty()) invalid("--out must name a directory");
}

int run(RunConfig cfg, std::ostream& log) {
  try {
    validate(cfg);
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec) invalid("cannot create output directory '" + cfg.out + "'");
    Session s(cfg, log);
    std::mt19937_64 rng(cfg.seed);
    try {
      if (cfg.subcommand == "verify") {
        cfg.backend == "point" ? verify_point(s, cfg, rng) : verify_chart(s, cfg, rng);
      } else if (cfg.subcommand == "gric") {
        cfg.backend == "point" ? gric_point_cmd(s, cfg) : gric_chart_cmd(s, cfg, rng);
      } else if (cfg.subcommand == "flow") {
        flow_cmd(s, cfg);
      } else if (cfg.subcommand == "dualize") {
        dualize_cmd(s, cfg, rng);
      } else {
        list_cmd(s, log);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigInvalid) throw;
      s.fail(e.what());
    }
    return s.finish(cfg.subcommand + ".json");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ConfigInvalid) throw;
    log << "config error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace courant
