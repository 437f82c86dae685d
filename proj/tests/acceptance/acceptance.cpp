// One PASS/FAIL line per acceptance criterion. Usage: acceptance [criterion...]
// where a criterion is 1..9 or 6b; no argument runs all of them.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "courant/catalog.hpp"
#include "courant/connection.hpp"
#include "courant/duality.hpp"
#include "courant/flow.hpp"
#include "courant/gric.hpp"
#include "oracles.hpp"

using namespace courant;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<Vec> samples(std::mt19937_64& rng, int dim, int count, double scale) {
  std::vector<Vec> out;
  for (int i = 0; i < count; ++i) out.push_back(oracle::random_vec(rng, dim, scale));
  return out;
}

CoeffField random_antisym_field(std::mt19937_64& rng, const ChartMetric& metric, int d) {
  std::vector<Mat> k0, k1;
  for (int i = 0; i < d; ++i) {
    const Mat a = oracle::random_matrix(rng, d, d, 0.4), b = oracle::random_matrix(rng, d, d, 0.4);
    k0.push_back(a - Mat(a.transpose()));
    k1.push_back(b - Mat(b.transpose()));
  }
  return [metric, k0, k1, d](const Vec& x) {
    const Mat ginv = metric.g(x).inverse();
    Coefficients out;
    for (int i = 0; i < d; ++i) out.push_back(ginv * (k0[i] + x.sum() * k1[i]));
    return out;
  };
}

Outcome criterion1() {
  std::mt19937_64 rng(101);
  double point = 0.0, chart = 0.0;
  // Over a point rho = 0, so c depends on the metric only; vary the metric.
  for (const auto& name : builtin_algebra_names()) {
    const QuadraticLieAlgebra alg = builtin_algebra(name);
    const int h = alg.dim() / 2;
    const PointMetric base(alg.pairing(), default_vplus(alg));
    const Tensor3 c = torsion_c(alg);
    for (int k = 0; k < 20; ++k) {
      const PointMetric pm = deform(base, DeformationForm{oracle::random_matrix(rng, h, h, 0.2), base.plus_basis().vectors,
                                                          base.minus_basis().vectors}, 1.0);
      Mat basis(alg.dim(), alg.dim());
      basis << pm.plus_basis().vectors, pm.minus_basis().vectors;
      point = std::max(point, change_basis(c, basis).antisymmetry_residual());
    }
  }
  for (const auto& name : background_names()) {
    const Background bg = background(name);
    const int d = bg.ca.dim();
    for (int k = 0; k < 20; ++k) {
      const Vec x = oracle::random_vec(rng, d, 0.4);
      const ChartConnection nabla = vary(levi_civita_pair(bg.metric),
                                         Shift{random_antisym_field(rng, bg.metric, d), random_antisym_field(rng, bg.metric, d)},
                                         bg.metric, x);
      chart = std::max(chart, torsion_c(bg.ca, bg.metric, nabla, x).antisymmetry_residual());
    }
  }
  return {point < 1e-10 && chart < 1e-5, fmt("point %.2e (tol 1e-10), chart %.2e (tol 1e-5)", point, chart)};
}

Outcome criterion2() {
  std::mt19937_64 rng(102);
  double worst = 0.0;
  for (double lambda : {0.0, 0.5, 1.0}) {
    const Background bg = su2_family(1.0, lambda);
    const ChartConnection can = canonical_minus(bg.ca, bg.metric, levi_civita_pair(bg.metric));
    const ThreeForm h = effective_h(bg.ca, bg.metric);
    for (const Vec& x : samples(rng, 3, 10, 0.7))
      worst = std::max(worst, torsion_identity_residual(bg.metric.g(x), can.minus(x), h(x)));
  }
  return {worst < 1e-5, fmt("max |g(T(X,Y),Z) + H(X,Y,Z)| = %.2e (tol 1e-5)", worst)};
}

Outcome criterion3() {
  std::mt19937_64 rng(103);
  double full = 0.0, plus_only = 0.0;
  for (const Background& bg : {twisted_s3(), su2_family(1.0, 1.0)}) {
    for (int k = 0; k < 20; ++k) {
      const std::vector<Vec> xs{oracle::random_vec(rng, 3, 0.5)};
      const Shift shift{random_antisym_field(rng, bg.metric, 3), random_antisym_field(rng, bg.metric, 3)};
      const VariationReport r = check_variation_theorem(bg.ca, bg.metric, levi_civita_pair(bg.metric), shift, xs, 1e-4);
      full = std::max(full, r.residual);
      plus_only = std::max(plus_only, r.plus_only_residual);
    }
  }
  return {full < 1e-4 && plus_only < 1e-5, fmt("variation %.2e (tol 1e-4), plus-only %.2e (tol 1e-5)", full, plus_only)};
}

Outcome criterion4() {
  std::mt19937_64 rng(104);
  double resid = 0.0, t2 = 0.0, t3 = 0.0;
  for (const auto& name : background_names()) {
    const Background bg = background(name);
    const auto xs = samples(rng, bg.ca.dim(), 10, 0.5);
    const auto r = check_exact_theorem(bg.ca, bg.metric, levi_civita_pair(bg.metric), true, xs, 1e-4, 1e-5);
    resid = std::max(resid, r.residual);
    t2 = std::max(t2, r.t2);
    t3 = std::max(t3, r.t3);
  }
  return {resid < 1e-4 && t2 < 1e-5 && t3 < 1e-5, fmt("|GRic - Ric| %.2e (tol 1e-4), T2 %.2e, T3 %.2e (tol 1e-5)", resid, t2, t3)};
}

Outcome criterion5() {
  std::mt19937_64 rng(105);
  const Background bg = su2_family(1.0, 1.0);
  const MatField g = [&bg](const Vec& x) { return bg.metric.g(x); };
  const ThreeForm h = effective_h(bg.ca, bg.metric);
  double ric = 0.0;
  for (const Vec& x : samples(rng, 3, 5, 0.7)) ric = std::max(ric, classical_ricci_gH(g, h, x).cwiseAbs().maxCoeff());
  const ReducedOde ode = invariant_ansatz_reduce(su2_wzw_family(1.0), Vec::Ones(1));
  const double rhs = ode.rhs(Vec::Ones(1)).cwiseAbs().maxCoeff();
  return {ric < 1e-5 && rhs < 1e-5, fmt("max |Ric(g,H)| %.2e, reduced RHS %.2e (tol 1e-5)", ric, rhs)};
}

double round_s3_error(double h) {
  const ReducedOde ode = invariant_ansatz_reduce(round_s3_family(), Vec::Ones(1));
  FlowOptions opts;
  opts.t_end = 0.1;
  opts.h = h;
  const FlowTrajectory traj = ode.integrate(Vec::Ones(1), opts);
  double err = 0.0;
  for (const auto& p : traj.points) err = std::max(err, std::abs(p.state(0) - (1.0 - 4.0 * p.t)));
  return err;
}

Outcome criterion6() {
  const double err = round_s3_error(1e-3);
  return {err < 1e-4, fmt("max |r^2(t) - (1 - 4t)| = %.2e (tol 1e-4)", err)};
}

Outcome criterion6b() {
  const double e1 = round_s3_error(1e-3), e2 = round_s3_error(5e-4);
  const double ratio = e1 / e2;
  return {ratio >= 12.0 && ratio <= 20.0,
          fmt("error ratio h/(h/2) = %.2f (want 12-20); errors %.2e, %.2e", ratio, e1, e2)};
}

Outcome criterion7() {
  std::mt19937_64 rng(107);
  double worst = 0.0;
  for (const auto& name : builtin_algebra_names()) {
    const QuadraticLieAlgebra alg = builtin_algebra(name);
    const int h = alg.dim() / 2;
    const PointMetric base(alg.pairing(), default_vplus(alg));
    for (int k = 0; k < 3; ++k) {
      const PointMetric pm = k == 0 ? base
                                    : deform(base, DeformationForm{oracle::random_matrix(rng, h, h, 0.2),
                                                                   base.plus_basis().vectors, base.minus_basis().vectors},
                                             1.0);
      const GRicResult gr = gric_point(alg, pm);
      const Mat p = pm.v_plus().basis() * (Mat::Identity(h, h) + oracle::random_matrix(rng, h, h, 0.3));
      const Mat m = pm.v_minus().basis();
      for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b)
          worst = std::max(worst, std::abs(gr.value(a, b) - oracle::gric_point(alg.structure_constants(), alg.pairing().matrix(),
                                                                              p, m, gr.plus_basis.col(a), gr.minus_basis.col(b))));
    }
  }
  return {worst < 1e-12, fmt("max |GRic - oracle| = %.2e (tol 1e-12)", worst)};
}

Outcome criterion8() {
  std::mt19937_64 rng(108);
  double fit = 0.0, thm = 0.0;
  for (const auto& name : {"su2_semiabelian", "sl2c"}) {
    const ManinTriple t = builtin_triple(name);
    const auto xa = samples(rng, 3, 5, 0.4), xb = samples(rng, 3, 5, 0.4);
    const DualityReport r = duality_compare(t, default_vplus(t.algebra()), xa, xb, 1e-4);
    fit = std::max(fit, r.residual);
    for (const auto& s : r.sides) thm = std::max(thm, s.theorem_residual);
  }
  return {fit < 1e-4, fmt("gauge-fit residual %.2e (tol 1e-4); residual with predicted gauge %.2e", fit, thm)};
}

Outcome criterion9() {
  std::mt19937_64 rng(109);
  double worst = 0.0;
  for (const auto& name : {"su2_semiabelian", "sl2c"}) {
    const ManinTriple t = builtin_triple(name);
    for (Side side : {Side::A, Side::B})
      worst = std::max(worst, pullback_naturality_check(t, side, samples(rng, 3, 5, 0.6), 1e-5).residual);
  }
  return {worst < 1e-5, fmt("max |c(phi*) - phi*c| = %.2e (tol 1e-5)", worst)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> all{
      {"1", criterion1}, {"2", criterion2}, {"3", criterion3},   {"4", criterion4}, {"5", criterion5},
      {"6", criterion6}, {"6b", criterion6b}, {"7", criterion7}, {"8", criterion8}, {"9", criterion9}};
  std::vector<std::string> wanted(argv + 1, argv + argc);
  bool ok = true;
  for (const auto& [id, fn] : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %-2s  %s  [%.2f s]\n", o.pass ? "PASS" : "FAIL", id.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
