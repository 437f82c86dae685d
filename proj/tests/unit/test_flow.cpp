#include <doctest.h>

#include "courant/catalog.hpp"
#include "courant/error.hpp"
#include "courant/flow.hpp"
#include "oracles.hpp"

using namespace courant;

namespace {

double exp_decay_error(double h, bool rk4) {
  const FlowRhs rhs = [](const Vec& y, double* norm) {
    if (norm) *norm = y.cwiseAbs().maxCoeff();
    return Vec(-y);
  };
  const MarginFn margin = [](const Vec&) { return 1.0; };
  FlowOptions opts;
  opts.t_end = 1.0;
  opts.h = h;
  const FlowTrajectory traj = rk4 ? integrate_rk4(rhs, margin, Vec::Ones(1), opts) : integrate_euler(rhs, margin, Vec::Ones(1), opts);
  return std::abs(traj.points.back().state(0) - std::exp(-traj.points.back().t));
}

}  // namespace

TEST_CASE("RK4 is fourth order and Euler first order") {
  const double r4 = exp_decay_error(0.1, true) / exp_decay_error(0.05, true);
  CHECK(r4 > 14.0);
  CHECK(r4 < 18.0);
  const double r1 = exp_decay_error(0.01, false) / exp_decay_error(0.005, false);
  CHECK(r1 > 1.8);
  CHECK(r1 < 2.2);
}

TEST_CASE("integrator bookkeeping") {
  const FlowRhs rhs = [](const Vec&, double* norm) {
    if (norm) *norm = 1.0;
    return Vec(Vec::Constant(1, -1.0));
  };
  const MarginFn margin = [](const Vec& y) { return y(0); };
  FlowOptions opts;
  opts.t_end = 1.0;
  opts.h = 0.1;
  opts.record_every = 2;
  const FlowTrajectory ok = integrate_rk4(rhs, margin, Vec::Constant(1, 2.0), opts);
  CHECK(ok.stop_reason.empty());
  CHECK(ok.points.size() == 6);
  CHECK(ok.points.back().t == doctest::Approx(1.0));
  CHECK_THROWS_AS(integrate_rk4(rhs, margin, Vec::Constant(1, 0.55), opts), Error);
}

TEST_CASE("round S^3: r^2 decreases at rate 4") {
  const InvariantFamily fam = round_s3_family();
  const ReducedOde ode = invariant_ansatz_reduce(fam, Vec::Ones(1));
  FlowOptions opts;
  opts.t_end = 0.1;
  opts.h = 1e-3;
  const FlowTrajectory traj = ode.integrate(Vec::Ones(1), opts);
  double err = 0.0;
  for (const auto& p : traj.points) err = std::max(err, std::abs(p.state(0) - (1.0 - 4.0 * p.t)));
  CHECK(err < 1e-4);
}

TEST_CASE("reduced ODEs against analytic right-hand sides") {
  SUBCASE("Berger sphere") {
    const ReducedOde ode = invariant_ansatz_reduce(squashed_s3_family(), (Vec(2) << 1.0, 0.6).finished());
    for (const Vec& pq : {Vec((Vec(2) << 1.0, 0.6).finished()), Vec((Vec(2) << 1.4, 1.1).finished())}) {
      const double a = pq(0), c = pq(1);
      const Vec expected = (Vec(2) << -2.0 + c / a, -c * c / (a * a)).finished();
      CHECK((ode.rhs(pq) - expected).cwiseAbs().maxCoeff() < 1e-5);
    }
  }
  SUBCASE("SU(2) with H = lambda vol") {
    const double lambda = 0.8;
    const ReducedOde ode = invariant_ansatz_reduce(su2_wzw_family(lambda), Vec::Ones(1));
    for (double p : {0.9, 1.3}) {
      const Vec pv = Vec::Constant(1, p);
      CHECK(std::abs(ode.rhs(pv)(0) + (1.0 - lambda * lambda / (p * p))) < 1e-5);
    }
    const ReducedOde wzw = invariant_ansatz_reduce(su2_wzw_family(1.0), Vec::Ones(1));
    CHECK(std::abs(wzw.rhs(Vec::Ones(1))(0)) < 1e-5);
  }
}

TEST_CASE("non-invariant ansatz is rejected") {
  InvariantFamily fam = round_s3_family();
  fam.coframe = [](const Vec& x) { return Mat((1.0 + 2.0 * x(0)) * su2_coframe(x)); };
  CHECK_THROWS_AS(invariant_ansatz_reduce(fam, Vec::Ones(1)), Error);
}

TEST_CASE("chart flow RHS matches -2 Ric for the canonical gauge") {
  const Background bg = round_s3(2.0);
  const Vec x = (Vec(3) << 0.1, 0.2, -0.1).finished();
  const Mat rhs = chart_flow_rhs(bg, x);
  const MatField g = [&bg](const Vec& y) { return bg.metric.g(y); };
  // Round S^3 of radius r: Ric = 2 g / r^2.
  CHECK((rhs + 2.0 * 2.0 * g(x) / 4.0).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("point flow and gauge equivalence") {
  std::mt19937_64 rng(19);
  const QuadraticLieAlgebra alg = builtin_algebra("su2_semiabelian");
  const PointMetric start(alg.pairing(), default_vplus(alg));
  const PointFlow flow(alg, start);
  CHECK(flow.state_of(start).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(flow.metric(flow.state_of(start)).v_plus().same_span(start.v_plus()));
  FlowOptions opts;
  opts.t_end = 0.05;
  opts.h = 1e-3;
  const FlowTrajectory traj = flow.integrate(start, opts);
  CHECK(traj.stop_reason.empty());
  CHECK(traj.points.back().margin > 0.0);
  // RK4 and Euler agree to first order.
  const FlowTrajectory euler = flow.integrate_euler(start, opts);
  CHECK((traj.points.back().state - euler.points.back().state).cwiseAbs().maxCoeff() < 1e-2);
  const Vec z = oracle::random_vec(rng, 6, 0.5);
  const GaugeEquivalenceReport rep = gauge_equivalence(alg, start, z, opts);
  CHECK(rep.pass);
  CHECK(rep.fit_residual < 1e-4);
}

TEST_CASE("flat torus does not move") {
  const ReducedOde ode = invariant_ansatz_reduce(flat_torus_family(), Vec::Ones(flat_torus_family().param_names.size()));
  CHECK(ode.rhs(Vec::Ones(flat_torus_family().param_names.size())).cwiseAbs().maxCoeff() < 1e-8);
}
