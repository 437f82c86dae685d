#include "courant/flow.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "courant/connection.hpp"
#include "courant/error.hpp"

namespace courant {

namespace {

using Stepper = std::function<Vec(const Vec& y, const Vec& k1, double h)>;

FlowTrajectory run(const FlowRhs& rhs, const MarginFn& margin, const Vec& y0, const FlowOptions& opts,
                   const Stepper& step) {
  if (!(opts.h > 0.0) || !(opts.t_end > 0.0)) throw Error(ErrorCode::InvalidArgument, "flow needs h > 0 and t_end > 0");
  const long steps = std::lround(opts.t_end / opts.h);
  const int every = std::max(1, opts.record_every);
  FlowTrajectory traj;
  Vec y = y0;
  double norm = 0.0;
  Vec k1 = rhs(y, &norm);
  traj.points.push_back({0.0, y, norm, margin(y)});
  for (long s = 1; s <= steps; ++s) {
    const double t = static_cast<double>(s) * opts.h;
    Vec next;
    try {
      next = step(y, k1, opts.h);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::PositivityLost) throw;
      std::ostringstream msg;
      msg << "stage evaluation failed near t = " << t << " (" << err.what() << ")";
      throw Error(ErrorCode::StepRejected, msg.str());
    }
    const double m = margin(next);
    if (!(m > 0.0) || !next.allFinite()) {
      std::ostringstream msg;
      msg << "generalized metric lost at t = " << t;
      throw Error(ErrorCode::PositivityLost, msg.str());
    }
    y = next;
    k1 = rhs(y, &norm);
    const bool last = s == steps;
    std::string reason;
    if (m < opts.min_margin) reason = "positivity margin below threshold";
    if (norm > opts.blowup) reason = "GRic norm above blow-up threshold";
    if (s % every == 0 || last || !reason.empty()) traj.points.push_back({t, y, norm, m});
    if (!reason.empty()) {
      traj.stop_reason = reason;
      break;
    }
  }
  return traj;
}

}  // namespace

FlowTrajectory integrate_rk4(const FlowRhs& rhs, const MarginFn& margin, const Vec& y0, const FlowOptions& opts) {
  return run(rhs, margin, y0, opts, [&rhs](const Vec& y, const Vec& k1, double h) {
    const Vec k2 = rhs(y + 0.5 * h * k1, nullptr);
    const Vec k3 = rhs(y + 0.5 * h * k2, nullptr);
    const Vec k4 = rhs(y + h * k3, nullptr);
    return Vec(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  });
}

FlowTrajectory integrate_euler(const FlowRhs& rhs, const MarginFn& margin, const Vec& y0, const FlowOptions& opts) {
  return run(rhs, margin, y0, opts, [](const Vec& y, const Vec& k1, double h) { return Vec(y + h * k1); });
}

PointFlow::PointFlow(QuadraticLieAlgebra algebra, const PointMetric& reference, std::optional<Vec> gauge)
    : algebra_(std::move(algebra)),
      ref_plus_(reference.plus_basis().vectors),
      ref_minus_(reference.minus_basis().vectors),
      gauge_(std::move(gauge)) {
  Mat r(ref_plus_.rows(), ref_plus_.cols() + ref_minus_.cols());
  r << ref_plus_, ref_minus_;
  ref_inverse_ = r.inverse();
}

PointMetric PointFlow::metric(const Vec& state) const {
  const Eigen::Index np = ref_plus_.cols(), nm = ref_minus_.cols();
  const Mat q = Eigen::Map<const Mat>(state.data(), nm, np);
  return PointMetric(algebra_.pairing(), Subspace(ref_plus_ + ref_minus_ * q));
}

Vec PointFlow::state_of(const PointMetric& m) const {
  const Eigen::Index np = ref_plus_.cols();
  const Mat coords = ref_inverse_ * m.v_plus().basis();
  const Mat q = coords.bottomRows(coords.rows() - np) * coords.topRows(np).inverse();
  return Eigen::Map<const Vec>(q.data(), q.size());
}

DeformationForm PointFlow::flow_rhs(const PointMetric& m) const {
  const GRicResult gr = gric_point(algebra_, m);
  DeformationForm c{-2.0 * gr.value, gr.plus_basis, gr.minus_basis};
  if (gauge_) c.c += inner_derivation_deformation(algebra_, m, *gauge_).c;
  return c;
}

Vec PointFlow::rhs(const Vec& state, double* gric_norm) const {
  const Eigen::Index np = ref_plus_.cols(), nm = ref_minus_.cols();
  const PointMetric m = metric(state);
  const DeformationForm c = flow_rhs(m);
  if (gric_norm) *gric_norm = gric_point(algebra_, m).value.cwiseAbs().maxCoeff();
  const Mat q = Eigen::Map<const Mat>(state.data(), nm, np);
  const Mat basis = ref_plus_ + ref_minus_ * q;
  const Mat coords = ref_inverse_ * (c.map(algebra_.pairing()) * basis);
  const Mat dq = coords.bottomRows(nm) - q * coords.topRows(np);
  return Eigen::Map<const Vec>(dq.data(), dq.size());
}

double PointFlow::margin(const Vec& state) const {
  try {
    return metric(state).positivity_margin();
  } catch (const Error&) {
    return -1.0;
  }
}

FlowTrajectory PointFlow::integrate(const PointMetric& start, const FlowOptions& opts) const {
  return integrate_rk4([this](const Vec& y, double* n) { return rhs(y, n); },
                       [this](const Vec& y) { return margin(y); }, state_of(start), opts);
}

FlowTrajectory PointFlow::integrate_euler(const PointMetric& start, const FlowOptions& opts) const {
  return courant::integrate_euler([this](const Vec& y, double* n) { return rhs(y, n); },
                                  [this](const Vec& y) { return margin(y); }, state_of(start), opts);
}

Mat chart_flow_rhs(const Background& bg, const Vec& x, const ChartSection* gauge, ChartSteps steps,
                   double* gric_norm) {
  const ChartConnection nabla = canonical_minus(bg.ca, bg.metric, levi_civita_pair(bg.metric, steps.inner));
  const GRicResult gr = gric_chart(bg.ca, bg.metric, nabla, x, steps);
  if (gric_norm) *gric_norm = gr.value.cwiseAbs().maxCoeff();
  Mat edot = signed_to_coord(bg.metric, x, -2.0 * gr.value);
  if (gauge) edot += inner_derivation_deformation(bg.ca, bg.metric, *gauge, x, steps.outer);
  return edot;
}

Vec ReducedOde::rhs(const Vec& params, double* gric_norm) const {
  const Background bg = family.realize(params);
  const Mat edot = chart_flow_rhs(bg, reference_point, nullptr, {}, gric_norm);
  const Mat thinv = family.coframe(reference_point).inverse();
  return family.read(thinv.transpose() * edot * thinv, params);
}

double ReducedOde::consistency(const Vec& params) const {
  const Background bg = family.realize(params);
  const Mat e1 = chart_flow_rhs(bg, check_point);
  const Mat thinv = family.coframe(check_point).inverse();
  const Vec other = family.read(thinv.transpose() * e1 * thinv, params);
  return (rhs(params) - other).cwiseAbs().maxCoeff();
}

double ReducedOde::margin(const Vec& params) const {
  const Mat e = family.frame_e(params);
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (e + e.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

FlowTrajectory ReducedOde::integrate(const Vec& params0, const FlowOptions& opts) const {
  return integrate_rk4([this](const Vec& y, double* n) { return rhs(y, n); },
                       [this](const Vec& y) { return margin(y); }, params0, opts);
}

ReducedOde invariant_ansatz_reduce(const InvariantFamily& family, const Vec& params, double tol) {
  const int d = family.chart_dim;
  ReducedOde ode{family, Vec::Zero(d), Vec::Zero(d), tol};
  for (int i = 0; i < d; ++i) {
    ode.reference_point(i) = 0.1 + 0.05 * i;
    ode.check_point(i) = (i % 2 == 0 ? -0.3 : 0.25) + 0.02 * i;
  }
  const double r = ode.consistency(params);
  if (!(r <= tol)) {
    std::ostringstream msg;
    msg << "reduced right-hand side differs between sample points by " << r;
    throw Error(ErrorCode::NotInvariant, msg.str());
  }
  return ode;
}

GaugeEquivalenceReport gauge_equivalence(const QuadraticLieAlgebra& algebra, const PointMetric& start, const Vec& z,
                                         const FlowOptions& opts, double tol) {
  const PointFlow plain(algebra, start);
  const PointFlow gauged(algebra, start, z);
  const FlowTrajectory a = plain.integrate(start, opts);
  const FlowTrajectory b = gauged.integrate(start, opts);
  const double t_end = a.points.back().t;
  const PointMetric va = plain.metric(a.points.back().state);
  const PointMetric vb = gauged.metric(b.points.back().state);

  const auto moved = [&](const Vec& w) { return Subspace(Mat(algebra.ad(w).exp() * va.v_plus().basis())); };
  GaugeEquivalenceReport rep;
  rep.tol = tol;
  rep.direct_residual = moved(t_end * z).max_principal_angle(vb.v_plus());

  const Vec target = gauged.state_of(vb);
  const auto residual = [&](const Vec& w) { return Vec(gauged.state_of(PointMetric(algebra.pairing(), moved(w))) - target); };
  Vec w = Vec::Zero(algebra.dim());
  for (int it = 0; it < 30; ++it) {
    const Vec r = residual(w);
    if (r.cwiseAbs().maxCoeff() < 1e-14) break;
    Mat jac(r.size(), w.size());
    for (int k = 0; k < w.size(); ++k) {
      Vec wp = w, wm = w;
      wp(k) += 1e-6;
      wm(k) -= 1e-6;
      jac.col(k) = (residual(wp) - residual(wm)) / 2e-6;
    }
    // Stabilizer directions have zero Jacobian columns up to difference noise.
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(jac);
    cod.setThreshold(1e-6);
    const Vec step = cod.solve(r);
    double scale = 1.0;
    Vec next = w - step;
    while (scale > 1e-6) {
      try {
        if (residual(next).norm() < r.norm()) break;
      } catch (const Error&) {
      }
      scale *= 0.5;
      next = w - scale * step;
    }
    if (scale <= 1e-6) break;
    w = next;
  }
  rep.generator = w;
  rep.fit_residual = moved(w).max_principal_angle(vb.v_plus());
  rep.pass = rep.direct_residual < tol && rep.fit_residual < tol;
  return rep;
}

}  // namespace courant
