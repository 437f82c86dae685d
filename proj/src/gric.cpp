#include "courant/gric.hpp"

#include <cmath>

#include "courant/error.hpp"
#include "courant/finite_diff.hpp"
#include "courant/kernels.hpp"

namespace courant {

namespace {

// Orientation of the two diagram terms and of s-. These are the only choices
// for which GRic(nabla + a) - GRic(nabla) = <[s-, u+], v-> holds.
constexpr double kDoubleVertexSign = 1.0;
constexpr double kLoopSign = 1.0;
constexpr double kSMinusSign = -1.0;

Mat block_diag(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace

Mat double_vertex_term(const Tensor3& c, const Vec& sg, int np) {
  const int n = static_cast<int>(c.dim());
  const int nm = n - np;
  const std::size_t inner = static_cast<std::size_t>(np * nm);
  std::vector<double> x(static_cast<std::size_t>(np) * inner), y(inner * static_cast<std::size_t>(nm)),
      out(static_cast<std::size_t>(np * nm));
  for (int u = 0; u < np; ++u)
    for (int a = 0; a < np; ++a)
      for (int b = 0; b < nm; ++b)
        x[static_cast<std::size_t>(u) * inner + static_cast<std::size_t>(a * nm + b)] =
            sg(a) * sg(np + b) * c(u, a, np + b);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < nm; ++b)
      for (int v = 0; v < nm; ++v)
        y[static_cast<std::size_t>(a * nm + b) * static_cast<std::size_t>(nm) + static_cast<std::size_t>(v)] =
            c(a, np + b, np + v);
  kernels::gemm(x, y, out, static_cast<std::size_t>(np), inner, static_cast<std::size_t>(nm));
  Mat res(np, nm);
  for (int u = 0; u < np; ++u)
    for (int v = 0; v < nm; ++v) res(u, v) = kDoubleVertexSign * out[static_cast<std::size_t>(u * nm + v)];
  return res;
}

GRicResult gric_point(const QuadraticLieAlgebra& algebra, const PointMetric& metric) {
  const Mat& p = metric.plus_basis().vectors;
  const Mat& m = metric.minus_basis().vectors;
  Mat q(p.rows(), p.cols() + m.cols());
  q << p, m;
  Vec sg(q.cols());
  sg << metric.plus_basis().signs, metric.minus_basis().signs;
  const Tensor3 c = change_basis(algebra.cartan_tensor(), q);
  GRicResult r;
  r.t2 = double_vertex_term(c, sg, static_cast<int>(p.cols()));
  r.value = r.t2;
  r.t1 = Mat::Zero(r.value.rows(), r.value.cols());
  r.t3 = r.t1;
  r.plus_basis = p;
  r.minus_basis = m;
  r.connection = "zero";
  return r;
}

namespace {

Tensor3 covariant_derivative_c(const ExactChartCA& ca, const ChartMetric& metric, const ChartConnection& nabla,
                               const Vec& x, int l, const Tensor3& c0, const Mat& omega, double step) {
  const auto cl = [&](const Vec& p) { return torsion_c_frame(ca, metric, nabla, p); };
  Tensor3 dc = central_diff(cl, x, l, step);
  const int n = static_cast<int>(c0.dim());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int m = 0; m < n; ++m)
          s += omega(m, i) * c0(m, j, k) + omega(m, j) * c0(i, m, k) + omega(m, k) * c0(i, j, m);
        dc(i, j, k) -= s;
      }
  return dc;
}

}  // namespace

GRicResult gric_chart(const ExactChartCA& ca, const ChartMetric& metric, const ChartConnection& nabla, const Vec& x,
                      ChartSteps steps) {
  ca.check_domain(x);
  const int d = metric.dim();
  const Mat f = metric.frame(x);
  const Mat rf = f / std::sqrt(2.0);  // rho of the signed basis vectors
  const SignedOrthoBasis pb = metric.plus_basis(x);
  const SignedOrthoBasis mb = metric.minus_basis(x);
  const Mat& eta = ca.pairing().matrix();
  const Mat lm = metric.lift_minus(x);
  const Mat change = block_diag(rf, rf);
  Vec sg(2 * d);
  sg << pb.signs, mb.signs;

  GRicResult r;
  r.plus_basis = pb.vectors;
  r.minus_basis = mb.vectors;
  r.connection = "chart";

  // Curvature trace over V-.
  const auto curv = curvature(nabla.minus, x, steps.outer);
  r.t1 = Mat::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int v = 0; v < d; ++v)
      for (int b = 0; b < d; ++b) {
        Vec rz = Vec::Zero(d);
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) rz += rf(k, b) * rf(l, a) * (curv[k][l] * rf.col(v));
        r.t1(a, v) += mb.signs(b) * (lm * rz).dot(eta * mb.vectors.col(b));
      }

  const Tensor3 c_frame = torsion_c_frame(ca, metric, nabla, x);
  r.t2 = double_vertex_term(change_basis(c_frame, change), sg, d);

  const std::vector<Mat> omega = frame_coefficients(nabla, x);
  r.t3 = Mat::Zero(d, d);
  for (int l = 0; l < d; ++l) {
    const Tensor3 dc =
        change_basis(covariant_derivative_c(ca, metric, nabla, x, l, c_frame, omega[static_cast<std::size_t>(l)],
                                            steps.outer),
                     change);
    for (int a = 0; a < d; ++a)
      for (int v = 0; v < d; ++v)
        for (int b = 0; b < d; ++b) r.t3(a, v) += kLoopSign * mb.signs(b) * rf(l, b) * dc(a, d + v, d + b);
  }
  r.value = r.t1 + r.t2 + r.t3;
  return r;
}

Mat ricci_of(const CoeffField& a, const Vec& x, double step) {
  const auto r = curvature(a, x, step);
  const int d = static_cast<int>(x.size());
  Mat ric = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) ric(i, j) += r[k][i](k, j);
  return ric;
}

Mat classical_ricci_gH(const MatField& g, const ThreeForm& h, const Vec& x, ChartSteps steps) {
  if (g(x).llt().info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "g is not positive definite");
  const CoeffField a = [g, h, steps](const Vec& p) { return torsionful(g, h, p, steps.inner); };
  return ricci_of(a, x, steps.outer);
}

Vec s_minus_correction(const ChartMetric& metric, const CoeffField& a_minus, const Vec& x) {
  const int d = metric.dim();
  const SignedOrthoBasis mb = metric.minus_basis(x);
  const Mat lm = metric.lift_minus(x);
  const Mat rf = metric.frame(x) / std::sqrt(2.0);
  const Coefficients a = a_minus(x);
  const Pairing eta = Pairing::split(d);
  Vec s = Vec::Zero(2 * d);
  for (int c = 0; c < d; ++c) {
    double pair = 0.0;  // <s-, m_c>
    for (int b = 0; b < d; ++b) {
      Mat ax = Mat::Zero(d, d);
      for (int i = 0; i < d; ++i) ax += rf(i, b) * a[static_cast<std::size_t>(i)];
      pair += mb.signs(b) * eta(lm * (ax * rf.col(b)), mb.vectors.col(c));
    }
    s += mb.signs(c) * pair * mb.vectors.col(c);
  }
  return kSMinusSign * s;
}

ChartSection s_minus_section(const ChartMetric& metric, CoeffField a_minus) {
  return [metric, a = std::move(a_minus)](const Vec& x) { return s_minus_correction(metric, a, x); };
}

Mat inner_derivation_signed(const ExactChartCA& ca, const ChartMetric& metric, const ChartSection& s, const Vec& x,
                            double step) {
  const int d = metric.dim();
  const SignedOrthoBasis mb = metric.minus_basis(x);
  Mat out(d, d);
  for (int a = 0; a < d; ++a) {
    const ChartSection ua = [&metric, a](const Vec& p) { return Vec(metric.plus_basis(p).vectors.col(a)); };
    const Vec br = bracket(ca, s, ua, x, step);
    for (int b = 0; b < d; ++b) out(a, b) = ca.pairing()(br, mb.vectors.col(b));
  }
  return out;
}

VariationReport check_variation_theorem(const ExactChartCA& ca, const ChartMetric& metric,
                                        const ChartConnection& nabla, const Shift& shift, std::span<const Vec> samples,
                                        double tol, ChartSteps steps) {
  VariationReport rep;
  rep.tol = tol;
  if (samples.empty()) return rep;
  const ChartConnection varied = vary(nabla, shift, metric, samples[0]);
  const ChartConnection plus_only = vary(nabla, Shift{shift.plus, {}}, metric, samples[0]);
  const ChartSection s = shift.minus ? s_minus_section(metric, shift.minus) : constant_section(Vec::Zero(2 * metric.dim()));
  for (const Vec& x : samples) {
    const Mat base = gric_chart(ca, metric, nabla, x, steps).value;
    const Mat moved = gric_chart(ca, metric, varied, x, steps).value;
    const Mat inner = inner_derivation_signed(ca, metric, s, x, steps.outer);
    rep.residual = std::max(rep.residual, (moved - base - inner).cwiseAbs().maxCoeff());
    const Mat plus_moved = gric_chart(ca, metric, plus_only, x, steps).value;
    rep.plus_only_residual = std::max(rep.plus_only_residual, (plus_moved - base).cwiseAbs().maxCoeff());
  }
  rep.pass = rep.residual < tol && rep.plus_only_residual < tol;
  return rep;
}

ExactTheoremReport check_exact_theorem(const ExactChartCA& ca, const ChartMetric& metric, const ChartConnection& seed,
                                       bool canonical, std::span<const Vec> samples, double tol, double term_tol,
                                       ChartSteps steps) {
  ExactTheoremReport rep;
  rep.tol = tol;
  rep.term_tol = term_tol;
  const ChartConnection nabla = canonical ? canonical_minus(ca, metric, seed) : seed;
  const ThreeForm h = effective_h(ca, metric, steps.inner);
  const MatField g = [metric](const Vec& p) { return metric.g(p); };
  const CoeffField a_minus = [ca, metric, seed](const Vec& p) { return canonical_correction(ca, metric, seed, p); };
  const ChartSection s = s_minus_section(metric, a_minus);
  for (const Vec& x : samples) {
    const GRicResult gr = gric_chart(ca, metric, nabla, x, steps);
    const Mat ric = coord_to_signed(metric, x, classical_ricci_gH(g, h, x, steps));
    Mat diff = gr.value - ric;
    if (!canonical) diff -= inner_derivation_signed(ca, metric, s, x, steps.outer);
    rep.residual = std::max(rep.residual, diff.cwiseAbs().maxCoeff());
    if (canonical) {
      rep.t2 = std::max(rep.t2, gr.t2.cwiseAbs().maxCoeff());
      rep.t3 = std::max(rep.t3, gr.t3.cwiseAbs().maxCoeff());
    }
  }
  rep.pass = rep.residual < tol && (!canonical || (rep.t2 < term_tol && rep.t3 < term_tol));
  return rep;
}

}  // namespace courant
