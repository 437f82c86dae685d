#include "courant/genmetric.hpp"

#include <cmath>

#include "courant/error.hpp"
#include "courant/finite_diff.hpp"

namespace courant {

namespace {

double min_eigenvalue(const Mat& sym) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (sym + sym.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

PointMetric::PointMetric(Pairing pairing, Subspace v_plus)
    : pairing_(std::move(pairing)),
      v_plus_(std::move(v_plus)),
      v_minus_(orthogonal_complement(pairing_, v_plus_).complement),
      proj_(projector_pair(pairing_, v_plus_)),
      plus_(signed_ortho_basis(pairing_, v_plus_)),
      minus_(signed_ortho_basis(pairing_, v_minus_)) {}

double PointMetric::positivity_margin() const {
  const Mat qp = v_plus_.orthonormal();
  const Mat qm = v_minus_.orthonormal();
  return std::min(min_eigenvalue(pairing_.gram(qp)), min_eigenvalue(-pairing_.gram(qm)));
}

Subspace from_gb(const Pairing& pairing, const Splitting& splitting, const Mat& g, const Mat& b) {
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::NotPositiveDefinite, "g is not symmetric");
  if (g.llt().info() != Eigen::Success || min_eigenvalue(g) <= 0.0)
    throw Error(ErrorCode::NotPositiveDefinite, "g is not positive definite");
  if ((b + b.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::InvalidArgument, "b is not antisymmetric");
  return graph_of_map(pairing, splitting, g + b);
}

GB to_gb(const Pairing& pairing, const Splitting& splitting, const Subspace& v_plus) {
  const Mat e = extract_graph_map(pairing, splitting, v_plus);
  return {0.5 * (e + e.transpose()), 0.5 * (e - e.transpose())};
}

Mat DeformationForm::map(const Pairing& pairing) const {
  const Mat& eta = pairing.matrix();
  const Mat gp = plus_basis.transpose() * eta * plus_basis;
  const Mat gm = minus_basis.transpose() * eta * minus_basis;
  const Mat coeff_plus = gp.ldlt().solve(plus_basis.transpose() * eta);
  return minus_basis * gm.ldlt().solve(c.transpose()) * coeff_plus;
}

DeformationForm zero_deformation(const PointMetric& metric) {
  const Mat& p = metric.plus_basis().vectors;
  const Mat& m = metric.minus_basis().vectors;
  return {Mat::Zero(p.cols(), m.cols()), p, m};
}

PointMetric deform(const PointMetric& metric, const DeformationForm& c, double t) {
  const Mat s = c.map(metric.pairing());
  const Mat& p = metric.plus_basis().vectors;
  const Mat moved = p + t * (s * p);
  try {
    return PointMetric(metric.pairing(), Subspace(moved));
  } catch (const Error& err) {
    throw Error(ErrorCode::PositivityLost, std::string("deformed subspace is not a generalized metric (") + err.what() + ")");
  }
}

DeformationForm inner_derivation_deformation(const QuadraticLieAlgebra& algebra, const PointMetric& metric,
                                             const Vec& s) {
  DeformationForm out = zero_deformation(metric);
  const Mat ad = algebra.ad(s);
  out.c = out.plus_basis.transpose() * ad.transpose() * algebra.pairing().matrix() * out.minus_basis;
  return out;
}

ChartMetric::ChartMetric(int d, MatField e) : d_(d), e_(std::move(e)) {
  if (d <= 0 || !e_) throw Error(ErrorCode::InvalidArgument, "chart metric needs a dimension and a graph map");
}

ChartMetric ChartMetric::from_gb(int d, MatField g, MatField b) {
  if (!b) return ChartMetric(d, std::move(g));
  return ChartMetric(d, [g = std::move(g), b = std::move(b)](const Vec& x) { return Mat(g(x) + b(x)); });
}

Mat ChartMetric::g(const Vec& x) const {
  const Mat e = e_(x);
  return 0.5 * (e + e.transpose());
}

Mat ChartMetric::b(const Vec& x) const {
  const Mat e = e_(x);
  return 0.5 * (e - e.transpose());
}

Mat ChartMetric::lift_plus(const Vec& x) const {
  Mat out(2 * d_, d_);
  out << Mat::Identity(d_, d_), e_(x).transpose();
  return out;
}

Mat ChartMetric::lift_minus(const Vec& x) const {
  Mat out(2 * d_, d_);
  out << Mat::Identity(d_, d_), -e_(x);
  return out;
}

Mat ChartMetric::lift_frame(const Vec& x) const {
  const Mat e = e_(x);
  Mat out(2 * d_, 2 * d_);
  out << Mat::Identity(d_, d_), Mat::Identity(d_, d_), e.transpose(), -e;
  return out;
}

Mat ChartMetric::frame(const Vec& x) const {
  Eigen::LLT<Mat> llt(g(x));
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "g is not positive definite");
  const Mat l = llt.matrixL();
  return l.transpose().triangularView<Eigen::Upper>().solve(Mat::Identity(d_, d_));
}

SignedOrthoBasis ChartMetric::plus_basis(const Vec& x) const {
  return {lift_plus(x) * frame(x) / std::sqrt(2.0), Vec::Ones(d_)};
}

SignedOrthoBasis ChartMetric::minus_basis(const Vec& x) const {
  return {lift_minus(x) * frame(x) / std::sqrt(2.0), -Vec::Ones(d_)};
}

double ChartMetric::positivity_margin(const Vec& x) const { return min_eigenvalue(g(x)); }

ChartMetric ChartMetric::deformed(MatField edot, double t) const {
  return ChartMetric(d_, [e = e_, edot = std::move(edot), t](const Vec& x) { return Mat(e(x) + t * edot(x)); });
}

Mat coord_to_signed(const ChartMetric& metric, const Vec& x, const Mat& coord) {
  const Mat f = metric.frame(x);
  return 0.5 * f.transpose() * coord * f;
}

Mat signed_to_coord(const ChartMetric& metric, const Vec& x, const Mat& sig) {
  const Mat finv = metric.frame(x).inverse();
  return 2.0 * finv.transpose() * sig * finv;
}

Mat lie_derivative(const MatField& e, const std::function<Vec(const Vec&)>& x_field, const Vec& at, double step) {
  const Vec xv = x_field(at);
  const Mat dx = jacobian(x_field, at, step);
  const Mat ev = e(at);
  Mat out = dx.transpose() * ev + ev * dx;
  for (int k = 0; k < at.size(); ++k) out += xv(k) * central_diff(e, at, k, step);
  return out;
}

Mat inner_derivation_deformation(const ExactChartCA& ca, const ChartMetric& metric, const ChartSection& s,
                                 const Vec& x, double step) {
  const int d = metric.dim();
  const Mat lm = metric.lift_minus(x);
  Mat out(d, d);
  for (int i = 0; i < d; ++i) {
    const ChartSection ui = [&metric, i](const Vec& p) { return Vec(metric.lift_plus(p).col(i)); };
    const Vec br = bracket(ca, s, ui, x, step);
    for (int j = 0; j < d; ++j) out(i, j) = ca.pairing()(br, lm.col(j));
  }
  return out;
}

}  // namespace courant
