#include "courant/catalog.hpp"

#include <cmath>

#include "courant/algebra.hpp"
#include "courant/error.hpp"

namespace courant {

namespace {

const ExpChart& su2_chart() {
  static const QuadraticLieAlgebra alg = su2();
  static const ExpChart chart(alg, {0, 1, 2});
  return chart;
}

constexpr double kSu2HalfWidth = 1.5;

ThreeForm frame_to_coordinates(double lambda) {
  return [lambda](const Vec& x) {
    const double det = su2_coframe(x).determinant();
    Tensor3 h(3);
    const double v = lambda * det;
    h(0, 1, 2) = h(1, 2, 0) = h(2, 0, 1) = v;
    h(0, 2, 1) = h(2, 1, 0) = h(1, 0, 2) = -v;
    return h;
  };
}

Background left_invariant(const std::string& name, const Mat& frame_e, double lambda) {
  MatField e = [frame_e](const Vec& x) {
    const Mat th = su2_coframe(x);
    return Mat(th.transpose() * frame_e * th);
  };
  ThreeForm h = lambda == 0.0 ? ThreeForm{} : su2_volume_form(lambda);
  return {name, ExactChartCA(3, h, Box::cube(3, kSu2HalfWidth), name), ChartMetric(3, std::move(e))};
}

}  // namespace

Mat su2_coframe(const Vec& x) { return su2_chart().left_mc(x); }

ThreeForm su2_volume_form(double lambda) { return frame_to_coordinates(lambda); }

Background flat_background(int d) {
  return {"flat" + std::to_string(d), ExactChartCA(d, {}, Box::cube(d, 10.0), "flat"),
          ChartMetric(d, [d](const Vec&) { return Mat(Mat::Identity(d, d)); })};
}

Background round_s2(double r) {
  MatField e = [r](const Vec& x) {
    const double conf = 2.0 * r / (1.0 + x.squaredNorm());
    return Mat(conf * conf * Mat::Identity(2, 2));
  };
  return {"round_s2", ExactChartCA(2, {}, Box::cube(2, 5.0), "round_s2"), ChartMetric(2, std::move(e))};
}

Background squashed_s3(double p, double q, double lambda) {
  const Vec diag = (Vec(3) << p, p, q).finished();
  return left_invariant("squashed_s3", diag.asDiagonal().toDenseMatrix(), lambda);
}

Background su2_family(double p, double lambda) {
  return left_invariant("su2_wzw", p * Mat::Identity(3, 3), lambda);
}

Background round_s3(double r) {
  Background b = su2_family(r * r / 4.0, 0.0);
  b.name = "round_s3";
  return b;
}

Background twisted_s3() {
  Background base = squashed_s3(1.0, 0.7, 0.4);
  MatField e0 = base.metric.e_field();
  MatField e = [e0](const Vec& x) {
    Mat b = Mat::Zero(3, 3);
    b(0, 1) = 0.2 * x(2) + 0.1 * x(0) * x(1);
    b(0, 2) = -0.1 * x(1) + 0.05 * x(0) * x(0);
    b(1, 2) = 0.15 * x(0) * x(1) - 0.1 * x(2) * x(2);
    b -= Mat(b.transpose());
    return Mat(e0(x) + b);
  };
  return {"twisted_s3", base.ca, ChartMetric(3, std::move(e))};
}

Background nonclosed_r4() {
  ThreeForm h = [](const Vec& x) {
    Tensor3 t(4);
    const double v = x(3);  // dH = dx4 ^ dx1 ^ dx2 ^ dx3 != 0
    t(0, 1, 2) = t(1, 2, 0) = t(2, 0, 1) = v;
    t(0, 2, 1) = t(2, 1, 0) = t(1, 0, 2) = -v;
    return t;
  };
  return {"nonclosed_r4", ExactChartCA(4, h, Box::cube(4, 10.0), "nonclosed_r4"),
          ChartMetric(4, [](const Vec&) { return Mat(Mat::Identity(4, 4)); })};
}

std::vector<std::string> background_names() {
  return {"flat3", "round_s2", "round_s3", "squashed_s3", "su2_wzw", "twisted_s3"};
}

Background background(const std::string& name) {
  if (name == "flat3") return flat_background(3);
  if (name == "round_s2") return round_s2(1.0);
  if (name == "round_s3") return round_s3(2.0);
  if (name == "squashed_s3") return squashed_s3(1.0, 0.6);
  if (name == "su2_wzw") return su2_family(1.0, 1.0);
  if (name == "twisted_s3") return twisted_s3();
  throw Error(ErrorCode::ConfigInvalid, "unknown background '" + name + "'");
}

Background InvariantFamily::realize(const Vec& params) const {
  const Mat fe = frame_e(params);
  const auto cof = coframe;
  MatField e = [cof, fe](const Vec& x) {
    const Mat th = cof(x);
    return Mat(th.transpose() * fe * th);
  };
  return {name, ExactChartCA(chart_dim, h0 ? h0(params) : ThreeForm{}, domain, name), ChartMetric(chart_dim, e)};
}

InvariantFamily flat_torus_family() {
  InvariantFamily f;
  f.name = "flat_torus";
  f.chart_dim = 3;
  f.param_names = {"p1", "p2", "p3"};
  f.coframe = [](const Vec&) { return Mat(Mat::Identity(3, 3)); };
  f.frame_e = [](const Vec& p) { return Mat(p.asDiagonal()); };
  f.read = [](const Mat& edot, const Vec&) { return Vec(edot.diagonal()); };
  f.domain = Box::cube(3, 10.0);
  return f;
}

namespace {

InvariantFamily su2_base(const std::string& name) {
  InvariantFamily f;
  f.name = name;
  f.chart_dim = 3;
  f.coframe = su2_coframe;
  f.domain = Box::cube(3, kSu2HalfWidth);
  return f;
}

}  // namespace

InvariantFamily round_s3_family() {
  InvariantFamily f = su2_base("round_s3");
  f.param_names = {"r2"};
  f.frame_e = [](const Vec& p) { return Mat(p(0) / 4.0 * Mat::Identity(3, 3)); };
  f.read = [](const Mat& edot, const Vec&) { return Vec::Constant(1, 4.0 * edot.diagonal().mean()); };
  return f;
}

InvariantFamily squashed_s3_family() {
  InvariantFamily f = su2_base("squashed_s3");
  f.param_names = {"p", "q"};
  f.frame_e = [](const Vec& p) { return Mat((Vec(3) << p(0), p(0), p(1)).finished().asDiagonal()); };
  f.read = [](const Mat& edot, const Vec&) { return Vec((Vec(2) << 0.5 * (edot(0, 0) + edot(1, 1)), edot(2, 2)).finished()); };
  return f;
}

InvariantFamily su2_wzw_family(double lambda) {
  InvariantFamily f = su2_base("su2_wzw");
  f.param_names = {"p"};
  f.frame_e = [](const Vec& p) { return Mat(p(0) * Mat::Identity(3, 3)); };
  f.h0 = [lambda](const Vec&) { return lambda == 0.0 ? ThreeForm{} : su2_volume_form(lambda); };
  f.read = [](const Mat& edot, const Vec&) { return Vec::Constant(1, edot.diagonal().mean()); };
  return f;
}

std::vector<std::string> family_names() { return {"flat_torus", "round_s3", "squashed_s3", "su2_wzw"}; }

InvariantFamily family(const std::string& name, double lambda) {
  if (name == "flat_torus") return flat_torus_family();
  if (name == "round_s3") return round_s3_family();
  if (name == "squashed_s3") return squashed_s3_family();
  if (name == "su2_wzw") return su2_wzw_family(lambda);
  throw Error(ErrorCode::ConfigInvalid, "unknown invariant family '" + name + "'");
}

}  // namespace courant
