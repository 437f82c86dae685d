#include "courant/duality.hpp"

#include <cmath>
#include <random>

#include "courant/error.hpp"
#include "courant/finite_diff.hpp"

namespace courant {

const char* side_name(Side side) { return side == Side::A ? "A" : "B"; }

ManinTriple::ManinTriple(QuadraticLieAlgebra algebra, double tol) : algebra_(std::move(algebra)) {
  if (!is_manin_layout(algebra_, tol))
    throw Error(ErrorCode::InvalidArgument, "algebra '" + algebra_.name() + "' is not in Manin-triple layout");
}

std::vector<int> ManinTriple::indices(Side side) const {
  const int m = half_dim();
  std::vector<int> out;
  for (int a = 0; a < m; ++a) out.push_back(side == Side::A ? a : m + a);
  return out;
}

Mat ManinTriple::reorder(Side side) const {
  const int n = algebra_.dim();
  const int m = half_dim();
  if (side == Side::A) return Mat::Identity(n, n);
  Mat p = Mat::Zero(n, n);
  p.topRightCorner(m, m).setIdentity();
  p.bottomLeftCorner(m, m).setIdentity();
  return p;
}

std::vector<std::string> builtin_triple_names() {
  return {"abelian4", "abelian6", "affine_double", "su2_semiabelian", "sl2c"};
}

ManinTriple builtin_triple(const std::string& name) {
  const auto names = builtin_triple_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw Error(ErrorCode::ConfigInvalid, "unknown Manin triple '" + name + "'");
  return ManinTriple(builtin_algebra(name));
}

GroupChart::GroupChart(const ManinTriple& triple, Side side, double half_width)
    : algebra_(triple.algebra()),
      side_(side),
      chart_(triple.algebra(), triple.indices(side)),
      reorder_(triple.reorder(side)),
      domain_(Box::cube(triple.half_dim(), half_width)) {}

Mat GroupChart::adjoint(const Vec& x) const { return chart_.adjoint(x); }

Mat GroupChart::right_mc(const Vec& x) const { return chart_.right_mc(x); }

Mat GroupChart::anchor(const Vec& x) const {
  const int m = dim();
  const Mat ra = reorder_ * adjoint(x);
  return right_mc(x).partialPivLu().solve(Mat(ra.topRows(m)));
}

Mat GroupChart::fiber_map(const Vec& x) const {
  const int m = dim();
  const Mat ra = reorder_ * adjoint(x);
  const Mat j = right_mc(x);
  Mat out(2 * m, 2 * m);
  out.topRows(m) = j.partialPivLu().solve(Mat(ra.topRows(m)));
  out.bottomRows(m) = j.transpose() * ra.bottomRows(m);
  return out;
}

double GroupChart::automorphism_residual(const Vec& x) const {
  const Mat a = adjoint(x);
  const int n = algebra_.dim();
  const Mat& eta = algebra_.pairing().matrix();
  double r = (a.transpose() * eta * a - eta).cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec lhs = a * algebra_.bracket(Vec::Unit(n, i), Vec::Unit(n, j));
      const Vec rhs = algebra_.bracket(a.col(i), a.col(j));
      r = std::max(r, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return r;
}

namespace {

Mat graph_over_side(const GroupChart& chart, const Mat& reorder, const Subspace& v_plus, const Vec& x) {
  const int m = chart.dim();
  const Subspace moved(Mat(reorder * chart.adjoint(x) * v_plus.basis()));
  return extract_graph_map(Pairing::split(m), standard_splitting(m), moved);
}

Mat pulled_e(const GroupChart& chart, const Mat& reorder, const Subspace& v_plus, const Vec& x) {
  const Mat j = chart.right_mc(x);
  return j.transpose() * graph_over_side(chart, reorder, v_plus, x) * j;
}

}  // namespace

GB pullback_metric(const ManinTriple& triple, const Subspace& v_plus, Side side, const Vec& x) {
  const GroupChart chart(triple, side);
  const Mat e = pulled_e(chart, triple.reorder(side), v_plus, x);
  GB out{0.5 * (e + e.transpose()), 0.5 * (e - e.transpose())};
  if (out.g.llt().info() != Eigen::Success)
    throw Error(ErrorCode::NotGeneralizedMetric, "pulled-back metric is not positive definite");
  return out;
}

Background pullback_background(const ManinTriple& triple, const Subspace& v_plus, Side side, double half_width) {
  const GroupChart chart(triple, side, half_width);
  const Mat reorder = triple.reorder(side);
  const int m = triple.half_dim();
  const std::string name = triple.algebra().name() + "_" + side_name(side);
  MatField e = [chart, reorder, v_plus](const Vec& x) { return pulled_e(chart, reorder, v_plus, x); };
  return {name, ExactChartCA(m, {}, chart.domain(), name), ChartMetric(m, std::move(e))};
}

GroupAction pullback_action(const ManinTriple& triple, Side side) {
  const GroupChart chart(triple, side);
  return {&triple.algebra(), triple.half_dim(), [chart](const Vec& x) { return chart.anchor(x); }};
}

GroupAction su2_pair_action(const QuadraticLieAlgebra& su2_pair_algebra) {
  static const QuadraticLieAlgebra alg = su2();
  const ExpChart chart(alg, {0, 1, 2});
  return {&su2_pair_algebra, 3, [chart](const Vec& x) {
            // d/dt a(t)^{-1} l b(t) gives (dl) l^{-1} = -a + Ad_l b.
            Mat rhs(3, 6);
            rhs << -Mat::Identity(3, 3), chart.adjoint(x);
            return Mat(chart.right_mc(x).partialPivLu().solve(rhs));
          }};
}

ChartConnection pullback_flat_connection(const ManinTriple& triple, const Subspace& v_plus, Side side, double step) {
  const GroupChart chart(triple, side);
  const Pairing& eta = triple.algebra().pairing();
  const Mat bp = v_plus.basis();
  const Mat bm = orthogonal_complement(eta, v_plus).complement.basis();
  const auto make = [chart, step](const Mat& basis) -> CoeffField {
    return [chart, step, basis](const Vec& x) {
      const auto lift = [&](const Vec& p) {
        const Mat g = chart.anchor(p);
        return Mat(basis * (g * basis).inverse());
      };
      const Mat g = chart.anchor(x);
      Coefficients out;
      for (int i = 0; i < x.size(); ++i) out.push_back(g * central_diff(lift, x, i, step));
      return out;
    };
  };
  return {make(bp), make(bm)};
}

NaturalityReport pullback_naturality_check(const ManinTriple& triple, Side side, std::span<const Vec> samples,
                                           double tol, int random_triples, std::uint64_t seed) {
  const GroupChart chart(triple, side);
  const QuadraticLieAlgebra& alg = triple.algebra();
  const int n = alg.dim();
  const int m = triple.half_dim();
  const ExactChartCA ca(m, {}, chart.domain(), "pullback");
  const Tensor3 cartan = alg.cartan_tensor();
  const auto section = [&chart](const Vec& w) -> ChartSection {
    return [&chart, w](const Vec& x) { return Vec(chart.fiber_map(x) * w); };
  };

  std::vector<std::array<Vec, 3>> triples;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) triples.push_back({Vec::Unit(n, i), Vec::Unit(n, j), Vec::Unit(n, k)});
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int r = 0; r < random_triples; ++r) {
    std::array<Vec, 3> t{Vec(n), Vec(n), Vec(n)};
    for (auto& v : t)
      for (int i = 0; i < n; ++i) v(i) = u(rng);
    triples.push_back(t);
  }

  NaturalityReport rep;
  rep.tol = tol;
  for (const Vec& x : samples) {
    for (const auto& t : triples) {
      const Vec br = bracket(ca, section(t[0]), section(t[1]), x, ca.fd.inner);
      const double chart_val = ca.pairing()(br, chart.fiber_map(x) * t[2]);
      const double alg_val = contract(cartan, t[0], t[1], t[2]);
      rep.residual = std::max(rep.residual, std::abs(chart_val - alg_val));
    }
  }
  rep.pass = rep.residual < tol;
  return rep;
}

namespace {

DualitySideReport compare_side(const ManinTriple& triple, const Subspace& v_plus, Side side,
                               std::span<const Vec> samples, double epsilon) {
  const QuadraticLieAlgebra& alg = triple.algebra();
  const int n = alg.dim();
  const int m = triple.half_dim();
  const GroupChart chart(triple, side);
  const Background bg = pullback_background(triple, v_plus, side);
  const ChartConnection flat = pullback_flat_connection(triple, v_plus, side);
  const ChartSteps steps;

  // Algebraic side: -2 GRic, pushed through the pullback by deforming V+.
  const PointMetric pm(alg.pairing(), v_plus);
  const GRicResult gp = gric_point(alg, pm);
  const DeformationForm c{-2.0 * gp.value, gp.plus_basis, gp.minus_basis};
  const Background bg_p = pullback_background(triple, deform(pm, c, epsilon).v_plus(), side);
  const Background bg_m = pullback_background(triple, deform(pm, c, -epsilon).v_plus(), side);

  const MatField g = [&bg](const Vec& p) { return bg.metric.g(p); };
  const ThreeForm h = effective_h(bg.ca, bg.metric, steps.inner);
  const CoeffField a_minus = [&bg, &flat](const Vec& p) { return canonical_correction(bg.ca, bg.metric, flat, p); };
  const ChartSection s_minus = s_minus_section(bg.metric, a_minus);

  DualitySideReport rep;
  rep.side = side;
  std::vector<Mat> delta, predicted;
  std::vector<std::vector<Mat>> constant_terms;
  for (const Vec& x : samples) {
    const Mat edot_alg = (bg_p.metric.e(x) - bg_m.metric.e(x)) / (2.0 * epsilon);
    const Mat chart_rhs = -2.0 * classical_ricci_gH(g, h, x, steps);
    const Mat gauge = -2.0 * inner_derivation_deformation(bg.ca, bg.metric, s_minus, x, steps.outer);
    rep.max_chart_rhs = std::max(rep.max_chart_rhs, chart_rhs.cwiseAbs().maxCoeff());
    rep.theorem_residual = std::max(rep.theorem_residual, (edot_alg - chart_rhs - gauge).cwiseAbs().maxCoeff());
    delta.push_back(edot_alg - chart_rhs);
    predicted.push_back(gauge);

    std::vector<Mat> terms;
    for (int k = 0; k < n; ++k) {
      const Vec w = Vec::Unit(n, k);
      const ChartSection sw = [&chart, w](const Vec& p) { return Vec(chart.fiber_map(p) * w); };
      terms.push_back(inner_derivation_deformation(bg.ca, bg.metric, sw, x, steps.inner));
    }
    constant_terms.push_back(std::move(terms));

    // Chart GRic of the pulled-back flat connection against the pushed point GRic.
    const GRicResult gc = gric_chart(bg.ca, bg.metric, flat, x, steps);
    const Mat chart_coord = signed_to_coord(bg.metric, x, gc.value);
    const Mat ga = chart.anchor(x);
    const Mat bm = pm.v_minus().basis();
    const Mat lift_p = v_plus.basis() * (ga * v_plus.basis()).inverse();
    const Mat lift_m = bm * (ga * bm).inverse();
    const Mat& eta = alg.pairing().matrix();
    const Mat alpha = gp.plus_basis.transpose() * eta * lift_p;
    const Mat beta = -gp.minus_basis.transpose() * eta * lift_m;
    const Mat pushed = alpha.transpose() * gp.value * beta;
    rep.pushforward_residual = std::max(rep.pushforward_residual, (chart_coord - pushed).cwiseAbs().maxCoeff());
  }

  // Least squares: delta ~ lambda * predicted + sum_k beta_k * constant_k.
  const int unknowns = 1 + n;
  const int rows = static_cast<int>(samples.size()) * m * m;
  Mat a(rows, unknowns);
  Vec rhs(rows);
  int r = 0;
  for (std::size_t s = 0; s < samples.size(); ++s)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j, ++r) {
        rhs(r) = delta[s](i, j);
        a(r, 0) = predicted[s](i, j);
        for (int k = 0; k < n; ++k) a(r, 1 + k) = constant_terms[s][static_cast<std::size_t>(k)](i, j);
      }
  const Vec sol = a.completeOrthogonalDecomposition().solve(rhs);
  rep.gauge_scale = sol(0);
  rep.gauge_section = sol.tail(n);
  rep.gauge_fit_residual = rows > 0 ? (a * sol - rhs).cwiseAbs().maxCoeff() : 0.0;
  return rep;
}

}  // namespace

DualityReport duality_compare(const ManinTriple& triple, const Subspace& v_plus, std::span<const Vec> samples_a,
                              std::span<const Vec> samples_b, double tol, double epsilon) {
  DualityReport rep;
  rep.tol = tol;
  rep.sides.push_back(compare_side(triple, v_plus, Side::A, samples_a, epsilon));
  rep.sides.push_back(compare_side(triple, v_plus, Side::B, samples_b, epsilon));
  for (const auto& s : rep.sides) rep.residual = std::max(rep.residual, s.gauge_fit_residual);
  rep.pass = rep.residual < tol;
  return rep;
}

}  // namespace courant
