#include <doctest.h>

#include "courant/catalog.hpp"
#include "courant/error.hpp"
#include "courant/genmetric.hpp"
#include "oracles.hpp"

using namespace courant;

TEST_CASE("point metric bases and projectors") {
  const QuadraticLieAlgebra alg = builtin_algebra("sl2c");
  const PointMetric pm(alg.pairing(), default_vplus(alg));
  CHECK(gram_residual(alg.pairing(), pm.plus_basis()) < 1e-12);
  CHECK(gram_residual(alg.pairing(), pm.minus_basis()) < 1e-12);
  const auto& pr = pm.projectors();
  CHECK((pr.plus + pr.minus - Mat::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((pr.plus * pr.plus - pr.plus).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(pm.positivity_margin() > 0.0);
  CHECK_THROWS_AS(PointMetric(alg.pairing(), Subspace::coordinate(6, 0, 3)), Error);
}

TEST_CASE("deformations of a point metric") {
  std::mt19937_64 rng(11);
  const QuadraticLieAlgebra alg = builtin_algebra("su2_semiabelian");
  const PointMetric pm(alg.pairing(), default_vplus(alg));
  const DeformationForm c{oracle::random_matrix(rng, 3, 3), pm.plus_basis().vectors, pm.minus_basis().vectors};
  // span{u + t S u}: <S p_a, m_b> = C_ab.
  const Mat s = c.map(alg.pairing());
  CHECK((Mat(s * pm.plus_basis().vectors).transpose() * alg.pairing().matrix() * pm.minus_basis().vectors - c.c)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  const PointMetric moved = deform(pm, c, 1e-3);
  CHECK(moved.v_plus().max_principal_angle(pm.v_plus()) > 0.0);
  CHECK_THROWS_AS(deform(pm, c, 1e3), Error);
  CHECK(deform(pm, zero_deformation(pm), 1.0).v_plus().same_span(pm.v_plus()));
}

TEST_CASE("inner derivation deformation of a point metric") {
  std::mt19937_64 rng(12);
  const QuadraticLieAlgebra alg = builtin_algebra("sl2c");
  const PointMetric pm(alg.pairing(), default_vplus(alg));
  const Vec s = oracle::random_vec(rng, 6);
  const DeformationForm d = inner_derivation_deformation(alg, pm, s);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double expected = alg.pairing()(alg.bracket(s, d.plus_basis.col(a)), d.minus_basis.col(b));
      CHECK(std::abs(d.c(a, b) - expected) < 1e-12);
    }
}

TEST_CASE("chart metric frames and coordinate conversion") {
  const Background bg = twisted_s3();
  const Vec x = (Vec(3) << 0.2, -0.1, 0.3).finished();
  const Mat g = bg.metric.g(x);
  const Mat f = bg.metric.frame(x);
  CHECK((f.transpose() * g * f - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((bg.metric.g(x) + bg.metric.b(x) - bg.metric.e(x)).cwiseAbs().maxCoeff() < 1e-14);
  const Pairing p = bg.ca.pairing();
  CHECK(gram_residual(p, bg.metric.plus_basis(x)) < 1e-12);
  CHECK(gram_residual(p, bg.metric.minus_basis(x)) < 1e-12);
  std::mt19937_64 rng(13);
  const Mat c = oracle::random_matrix(rng, 3, 3);
  CHECK((signed_to_coord(bg.metric, x, coord_to_signed(bg.metric, x, c)) - c).cwiseAbs().maxCoeff() < 1e-12);
  // edot(rho u, rho v) = C(u, v) for u, v the signed basis vectors.
  const Mat sig = coord_to_signed(bg.metric, x, c);
  const Mat pu = bg.metric.plus_basis(x).vectors.topRows(3);
  const Mat mv = bg.metric.minus_basis(x).vectors.topRows(3);
  CHECK((pu.transpose() * c * mv - sig).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("chart inner derivation by a constant 1-form is a B-field Lie derivative") {
  // s = (0, alpha) with d alpha = 0 gives [s, .] = 0; with alpha = x0 dx1 it
  // gives -i_Y d alpha, so edot_ij = -(d alpha)(d_i, d_j) on the lifted pair.
  const Background bg = flat_background(3);
  const ChartSection s = [](const Vec& x) {
    Vec v = Vec::Zero(6);
    v(4) = x(0);
    return v;
  };
  const Mat edot = inner_derivation_deformation(bg.ca, bg.metric, s, Vec::Constant(3, 0.1), 1e-5);
  Mat expected = Mat::Zero(3, 3);
  expected(0, 1) = -1.0;
  expected(1, 0) = 1.0;
  CHECK((edot - expected).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("Lie derivative of a constant form along a rotation") {
  const MatField e = [](const Vec&) { return Mat(Mat::Identity(2, 2)); };
  const auto rot = [](const Vec& x) { return Vec((Vec(2) << -x(1), x(0)).finished()); };
  CHECK(lie_derivative(e, rot, Vec::Constant(2, 0.4), 1e-5).cwiseAbs().maxCoeff() < 1e-9);
}
