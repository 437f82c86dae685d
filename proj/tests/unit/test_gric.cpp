#include <doctest.h>

#include "courant/catalog.hpp"
#include "courant/gric.hpp"
#include "oracles.hpp"

using namespace courant;

TEST_CASE("point GRic matches the dual-basis oracle") {
  std::mt19937_64 rng(16);
  for (const auto& name : builtin_algebra_names()) {
    CAPTURE(name);
    const QuadraticLieAlgebra alg = builtin_algebra(name);
    const int n = alg.dim();
    const PointMetric base(alg.pairing(), default_vplus(alg));
    const PointMetric pm = deform(base, DeformationForm{oracle::random_matrix(rng, n / 2, n / 2, 0.2),
                                                        base.plus_basis().vectors, base.minus_basis().vectors},
                                  1.0);
    const GRicResult gr = gric_point(alg, pm);
    // Arbitrary, non-orthonormal bases of the same subspaces for the oracle.
    const Mat p = pm.v_plus().basis() * (Mat::Identity(n / 2, n / 2) + oracle::random_matrix(rng, n / 2, n / 2, 0.3));
    const Mat m = pm.v_minus().basis();
    for (int a = 0; a < n / 2; ++a)
      for (int b = 0; b < n / 2; ++b) {
        const double ref = oracle::gric_point(alg.structure_constants(), alg.pairing().matrix(), p, m,
                                              gr.plus_basis.col(a), gr.minus_basis.col(b));
        CHECK(std::abs(gr.value(a, b) - ref) < 1e-12);
      }
  }
}

TEST_CASE("abelian doubles are Ricci flat") {
  const QuadraticLieAlgebra alg = builtin_algebra("abelian4");
  CHECK(gric_point(alg, PointMetric(alg.pairing(), default_vplus(alg))).value.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Ricci of left-invariant SU(2) metrics against closed forms") {
  const struct {
    double p, q, lambda;
  } cases[] = {{1.0, 1.0, 0.0}, {1.0, 0.6, 0.0}, {1.5, 0.8, 0.7}, {2.0, 2.0, 1.0}};
  const Vec x = (Vec(3) << 0.2, -0.3, 0.1).finished();
  for (const auto& c : cases) {
    CAPTURE(c.p);
    CAPTURE(c.q);
    const Background bg = squashed_s3(c.p, c.q, c.lambda);
    const MatField g = [&bg](const Vec& y) { return bg.metric.g(y); };
    const Mat ric = classical_ricci_gH(g, effective_h(bg.ca, bg.metric), x);
    const Mat th = su2_coframe(x);
    const Mat expected = th.transpose() * oracle::berger_ricci(c.p, c.q, c.lambda) * th;
    CHECK((ric - expected).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("exact-case theorem on catalog backgrounds") {
  std::mt19937_64 rng(17);
  for (const auto& name : {"round_s2", "squashed_s3", "twisted_s3", "su2_wzw"}) {
    CAPTURE(name);
    const Background bg = background(name);
    std::vector<Vec> xs{oracle::random_vec(rng, bg.ca.dim(), 0.4), oracle::random_vec(rng, bg.ca.dim(), 0.4)};
    const auto can = check_exact_theorem(bg.ca, bg.metric, levi_civita_pair(bg.metric), true, xs, 1e-4, 1e-5);
    CHECK(can.pass);
    CHECK(can.t2 < 1e-5);
    CHECK(can.t3 < 1e-5);
    const auto lc = check_exact_theorem(bg.ca, bg.metric, levi_civita_pair(bg.metric), false, xs, 1e-4, 1e-5);
    CHECK(lc.residual < 1e-4);
  }
}

TEST_CASE("variation theorem and independence of the plus connection") {
  std::mt19937_64 rng(18);
  const Background bg = twisted_s3();
  std::vector<Mat> k;
  for (int i = 0; i < 3; ++i) {
    const Mat a = oracle::random_matrix(rng, 3, 3, 0.3);
    k.push_back(a - Mat(a.transpose()));
  }
  const CoeffField field = [&bg, k](const Vec& x) {
    const Mat ginv = bg.metric.g(x).inverse();
    Coefficients out;
    for (int i = 0; i < 3; ++i) out.push_back(ginv * k[i] * (1.0 + x(1)));
    return out;
  };
  const std::vector<Vec> xs{Vec::Constant(3, 0.15)};
  const auto rep = check_variation_theorem(bg.ca, bg.metric, levi_civita_pair(bg.metric), Shift{field, field}, xs, 1e-4);
  CHECK(rep.pass);
  CHECK(rep.plus_only_residual < 1e-5);
}

TEST_CASE("the WZW point is Ricci flat") {
  const Background bg = su2_family(1.0, 1.0);
  const MatField g = [&bg](const Vec& y) { return bg.metric.g(y); };
  const Mat ric = classical_ricci_gH(g, effective_h(bg.ca, bg.metric), Vec::Constant(3, 0.2));
  CHECK(ric.cwiseAbs().maxCoeff() < 1e-5);
}
