#include <doctest.h>

#include "courant/duality.hpp"
#include "courant/error.hpp"
#include "oracles.hpp"

using namespace courant;

TEST_CASE("Manin triples") {
  for (const auto& name : builtin_triple_names()) {
    CAPTURE(name);
    const ManinTriple t = builtin_triple(name);
    CHECK(t.half_dim() * 2 == t.algebra().dim());
    const Mat p = t.reorder(Side::B);
    CHECK((p.transpose() * t.algebra().pairing().matrix() * p - t.algebra().pairing().matrix()).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK_THROWS_AS(ManinTriple{su2_pair()}, Error);
  CHECK_THROWS_AS(builtin_triple("su2_pair"), Error);
}

TEST_CASE("group charts") {
  std::mt19937_64 rng(20);
  const ManinTriple t = builtin_triple("sl2c");
  for (Side side : {Side::A, Side::B}) {
    const GroupChart chart(t, side);
    const Vec x = oracle::random_vec(rng, 3, 0.6);
    CHECK(chart.automorphism_residual(x) < 1e-12);
    CHECK((chart.adjoint(x) - oracle::expm_series(t.algebra().ad(Vec(t.reorder(side).transpose() * (Vec(6) << x, Vec::Zero(3)).finished())))).cwiseAbs().maxCoeff() < 1e-12);
    // The fiber map carries the double's pairing to the split pairing.
    const Mat phi = chart.fiber_map(x);
    CHECK((phi.transpose() * Pairing::split(3).matrix() * phi - t.algebra().pairing().matrix()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((phi.topRows(3) - chart.anchor(x)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("pulled-back metric at the identity is E0") {
  std::mt19937_64 rng(21);
  const ManinTriple t = builtin_triple("su2_semiabelian");
  Mat e0 = Mat::Identity(3, 3) + oracle::random_matrix(rng, 3, 3, 0.2);
  Mat basis(6, 3);
  basis << Mat::Identity(3, 3), e0.transpose();
  const Background bg = pullback_background(t, Subspace(basis), Side::A);
  CHECK((bg.metric.e(Vec::Zero(3)) - e0).cwiseAbs().maxCoeff() < 1e-12);
  const GB gb = pullback_metric(t, Subspace(basis), Side::A, Vec::Zero(3));
  CHECK((gb.g + gb.b - e0).cwiseAbs().maxCoeff() < 1e-12);
  // On the dual side the roles of g + b and its inverse are exchanged.
  const Background dual = pullback_background(t, Subspace(basis), Side::B);
  CHECK((dual.metric.e(Vec::Zero(3)) - e0.inverse()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("naturality of the pullback") {
  const std::vector<Vec> xs{Vec::Constant(3, 0.2), (Vec(3) << -0.3, 0.1, 0.25).finished()};
  for (const auto& name : {"su2_semiabelian", "sl2c", "affine_double"}) {
    CAPTURE(name);
    const ManinTriple t = builtin_triple(name);
    const int m = t.half_dim();
    std::vector<Vec> pts;
    for (const Vec& x : xs) pts.push_back(x.head(m));
    for (Side side : {Side::A, Side::B}) {
      const NaturalityReport r = pullback_naturality_check(t, side, pts, 1e-5, 5);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("pulled-back flat connection is compatible") {
  const ManinTriple t = builtin_triple("sl2c");
  const Subspace vp = default_vplus(t.algebra());
  const Background bg = pullback_background(t, vp, Side::A);
  const ChartConnection flat = pullback_flat_connection(t, vp, Side::A);
  const MatField g = [&bg](const Vec& x) { return bg.metric.g(x); };
  const Vec x = (Vec(3) << 0.1, -0.2, 0.3).finished();
  CHECK(metricity_residual(g, flat.plus(x), x, 1e-5) < 1e-6);
  CHECK(metricity_residual(g, flat.minus(x), x, 1e-5) < 1e-6);
}

TEST_CASE("duality compatibility on the affine double") {
  const ManinTriple t = builtin_triple("affine_double");
  const std::vector<Vec> xs{(Vec(2) << 0.2, -0.1).finished(), (Vec(2) << -0.3, 0.25).finished()};
  const DualityReport rep = duality_compare(t, default_vplus(t.algebra()), xs, xs, 1e-4);
  CHECK(rep.pass);
  for (const auto& s : rep.sides) {
    CHECK(s.theorem_residual < 1e-4);
    CHECK(s.pushforward_residual < 1e-4);
  }
}
