#include <doctest.h>

#include "courant/algebroid.hpp"
#include "courant/catalog.hpp"
#include "courant/duality.hpp"
#include "courant/error.hpp"
#include "oracles.hpp"

using namespace courant;

TEST_CASE("point axioms for every catalog algebra") {
  for (const auto& name : builtin_algebra_names()) {
    CAPTURE(name);
    const AxiomReport r = check_axioms(builtin_algebra(name), 1e-10);
    CHECK(r.pass);
    CHECK(r.max_residual() < 1e-10);
  }
}

TEST_CASE("chart axioms for every catalog background") {
  std::mt19937_64 rng(10);
  for (const auto& name : background_names()) {
    CAPTURE(name);
    const Background bg = background(name);
    std::vector<Vec> xs;
    for (int s = 0; s < 3; ++s) xs.push_back(oracle::random_vec(rng, bg.ca.dim(), 0.5));
    const AxiomReport r = check_axioms(bg.ca, xs, 1e-5);
    CHECK(r.pass);
    CHECK(closedness_residual(bg.ca, xs) < 1e-5);
  }
}

TEST_CASE("non-closed H fails the Leibniz identity") {
  const Background bg = nonclosed_r4();
  const std::vector<Vec> xs{Vec::Constant(4, 0.3)};
  CHECK(closedness_residual(bg.ca, xs) > 0.5);
  CHECK_FALSE(check_axioms(bg.ca, xs, 1e-5).pass);
}

TEST_CASE("chart bracket with H = 0 is the Dorfman bracket") {
  const ExactChartCA ca(3, {}, Box::cube(3, 5.0));
  const ChartSection u = [](const Vec& x) {
    Vec v(6);
    v << x(1) * x(2), std::sin(x(0)), 1.0 + x(2) * x(2), x(0) * x(0), std::cos(x(1)) * x(2), x(0) * x(1);
    return v;
  };
  const ChartSection w = [](const Vec& x) {
    Vec v(6);
    v << x(2), x(0) * x(1), -x(1), std::exp(0.3 * x(2)), x(0), x(1) * x(1) * x(2);
    return v;
  };
  for (const Vec& x : {Vec(Vec::Constant(3, 0.2)), Vec((Vec(3) << -0.4, 0.7, 0.1).finished())}) {
    const Vec got = bracket(ca, u, w, x, 1e-5);
    CHECK((got - oracle::dorfman(u, w, x)).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("anchor and rho transpose") {
  const ExactChartCA ca(2, {}, Box::cube(2, 1.0));
  const Vec s = (Vec(4) << 1, 2, 3, 4).finished();
  CHECK((anchor(ca, s) - Vec((Vec(2) << 1, 2).finished())).norm() == 0.0);
  CHECK((rho_transpose(ca, Vec((Vec(2) << 5, 6).finished())) - Vec((Vec(4) << 0, 0, 5, 6).finished())).norm() == 0.0);
  CHECK(anchor(su2(), Vec::Ones(3)).size() == 0);
  CHECK_THROWS_AS(ca.check_domain(Vec::Constant(2, 3.0)), Error);
}

TEST_CASE("vector field bracket of coordinate rotations") {
  // [x d_y - y d_x, d_x] = -d_y
  const auto rot = [](const Vec& x) { return Vec((Vec(2) << -x(1), x(0)).finished()); };
  const auto dx = [](const Vec&) { return Vec(Vec::Unit(2, 0)); };
  const Vec br = vector_field_bracket(rot, dx, Vec::Constant(2, 0.3), 1e-5);
  CHECK((br + Vec::Unit(2, 1)).norm() < 1e-8);
}

TEST_CASE("pullback conditions") {
  const std::vector<Vec> xs{Vec::Constant(3, 0.1), (Vec(3) << 0.3, -0.2, 0.1).finished()};
  SUBCASE("trivial action is coisotropic but not exact") {
    const QuadraticLieAlgebra alg = builtin_algebra("abelian6");
    const GroupAction trivial{&alg, 3, [](const Vec&) { return Mat(Mat::Zero(3, 6)); }};
    const PullbackReport r = verify_pullback_conditions(trivial, xs, 1e-6);
    CHECK(r.coisotropic);
    CHECK_FALSE(r.exact);
  }
  SUBCASE("dressing action of a Manin triple is exact") {
    const ManinTriple triple = builtin_triple("su2_semiabelian");
    for (Side side : {Side::A, Side::B}) {
      const PullbackReport r = verify_pullback_conditions(pullback_action(triple, side), xs, 1e-6);
      CHECK(r.pass);
      CHECK(r.exact);
    }
  }
  SUBCASE("left-right action of su2 + su2 on SU(2)") {
    const QuadraticLieAlgebra alg = su2_pair();
    const PullbackReport r = verify_pullback_conditions(su2_pair_action(alg), xs, 1e-6);
    CHECK(r.exact);
    CHECK(r.closure_residual < 1e-6);
  }
  SUBCASE("action of an isotropy-violating algebra is not coisotropic") {
    // su2 with positive pairing acting by left translation: stabilizer 0.
    const QuadraticLieAlgebra alg = su2();
    const ExpChart chart(alg, {0, 1, 2});
    const GroupAction left{&alg, 3, [chart](const Vec& x) { return Mat(chart.right_mc(x).inverse()); }};
    CHECK_FALSE(verify_pullback_conditions(left, xs, 1e-6).coisotropic);
  }
}

TEST_CASE("coadjoint generators on the dual of su2") {
  // Side B of the semiabelian double is the abelian group su2*; the anchor of
  // T_a at x is -(ad*_{T_a} x) = -x_b eps_abc.
  const ManinTriple triple = builtin_triple("su2_semiabelian");
  const GroupChart chart(triple, Side::B);
  const Vec x = (Vec(3) << 0.3, -0.5, 0.2).finished();
  const Mat g = chart.anchor(x);
  const auto eps = [](int a, int b, int c) { return double((a - b) * (b - c) * (c - a)) / 2.0; };
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c) {
      double expected = 0.0;
      for (int b = 0; b < 3; ++b) expected -= x(b) * eps(a, b, c);
      CHECK(std::abs(g(c, a) - expected) < 1e-12);
    }
  // Dual generators translate.
  CHECK((g.rightCols(3) - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("small bracket examples") {
  const ExactChartCA flat(3, {}, Box::cube(3, 2.0));
  const ChartSection d1 = [](const Vec&) { return Vec(Vec::Unit(6, 0)); };
  const ChartSection d2 = [](const Vec&) { return Vec(Vec::Unit(6, 1)); };
  const ChartSection x1d2 = [](const Vec& x) { return Vec(x(0) * Vec::Unit(6, 1)); };
  const Vec x = Vec::Constant(3, 0.3);
  CHECK((bracket(flat, d1, x1d2, x) - Vec::Unit(6, 1)).norm() < 1e-9);
  const ExactChartCA vol(3, [](const Vec&) {
    Tensor3 t(3);
    t(0, 1, 2) = t(1, 2, 0) = t(2, 0, 1) = 1.0;
    t(0, 2, 1) = t(2, 1, 0) = t(1, 0, 2) = -1.0;
    return t;
  }, Box::cube(3, 2.0));
  CHECK((bracket(vol, d1, d2, x) - Vec::Unit(6, 5)).norm() < 1e-12);
  const QuadraticLieAlgebra ab = builtin_algebra("abelian4");
  CHECK(bracket(ab, Vec::Ones(4), Vec::LinSpaced(4, 0, 3)).norm() == 0.0);
  // rho composed with rho^t vanishes.
  CHECK(anchor(flat, rho_transpose(flat, Vec::Ones(3))).norm() == 0.0);
}
