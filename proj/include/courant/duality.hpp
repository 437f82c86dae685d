#pragma once

#include <span>
#include <string>
#include <vector>

#include "courant/algebra.hpp"
#include "courant/algebroid.hpp"
#include "courant/catalog.hpp"
#include "courant/connection.hpp"
#include "courant/genmetric.hpp"
#include "courant/gric.hpp"

namespace courant {

enum class Side { A, B };

const char* side_name(Side side);

/// A quadratic Lie algebra in the basis {T_i, T~^j} with <T_i, T~^j> = delta
/// and both halves Lagrangian subalgebras. Side A is spanned by the T_i,
/// side B by the T~^j.
class ManinTriple {
 public:
  /// Throws InvalidArgument when the basis layout or closure fails.
  explicit ManinTriple(QuadraticLieAlgebra algebra, double tol = 1e-10);

  const QuadraticLieAlgebra& algebra() const { return algebra_; }
  int half_dim() const { return algebra_.dim() / 2; }
  std::vector<int> indices(Side side) const;
  /// Permutation matrix taking double coordinates to (side, complement) coordinates.
  Mat reorder(Side side) const;

 private:
  QuadraticLieAlgebra algebra_;
};

ManinTriple builtin_triple(const std::string& name);
std::vector<std::string> builtin_triple_names();

/// The dual target of one side: points x parametrize the coset of
/// l(x) = exp(x^a e_a) modulo the complementary subgroup.
class GroupChart {
 public:
  GroupChart(const ManinTriple& triple, Side side, double half_width = 1.0);

  Side side() const { return side_; }
  int dim() const { return chart_.dim(); }
  const Box& domain() const { return domain_; }

  /// Ad_{l(x)} on the double, in double coordinates.
  Mat adjoint(const Vec& x) const;
  /// Right Maurer-Cartan form of the side subgroup: columns (d_i l) l^{-1}.
  Mat right_mc(const Vec& x) const;
  /// Anchor of the pulled-back algebroid at x: m x 2m.
  Mat anchor(const Vec& x) const;
  /// Isomorphism of the fiber with (T + T*) at x: w -> (rho(w), J^T pi_c Ad w).
  Mat fiber_map(const Vec& x) const;

  /// max |<Ad u, Ad v> - <u, v>| and max |Ad [u,v] - [Ad u, Ad v]| over basis pairs.
  double automorphism_residual(const Vec& x) const;

 private:
  QuadraticLieAlgebra algebra_;
  Side side_;
  ExpChart chart_;
  Mat reorder_;
  Box domain_;
};

/// The pulled-back exact CA (H0 = 0) and the induced metric e(x) = J^T E(x) J,
/// where E(x) is the graph map of Ad_{l(x)} V+ over the side subalgebra.
Background pullback_background(const ManinTriple& triple, const Subspace& v_plus, Side side, double half_width = 1.0);
/// Throws NotAGraph / NotGeneralizedMetric.
GB pullback_metric(const ManinTriple& triple, const Subspace& v_plus, Side side, const Vec& x);

/// Infinitesimal action of the double on the side's target. The action keeps
/// a pointer to the triple's algebra, which must outlive it.
GroupAction pullback_action(const ManinTriple& triple, Side side);
/// su(2) + su(2) acting on SU(2) by l -> a^{-1} l b.
GroupAction su2_pair_action(const QuadraticLieAlgebra& su2_pair_algebra);

/// The flat connection on the pulled-back bundle (constant sections of the
/// double are parallel), in transported TM form.
ChartConnection pullback_flat_connection(const ManinTriple& triple, const Subspace& v_plus, Side side,
                                         double step = 1e-5);

struct NaturalityReport {
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// <[u,v],w> in the double against the chart bracket of the pulled-back
/// constant sections, over basis triples (and optional random triples).
NaturalityReport pullback_naturality_check(const ManinTriple& triple, Side side, std::span<const Vec> samples,
                                           double tol, int random_triples = 0, std::uint64_t seed = 11);

struct DualitySideReport {
  Side side = Side::A;
  double gauge_fit_residual = 0.0;   // after the least-squares gauge solve
  double theorem_residual = 0.0;     // with the predicted gauge term, no fit
  double pushforward_residual = 0.0; // chart GRic of the pulled-back flat connection vs pushed point GRic
  double gauge_scale = 0.0;          // fitted coefficient of the predicted gauge term
  Vec gauge_section;                 // fitted constant section of the double
  double max_chart_rhs = 0.0;
};

struct DualityReport {
  std::vector<DualitySideReport> sides;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Compares the chart-side 1-loop RHS -2 Ric(g,H) with the algebraic RHS
/// -2 GRic pushed through the pullback, modulo inner derivations.
DualityReport duality_compare(const ManinTriple& triple, const Subspace& v_plus, std::span<const Vec> samples_a,
                              std::span<const Vec> samples_b, double tol, double epsilon = 1e-5);

}  // namespace courant
