#pragma once

#include <functional>
#include <memory>

#include "courant/algebra.hpp"
#include "courant/algebroid.hpp"
#include "courant/linalg.hpp"
#include "courant/quadspace.hpp"

namespace courant {

using MatField = std::function<Mat(const Vec&)>;

/// Generalized metric V+ in a fiber with a split-signature pairing.
class PointMetric {
 public:
  /// Throws NotGeneralizedMetric.
  PointMetric(Pairing pairing, Subspace v_plus);

  const Pairing& pairing() const { return pairing_; }
  const Subspace& v_plus() const { return v_plus_; }
  const Subspace& v_minus() const { return v_minus_; }
  const ProjectorPair& projectors() const { return proj_; }
  /// Signed bases; all signs +1 on V+ and -1 on V-.
  const SignedOrthoBasis& plus_basis() const { return plus_; }
  const SignedOrthoBasis& minus_basis() const { return minus_; }

  /// Smallest eigenvalue of the V+ Gram matrix and of minus the V- Gram
  /// matrix, both in Euclidean-orthonormal bases.
  double positivity_margin() const;

 private:
  Pairing pairing_;
  Subspace v_plus_;
  Subspace v_minus_;
  ProjectorPair proj_;
  SignedOrthoBasis plus_;
  SignedOrthoBasis minus_;
};

struct GB {
  Mat g;
  Mat b;
};

/// Throws NotPositiveDefinite.
Subspace from_gb(const Pairing& pairing, const Splitting& splitting, const Mat& g, const Mat& b);
/// Throws NotAGraph.
GB to_gb(const Pairing& pairing, const Splitting& splitting, const Subspace& v_plus);

/// C(u+, v-) = <S u+, v-> as a matrix over the two bases recorded with it.
struct DeformationForm {
  Mat c;
  Mat plus_basis;
  Mat minus_basis;

  /// Matrix of S: V+ -> V- acting on ambient vectors of V+ (zero on V-).
  Mat map(const Pairing& pairing) const;
};

DeformationForm zero_deformation(const PointMetric& metric);
/// span{u + t S u}. Throws PositivityLost.
PointMetric deform(const PointMetric& metric, const DeformationForm& c, double t);
/// C(u+, v-) = <[s, u+], v->.
DeformationForm inner_derivation_deformation(const QuadraticLieAlgebra& algebra, const PointMetric& metric,
                                             const Vec& s);

/// Generalized metric on an exact chart CA, stored as the graph map e = g + b.
class ChartMetric {
 public:
  ChartMetric(int d, MatField e);
  static ChartMetric from_gb(int d, MatField g, MatField b);

  int dim() const { return d_; }
  const MatField& e_field() const { return e_; }
  Mat e(const Vec& x) const { return e_(x); }
  Mat g(const Vec& x) const;
  Mat b(const Vec& x) const;
  /// Lifts of TM into V+ and V-: X -> (X, e^T X) and X -> (X, -e X).
  Mat lift_plus(const Vec& x) const;
  Mat lift_minus(const Vec& x) const;
  /// [lift_plus | lift_minus], the frame s_I used for connection coefficients.
  Mat lift_frame(const Vec& x) const;
  /// Columns are a g-orthonormal frame. Throws NotPositiveDefinite.
  Mat frame(const Vec& x) const;
  SignedOrthoBasis plus_basis(const Vec& x) const;
  SignedOrthoBasis minus_basis(const Vec& x) const;

  double positivity_margin(const Vec& x) const;
  /// e + t * edot as a new metric.
  ChartMetric deformed(MatField edot, double t) const;

 private:
  int d_;
  MatField e_;
};

/// de/dt at x in coordinates -> C in the signed bases at x, and back.
Mat coord_to_signed(const ChartMetric& metric, const Vec& x, const Mat& coord);
Mat signed_to_coord(const ChartMetric& metric, const Vec& x, const Mat& sig);

/// Lie derivative of the bilinear-form field e along X at x.
Mat lie_derivative(const MatField& e, const std::function<Vec(const Vec&)>& x_field, const Vec& at, double step);

/// de/dt(d_i, d_j) = <[s, lift+ d_i], lift- d_j> at x.
Mat inner_derivation_deformation(const ExactChartCA& ca, const ChartMetric& metric, const ChartSection& s,
                                 const Vec& x, double step);

}  // namespace courant
