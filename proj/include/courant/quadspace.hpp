#pragma once

#include <utility>

#include "courant/linalg.hpp"

namespace courant {

/// Singular values below this fraction of the largest are treated as zero.
inline constexpr double kRankTolerance = 1e-10;
/// Two spans are equal when every principal angle is below this (radians).
inline constexpr double kSpanTolerance = 1e-9;

/// Non-degenerate symmetric bilinear form on R^n, given by its Gram matrix.
class Pairing {
 public:
  explicit Pairing(Mat gram);

  /// The split pairing <(X,a),(Y,b)> = a(Y) + b(X) on R^d + R^d.
  static Pairing split(int d);
  static Pairing diagonal(const Vec& entries);

  int dim() const { return static_cast<int>(gram_.rows()); }
  const Mat& matrix() const { return gram_; }

  double operator()(const Vec& u, const Vec& v) const { return u.dot(gram_ * v); }
  /// B^T G B for a matrix of column vectors.
  Mat gram(const Mat& basis) const { return basis.transpose() * gram_ * basis; }

  /// (positive, negative) counts.
  std::pair<int, int> signature() const;

 private:
  Mat gram_;
};

/// Linear subspace of R^n spanned by the columns of a full-column-rank matrix.
class Subspace {
 public:
  explicit Subspace(Mat basis);

  /// Extracts a basis from a possibly rank-deficient spanning set.
  static Subspace from_spanning(const Mat& vectors);
  static Subspace coordinate(int ambient_dim, int first, int count);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const { return basis_; }

  /// Euclidean-orthonormal basis of the same span.
  Mat orthonormal() const;
  double max_principal_angle(const Subspace& other) const;
  bool same_span(const Subspace& other, double tol = kSpanTolerance) const;
  bool contains(const Vec& v, double tol = 1e-9) const;

 private:
  Mat basis_;
};

struct ComplementResult {
  Subspace complement;
  /// Set when the pairing restricted to V is singular; V + V^perp then need not span.
  bool degenerate_restriction;
};

ComplementResult orthogonal_complement(const Pairing& pairing, const Subspace& v);

struct ProjectorPair {
  Mat plus;
  Mat minus;
};

/// Orthogonal projections onto V+ and V- = V+^perp. Requires <,> positive
/// definite on V+ and negative definite on V-.
ProjectorPair projector_pair(const Pairing& pairing, const Subspace& v_plus);

/// Direct sum R^n = first + second with both summands isotropic, read as T + T*.
struct Splitting {
  Subspace first;
  Subspace second;
};

/// Checks isotropy and complementarity; throws NonIsotropicSplitting.
void validate_splitting(const Pairing& pairing, const Splitting& splitting);

/// The standard (T, T*) splitting of the split pairing on R^{2d}.
Splitting standard_splitting(int d);

/// span{ X + e(X, .) : X in first }, with e(X, .) realized in the second
/// summand through the pairing.
Subspace graph_of_map(const Pairing& pairing, const Splitting& splitting, const Mat& e);

/// Inverse of graph_of_map. Throws NotAGraph when V does not project onto the
/// first summand.
Mat extract_graph_map(const Pairing& pairing, const Splitting& splitting, const Subspace& v);

/// Replaces the first summand by { X - B(X, .) } for antisymmetric B. A graph
/// e in the old splitting reads as e + B in the new one.
Splitting shift_splitting(const Pairing& pairing, const Splitting& splitting, const Mat& b_shift);

struct SignedOrthoBasis {
  Mat vectors;  // n x k
  Vec signs;    // +1 entries first
  int positive_count() const;
};

/// Pivoted Gram-Schmidt for an indefinite pairing. Throws DegenerateRestriction.
SignedOrthoBasis signed_ortho_basis(const Pairing& pairing, const Subspace& v);

/// max |B^T G B - diag(signs)|.
double gram_residual(const Pairing& pairing, const SignedOrthoBasis& basis);

}  // namespace courant
