#pragma once

#include <string>
#include <vector>

#include "courant/linalg.hpp"
#include "courant/quadspace.hpp"

namespace courant {

/// Lie algebra with an invariant non-degenerate pairing: the Courant algebroid
/// over a point. Structure constants c(i,j,k) mean [e_i, e_j] = sum_k c(i,j,k) e_k.
class QuadraticLieAlgebra {
 public:
  QuadraticLieAlgebra(std::string name, Tensor3 structure_constants, Pairing pairing);

  const std::string& name() const { return name_; }
  int dim() const { return pairing_.dim(); }
  const Tensor3& structure_constants() const { return constants_; }
  const Pairing& pairing() const { return pairing_; }

  Vec bracket(const Vec& u, const Vec& v) const;
  /// Matrix of ad_u acting on column vectors.
  Mat ad(const Vec& u) const;
  Mat ad_basis(int k) const;

  /// c(i,j,k) = <[e_i, e_j], e_k>; totally antisymmetric for an invariant pairing.
  Tensor3 cartan_tensor() const;

  double antisymmetry_residual() const;
  /// max over basis triples of |[e_i,[e_j,e_k]] - [[e_i,e_j],e_k] - [e_j,[e_i,e_k]]|.
  double jacobi_residual() const;
  /// max |<[x,y],z> + <y,[x,z]>| over basis triples.
  double invariance_residual() const;

  /// Throws InvalidArgument if any residual exceeds tol.
  void validate(double tol = 1e-10) const;

 private:
  std::string name_;
  Tensor3 constants_;
  Pairing pairing_;
};

Tensor3 su2_structure_constants();
Tensor3 affine2_structure_constants();

/// su(2) with [T_a, T_b] = eps_abc T_c and the positive invariant form delta.
QuadraticLieAlgebra su2();
QuadraticLieAlgebra abelian_double(int m);
/// g + g* with coadjoint brackets and the canonical pairing <T_a, T~^b> = delta.
/// Basis order: T_1..T_m, T~^1..T~^m.
QuadraticLieAlgebra semiabelian_double(const std::string& name, const Tensor3& g_constants);
/// su(2) + su(2) with pairing (K, -K), K the positive invariant form.
QuadraticLieAlgebra su2_pair();
/// sl(2,C) as a real 6-dimensional algebra with pairing Im tr(XY), in the basis
/// su(2) then the dual basis of sb(2).
QuadraticLieAlgebra sl2c();

std::vector<std::string> builtin_algebra_names();
QuadraticLieAlgebra builtin_algebra(const std::string& name);

/// Whether the builtin has the Manin-triple basis layout (first half and
/// second half both Lagrangian subalgebras, dually paired).
bool is_manin_layout(const QuadraticLieAlgebra& algebra, double tol = 1e-10);

/// Default generalized metric for a catalog algebra: the graph of the identity
/// over the first Lagrangian for doubles, {(a, a/2)} for su2_pair, and the
/// positive eigenspace otherwise.
Subspace default_vplus(const QuadraticLieAlgebra& algebra);

/// phi(A) = sum_k A^k / (k+1)!, evaluated through an augmented exponential.
Mat phi_matrix(const Mat& a);

/// Exponential coordinates x -> exp(sum_a x_a e_{idx[a]}) on the group of a
/// subalgebra spanned by basis elements of an algebra.
class ExpChart {
 public:
  ExpChart(const QuadraticLieAlgebra& algebra, std::vector<int> indices);

  int dim() const { return static_cast<int>(indices_.size()); }
  const std::vector<int>& indices() const { return indices_; }

  /// ad of sum_a x_a e_{idx[a]} on the whole algebra.
  Mat ad_generator(const Vec& x) const;
  /// Ad_{exp X} on the whole algebra.
  Mat adjoint(const Vec& x) const;
  /// Columns: components of (d_i l) l^{-1} in the subalgebra basis.
  Mat right_mc(const Vec& x) const;
  /// Columns: components of l^{-1} d_i l in the subalgebra basis.
  Mat left_mc(const Vec& x) const;

 private:
  Mat restrict_(const Mat& full) const;

  std::vector<Mat> ad_;
  std::vector<int> indices_;
};

}  // namespace courant
