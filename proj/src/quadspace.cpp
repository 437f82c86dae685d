#include "courant/quadspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "courant/error.hpp"

namespace courant {

namespace {

int numerical_rank(const Eigen::JacobiSVD<Mat>& svd) {
  const Vec& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > kRankTolerance * s(0)) ++r;
  return r;
}

}  // namespace

Pairing::Pairing(Mat gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols() || gram_.rows() == 0)
    throw Error(ErrorCode::InvalidArgument, "pairing matrix must be square and non-empty");
  const double scale = std::max(1.0, gram_.cwiseAbs().maxCoeff());
  if ((gram_ - gram_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(ErrorCode::InvalidArgument, "pairing matrix is not symmetric");
  Eigen::JacobiSVD<Mat> svd(gram_);
  if (numerical_rank(svd) < gram_.rows()) throw Error(ErrorCode::DegeneratePairing, "pairing is singular");
}

Pairing Pairing::split(int d) {
  Mat g = Mat::Zero(2 * d, 2 * d);
  g.topRightCorner(d, d).setIdentity();
  g.bottomLeftCorner(d, d).setIdentity();
  return Pairing(g);
}

Pairing Pairing::diagonal(const Vec& entries) { return Pairing(entries.asDiagonal().toDenseMatrix()); }

std::pair<int, int> Pairing::signature() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(gram_);
  const Vec& ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  int p = 0, q = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) > kRankTolerance * scale) ++p;
    else if (ev(i) < -kRankTolerance * scale) ++q;
  }
  return {p, q};
}

Subspace::Subspace(Mat basis) : basis_(std::move(basis)) {
  if (basis_.cols() == 0) return;
  Eigen::JacobiSVD<Mat> svd(basis_);
  if (numerical_rank(svd) < basis_.cols())
    throw Error(ErrorCode::InvalidArgument, "subspace basis is not of full column rank");
}

Subspace Subspace::from_spanning(const Mat& vectors) {
  Eigen::JacobiSVD<Mat> svd(vectors, Eigen::ComputeFullU);
  const int r = numerical_rank(svd);
  return Subspace(svd.matrixU().leftCols(r));
}

Subspace Subspace::coordinate(int ambient_dim, int first, int count) {
  Mat b = Mat::Zero(ambient_dim, count);
  for (int i = 0; i < count; ++i) b(first + i, i) = 1.0;
  return Subspace(b);
}

Mat Subspace::orthonormal() const {
  Eigen::HouseholderQR<Mat> qr(basis_);
  return qr.householderQ() * Mat::Identity(basis_.rows(), basis_.cols());
}

double Subspace::max_principal_angle(const Subspace& other) const {
  if (dim() != other.dim() || ambient_dim() != other.ambient_dim()) return M_PI / 2;
  if (dim() == 0) return 0.0;
  // The sine of the largest angle is the norm of other's basis minus its projection.
  const Mat qa = orthonormal();
  const Mat qb = other.orthonormal();
  const Mat resid = qb - qa * (qa.transpose() * qb);
  Eigen::JacobiSVD<Mat> rs(resid);
  return std::asin(std::min(1.0, rs.singularValues()(0)));
}

bool Subspace::same_span(const Subspace& other, double tol) const { return max_principal_angle(other) < tol; }

bool Subspace::contains(const Vec& v, double tol) const {
  const Mat q = orthonormal();
  const Vec r = v - q * (q.transpose() * v);
  return r.norm() <= tol * std::max(1.0, v.norm());
}

ComplementResult orthogonal_complement(const Pairing& pairing, const Subspace& v) {
  const int n = pairing.dim();
  if (v.ambient_dim() != n) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  const Mat constraints = v.basis().transpose() * pairing.matrix();  // k x n
  Eigen::JacobiSVD<Mat> svd(constraints, Eigen::ComputeFullV);
  const int r = numerical_rank(svd);
  Mat comp = svd.matrixV().rightCols(n - r);

  const Mat g = pairing.gram(v.basis());
  bool degenerate = false;
  if (g.size() > 0) {
    Eigen::JacobiSVD<Mat> gs(g);
    const double scale = pairing.matrix().cwiseAbs().maxCoeff() * v.basis().colwise().squaredNorm().maxCoeff();
    degenerate = gs.singularValues().minCoeff() <= kRankTolerance * scale;
  }
  return {Subspace(comp), degenerate};
}

ProjectorPair projector_pair(const Pairing& pairing, const Subspace& v_plus) {
  const Mat& b = v_plus.basis();
  const Mat g = pairing.gram(b);
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw Error(ErrorCode::NotGeneralizedMetric, "pairing is not positive definite on V+");
  const auto comp = orthogonal_complement(pairing, v_plus);
  if (comp.complement.dim() > 0) {
    Eigen::SelfAdjointEigenSolver<Mat> esm(pairing.gram(comp.complement.basis()));
    if (esm.eigenvalues().maxCoeff() >= 0.0)
      throw Error(ErrorCode::NotGeneralizedMetric, "pairing is not negative definite on V-");
  }
  const int n = pairing.dim();
  ProjectorPair out;
  out.plus = b * g.ldlt().solve(b.transpose() * pairing.matrix());
  out.minus = Mat::Identity(n, n) - out.plus;
  return out;
}

void validate_splitting(const Pairing& pairing, const Splitting& s) {
  const int n = pairing.dim();
  if (s.first.ambient_dim() != n || s.second.ambient_dim() != n || s.first.dim() + s.second.dim() != n)
    throw Error(ErrorCode::NonIsotropicSplitting, "summands do not fit the ambient dimension");
  const double scale = std::max(1.0, pairing.matrix().cwiseAbs().maxCoeff());
  if (pairing.gram(s.first.basis()).cwiseAbs().maxCoeff() > 1e-10 * scale ||
      pairing.gram(s.second.basis()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw Error(ErrorCode::NonIsotropicSplitting, "summand is not isotropic");
  Mat full(n, n);
  full << s.first.basis(), s.second.basis();
  Eigen::JacobiSVD<Mat> svd(full);
  if (numerical_rank(svd) < n) throw Error(ErrorCode::NonIsotropicSplitting, "summands are not complementary");
}

Splitting standard_splitting(int d) { return {Subspace::coordinate(2 * d, 0, d), Subspace::coordinate(2 * d, d, d)}; }

namespace {

// <t_i, s_j> for the two summand bases.
Mat cross_pairing(const Pairing& pairing, const Splitting& s) {
  return s.first.basis().transpose() * pairing.matrix() * s.second.basis();
}

}  // namespace

Subspace graph_of_map(const Pairing& pairing, const Splitting& splitting, const Mat& e) {
  validate_splitting(pairing, splitting);
  const Mat n = cross_pairing(pairing, splitting);
  const int k = splitting.first.dim();
  if (e.rows() != k || e.cols() != k) throw Error(ErrorCode::InvalidArgument, "graph map has wrong shape");
  const Mat coeffs = n.partialPivLu().solve(e.transpose());
  return Subspace(splitting.first.basis() + splitting.second.basis() * coeffs);
}

Mat extract_graph_map(const Pairing& pairing, const Splitting& splitting, const Subspace& v) {
  validate_splitting(pairing, splitting);
  const int n = pairing.dim();
  const int k = splitting.first.dim();
  if (v.dim() != k) throw Error(ErrorCode::NotAGraph, "subspace dimension differs from the first summand");
  Mat full(n, n);
  full << splitting.first.basis(), splitting.second.basis();
  const Mat coords = full.partialPivLu().solve(v.basis());
  const Mat p = coords.topRows(k);
  const Mat q = coords.bottomRows(n - k);
  Eigen::JacobiSVD<Mat> svd(p);
  const Vec& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-10 * std::max(1.0, sv(0)))
    throw Error(ErrorCode::NotAGraph, "projection onto the first summand is singular");
  const Mat np = cross_pairing(pairing, splitting);
  const Mat et = np * q * p.inverse();
  return et.transpose();
}

Splitting shift_splitting(const Pairing& pairing, const Splitting& splitting, const Mat& b_shift) {
  if ((b_shift + b_shift.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, b_shift.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::InvalidArgument, "B-shift must be antisymmetric");
  return {graph_of_map(pairing, splitting, -b_shift), splitting.second};
}

int SignedOrthoBasis::positive_count() const {
  int c = 0;
  for (int i = 0; i < signs.size(); ++i)
    if (signs(i) > 0) ++c;
  return c;
}

SignedOrthoBasis signed_ortho_basis(const Pairing& pairing, const Subspace& v) {
  const int k = v.dim();
  const Mat& eta = pairing.matrix();
  std::vector<Vec> remaining;
  for (int i = 0; i < k; ++i) remaining.push_back(v.basis().col(i));
  const double scale = eta.cwiseAbs().maxCoeff() * v.basis().colwise().squaredNorm().maxCoeff();
  const double tol = 1e-10 * scale;

  std::vector<Vec> chosen;
  std::vector<double> signs;
  while (!remaining.empty()) {
    // Project the remaining vectors off the chosen directions.
    for (auto& r : remaining)
      for (std::size_t c = 0; c < chosen.size(); ++c) r -= signs[c] * pairing(r, chosen[c]) * chosen[c];

    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      const double q = std::abs(pairing(remaining[i], remaining[i]));
      if (q > best_norm) {
        best_norm = q;
        best = i;
      }
    }
    if (best_norm <= tol) {
      // All remaining vectors are (nearly) null: combine the pair with the largest cross term.
      double cross = 0.0;
      std::size_t bi = 0, bj = 0;
      for (std::size_t i = 0; i < remaining.size(); ++i)
        for (std::size_t j = i + 1; j < remaining.size(); ++j) {
          const double c = pairing(remaining[i], remaining[j]);
          if (std::abs(c) > std::abs(cross)) {
            cross = c;
            bi = i;
            bj = j;
          }
        }
      if (std::abs(cross) <= tol) throw Error(ErrorCode::DegenerateRestriction, "pairing is degenerate on the subspace");
      remaining[bi] += (cross > 0 ? 1.0 : -1.0) * remaining[bj];
      best = bi;
    }
    const double q = pairing(remaining[best], remaining[best]);
    if (std::abs(q) <= tol) throw Error(ErrorCode::DegenerateRestriction, "pairing is degenerate on the subspace");
    chosen.push_back(remaining[best] / std::sqrt(std::abs(q)));
    signs.push_back(q > 0 ? 1.0 : -1.0);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }

  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return signs[a] > signs[b]; });
  SignedOrthoBasis out{Mat(v.ambient_dim(), k), Vec(k)};
  for (int i = 0; i < k; ++i) {
    out.vectors.col(i) = chosen[static_cast<std::size_t>(order[i])];
    out.signs(i) = signs[static_cast<std::size_t>(order[i])];
  }
  return out;
}

double gram_residual(const Pairing& pairing, const SignedOrthoBasis& basis) {
  const Mat g = pairing.gram(basis.vectors);
  return (g - Mat(basis.signs.asDiagonal())).cwiseAbs().maxCoeff();
}

}  // namespace courant
