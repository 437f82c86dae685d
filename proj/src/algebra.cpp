#include "courant/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <unsupported/Eigen/MatrixFunctions>

#include "courant/error.hpp"

namespace courant {

QuadraticLieAlgebra::QuadraticLieAlgebra(std::string name, Tensor3 structure_constants, Pairing pairing)
    : name_(std::move(name)), constants_(std::move(structure_constants)), pairing_(std::move(pairing)) {
  if (static_cast<int>(constants_.dim()) != pairing_.dim())
    throw Error(ErrorCode::InvalidArgument, "structure constants and pairing differ in dimension");
}

Vec QuadraticLieAlgebra::bracket(const Vec& u, const Vec& v) const {
  const int n = dim();
  Vec out = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (u(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double uv = u(i) * v(j);
      if (uv == 0.0) continue;
      for (int k = 0; k < n; ++k) out(k) += uv * constants_(i, j, k);
    }
  }
  return out;
}

Mat QuadraticLieAlgebra::ad(const Vec& u) const {
  const int n = dim();
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (u(i) == 0.0) continue;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m(k, j) += u(i) * constants_(i, j, k);
  }
  return m;
}

Mat QuadraticLieAlgebra::ad_basis(int k) const { return ad(Vec::Unit(dim(), k)); }

Tensor3 QuadraticLieAlgebra::cartan_tensor() const {
  const int n = dim();
  Tensor3 c(static_cast<std::size_t>(n));
  const Mat& eta = pairing_.matrix();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += constants_(i, j, l) * eta(l, k);
        c(i, j, k) = s;
      }
  return c;
}

double QuadraticLieAlgebra::antisymmetry_residual() const {
  const int n = dim();
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) r = std::max(r, std::abs(constants_(i, j, k) + constants_(j, i, k)));
  return r;
}

double QuadraticLieAlgebra::jacobi_residual() const {
  const int n = dim();
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vec ei = Vec::Unit(n, i), ej = Vec::Unit(n, j), ek = Vec::Unit(n, k);
        const Vec lhs = bracket(ei, bracket(ej, ek));
        const Vec rhs = bracket(bracket(ei, ej), ek) + bracket(ej, bracket(ei, ek));
        r = std::max(r, (lhs - rhs).cwiseAbs().maxCoeff());
      }
  return r;
}

double QuadraticLieAlgebra::invariance_residual() const {
  const int n = dim();
  double r = 0.0;
  for (int i = 0; i < n; ++i) {
    const Mat adx = ad_basis(i);
    const Mat m = adx.transpose() * pairing_.matrix() + pairing_.matrix() * adx;
    r = std::max(r, m.cwiseAbs().maxCoeff());
  }
  return r;
}

void QuadraticLieAlgebra::validate(double tol) const {
  if (antisymmetry_residual() > tol) throw Error(ErrorCode::InvalidArgument, name_ + ": bracket not antisymmetric");
  if (jacobi_residual() > tol) throw Error(ErrorCode::InvalidArgument, name_ + ": Jacobi identity fails");
  if (invariance_residual() > tol) throw Error(ErrorCode::InvalidArgument, name_ + ": pairing not invariant");
}

Tensor3 su2_structure_constants() {
  Tensor3 f(3);
  const int eps[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& p : eps) {
    f(p[0], p[1], p[2]) = 1.0;
    f(p[1], p[0], p[2]) = -1.0;
  }
  return f;
}

Tensor3 affine2_structure_constants() {
  Tensor3 f(2);
  f(0, 1, 1) = 1.0;
  f(1, 0, 1) = -1.0;
  return f;
}

QuadraticLieAlgebra su2() { return QuadraticLieAlgebra("su2", su2_structure_constants(), Pairing(Mat::Identity(3, 3))); }

QuadraticLieAlgebra abelian_double(int m) {
  return QuadraticLieAlgebra("abelian" + std::to_string(2 * m), Tensor3(static_cast<std::size_t>(2 * m)),
                             Pairing::split(m));
}

QuadraticLieAlgebra semiabelian_double(const std::string& name, const Tensor3& g_constants) {
  const int m = static_cast<int>(g_constants.dim());
  Tensor3 c(static_cast<std::size_t>(2 * m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int k = 0; k < m; ++k) {
        c(a, b, k) = g_constants(a, b, k);
        // [T_a, T~^b] = -sum_k f(a,k,b) T~^k
        c(a, m + b, m + k) = -g_constants(a, k, b);
        c(m + b, a, m + k) = g_constants(a, k, b);
      }
  return QuadraticLieAlgebra(name, std::move(c), Pairing::split(m));
}

QuadraticLieAlgebra su2_pair() {
  const Tensor3 f = su2_structure_constants();
  Tensor3 c(6);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int k = 0; k < 3; ++k) {
        c(a, b, k) = f(a, b, k);
        c(3 + a, 3 + b, 3 + k) = f(a, b, k);
      }
  Vec diag(6);
  diag << 1, 1, 1, -1, -1, -1;
  return QuadraticLieAlgebra("su2_pair", std::move(c), Pairing::diagonal(diag));
}

namespace {

using Cplx = std::complex<double>;
using CMat = Eigen::Matrix2cd;

double im_trace_pairing(const CMat& a, const CMat& b) { return (a * b).trace().imag(); }

}  // namespace

QuadraticLieAlgebra sl2c() {
  const Cplx i(0.0, 1.0);
  CMat s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -i, i, 0;
  s3 << 1, 0, 0, -1;
  std::vector<CMat> su2 = {-0.5 * i * s1, -0.5 * i * s2, -0.5 * i * s3};
  CMat b1, b2, b3;
  b1 << 0.5, 0, 0, -0.5;
  b2 << 0, 1, 0, 0;
  b3 << 0, i, 0, 0;
  const std::vector<CMat> sb2 = {b1, b2, b3};

  // Dual basis of sb(2): <T_a, T~^c> = delta.
  Mat cross(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) cross(a, b) = im_trace_pairing(su2[a], sb2[b]);
  const Mat w = cross.inverse();
  std::vector<CMat> basis = su2;
  for (int c = 0; c < 3; ++c) {
    CMat t = CMat::Zero();
    for (int b = 0; b < 3; ++b) t += w(b, c) * sb2[b];
    basis.push_back(t);
  }

  // Real coordinates of a complex 2x2 matrix in the 6-element real basis.
  Mat realify(8, 6);
  for (int k = 0; k < 6; ++k) {
    for (int e = 0; e < 4; ++e) {
      realify(e, k) = basis[k](e / 2, e % 2).real();
      realify(4 + e, k) = basis[k](e / 2, e % 2).imag();
    }
  }
  const auto solver = realify.colPivHouseholderQr();
  Tensor3 c(6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const CMat z = basis[a] * basis[b] - basis[b] * basis[a];
      Vec rhs(8);
      for (int e = 0; e < 4; ++e) {
        rhs(e) = z(e / 2, e % 2).real();
        rhs(4 + e) = z(e / 2, e % 2).imag();
      }
      const Vec coords = solver.solve(rhs);
      for (int k = 0; k < 6; ++k) c(a, b, k) = std::abs(coords(k)) < 1e-14 ? 0.0 : coords(k);
    }
  Mat eta(6, 6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const double v = im_trace_pairing(basis[a], basis[b]);
      eta(a, b) = std::abs(v) < 1e-14 ? 0.0 : v;
    }
  return QuadraticLieAlgebra("sl2c", std::move(c), Pairing(eta));
}

std::vector<std::string> builtin_algebra_names() {
  return {"abelian4", "abelian6", "affine_double", "su2_semiabelian", "su2_pair", "sl2c"};
}

QuadraticLieAlgebra builtin_algebra(const std::string& name) {
  if (name == "abelian4") return abelian_double(2);
  if (name == "abelian6") return abelian_double(3);
  if (name == "affine_double") return semiabelian_double("affine_double", affine2_structure_constants());
  if (name == "su2_semiabelian") return semiabelian_double("su2_semiabelian", su2_structure_constants());
  if (name == "su2_pair") return su2_pair();
  if (name == "sl2c") return sl2c();
  throw Error(ErrorCode::ConfigInvalid, "unknown algebra '" + name + "'");
}

bool is_manin_layout(const QuadraticLieAlgebra& algebra, double tol) {
  const int n = algebra.dim();
  if (n % 2 != 0) return false;
  const int m = n / 2;
  const Mat& eta = algebra.pairing().matrix();
  if (eta.topLeftCorner(m, m).cwiseAbs().maxCoeff() > tol) return false;
  if (eta.bottomRightCorner(m, m).cwiseAbs().maxCoeff() > tol) return false;
  if ((eta.topRightCorner(m, m) - Mat::Identity(m, m)).cwiseAbs().maxCoeff() > tol) return false;
  const Tensor3& c = algebra.structure_constants();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int k = 0; k < m; ++k) {
        if (std::abs(c(a, b, m + k)) > tol) return false;
        if (std::abs(c(m + a, m + b, k)) > tol) return false;
      }
  return true;
}

Subspace default_vplus(const QuadraticLieAlgebra& algebra) {
  const int n = algebra.dim();
  if (is_manin_layout(algebra)) {
    const int m = n / 2;
    Mat b(n, m);
    b << Mat::Identity(m, m), Mat::Identity(m, m);
    return Subspace(b);
  }
  if (algebra.name() == "su2_pair") {
    Mat b(6, 3);
    b << Mat::Identity(3, 3), 0.5 * Mat::Identity(3, 3);
    return Subspace(b);
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(algebra.pairing().matrix());
  const int q = algebra.pairing().signature().second;
  return Subspace(es.eigenvectors().rightCols(n - q));
}

Mat phi_matrix(const Mat& a) {
  const Eigen::Index n = a.rows();
  Mat aug = Mat::Zero(2 * n, 2 * n);
  aug.topLeftCorner(n, n) = a;
  aug.topRightCorner(n, n).setIdentity();
  const Mat e = aug.exp();
  return e.topRightCorner(n, n);
}

ExpChart::ExpChart(const QuadraticLieAlgebra& algebra, std::vector<int> indices) : indices_(std::move(indices)) {
  for (int idx : indices_) {
    if (idx < 0 || idx >= algebra.dim()) throw Error(ErrorCode::InvalidArgument, "chart index out of range");
    ad_.push_back(algebra.ad_basis(idx));
  }
}

Mat ExpChart::ad_generator(const Vec& x) const {
  if (x.size() != dim()) throw Error(ErrorCode::InvalidArgument, "chart point has wrong dimension");
  Mat m = Mat::Zero(ad_.front().rows(), ad_.front().cols());
  for (int a = 0; a < dim(); ++a) m += x(a) * ad_[static_cast<std::size_t>(a)];
  return m;
}

Mat ExpChart::adjoint(const Vec& x) const { return ad_generator(x).exp(); }

Mat ExpChart::restrict_(const Mat& full) const {
  const int m = dim();
  Mat out(m, m);
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < m; ++i) out(a, i) = full(indices_[static_cast<std::size_t>(a)], indices_[static_cast<std::size_t>(i)]);
  return out;
}

Mat ExpChart::right_mc(const Vec& x) const { return restrict_(phi_matrix(ad_generator(x))); }

Mat ExpChart::left_mc(const Vec& x) const { return restrict_(phi_matrix(-ad_generator(x))); }

}  // namespace courant
