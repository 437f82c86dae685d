#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace courant {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Dense n x n x n array, row-major: (i, j, k) -> (i * n + j) * n + k.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t n) : n_(n), data_(n * n * n, 0.0) {}

  std::size_t dim() const { return n_; }

  double& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * n_ + j) * n_ + k]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  double max_abs() const;

  /// max |T(i,j,k) + T(j,i,k)|, |T(i,j,k) + T(i,k,j)|, |T(i,j,k) + T(k,j,i)|.
  double antisymmetry_residual() const;

  Tensor3& operator+=(const Tensor3& other);
  Tensor3& operator-=(const Tensor3& other);
  Tensor3& operator*=(double s);

  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// T'(a,b,c) = sum T(i,j,k) Q(i,a) Q(j,b) Q(k,c). Q is n x r; result has dim r.
Tensor3 change_basis(const Tensor3& t, const Mat& q);

/// Trilinear evaluation T(u, v, w).
double contract(const Tensor3& t, const Vec& u, const Vec& v, const Vec& w);

}  // namespace courant
