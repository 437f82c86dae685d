#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "courant/kernels.hpp"
#include "courant/linalg.hpp"

namespace courant {

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Tensor3::antisymmetry_residual() const {
  double r = 0.0;
  const auto& t = *this;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) {
        r = std::max(r, std::abs(t(i, j, k) + t(j, i, k)));
        r = std::max(r, std::abs(t(i, j, k) + t(i, k, j)));
        r = std::max(r, std::abs(t(i, j, k) + t(k, j, i)));
      }
  return r;
}

Tensor3& Tensor3::operator+=(const Tensor3& other) {
  if (other.n_ != n_) throw std::invalid_argument("Tensor3: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& other) {
  if (other.n_ != n_) throw std::invalid_argument("Tensor3: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Tensor3& Tensor3::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Tensor3 change_basis(const Tensor3& t, const Mat& q) {
  const std::size_t n = t.dim();
  if (static_cast<std::size_t>(q.rows()) != n) throw std::invalid_argument("change_basis: row mismatch");
  const std::size_t r = static_cast<std::size_t>(q.cols());

  std::vector<double> qr(n * r), qt(r * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < r; ++a) {
      qr[i * r + a] = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a));
      qt[a * n + i] = qr[i * r + a];
    }

  // Third slot: (n*n x n) * (n x r).
  std::vector<double> s1(n * n * r);
  kernels::gemm(t.data(), qr, s1, n * n, n, r);

  // Second slot: for each i, (r x n) * (n x r).
  std::vector<double> s2(n * r * r);
  for (std::size_t i = 0; i < n; ++i)
    kernels::gemm(qt, std::span<const double>(s1).subspan(i * n * r, n * r),
                  std::span<double>(s2).subspan(i * r * r, r * r), r, n, r);

  // First slot: (r x n) * (n x r*r).
  Tensor3 out(r);
  kernels::gemm(qt, s2, out.data(), r, n, r * r);
  return out;
}

double contract(const Tensor3& t, const Vec& u, const Vec& v, const Vec& w) {
  const std::size_t n = t.dim();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (u(static_cast<Eigen::Index>(i)) == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double uv = u(static_cast<Eigen::Index>(i)) * v(static_cast<Eigen::Index>(j));
      if (uv == 0.0) continue;
      s += uv * kernels::dot(t.data().subspan((i * n + j) * n, n), std::span<const double>(w.data(), n));
    }
  }
  return s;
}

}  // namespace courant
