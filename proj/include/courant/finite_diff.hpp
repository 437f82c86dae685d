#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "courant/linalg.hpp"

namespace courant {

/// Step sizes for central differences. `inner` is used for first derivatives of
/// closed-form data, `outer` when differentiating a quantity that is itself
/// produced by a finite difference.
struct FiniteDiff {
  double inner = 1e-5;
  double outer = 1e-4;
};

inline double fd_step(double base, double coordinate) { return base * std::max(1.0, std::abs(coordinate)); }

/// Central difference of f along coordinate i at x. Works for any f returning
/// a type supporting subtraction and scalar division (double, Vec, Mat, Tensor3).
template <class F>
auto central_diff(const F& f, const Vec& x, int i, double base_step) {
  const double h = fd_step(base_step, x(i));
  Vec xp = x;
  Vec xm = x;
  xp(i) += h;
  xm(i) -= h;
  auto fp = f(xp);
  auto fm = f(xm);
  fp -= fm;
  fp *= 1.0 / (2.0 * h);
  return fp;
}

template <class F>
auto gradient_all(const F& f, const Vec& x, double base_step) {
  using R = decltype(central_diff(f, x, 0, base_step));
  std::vector<R> out;
  out.reserve(static_cast<std::size_t>(x.size()));
  for (int i = 0; i < x.size(); ++i) out.push_back(central_diff(f, x, i, base_step));
  return out;
}

/// Jacobian of a vector-valued map: column i = d f / d x_i.
template <class F>
Mat jacobian(const F& f, const Vec& x, double base_step) {
  Mat jac;
  for (int i = 0; i < x.size(); ++i) {
    Vec col = central_diff(f, x, i, base_step);
    if (i == 0) jac.resize(col.size(), x.size());
    jac.col(i) = col;
  }
  return jac;
}

}  // namespace courant
