#include "courant/connection.hpp"

#include <cmath>

#include "courant/error.hpp"
#include "courant/finite_diff.hpp"

namespace courant {

namespace {

Mat block_diag(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

double antisym_residual(const Mat& m) { return (m + m.transpose()).cwiseAbs().maxCoeff(); }

}  // namespace

CoeffField zero_coefficients(int d) {
  return [d](const Vec&) { return Coefficients(static_cast<std::size_t>(d), Mat::Zero(d, d)); };
}

Coefficients levi_civita(const MatField& g, const Vec& x, double step) {
  const int d = static_cast<int>(x.size());
  const Mat ginv = g(x).inverse();
  const auto dg = gradient_all(g, x, step);
  Coefficients a(static_cast<std::size_t>(d), Mat::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec low(d);
      for (int k = 0; k < d; ++k) low(k) = 0.5 * (dg[i](j, k) + dg[j](i, k) - dg[k](i, j));
      a[i].col(j) = ginv * low;
    }
  return a;
}

Coefficients torsionful(const MatField& g, const ThreeForm& h, const Vec& x, double step) {
  Coefficients a = levi_civita(g, x, step);
  if (!h) return a;
  const int d = static_cast<int>(x.size());
  const Mat ginv = g(x).inverse();
  const Tensor3 hx = h(x);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec low(d);
      for (int k = 0; k < d; ++k) low(k) = hx(i, j, k);
      a[i].col(j) -= 0.5 * ginv * low;
    }
  return a;
}

ChartConnection levi_civita_pair(const ChartMetric& metric, double step) {
  const MatField g = [metric](const Vec& x) { return metric.g(x); };
  CoeffField lc = [g, step](const Vec& x) { return levi_civita(g, x, step); };
  return {lc, lc};
}

ThreeForm effective_h(const ExactChartCA& ca, const ChartMetric& metric, double step) {
  return [ca, metric, step](const Vec& x) {
    const int d = metric.dim();
    Tensor3 h = ca.h(x);
    const auto db = gradient_all([&metric](const Vec& p) { return metric.b(p); }, x, step);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) h(i, j, k) += db[i](j, k) + db[j](k, i) + db[k](i, j);
    return h;
  };
}

double metricity_residual(const MatField& g, const Coefficients& a, const Vec& x, double step) {
  const Mat gx = g(x);
  double r = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    const Mat dg = central_diff(g, x, i, step);
    r = std::max(r, (dg - a[i].transpose() * gx - gx * a[i]).cwiseAbs().maxCoeff());
  }
  return r;
}

Tensor3 tm_torsion(const Coefficients& a) {
  const std::size_t d = a.size();
  Tensor3 t(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t m = 0; m < d; ++m)
        t(i, j, m) = a[i](static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(j)) -
                     a[j](static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(i));
  return t;
}

double torsion_identity_residual(const Mat& g, const Coefficients& a, const Tensor3& h) {
  const Tensor3 t = tm_torsion(a);
  const int d = static_cast<int>(g.rows());
  double r = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double lowered = 0.0;
        for (int m = 0; m < d; ++m) lowered += g(k, m) * t(i, j, m);
        r = std::max(r, std::abs(lowered + h(i, j, k)));
      }
  return r;
}

ChartConnection vary(const ChartConnection& nabla, const Shift& shift, const ChartMetric& metric, const Vec& probe) {
  const Mat g = metric.g(probe);
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  for (const CoeffField* f : {&shift.plus, &shift.minus}) {
    if (!*f) continue;
    for (const Mat& di : (*f)(probe))
      if (antisym_residual(g * di) > 1e-10 * scale * std::max(1.0, di.cwiseAbs().maxCoeff()))
        throw Error(ErrorCode::ShiftNotAntisymmetric, "g D is not antisymmetric");
  }
  const auto add = [](const CoeffField& base, const CoeffField& extra) -> CoeffField {
    if (!extra) return base;
    return [base, extra](const Vec& x) {
      Coefficients a = base(x);
      const Coefficients b = extra(x);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
      return a;
    };
  };
  return {add(nabla.plus, shift.plus), add(nabla.minus, shift.minus)};
}

Shift shift_from_ambient(const ChartMetric& metric, const ExactChartCA& ca,
                         std::function<std::vector<Mat>(const Vec&)> ambient, const Vec& probe) {
  const int d = metric.dim();
  const Mat& eta = ca.pairing().matrix();
  {
    const Mat lf = metric.lift_frame(probe);
    const Mat lfinv = lf.inverse();
    for (const Mat& a : ambient(probe)) {
      const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
      if (antisym_residual(eta * a) > 1e-10 * scale)
        throw Error(ErrorCode::ShiftNotAntisymmetric, "shift does not preserve the pairing");
      const Mat blocks = lfinv * a * lf;
      const double off =
          std::max(blocks.topRightCorner(d, d).cwiseAbs().maxCoeff(), blocks.bottomLeftCorner(d, d).cwiseAbs().maxCoeff());
      if (off > 1e-10 * scale) throw Error(ErrorCode::ShiftNotBlockDiagonal, "shift mixes V+ and V-");
    }
  }
  auto block = [metric, ambient, d](bool plus) -> CoeffField {
    return [metric, ambient, d, plus](const Vec& x) {
      const Mat lf = metric.lift_frame(x);
      const Mat lfinv = lf.inverse();
      Coefficients out;
      for (const Mat& a : ambient(x)) {
        const Mat blocks = lfinv * a * lf;
        out.push_back(plus ? Mat(blocks.topLeftCorner(d, d)) : Mat(blocks.bottomRightCorner(d, d)));
      }
      return out;
    };
  };
  return {block(true), block(false)};
}

Mat frame_gram(const Mat& g) { return block_diag(2.0 * g, -2.0 * g); }

std::vector<Mat> frame_coefficients(const ChartConnection& nabla, const Vec& x) {
  const Coefficients ap = nabla.plus(x);
  const Coefficients am = nabla.minus(x);
  std::vector<Mat> out;
  for (std::size_t i = 0; i < ap.size(); ++i) out.push_back(block_diag(ap[i], am[i]));
  return out;
}

std::vector<Mat> ambient_coefficients(const ChartConnection& nabla, const ChartMetric& metric, const Vec& x,
                                      double step) {
  const Mat lf = metric.lift_frame(x);
  const Mat lfinv = lf.inverse();
  const std::vector<Mat> omega = frame_coefficients(nabla, x);
  std::vector<Mat> out;
  for (int i = 0; i < x.size(); ++i) {
    const Mat dlf = central_diff([&metric](const Vec& p) { return metric.lift_frame(p); }, x, i, step);
    out.push_back(lf * omega[static_cast<std::size_t>(i)] * lfinv - dlf * lfinv);
  }
  return out;
}

Tensor3 torsion_c_frame(const ExactChartCA& ca, const ChartMetric& metric, const ChartConnection& nabla,
                        const Vec& x) {
  ca.check_domain(x);
  const int d = metric.dim();
  const int n = 2 * d;
  const double step = ca.fd.inner;
  const Mat lf = metric.lift_frame(x);
  const auto dlf = gradient_all([&metric](const Vec& p) { return metric.lift_frame(p); }, x, step);
  const Tensor3 h = ca.h(x);
  const Mat& eta = ca.pairing().matrix();

  std::vector<SectionJet> jets;
  for (int a = 0; a < n; ++a) {
    SectionJet j{lf.col(a), Mat(n, d)};
    for (int i = 0; i < d; ++i) j.jacobian.col(i) = dlf[static_cast<std::size_t>(i)].col(a);
    jets.push_back(std::move(j));
  }

  const Mat gm = frame_gram(metric.g(x));
  std::vector<Mat> gomega;
  for (const Mat& om : frame_coefficients(nabla, x)) gomega.push_back(gm * om);
  const auto k_of = [d](int idx) { return static_cast<std::size_t>(idx % d); };

  Tensor3 c(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Vec br = eta * bracket_from_jets(h, jets[a], jets[b]);
      for (int k = 0; k < n; ++k) {
        const double val = br.dot(lf.col(k)) - gomega[k_of(a)](k, b) + gomega[k_of(b)](k, a) - gomega[k_of(k)](b, a);
        c(a, b, k) = val;
      }
    }
  return c;
}

namespace {

Mat signed_change(const ChartMetric& metric, const Vec& x) {
  const Mat f = metric.frame(x) / std::sqrt(2.0);
  return block_diag(f, f);
}

}  // namespace

Tensor3 torsion_c(const ExactChartCA& ca, const ChartMetric& metric, const ChartConnection& nabla, const Vec& x) {
  return change_basis(torsion_c_frame(ca, metric, nabla, x), signed_change(metric, x));
}

Tensor3 torsion_c(const QuadraticLieAlgebra& algebra) { return algebra.cartan_tensor(); }

Coefficients canonical_correction(const ExactChartCA& ca, const ChartMetric& metric, const ChartConnection& seed,
                                  const Vec& x) {
  const int d = metric.dim();
  const Tensor3 c = torsion_c_frame(ca, metric, seed, x);
  const Mat ginv = metric.g(x).inverse();
  Coefficients out(static_cast<std::size_t>(d), Mat::Zero(d, d));
  for (int i = 0; i < d; ++i) {
    Mat low(d, d);  // low(k, j) = c(+i, -j, -k)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) low(k, j) = c(i, d + j, d + k);
    // nabla-_can = nabla- + D with D_i = -g^{-1} low / 2; the correction is -D.
    out[static_cast<std::size_t>(i)] = 0.5 * ginv * low;
  }
  return out;
}

ChartConnection canonical_minus(const ExactChartCA& ca, const ChartMetric& metric, const ChartConnection& seed) {
  CoeffField minus = [ca, metric, seed](const Vec& x) {
    Coefficients a = seed.minus(x);
    const Coefficients corr = canonical_correction(ca, metric, seed, x);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= corr[i];
    return a;
  };
  return {seed.plus, minus};
}

std::vector<std::vector<Mat>> curvature(const CoeffField& a, const Vec& x, double step) {
  const int d = static_cast<int>(x.size());
  const Coefficients ax = a(x);
  std::vector<Coefficients> da;  // da[k][l] = d_k A_l
  for (int k = 0; k < d; ++k) {
    const double h = fd_step(step, x(k));
    Vec xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    Coefficients ap = a(xp);
    const Coefficients am = a(xm);
    for (int l = 0; l < d; ++l) ap[l] = (ap[l] - am[l]) / (2.0 * h);
    da.push_back(std::move(ap));
  }
  std::vector<std::vector<Mat>> r(static_cast<std::size_t>(d), std::vector<Mat>(static_cast<std::size_t>(d)));
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) r[k][l] = da[k][l] - da[l][k] + ax[k] * ax[l] - ax[l] * ax[k];
  return r;
}

Vec curvature_apply(const CoeffField& a, const Vec& x, const Vec& xv, const Vec& yv, const Vec& z, double step) {
  const auto r = curvature(a, x, step);
  Vec out = Vec::Zero(z.size());
  for (int k = 0; k < xv.size(); ++k)
    for (int l = 0; l < yv.size(); ++l) out += xv(k) * yv(l) * (r[k][l] * z);
  return out;
}

}  // namespace courant
