#include "courant/algebroid.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "courant/error.hpp"

namespace courant {

Box Box::cube(int d, double half_width) { return {Vec::Constant(d, -half_width), Vec::Constant(d, half_width)}; }

bool Box::contains(const Vec& x) const {
  if (x.size() != lo.size()) return false;
  for (int i = 0; i < x.size(); ++i)
    if (!(x(i) >= lo(i) && x(i) <= hi(i))) return false;
  return true;
}

ExactChartCA::ExactChartCA(int d, ThreeForm h, Box domain, std::string label)
    : d_(d), h_(std::move(h)), domain_(std::move(domain)), label_(std::move(label)), pairing_(Pairing::split(d)) {
  if (d <= 0) throw Error(ErrorCode::InvalidArgument, "chart dimension must be positive");
  if (domain_.lo.size() != d || domain_.hi.size() != d) throw Error(ErrorCode::InvalidArgument, "domain has wrong dimension");
}

void ExactChartCA::check_domain(const Vec& x) const {
  if (!domain_.contains(x)) throw Error(ErrorCode::EvaluationOutsideDomain, "point outside chart domain of " + label_);
}

Tensor3 ExactChartCA::h(const Vec& x) const {
  check_domain(x);
  if (!h_) return Tensor3(static_cast<std::size_t>(d_));
  return h_(x);
}

ChartSection constant_section(Vec value) {
  return [v = std::move(value)](const Vec&) { return v; };
}

SectionJet section_jet(const ChartSection& s, const Vec& x, double step) { return {s(x), jacobian(s, x, step)}; }

Vec bracket_from_jets(const ExactChartCA& ca, const Vec& x, const SectionJet& u, const SectionJet& v) {
  return bracket_from_jets(ca.h(x), u, v);
}

Vec bracket_from_jets(const Tensor3& h, const SectionJet& u, const SectionJet& v) {
  const int d = static_cast<int>(h.dim());
  const Vec xu = u.value.head(d), au = u.value.tail(d);
  const Vec xv = v.value.head(d), bv = v.value.tail(d);
  const Mat dxu = u.jacobian.topRows(d), dau = u.jacobian.bottomRows(d);
  const Mat dxv = v.jacobian.topRows(d), dbv = v.jacobian.bottomRows(d);

  Vec out(2 * d);
  out.head(d) = dxv * xu - dxu * xv;
  Vec form = dbv * xu + dxu.transpose() * bv;   // L_X beta
  form -= dau * xv - dau.transpose() * xv;      // - i_Y d alpha
  for (int i = 0; i < d; ++i) {
    if (xu(i) == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      const double w = xu(i) * xv(j);
      if (w == 0.0) continue;
      for (int k = 0; k < d; ++k) form(k) += h(i, j, k) * w;
    }
  }
  out.tail(d) = form;
  return out;
}

Vec bracket(const ExactChartCA& ca, const ChartSection& u, const ChartSection& v, const Vec& x, double step) {
  ca.check_domain(x);
  return bracket_from_jets(ca, x, section_jet(u, x, step), section_jet(v, x, step));
}

Vec bracket(const ExactChartCA& ca, const ChartSection& u, const ChartSection& v, const Vec& x) {
  return bracket(ca, u, v, x, ca.fd.inner);
}

ChartSection bracket_section(const ExactChartCA& ca, ChartSection u, ChartSection v, double step) {
  return [&ca, u = std::move(u), v = std::move(v), step](const Vec& x) { return bracket(ca, u, v, x, step); };
}

Vec bracket(const QuadraticLieAlgebra& algebra, const Vec& u, const Vec& v) { return algebra.bracket(u, v); }

Vec anchor(const ExactChartCA& ca, const Vec& fiber_value) { return fiber_value.head(ca.dim()); }

Vec anchor(const QuadraticLieAlgebra&, const Vec&) { return Vec(0); }

Vec rho_transpose(const ExactChartCA& ca, const Vec& covector) {
  Vec out = Vec::Zero(ca.fiber_dim());
  out.tail(ca.dim()) = covector;
  return out;
}

Vec rho_transpose(const QuadraticLieAlgebra& algebra) { return Vec::Zero(algebra.dim()); }

Vec vector_field_bracket(const std::function<Vec(const Vec&)>& x_field, const std::function<Vec(const Vec&)>& y_field,
                         const Vec& x, double step) {
  return jacobian(y_field, x, step) * x_field(x) - jacobian(x_field, x, step) * y_field(x);
}

double AxiomReport::max_residual() const {
  return std::max({leibniz, anchor_homomorphism, module_rule, pairing_invariance, symmetrization});
}

AxiomReport check_axioms(const QuadraticLieAlgebra& algebra, double tol) {
  AxiomReport r;
  r.leibniz = algebra.jacobi_residual();
  r.pairing_invariance = algebra.invariance_residual();
  r.symmetrization = algebra.antisymmetry_residual();
  r.tol = tol;
  r.pass = r.max_residual() < tol;
  return r;
}

namespace {

struct QuadraticField {
  Vec a;
  Mat b;
  std::vector<Mat> c;  // component k: x^T c[k] x

  Vec operator()(const Vec& x) const {
    Vec out = a + b * x;
    for (std::size_t k = 0; k < c.size(); ++k) out(static_cast<Eigen::Index>(k)) += x.dot(c[k] * x);
    return out;
  }
};

QuadraticField random_field(int rows, int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  QuadraticField f{Vec(rows), Mat(rows, d), {}};
  for (int i = 0; i < rows; ++i) f.a(i) = u(rng);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < d; ++j) f.b(i, j) = u(rng);
  for (int k = 0; k < rows; ++k) {
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = 0.5 * u(rng);
    f.c.push_back(m);
  }
  return f;
}

}  // namespace

AxiomReport check_axioms(const ExactChartCA& ca, std::span<const Vec> samples, double tol, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int d = ca.dim();
  const int n = ca.fiber_dim();
  const double hi = ca.fd.inner;
  const double ho = ca.fd.outer;
  const Pairing& eta = ca.pairing();

  const QuadraticField fs = random_field(n, d, rng), ft = random_field(n, d, rng), fu = random_field(n, d, rng);
  const QuadraticField ff = random_field(1, d, rng);
  const ChartSection s = fs, t = ft, u = fu;
  const auto f = [ff](const Vec& x) { return ff(x)(0); };
  const ChartSection ft_scaled = [f, t](const Vec& x) { return Vec(f(x) * t(x)); };

  const ChartSection st = bracket_section(ca, s, t, hi);
  const ChartSection su = bracket_section(ca, s, u, hi);
  const ChartSection tu = bracket_section(ca, t, u, hi);

  AxiomReport r;
  for (const Vec& x : samples) {
    const Vec lhs = bracket(ca, s, tu, x, ho);
    const Vec rhs = bracket(ca, st, u, x, ho) + bracket(ca, t, su, x, ho);
    r.leibniz = std::max(r.leibniz, (lhs - rhs).cwiseAbs().maxCoeff());

    const auto rs = [&](const Vec& p) { return Vec(s(p).head(d)); };
    const auto rt = [&](const Vec& p) { return Vec(t(p).head(d)); };
    const Vec vb = vector_field_bracket(rs, rt, x, hi);
    r.anchor_homomorphism = std::max(r.anchor_homomorphism, (anchor(ca, st(x)) - vb).cwiseAbs().maxCoeff());

    const Vec grad_f = jacobian([&](const Vec& p) { return Vec(Vec::Constant(1, f(p))); }, x, hi).row(0).transpose();
    const double rho_s_f = grad_f.dot(anchor(ca, s(x)));
    const Vec mod = bracket(ca, s, ft_scaled, x, hi) - (f(x) * st(x) + rho_s_f * t(x));
    r.module_rule = std::max(r.module_rule, mod.cwiseAbs().maxCoeff());

    const auto tu_pair = [&](const Vec& p) { return Vec(Vec::Constant(1, eta(t(p), u(p)))); };
    const double lhs4 = (jacobian(tu_pair, x, hi).row(0).transpose()).dot(anchor(ca, s(x)));
    const double rhs4 = eta(st(x), u(x)) + eta(t(x), su(x));
    r.pairing_invariance = std::max(r.pairing_invariance, std::abs(lhs4 - rhs4));

    const auto st_pair = [&](const Vec& p) { return Vec(Vec::Constant(1, eta(s(p), t(p)))); };
    const Vec dst = jacobian(st_pair, x, hi).row(0).transpose();
    const Vec sym = st(x) + bracket(ca, t, s, x, hi) - rho_transpose(ca, dst);
    r.symmetrization = std::max(r.symmetrization, sym.cwiseAbs().maxCoeff());
  }
  r.tol = tol;
  r.pass = r.max_residual() < tol;
  return r;
}

double closedness_residual(const ExactChartCA& ca, std::span<const Vec> samples) {
  const int d = ca.dim();
  double r = 0.0;
  for (const Vec& x : samples) {
    const auto dh = gradient_all([&](const Vec& p) { return ca.h(p); }, x, ca.fd.inner);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            const double v = dh[i](j, k, l) - dh[j](i, k, l) + dh[k](i, j, l) - dh[l](i, j, k);
            r = std::max(r, std::abs(v));
          }
  }
  return r;
}

PullbackReport verify_pullback_conditions(const GroupAction& action, std::span<const Vec> samples, double tol,
                                          double step) {
  if (action.algebra == nullptr) throw Error(ErrorCode::InvalidArgument, "action has no algebra");
  const QuadraticLieAlgebra& alg = *action.algebra;
  const int n = alg.dim();
  PullbackReport rep;
  rep.tol = tol;
  rep.coisotropic = true;
  rep.exact = true;

  for (const Vec& x : samples) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto gi = [&](const Vec& p) { return Vec(action.generators(p).col(i)); };
        const auto gj = [&](const Vec& p) { return Vec(action.generators(p).col(j)); };
        const Vec lhs = vector_field_bracket(gi, gj, x, step);
        const Vec rhs = action.anchor(alg.bracket(Vec::Unit(n, i), Vec::Unit(n, j)), x);
        rep.closure_residual = std::max(rep.closure_residual, (lhs - rhs).cwiseAbs().maxCoeff());
      }

    const Mat g = action.generators(x);
    Eigen::JacobiSVD<Mat> svd(g, Eigen::ComputeFullV);
    const Vec& sv = svd.singularValues();
    const double scale = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > kRankTolerance * std::max(scale, 1e-300) && scale > 0.0) ++rank;
    const int kdim = n - rank;
    rep.kernel_dims.push_back(kdim);

    double resid = 0.0;
    if (kdim == 0) {
      rep.coisotropic = false;
      resid = 1.0;
    } else if (kdim < n) {
      const Subspace kernel(svd.matrixV().rightCols(kdim));
      const auto comp = orthogonal_complement(alg.pairing(), kernel);
      const Mat q = comp.complement.orthonormal();
      for (int c = 0; c < q.cols(); ++c) resid = std::max(resid, (g * q.col(c)).norm() / std::max(1.0, scale));
      if (2 * kdim < n) resid = std::max(resid, 1.0);
    }
    rep.coisotropy_residual = std::max(rep.coisotropy_residual, resid);
    if (resid >= tol) rep.coisotropic = false;
    if (!(rank == action.chart_dim && 2 * kdim == n && resid < tol)) rep.exact = false;
  }
  rep.pass = rep.closure_residual < tol && rep.coisotropic;
  return rep;
}

}  // namespace courant
