#pragma once

#include <span>
#include <string>
#include <vector>

#include "courant/algebra.hpp"
#include "courant/algebroid.hpp"
#include "courant/connection.hpp"
#include "courant/genmetric.hpp"

namespace courant {

/// GRic as a matrix over signed bases: rows index the V+ basis, columns the
/// V- basis. For the chart backend the three terms are kept separately.
struct GRicResult {
  Mat value;
  Mat t1;
  Mat t2;
  Mat t3;
  Mat plus_basis;
  Mat minus_basis;
  std::string connection;
};

/// sum sigma_a tau_b c(u, p_a, m_b) c(p_a, m_b, v) for a tensor c given on
/// the concatenated signed basis (plus vectors first).
Mat double_vertex_term(const Tensor3& c_signed, const Vec& signs, int plus_count);

/// Point case with the zero connection.
GRicResult gric_point(const QuadraticLieAlgebra& algebra, const PointMetric& metric);

struct ChartSteps {
  double inner = 1e-5;
  double outer = 1e-4;
};

GRicResult gric_chart(const ExactChartCA& ca, const ChartMetric& metric, const ChartConnection& nabla, const Vec& x,
                      ChartSteps steps = {});

/// Ricci tensor of the g-preserving connection with g(T(X,Y),Z) = -H(X,Y,Z),
/// Ric(X,Y) = Tr(Z -> R(Z,X)Y). Throws NotPositiveDefinite.
Mat classical_ricci_gH(const MatField& g, const ThreeForm& h, const Vec& x, ChartSteps steps = {});
/// Ricci tensor of an arbitrary TM connection with the same trace convention.
Mat ricci_of(const CoeffField& a, const Vec& x, double step);

/// s- in V- (ambient fiber vector) from a- given in transported form:
/// <s-, y> = -sum_b tau_b a-(rho m_b)(m_b, y).
Vec s_minus_correction(const ChartMetric& metric, const CoeffField& a_minus, const Vec& x);
ChartSection s_minus_section(const ChartMetric& metric, CoeffField a_minus);
/// <[s, p_a], m_b> over the signed bases at x.
Mat inner_derivation_signed(const ExactChartCA& ca, const ChartMetric& metric, const ChartSection& s, const Vec& x,
                            double step);

struct VariationReport {
  double residual = 0.0;
  double plus_only_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// |GRic(nabla + a) - GRic(nabla) - <[s-, u+], v->| and, separately, the
/// difference produced by the a+ part alone.
VariationReport check_variation_theorem(const ExactChartCA& ca, const ChartMetric& metric,
                                        const ChartConnection& nabla, const Shift& shift, std::span<const Vec> samples,
                                        double tol, ChartSteps steps = {});

struct ExactTheoremReport {
  double residual = 0.0;  // |GRic - Ric(g,H)(rho, rho) - <[s-, u+], v->|
  double t2 = 0.0;        // max |T2| in the canonical gauge
  double t3 = 0.0;        // max |T3| in the canonical gauge
  double tol = 0.0;
  double term_tol = 0.0;
  bool pass = false;
};

/// With nabla = plus part of `seed` and nabla-_can when `canonical` is set,
/// otherwise with `seed` itself and the s- term for a- = seed- - nabla-_can.
ExactTheoremReport check_exact_theorem(const ExactChartCA& ca, const ChartMetric& metric, const ChartConnection& seed,
                                       bool canonical, std::span<const Vec> samples, double tol, double term_tol,
                                       ChartSteps steps = {});

}  // namespace courant
