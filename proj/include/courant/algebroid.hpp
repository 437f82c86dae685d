#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "courant/algebra.hpp"
#include "courant/finite_diff.hpp"
#include "courant/linalg.hpp"
#include "courant/quadspace.hpp"

namespace courant {

/// Section of (T + T*)U over a chart: x -> (X(x), alpha(x)) in R^{2d}.
using ChartSection = std::function<Vec(const Vec&)>;
/// Totally antisymmetric 3-tensor field on a chart.
using ThreeForm = std::function<Tensor3(const Vec&)>;

struct Box {
  Vec lo;
  Vec hi;

  static Box cube(int d, double half_width);
  bool contains(const Vec& x) const;
};

/// (T + T*)U with pairing a(Y) + b(X), anchor (X, a) -> X and the bracket
/// ([X,Y], L_X b - i_Y da + H(X,Y,.)) for a closed 3-form H.
class ExactChartCA {
 public:
  ExactChartCA(int d, ThreeForm h, Box domain, std::string label = {});

  int dim() const { return d_; }
  int fiber_dim() const { return 2 * d_; }
  const std::string& label() const { return label_; }
  const Box& domain() const { return domain_; }
  const Pairing& pairing() const { return pairing_; }

  /// Throws EvaluationOutsideDomain.
  void check_domain(const Vec& x) const;
  Tensor3 h(const Vec& x) const;
  const ThreeForm& h_field() const { return h_; }

  FiniteDiff fd;

 private:
  int d_;
  ThreeForm h_;
  Box domain_;
  std::string label_;
  Pairing pairing_;
};

ChartSection constant_section(Vec value);

/// Value and first derivatives (column i = d/dx_i) of a section at a point.
struct SectionJet {
  Vec value;
  Mat jacobian;
};

SectionJet section_jet(const ChartSection& s, const Vec& x, double step);

/// Courant bracket from jets at x.
Vec bracket_from_jets(const ExactChartCA& ca, const Vec& x, const SectionJet& u, const SectionJet& v);
/// Same, with H(x) already evaluated.
Vec bracket_from_jets(const Tensor3& h, const SectionJet& u, const SectionJet& v);
/// Courant bracket of two sections at x, derivatives by central differences.
Vec bracket(const ExactChartCA& ca, const ChartSection& u, const ChartSection& v, const Vec& x, double step);
Vec bracket(const ExactChartCA& ca, const ChartSection& u, const ChartSection& v, const Vec& x);
/// The section x -> [u, v](x).
ChartSection bracket_section(const ExactChartCA& ca, ChartSection u, ChartSection v, double step);

/// Point case: the Lie bracket.
Vec bracket(const QuadraticLieAlgebra& algebra, const Vec& u, const Vec& v);

Vec anchor(const ExactChartCA& ca, const Vec& fiber_value);
/// Over a point TM = 0, so the anchor is the zero map into a 0-dimensional space.
Vec anchor(const QuadraticLieAlgebra& algebra, const Vec& u);

/// rho^t(df) = (0, df) in the chart splitting.
Vec rho_transpose(const ExactChartCA& ca, const Vec& covector);
/// Point case: rho^t is the zero map.
Vec rho_transpose(const QuadraticLieAlgebra& algebra);

/// Lie bracket of vector fields on a chart.
Vec vector_field_bracket(const std::function<Vec(const Vec&)>& x_field, const std::function<Vec(const Vec&)>& y_field,
                         const Vec& x, double step);

struct AxiomReport {
  double leibniz = 0.0;             // [s,[t,u]] = [[s,t],u] + [t,[s,u]]
  double anchor_homomorphism = 0.0; // rho[s,t] = [rho s, rho t]
  double module_rule = 0.0;         // [s, f t] = f[s,t] + (rho(s) f) t
  double pairing_invariance = 0.0;  // rho(s)<t,u> = <[s,t],u> + <t,[s,u]>
  double symmetrization = 0.0;      // [s,t] + [t,s] = rho^t d<s,t>
  double tol = 0.0;
  bool pass = false;

  double max_residual() const;
};

AxiomReport check_axioms(const QuadraticLieAlgebra& algebra, double tol);
/// Random quadratic sections and functions, evaluated at each sample.
AxiomReport check_axioms(const ExactChartCA& ca, std::span<const Vec> samples, double tol, std::uint64_t seed = 7);

/// max |dH| at the samples.
double closedness_residual(const ExactChartCA& ca, std::span<const Vec> samples);

/// Infinitesimal action of a quadratic Lie algebra on a chart: column i of
/// generators(x) is the vector field rho(e_i) at x.
struct GroupAction {
  const QuadraticLieAlgebra* algebra = nullptr;
  int chart_dim = 0;
  std::function<Mat(const Vec&)> generators;

  Vec anchor(const Vec& u, const Vec& x) const { return generators(x) * u; }
};

struct PullbackReport {
  double closure_residual = 0.0;
  double coisotropy_residual = 0.0;
  bool coisotropic = false;
  bool exact = false;  // transitive with Lagrangian stabilizers at every sample
  std::vector<int> kernel_dims;
  double tol = 0.0;
  bool pass = false;  // closure and coisotropy
};

PullbackReport verify_pullback_conditions(const GroupAction& action, std::span<const Vec> samples, double tol,
                                          double step = 1e-5);

}  // namespace courant
