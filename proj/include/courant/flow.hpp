#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "courant/algebra.hpp"
#include "courant/catalog.hpp"
#include "courant/genmetric.hpp"
#include "courant/gric.hpp"

namespace courant {

struct FlowOptions {
  double t_end = 0.1;
  double h = 1e-3;
  int record_every = 1;
  double blowup = 1e6;         // stop when max |GRic| exceeds this
  double min_margin = 1e-8;    // stop when the positivity margin drops below this
};

struct TrajectoryPoint {
  double t = 0.0;
  Vec state;
  double gric_norm = 0.0;
  double margin = 0.0;
};

struct FlowTrajectory {
  std::vector<TrajectoryPoint> points;
  std::string stop_reason;  // empty when t_end was reached
};

/// Right-hand side of an autonomous ODE; also reports max |GRic| at the state.
using FlowRhs = std::function<Vec(const Vec& y, double* gric_norm)>;
/// Positivity margin of the metric described by a state; <= 0 means invalid.
using MarginFn = std::function<double(const Vec& y)>;

/// Classical fixed-step RK4. Throws PositivityLost (with t) when a step lands
/// outside the space of generalized metrics and StepRejected when a stage fails.
FlowTrajectory integrate_rk4(const FlowRhs& rhs, const MarginFn& margin, const Vec& y0, const FlowOptions& opts);
/// Explicit Euler with the same bookkeeping; used as a cross-check.
FlowTrajectory integrate_euler(const FlowRhs& rhs, const MarginFn& margin, const Vec& y0, const FlowOptions& opts);

/// Point-case flow dV+/dt = -2 GRic + <[z, .], .> with a constant gauge z.
/// The state is the map Q: V+0 -> V-0 of a reference metric (V+ = graph Q),
/// flattened column-major.
class PointFlow {
 public:
  PointFlow(QuadraticLieAlgebra algebra, const PointMetric& reference, std::optional<Vec> gauge = std::nullopt);

  const QuadraticLieAlgebra& algebra() const { return algebra_; }
  PointMetric metric(const Vec& state) const;
  Vec state_of(const PointMetric& metric) const;
  /// -2 GRic + inner derivation by the gauge.
  DeformationForm flow_rhs(const PointMetric& metric) const;
  Vec rhs(const Vec& state, double* gric_norm) const;
  double margin(const Vec& state) const;

  FlowTrajectory integrate(const PointMetric& start, const FlowOptions& opts) const;
  FlowTrajectory integrate_euler(const PointMetric& start, const FlowOptions& opts) const;

 private:
  QuadraticLieAlgebra algebra_;
  Mat ref_plus_;
  Mat ref_minus_;
  Mat ref_inverse_;  // inverse of [ref_plus | ref_minus]
  std::optional<Vec> gauge_;
};

/// Chart-side right-hand side at x: de/dt = -2 GRic (nabla+ = Levi-Civita,
/// nabla- = canonical) plus an optional inner-derivation gauge, in coordinates.
Mat chart_flow_rhs(const Background& bg, const Vec& x, const ChartSection* gauge = nullptr, ChartSteps steps = {},
                   double* gric_norm = nullptr);

/// Finite ODE on the parameters of an invariant family.
struct ReducedOde {
  InvariantFamily family;
  Vec reference_point;
  Vec check_point;
  double tol = 1e-4;

  /// Parameter derivative read at the reference point.
  Vec rhs(const Vec& params, double* gric_norm = nullptr) const;
  /// max |rhs(reference) - rhs(check)|.
  double consistency(const Vec& params) const;
  double margin(const Vec& params) const;
  FlowTrajectory integrate(const Vec& params0, const FlowOptions& opts) const;
};

/// Throws NotInvariant when the reduced RHS at params differs between the
/// reference point and the check point by more than tol.
ReducedOde invariant_ansatz_reduce(const InvariantFamily& family, const Vec& params, double tol = 1e-4);

/// Gauge equivalence in the point case: integrates with and without a constant
/// gauge z and fits w with exp(ad_w) V0(T) = Vz(T) by Gauss-Newton.
struct GaugeEquivalenceReport {
  double direct_residual = 0.0;  // angle between exp(T ad_z) V0(T) and Vz(T)
  double fit_residual = 0.0;     // angle after fitting the generator
  Vec generator;
  double tol = 0.0;
  bool pass = false;
};

GaugeEquivalenceReport gauge_equivalence(const QuadraticLieAlgebra& algebra, const PointMetric& start, const Vec& z,
                                         const FlowOptions& opts, double tol = 1e-4);

}  // namespace courant
