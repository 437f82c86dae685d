#pragma once

#include <functional>
#include <string>
#include <vector>

#include "courant/algebroid.hpp"
#include "courant/genmetric.hpp"

namespace courant {

/// An exact chart CA together with a generalized metric on it.
struct Background {
  std::string name;
  ExactChartCA ca;
  ChartMetric metric;
};

/// Coordinates x -> exp(x^a T_a) on SU(2) and the left-invariant coframe
/// theta^a_i (rows a, columns i).
Mat su2_coframe(const Vec& x);
/// lambda * theta^1 ^ theta^2 ^ theta^3, in frame components lambda * eps_abc.
ThreeForm su2_volume_form(double lambda);

Background flat_background(int d);
/// Round sphere of radius r in stereographic coordinates.
Background round_s2(double r);
/// Left-invariant metric diag(p, p, q) in the frame theta, H0 = lambda vol.
Background squashed_s3(double p, double q, double lambda = 0.0);
/// Bi-invariant metric p * delta with H0 = lambda vol; lambda = p is the WZW point.
Background su2_family(double p, double lambda);
/// Round S^3 of radius r: p = r^2 / 4.
Background round_s3(double r);
/// Squashed S^3 with a non-constant b-field and H0 = 0.4 vol.
Background twisted_s3();
/// R^4 with a non-closed H (for negative tests).
Background nonclosed_r4();

std::vector<std::string> background_names();
/// Names: flat3, round_s2, round_s3, squashed_s3, su2_wzw, twisted_s3.
Background background(const std::string& name);

/// A left-invariant ansatz: e(x) = theta^T E(params) theta on a group chart.
struct InvariantFamily {
  std::string name;
  int chart_dim = 0;
  std::vector<std::string> param_names;
  std::function<Mat(const Vec&)> coframe;
  std::function<Mat(const Vec&)> frame_e;
  /// Frame components of a 3-form H0 (constant in the frame), as lambda * eps.
  std::function<ThreeForm(const Vec&)> h0;
  /// Parameter derivative from the frame components of de/dt.
  std::function<Vec(const Mat&, const Vec&)> read;
  Box domain;

  Background realize(const Vec& params) const;
};

InvariantFamily flat_torus_family();
/// Parameter r^2 of the round S^3.
InvariantFamily round_s3_family();
/// Parameters (p, q) of diag(p, p, q).
InvariantFamily squashed_s3_family();
/// Parameter p of p * delta with H0 = lambda vol.
InvariantFamily su2_wzw_family(double lambda);

std::vector<std::string> family_names();
InvariantFamily family(const std::string& name, double lambda = 0.0);

}  // namespace courant
