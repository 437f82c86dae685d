#pragma once

#include <functional>
#include <vector>

#include "courant/algebra.hpp"
#include "courant/algebroid.hpp"
#include "courant/genmetric.hpp"
#include "courant/linalg.hpp"

namespace courant {

/// Connection coefficients on TM at a point: entry i is A_i with
/// nabla_{d_i} Z = d_i Z + A_i Z.
using Coefficients = std::vector<Mat>;
using CoeffField = std::function<Coefficients(const Vec&)>;

/// Compatible metric connection on an exact chart CA with a generalized
/// metric. Both summands are carried to TM by the anchor: plus acts on
/// rho(V+), minus on rho(V-), each preserving g.
struct ChartConnection {
  CoeffField plus;
  CoeffField minus;
};

/// A shift a = a+ + a- in the same transported form: D_i with g D_i antisymmetric.
struct Shift {
  CoeffField plus;
  CoeffField minus;
};

CoeffField zero_coefficients(int d);
/// Christoffel symbols (A_i)_{mj} = Gamma^m_{ij} from g by central differences.
Coefficients levi_civita(const MatField& g, const Vec& x, double step);
/// g-preserving connection with g(T(X,Y),Z) = -H(X,Y,Z): A = Gamma - g^{-1} H / 2.
Coefficients torsionful(const MatField& g, const ThreeForm& h, const Vec& x, double step);

ChartConnection levi_civita_pair(const ChartMetric& metric, double step = 1e-5);

/// Total 3-form of the splitting in which V+ is the graph of g: H0 + db.
ThreeForm effective_h(const ExactChartCA& ca, const ChartMetric& metric, double step = 1e-5);

/// Max over directions of |d_i g - A_i^T g - g A_i| at x.
double metricity_residual(const MatField& g, const Coefficients& a, const Vec& x, double step);

/// Torsion T^m_{ij} = (A_i)_{mj} - (A_j)_{mi} as a tensor T(i, j, m).
Tensor3 tm_torsion(const Coefficients& a);

/// max |g(T(X,Y),Z) + H(X,Y,Z)| over coordinate triples.
double torsion_identity_residual(const Mat& g, const Coefficients& a, const Tensor3& h);

/// nabla + a. Throws ShiftNotAntisymmetric when g D_i is not antisymmetric at
/// the probe point.
ChartConnection vary(const ChartConnection& nabla, const Shift& shift, const ChartMetric& metric, const Vec& probe);

/// Shift given by ambient operators a_i on the fiber R^{2d} (acting on column
/// vectors). Throws ShiftNotBlockDiagonal / ShiftNotAntisymmetric.
Shift shift_from_ambient(const ChartMetric& metric, const ExactChartCA& ca,
                         std::function<std::vector<Mat>(const Vec&)> ambient, const Vec& probe);

/// Ambient coefficients Gamma_i with nabla_i v = d_i v + Gamma_i v for fiber vectors v.
std::vector<Mat> ambient_coefficients(const ChartConnection& nabla, const ChartMetric& metric, const Vec& x,
                                      double step = 1e-5);

/// Torsion c of the connection in the frame s_I = lift_frame columns
/// (plus lifts of d_k, then minus lifts).
Tensor3 torsion_c_frame(const ExactChartCA& ca, const ChartMetric& metric, const ChartConnection& nabla,
                        const Vec& x);
/// Same tensor on the signed bases (plus basis then minus basis).
Tensor3 torsion_c(const ExactChartCA& ca, const ChartMetric& metric, const ChartConnection& nabla, const Vec& x);
/// Point case: the only connection is 0 and c(u,v,w) = <[u,v],w>.
Tensor3 torsion_c(const QuadraticLieAlgebra& algebra);

/// Frame Gram matrix blockdiag(2g, -2g) and block connection matrices.
Mat frame_gram(const Mat& g);
std::vector<Mat> frame_coefficients(const ChartConnection& nabla, const Vec& x);

/// nabla- + a- with the (+,-,-) part of c removed.
ChartConnection canonical_minus(const ExactChartCA& ca, const ChartMetric& metric, const ChartConnection& seed);
/// a-_i = (nabla-)_i - (nabla-_can)_i at x; zero for the canonical connection.
Coefficients canonical_correction(const ExactChartCA& ca, const ChartMetric& metric, const ChartConnection& seed,
                                  const Vec& x);

/// R_{kl} = d_k A_l - d_l A_k + [A_k, A_l] at x.
std::vector<std::vector<Mat>> curvature(const CoeffField& a, const Vec& x, double step);
/// R(X, Y) Z for vector fields X, Y, Z at x.
Vec curvature_apply(const CoeffField& a, const Vec& x, const Vec& xv, const Vec& yv, const Vec& z, double step);

}  // namespace courant
