#pragma once

// Pointwise extrinsic geometry of a surface immersed in R^4 = C^2.
//
// Every function here consumes a SurfaceJet (position and first/second
// parametric derivatives at one parameter point) and is a pure function of
// it. Quantities that need derivatives of derived fields (H, the tangent
// part of the position) take those derivatives explicitly; the grid layer
// computes them spectrally.

#include <array>

#include "shrinkers/ambient.hpp"

namespace shrinkers {

struct SurfaceJet {
  double u = 0.0;
  double v = 0.0;
  Vec4 position;
  Vec4 du;
  Vec4 dv;
  Vec4 duu;
  Vec4 duv;
  Vec4 dvv;

  const Vec4& tangent(int i) const { return i == 0 ? du : dv; }
  const Vec4& second(int i, int j) const {
    if (i == 0 && j == 0) return duu;
    if (i == 1 && j == 1) return dvv;
    return duv;
  }
};

/// Symmetric 2x2 matrix.
struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  double operator()(int i, int j) const {
    if (i == 0 && j == 0) return xx;
    if (i == 1 && j == 1) return yy;
    return xy;
  }
  double det() const { return xx * yy - xy * xy; }
  double trace() const { return xx + yy; }
  Sym2 inverse() const {
    const double d = det();
    return {yy / d, -xy / d, xx / d};
  }
};

struct FundamentalData {
  Sym2 metric;
  Sym2 inverse_metric;
  double area_element = 0.0;     // sqrt(det g)
  std::array<Vec4, 3> sigma;      // sigma_uu, sigma_uv, sigma_vv
  Vec4 mean_curvature;            // H = g^{ij} sigma_ij
  double sigma2 = 0.0;            // |sigma|^2
  double h2 = 0.0;                // |H|^2
  double gauss = 0.0;             // K = (|H|^2 - |sigma|^2) / 2

  const Vec4& second_form(int i, int j) const {
    if (i == 0 && j == 0) return sigma[0];
    if (i == 1 && j == 1) return sigma[2];
    return sigma[1];
  }
};

/// Relative Gram-determinant threshold below which a jet is degenerate.
inline constexpr double kDegenerateGramRatio = 1e-12;

/// Throws DegenerateJetError when the tangent vectors are dependent.
Sym2 induced_metric(const SurfaceJet& jet);

FundamentalData fundamental_data(const SurfaceJet& jet);

struct TangentNormal {
  Vec4 tangent;
  Vec4 normal;
  std::array<double, 2> coords{};  // tangent = coords[0] du + coords[1] dv
};

TangentNormal split_tangent_normal(const Vec4& v, const SurfaceJet& jet);

/// |H + phi^perp|; zero exactly on self-shrinkers.
double shrinker_residual(const SurfaceJet& jet);
double shrinker_residual(const SurfaceJet& jet, const FundamentalData& fd);

/// |omega(phi_u, phi_v)|; zero exactly on Lagrangian tangent planes.
double symplectic_residual(const SurfaceJet& jet);

using CubicForm = std::array<std::array<std::array<double, 2>, 2>, 2>;

struct LagrangianData {
  double angle = 0.0;                      // beta, in [0, 2 pi)
  std::array<double, 2> angle_gradient{};  // (d_u beta, d_v beta)
  CubicForm cubic{};                       // C_ijk = <sigma_ij, J phi_k>
  double cubic_symmetry_defect = 0.0;
  /// |H - J grad beta|. The angle is arg det_C(phi_u, phi_v); with that
  /// choice H = J grad beta and alpha_H = <JH, .> = -d beta.
  double angle_residual = 0.0;
};

/// Lagrangian tolerance for the precondition of lagrangian_data.
inline constexpr double kLagrangianTolerance = 1e-8;

/// Throws NonLagrangianError if symplectic_residual exceeds `tolerance`.
LagrangianData lagrangian_data(const SurfaceJet& jet, const FundamentalData& fd,
                               double tolerance = kLagrangianTolerance);

/// Parametric derivatives of the fields H and phi^T at one point.
struct FieldDerivatives {
  std::array<Vec4, 2> mean_curvature;    // d_u H, d_v H
  std::array<Vec4, 2> tangent_position;  // d_u phi^T, d_v phi^T
};

struct StructureResiduals {
  double tangent = 0.0;  // sup_{|v|=1} |A_H v - v + nabla_v phi^T|
  double normal = 0.0;   // sup_{|v|=1} |nabla^perp_v H - sigma(v, phi^T)|
};

StructureResiduals structure_residuals(const SurfaceJet& jet, const FundamentalData& fd,
                                       const FieldDerivatives& derivs);

struct DivJHResult {
  double div_jh = 0.0;
  double jh_dot_tangent_position = 0.0;  // <JH, phi^T>
  double residual = 0.0;
};

/// div JH via g^{ij} <J d_i H, phi_j>. The grid layer also computes it
/// intrinsically as (1/sqrt g) d_i(sqrt g X^i).
DivJHResult div_jh_residual(const SurfaceJet& jet, const FundamentalData& fd,
                            const FieldDerivatives& derivs);

struct SphericalDecomposition {
  double sigma_hat2 = 0.0;  // |sigma_hat|^2, sigma_hat_ij = sigma_ij + g_ij phi / 2
  double defect = 0.0;      // ||sigma|^2 - 1 - |sigma_hat|^2|
};

inline constexpr double kSphericalTolerance = 1e-8;

/// Requires ||phi|^2 - 2| <= tolerance (point on the sphere of radius sqrt 2).
SphericalDecomposition spherical_decomposition(const SurfaceJet& jet, const FundamentalData& fd,
                                               double tolerance = kSphericalTolerance);

/// Largest |a L_u + b L_v| over metric-unit directions a phi_u + b phi_v.
double metric_operator_norm(const Vec4& l_u, const Vec4& l_v, const Sym2& metric);

}  // namespace shrinkers
