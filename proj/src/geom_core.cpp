#include "shrinkers/geom_core.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "shrinkers/errors.hpp"

namespace shrinkers {

namespace {

using cplx = std::complex<double>;

// sum_{ijkl} g^{ik} g^{jl} <a_ij, b_kl> for symmetric normal-valued forms.
template <typename FormA, typename FormB>
double contract_forms(const FormA& a, const FormB& b, const Sym2& ginv) {
  double total = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) total += ginv(i, k) * ginv(j, l) * dot(a(i, j), b(k, l));
  return total;
}

cplx complex_det(const Vec4& a, const Vec4& b) { return a.z1() * b.z2() - a.z2() * b.z1(); }

}  // namespace

Sym2 induced_metric(const SurfaceJet& jet) {
  Sym2 g{dot(jet.du, jet.du), dot(jet.du, jet.dv), dot(jet.dv, jet.dv)};
  const double scale2 = g.xx + g.yy;
  if (!(g.det() > kDegenerateGramRatio * scale2 * scale2)) {
    throw DegenerateJetError("degenerate jet: tangent vectors are linearly dependent");
  }
  return g;
}

TangentNormal split_tangent_normal(const Vec4& v, const SurfaceJet& jet) {
  const Sym2 ginv = induced_metric(jet).inverse();
  const double bu = dot(v, jet.du);
  const double bv = dot(v, jet.dv);
  TangentNormal out;
  out.coords = {ginv.xx * bu + ginv.xy * bv, ginv.xy * bu + ginv.yy * bv};
  out.tangent = out.coords[0] * jet.du + out.coords[1] * jet.dv;
  out.normal = v - out.tangent;
  return out;
}

FundamentalData fundamental_data(const SurfaceJet& jet) {
  FundamentalData fd;
  fd.metric = induced_metric(jet);
  fd.inverse_metric = fd.metric.inverse();
  fd.area_element = std::sqrt(fd.metric.det());
  fd.sigma[0] = split_tangent_normal(jet.duu, jet).normal;
  fd.sigma[1] = split_tangent_normal(jet.duv, jet).normal;
  fd.sigma[2] = split_tangent_normal(jet.dvv, jet).normal;
  const Sym2& gi = fd.inverse_metric;
  fd.mean_curvature = gi.xx * fd.sigma[0] + 2.0 * gi.xy * fd.sigma[1] + gi.yy * fd.sigma[2];
  auto sigma = [&fd](int i, int j) -> const Vec4& { return fd.second_form(i, j); };
  fd.sigma2 = contract_forms(sigma, sigma, gi);
  fd.h2 = norm2(fd.mean_curvature);
  fd.gauss = 0.5 * (fd.h2 - fd.sigma2);
  return fd;
}

double shrinker_residual(const SurfaceJet& jet, const FundamentalData& fd) {
  const Vec4 pos_normal = split_tangent_normal(jet.position, jet).normal;
  return norm(fd.mean_curvature + pos_normal);
}

double shrinker_residual(const SurfaceJet& jet) {
  return shrinker_residual(jet, fundamental_data(jet));
}

double symplectic_residual(const SurfaceJet& jet) {
  induced_metric(jet);
  return std::abs(kaehler_form(jet.du, jet.dv));
}

LagrangianData lagrangian_data(const SurfaceJet& jet, const FundamentalData& fd,
                               double tolerance) {
  const double omega = symplectic_residual(jet);
  if (omega > tolerance) {
    throw NonLagrangianError("tangent plane is not Lagrangian (|omega| = " +
                             std::to_string(omega) + ")");
  }
  LagrangianData out;

  const cplx det = complex_det(jet.du, jet.dv);
  const cplx ddet_u = complex_det(jet.duu, jet.dv) + complex_det(jet.du, jet.duv);
  const cplx ddet_v = complex_det(jet.duv, jet.dv) + complex_det(jet.du, jet.dvv);
  double angle = std::arg(det);
  if (angle < 0.0) angle += 2.0 * std::numbers::pi;
  out.angle = angle;
  out.angle_gradient = {(ddet_u / det).imag(), (ddet_v / det).imag()};

  const Sym2& gi = fd.inverse_metric;
  const double gu = gi.xx * out.angle_gradient[0] + gi.xy * out.angle_gradient[1];
  const double gv = gi.xy * out.angle_gradient[0] + gi.yy * out.angle_gradient[1];
  const Vec4 grad_beta = gu * jet.du + gv * jet.dv;
  out.angle_residual = norm(fd.mean_curvature - complex_structure(grad_beta));

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        out.cubic[i][j][k] = dot(fd.second_form(i, j), complex_structure(jet.tangent(k)));

  double defect = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const double c = out.cubic[i][j][k];
        defect = std::max({defect, std::abs(c - out.cubic[i][k][j]), std::abs(c - out.cubic[j][i][k]),
                           std::abs(c - out.cubic[k][j][i]), std::abs(c - out.cubic[j][k][i]),
                           std::abs(c - out.cubic[k][i][j])});
      }
  out.cubic_symmetry_defect = defect;
  return out;
}

double metric_operator_norm(const Vec4& l_u, const Vec4& l_v, const Sym2& metric) {
  // Largest eigenvalue of g^{-1} M with M_ij = <L_i, L_j>.
  const Sym2 gram{dot(l_u, l_u), dot(l_u, l_v), dot(l_v, l_v)};
  const Sym2 gi = metric.inverse();
  const double n00 = gi.xx * gram.xx + gi.xy * gram.xy;
  const double n01 = gi.xx * gram.xy + gi.xy * gram.yy;
  const double n10 = gi.xy * gram.xx + gi.yy * gram.xy;
  const double n11 = gi.xy * gram.xy + gi.yy * gram.yy;
  const double tr = n00 + n11;
  const double det = n00 * n11 - n01 * n10;
  const double disc = std::max(0.0, tr * tr - 4.0 * det);
  const double lambda = 0.5 * (tr + std::sqrt(disc));
  return std::sqrt(std::max(0.0, lambda));
}

StructureResiduals structure_residuals(const SurfaceJet& jet, const FundamentalData& fd,
                                       const FieldDerivatives& derivs) {
  const TangentNormal pos = split_tangent_normal(jet.position, jet);
  std::array<Vec4, 2> tangent_defect;
  std::array<Vec4, 2> normal_defect;
  for (int i = 0; i < 2; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const TangentNormal dh = split_tangent_normal(derivs.mean_curvature[idx], jet);
    const TangentNormal dpt = split_tangent_normal(derivs.tangent_position[idx], jet);
    // A_H phi_i = -(d_i H)^T, nabla_i phi^T = (d_i phi^T)^T.
    tangent_defect[idx] = -dh.tangent - jet.tangent(i) + dpt.tangent;
    const Vec4 sigma_v_pt = pos.coords[0] * fd.second_form(i, 0) + pos.coords[1] * fd.second_form(i, 1);
    normal_defect[idx] = dh.normal - sigma_v_pt;
  }
  return {metric_operator_norm(tangent_defect[0], tangent_defect[1], fd.metric),
          metric_operator_norm(normal_defect[0], normal_defect[1], fd.metric)};
}

DivJHResult div_jh_residual(const SurfaceJet& jet, const FundamentalData& fd,
                            const FieldDerivatives& derivs) {
  const Sym2& gi = fd.inverse_metric;
  double div = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      div += gi(i, j) *
             dot(complex_structure(derivs.mean_curvature[static_cast<std::size_t>(i)]), jet.tangent(j));
  const Vec4 pt = split_tangent_normal(jet.position, jet).tangent;
  const double rhs = dot(complex_structure(fd.mean_curvature), pt);
  return {div, rhs, std::abs(div - rhs)};
}

SphericalDecomposition spherical_decomposition(const SurfaceJet& jet, const FundamentalData& fd,
                                               double tolerance) {
  const double phi2 = norm2(jet.position);
  if (std::abs(phi2 - 2.0) > tolerance) {
    throw NonSphericalError("point does not lie on the sphere of radius sqrt(2)");
  }
  auto hat = [&](int i, int j) { return fd.second_form(i, j) + 0.5 * fd.metric(i, j) * jet.position; };
  SphericalDecomposition out;
  out.sigma_hat2 = contract_forms(hat, hat, fd.inverse_metric);
  out.defect = std::abs(fd.sigma2 - 1.0 - out.sigma_hat2);
  return out;
}

}  // namespace shrinkers
