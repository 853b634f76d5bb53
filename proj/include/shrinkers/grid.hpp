#pragma once

// Periodic parameter grids, spectral differentiation and intrinsic calculus
// on sampled surfaces. All derivatives are Fourier-spectral along grid lines;
// all integrals use the periodic trapezoid rule.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "shrinkers/geom_core.hpp"
#include "shrinkers/immersion.hpp"

namespace shrinkers {

struct PeriodicGrid {
  double period_u = 0.0;
  double period_v = 0.0;
  int nu = 0;
  int nv = 0;
  double origin_u = 0.0;
  double origin_v = 0.0;

  /// Validates positive periods and positive even resolutions.
  static PeriodicGrid make(double period_u, double period_v, int nu, int nv, double origin_u = 0.0,
                           double origin_v = 0.0);

  double step_u() const { return period_u / nu; }
  double step_v() const { return period_v / nv; }
  double u(int a) const { return origin_u + a * step_u(); }
  double v(int b) const { return origin_v + b * step_v(); }
  std::size_t size() const { return static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv); }
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(nv) + static_cast<std::size_t>(b);
  }
  bool operator==(const PeriodicGrid&) const = default;
};

using Field = std::vector<double>;
using VectorField = std::vector<Vec4>;

enum class Axis { U, V };

enum class DerivativeSource {
  Exact,     // jets supplied by the immersion
  Spectral,  // jets obtained by differentiating sampled positions
};

struct SampledSurface {
  PeriodicGrid grid;
  bool closed = true;
  std::vector<SurfaceJet> jets;
  std::vector<FundamentalData> data;
};

inline constexpr double kClosureTolerance = 1e-6;

/// Samples the immersion on its fundamental domain. Throws GridError when a
/// closed immersion does not close up, DegenerateJetError on singular nodes.
SampledSurface sample(const Immersion& immersion, const PeriodicGrid& grid,
                      DerivativeSource source = DerivativeSource::Exact,
                      double closure_tolerance = kClosureTolerance);

SampledSurface sample(const Immersion& immersion, int nu, int nv,
                      DerivativeSource source = DerivativeSource::Exact,
                      double closure_tolerance = kClosureTolerance);

/// Spectral derivative of a periodic sampled field along one grid axis.
Field spectral_derivative(std::span<const double> field, const PeriodicGrid& grid, Axis axis,
                          int order = 1);
VectorField spectral_derivative(const VectorField& field, const PeriodicGrid& grid, Axis axis,
                                int order = 1);

/// Evaluates f(jet, fundamental data) at every node.
template <typename F>
Field node_field(const SampledSurface& surface, F&& f) {
  Field out(surface.jets.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = f(surface.jets[k], surface.data[k]);
  return out;
}

/// Integral of field * sqrt(det g) over the fundamental domain.
double integrate(std::span<const double> field, const SampledSurface& surface);

/// Contravariant gradient components X^i = g^{ij} d_j f.
std::array<Field, 2> gradient(std::span<const double> field, const SampledSurface& surface);

/// (1/sqrt g) d_i (sqrt g X^i).
Field divergence(const std::array<Field, 2>& components, const SampledSurface& surface);

Field laplace_beltrami(std::span<const double> field, const SampledSurface& surface);

/// Gauss curvature from the metric alone (Brioschi formula).
Field intrinsic_gauss_curvature(const SampledSurface& surface);

/// d_i H and d_i phi^T at every node.
std::vector<FieldDerivatives> field_derivatives(const SampledSurface& surface);

struct WillmoreCheck {
  double willmore = 0.0;
  double area = 0.0;
  double ratio = 0.0;
};

WillmoreCheck willmore_check(const SampledSurface& surface);

struct GaussBonnet {
  double total_curvature = 0.0;
  double genus_estimate = 0.0;     // 1 - total / (4 pi), unrounded
  int genus = 0;
  double sigma_integral = 0.0;     // integral of (2 - |sigma|^2)
  double formula_residual = 0.0;   // |8 pi (1 - genus) - sigma_integral|
};

inline constexpr double kGenusTolerance = 0.01;

/// Throws InconsistentSamplingError when the genus estimate is not integral.
GaussBonnet gauss_bonnet(const SampledSurface& surface);

struct MaslovPeriods {
  double u_loop = 0.0;  // integral of alpha_H = <JH, .> along v = const
  double v_loop = 0.0;  // along u = const
};

/// Throws NonLagrangianError when some node exceeds `lagrangian_tolerance`.
MaslovPeriods maslov_periods(const SampledSurface& surface, int v_line = 0, int u_line = 0,
                             double lagrangian_tolerance = kLagrangianTolerance);

/// div JH computed intrinsically from the tangent field JH = X^i phi_i.
Field div_jh_intrinsic(const SampledSurface& surface);

}  // namespace shrinkers
