#include "shrinkers/grid.hpp"

#include <cmath>
#include <numbers>

#include "shrinkers/errors.hpp"

namespace shrinkers {

namespace {

constexpr double kPi = std::numbers::pi;

void require_closed(const SampledSurface& surface, const char* what) {
  if (!surface.closed) {
    throw GridError(std::string(what) + " requires a closed, doubly periodic surface");
  }
}

void require_matching(std::span<const double> field, const SampledSurface& surface) {
  if (field.size() != surface.grid.size()) throw GridError("field does not match the surface grid");
}

// Neumaier compensated sum in index order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void check_closure(const Immersion& immersion, const PeriodicGrid& grid, double tolerance) {
  const int probes = 4;
  for (int k = 0; k < probes; ++k) {
    const double v = grid.origin_v + grid.period_v * k / probes;
    const double u = grid.origin_u + grid.period_u * k / probes;
    const double gap_u =
        norm(immersion.position(grid.origin_u + grid.period_u, v) - immersion.position(grid.origin_u, v));
    const double gap_v =
        norm(immersion.position(u, grid.origin_v + grid.period_v) - immersion.position(u, grid.origin_v));
    if (gap_u > tolerance || gap_v > tolerance) {
      throw GridError("immersion is not periodic on the requested domain (closure gap " +
                      std::to_string(std::max(gap_u, gap_v)) + ")");
    }
  }
}

}  // namespace

PeriodicGrid PeriodicGrid::make(double period_u, double period_v, int nu, int nv, double origin_u,
                                double origin_v) {
  if (!(period_u > 0.0) || !(period_v > 0.0)) throw GridError("grid periods must be positive");
  if (nu <= 0 || nv <= 0 || nu % 2 != 0 || nv % 2 != 0) {
    throw GridError("grid resolution must be positive and even");
  }
  return {period_u, period_v, nu, nv, origin_u, origin_v};
}

SampledSurface sample(const Immersion& immersion, const PeriodicGrid& grid, DerivativeSource source,
                      double closure_tolerance) {
  SampledSurface surface;
  surface.grid = grid;
  surface.closed = immersion.closed();
  if (surface.closed) check_closure(immersion, grid, closure_tolerance);
  if (!surface.closed && source == DerivativeSource::Spectral) {
    throw GridError("spectral jets require a closed surface");
  }

  surface.jets.resize(grid.size());
  if (source == DerivativeSource::Exact) {
    for (int a = 0; a < grid.nu; ++a)
      for (int b = 0; b < grid.nv; ++b) surface.jets[grid.index(a, b)] = immersion.jet(grid.u(a), grid.v(b));
  } else {
    VectorField pos(grid.size());
    for (int a = 0; a < grid.nu; ++a)
      for (int b = 0; b < grid.nv; ++b) pos[grid.index(a, b)] = immersion.position(grid.u(a), grid.v(b));
    const VectorField du = spectral_derivative(pos, grid, Axis::U);
    const VectorField dv = spectral_derivative(pos, grid, Axis::V);
    const VectorField duu = spectral_derivative(pos, grid, Axis::U, 2);
    const VectorField dvv = spectral_derivative(pos, grid, Axis::V, 2);
    const VectorField duv = spectral_derivative(du, grid, Axis::V);
    for (int a = 0; a < grid.nu; ++a)
      for (int b = 0; b < grid.nv; ++b) {
        const std::size_t k = grid.index(a, b);
        surface.jets[k] = SurfaceJet{grid.u(a), grid.v(b), pos[k], du[k], dv[k], duu[k], duv[k], dvv[k]};
      }
  }

  surface.data.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) surface.data[k] = fundamental_data(surface.jets[k]);
  return surface;
}

SampledSurface sample(const Immersion& immersion, int nu, int nv, DerivativeSource source,
                      double closure_tolerance) {
  const auto [tu, tv] = immersion.periods();
  const auto [ou, ov] = immersion.origin();
  return sample(immersion, PeriodicGrid::make(tu, tv, nu, nv, ou, ov), source, closure_tolerance);
}

double integrate(std::span<const double> field, const SampledSurface& surface) {
  require_closed(surface, "integration");
  require_matching(field, surface);
  CompensatedSum sum;
  for (std::size_t k = 0; k < field.size(); ++k) sum.add(field[k] * surface.data[k].area_element);
  return sum.value() * surface.grid.step_u() * surface.grid.step_v();
}

std::array<Field, 2> gradient(std::span<const double> field, const SampledSurface& surface) {
  require_closed(surface, "gradient");
  require_matching(field, surface);
  const Field fu = spectral_derivative(field, surface.grid, Axis::U);
  const Field fv = spectral_derivative(field, surface.grid, Axis::V);
  std::array<Field, 2> out{Field(field.size()), Field(field.size())};
  for (std::size_t k = 0; k < field.size(); ++k) {
    const Sym2& gi = surface.data[k].inverse_metric;
    out[0][k] = gi.xx * fu[k] + gi.xy * fv[k];
    out[1][k] = gi.xy * fu[k] + gi.yy * fv[k];
  }
  return out;
}

Field divergence(const std::array<Field, 2>& components, const SampledSurface& surface) {
  require_closed(surface, "divergence");
  require_matching(components[0], surface);
  require_matching(components[1], surface);
  const std::size_t n = surface.grid.size();
  Field wu(n);
  Field wv(n);
  for (std::size_t k = 0; k < n; ++k) {
    wu[k] = surface.data[k].area_element * components[0][k];
    wv[k] = surface.data[k].area_element * components[1][k];
  }
  const Field du = spectral_derivative(wu, surface.grid, Axis::U);
  const Field dv = spectral_derivative(wv, surface.grid, Axis::V);
  Field out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = (du[k] + dv[k]) / surface.data[k].area_element;
  return out;
}

Field laplace_beltrami(std::span<const double> field, const SampledSurface& surface) {
  return divergence(gradient(field, surface), surface);
}

Field intrinsic_gauss_curvature(const SampledSurface& surface) {
  require_closed(surface, "intrinsic curvature");
  const PeriodicGrid& grid = surface.grid;
  const std::size_t n = grid.size();
  Field e(n);
  Field f(n);
  Field g(n);
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = surface.data[k].metric.xx;
    f[k] = surface.data[k].metric.xy;
    g[k] = surface.data[k].metric.yy;
  }
  const Field e_u = spectral_derivative(e, grid, Axis::U);
  const Field e_v = spectral_derivative(e, grid, Axis::V);
  const Field e_vv = spectral_derivative(e, grid, Axis::V, 2);
  const Field f_u = spectral_derivative(f, grid, Axis::U);
  const Field f_v = spectral_derivative(f, grid, Axis::V);
  const Field f_uv = spectral_derivative(f_u, grid, Axis::V);
  const Field g_u = spectral_derivative(g, grid, Axis::U);
  const Field g_v = spectral_derivative(g, grid, Axis::V);
  const Field g_uu = spectral_derivative(g, grid, Axis::U, 2);

  auto det3 = [](double a00, double a01, double a02, double a10, double a11, double a12, double a20,
                 double a21, double a22) {
    return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) + a02 * (a10 * a21 - a11 * a20);
  };

  Field out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double det_a = det3(-0.5 * e_vv[k] + f_uv[k] - 0.5 * g_uu[k], 0.5 * e_u[k], f_u[k] - 0.5 * e_v[k],
                              f_v[k] - 0.5 * g_u[k], e[k], f[k], 0.5 * g_v[k], f[k], g[k]);
    const double det_b = det3(0.0, 0.5 * e_v[k], 0.5 * g_u[k], 0.5 * e_v[k], e[k], f[k], 0.5 * g_u[k], f[k], g[k]);
    const double w = e[k] * g[k] - f[k] * f[k];
    out[k] = (det_a - det_b) / (w * w);
  }
  return out;
}

std::vector<FieldDerivatives> field_derivatives(const SampledSurface& surface) {
  require_closed(surface, "field derivatives");
  const std::size_t n = surface.grid.size();
  VectorField h(n);
  VectorField pt(n);
  for (std::size_t k = 0; k < n; ++k) {
    h[k] = surface.data[k].mean_curvature;
    pt[k] = split_tangent_normal(surface.jets[k].position, surface.jets[k]).tangent;
  }
  const VectorField h_u = spectral_derivative(h, surface.grid, Axis::U);
  const VectorField h_v = spectral_derivative(h, surface.grid, Axis::V);
  const VectorField pt_u = spectral_derivative(pt, surface.grid, Axis::U);
  const VectorField pt_v = spectral_derivative(pt, surface.grid, Axis::V);
  std::vector<FieldDerivatives> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = {{h_u[k], h_v[k]}, {pt_u[k], pt_v[k]}};
  return out;
}

WillmoreCheck willmore_check(const SampledSurface& surface) {
  const Field h2 = node_field(surface, [](const SurfaceJet&, const FundamentalData& fd) { return fd.h2; });
  const Field one(surface.grid.size(), 1.0);
  WillmoreCheck out;
  out.willmore = integrate(h2, surface);
  out.area = integrate(one, surface);
  out.ratio = out.willmore / out.area;
  return out;
}

GaussBonnet gauss_bonnet(const SampledSurface& surface) {
  const Field k = node_field(surface, [](const SurfaceJet&, const FundamentalData& fd) { return fd.gauss; });
  const Field defect =
      node_field(surface, [](const SurfaceJet&, const FundamentalData& fd) { return 2.0 - fd.sigma2; });
  GaussBonnet out;
  out.total_curvature = integrate(k, surface);
  out.genus_estimate = 1.0 - out.total_curvature / (4.0 * kPi);
  const double rounded = std::round(out.genus_estimate);
  if (std::abs(out.genus_estimate - rounded) > kGenusTolerance) {
    throw InconsistentSamplingError("genus estimate " + std::to_string(out.genus_estimate) +
                                    " is not an integer");
  }
  out.genus = static_cast<int>(rounded);
  out.sigma_integral = integrate(defect, surface);
  out.formula_residual = std::abs(8.0 * kPi * (1.0 - out.genus) - out.sigma_integral);
  return out;
}

MaslovPeriods maslov_periods(const SampledSurface& surface, int v_line, int u_line,
                             double lagrangian_tolerance) {
  require_closed(surface, "Maslov periods");
  const PeriodicGrid& grid = surface.grid;
  if (v_line < 0 || v_line >= grid.nv || u_line < 0 || u_line >= grid.nu) {
    throw GridError("loop base line outside the grid");
  }
  for (const auto& jet : surface.jets) {
    if (symplectic_residual(jet) > lagrangian_tolerance) {
      throw NonLagrangianError("Maslov periods require a Lagrangian surface");
    }
  }
  auto alpha = [&](std::size_t k, int i) {
    return dot(complex_structure(surface.data[k].mean_curvature), surface.jets[k].tangent(i));
  };
  CompensatedSum pu;
  for (int a = 0; a < grid.nu; ++a) pu.add(alpha(grid.index(a, v_line), 0));
  CompensatedSum pv;
  for (int b = 0; b < grid.nv; ++b) pv.add(alpha(grid.index(u_line, b), 1));
  return {pu.value() * grid.step_u(), pv.value() * grid.step_v()};
}

Field div_jh_intrinsic(const SampledSurface& surface) {
  const std::size_t n = surface.grid.size();
  std::array<Field, 2> x{Field(n), Field(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const Vec4 jh = complex_structure(surface.data[k].mean_curvature);
    const double bu = dot(jh, surface.jets[k].du);
    const double bv = dot(jh, surface.jets[k].dv);
    const Sym2& gi = surface.data[k].inverse_metric;
    x[0][k] = gi.xx * bu + gi.xy * bv;
    x[1][k] = gi.xy * bu + gi.yy * bv;
  }
  return divergence(x, surface);
}

}  // namespace shrinkers
