#include "shrinkers/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>

#include "shrinkers/errors.hpp"

namespace shrinkers {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Range range_of(const Field& f) {
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  return {*lo, *hi};
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

struct PointwiseResult {
  double shrinker = 0.0;
  double symplectic = 0.0;
  Range h2, sigma2, gauss, phi2;
};

PointwiseResult pointwise_checks(const SampledSurface& s) {
  PointwiseResult out;
  out.h2 = range_of(node_field(s, [](const SurfaceJet&, const FundamentalData& d) { return d.h2; }));
  out.sigma2 = range_of(node_field(s, [](const SurfaceJet&, const FundamentalData& d) { return d.sigma2; }));
  out.gauss = range_of(node_field(s, [](const SurfaceJet&, const FundamentalData& d) { return d.gauss; }));
  out.phi2 = range_of(node_field(s, [](const SurfaceJet& j, const FundamentalData&) { return norm2(j.position); }));
  for (std::size_t k = 0; k < s.jets.size(); ++k) {
    out.shrinker = std::max(out.shrinker, shrinker_residual(s.jets[k], s.data[k]));
    out.symplectic = std::max(out.symplectic, symplectic_residual(s.jets[k]));
  }
  return out;
}

double cubic_check(const SampledSurface& s, double lagrangian_tolerance) {
  double worst = 0.0;
  for (std::size_t k = 0; k < s.jets.size(); ++k) {
    worst = std::max(worst, lagrangian_data(s.jets[k], s.data[k], lagrangian_tolerance).cubic_symmetry_defect);
  }
  return worst;
}

double laplacian_check(const SampledSurface& s) {
  // Delta |phi|^2 = 4 - 2 |H|^2 on a self-shrinking surface.
  const Field phi2 = node_field(s, [](const SurfaceJet& j, const FundamentalData&) { return norm2(j.position); });
  const Field lap = laplace_beltrami(phi2, s);
  double worst = 0.0;
  for (std::size_t k = 0; k < lap.size(); ++k) worst = std::max(worst, std::abs(lap[k] - (4.0 - 2.0 * s.data[k].h2)));
  return worst;
}

StructureResiduals structure_check(const SampledSurface& s, const std::vector<FieldDerivatives>& derivs) {
  StructureResiduals worst;
  for (std::size_t k = 0; k < s.jets.size(); ++k) {
    const auto r = structure_residuals(s.jets[k], s.data[k], derivs[k]);
    worst.tangent = std::max(worst.tangent, r.tangent);
    worst.normal = std::max(worst.normal, r.normal);
  }
  return worst;
}

struct DivJHCheck {
  double residual = 0.0;
  double max_div = 0.0;
};

DivJHCheck div_jh_check(const SampledSurface& s) {
  const Field div = div_jh_intrinsic(s);
  DivJHCheck out;
  for (std::size_t k = 0; k < div.size(); ++k) {
    const Vec4 pt = split_tangent_normal(s.jets[k].position, s.jets[k]).tangent;
    const double rhs = dot(complex_structure(s.data[k].mean_curvature), pt);
    out.residual = std::max(out.residual, std::abs(div[k] - rhs));
  }
  out.max_div = max_abs(div);
  return out;
}

struct IntegralCheck {
  Integrals integrals;
  double willmore_ratio = 0.0;
  double genus_estimate = 0.0;
  int genus = 0;
};

IntegralCheck integral_check(const SampledSurface& s) {
  const WillmoreCheck w = willmore_check(s);
  const GaussBonnet gb = gauss_bonnet(s);
  IntegralCheck out;
  out.integrals = {w.area, w.willmore, gb.total_curvature, gb.sigma_integral, gb.formula_residual};
  out.willmore_ratio = w.ratio;
  out.genus_estimate = gb.genus_estimate;
  out.genus = gb.genus;
  return out;
}

Flag upper(double value, double bound, double slack) { return {value <= bound + slack, bound - value}; }
Flag lower(double value, double bound, double slack) { return {value >= bound - slack, value - bound}; }

HypothesisFlags evaluate_flags(const VerificationReport& r) {
  const Tolerances& t = r.tolerances;
  HypothesisFlags f;
  const double width = r.h2.max - r.h2.min;
  const double threshold = t.flag * std::max(1.0, r.h2.max);
  f.h2_constant = {width < threshold, threshold - width};
  f.h2_le_2 = upper(r.h2.max, 2.0, t.flag);
  f.h2_ge_2 = lower(r.h2.min, 2.0, t.flag);
  f.sigma2_le_2 = upper(r.sigma2.max, 2.0, t.flag);
  f.lagrangian = {r.residuals.symplectic <= t.lagrangian, t.lagrangian - r.residuals.symplectic};
  if (f.lagrangian.value && r.max_div_jh) {
    f.hamiltonian_stationary = {*r.max_div_jh <= t.div_jh, t.div_jh - *r.max_div_jh};
  } else {
    f.hamiltonian_stationary = {false, -std::numeric_limits<double>::infinity()};
  }
  const double phi_dev = std::max(std::abs(r.phi2.min - 2.0), std::abs(r.phi2.max - 2.0));
  f.spherical = {phi_dev <= t.flag, t.flag - phi_dev};
  f.k_nonneg = lower(r.gauss.min, 0.0, t.flag);
  f.k_nonpos = upper(r.gauss.max, 0.0, t.flag);
  f.sigma2_le_gap = upper(r.sigma2.max, theorem_a_bound(2), t.flag);
  return f;
}

template <typename T, typename F>
std::optional<T> guarded(VerificationReport& r, const char* name, std::future<T>& fut, F&& on_error) {
  try {
    return fut.get();
  } catch (const std::exception& e) {
    on_error(r, std::string(name) + ": " + e.what());
    return std::nullopt;
  }
}

void record_failure(VerificationReport& r, const std::string& what) { r.failures.push_back(what); }

void check_below(VerificationReport& r, const char* name, double value, double tol) {
  if (!(value <= tol)) record_failure(r, std::string(name) + " residual " + sci(value) + " exceeds " + sci(tol));
}

}  // namespace

double theorem_a_bound(int p) {
  if (p < 1) throw InadmissibleParameterError("codimension must be at least 1");
  return static_cast<double>(3 * p - 4) / static_cast<double>(2 * p - 3);
}

Tolerances Tolerances::defaults(DerivativeClass kind) {
  Tolerances t;
  if (kind == DerivativeClass::OdeBuilt) {
    t.shrinker = 1e-6;
    t.willmore = 1e-5;
  }
  return t;
}

VerificationReport run_suite(const Immersion& immersion, const SampledSurface& surface) {
  return run_suite(immersion, surface, Tolerances::defaults(immersion.derivative_class()));
}

VerificationReport run_suite(const Immersion& immersion, const SampledSurface& surface,
                             const Tolerances& tolerances) {
  VerificationReport r;
  r.family = immersion.family();
  r.params = immersion.params();
  r.grid = surface.grid;
  r.closed = surface.closed;
  r.clifford_truth = immersion.is_clifford();
  r.tolerances = tolerances;
  r.notes.push_back(
      "maslov periods integrate alpha_H = <JH, .> = -d beta with beta = arg det_C(phi_u, phi_v); "
      "u-loop along v = v0, v-loop along u = u0");

  const SampledSurface& s = surface;
  auto pointwise = std::async(std::launch::async, [&s] { return pointwise_checks(s); });
  std::future<double> laplacian;
  std::future<std::vector<FieldDerivatives>> derivs;
  std::future<DivJHCheck> divjh;
  std::future<IntegralCheck> integrals;
  if (s.closed) {
    laplacian = std::async(std::launch::async, [&s] { return laplacian_check(s); });
    derivs = std::async(std::launch::async, [&s] { return field_derivatives(s); });
    integrals = std::async(std::launch::async, [&s] { return integral_check(s); });
  } else {
    r.notes.push_back("band sample: spectral and quadrature checks not applicable");
  }

  const auto pw = guarded<PointwiseResult>(r, "pointwise", pointwise, record_failure);
  if (!pw) {
    r.classification = {"", "incomplete report", false};
    return r;
  }
  r.residuals.shrinker = pw->shrinker;
  r.residuals.symplectic = pw->symplectic;
  r.h2 = pw->h2;
  r.sigma2 = pw->sigma2;
  r.gauss = pw->gauss;
  r.phi2 = pw->phi2;
  check_below(r, "shrinker", r.residuals.shrinker, tolerances.shrinker);

  const bool lagrangian = r.residuals.symplectic <= tolerances.lagrangian;
  if (!lagrangian) r.notes.push_back("not lagrangian: div_jh, cubic_symmetry and maslov not applicable");
  if (lagrangian && s.closed) divjh = std::async(std::launch::async, [&s] { return div_jh_check(s); });

  if (lagrangian) {
    try {
      r.residuals.cubic_symmetry = cubic_check(s, kLagrangianTolerance);
      check_below(r, "cubic_symmetry", *r.residuals.cubic_symmetry, tolerances.cubic);
    } catch (const std::exception& e) {
      record_failure(r, std::string("cubic_symmetry: ") + e.what());
    }
  }

  if (s.closed) {
    if (auto v = guarded<double>(r, "laplacian", laplacian, record_failure)) {
      r.residuals.laplacian = *v;
      check_below(r, "laplacian", *v, tolerances.laplacian);
    }
    if (auto d = guarded<std::vector<FieldDerivatives>>(r, "structure", derivs, record_failure)) {
      const StructureResiduals sr = structure_check(s, *d);
      r.residuals.structure_tangent = sr.tangent;
      r.residuals.structure_normal = sr.normal;
      check_below(r, "structure_tangent", sr.tangent, tolerances.structure);
      check_below(r, "structure_normal", sr.normal, tolerances.structure);
    }
    if (lagrangian) {
      if (auto d = guarded<DivJHCheck>(r, "div_jh", divjh, record_failure)) {
        r.residuals.div_jh = d->residual;
        r.max_div_jh = d->max_div;
        check_below(r, "div_jh", d->residual, tolerances.div_jh);
      }
      try {
        const MaslovPeriods m = maslov_periods(s, 0, 0, kLagrangianTolerance);
        r.maslov = {m.u_loop, m.v_loop};
        if (!(std::max(std::abs(m.u_loop), std::abs(m.v_loop)) > tolerances.maslov)) {
          record_failure(r, "maslov periods vanish on a compact lagrangian sample");
        }
      } catch (const std::exception& e) {
        record_failure(r, std::string("maslov: ") + e.what());
      }
    }
    if (auto ic = guarded<IntegralCheck>(r, "integrals", integrals, record_failure)) {
      r.integrals = ic->integrals;
      r.genus_estimate = ic->genus_estimate;
      r.genus = ic->genus;
      const double ratio_error = std::abs(ic->willmore_ratio - 2.0);
      if (!(ratio_error <= tolerances.willmore)) {
        record_failure(r, "willmore ratio deviates from 2 by " + sci(ratio_error));
      }
      check_below(r, "gauss_bonnet", ic->integrals.gb_residual, tolerances.gauss_bonnet);
    }
  }

  r.flags = evaluate_flags(r);
  if (r.flags.h2_constant.value && !r.flags.h2_le_2.value && !r.flags.h2_ge_2.value) {
    r.notes.push_back("h2_constant holds but neither h2_le_2 nor h2_ge_2 does");
  }
  r.classification = classify(r);
  if (!r.classification.consistent) record_failure(r, "classification contradicts the known identity");
  return r;
}

Classification classify(const VerificationReport& r) {
  const HypothesisFlags& f = r.flags;
  Classification c;
  if (!r.closed) {
    c = {kConcludeWithheld, "hypotheses hold on a band only; the rigidity statements need a compact surface", true};
    return c;
  }
  if (f.lagrangian.value && f.h2_hypothesis()) {
    c = {kConcludeClifford, kBasisLagrangianH2, true};
  } else if (f.lagrangian.value && f.sigma2_le_2.value) {
    if (f.k_nonneg.value || f.k_nonpos.value) {
      c = {kConcludeClifford, kBasisLagrangianSigma2, true};
    } else {
      c = {kConcludeTorusSigma2, kBasisLagrangianSigma2, true};
    }
  } else if (f.sigma2_le_gap.value && f.h2_hypothesis()) {
    const bool sigma2_one = std::abs(r.sigma2.min - 1.0) <= r.tolerances.flag &&
                            std::abs(r.sigma2.max - 1.0) <= r.tolerances.flag;
    c = sigma2_one ? Classification{kConcludeSphere, kBasisGapUnit, true}
                   : Classification{kConcludeClifford, kBasisGap, true};
  } else {
    c = {kConcludeNone, "", true};
  }
  // "No rigidity" and the torus clause never contradict the ground truth.
  const bool says_clifford = c.conclusion == kConcludeClifford;
  const bool says_sphere = c.conclusion == kConcludeSphere;
  c.consistent = !(says_clifford && !r.clifford_truth) && !(says_sphere && r.clifford_truth);
  return c;
}

bool maslov_nontriviality(const VerificationReport& report) {
  if (!report.maslov) throw NonLagrangianError("maslov periods need a closed lagrangian sample");
  const auto& m = *report.maslov;
  return std::max(std::abs(m[0]), std::abs(m[1])) > report.tolerances.maslov;
}

VerificationReport verify_immersion(const Immersion& immersion, std::optional<std::array<int, 2>> resolution,
                                    std::optional<double> shrinker_tolerance) {
  const auto [nu, nv] = resolution.value_or(immersion.default_resolution());
  const SampledSurface s = sample(immersion, nu, nv);
  Tolerances t = Tolerances::defaults(immersion.derivative_class());
  if (shrinker_tolerance) t.shrinker = *shrinker_tolerance;
  return run_suite(immersion, s, t);
}

}  // namespace shrinkers
