#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shrinkers/geom_core.hpp"

namespace shrinkers {

/// How the immersion's jets are produced.
enum class DerivativeClass {
  Analytic,  // closed-form trigonometric immersion
  OdeBuilt,  // built from integrated profile curves
};

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// Closed-form invariants a family is known to satisfy, as functions of the
/// parameter point (u, v). Empty functions/bounds mean "no formula known".
struct ClosedFormInvariants {
  using ScalarFn = std::function<double(double, double)>;
  ScalarFn h2;
  ScalarFn sigma2;
  ScalarFn gauss;
  ScalarFn phi2;
  std::optional<Bounds> h2_bounds;
  std::optional<Bounds> sigma2_bounds;
  std::optional<Bounds> gauss_bounds;
  std::optional<Bounds> phi2_bounds;
};

struct Parameter {
  std::string name;
  double value = 0.0;
};

inline constexpr int kDefaultResolution = 128;
/// Axes along an ODE-built profile curve need more nodes for derivative-based
/// identities to reach 1e-6.
inline constexpr int kCurveAxisResolution = 512;

/// A doubly periodic (or banded) immersion of a parameter domain into C^2.
/// Implementations are immutable once constructed.
class Immersion {
 public:
  virtual ~Immersion() = default;

  virtual std::string family() const = 0;
  virtual std::vector<Parameter> params() const { return {}; }

  /// Fundamental domain (T_u, T_v) sampled starting at origin().
  virtual std::array<double, 2> periods() const = 0;
  virtual std::array<double, 2> origin() const { return {0.0, 0.0}; }

  /// False for immersions that may only be evaluated on a band (no quadrature).
  virtual bool closed() const { return true; }

  virtual SurfaceJet jet(double u, double v) const = 0;
  virtual Vec4 position(double u, double v) const { return jet(u, v).position; }

  virtual DerivativeClass derivative_class() const { return DerivativeClass::Analytic; }

  /// Grid resolution (N_u, N_v) used when none is requested.
  virtual std::array<int, 2> default_resolution() const { return {kDefaultResolution, kDefaultResolution}; }

  /// Ground truth: the immersion is (congruent to) the Clifford torus.
  virtual bool is_clifford() const = 0;

  virtual ClosedFormInvariants closed_forms() const { return {}; }
};

}  // namespace shrinkers
