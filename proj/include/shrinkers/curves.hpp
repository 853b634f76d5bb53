#pragma once

// Planar profile curves of the product and rotational self-shrinking tori.
//
// Both families are arclength-parametrized curves Gamma(t) in C with
// Gamma'' = i kappa Gamma' and a curvature law depending on (Gamma, Gamma'):
//   Abresch-Langer:  kappa = <Gamma', i Gamma>
//   Anciaux:         kappa = <Gamma', i Gamma> (|Gamma|^2 - 1) / |Gamma|^2
// Their first integrals r^2 (1 - r'^2) e^{-r^2} = rho^2 and
// r^4 (1 - r'^2) e^{-r^2} = E^2 are the "conserved constants".

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace shrinkers {

enum class CurveKind { AbreschLanger, Anciaux };

std::string to_string(CurveKind kind);

struct CurveFamily {
  CurveKind kind = CurveKind::AbreschLanger;
  double constant = 0.0;  // rho (Abresch-Langer) or E (Anciaux)

  /// Throws InadmissibleParameterError outside (0, max_constant(kind)].
  static CurveFamily make(CurveKind kind, double constant);

  /// e^{-1/2} (unit circle) or 2/e (circle of radius sqrt 2).
  static double max_constant(CurveKind kind);
  static double circle_radius(CurveKind kind);
  static CurveFamily circle(CurveKind kind) { return make(kind, max_constant(kind)); }

  bool is_circle() const;
};

/// Arclength position and unit tangent of a profile curve.
struct CurvePoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double tau = 0.0;  // sampling parameter, see monitor_weight()

  double radius() const;
  double radial_speed() const;  // r' = <Gamma, Gamma'> / r
};

/// Curvature from the family's law in terms of position and tangent.
double curvature_law(CurveKind kind, const CurvePoint& point);

/// d kappa / dt along the flow Gamma'' = i kappa Gamma'.
double curvature_rate(CurveKind kind, const CurvePoint& point);

/// Sampling parameter tau of a profile curve:
/// d tau / dt = sqrt(1 + a kappa^2 + b / r^2). Uniform nodes in tau cluster
/// where the curve bends or passes close to the origin.
inline constexpr double kMonitorCurvatureWeight = 1.0;
inline constexpr double kMonitorRadiusWeight = 0.25;

double monitor_weight(CurveKind kind, const CurvePoint& point);
/// d/dt of monitor_weight along the curve.
double monitor_rate(CurveKind kind, const CurvePoint& point);

/// Curvature as a function of r alone: rho e^{r^2/2}, or
/// E e^{r^2/2} (r^2 - 1) / r^3.
double closed_form_curvature(const CurveFamily& family, double r);

/// r^2 (1 - r'^2) e^{-r^2} or r^4 (1 - r'^2) e^{-r^2}.
double first_integral(CurveKind kind, const CurvePoint& point);

/// Outer turning radius r_max: largest root of the first integral with r' = 0.
double outer_turning_radius(const CurveFamily& family);

/// Default local tolerance of the curve integrator.
inline constexpr double kCurveTolerance = 1e-11;

struct CurveSample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double r = 0.0;
  double kappa = 0.0;
};

class ProfileCurve {
 public:
  const CurveFamily& family() const { return family_; }
  double length() const { return length_; }
  /// Period used when the curve is evaluated periodically (== length()).
  double period() const { return length_; }
  const std::vector<CurveSample>& samples() const { return samples_; }

  /// Total polar angle advance divided by 2 pi.
  double winding() const { return winding_; }
  /// Winding per radial oscillation; NaN when the oscillation count is unknown.
  double rotation_number() const { return rotation_number_; }
  int radial_periods() const { return radial_periods_; }

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  /// |Gamma(L) - Gamma(0)| + |Gamma'(L) - Gamma'(0)|.
  double closure_error() const { return closure_error_; }
  double max_first_integral_drift() const { return max_drift_; }  // relative
  double max_speed_defect() const { return max_speed_defect_; }
  double max_curvature_mismatch() const { return max_curvature_mismatch_; }

  /// State at arclength t, wrapped into [0, length()) for periodic use.
  CurvePoint state_at(double t) const;
  /// Gamma'' = i kappa Gamma' at the given state.
  std::array<double, 2> acceleration(const CurvePoint& point) const;

  /// Total length of the sampling parameter tau over the curve.
  double param_length() const { return param_length_; }
  /// State at parameter tau, wrapped into [0, param_length()).
  CurvePoint state_at_param(double tau) const;

  struct ParamDerivatives {
    std::array<double, 2> first;   // d Gamma / d tau
    std::array<double, 2> second;  // d^2 Gamma / d tau^2
  };
  ParamDerivatives param_derivatives(const CurvePoint& point) const;

 private:
  friend class CurveBuilder;

  CurveFamily family_;
  double tolerance_ = kCurveTolerance;
  double length_ = 0.0;
  double param_length_ = 0.0;
  std::vector<CurveSample> samples_;
  std::vector<CurvePoint> checkpoints_;
  double winding_ = 0.0;
  double rotation_number_ = 0.0;
  int radial_periods_ = 0;
  double r_min_ = 0.0;
  double r_max_ = 0.0;
  double closure_error_ = 0.0;
  double max_drift_ = 0.0;
  double max_speed_defect_ = 0.0;
  double max_curvature_mismatch_ = 0.0;
};

/// Integrates Gamma'' = i kappa Gamma' over [0, length] and records
/// `num_samples` uniformly spaced samples in [0, length). Throws
/// InadmissibleParameterError on inconsistent initial data and
/// IntegratorError when the first integral drifts above 1e-8.
ProfileCurve integrate_curve(const CurveFamily& family, const CurvePoint& initial, double length,
                             int num_samples = 1024, double tolerance = kCurveTolerance);

/// Initial state at the outer turning point: Gamma = (r_max, 0), Gamma' = (0, 1).
CurvePoint outer_turning_state(const CurveFamily& family);

/// The closed circular member of the family, one revolution.
ProfileCurve circle_curve(CurveKind kind, int num_samples = 1024);

struct RadialOscillation {
  double period = 0.0;         // arclength between successive outer turning points
  double angle_advance = 0.0;  // polar angle advance over that period
  double rotation_number = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
};

/// Throws CircleDegenerateError for the circular member.
RadialOscillation radial_oscillation(const CurveFamily& family, double tolerance = kCurveTolerance);

double rotation_number(const CurveFamily& family, double tolerance = kCurveTolerance);

/// Open interval of rotation numbers realised by the family.
std::array<double, 2> rotation_interval(CurveKind kind);

/// Exact rational test p/q inside rotation_interval(kind).
bool admissible_rotation(CurveKind kind, int p, int q);

struct MonotonicityDiagnostic {
  bool monotone = true;
  std::vector<std::array<double, 2>> samples;  // (constant, rotation number)
};

MonotonicityDiagnostic rotation_monotonicity(CurveKind kind);

struct ClosedCurve {
  CurveFamily family;
  ProfileCurve curve;
  int p = 0;
  int q = 0;
  double rotation_error = 0.0;
  MonotonicityDiagnostic monotonicity;
};

/// Finds the constant with rotation number p/q and integrates q radial
/// periods. Throws InadmissibleParameterError, RootFindingError or
/// IntegratorError (closure above 1e-6).
ClosedCurve shoot_closed(CurveKind kind, int p, int q, int num_samples = 1024);

/// CSV with header "t,x,y,r,kappa".
void write_curve_csv(std::ostream& out, const ProfileCurve& curve);

}  // namespace shrinkers
