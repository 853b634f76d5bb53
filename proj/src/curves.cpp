#include "shrinkers/curves.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>

#include "shrinkers/errors.hpp"
#include "shrinkers/ode.hpp"

namespace shrinkers {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxDrift = 1e-8;
constexpr double kRotationTolerance = 1e-10;
constexpr double kClosureLimit = 1e-6;

using Stepper = DormandPrince<5>;
using State = Stepper::State;

CurvePoint to_point(double t, const State& s) { return {t, s[0], s[1], s[2], s[3], s[4]}; }
State to_state(const CurvePoint& p) { return {p.x, p.y, p.dx, p.dy, p.tau}; }

Stepper make_stepper(CurveKind kind, double tolerance, double* speed_defect = nullptr) {
  auto rhs = [kind](double t, const State& s) -> State {
    const double kappa = curvature_law(kind, to_point(t, s));
    return {s[2], s[3], -kappa * s[3], kappa * s[2], monitor_weight(kind, to_point(t, s))};
  };
  auto project = [speed_defect](State& s) {
    const double speed = std::hypot(s[2], s[3]);
    if (speed_defect) *speed_defect = std::max(*speed_defect, std::abs(speed - 1.0));
    s[2] /= speed;
    s[3] /= speed;
  };
  return Stepper(rhs, tolerance, tolerance, project);
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * kPi); }

double event_value(const State& s) { return s[0] * s[2] + s[1] * s[3]; }

double event_slope(CurveKind kind, const State& s) {
  const double kappa = curvature_law(kind, to_point(0.0, s));
  return s[2] * s[2] + s[3] * s[3] + kappa * (s[1] * s[2] - s[0] * s[3]);
}

struct EventPoint {
  double t = 0.0;
  State y{};
};

// Root of <Gamma, Gamma'> in [t0, t1], re-integrating from the exact state at t0.
EventPoint refine_event(const Stepper& stepper, CurveKind kind, double t0, const State& y0, double t1,
                        double g1) {
  const double g0 = event_value(y0);
  double lo = t0;
  double hi = t1;
  double g_lo = g0;
  double t = t0 + (t1 - t0) * g0 / (g0 - g1);
  State y = y0;
  for (int iter = 0; iter < 60; ++iter) {
    double h = t - t0;
    y = (t > t0) ? stepper.advance(t0, y0, t, h) : y0;
    const double g = event_value(y);
    if ((g < 0.0) == (g_lo < 0.0)) {
      lo = t;
      g_lo = g;
    } else {
      hi = t;
    }
    const double slope = event_slope(kind, y);
    double next = t - g / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)) ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      t = next;
      break;
    }
    t = next;
  }
  double h = t - t0;
  y = (t > t0) ? stepper.advance(t0, y0, t, h) : y0;
  return {t, y};
}

}  // namespace

class CurveBuilder {
 public:
  static ProfileCurve integrate(const CurveFamily& family, const CurvePoint& initial, double length,
                                int num_samples, double tolerance) {
    if (!(length > 0.0)) throw InadmissibleParameterError("curve length must be positive");
    if (num_samples < 1) throw InadmissibleParameterError("need at least one curve sample");
    const double speed = std::hypot(initial.dx, initial.dy);
    if (std::abs(speed - 1.0) > 1e-12) throw InadmissibleParameterError("initial tangent must be unit");
    const double c2 = family.constant * family.constant;
    const double fi0 = first_integral(family.kind, initial);
    if (std::abs(fi0 - c2) > 1e-10 * c2) {
      throw InadmissibleParameterError("initial data inconsistent with the conserved constant");
    }

    ProfileCurve curve;
    curve.family_ = family;
    curve.tolerance_ = tolerance;
    curve.length_ = length;
    double speed_defect = 0.0;
    const Stepper stepper = make_stepper(family.kind, tolerance, &speed_defect);

    State y = to_state(initial);
    double raw_angle = std::atan2(initial.y, initial.x);
    double unwrapped = 0.0;
    double r_min = initial.radius();
    double r_max = initial.radius();
    double drift = 0.0;
    curve.checkpoints_.push_back({0.0, initial.x, initial.y, initial.dx, initial.dy});

    auto observe = [&](double t, const State& s) {
      const CurvePoint p = to_point(t, s);
      curve.checkpoints_.push_back(p);
      const double a = std::atan2(p.y, p.x);
      unwrapped += wrap_angle(a - raw_angle);
      raw_angle = a;
      r_min = std::min(r_min, p.radius());
      r_max = std::max(r_max, p.radius());
      drift = std::max(drift, std::abs(first_integral(family.kind, p) - c2) / c2);
    };

    auto record = [&](const CurvePoint& p) {
      const double r = p.radius();
      const double kappa = curvature_law(family.kind, p);
      curve.samples_.push_back({p.t, p.x, p.y, r, kappa});
      curve.max_curvature_mismatch_ =
          std::max(curve.max_curvature_mismatch_, std::abs(kappa - closed_form_curvature(family, r)));
    };

    double h = 0.0;
    double t = 0.0;
    record(initial);
    for (int j = 1; j <= num_samples; ++j) {
      const double target = (j == num_samples) ? length : length * j / num_samples;
      y = stepper.advance(t, y, target, h, observe);
      t = target;
      if (j < num_samples) record(to_point(t, y));
    }

    const CurvePoint end = to_point(length, y);
    curve.param_length_ = end.tau - initial.tau;
    curve.closure_error_ = std::hypot(end.x - initial.x, end.y - initial.y) +
                           std::hypot(end.dx - initial.dx, end.dy - initial.dy);
    curve.winding_ = unwrapped / (2.0 * kPi);
    curve.rotation_number_ = std::numeric_limits<double>::quiet_NaN();
    curve.r_min_ = r_min;
    curve.r_max_ = r_max;
    curve.max_drift_ = drift;
    curve.max_speed_defect_ = speed_defect;
    if (drift > kMaxDrift) {
      throw IntegratorError("first integral drifted by " + std::to_string(drift));
    }
    return curve;
  }

  static void set_radial_periods(ProfileCurve& curve, int periods) {
    curve.radial_periods_ = periods;
    curve.rotation_number_ = curve.winding_ / periods;
  }
};

std::string to_string(CurveKind kind) {
  return kind == CurveKind::AbreschLanger ? "abresch-langer" : "anciaux";
}

double CurveFamily::max_constant(CurveKind kind) {
  return kind == CurveKind::AbreschLanger ? std::exp(-0.5) : 2.0 / std::numbers::e;
}

double CurveFamily::circle_radius(CurveKind kind) {
  return kind == CurveKind::AbreschLanger ? 1.0 : std::numbers::sqrt2;
}

CurveFamily CurveFamily::make(CurveKind kind, double constant) {
  const double max = max_constant(kind);
  if (!(constant > 0.0) || constant > max * (1.0 + 1e-15)) {
    throw InadmissibleParameterError("conserved constant outside (0, " + std::to_string(max) + "]");
  }
  return {kind, std::min(constant, max)};
}

bool CurveFamily::is_circle() const { return constant >= max_constant(kind) * (1.0 - 1e-14); }

double CurvePoint::radius() const { return std::hypot(x, y); }

double CurvePoint::radial_speed() const { return (x * dx + y * dy) / radius(); }

double curvature_law(CurveKind kind, const CurvePoint& p) {
  const double angular = p.x * p.dy - p.y * p.dx;  // <Gamma', i Gamma>
  if (kind == CurveKind::AbreschLanger) return angular;
  const double r2 = p.x * p.x + p.y * p.y;
  return angular * (r2 - 1.0) / r2;
}

double curvature_rate(CurveKind kind, const CurvePoint& p) {
  const double kappa = curvature_law(kind, p);
  const double ddx = -kappa * p.dy;
  const double ddy = kappa * p.dx;
  const double angular = p.x * p.dy - p.y * p.dx;
  const double angular_rate = p.x * ddy - p.y * ddx;
  if (kind == CurveKind::AbreschLanger) return angular_rate;
  const double r2 = p.x * p.x + p.y * p.y;
  const double r2_rate = 2.0 * (p.x * p.dx + p.y * p.dy);
  return angular_rate * (r2 - 1.0) / r2 + angular * r2_rate / (r2 * r2);
}

double monitor_weight(CurveKind kind, const CurvePoint& p) {
  const double kappa = curvature_law(kind, p);
  const double r2 = p.x * p.x + p.y * p.y;
  return std::sqrt(1.0 + kMonitorCurvatureWeight * kappa * kappa + kMonitorRadiusWeight / r2);
}

double monitor_rate(CurveKind kind, const CurvePoint& p) {
  const double kappa = curvature_law(kind, p);
  const double r2 = p.x * p.x + p.y * p.y;
  const double half_square_rate =
      kMonitorCurvatureWeight * kappa * curvature_rate(kind, p) - kMonitorRadiusWeight * (p.x * p.dx + p.y * p.dy) / (r2 * r2);
  return half_square_rate / monitor_weight(kind, p);
}

double closed_form_curvature(const CurveFamily& family, double r) {
  if (family.kind == CurveKind::AbreschLanger) return family.constant * std::exp(0.5 * r * r);
  return family.constant * std::exp(0.5 * r * r) * (r * r - 1.0) / (r * r * r);
}

double first_integral(CurveKind kind, const CurvePoint& p) {
  const double r2 = p.x * p.x + p.y * p.y;
  const double radial = p.x * p.dx + p.y * p.dy;  // r r'
  const double base = r2 - radial * radial;       // r^2 (1 - r'^2)
  const double weight = kind == CurveKind::AbreschLanger ? 1.0 : r2;
  return weight * base * std::exp(-r2);
}

double outer_turning_radius(const CurveFamily& family) {
  const double r_circle = CurveFamily::circle_radius(family.kind);
  if (family.is_circle()) return r_circle;
  const double c2 = family.constant * family.constant;
  auto f = [&](double r) {
    const double r2 = r * r;
    const double lhs = family.kind == CurveKind::AbreschLanger ? r2 * std::exp(-r2) : r2 * r2 * std::exp(-r2);
    return lhs - c2;
  };
  double hi = 2.0 * r_circle;
  while (f(hi) > 0.0) hi *= 1.5;
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, r_circle, hi, boost::math::tools::eps_tolerance<double>(52),
                                                       iters);
  return 0.5 * (a + b);
}

CurvePoint outer_turning_state(const CurveFamily& family) {
  return {0.0, outer_turning_radius(family), 0.0, 0.0, 1.0};
}

ProfileCurve integrate_curve(const CurveFamily& family, const CurvePoint& initial, double length, int num_samples,
                             double tolerance) {
  return CurveBuilder::integrate(family, initial, length, num_samples, tolerance);
}

ProfileCurve circle_curve(CurveKind kind, int num_samples) {
  const CurveFamily family = CurveFamily::circle(kind);
  const double r = CurveFamily::circle_radius(kind);
  return integrate_curve(family, outer_turning_state(family), 2.0 * kPi * r, num_samples);
}

CurvePoint ProfileCurve::state_at(double t) const {
  double s = std::fmod(t, length_);
  if (s < 0.0) s += length_;
  auto it = std::upper_bound(checkpoints_.begin(), checkpoints_.end(), s,
                             [](double value, const CurvePoint& p) { return value < p.t; });
  const CurvePoint& base = *std::prev(it);
  if (s == base.t) return base;
  const Stepper stepper = make_stepper(family_.kind, tolerance_);
  double h = s - base.t;
  return to_point(s, stepper.advance(base.t, to_state(base), s, h));
}

CurvePoint ProfileCurve::state_at_param(double tau) const {
  double s = std::fmod(tau, param_length_);
  if (s < 0.0) s += param_length_;
  auto it = std::upper_bound(checkpoints_.begin(), checkpoints_.end(), s,
                             [](double value, const CurvePoint& p) { return value < p.tau; });
  const CurvePoint& base = *std::prev(it);
  if (s == base.tau) return base;
  const Stepper stepper = make_stepper(family_.kind, tolerance_);
  // Newton on tau(t) = s, with d tau / dt = monitor_weight >= 1.
  double t = base.t + (s - base.tau) / monitor_weight(family_.kind, base);
  CurvePoint p = base;
  for (int iter = 0; iter < 20; ++iter) {
    double h = t - base.t;
    p = t > base.t ? to_point(t, stepper.advance(base.t, to_state(base), t, h)) : base;
    const double step = (p.tau - s) / monitor_weight(family_.kind, p);
    t -= step;
    if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) break;
  }
  double h = t - base.t;
  p = t > base.t ? to_point(t, stepper.advance(base.t, to_state(base), t, h)) : base;
  p.tau = s;
  return p;
}

ProfileCurve::ParamDerivatives ProfileCurve::param_derivatives(const CurvePoint& point) const {
  const double w = monitor_weight(family_.kind, point);
  const double w_rate = monitor_rate(family_.kind, point);
  const auto acc = acceleration(point);
  ParamDerivatives out;
  out.first = {point.dx / w, point.dy / w};
  out.second = {acc[0] / (w * w) - point.dx * w_rate / (w * w * w),
                acc[1] / (w * w) - point.dy * w_rate / (w * w * w)};
  return out;
}

std::array<double, 2> ProfileCurve::acceleration(const CurvePoint& point) const {
  const double kappa = curvature_law(family_.kind, point);
  return {-kappa * point.dy, kappa * point.dx};
}

RadialOscillation radial_oscillation(const CurveFamily& family, double tolerance) {
  if (family.is_circle()) throw CircleDegenerateError("the circle has no radial oscillation");
  const Stepper stepper = make_stepper(family.kind, tolerance);
  const CurvePoint start = outer_turning_state(family);
  State y = to_state(start);
  double t = 0.0;
  double h = 0.0;
  double raw_angle = 0.0;
  double unwrapped = 0.0;
  bool passed_minimum = false;
  RadialOscillation out;
  out.r_max = start.radius();
  constexpr double kMaxLength = 1e4;

  double g_prev = 0.0;
  while (t < kMaxLength) {
    const double t0 = t;
    const State y0 = y;
    const double angle0 = unwrapped;
    const double raw0 = raw_angle;
    stepper.step(t, y, h, kMaxLength);
    const double g = event_value(y);
    const double a = std::atan2(y[1], y[0]);
    unwrapped += wrap_angle(a - raw_angle);
    raw_angle = a;

    const bool to_minimum = !passed_minimum && g_prev < 0.0 && g >= 0.0;
    const bool to_maximum = passed_minimum && g_prev > 0.0 && g <= 0.0;
    if (to_minimum) {
      const EventPoint ev = refine_event(stepper, family.kind, t0, y0, t, g);
      out.r_min = std::hypot(ev.y[0], ev.y[1]);
      passed_minimum = true;
    } else if (to_maximum) {
      const EventPoint ev = refine_event(stepper, family.kind, t0, y0, t, g);
      out.period = ev.t;
      out.angle_advance = angle0 + wrap_angle(std::atan2(ev.y[1], ev.y[0]) - raw0);
      out.rotation_number = out.angle_advance / (2.0 * kPi);
      return out;
    }
    g_prev = g;
  }
  throw CircleDegenerateError("no radial oscillation detected");
}

double rotation_number(const CurveFamily& family, double tolerance) {
  return radial_oscillation(family, tolerance).rotation_number;
}

std::array<double, 2> rotation_interval(CurveKind kind) {
  if (kind == CurveKind::AbreschLanger) return {0.5, 1.0 / std::numbers::sqrt2};
  return {0.25, 0.5};
}

bool admissible_rotation(CurveKind kind, int p, int q) {
  if (p <= 0 || q <= 0) return false;
  const long long lp = p;
  const long long lq = q;
  if (kind == CurveKind::AbreschLanger) return 2 * lp > lq && 2 * lp * lp < lq * lq;  // 1/2 < p/q < 1/sqrt 2
  return 4 * lp > lq && 2 * lp < lq;                                                  // 1/4 < p/q < 1/2
}

MonotonicityDiagnostic rotation_monotonicity(CurveKind kind) {
  static constexpr std::array<double, 26> fractions = {
      0.01, 0.02, 0.05, 0.1,  0.15, 0.2,  0.25, 0.3,   0.35,   0.4,    0.45,    0.5,     0.55,
      0.6,  0.65, 0.7,  0.75, 0.8,  0.85, 0.9,  0.95,  0.99,   0.999,  1 - 1e-4, 1 - 1e-5, 1 - 1e-6};
  const double max = CurveFamily::max_constant(kind);
  MonotonicityDiagnostic out;
  for (double f : fractions) {
    const double c = f * max;
    out.samples.push_back({c, rotation_number(CurveFamily::make(kind, c))});
  }
  for (std::size_t i = 1; i < out.samples.size(); ++i) {
    if (!(out.samples[i][1] > out.samples[i - 1][1])) out.monotone = false;
  }
  return out;
}

ClosedCurve shoot_closed(CurveKind kind, int p, int q, int num_samples) {
  if (p <= 0 || q <= 0 || std::gcd(p, q) != 1) {
    throw InadmissibleParameterError("rotation p/q must use coprime positive integers");
  }
  if (!admissible_rotation(kind, p, q)) {
    const auto [lo, hi] = rotation_interval(kind);
    throw InadmissibleParameterError("rotation " + std::to_string(p) + "/" + std::to_string(q) + " outside (" +
                                     std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  const double target = static_cast<double>(p) / q;
  ClosedCurve out;
  out.p = p;
  out.q = q;
  out.monotonicity = rotation_monotonicity(kind);

  const auto& s = out.monotonicity.samples;
  std::size_t bracket = s.size();
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i - 1][1] <= target && target <= s[i][1]) {
      bracket = i;
      break;
    }
  }
  if (bracket == s.size()) throw RootFindingError("could not bracket the target rotation number");

  auto residual = [&](double c) { return rotation_number(CurveFamily::make(kind, c)) - target; };
  double lo = s[bracket - 1][0];
  double hi = s[bracket][0];
  double f_lo = s[bracket - 1][1] - target;
  double f_hi = s[bracket][1] - target;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = residual(mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      f_lo = f_hi = 0.0;
      break;
    }
    if (f_mid < 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  double best = std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
  double f_best = std::min(std::abs(f_lo), std::abs(f_hi));
  if (f_hi != f_lo) {
    const double secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    const double f_secant = std::abs(residual(secant));
    if (f_secant < f_best) {
      best = secant;
      f_best = f_secant;
    }
  }
  if (f_best > kRotationTolerance) {
    throw RootFindingError("rotation number residual " + std::to_string(f_best) + " above tolerance");
  }

  out.family = CurveFamily::make(kind, best);
  out.rotation_error = f_best;
  const RadialOscillation osc = radial_oscillation(out.family);
  out.curve = integrate_curve(out.family, outer_turning_state(out.family), q * osc.period, num_samples);
  CurveBuilder::set_radial_periods(out.curve, q);
  if (out.curve.closure_error() > kClosureLimit) {
    throw IntegratorError("shot curve does not close (error " + std::to_string(out.curve.closure_error()) + ")");
  }
  return out;
}

void write_curve_csv(std::ostream& out, const ProfileCurve& curve) {
  out << "t,x,y,r,kappa\n";
  char buf[160];
  for (const auto& s : curve.samples()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.x, s.y, s.r, s.kappa);
    out << buf;
  }
}

}  // namespace shrinkers
