#pragma once

// Adaptive Dormand-Prince 5(4) integrator for small autonomous-size systems.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

#include "shrinkers/errors.hpp"

namespace shrinkers {

template <std::size_t N>
class DormandPrince {
 public:
  using State = std::array<double, N>;
  using Rhs = std::function<State(double, const State&)>;
  /// Applied to every accepted state, e.g. to project back onto an invariant.
  using Projection = std::function<void(State&)>;
  using StepObserver = std::function<void(double, const State&)>;

  DormandPrince(Rhs rhs, double rtol, double atol, Projection projection = {})
      : rhs_(std::move(rhs)), rtol_(rtol), atol_(atol), projection_(std::move(projection)) {}

  struct Attempt {
    State y;
    double error = 0.0;  // scaled RMS error; accept when <= 1
  };

  Attempt attempt(double t, const State& y, double h) const {
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                            a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    auto comb = [&](std::initializer_list<std::pair<double, const State*>> terms) {
      State out = y;
      for (const auto& [c, k] : terms)
        for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
      return out;
    };
    const State k1 = rhs_(t, y);
    const State k2 = rhs_(t + h / 5.0, comb({{a21, &k1}}));
    const State k3 = rhs_(t + 3.0 * h / 10.0, comb({{a31, &k1}, {a32, &k2}}));
    const State k4 = rhs_(t + 4.0 * h / 5.0, comb({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = rhs_(t + 8.0 * h / 9.0, comb({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = rhs_(t + h, comb({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    Attempt out;
    out.y = comb({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State k7 = rhs_(t + h, out.y);
    double sum = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(out.y[i]));
      sum += (err / scale) * (err / scale);
    }
    out.error = std::sqrt(sum / N);
    return out;
  }

  /// Takes one accepted step from (t, y) without passing t_max, retrying
  /// with smaller steps as needed. `h` carries the proposed step size.
  void step(double& t, State& y, double& h, double t_max) const {
    if (!(h > 0.0)) h = std::min(1e-3, t_max - t);
    for (;;) {
      const bool last = t + h >= t_max;
      const double size = last ? t_max - t : h;
      const Attempt trial = attempt(t, y, size);
      if (!std::isfinite(trial.error)) throw IntegratorError("non-finite state");
      const double factor =
          trial.error == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(trial.error, -0.2), 0.2, 5.0);
      if (trial.error <= 1.0) {
        t = last ? t_max : t + size;
        y = trial.y;
        if (projection_) projection_(y);
        if (!last || factor < 1.0) h = size * factor;
        return;
      }
      h = size * factor;
      if (h < 1e-14 * std::max(1.0, std::abs(t))) throw IntegratorError("step size underflow");
    }
  }

  /// Integrates from t0 to exactly t1 (t1 >= t0).
  State advance(double t0, State y, double t1, double& h, const StepObserver& observer = {}) const {
    if (t1 < t0) throw IntegratorError("backward integration is not supported");
    double t = t0;
    std::size_t steps = 0;
    while (t < t1) {
      if (++steps > kMaxSteps) throw IntegratorError("step limit exceeded");
      step(t, y, h, t1);
      if (observer) observer(t, y);
    }
    return y;
  }

  const Rhs& rhs() const { return rhs_; }

 private:
  static constexpr std::size_t kMaxSteps = 10'000'000;
  Rhs rhs_;
  double rtol_;
  double atol_;
  Projection projection_;
};

}  // namespace shrinkers
