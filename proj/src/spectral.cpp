#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "shrinkers/errors.hpp"
#include "shrinkers/grid.hpp"

namespace shrinkers {

namespace {

// FFTW plans are created once per line length and reused through the
// new-array execute interface, which is thread-safe. Plan creation is not.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  std::pair<fftw_plan, fftw_plan> plans(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<fftw_complex> scratch_in(static_cast<std::size_t>(n));
    std::vector<fftw_complex> scratch_out(static_cast<std::size_t>(n));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan fwd = fftw_plan_dft_1d(n, scratch_in.data(), scratch_out.data(), FFTW_FORWARD, flags);
    fftw_plan bwd = fftw_plan_dft_1d(n, scratch_in.data(), scratch_out.data(), FFTW_BACKWARD, flags);
    return plans_.emplace(n, std::make_pair(fwd, bwd)).first->second;
  }

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.first);
      fftw_destroy_plan(p.second);
    }
  }

 private:
  std::mutex mutex_;
  std::map<int, std::pair<fftw_plan, fftw_plan>> plans_;
};

// In-place derivative of one periodic line of length n and period `period`.
void differentiate_line(std::vector<std::complex<double>>& line, double period, int order) {
  const int n = static_cast<int>(line.size());
  auto [fwd, bwd] = PlanCache::instance().plans(n);
  std::vector<std::complex<double>> spectrum(line.size());
  fftw_execute_dft(fwd, reinterpret_cast<fftw_complex*>(line.data()),
                   reinterpret_cast<fftw_complex*>(spectrum.data()));
  const double base = 2.0 * std::numbers::pi / period;
  for (int j = 0; j < n; ++j) {
    const int k = (j <= n / 2) ? j : j - n;
    std::complex<double> factor(1.0, 0.0);
    if (2 * j == n && order % 2 == 1) {
      factor = 0.0;  // odd derivatives of the Nyquist mode are not representable
    } else {
      const std::complex<double> ik(0.0, base * k);
      for (int o = 0; o < order; ++o) factor *= ik;
    }
    spectrum[static_cast<std::size_t>(j)] *= factor / static_cast<double>(n);
  }
  fftw_execute_dft(bwd, reinterpret_cast<fftw_complex*>(spectrum.data()),
                   reinterpret_cast<fftw_complex*>(line.data()));
}

}  // namespace

Field spectral_derivative(std::span<const double> field, const PeriodicGrid& grid, Axis axis,
                          int order) {
  if (field.size() != grid.size()) throw GridError("field does not match grid size");
  if (order < 0) throw GridError("negative derivative order");
  Field out(field.size());
  if (axis == Axis::U) {
    std::vector<std::complex<double>> line(static_cast<std::size_t>(grid.nu));
    for (int b = 0; b < grid.nv; ++b) {
      for (int a = 0; a < grid.nu; ++a) line[static_cast<std::size_t>(a)] = field[grid.index(a, b)];
      differentiate_line(line, grid.period_u, order);
      for (int a = 0; a < grid.nu; ++a) out[grid.index(a, b)] = line[static_cast<std::size_t>(a)].real();
    }
  } else {
    std::vector<std::complex<double>> line(static_cast<std::size_t>(grid.nv));
    for (int a = 0; a < grid.nu; ++a) {
      for (int b = 0; b < grid.nv; ++b) line[static_cast<std::size_t>(b)] = field[grid.index(a, b)];
      differentiate_line(line, grid.period_v, order);
      for (int b = 0; b < grid.nv; ++b) out[grid.index(a, b)] = line[static_cast<std::size_t>(b)].real();
    }
  }
  return out;
}

VectorField spectral_derivative(const VectorField& field, const PeriodicGrid& grid, Axis axis,
                                int order) {
  VectorField out(field.size());
  Field component(field.size());
  for (int c = 0; c < 4; ++c) {
    for (std::size_t k = 0; k < field.size(); ++k) component[k] = field[k][c];
    const Field d = spectral_derivative(component, grid, axis, order);
    for (std::size_t k = 0; k < field.size(); ++k) out[k][c] = d[k];
  }
  return out;
}

}  // namespace shrinkers
