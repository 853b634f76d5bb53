#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "shrinkers/errors.hpp"
#include "shrinkers/grid.hpp"
#include "shrinkers/tori.hpp"

using namespace shrinkers;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Field& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

// Random real trigonometric polynomial of degree < n/2 along one axis, with
// its exact derivative.
struct TrigPoly {
  std::vector<double> a, b;
  double period;
  double value(double x, int order = 0) const {
    const double w = 2.0 * kPi / period;
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double kw = static_cast<double>(k) * w;
      const double f = std::pow(kw, order);
      // d^order/dx^order of a cos + b sin
      const double phase = kw * x + order * kPi / 2;
      s += f * (a[k] * std::cos(phase) + b[k] * std::sin(phase));
    }
    return s;
  }
};

TrigPoly random_poly(std::mt19937_64& rng, int degree, double period) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  TrigPoly p{{}, {}, period};
  for (int k = 0; k <= degree; ++k) {
    p.a.push_back(d(rng));
    p.b.push_back(k == 0 ? 0.0 : d(rng));
  }
  return p;
}

// Immersion that fails to close on its nominal periods.
class OpenHelix final : public Immersion {
 public:
  std::string family() const override { return "open"; }
  std::array<double, 2> periods() const override { return {2.0 * kPi, 2.0 * kPi}; }
  SurfaceJet jet(double u, double v) const override {
    SurfaceJet j = clifford_.jet(u, v);
    j.position = j.position + Vec4(0.1 * u, 0, 0, 0);
    j.du = j.du + Vec4(0.1, 0, 0, 0);
    return j;
  }
  bool is_clifford() const override { return false; }

 private:
  RoundTorus clifford_;
};

class ConstantMap final : public Immersion {
 public:
  std::string family() const override { return "point"; }
  std::array<double, 2> periods() const override { return {1.0, 1.0}; }
  SurfaceJet jet(double u, double v) const override {
    SurfaceJet j;
    j.u = u;
    j.v = v;
    j.position = {1, 0, 0, 0};
    return j;
  }
  bool is_clifford() const override { return false; }
};

}  // namespace

TEST_SUITE("periodic grid") {
  TEST_CASE("validation") {
    CHECK_NOTHROW(PeriodicGrid::make(1.0, 2.0, 8, 10));
    CHECK_THROWS_AS(PeriodicGrid::make(0.0, 2.0, 8, 8), GridError);
    CHECK_THROWS_AS(PeriodicGrid::make(1.0, -2.0, 8, 8), GridError);
    CHECK_THROWS_AS(PeriodicGrid::make(1.0, 1.0, 7, 8), GridError);
    CHECK_THROWS_AS(PeriodicGrid::make(1.0, 1.0, 8, 0), GridError);
  }

  TEST_CASE("nodes are uniform") {
    const PeriodicGrid g = PeriodicGrid::make(3.0, 4.0, 6, 8, 0.5, -1.0);
    CHECK(g.u(0) == 0.5);
    CHECK(g.u(3) == doctest::Approx(2.0));
    CHECK(g.v(4) == doctest::Approx(1.0));
    CHECK(g.size() == 48u);
    CHECK(g.index(2, 3) == 19u);
  }
}

TEST_SUITE("spectral derivatives") {
  TEST_CASE("band-limited fields are differentiated exactly along both axes") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      const int nu = 16 + 2 * trial, nv = 24;
      const PeriodicGrid g = PeriodicGrid::make(2.0 + trial, 5.0, nu, nv);
      const TrigPoly pu = random_poly(rng, nu / 2 - 1, g.period_u);
      const TrigPoly pv = random_poly(rng, nv / 2 - 1, g.period_v);
      Field f(g.size());
      for (int a = 0; a < nu; ++a)
        for (int b = 0; b < nv; ++b) f[g.index(a, b)] = pu.value(g.u(a)) * pv.value(g.v(b));
      for (int order : {1, 2}) {
        const Field du = spectral_derivative(f, g, Axis::U, order);
        const Field dv = spectral_derivative(f, g, Axis::V, order);
        double err_u = 0.0, err_v = 0.0, scale_u = 0.0, scale_v = 0.0;
        for (int a = 0; a < nu; ++a) {
          for (int b = 0; b < nv; ++b) {
            const double eu = pu.value(g.u(a), order) * pv.value(g.v(b));
            const double ev = pu.value(g.u(a)) * pv.value(g.v(b), order);
            err_u = std::max(err_u, std::abs(du[g.index(a, b)] - eu));
            err_v = std::max(err_v, std::abs(dv[g.index(a, b)] - ev));
            scale_u = std::max(scale_u, std::abs(eu));
            scale_v = std::max(scale_v, std::abs(ev));
          }
        }
        CHECK(err_u <= 1e-12 * scale_u);
        CHECK(err_v <= 1e-12 * scale_v);
      }
    }
  }

  TEST_CASE("vector fields are differentiated componentwise") {
    const PeriodicGrid g = PeriodicGrid::make(2.0 * kPi, 2.0 * kPi, 16, 16);
    VectorField f(g.size());
    for (int a = 0; a < 16; ++a)
      for (int b = 0; b < 16; ++b) f[g.index(a, b)] = {std::sin(g.u(a)), std::cos(2 * g.v(b)), 1.0, 0.0};
    const VectorField d = spectral_derivative(f, g, Axis::V);
    for (int a = 0; a < 16; ++a) {
      for (int b = 0; b < 16; ++b) {
        const Vec4& x = d[g.index(a, b)];
        CHECK(std::abs(x[0]) < 1e-13);
        CHECK(x[1] == doctest::Approx(-2.0 * std::sin(2 * g.v(b))).scale(1.0).epsilon(1e-13));
        CHECK(std::abs(x[2]) < 1e-13);
      }
    }
  }

  TEST_CASE("size mismatch is rejected") {
    const PeriodicGrid g = PeriodicGrid::make(1.0, 1.0, 8, 8);
    Field f(10, 0.0);
    CHECK_THROWS_AS(spectral_derivative(f, g, Axis::U), GridError);
  }
}

TEST_SUITE("sampling") {
  TEST_CASE("Clifford torus jets agree with hand-written derivatives") {
    const SampledSurface s = sample(RoundTorus(), 64, 64);
    double err = 0.0;
    const double r = std::numbers::sqrt2;
    for (const SurfaceJet& j : s.jets) {
      const double c = std::cos(j.u), sn = std::sin(j.u), ct = std::cos(j.v), st = std::sin(j.v);
      err = std::max(err, norm(j.du - r * Vec4(-ct * sn, -st * sn, ct * c, st * c)));
      err = std::max(err, norm(j.dv - r * Vec4(-st * c, ct * c, -st * sn, ct * sn)));
      err = std::max(err, norm(j.duv - r * Vec4(st * sn, -ct * sn, -st * c, ct * c)));
    }
    CHECK(err < 1e-10);
  }

  TEST_CASE("spectral jets match exact jets on analytic families") {
    LeeWangTorus lw(1, 2);
    const SampledSurface exact = sample(lw, 64, 64);
    const SampledSurface spectral = sample(lw, 64, 64, DerivativeSource::Spectral);
    double err = 0.0;
    for (std::size_t k = 0; k < exact.jets.size(); ++k) {
      err = std::max(err, norm(exact.jets[k].du - spectral.jets[k].du));
      err = std::max(err, norm(exact.jets[k].dvv - spectral.jets[k].dvv));
      err = std::max(err, std::abs(exact.data[k].h2 - spectral.data[k].h2));
    }
    CHECK(err < 1e-10);
  }

  TEST_CASE("Lee-Wang (1,2) closes on (2 pi, 2 pi sqrt 2)") {
    LeeWangTorus lw(1, 2);
    CHECK(lw.periods()[1] == doctest::Approx(2.0 * kPi * std::numbers::sqrt2));
    for (double s : {0.0, 1.0, 4.0}) {
      CHECK(norm(lw.position(s, lw.periods()[1]) - lw.position(s, 0.0)) < 1e-13);
      CHECK(norm(lw.position(s + 2.0 * kPi, 0.3) - lw.position(s, 0.3)) < 1e-13);
    }
    CHECK_NOTHROW(sample(lw, 32, 32));
  }

  TEST_CASE("aperiodic immersions and constant maps are rejected") {
    CHECK_THROWS_AS(sample(OpenHelix(), 16, 16), GridError);
    CHECK_THROWS_AS(sample(ConstantMap(), 8, 8), DegenerateJetError);
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("Clifford torus area and Willmore energy") {
    const SampledSurface s = sample(RoundTorus(), 32, 32);
    const Field one(s.jets.size(), 1.0);
    const Field zero(s.jets.size(), 0.0);
    CHECK(integrate(one, s) == doctest::Approx(8.0 * kPi * kPi).epsilon(1e-14));
    CHECK(integrate(zero, s) == 0.0);
    const WillmoreCheck w = willmore_check(s);
    CHECK(w.willmore == doctest::Approx(16.0 * kPi * kPi).epsilon(1e-13));
    CHECK(w.area == doctest::Approx(8.0 * kPi * kPi).epsilon(1e-14));
    CHECK(w.ratio == doctest::Approx(2.0).epsilon(1e-13));
  }

  TEST_CASE("Lee-Wang (1,2) area against adaptive quadrature") {
    // Reference area from an independent adaptive quadrature of sqrt(det g).
    const SampledSurface s = sample(LeeWangTorus(1, 2), 128, 128);
    const WillmoreCheck w = willmore_check(s);
    CHECK(w.area == doctest::Approx(125.61955559349983).epsilon(1e-12));
    CHECK(std::abs(w.ratio - 2.0) < 1e-6);
  }

  TEST_CASE("quadrature converges spectrally") {
    LawsonTorus law(Rational{2, 1});
    const double reference = 121.74863101743077;
    double previous = 1.0;
    for (int n : {16, 32, 64}) {
      const double err = std::abs(willmore_check(sample(law, n, n)).area - reference);
      CHECK(err < previous);
      previous = err;
    }
    CHECK(previous < 1e-10 * reference);
  }

  TEST_CASE("Lawson alpha = 2 satisfies the Willmore identity") {
    CHECK(std::abs(willmore_check(sample(LawsonTorus(Rational{2, 1}), 128, 128)).ratio - 2.0) < 1e-6);
  }

  TEST_CASE("operations on band samples are refused") {
    const SampledSurface band = sample(SphereBand(), 16, 16);
    const Field one(band.jets.size(), 1.0);
    CHECK_THROWS_AS(integrate(one, band), GridError);
    CHECK_THROWS_AS(gauss_bonnet(band), GridError);
  }
}

TEST_SUITE("intrinsic calculus") {
  TEST_CASE("Laplace-Beltrami of constants and of |phi|^2") {
    const SampledSurface clifford = sample(RoundTorus(), 64, 64);
    const Field c(clifford.jets.size(), 3.7);
    CHECK(max_abs(laplace_beltrami(c, clifford)) < 1e-12);
    const Field phi2 = node_field(clifford, [](const SurfaceJet& j, const FundamentalData&) { return norm2(j.position); });
    CHECK(max_abs(laplace_beltrami(phi2, clifford)) < 1e-10);

    const SampledSurface lw = sample(LeeWangTorus(1, 2), 128, 128);
    const Field f = node_field(lw, [](const SurfaceJet& j, const FundamentalData&) { return norm2(j.position); });
    const Field lap = laplace_beltrami(f, lw);
    double err = 0.0;
    for (std::size_t k = 0; k < lap.size(); ++k) {
      // |H|^2 = 3 / (2 cos^2 s + sin^2 s) on Lee-Wang (1,2).
      const double s = lw.jets[k].u;
      const double h2 = 3.0 / (2.0 * std::cos(s) * std::cos(s) + std::sin(s) * std::sin(s));
      err = std::max(err, std::abs(lap[k] - 2.0 * (2.0 - h2)));
    }
    CHECK(err < 1e-6);
  }

  TEST_CASE("divergence theorem on a closed surface") {
    const SampledSurface s = sample(LeeWangTorus(2, 3), 96, 96);
    const Field f = node_field(s, [](const SurfaceJet& j, const FundamentalData&) {
      return std::sin(j.position[0]) + j.position[2] * j.position[3];
    });
    CHECK(std::abs(integrate(laplace_beltrami(f, s), s)) < 1e-8);
  }

  TEST_CASE("gradient of a coordinate function") {
    // On the Clifford torus g = 2 I, so grad u has components (1/2, 0).
    const SampledSurface s = sample(RoundTorus(), 16, 16);
    const Field u = node_field(s, [](const SurfaceJet& j, const FundamentalData&) { return std::sin(j.u); });
    const auto grad = gradient(u, s);
    for (std::size_t k = 0; k < u.size(); ++k) {
      CHECK(grad[0][k] == doctest::Approx(0.5 * std::cos(s.jets[k].u)).scale(1.0).epsilon(1e-13));
      CHECK(std::abs(grad[1][k]) < 1e-13);
    }
  }

  TEST_CASE("Brioschi curvature matches the extrinsic K on analytic families") {
    LeeWangTorus lw(1, 2);
    LawsonTorus law(Rational{2, 1});
    for (const Immersion* im : {static_cast<const Immersion*>(&lw), static_cast<const Immersion*>(&law)}) {
      const SampledSurface s = sample(*im, 128, 128);
      const Field k = intrinsic_gauss_curvature(s);
      double err = 0.0;
      for (std::size_t i = 0; i < k.size(); ++i) err = std::max(err, std::abs(k[i] - s.data[i].gauss));
      CHECK(err < 1e-6);
    }
  }
}

TEST_SUITE("gauss bonnet") {
  TEST_CASE("Clifford torus") {
    const GaussBonnet gb = gauss_bonnet(sample(RoundTorus(), 32, 32));
    CHECK(std::abs(gb.total_curvature) < 1e-12);
    CHECK(gb.genus == 1);
    CHECK(gb.formula_residual < 1e-12);
  }

  TEST_CASE("Lawson alpha = 2 and Lee-Wang (1,2)") {
    const GaussBonnet law = gauss_bonnet(sample(LawsonTorus(Rational{2, 1}), 128, 128));
    CHECK(law.genus == 1);
    CHECK(law.formula_residual < 1e-5);
    const SampledSurface lw = sample(LeeWangTorus(1, 2), 128, 128);
    const Field s2 = node_field(lw, [](const SurfaceJet&, const FundamentalData& d) { return d.sigma2; });
    CHECK(integrate(s2, lw) == doctest::Approx(2.0 * willmore_check(lw).area).epsilon(1e-7));
    // Independent adaptive quadrature gives 251.23911118699965.
    CHECK(integrate(s2, lw) == doctest::Approx(251.23911118699965).epsilon(1e-12));
    CHECK(gauss_bonnet(lw).genus == 1);
  }

  TEST_CASE("a badly under-resolved sample is reported as inconsistent") {
    CHECK_THROWS_AS(gauss_bonnet(sample(LeeWangTorus(1, 7), 8, 8)), InconsistentSamplingError);
  }
}

TEST_SUITE("maslov periods") {
  TEST_CASE("Clifford torus: (0, -4 pi)") {
    const MaslovPeriods m = maslov_periods(sample(RoundTorus(), 64, 64));
    CHECK(std::abs(m.u_loop) < 1e-8);
    CHECK(m.v_loop == doctest::Approx(-4.0 * kPi).epsilon(1e-10));
  }

  TEST_CASE("Lee-Wang (1,2): periods from the unwrapped determinant angle") {
    const SampledSurface s = sample(LeeWangTorus(1, 2), 128, 128);
    const MaslovPeriods m = maslov_periods(s);
    CHECK(std::abs(m.u_loop) < 1e-8);
    CHECK(m.v_loop == doctest::Approx(-18.84955592153876).epsilon(1e-9));
    CHECK(std::max(std::abs(m.u_loop), std::abs(m.v_loop)) > 0.1);
    // Closedness: the period does not depend on the base line.
    for (int line : {17, 64, 101}) {
      const MaslovPeriods other = maslov_periods(s, line, line);
      CHECK(std::abs(other.u_loop - m.u_loop) < 1e-8);
      CHECK(std::abs(other.v_loop - m.v_loop) < 1e-8);
    }
  }

  TEST_CASE("non-Lagrangian surfaces are refused") {
    CHECK_THROWS_AS(maslov_periods(sample(LawsonTorus(Rational{2, 1}), 32, 32)), NonLagrangianError);
  }
}

TEST_SUITE("determinism") {
  TEST_CASE("repeated sampling and quadrature are bitwise identical") {
    LeeWangTorus lw(1, 2);
    const SampledSurface a = sample(lw, 64, 64);
    const SampledSurface b = sample(lw, 64, 64);
    CHECK(willmore_check(a).willmore == willmore_check(b).willmore);
    const Field la = laplace_beltrami(node_field(a, [](const SurfaceJet& j, const FundamentalData&) { return j.position[0]; }), a);
    const Field lb = laplace_beltrami(node_field(b, [](const SurfaceJet& j, const FundamentalData&) { return j.position[0]; }), b);
    CHECK(la == lb);
  }
}
