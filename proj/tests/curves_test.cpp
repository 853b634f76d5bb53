#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "shrinkers/curves.hpp"
#include "shrinkers/errors.hpp"

using namespace shrinkers;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent rotation number from the first integral alone. With
// g(r) = log of (r^2 or r^4) e^{-r^2} / c^2 one has r'^2 = 1 - e^{-g} and the
// angular speed theta' = c e^{r^2/2} / r^k (k = 2 or 3). The rotation number
// over one radial oscillation is (1/pi) times the integral of theta' / |r'|
// from r_min to r_max. The substitution r = a + (b - a) cos^2 psi removes the
// endpoint singularities; g is expanded about the nearer turning radius so
// that it keeps full relative precision there.
struct Oracle {
  CurveKind kind;
  double c;

  int power() const { return kind == CurveKind::AbreschLanger ? 2 : 4; }
  double g(double r) const { return power() * std::log(r) - r * r - 2.0 * std::log(c); }
  // g(root + d) given g(root) = 0.
  double g_near(double root, double d) const { return power() * std::log1p(d / root) - d * (2.0 * root + d); }
  double r_peak() const { return kind == CurveKind::AbreschLanger ? 1.0 : std::numbers::sqrt2; }

  double bisect_root(double lo, double hi) const {
    boost::math::tools::eps_tolerance<double> tol(53);
    auto [a, b] = boost::math::tools::bisect([this](double r) { return g(r); }, lo, hi, tol);
    return 0.5 * (a + b);
  }
  double r_min() const { return bisect_root(0.5 * std::min(c, std::sqrt(c)), r_peak()); }
  double r_max() const { return bisect_root(r_peak(), 12.0); }

  double rotation() const {
    const double a = r_min(), b = r_max(), w = b - a;
    const int k = kind == CurveKind::AbreschLanger ? 2 : 3;
    auto integrand = [&](double psi) {
      const double cs = std::cos(psi), sn = std::sin(psi);
      const double above_a = w * cs * cs, below_b = w * sn * sn;
      const double r = above_a < below_b ? a + above_a : b - below_b;
      const double gr = above_a < below_b ? g_near(a, above_a) : g_near(b, -below_b);
      const double theta_rate = c * std::exp(0.5 * r * r) / std::pow(r, k);
      return theta_rate * 2.0 * w * sn * cs / std::sqrt(-std::expm1(-gr));
    };
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, kPi / 2, 18, 1e-13);
    return integral / kPi;
  }
};

// Constant with oracle rotation p/q, by bisection on the oracle.
double oracle_constant(CurveKind kind, double target) {
  const double max = CurveFamily::max_constant(kind);
  auto f = [&](double c) { return Oracle{kind, c}.rotation() - target; };
  boost::math::tools::eps_tolerance<double> tol(44);
  auto [a, b] = boost::math::tools::bisect(f, 1e-4 * max, max * (1 - 1e-9), tol);
  return 0.5 * (a + b);
}

}  // namespace

TEST_SUITE("curve families") {
  TEST_CASE("admissible constants") {
    CHECK_THROWS_AS(CurveFamily::make(CurveKind::AbreschLanger, 0.0), InadmissibleParameterError);
    CHECK_THROWS_AS(CurveFamily::make(CurveKind::AbreschLanger, 0.7), InadmissibleParameterError);
    CHECK_THROWS_AS(CurveFamily::make(CurveKind::Anciaux, -0.1), InadmissibleParameterError);
    CHECK(CurveFamily::circle(CurveKind::AbreschLanger).is_circle());
    CHECK_FALSE(CurveFamily::make(CurveKind::Anciaux, 0.5).is_circle());
    CHECK(CurveFamily::max_constant(CurveKind::Anciaux) == doctest::Approx(2.0 / std::numbers::e));
  }

  TEST_CASE("curvature law agrees with the closed form in r") {
    for (CurveKind kind : {CurveKind::AbreschLanger, CurveKind::Anciaux}) {
      const CurveFamily fam = CurveFamily::make(kind, 0.3);
      const ProfileCurve c = integrate_curve(fam, outer_turning_state(fam), 7.0, 200);
      CHECK(c.max_curvature_mismatch() < 1e-8);
      for (const CurveSample& s : c.samples()) {
        CHECK(s.kappa == doctest::Approx(closed_form_curvature(fam, s.r)).epsilon(1e-8));
      }
    }
  }
}

TEST_SUITE("circles") {
  TEST_CASE("Abresch-Langer unit circle") {
    const ProfileCurve c = circle_curve(CurveKind::AbreschLanger, 64);
    CHECK(c.length() == doctest::Approx(2.0 * kPi).epsilon(1e-14));
    CHECK(c.closure_error() < 1e-9);
    for (const CurveSample& s : c.samples()) {
      CHECK(s.r == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(s.kappa == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(radial_oscillation(CurveFamily::circle(CurveKind::AbreschLanger)), CircleDegenerateError);
  }

  TEST_CASE("Anciaux circle of radius sqrt 2") {
    const ProfileCurve c = circle_curve(CurveKind::Anciaux, 64);
    CHECK(c.length() == doctest::Approx(2.0 * std::numbers::sqrt2 * kPi).epsilon(1e-14));
    CHECK(c.closure_error() < 1e-9);
    for (const CurveSample& s : c.samples()) {
      CHECK(s.r == doctest::Approx(std::numbers::sqrt2).epsilon(1e-10));
      CHECK(s.kappa == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-10));
    }
  }
}

TEST_SUITE("integration") {
  TEST_CASE("Abresch-Langer rho = 0.5 stays in its radial band") {
    const CurveFamily fam = CurveFamily::make(CurveKind::AbreschLanger, 0.5);
    const Oracle oracle{fam.kind, fam.constant};
    const ProfileCurve c = integrate_curve(fam, outer_turning_state(fam), 40.0, 400);
    CHECK(c.max_first_integral_drift() < 1e-9);
    CHECK(c.max_speed_defect() < 1e-9);
    CHECK(c.r_max() == doctest::Approx(oracle.r_max()).epsilon(1e-10));
    CHECK(c.r_min() >= oracle.r_min() - 1e-8);
    CHECK(c.r_min() <= oracle.r_min() + 1e-3);
    CHECK(outer_turning_radius(fam) == doctest::Approx(oracle.r_max()).epsilon(1e-12));
  }

  TEST_CASE("unit speed and first integral along the curve") {
    const CurveFamily fam = CurveFamily::make(CurveKind::Anciaux, 0.2);
    const ProfileCurve c = integrate_curve(fam, outer_turning_state(fam), 30.0, 100);
    for (double t : {0.0, 3.3, 12.1, 29.9}) {
      const CurvePoint p = c.state_at(t);
      CHECK(std::hypot(p.dx, p.dy) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(first_integral(fam.kind, p) == doctest::Approx(0.04).epsilon(1e-9));
    }
  }

  TEST_CASE("invalid initial data is rejected") {
    const CurveFamily fam = CurveFamily::make(CurveKind::AbreschLanger, 0.5);
    CurvePoint p = outer_turning_state(fam);
    CHECK_THROWS_AS(integrate_curve(fam, p, -1.0), InadmissibleParameterError);
    CHECK_THROWS_AS(integrate_curve(fam, p, 1.0, 0), InadmissibleParameterError);
    CurvePoint slow = p;
    slow.dy = 0.5;
    CHECK_THROWS_AS(integrate_curve(fam, slow, 1.0), InadmissibleParameterError);
    CurvePoint off = p;
    off.x *= 1.1;
    CHECK_THROWS_AS(integrate_curve(fam, off, 1.0), InadmissibleParameterError);
  }

  TEST_CASE("sampling parameter derivatives") {
    // d Gamma / d tau against a centred difference of state_at_param.
    const ClosedCurve cc = shoot_closed(CurveKind::Anciaux, 1, 3, 64);
    const ProfileCurve& c = cc.curve;
    const double h = 1e-4;
    for (double tau : {0.1, 1.7, 0.6 * c.param_length()}) {
      const CurvePoint p = c.state_at_param(tau);
      const CurvePoint a = c.state_at_param(tau - h);
      const CurvePoint b = c.state_at_param(tau + h);
      const auto d = c.param_derivatives(p);
      CHECK(d.first[0] == doctest::Approx((b.x - a.x) / (2 * h)).epsilon(1e-6));
      CHECK(d.first[1] == doctest::Approx((b.y - a.y) / (2 * h)).epsilon(1e-6));
      CHECK(d.second[0] == doctest::Approx((b.x - 2 * p.x + a.x) / (h * h)).epsilon(1e-4));
      CHECK(d.second[1] == doctest::Approx((b.y - 2 * p.y + a.y) / (h * h)).epsilon(1e-4));
    }
  }
}

TEST_SUITE("rotation numbers") {
  TEST_CASE("integrated rotation number matches the quadrature oracle") {
    for (CurveKind kind : {CurveKind::AbreschLanger, CurveKind::Anciaux}) {
      const double max = CurveFamily::max_constant(kind);
      for (double f : {0.05, 0.3, 0.7, 0.95}) {
        const CurveFamily fam = CurveFamily::make(kind, f * max);
        const double oracle = Oracle{kind, fam.constant}.rotation();
        CHECK(rotation_number(fam) == doctest::Approx(oracle).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("limits of the rotation interval") {
    const auto al = rotation_interval(CurveKind::AbreschLanger);
    CHECK(al[0] == 0.5);
    CHECK(al[1] == doctest::Approx(1.0 / std::numbers::sqrt2));
    const auto an = rotation_interval(CurveKind::Anciaux);
    for (CurveKind kind : {CurveKind::AbreschLanger, CurveKind::Anciaux}) {
      const auto iv = rotation_interval(kind);
      const double max = CurveFamily::max_constant(kind);
      // Near the circle the rotation number tends to the upper limit quickly.
      CHECK(Oracle{kind, max * (1 - 1e-5)}.rotation() == doctest::Approx(iv[1]).epsilon(1e-5));
      // The approach to the lower limit is slow; check that it is monotone.
      double previous = iv[1];
      for (double f : {1e-2, 1e-3, 1e-4}) {
        const double r = Oracle{kind, f * max}.rotation();
        CHECK(r > iv[0]);
        CHECK(r < previous);
        CHECK(rotation_number(CurveFamily::make(kind, f * max)) == doctest::Approx(r).epsilon(1e-8));
        previous = r;
      }
      CHECK(previous - iv[0] < 0.03);
    }
    CHECK(an[0] == 0.25);
    CHECK(an[1] == 0.5);
  }

  TEST_CASE("admissibility is exact") {
    CHECK(admissible_rotation(CurveKind::AbreschLanger, 3, 5));
    CHECK(admissible_rotation(CurveKind::AbreschLanger, 2, 3));
    CHECK_FALSE(admissible_rotation(CurveKind::AbreschLanger, 1, 2));
    CHECK_FALSE(admissible_rotation(CurveKind::AbreschLanger, 1, 1));
    CHECK_FALSE(admissible_rotation(CurveKind::AbreschLanger, 5, 7));  // 0.714 > 1/sqrt 2
    CHECK(admissible_rotation(CurveKind::Anciaux, 1, 3));
    CHECK_FALSE(admissible_rotation(CurveKind::Anciaux, 1, 4));
    CHECK_FALSE(admissible_rotation(CurveKind::Anciaux, 0, 3));
  }

  TEST_CASE("rotation number is monotone in the constant") {
    for (CurveKind kind : {CurveKind::AbreschLanger, CurveKind::Anciaux}) {
      const MonotonicityDiagnostic d = rotation_monotonicity(kind);
      CHECK(d.monotone);
      for (std::size_t i = 1; i < d.samples.size(); ++i) CHECK(d.samples[i][1] > d.samples[i - 1][1]);
    }
  }
}

TEST_SUITE("shooting") {
  TEST_CASE("Abresch-Langer 3/5") {
    const ClosedCurve cc = shoot_closed(CurveKind::AbreschLanger, 3, 5, 500);
    const double oracle = oracle_constant(CurveKind::AbreschLanger, 0.6);
    CHECK(cc.family.constant == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(cc.family.constant == doctest::Approx(0.064724720290514).epsilon(1e-9));
    CHECK(cc.rotation_error < 1e-10);
    CHECK(cc.curve.closure_error() < 1e-6);
    CHECK(cc.curve.radial_periods() == 5);
    CHECK(cc.curve.winding() == doctest::Approx(3.0).epsilon(1e-8));

    // q-fold symmetry: rotating by 2 pi p / q maps the curve to itself, so
    // the sample 1/q of the way along is the rotated start point.
    const auto& s = cc.curve.samples();
    const double angle = 2.0 * kPi * 3.0 / 5.0;
    for (std::size_t i = 0; i < 100; i += 7) {
      const CurveSample& a = s[i];
      const CurveSample& b = s[i + 100];
      CHECK(b.x == doctest::Approx(std::cos(angle) * a.x - std::sin(angle) * a.y).scale(1.0).epsilon(1e-7));
      CHECK(b.y == doctest::Approx(std::sin(angle) * a.x + std::cos(angle) * a.y).scale(1.0).epsilon(1e-7));
      CHECK(b.kappa == doctest::Approx(a.kappa).epsilon(1e-7));
    }
  }

  TEST_CASE("Anciaux 1/3") {
    const ClosedCurve cc = shoot_closed(CurveKind::Anciaux, 1, 3, 300);
    const double oracle = oracle_constant(CurveKind::Anciaux, 1.0 / 3.0);
    CHECK(cc.family.constant == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(cc.family.constant == doctest::Approx(0.042247448762417).epsilon(1e-9));
    CHECK(cc.curve.closure_error() < 1e-6);
    CHECK(cc.curve.winding() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(cc.curve.max_curvature_mismatch() < 1e-8);
  }

  TEST_CASE("inadmissible rotations are rejected") {
    CHECK_THROWS_AS(shoot_closed(CurveKind::AbreschLanger, 1, 1), InadmissibleParameterError);
    CHECK_THROWS_AS(shoot_closed(CurveKind::AbreschLanger, 1, 2), InadmissibleParameterError);
    CHECK_THROWS_AS(shoot_closed(CurveKind::Anciaux, 1, 2), InadmissibleParameterError);
    CHECK_THROWS_AS(shoot_closed(CurveKind::Anciaux, -1, 3), InadmissibleParameterError);
  }
}

TEST_SUITE("csv") {
  TEST_CASE("header and rows") {
    std::ostringstream out;
    write_curve_csv(out, circle_curve(CurveKind::AbreschLanger, 8));
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,x,y,r,kappa");
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      CHECK(std::count(line.begin(), line.end(), ',') == 4);
    }
    CHECK(rows == 8);
  }
}
