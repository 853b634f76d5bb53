#include "shrinkers/tori.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "shrinkers/errors.hpp"

namespace shrinkers {

namespace {

constexpr double kPi = std::numbers::pi;

double square(double x) { return x * x; }

int parse_int(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InadmissibleParameterError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

struct CurveJet {
  CurvePoint point;
  std::array<double, 2> first;
  std::array<double, 2> second;
};

CurveJet evaluate(const ProfileCurve& curve, double param, CurveParametrization mode) {
  if (mode == CurveParametrization::Arclength) {
    const CurvePoint p = curve.state_at(param);
    return {p, {p.dx, p.dy}, curve.acceleration(p)};
  }
  const CurvePoint p = curve.state_at_param(param);
  const auto d = curve.param_derivatives(p);
  return {p, d.first, d.second};
}

double curve_period(const ProfileCurve& curve, CurveParametrization mode) {
  return mode == CurveParametrization::Arclength ? curve.period() : curve.param_length();
}

}  // namespace

bool Rational::reduced() const { return den > 0 && std::gcd(num, den) == 1; }

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return {parse_int(text), 1};
  Rational r{parse_int(std::string_view(text).substr(0, slash)),
             parse_int(std::string_view(text).substr(slash + 1))};
  if (r.den <= 0) throw InadmissibleParameterError("denominator must be positive in '" + text + "'");
  return r;
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

SurfaceJet SeparableTorus::jet(double u, double v) const {
  std::array<std::array<std::complex<double>, 6>, 2> z{};  // pos, du, dv, duu, duv, dvv
  for (std::size_t k = 0; k < 2; ++k) {
    const Term& term = terms_[k];
    const double c = std::cos(u);
    const double s = std::sin(u);
    const double f = term.profile == Profile::Cos ? c : s;
    const double df = term.profile == Profile::Cos ? -s : c;
    const double w = term.frequency;
    const std::complex<double> e = term.amplitude * std::polar(1.0, w * v);
    const std::complex<double> iw(0.0, w);
    z[k] = {f * e, df * e, iw * f * e, -f * e, iw * df * e, -w * w * f * e};
  }
  auto vec = [&](std::size_t i) { return Vec4::from_complex(z[0][i], z[1][i]); };
  return {u, v, vec(0), vec(1), vec(2), vec(3), vec(4), vec(5)};
}

RoundTorus::RoundTorus(double radius)
    : SeparableTorus({radius, Profile::Cos, 1.0}, {radius, Profile::Sin, 1.0}, {2.0 * kPi, 2.0 * kPi}),
      radius_(radius) {
  if (!(radius > 0.0)) throw InadmissibleParameterError("radius must be positive");
}

std::string RoundTorus::family() const { return is_clifford() ? "clifford" : "round-torus"; }

std::vector<Parameter> RoundTorus::params() const {
  if (is_clifford()) return {};
  return {{"radius", radius_}};
}

bool RoundTorus::is_clifford() const { return std::abs(radius_ - std::numbers::sqrt2) < 1e-15; }

ClosedFormInvariants RoundTorus::closed_forms() const {
  const double c = 4.0 / square(radius_);
  const double r2 = square(radius_);
  ClosedFormInvariants out;
  out.h2 = [c](double, double) { return c; };
  out.sigma2 = [c](double, double) { return c; };
  out.gauss = [](double, double) { return 0.0; };
  out.phi2 = [r2](double, double) { return r2; };
  return out;
}

LeeWangTorus::LeeWangTorus(int m, int n)
    : SeparableTorus({std::sqrt(static_cast<double>(m + n) / n), Profile::Cos, std::sqrt(static_cast<double>(n) / m)},
                     {std::sqrt(static_cast<double>(m + n) / m), Profile::Sin, std::sqrt(static_cast<double>(m) / n)},
                     {2.0 * kPi, 2.0 * kPi * std::sqrt(static_cast<double>(m) * n)}),
      m_(m),
      n_(n) {
  if (m < 1 || n < 1) throw InadmissibleParameterError("Lee-Wang parameters must be positive");
  if (std::gcd(m, n) != 1) throw InadmissibleParameterError("Lee-Wang parameters must be coprime");
  if (m > n) throw InadmissibleParameterError("Lee-Wang parameters must satisfy m <= n");
}

std::vector<Parameter> LeeWangTorus::params() const { return {{"m", double(m_)}, {"n", double(n_)}}; }

ClosedFormInvariants LeeWangTorus::closed_forms() const {
  const double m = m_;
  const double n = n_;
  ClosedFormInvariants out;
  out.phi2 = [m, n](double s, double) {
    return (m + n) / (m * n) * (m * square(std::cos(s)) + n * square(std::sin(s)));
  };
  out.h2 = [m, n](double s, double) { return (m + n) / (n * square(std::cos(s)) + m * square(std::sin(s))); };
  out.phi2_bounds = Bounds{(m + n) / n, (m + n) / m};
  out.h2_bounds = Bounds{(m + n) / n, (m + n) / m};
  out.sigma2_bounds = Bounds{(3 * m * m + n * n) / (n * (m + n)), (m * m + 3 * n * n) / (m * (m + n))};
  // For n > 2m the maximum of K moves off s = 0 to sin^2 s = n (n - 2m) / (n^2 - m^2).
  const double k_max = n > 2 * m ? square(m + n) / (27 * m * n) : m * (n - m) / (n * (m + n));
  out.gauss_bounds = Bounds{-n * (n - m) / (m * (m + n)), k_max};
  return out;
}

LawsonTorus::LawsonTorus(Rational alpha)
    : SeparableTorus({std::numbers::sqrt2, Profile::Cos, alpha.value()}, {std::numbers::sqrt2, Profile::Sin, 1.0},
                     {2.0 * kPi, 2.0 * kPi * alpha.den}),
      alpha_(alpha) {
  if (!alpha.reduced()) throw InadmissibleParameterError("Lawson alpha must be a reduced fraction");
  if (alpha.num < alpha.den) throw InadmissibleParameterError("Lawson alpha must be >= 1");
}

std::vector<Parameter> LawsonTorus::params() const {
  return {{"a", double(alpha_.num)}, {"b", double(alpha_.den)}};
}

ClosedFormInvariants LawsonTorus::closed_forms() const {
  const double a2 = square(alpha_.value());
  ClosedFormInvariants out;
  out.sigma2 = [a2](double x, double) { return 1.0 + a2 / square(a2 * square(std::cos(x)) + square(std::sin(x))); };
  out.h2 = [](double, double) { return 2.0; };
  out.phi2 = [](double, double) { return 2.0; };
  out.sigma2_bounds = Bounds{1.0 + 1.0 / a2, 1.0 + a2};
  out.gauss_bounds = Bounds{1.0 - a2, 1.0 - 1.0 / a2};
  return out;
}

AbreschLangerTorus::AbreschLangerTorus(ProfileCurve first, ProfileCurve second, std::vector<Parameter> params,
                                       CurveParametrization parametrization)
    : first_(std::move(first)),
      second_(std::move(second)),
      params_(std::move(params)),
      parametrization_(parametrization) {
  for (const ProfileCurve* c : {&first_, &second_}) {
    if (c->family().kind != CurveKind::AbreschLanger) {
      throw InadmissibleParameterError("Abresch-Langer tori need Abresch-Langer curves");
    }
    if (c->closure_error() > 1e-6) throw InadmissibleParameterError("profile curve is not closed");
  }
}

std::array<double, 2> AbreschLangerTorus::periods() const {
  return {curve_period(first_, parametrization_), curve_period(second_, parametrization_)};
}

SurfaceJet AbreschLangerTorus::jet(double u, double v) const {
  const CurveJet a = evaluate(first_, u, parametrization_);
  const CurveJet b = evaluate(second_, v, parametrization_);
  SurfaceJet j;
  j.u = u;
  j.v = v;
  j.position = {a.point.x, a.point.y, b.point.x, b.point.y};
  j.du = {a.first[0], a.first[1], 0.0, 0.0};
  j.dv = {0.0, 0.0, b.first[0], b.first[1]};
  j.duu = {a.second[0], a.second[1], 0.0, 0.0};
  j.dvv = {0.0, 0.0, b.second[0], b.second[1]};
  return j;
}

std::array<int, 2> AbreschLangerTorus::default_resolution() const {
  return {first_.family().is_circle() ? kDefaultResolution : kCurveAxisResolution,
          second_.family().is_circle() ? kDefaultResolution : kCurveAxisResolution};
}

std::array<int, 2> AnciauxTorus::default_resolution() const {
  return {curve_.family().is_circle() ? kDefaultResolution : kCurveAxisResolution, kDefaultResolution};
}

bool AbreschLangerTorus::is_clifford() const {
  return first_.family().is_circle() && second_.family().is_circle();
}

ClosedFormInvariants AbreschLangerTorus::closed_forms() const {
  auto h2 = [this](double u, double v) {
    const double r1 = evaluate(first_, u, parametrization_).point.radius();
    const double r2 = evaluate(second_, v, parametrization_).point.radius();
    const double rho1 = first_.family().constant;
    const double rho2 = second_.family().constant;
    return rho1 * rho1 * std::exp(r1 * r1) + rho2 * rho2 * std::exp(r2 * r2);
  };
  ClosedFormInvariants out;
  out.h2 = h2;
  out.sigma2 = h2;
  out.gauss = [](double, double) { return 0.0; };
  return out;
}

AnciauxTorus::AnciauxTorus(ProfileCurve curve, std::vector<Parameter> params, CurveParametrization parametrization)
    : curve_(std::move(curve)), params_(std::move(params)), parametrization_(parametrization) {
  if (curve_.family().kind != CurveKind::Anciaux) {
    throw InadmissibleParameterError("Anciaux tori need an Anciaux profile curve");
  }
  if (curve_.closure_error() > 1e-6) throw InadmissibleParameterError("profile curve is not closed");
}

std::array<double, 2> AnciauxTorus::periods() const { return {curve_period(curve_, parametrization_), 2.0 * kPi}; }

SurfaceJet AnciauxTorus::jet(double t, double s) const {
  const CurveJet cj = evaluate(curve_, t, parametrization_);
  const CurvePoint& g = cj.point;
  const auto& d1 = cj.first;
  const auto& d2 = cj.second;
  const double c = std::cos(s);
  const double sn = std::sin(s);
  SurfaceJet j;
  j.u = t;
  j.v = s;
  j.position = {g.x * c, g.y * c, g.x * sn, g.y * sn};
  j.du = {d1[0] * c, d1[1] * c, d1[0] * sn, d1[1] * sn};
  j.dv = {-g.x * sn, -g.y * sn, g.x * c, g.y * c};
  j.duu = {d2[0] * c, d2[1] * c, d2[0] * sn, d2[1] * sn};
  j.duv = {-d1[0] * sn, -d1[1] * sn, d1[0] * c, d1[1] * c};
  j.dvv = -j.position;
  return j;
}

ClosedFormInvariants AnciauxTorus::closed_forms() const {
  const double e2 = square(curve_.family().constant);
  ClosedFormInvariants out;
  out.h2 = [this, e2](double t, double) {
    const double r2 = square(evaluate(curve_, t, parametrization_).point.radius());
    return e2 * std::exp(r2) / r2;
  };
  out.sigma2 = [this, e2](double t, double) {
    const double r2 = square(evaluate(curve_, t, parametrization_).point.radius());
    return e2 * std::exp(r2) * (r2 * r2 - 2.0 * r2 + 4.0) / (r2 * r2 * r2);
  };
  return out;
}

std::array<double, 2> SphereBand::periods() const { return {2.0 * kBandHalfWidth, 2.0 * kPi}; }
std::array<double, 2> SphereBand::origin() const { return {-kBandHalfWidth, 0.0}; }

SurfaceJet SphereBand::jet(double u, double v) const {
  if (u < -kBandHalfWidth || u > kBandHalfWidth) {
    throw InadmissibleParameterError("sphere is only evaluated on the band |u| <= pi/3");
  }
  const double r = std::numbers::sqrt2;
  const double cu = std::cos(u);
  const double su = std::sin(u);
  const double cv = std::cos(v);
  const double sv = std::sin(v);
  SurfaceJet j;
  j.u = u;
  j.v = v;
  j.position = r * Vec4{cu * cv, cu * sv, su, 0.0};
  j.du = r * Vec4{-su * cv, -su * sv, cu, 0.0};
  j.dv = r * Vec4{-cu * sv, cu * cv, 0.0, 0.0};
  j.duu = r * Vec4{-cu * cv, -cu * sv, -su, 0.0};
  j.duv = r * Vec4{su * sv, -su * cv, 0.0, 0.0};
  j.dvv = r * Vec4{-cu * cv, -cu * sv, 0.0, 0.0};
  return j;
}

ClosedFormInvariants SphereBand::closed_forms() const {
  ClosedFormInvariants out;
  out.h2 = [](double, double) { return 2.0; };
  out.sigma2 = [](double, double) { return 1.0; };
  out.gauss = [](double, double) { return 0.5; };
  out.phi2 = [](double, double) { return 2.0; };
  return out;
}

SurfaceJet PlaneImmersion::jet(double u, double v) const {
  SurfaceJet j;
  j.u = u;
  j.v = v;
  j.position = origin_ + u * e1_ + v * e2_;
  j.du = e1_;
  j.dv = e2_;
  return j;
}

std::unique_ptr<Immersion> build_clifford() { return std::make_unique<RoundTorus>(); }

std::unique_ptr<LeeWangTorus> build_lee_wang(int m, int n) { return std::make_unique<LeeWangTorus>(m, n); }

std::unique_ptr<LawsonTorus> build_lawson(Rational alpha) { return std::make_unique<LawsonTorus>(alpha); }

std::unique_ptr<AbreschLangerTorus> build_abresch_langer(ProfileCurve first, ProfileCurve second) {
  return std::make_unique<AbreschLangerTorus>(std::move(first), std::move(second));
}

std::unique_ptr<AbreschLangerTorus> build_abresch_langer(int p1, int q1, int p2, int q2) {
  auto factor = [](int p, int q) {
    if (p == 0 && q == 0) return circle_curve(CurveKind::AbreschLanger);
    return shoot_closed(CurveKind::AbreschLanger, p, q).curve;
  };
  std::vector<Parameter> params{{"p", double(p1)}, {"q", double(q1)}, {"p2", double(p2)}, {"q2", double(q2)}};
  return std::make_unique<AbreschLangerTorus>(factor(p1, q1), factor(p2, q2), std::move(params));
}

std::unique_ptr<AnciauxTorus> build_anciaux(ProfileCurve curve) {
  return std::make_unique<AnciauxTorus>(std::move(curve));
}

std::unique_ptr<AnciauxTorus> build_anciaux(int p, int q) {
  ClosedCurve closed = shoot_closed(CurveKind::Anciaux, p, q);
  return std::make_unique<AnciauxTorus>(std::move(closed.curve),
                                        std::vector<Parameter>{{"p", double(p)}, {"q", double(q)}});
}

std::unique_ptr<SphereBand> build_sphere() { return std::make_unique<SphereBand>(); }

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {"clifford", "abresch-langer", "anciaux",
                                                 "lee-wang", "lawson",         "sphere"};
  return names;
}

std::unique_ptr<Immersion> build_family(const std::string& name, const FamilyParams& params) {
  if (name == "clifford") return build_clifford();
  if (name == "abresch-langer") return build_abresch_langer(params.p, params.q, params.p2, params.q2);
  if (name == "anciaux") return build_anciaux(params.p, params.q);
  if (name == "lee-wang") return build_lee_wang(params.m, params.n);
  if (name == "lawson") return build_lawson(params.alpha);
  if (name == "sphere") return build_sphere();
  throw InadmissibleParameterError("unknown family '" + name + "'");
}

}  // namespace shrinkers
