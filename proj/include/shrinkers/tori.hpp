#pragma once

// The four self-shrinking torus families in C^2, the round sphere band and
// a few reference immersions, each with its known closed-form invariants.

#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "shrinkers/curves.hpp"
#include "shrinkers/immersion.hpp"

namespace shrinkers {

/// Rational number a/b with b > 0, kept as written (not reduced).
struct Rational {
  int num = 0;
  int den = 1;

  double value() const { return static_cast<double>(num) / den; }
  bool reduced() const;
  /// Parses "a/b" or "a". Throws InadmissibleParameterError on bad syntax.
  static Rational parse(const std::string& text);
  std::string str() const;
};

/// Immersion whose complex coordinates are z_k(u, v) = A_k f_k(u) e^{i w_k v}
/// with f_k in {cos, sin}. Covers the Clifford, Lee-Wang and Lawson tori.
class SeparableTorus : public Immersion {
 public:
  enum class Profile { Cos, Sin };
  struct Term {
    double amplitude = 0.0;
    Profile profile = Profile::Cos;
    double frequency = 0.0;
  };

  SeparableTorus(Term first, Term second, std::array<double, 2> periods)
      : terms_{first, second}, periods_(periods) {}

  std::array<double, 2> periods() const override { return periods_; }
  SurfaceJet jet(double u, double v) const override;

 private:
  std::array<Term, 2> terms_;
  std::array<double, 2> periods_;
};

/// R e^{it} (cos s, sin s); the Clifford torus for R = sqrt 2.
class RoundTorus final : public SeparableTorus {
 public:
  explicit RoundTorus(double radius = std::numbers::sqrt2);
  std::string family() const override;
  std::vector<Parameter> params() const override;
  bool is_clifford() const override;
  ClosedFormInvariants closed_forms() const override;

 private:
  double radius_;
};

class LeeWangTorus final : public SeparableTorus {
 public:
  /// Requires m, n >= 1, gcd(m, n) = 1, m <= n.
  LeeWangTorus(int m, int n);
  std::string family() const override { return "lee-wang"; }
  std::vector<Parameter> params() const override;
  bool is_clifford() const override { return m_ == 1 && n_ == 1; }
  ClosedFormInvariants closed_forms() const override;

 private:
  int m_;
  int n_;
};

class LawsonTorus final : public SeparableTorus {
 public:
  /// Requires alpha = a/b >= 1 in lowest terms.
  explicit LawsonTorus(Rational alpha);
  std::string family() const override { return "lawson"; }
  std::vector<Parameter> params() const override;
  bool is_clifford() const override { return alpha_.num == alpha_.den; }
  ClosedFormInvariants closed_forms() const override;

 private:
  Rational alpha_;
};

/// Parameter along a profile curve used by the ODE-built tori.
enum class CurveParametrization {
  Arclength,
  CurvatureWeighted,  // tau with d tau / dt = monitor_weight(kind, point)
};

/// Product (Gamma_1(u), Gamma_2(v)) of two closed Abresch-Langer curves.
class AbreschLangerTorus final : public Immersion {
 public:
  AbreschLangerTorus(ProfileCurve first, ProfileCurve second, std::vector<Parameter> params = {},
                     CurveParametrization parametrization = CurveParametrization::CurvatureWeighted);
  std::string family() const override { return "abresch-langer"; }
  std::vector<Parameter> params() const override { return params_; }
  std::array<double, 2> periods() const override;
  SurfaceJet jet(double u, double v) const override;
  DerivativeClass derivative_class() const override { return DerivativeClass::OdeBuilt; }
  std::array<int, 2> default_resolution() const override;
  bool is_clifford() const override;
  ClosedFormInvariants closed_forms() const override;

  const ProfileCurve& first() const { return first_; }
  const ProfileCurve& second() const { return second_; }

 private:
  ProfileCurve first_;
  ProfileCurve second_;
  std::vector<Parameter> params_;
  CurveParametrization parametrization_;
};

/// gamma(t) (cos s, sin s) for a closed Anciaux profile curve gamma.
class AnciauxTorus final : public Immersion {
 public:
  explicit AnciauxTorus(ProfileCurve curve, std::vector<Parameter> params = {},
                        CurveParametrization parametrization = CurveParametrization::CurvatureWeighted);
  std::string family() const override { return "anciaux"; }
  std::vector<Parameter> params() const override { return params_; }
  std::array<double, 2> periods() const override;
  SurfaceJet jet(double t, double s) const override;
  DerivativeClass derivative_class() const override { return DerivativeClass::OdeBuilt; }
  std::array<int, 2> default_resolution() const override;
  bool is_clifford() const override { return curve_.family().is_circle(); }
  ClosedFormInvariants closed_forms() const override;

  const ProfileCurve& curve() const { return curve_; }

 private:
  ProfileCurve curve_;
  std::vector<Parameter> params_;
  CurveParametrization parametrization_;
};

/// S^2(sqrt 2) in R^3 x {0}, latitude u in [-pi/3, pi/3), longitude v.
class SphereBand final : public Immersion {
 public:
  static constexpr double kBandHalfWidth = std::numbers::pi / 3.0;

  std::string family() const override { return "sphere"; }
  std::array<double, 2> periods() const override;
  std::array<double, 2> origin() const override;
  bool closed() const override { return false; }
  /// Throws InadmissibleParameterError outside the band.
  SurfaceJet jet(double u, double v) const override;
  bool is_clifford() const override { return false; }
  ClosedFormInvariants closed_forms() const override;
};

/// Affine plane p0 + u e1 + v e2 (test fixture for the totally geodesic case).
class PlaneImmersion final : public Immersion {
 public:
  PlaneImmersion(Vec4 origin, Vec4 e1, Vec4 e2) : origin_(origin), e1_(e1), e2_(e2) {}
  std::string family() const override { return "plane"; }
  std::array<double, 2> periods() const override { return {1.0, 1.0}; }
  bool closed() const override { return false; }
  SurfaceJet jet(double u, double v) const override;
  bool is_clifford() const override { return false; }

 private:
  Vec4 origin_;
  Vec4 e1_;
  Vec4 e2_;
};

std::unique_ptr<Immersion> build_clifford();
std::unique_ptr<LeeWangTorus> build_lee_wang(int m, int n);
std::unique_ptr<LawsonTorus> build_lawson(Rational alpha);
/// p2 = q2 = 0 selects the unit circle for the second factor.
std::unique_ptr<AbreschLangerTorus> build_abresch_langer(int p1, int q1, int p2 = 0, int q2 = 0);
std::unique_ptr<AbreschLangerTorus> build_abresch_langer(ProfileCurve first, ProfileCurve second);
std::unique_ptr<AnciauxTorus> build_anciaux(int p, int q);
std::unique_ptr<AnciauxTorus> build_anciaux(ProfileCurve curve);
std::unique_ptr<SphereBand> build_sphere();

/// Registry names accepted by build_family.
const std::vector<std::string>& family_names();

struct FamilyParams {
  int m = 0;
  int n = 0;
  int p = 0;
  int q = 0;
  int p2 = 0;
  int q2 = 0;
  Rational alpha{1, 1};
};

/// Builds a family member by registry name. Throws InadmissibleParameterError
/// for unknown names or invalid parameters.
std::unique_ptr<Immersion> build_family(const std::string& name, const FamilyParams& params);

}  // namespace shrinkers
