#pragma once

// Identity suite and rigidity classification for sampled self-shrinkers.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "shrinkers/grid.hpp"
#include "shrinkers/immersion.hpp"

namespace shrinkers {

/// Gap bound (3p - 4) / (2p - 3) for codimension p. Throws for p < 1.
double theorem_a_bound(int p);

struct Tolerances {
  double shrinker = 1e-8;  // 1e-6 for ODE-built families
  double lagrangian = 1e-10;
  double laplacian = 1e-5;
  double structure = 1e-6;
  double div_jh = 1e-6;
  double cubic = 1e-10;
  double willmore = 1e-6;  // 1e-5 for ODE-built families
  double gauss_bonnet = 1e-4;
  double flag = 1e-6;      // slack for the inequality flags
  double maslov = 1e-3;

  static Tolerances defaults(DerivativeClass kind);
};

struct Flag {
  bool value = false;
  double margin = 0.0;  // positive when the hypothesis holds with room to spare
};

struct HypothesisFlags {
  Flag h2_constant;
  Flag h2_le_2;
  Flag h2_ge_2;
  Flag sigma2_le_2;
  Flag lagrangian;
  Flag hamiltonian_stationary;
  Flag spherical;
  Flag k_nonneg;
  Flag k_nonpos;
  Flag sigma2_le_gap;  // |sigma|^2 <= theorem_a_bound(2)

  /// |H|^2 constant or <= 2 or >= 2.
  bool h2_hypothesis() const { return h2_constant.value || h2_le_2.value || h2_ge_2.value; }
};

struct Range {
  double min = 0.0;
  double max = 0.0;
};

struct Residuals {
  double shrinker = 0.0;
  double symplectic = 0.0;
  // Empty when the check does not apply or could not be computed.
  std::optional<double> laplacian;
  std::optional<double> structure_tangent;
  std::optional<double> structure_normal;
  std::optional<double> div_jh;
  std::optional<double> cubic_symmetry;
};

struct Integrals {
  double area = 0.0;
  double willmore = 0.0;
  double total_curvature = 0.0;
  double sigma_integral = 0.0;  // integral of (2 - |sigma|^2)
  double gb_residual = 0.0;
};

struct Classification {
  std::string conclusion;
  std::string basis;  // which statement produced the conclusion
  bool consistent = true;
};

inline constexpr const char* kConcludeClifford = "Clifford torus";
inline constexpr const char* kConcludeTorusSigma2 = "torus with |sigma|^2 = 2";
inline constexpr const char* kConcludeSphere = "round sphere";
inline constexpr const char* kConcludeNone = "no rigidity applies";
inline constexpr const char* kConcludeWithheld = "withheld (band sample)";

// Which hypothesis produced the conclusion.
inline constexpr const char* kBasisLagrangianH2 = "lagrangian, |H|^2 constant or one-sided about 2";
inline constexpr const char* kBasisLagrangianSigma2 = "lagrangian, |sigma|^2 <= 2";
inline constexpr const char* kBasisGapUnit = "|sigma|^2 below the gap bound and identically 1";
inline constexpr const char* kBasisGap = "|sigma|^2 below the gap bound";

struct VerificationReport {
  std::string family;
  std::vector<Parameter> params;
  PeriodicGrid grid;
  bool closed = true;
  bool clifford_truth = false;
  Tolerances tolerances;

  Residuals residuals;
  Range h2;
  Range sigma2;
  Range gauss;
  Range phi2;
  std::optional<double> max_div_jh;  // max |div JH|
  std::optional<Integrals> integrals;
  std::optional<double> genus_estimate;
  std::optional<int> genus;
  std::optional<std::array<double, 2>> maslov;

  HypothesisFlags flags;
  Classification classification;

  std::vector<std::string> failures;
  std::vector<std::string> notes;

  bool passed() const { return failures.empty(); }
};

/// Runs every check independently; a failing check is recorded in
/// `failures` (or `notes` when it does not apply) and never aborts the rest.
VerificationReport run_suite(const Immersion& immersion, const SampledSurface& surface,
                             const Tolerances& tolerances);
VerificationReport run_suite(const Immersion& immersion, const SampledSurface& surface);

/// Evaluates the hypothesis ladder and compares with the ground truth.
Classification classify(const VerificationReport& report);

/// True iff some Maslov period exceeds the threshold. Throws
/// NonLagrangianError when the report has no Maslov periods.
bool maslov_nontriviality(const VerificationReport& report);

/// Samples on the immersion's default resolution and runs the suite.
VerificationReport verify_immersion(const Immersion& immersion, std::optional<std::array<int, 2>> resolution = {},
                                    std::optional<double> shrinker_tolerance = {});

/// JSON document with a fixed key order; doubles use 17 significant digits,
/// non-finite values and checks that do not apply are null.
std::string to_json(const VerificationReport& report);

}  // namespace shrinkers
