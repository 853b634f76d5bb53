// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "shrinkers/cli.hpp"
#include "shrinkers/errors.hpp"
#include "shrinkers/grid.hpp"
#include "shrinkers/tori.hpp"
#include "shrinkers/verify.hpp"

using namespace shrinkers;

namespace {

constexpr double kPi = std::numbers::pi;

struct Member {
  std::string label;
  std::unique_ptr<Immersion> immersion;
  SampledSurface surface;
  VerificationReport report;
};

Member make_member(std::string label, std::unique_ptr<Immersion> im) {
  Member m{std::move(label), std::move(im), {}, {}};
  const auto [nu, nv] = m.immersion->default_resolution();
  m.surface = sample(*m.immersion, nu, nv);
  m.report = run_suite(*m.immersion, m.surface);
  return m;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Collects the reasons a criterion fails; an empty list is a pass. A
// `known` failure is one the mathematics rules out (the target value is not
// attainable): the criterion still prints FAIL but does not fail the run.
struct Verdict {
  std::vector<std::string> problems;
  std::vector<std::string> known;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

double max_closed_form_error(const Member& m, const ClosedFormInvariants::ScalarFn& exact,
                             double FundamentalData::*field) {
  double err = 0.0;
  for (std::size_t k = 0; k < m.surface.jets.size(); ++k) {
    const SurfaceJet& j = m.surface.jets[k];
    err = std::max(err, std::abs(exact(j.u, j.v) - m.surface.data[k].*field));
  }
  return err;
}

std::string run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  cli::run(args, out, err);
  return out.str();
}

std::string run_process(const std::string& command) {
  std::string out;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return {};
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  ::pclose(pipe);
  return out;
}

}  // namespace

int main() {
  std::vector<Member> tori;
  tori.push_back(make_member("Clifford", build_clifford()));
  tori.push_back(make_member("Lee-Wang(1,2)", build_lee_wang(1, 2)));
  tori.push_back(make_member("Lawson(2)", build_lawson(Rational{2, 1})));
  tori.push_back(make_member("Anciaux(1,3)", build_anciaux(1, 3)));
  tori.push_back(make_member("AL(3,5)xcircle", build_abresch_langer(3, 5)));
  const Member& clifford = tori[0];
  const Member& lw = tori[1];
  const Member& lawson = tori[2];
  const Member& anciaux = tori[3];
  const Member& al = tori[4];

  std::vector<std::pair<std::string, std::function<Verdict()>>> criteria;

  criteria.emplace_back("self-shrinker residual", [&] {
    Verdict v;
    for (const Member& m : tori) {
      const bool ode = m.immersion->derivative_class() == DerivativeClass::OdeBuilt;
      const double tol = ode ? 1e-6 : 1e-8;
      v.require(m.report.residuals.shrinker < tol, m.label + " " + fmt(m.report.residuals.shrinker));
      v.detail += m.label + " " + fmt(m.report.residuals.shrinker) + "; ";
    }
    return v;
  });

  criteria.emplace_back("Willmore identity", [&] {
    Verdict v;
    for (const Member& m : tori) {
      const bool ode = m.immersion->derivative_class() == DerivativeClass::OdeBuilt;
      const double dev = std::abs(m.report.integrals->willmore / m.report.integrals->area - 2.0);
      v.require(dev < (ode ? 1e-5 : 1e-6), m.label + " ratio off by " + fmt(dev));
      v.detail += m.label + " " + fmt(dev) + "; ";
    }
    const double w = clifford.report.integrals->willmore, a = clifford.report.integrals->area;
    v.require(std::abs(w / (16 * kPi * kPi) - 1.0) < 1e-8, "Clifford Willmore " + fmt(w));
    v.require(std::abs(a / (8 * kPi * kPi) - 1.0) < 1e-8, "Clifford area " + fmt(a));
    return v;
  });

  criteria.emplace_back("Gauss-Bonnet and genus formula", [&] {
    Verdict v;
    for (const Member& m : tori) {
      v.require(m.report.genus == 1, m.label + " genus");
      v.require(m.report.integrals->gb_residual < 1e-4, m.label + " residual " + fmt(m.report.integrals->gb_residual));
      v.detail += m.label + " " + fmt(m.report.integrals->gb_residual) + "; ";
    }
    return v;
  });

  criteria.emplace_back("closed-form cross-validation", [&] {
    Verdict v;
    auto check = [&](const Member& m, const ClosedFormInvariants::ScalarFn& f, double FundamentalData::*field,
                     const char* name) {
      if (!f) {
        v.require(false, m.label + " has no closed form for " + name);
        return;
      }
      const double err = max_closed_form_error(m, f, field);
      v.require(err < 1e-6, m.label + " " + name + " " + fmt(err));
      v.detail += m.label + " " + name + " " + fmt(err) + "; ";
    };
    check(al, al.immersion->closed_forms().h2, &FundamentalData::h2, "H2");
    check(al, al.immersion->closed_forms().sigma2, &FundamentalData::sigma2, "sigma2");
    check(anciaux, anciaux.immersion->closed_forms().h2, &FundamentalData::h2, "H2");
    check(anciaux, anciaux.immersion->closed_forms().sigma2, &FundamentalData::sigma2, "sigma2");
    check(lw, lw.immersion->closed_forms().h2, &FundamentalData::h2, "H2");
    check(lawson, lawson.immersion->closed_forms().sigma2, &FundamentalData::sigma2, "sigma2");
    return v;
  });

  criteria.emplace_back("bounds attained", [&] {
    Verdict v;
    auto reach = [&](const std::string& what, Range r, double lo, double hi) {
      v.require(std::abs(r.min - lo) < 1e-4 && std::abs(r.max - hi) < 1e-4,
                what + " [" + fmt(r.min) + ", " + fmt(r.max) + "]");
      v.require(r.min >= lo - 1e-9 && r.max <= hi + 1e-9, what + " violates its bound");
    };
    reach("Lee-Wang H2", lw.report.h2, 1.5, 3.0);
    reach("Lee-Wang sigma2", lw.report.sigma2, 7.0 / 6.0, 13.0 / 3.0);
    reach("Lee-Wang K", lw.report.gauss, -2.0 / 3.0, 1.0 / 6.0);
    reach("Lawson sigma2", lawson.report.sigma2, 1.25, 5.0);
    // The Lawson K bounds are satisfied but not reached.
    v.require(lawson.report.gauss.min >= -3.0 - 1e-9 && lawson.report.gauss.max <= 0.75 + 1e-9,
              "Lawson K violates its bound");
    v.detail = "Lee-Wang K [" + fmt(lw.report.gauss.min) + ", " + fmt(lw.report.gauss.max) + "], Lawson sigma2 [" +
               fmt(lawson.report.sigma2.min) + ", " + fmt(lawson.report.sigma2.max) + "]";
    return v;
  });

  criteria.emplace_back("Lagrangian detection", [&] {
    Verdict v;
    const auto lawson1 = make_member("Lawson(1)", build_lawson(Rational{1, 1}));
    for (const Member* m : {&lw, &anciaux, &al, &lawson1}) {
      v.require(m->report.residuals.symplectic < 1e-10, m->label + " " + fmt(m->report.residuals.symplectic));
      v.detail += m->label + " " + fmt(m->report.residuals.symplectic) + "; ";
    }
    const double s = lawson.report.residuals.symplectic;
    v.require(std::abs(s - 1.0) < 1e-8, "Lawson(2) " + fmt(s));
    v.detail += "Lawson(2) " + fmt(s);
    return v;
  });

  criteria.emplace_back("shooting", [&] {
    Verdict v;
    for (auto [kind, p, q] : {std::tuple{CurveKind::AbreschLanger, 3, 5}, std::tuple{CurveKind::Anciaux, 1, 3}}) {
      const ClosedCurve c = shoot_closed(kind, p, q);
      const std::string name = to_string(kind) + " " + std::to_string(p) + "/" + std::to_string(q);
      v.require(c.rotation_error < 1e-10, name + " rotation error " + fmt(c.rotation_error));
      v.require(c.curve.closure_error() < 1e-6, name + " closure " + fmt(c.curve.closure_error()));
      v.require(c.curve.max_first_integral_drift() < 1e-9, name + " drift " + fmt(c.curve.max_first_integral_drift()));
      v.detail += name + " closure " + fmt(c.curve.closure_error()) + "; ";
    }
    bool rejected = false;
    try {
      shoot_closed(CurveKind::AbreschLanger, 1, 1);
    } catch (const InadmissibleParameterError&) {
      rejected = true;
    }
    v.require(rejected, "AL 1/1 accepted");
    return v;
  });

  criteria.emplace_back("gap bound table", [&] {
    Verdict v;
    v.require(theorem_a_bound(1) == 1.0, "p = 1");
    v.require(theorem_a_bound(2) == 2.0, "p = 2");
    v.require(theorem_a_bound(3) == 5.0 / 3.0, "p = 3");
    return v;
  });

  criteria.emplace_back("mean curvature straddles 2 off the Clifford point", [&] {
    Verdict v;
    for (const Member* m : {&al, &anciaux, &lw}) {
      const Range r = m->report.h2;
      v.detail += m->label + " [" + fmt(r.min) + ", " + fmt(r.max) + "]; ";
      v.require(r.min < 2.0 - 1e-3 && r.max > 2.0 + 1e-3, m->label + " does not straddle 2");
    }
    // Lawson tori are minimal in the sphere of radius sqrt 2, so |H|^2 = 2
    // identically; they are not Lagrangian and the contrapositive says nothing.
    const Range r = lawson.report.h2;
    if (r.min < 2.0 - 1e-3 && r.max > 2.0 + 1e-3) {
      v.detail += lawson.label + " straddles 2";
    } else if (std::abs(r.min - 2.0) < 1e-12 && std::abs(r.max - 2.0) < 1e-12) {
      v.known.push_back(lawson.label + " has |H|^2 = 2 identically (range [" + fmt(r.min) + ", " + fmt(r.max) +
                        "]); unattainable for a minimal torus in the sphere");
    } else {
      v.require(false, lawson.label + " range [" + fmt(r.min) + ", " + fmt(r.max) + "]");
    }
    return v;
  });

  criteria.emplace_back("structure identities", [&] {
    Verdict v;
    for (const Member& m : tori) {
      const Residuals& r = m.report.residuals;
      v.require(r.laplacian && *r.laplacian < 1e-5, m.label + " laplacian");
      if (!m.report.flags.lagrangian.value) continue;
      v.require(r.structure_tangent && *r.structure_tangent < 1e-6, m.label + " tangent");
      v.require(r.structure_normal && *r.structure_normal < 1e-6, m.label + " normal");
      v.require(r.div_jh && *r.div_jh < 1e-6, m.label + " div JH");
      v.detail += m.label + " " + fmt(std::max({*r.structure_tangent, *r.structure_normal, *r.div_jh})) + "; ";
    }
    v.require(lw.report.max_div_jh && *lw.report.max_div_jh < 1e-8, "Lee-Wang div JH not zero");
    return v;
  });

  criteria.emplace_back("Maslov nontriviality", [&] {
    Verdict v;
    for (const Member& m : tori) {
      if (!m.report.flags.lagrangian.value) continue;
      v.require(maslov_nontriviality(m.report), m.label + " periods vanish");
    }
    const auto p = *clifford.report.maslov;
    v.require(std::abs(p[0]) < 1e-8 && std::abs(std::abs(p[1]) - 4 * kPi) < 1e-8,
              "Clifford periods (" + fmt(p[0]) + ", " + fmt(p[1]) + ")");
    v.detail = "Clifford (" + fmt(p[0]) + ", " + fmt(p[1]) + ")";
    return v;
  });

  criteria.emplace_back("classifier consistency on the zoo", [&] {
    Verdict v;
    std::vector<Member> zoo;
    zoo.push_back(make_member("Lee-Wang(1,1)", build_lee_wang(1, 1)));
    zoo.push_back(make_member("Lee-Wang(1,3)", build_lee_wang(1, 3)));
    zoo.push_back(make_member("Lee-Wang(2,3)", build_lee_wang(2, 3)));
    zoo.push_back(make_member("Lawson(1)", build_lawson(Rational{1, 1})));
    zoo.push_back(make_member("Lawson(3/2)", build_lawson(Rational{3, 2})));
    zoo.push_back(make_member("AL circle x circle", build_abresch_langer(0, 0)));
    zoo.push_back(make_member("AL(2,3)xcircle", build_abresch_langer(2, 3)));
    zoo.push_back(make_member("Anciaux circle", build_anciaux(circle_curve(CurveKind::Anciaux))));
    zoo.push_back(make_member("Anciaux(2,5)", build_anciaux(2, 5)));
    zoo.push_back(make_member("sphere band", build_sphere()));
    int clifford_points = 0;
    auto judge = [&](const Member& m) {
      const Classification& c = m.report.classification;
      v.require(c.consistent, m.label + " contradicts its identity");
      const bool says = c.conclusion == kConcludeClifford;
      v.require(says == m.immersion->is_clifford(), m.label + " concluded '" + c.conclusion + "'");
      clifford_points += says;
    };
    for (const Member& m : tori) judge(m);
    for (const Member& m : zoo) judge(m);
    v.detail = std::to_string(tori.size() + zoo.size()) + " members, " + std::to_string(clifford_points) +
               " concluded Clifford";
    return v;
  });

  criteria.emplace_back("deterministic JSON", [&] {
    Verdict v;
    const std::vector<std::string> args = {"verify", "--family", "clifford"};
    const std::string a = run_cli(args), b = run_cli(args);
    v.require(!a.empty() && a == b, "in-process runs differ");
    const std::string cmd = std::string(SHRINKERS_TOOL) + " verify --family clifford";
    const std::string c = run_process(cmd), d = run_process(cmd);
    v.require(!c.empty() && c == d, "separate processes differ");
    v.require(a == c, "in-process and executable output differ");
    v.detail = std::to_string(a.size()) + " bytes";
    return v;
  });

  int failed = 0;
  int unattainable = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.problems.push_back(std::string("threw: ") + e.what());
    }
    const bool ok = v.problems.empty() && v.known.empty();
    failed += !v.problems.empty();
    unattainable += v.problems.empty() && !v.known.empty();
    std::cout << (ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first;
    if (!ok) {
      std::cout << " --";
      for (const auto& p : v.problems) std::cout << ' ' << p << ';';
      for (const auto& p : v.known) std::cout << " known: " << p << ';';
    } else if (!v.detail.empty()) {
      std::cout << " (" << v.detail << ")";
    }
    std::cout << '\n';
  }
  const std::size_t passed = criteria.size() - failed - unattainable;
  std::cout << passed << "/" << criteria.size() << " criteria passed";
  if (unattainable > 0) std::cout << ", " << unattainable << " unattainable";
  std::cout << '\n';
  return failed == 0 ? 0 : 1;
}
