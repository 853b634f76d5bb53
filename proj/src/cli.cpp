#include "shrinkers/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <thread>

#include "shrinkers/errors.hpp"
#include "shrinkers/tori.hpp"
#include "shrinkers/verify.hpp"

namespace shrinkers::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string family;
  FamilyParams params;
  std::string alpha = "1/1";
  std::string grid;
  std::optional<double> tolerance;
  std::string format;
  std::string out;
  std::optional<std::string> sweep;
};

// Thrown for configuration problems that are not shrinkers::Error.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename T>
std::string num(const std::optional<T>& x) {
  return x ? num(static_cast<double>(*x)) : "nan";
}

std::optional<std::array<int, 2>> parse_grid(const std::string& text) {
  if (text.empty()) return std::nullopt;
  static const std::regex pattern(R"((\d{1,6})x(\d{1,6}))");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw InvalidInput("grid must look like NxM, got '" + text + "'");
  const int nu = std::stoi(m[1]);
  const int nv = std::stoi(m[2]);
  if (nu < 8 || nv < 8 || nu % 2 || nv % 2) {
    throw InvalidInput("grid resolution must be even and at least 8 in each direction, got " + text);
  }
  return std::array<int, 2>{nu, nv};
}

FamilyParams family_params(const RunConfig& c) {
  FamilyParams p = c.params;
  p.alpha = Rational::parse(c.alpha);
  return p;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoFailure("cannot open '" + path + "' for writing");
  return f;
}

void finish_output(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoFailure("failed writing '" + path + "'");
}

// Writes `text` to --out when given, otherwise to `out`.
void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f = open_output(c.out);
  f << text;
  finish_output(f, c.out);
}

std::string csv_row(const VerificationReport& r) {
  std::vector<std::string> cells;
  cells.push_back(r.family);
  cells.push_back(r.params.size() > 0 ? num(r.params[0].value) : "nan");
  cells.push_back(r.params.size() > 1 ? num(r.params[1].value) : "nan");
  cells.push_back(std::to_string(r.grid.nu));
  cells.push_back(std::to_string(r.grid.nv));
  cells.push_back(num(r.grid.period_u));
  cells.push_back(num(r.grid.period_v));
  const Residuals& res = r.residuals;
  for (const auto& v : {std::optional<double>(res.shrinker), std::optional<double>(res.symplectic), res.laplacian,
                        res.structure_tangent, res.structure_normal, res.div_jh, res.cubic_symmetry}) {
    cells.push_back(num(v));
  }
  for (const Range* range : {&r.h2, &r.sigma2, &r.gauss, &r.phi2}) {
    cells.push_back(num(range->min));
    cells.push_back(num(range->max));
  }
  const auto& in = r.integrals;
  cells.push_back(in ? num(in->area) : "nan");
  cells.push_back(in ? num(in->willmore) : "nan");
  cells.push_back(in ? num(in->total_curvature) : "nan");
  cells.push_back(in ? num(in->gb_residual) : "nan");
  cells.push_back(num(r.genus));
  cells.push_back(r.maslov ? num((*r.maslov)[0]) : "nan");
  cells.push_back(r.maslov ? num((*r.maslov)[1]) : "nan");
  cells.push_back(r.flags.lagrangian.value ? "1" : "0");
  cells.push_back(r.flags.hamiltonian_stationary.value ? "1" : "0");
  cells.push_back(r.classification.conclusion == kConcludeClifford ? "1" : "0");
  cells.push_back(r.classification.consistent ? "1" : "0");
  cells.push_back(std::to_string(r.failures.size()));
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
  return line + "\n";
}

std::string csv_header() {
  std::string line;
  const auto cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) line += (i ? "," : "") + cols[i];
  return line + "\n";
}

void write_surface_csv(std::ostream& f, const SampledSurface& s) {
  f << "u,v,x1,y1,x2,y2\n";
  for (const SurfaceJet& j : s.jets) {
    f << num(j.u) << ',' << num(j.v);
    for (double x : j.position.c) f << ',' << num(x);
    f << '\n';
  }
}

std::string stem_of(const std::string& path) {
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

void write_curve(const std::string& path, const ProfileCurve& curve, std::ostream& err) {
  std::ofstream f = open_output(path);
  write_curve_csv(f, curve);
  finish_output(f, path);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s curve: closure error %.3g, first-integral drift %.3g -> %s\n",
                to_string(curve.family().kind).c_str(), curve.closure_error(), curve.max_first_integral_drift(),
                path.c_str());
  err << buf;
}

int cmd_build(const RunConfig& c, std::ostream& err) {
  if (c.format == "json") throw InvalidInput("build writes CSV only");
  const auto immersion = build_family(c.family, family_params(c));
  const auto [nu, nv] = parse_grid(c.grid).value_or(immersion->default_resolution());
  const SampledSurface s = sample(*immersion, nu, nv);
  const std::string path = c.out.empty() ? c.family + ".csv" : c.out;
  {
    std::ofstream f = open_output(path);
    write_surface_csv(f, s);
    finish_output(f, path);
  }
  err << "surface " << nu << "x" << nv << " -> " << path << "\n";
  const std::string stem = stem_of(path);
  if (const auto* al = dynamic_cast<const AbreschLangerTorus*>(immersion.get())) {
    if (!al->first().family().is_circle()) write_curve(stem + "_curve.csv", al->first(), err);
    if (!al->second().family().is_circle()) write_curve(stem + "_curve2.csv", al->second(), err);
  } else if (const auto* an = dynamic_cast<const AnciauxTorus*>(immersion.get())) {
    if (!an->curve().family().is_circle()) write_curve(stem + "_curve.csv", an->curve(), err);
  }
  return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const auto immersion = build_family(c.family, family_params(c));
  const VerificationReport r = verify_immersion(*immersion, parse_grid(c.grid), c.tolerance);
  emit(c, c.format == "csv" ? csv_header() + csv_row(r) : to_json(r), out);
  return r.passed() ? kOk : kVerificationFailed;
}

std::vector<Rational> parse_sweep(const std::string& spec) {
  std::vector<Rational> points;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    points.push_back(Rational::parse(item));
  }
  return points;
}

FamilyParams sweep_point(const std::string& family, FamilyParams base, const Rational& r) {
  if (family == "lee-wang") {
    base.m = static_cast<int>(r.num);
    base.n = static_cast<int>(r.den);
  } else if (family == "lawson") {
    base.alpha = r;
  } else if (family == "abresch-langer" || family == "anciaux") {
    base.p = static_cast<int>(r.num);
    base.q = static_cast<int>(r.den);
  } else {
    throw InvalidInput("family '" + family + "' has no sweep parameter");
  }
  return base;
}

struct SweepRow {
  std::optional<VerificationReport> report;
  std::string error;
  bool invalid = false;
};

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (!c.sweep) throw InvalidInput("sweep needs --sweep SPEC");
  const std::vector<Rational> points = parse_sweep(*c.sweep);
  const FamilyParams base = family_params(c);
  std::vector<FamilyParams> configs;
  for (const Rational& r : points) configs.push_back(sweep_point(c.family, base, r));
  if (points.empty()) sweep_point(c.family, base, Rational{1, 1});  // still reject families without a parameter
  const auto grid = parse_grid(c.grid);

  std::vector<SweepRow> rows(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        const auto immersion = build_family(c.family, configs[i]);
        rows[i].report = verify_immersion(*immersion, grid, c.tolerance);
      } catch (const InadmissibleParameterError& e) {
        rows[i].invalid = true;
        rows[i].error = e.what();
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), std::max<std::size_t>(configs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int code = kOk;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].report) {
      if (!rows[i].report->passed()) code = std::max<int>(code, kVerificationFailed);
      continue;
    }
    err << "sweep point " << points[i].str() << ": " << rows[i].error << "\n";
    code = std::max<int>(code, rows[i].invalid ? kInvalidInput : kVerificationFailed);
  }
  if (code == kInvalidInput) return code;

  std::string text;
  if (c.format == "json") {
    text = "[";
    bool first = true;
    for (const auto& row : rows) {
      if (!row.report) continue;
      text += (first ? "\n" : ",\n") + to_json(*row.report);
      if (text.back() == '\n') text.pop_back();
      first = false;
    }
    text += "\n]\n";
  } else {
    text = csv_header();
    for (const auto& row : rows)
      if (row.report) text += csv_row(*row.report);
  }
  emit(c, text, out);
  return code;
}

}  // namespace

std::vector<std::string> csv_columns() {
  return {"family",       "a",          "b",
          "nu",           "nv",         "Tu",
          "Tv",           "shrinker",   "symplectic",
          "laplacian",    "structure_tangent", "structure_normal",
          "div_jh",       "cubic_symmetry",    "H2_min",
          "H2_max",       "sigma2_min", "sigma2_max",
          "K_min",        "K_max",      "phi2_min",
          "phi2_max",     "area",       "willmore",
          "total_curvature", "gb_residual", "genus",
          "maslov_u",     "maslov_v",   "lagrangian",
          "hamiltonian_stationary", "concludes_clifford", "consistent",
          "failures"};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Self-shrinking tori in C^2: build surfaces, verify identities, sweep families", "shrinkers"};
  app.add_option("command", c.command, "build | verify | sweep")
      ->required()
      ->check(CLI::IsMember({"build", "verify", "sweep"}));
  app.add_option("--family", c.family, "Family name")->required()->check(CLI::IsMember(family_names()));
  app.add_option("--m", c.params.m, "Lee-Wang m");
  app.add_option("--n", c.params.n, "Lee-Wang n");
  app.add_option("--p", c.params.p, "Rotation numerator (Abresch-Langer, Anciaux)");
  app.add_option("--q", c.params.q, "Rotation denominator");
  app.add_option("--p2", c.params.p2, "Second Abresch-Langer factor numerator (0 = circle)");
  app.add_option("--q2", c.params.q2, "Second Abresch-Langer factor denominator");
  app.add_option("--alpha", c.alpha, "Lawson parameter a/b");
  app.add_option("--grid", c.grid, "Resolution NxM");
  app.add_option("--tol", c.tolerance, "Shrinker residual threshold")->check(CLI::PositiveNumber);
  app.add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", c.out, "Output path");
  app.add_option("--sweep", c.sweep, "Comma-separated a/b parameter points");
  app.set_config("--config", "", "Flat key = value file mirroring the flags");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    if (c.command == "build") return cmd_build(c, err);
    if (c.command == "verify") return cmd_verify(c, out);
    return cmd_sweep(c, out, err);
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const InadmissibleParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const GridError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }
}

}  // namespace shrinkers::cli
