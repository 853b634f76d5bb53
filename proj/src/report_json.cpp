#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "shrinkers/verify.hpp"

namespace shrinkers {

namespace {

using Json = nlohmann::ordered_json;

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// nlohmann prints the shortest round-trip form; the report pins %.17g instead.
void write(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        write(it.value(), out, indent + 2);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalar = true;
      for (const auto& e : j) scalar = scalar && !e.is_structured();
      if (scalar) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(j[i], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(j[i], out, indent + 2);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

template <typename T>
Json optional_number(const std::optional<T>& x) {
  return x ? number(static_cast<double>(*x)) : Json(nullptr);
}

Json range(const Range& r) { return Json::array({number(r.min), number(r.max)}); }

Json flag(const Flag& f) { return Json{{"value", f.value}, {"margin", number(f.margin)}}; }

}  // namespace

std::string to_json(const VerificationReport& r) {
  Json j;
  j["family"] = r.family;
  Json params = Json::object();
  for (const auto& p : r.params) params[p.name] = number(p.value);
  j["params"] = params;
  j["grid"] = {{"nu", r.grid.nu}, {"nv", r.grid.nv}, {"Tu", number(r.grid.period_u)}, {"Tv", number(r.grid.period_v)}};
  j["residuals"] = {{"shrinker", number(r.residuals.shrinker)},
                    {"symplectic", number(r.residuals.symplectic)},
                    {"laplacian", optional_number(r.residuals.laplacian)},
                    {"structure_tangent", optional_number(r.residuals.structure_tangent)},
                    {"structure_normal", optional_number(r.residuals.structure_normal)},
                    {"div_jh", optional_number(r.residuals.div_jh)},
                    {"cubic_symmetry", optional_number(r.residuals.cubic_symmetry)}};
  j["ranges"] = {{"H2", range(r.h2)}, {"sigma2", range(r.sigma2)}, {"K", range(r.gauss)}, {"phi2", range(r.phi2)}};
  if (r.integrals) {
    j["integrals"] = {{"area", number(r.integrals->area)},
                      {"willmore", number(r.integrals->willmore)},
                      {"total_curvature", number(r.integrals->total_curvature)},
                      {"gb_residual", number(r.integrals->gb_residual)}};
  } else {
    j["integrals"] = {{"area", nullptr}, {"willmore", nullptr}, {"total_curvature", nullptr}, {"gb_residual", nullptr}};
  }
  j["genus"] = r.genus ? Json(*r.genus) : Json(nullptr);
  j["maslov"] = r.maslov ? Json::array({number((*r.maslov)[0]), number((*r.maslov)[1])}) : Json(nullptr);
  const HypothesisFlags& f = r.flags;
  j["flags"] = {{"h2_constant", flag(f.h2_constant)},
                {"h2_le_2", flag(f.h2_le_2)},
                {"h2_ge_2", flag(f.h2_ge_2)},
                {"sigma2_le_2", flag(f.sigma2_le_2)},
                {"lagrangian", flag(f.lagrangian)},
                {"hamiltonian_stationary", flag(f.hamiltonian_stationary)},
                {"spherical", flag(f.spherical)},
                {"K_nonneg", flag(f.k_nonneg)},
                {"K_nonpos", flag(f.k_nonpos)},
                {"sigma2_le_gap", flag(f.sigma2_le_gap)}};
  j["conclusion"] = r.classification.conclusion;
  j["consistent"] = r.classification.consistent;
  j["basis"] = r.classification.basis;
  j["genus_estimate"] = optional_number(r.genus_estimate);
  j["sigma_integral"] = r.integrals ? number(r.integrals->sigma_integral) : Json(nullptr);
  j["max_div_jh"] = optional_number(r.max_div_jh);
  j["failures"] = r.failures;
  j["notes"] = r.notes;

  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

}  // namespace shrinkers
