#include "ecdde/params.hpp"

#include <cmath>
#include <utility>

#include <json.hpp>

#include "ecdde/special.hpp"

namespace ecdde {

DdeParams make_params(std::vector<Complex> alphas,
                      std::vector<double> shifts) {
  if (shifts.empty() || alphas.empty())
    throw ValidationError("make_params: empty parameter lists");
  if (shifts.size() != alphas.size())
    throw ValidationError("make_params: alphas and shifts must have equal "
                          "length");
  if (shifts.size() < 2)
    throw ValidationError(
        "make_params: m = 0 gives the plain Euler-Cauchy ODE (q* = u^beta); "
        "at least one nonzero shift is required");
  if (shifts[0] != 0.0)
    throw ValidationError("make_params: shifts[0] must be exactly 0");
  for (size_t j = 1; j < shifts.size(); ++j) {
    if (!(shifts[j] > shifts[j - 1]))
      throw ValidationError("make_params: shifts must be strictly increasing "
                            "(offending index " +
                            std::to_string(j) + ")");
    if (alphas[j] == Complex(0.0))
      throw ValidationError("make_params: alpha_" + std::to_string(j) +
                            " must be nonzero for j >= 1");
  }
  DdeParams p;
  p.shifts = std::move(shifts);
  p.alphas = std::move(alphas);
  p.beta = Complex(0.0);
  for (const Complex& al : p.alphas) p.beta += al;
  p.a = Complex(1.0) + p.alphas[0];
  // c0 = prod_{j>=1} (v_j e^gamma)^{-alpha_j}, principal powers (v_j > 0).
  Complex log_c0 = 0.0;
  for (size_t j = 1; j < p.shifts.size(); ++j)
    log_c0 -= p.alphas[j] * (std::log(p.shifts[j]) + kEulerGamma);
  p.c0 = std::exp(log_c0);
  return p;
}

DdeParams preset(const Preset& p) {
  switch (p.name) {
    case Preset::Name::dickman:
      return make_params({-1.0, 1.0}, {0.0, 1.0});
    case Preset::Name::buchstab:
      return make_params({0.0, -1.0}, {0.0, 1.0});
    case Preset::Name::iwaniec:
      if (!(p.kappa > 0.0))
        throw ValidationError("preset iwaniec: kappa must be > 0");
      return make_params({Complex(p.kappa - 1.0), Complex(-p.kappa)},
                         {0.0, 1.0});
    case Preset::Name::q1:
      return preset(Preset{Preset::Name::iwaniec, 1.0});
  }
  throw ValidationError("preset: unknown preset");
}

DdeParams preset(const std::string& name, double kappa) {
  if (name == "dickman") return preset(Preset{Preset::Name::dickman, 1.0});
  if (name == "buchstab") return preset(Preset{Preset::Name::buchstab, 1.0});
  if (name == "iwaniec") return preset(Preset{Preset::Name::iwaniec, kappa});
  if (name == "q1") return preset(Preset{Preset::Name::q1, 1.0});
  throw ValidationError("preset: unknown preset name '" + name +
                        "' (expected dickman|buchstab|iwaniec|q1)");
}

std::string to_json_string(const DdeParams& params) {
  nlohmann::json j;
  for (const Complex& al : params.alphas)
    j["alphas"].push_back({al.real(), al.imag()});
  j["shifts"] = params.shifts;
  return j.dump();
}

DdeParams params_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("params_from_json_string: ") + e.what());
  }
  if (!j.contains("alphas") || !j.contains("shifts"))
    throw ValidationError(
        "params_from_json_string: expected keys \"alphas\" and \"shifts\"");
  std::vector<Complex> alphas;
  for (const auto& entry : j["alphas"]) {
    if (entry.is_number()) {
      alphas.emplace_back(entry.get<double>(), 0.0);
    } else if (entry.is_array() && entry.size() == 2) {
      alphas.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    } else {
      throw ValidationError(
          "params_from_json_string: alpha entries must be numbers or "
          "[re, im] pairs");
    }
  }
  std::vector<double> shifts = j["shifts"].get<std::vector<double>>();
  return make_params(std::move(alphas), std::move(shifts));
}

}  // namespace ecdde
