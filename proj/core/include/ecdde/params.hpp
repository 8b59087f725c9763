#ifndef ECDDE_PARAMS_HPP
#define ECDDE_PARAMS_HPP

#include <span>
#include <string>
#include <vector>

#include "ecdde/errors.hpp"

namespace ecdde {

/// Parameter tuple of the difference differential equation pair
///
///   u q'(u)    =  sum_{j=0}^m alpha_j q(u + v_j)     (advanced)
///   (u p(u))'  = -sum_{j=0}^m alpha_j p(u - v_j)     (retarded)
///
/// together with the derived quantities used throughout:
///   beta = sum_j alpha_j,  a = 1 + alpha_0,  b = (alpha_1..alpha_m),
///   c0 = prod_{j>=1} (v_j e^gamma)^{-alpha_j}.
///
/// Immutable after construction; safe to share across threads.
struct DdeParams {
  std::vector<double> shifts;    ///< v_0 = 0 < v_1 < ... < v_m
  std::vector<Complex> alphas;   ///< alpha_0 .. alpha_m
  Complex beta{};
  Complex a{};
  Complex c0{};

  int m() const { return int(shifts.size()) - 1; }
  double v_max() const { return shifts.back(); }
  /// The coefficient vector b = (alpha_1, ..., alpha_m).
  std::span<const Complex> b() const {
    return std::span<const Complex>(alphas).subspan(1);
  }
};

/// Validates and derives a DdeParams from raw lists.  Requirements:
/// equal lengths m+1 with m >= 1, shifts strictly increasing from 0,
/// alpha_j != 0 for j >= 1.
DdeParams make_params(std::vector<Complex> alphas, std::vector<double> shifts);

/// Named parameter sets.
struct Preset {
  enum class Name { dickman, buchstab, iwaniec, q1 };
  Name name = Name::dickman;
  double kappa = 1.0;  ///< used by iwaniec only; must be > 0
};

/// dickman  -> alphas = (-1, 1),        shifts = (0, 1)
/// buchstab -> alphas = (0, -1),        shifts = (0, 1)
/// iwaniec  -> alphas = (kappa-1, -kappa), shifts = (0, 1)
/// q1       -> iwaniec(1)
DdeParams preset(const Preset& p);
DdeParams preset(const std::string& name, double kappa = 1.0);

/// JSON object {"alphas":[[re,im],...],"shifts":[...]}.
std::string to_json_string(const DdeParams& params);
DdeParams params_from_json_string(const std::string& text);

}  // namespace ecdde

#endif  // ECDDE_PARAMS_HPP
