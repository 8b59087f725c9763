#ifndef ECDDE_ASYM_HPP
#define ECDDE_ASYM_HPP

#include <vector>

#include "ecdde/params.hpp"

namespace ecdde {

/// Large-u expansion of p(u, a, b) scaled by Gamma(-beta):
/// p_hat(u) ~ sum_n c_n u^{-beta-1-n} with
/// c_n = (-1)^n/n! Q_n(0,-b) / Gamma(-beta-n).
/// For integer beta every c_n with beta >= -n vanishes exactly and the
/// remainder is O(exp(-phi(u))), phi(u) = (u log u)/v_m + O(u).
struct AsymptoticSeries {
  std::vector<Complex> coefficients;  ///< c_0 .. c_{N-1}
  Complex beta{};
  int truncation = 0;                 ///< N
  bool superexponential = false;      ///< beta is an integer
  double v_max = 1.0;

  /// c_n u^{-beta-1-n}.
  Complex term(double u, int n) const;
  /// sum_{n < N} of term(u, n); N defaults to the stored truncation.
  Complex partial_sum(double u, int n_terms = -1) const;
  /// Leading decay exponent (u log u)/v_m of the remainder model.
  double phi(double u) const;
};

/// First N coefficients of the large-u expansion of p.
AsymptoticSeries p_series(const DdeParams& params, int N);

/// The exact polynomial limit of p for negative-integer beta, ascending
/// powers of u, degree -beta-1.
std::vector<Complex> r_beta_poly(const DdeParams& params);

/// Partial sum sum_{n<N} binom(beta, n) Q_n(0, b) u^{beta-n} of the
/// advanced-side expansion q(u) ~ u^beta (1 + ...).
Complex q_series_inf(const DdeParams& params, double u, int N);

/// Single term binom(beta, n) Q_n(0, b) u^{beta-n}.
Complex q_series_term(const DdeParams& params, double u, int n);

struct ZeroAsym {
  Complex exponent{};     ///< alpha_0
  Complex coefficient{};  ///< Gamma(-alpha_0)/Gamma(-beta) prod (v_j e^g)^{a_j}
};

/// u -> 0+ law q(u) ~ coefficient * u^{alpha_0}; valid only for
/// Re(alpha_0) < 0 (DomainError otherwise).
ZeroAsym q_zero_asym(const DdeParams& params);

}  // namespace ecdde

#endif  // ECDDE_ASYM_HPP
