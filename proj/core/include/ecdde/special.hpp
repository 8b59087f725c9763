#ifndef ECDDE_SPECIAL_HPP
#define ECDDE_SPECIAL_HPP

#include <vector>

#include "ecdde/errors.hpp"

namespace ecdde {

/// Euler's constant.
inline constexpr double kEulerGamma = 0.5772156649015328606065120900824024;

/// Integers are detected up to this absolute tolerance throughout the
/// library (beta dispatch, gamma poles, coefficient vanishing).
inline constexpr double kIntegerTol = 1e-9;

/// True when z is within kIntegerTol of the integer *n_out.
bool near_integer(Complex z, long long* n_out = nullptr);

/// Ein(z) = sum_{k>=1} (-1)^{k+1} z^k / (k k!), the entire exponential
/// integral; equals gamma + log z + E1(z) off the cut.  Throws OverflowError
/// when the result magnitude exceeds the double range.
Complex ein(Complex z);

/// Complex Gamma via the Lanczos approximation with reflection for
/// Re z < 0.5.  Throws PoleError at non-positive integers.
Complex gamma_c(Complex z);

/// 1/Gamma(z), entire; returns exactly 0 when z is within kIntegerTol of a
/// non-positive integer.
Complex inv_gamma(Complex z);

/// Generalized binomial coefficient binom(top, n) = top(top-1)...(top-n+1)/n!
/// as a falling-factorial product; exact zeros for integer top in [0, n).
Complex binom_c(Complex top, int n);

struct DdeParams;  // defined in params.hpp

/// Taylor coefficients b_0..b_N of exp(g(z)) about z = 0, stored as
/// coeffs[k] = (d/dz)^k exp(g) / k!.
struct PowerSeriesCoeffs {
  std::vector<Complex> coeffs;
  int order = 0;

  /// Q_n = n! * b_n.
  Complex qn(int n) const;
};

/// Coefficients of exp{u z - sign * sum_j alpha_j sum_{k>=1} v_j^k z^k/(k k!)}
/// via the exp-of-power-series recurrence n b_n = sum_{k=1}^n k a_k b_{n-k}.
/// sign=+1 gives the Q_n(u, b) generating function, sign=-1 negates each
/// alpha_j (j >= 1), giving Q_n(u, -b).
PowerSeriesCoeffs qn_coeffs(const DdeParams& params, double u, int n_max,
                            int sign);

/// Convenience: Q_n(u, sign*b).
Complex qn_value(const DdeParams& params, double u, int n, int sign);

}  // namespace ecdde

#endif  // ECDDE_SPECIAL_HPP
