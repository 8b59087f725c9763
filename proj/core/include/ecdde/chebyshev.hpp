#ifndef ECDDE_CHEBYSHEV_HPP
#define ECDDE_CHEBYSHEV_HPP

#include <span>
#include <vector>

#include "ecdde/errors.hpp"

namespace ecdde {

/// Chebyshev series sum_k c_k T_k mapped onto [lo, hi].
struct ChebSeries {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<Complex> coeffs;

  int degree() const { return int(coeffs.size()) - 1; }

  /// Chebyshev-Lobatto nodes of the given degree, ascending in [lo, hi].
  static std::vector<double> nodes(double lo, double hi, int degree);

  /// Interpolant through values at nodes(lo, hi, degree), same ordering.
  static ChebSeries fit(double lo, double hi,
                        std::span<const Complex> values_ascending);

  Complex eval(double x) const;
  ChebSeries derivative() const;

  /// Magnitude of the trailing coefficients; the interpolation-residual
  /// proxy used for panel refinement.
  double tail_estimate() const;

  /// Coefficients of the same polynomial in the monomial basis centered at
  /// `center` (ascending powers of x - center).
  std::vector<Complex> to_monomial(double center) const;
};

}  // namespace ecdde

#endif  // ECDDE_CHEBYSHEV_HPP
