#ifndef ECDDE_QUADRATURE_HPP
#define ECDDE_QUADRATURE_HPP

#include <functional>

#include "ecdde/errors.hpp"

namespace ecdde {

/// Tolerances and geometry knobs shared by every quadrature-backed operation.
/// Zero means "choose automatically" for the geometric fields.
struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 4000;
  double laplace_cutoff = 0.0;    ///< X: upper truncation of the Laplace integral
  double hankel_radius = 0.0;     ///< rho_c: radius of the contour circle
  double hankel_ray_length = 0.0; ///< L: truncation of the contour rays

  void validate() const;
};

struct QuadResult {
  Complex value{};
  double est_error = 0.0;
  int subdivisions = 0;
  bool converged = true;
};

using Integrand = std::function<Complex(double)>;

/// Globally adaptive Gauss-Kronrod 7/15 on [lo, hi].  Splits the interval
/// with the largest error estimate until sum(err) <= max(abs_tol,
/// rel_tol*|I|) or the subdivision budget runs out.
QuadResult integrate(const Integrand& f, double lo, double hi,
                     double abs_tol, double rel_tol, int max_subdivisions);

QuadResult integrate(const Integrand& f, double lo, double hi,
                     const QuadratureConfig& cfg);

/// Like integrate(), but the integrand behaves as c*(t-lo)^sigma near lo with
/// Re(sigma) > -1.  Panels are graded geometrically (ratio 1/4) toward lo and
/// the innermost stub [lo, lo+delta] is added analytically from the local
/// power law.
QuadResult integrate_singular_left(const Integrand& f, double lo, double hi,
                                   Complex sigma, double abs_tol,
                                   double rel_tol, int max_subdivisions);

/// Throws AccuracyError when the result did not converge.
Complex require_converged(const QuadResult& r, const char* what);

}  // namespace ecdde

#endif  // ECDDE_QUADRATURE_HPP
