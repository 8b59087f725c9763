#ifndef ECDDE_QSTAR_HPP
#define ECDDE_QSTAR_HPP

#include <span>
#include <utility>

#include "ecdde/params.hpp"
#include "ecdde/quadrature.hpp"

namespace ecdde {

enum class Representation { polynomial, laplace, hankel };

const char* to_string(Representation r);

struct QstarValue {
  Complex value{};
  Representation representation_used = Representation::laplace;
  double est_error = 0.0;
};

/// Laplace representation
///   q*(u) = 1/Gamma(-beta) int_0^inf x^{-beta-1}
///           exp{-u x + sum_j alpha_j Ein(v_j x)} dx,
/// valid for Re(beta) < 0.  The x -> 0 endpoint is handled by geometric
/// grading with an analytic stub; truncation X comes from the integrand
/// envelope x^{-Re(alpha_0)-1} e^{-ux} prod (v_j e^gamma)^{Re alpha_j}.
Complex qstar_laplace(const DdeParams& params, double u,
                      const QuadratureConfig& cfg);

/// Hankel-contour representation: circle |z| = rho_c plus the two rays
/// z = x e^{+-i pi}, x in [rho_c, L], with principal z^{-beta-1}.  Valid for
/// beta not an integer (negative integers indeterminate -> laplace,
/// non-negative integers -> polynomial).
Complex qstar_hankel(const DdeParams& params, double u,
                     const QuadratureConfig& cfg);

/// Canonical solution q*(u) with representation dispatch: polynomial
/// Q_n(u, b) when beta is a non-negative integer (within 1e-9), Laplace for
/// Re(beta) < 0, Hankel otherwise.
QstarValue qstar(const DdeParams& params, double u,
                 const QuadratureConfig& cfg);

/// |u q'(u) - sum_j alpha_j q*(u+v_j)| with q' by 5-point central
/// differences at step h.  A property check, not a solver.
double dde_residual(const DdeParams& params, double u, double h,
                    const QuadratureConfig& cfg);

/// A(u) = u q*(u) - sum_j c_j int_{v_{j-1}}^{v_j} q*(u+t) dt with
/// c_j = sum_{i>=j} alpha_i, evaluated on a grid.  Constant exactly when
/// beta = -1; returns (mean, max deviation from the mean).
std::pair<Complex, double> integral_form_constant(
    const DdeParams& params, std::span<const double> u_grid,
    const QuadratureConfig& cfg);

}  // namespace ecdde

#endif  // ECDDE_QSTAR_HPP
