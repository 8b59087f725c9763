#ifndef ECDDE_ADJOINT_HPP
#define ECDDE_ADJOINT_HPP

#include <span>
#include <vector>

#include "ecdde/params.hpp"
#include "ecdde/quadrature.hpp"

namespace ecdde {

/// Result of probing the adjoint relation
///   u p(u) q(u) = A + sum_j alpha_j int_{u-v_j}^u p(t) q(t+v_j) dt
/// on a grid, with p = Gamma(-beta) p(u,a,b) and q = q* (or the raw p
/// paired with q* under the normalization bypass).
struct AdjointReport {
  std::vector<double> grid;
  std::vector<Complex> A_estimates;
  Complex A_mean{};  ///< componentwise median, robust to one bad cell
  double max_dev = 0.0;
  bool bypassed_normalization = false;
};

/// Estimates the adjoint constant on a grid (all entries > v_m).  Throws
/// NormalizationError for beta a non-negative integer unless
/// bypass_normalization is set, in which case the raw p(u,a,b) is used.
AdjointReport adjoint_constant(const DdeParams& params,
                               std::span<const double> u_grid,
                               const QuadratureConfig& cfg,
                               bool bypass_normalization = false);

struct UpqLimits {
  Complex limit_zero{};  ///< exactly 1 when covered
  bool zero_covered = false;
  Complex limit_inf{};             ///< u p(u) q(u) at u = u_large
  Complex limit_inf_richardson{};  ///< 2 f(U) - f(U/2), 1/u error model
  double u_large = 0.0;
};

/// The two normalization limits lim u p(u) q(u) at 0+ and +infinity.  The
/// zero limit is symbolic (the boundary coefficients cancel identically)
/// and requires Re(alpha_0) < 0; otherwise zero_covered is false.
UpqLimits upq_limits(const DdeParams& params, const QuadratureConfig& cfg,
                     double u_large = 60.0);

}  // namespace ecdde

#endif  // ECDDE_ADJOINT_HPP
