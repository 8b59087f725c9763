#ifndef ECDDE_OSCILLAB_HPP
#define ECDDE_OSCILLAB_HPP

#include <utility>
#include <vector>

#include "ecdde/params.hpp"
#include "ecdde/quadrature.hpp"

namespace ecdde {

/// Piecewise polynomial with monomial coefficients centered at each piece's
/// left endpoint; pieces abut and the degree is constant (the forward
/// extension map is degree-preserving).
struct PiecewisePoly {
  struct Piece {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> coeffs;  ///< ascending powers of (x - lo)
  };
  std::vector<Piece> pieces;
  int degree = 0;

  double support_lo() const { return pieces.front().lo; }
  double support_hi() const { return pieces.back().hi; }
  double eval(double x) const;
  double derivative(double x) const;
};

/// The compatible bump (u-T)^4 (T+1-u)^4 on [T, T+1); vanishes to order 4
/// at both endpoints so the extension is C^1 across junctions.
PiecewisePoly bump_seed(double T);

/// Degree-d least-squares fit of q*(u) for these parameters on [T, T+1].
/// Returns the seed and the maximum fit residual measured on a fine grid.
std::pair<PiecewisePoly, double> fit_qstar_seed(const DdeParams& params,
                                                double T, int degree,
                                                const QuadratureConfig& cfg);

/// Exact forward extension of (u q(u))' = kappa q(u) - kappa q(u+1):
/// each step maps the last unit window [t, t+1) to [t+1, t+2) by
/// q(u+1) = ((kappa-1) q(u) - u q'(u)) / kappa, piece by piece in exact
/// polynomial arithmetic.  Degree is preserved.
PiecewisePoly forward_extend(double kappa, const PiecewisePoly& seed,
                             int steps);

/// Strict sign alternations of q on [lo, hi]: dense sampling (default 256
/// per unit) refined by bisection at each crossing.
int sign_changes(const PiecewisePoly& q, double lo, double hi,
                 int samples_per_unit = 256);

struct OscillationReport {
  double t0 = 0.0;  ///< left end of the first unit interval
  std::vector<double> max_abs;
  std::vector<int> sign_change_counts;
  std::vector<double> log_max_abs;
  int first_sign_change_interval = -1;  ///< index into the vectors, -1 none
};

/// Per-unit-interval statistics of q on [lo, hi].
OscillationReport analyze_intervals(const PiecewisePoly& q, double lo,
                                    double hi);

/// Integrates the advanced equation backward from data on [T, T+v_m]:
/// (u^{-alpha_0} q)' = u^{-alpha_0-1} sum_{j>=1} alpha_j q(u+v_j), marched
/// down in steps of h (<= v_1) with Chebyshev panels; returns samples at
/// T - k h, k = 0..steps.  The backward direction is well-posed.
std::vector<std::pair<double, Complex>> backward_extend(
    const DdeParams& params, const PiecewisePoly& seed, double h, int steps,
    const QuadratureConfig& cfg);

}  // namespace ecdde

#endif  // ECDDE_OSCILLAB_HPP
