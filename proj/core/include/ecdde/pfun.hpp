#ifndef ECDDE_PFUN_HPP
#define ECDDE_PFUN_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ecdde/chebyshev.hpp"
#include "ecdde/params.hpp"
#include "ecdde/quadrature.hpp"

namespace ecdde {

enum class Side { left, right };

/// Panel-wise representation of p(u, a, b) on (0, U], left-continuous.
/// The first interval (0, v_1] is stored in closed form
/// p(u) = C_0/Gamma(1-a) u^{-a}; everything beyond is a Chebyshev panel.
class PiecewiseSolution {
 public:
  struct Panel {
    double left = 0.0;
    double right = 0.0;
    enum class Kind { closed_form, chebyshev } kind = Kind::chebyshev;
    ChebSeries series;   // kind == chebyshev
    Complex coeff{};     // kind == closed_form: p = coeff * u^{-a}
  };

  /// p(u); 0 for u <= 0, left limit at breakpoints, HorizonError beyond U.
  Complex eval(double u) const { return eval_side(u, Side::left); }
  Complex eval_side(double u, Side side) const;
  /// d/du within a panel (one-sided at panel edges).
  Complex derivative(double u, Side side = Side::left) const;

  const DdeParams& params() const { return params_; }
  double horizon() const { return horizon_; }
  const std::vector<Panel>& panels() const { return panels_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::string& note() const { return note_; }
  /// Index of the panel containing u (left-continuous); -1 for u <= 0.
  int locate(double u, Side side = Side::left) const;

 private:
  friend PiecewiseSolution solve_p(const DdeParams&, double,
                                   const QuadratureConfig&);
  DdeParams params_;
  double horizon_ = 0.0;
  std::vector<Panel> panels_;
  std::vector<double> breakpoints_;
  std::string note_;
};

/// Method-of-steps construction of p(u, a, b) on (0, U] for Re(a) < 1,
/// marching u^a p(u) = u_k^a p(u_k) - int_{u_k}^u t^{a-1} sum_j alpha_j
/// p(t - v_j) dt panel by panel.  Panels never exceed v_1 in length, split
/// at every breakpoint of the shift semigroup, and are bisected until the
/// interpolation residual passes cfg.rel_tol.
PiecewiseSolution solve_p(const DdeParams& params, double U,
                          const QuadratureConfig& cfg);

/// p(u, a, b) via n_lift applications of
/// p(u, a+1, b) = -(a/u) p(u, a, b) - (1/u) sum_j alpha_j p(u - v_j, a, b),
/// where `base` solves the parameters with alpha_0 replaced by
/// alpha_0 - n_lift.  Left limits at breakpoints; 0 for u <= 0.
Complex lift_a(const DdeParams& params, double u, int n_lift,
               const PiecewiseSolution& base, Side side = Side::left);

enum class DiscontinuityKind {
  algebraic_blowup,
  bounded_oscillatory,
  finite_jump,
  none
};

/// One candidate discontinuity of p at location n*v_j, classified per the
/// value of a.  predicted_coefficient is the constant of the local law
/// p ~ coeff * (u - n v_j)^{n-a}, u -> n v_j + (zero where the law
/// degenerates).  j == 0 marks the origin entry shared by all shifts.
struct DiscontinuityReport {
  double location = 0.0;
  int n = 0;
  int j = 0;
  DiscontinuityKind kind = DiscontinuityKind::none;
  Complex local_exponent{};
  Complex predicted_coefficient{};
};

/// Candidate discontinuities of p(u, a, b) on (0, U], including u = 0.
/// For integer a the finite-jump candidates may cancel in pairs; measured
/// sizes are the caller's job (see jump_at).
std::vector<DiscontinuityReport> discontinuities(const DdeParams& params,
                                                 double U);

struct LaplaceCheck {
  Complex lhs{};
  Complex rhs{};
  double dev = 0.0;
  double tail_estimate = 0.0;
};

/// Verifies int_0^inf e^{-su} p(u) du = s^beta exp{-sum_j alpha_j
/// Ein(v_j s)} against the panel solution: panel-wise quadrature plus a tail
/// completion from the large-u model of p (r_beta polynomial or asymptotic
/// series).  Requires Re(a) < 1 and Re(s) > 0.
LaplaceCheck p_laplace_check(const DdeParams& params, Complex s,
                             const PiecewiseSolution& sol,
                             const QuadratureConfig& cfg);

/// p(u, a, b) for arbitrary Re(a): solves the base problem with a reduced
/// below 1 and lifts the remaining integer steps by differentiation.
class PFunction {
 public:
  PFunction(const DdeParams& params, double horizon,
            const QuadratureConfig& cfg);

  Complex operator()(double u) const { return eval_side(u, Side::left); }
  Complex eval_side(double u, Side side) const;

  int lifts() const { return n_lift_; }
  const DdeParams& params() const { return params_; }
  const PiecewiseSolution& base() const { return *base_; }
  double horizon() const { return base_->horizon(); }

 private:
  DdeParams params_;
  int n_lift_ = 0;
  std::shared_ptr<const PiecewiseSolution> base_;
};

/// Measured jump p(loc+) - p(loc-).
Complex jump_at(const PFunction& p, double location);

}  // namespace ecdde

#endif  // ECDDE_PFUN_HPP
