#include "ecdde/pfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ecdde/asym.hpp"
#include "ecdde/special.hpp"

namespace ecdde {

namespace {

constexpr int kPanelDegree = 16;
// Exact-coincidence tolerance for breakpoint/source matching; anything
// further away is steep but smooth and plain quadrature handles it.
constexpr double kPointTol = 1e-12;

Complex cpow(double u, Complex e) {
  // u^e for u > 0, principal log.
  return std::exp(e * std::log(u));
}

// Breakpoints of p on [0, U]: the shift semigroup up to generation depth g
// plus every pure multiple n*v_j (the discontinuity candidates).
std::vector<double> make_breakpoints(const DdeParams& params, double U,
                                     int depth) {
  std::vector<double> pts{0.0};
  std::vector<double> frontier{0.0};
  const int m = params.m();
  bool truncated = false;
  for (int gen = 0; gen < depth && !frontier.empty(); ++gen) {
    std::vector<double> next;
    for (double x : frontier)
      for (int j = 1; j <= m; ++j) {
        double y = x + params.shifts[size_t(j)];
        if (y <= U + 1e-12) next.push_back(y);
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end(),
                           [](double a, double b) {
                             return std::abs(a - b) <= 1e-12 * (1.0 + b);
                           }),
               next.end());
    pts.insert(pts.end(), next.begin(), next.end());
    frontier = std::move(next);
    if (pts.size() > 10000) {
      truncated = true;
      break;
    }
  }
  for (int j = 1; j <= m; ++j) {
    double v = params.shifts[size_t(j)];
    for (int n = 1; n * v <= U + 1e-12; ++n) pts.push_back(n * v);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) {
                          return std::abs(a - b) <= 1e-12 * (1.0 + b);
                        }),
            pts.end());
  if (truncated || pts.size() > 10000) {
    pts.resize(10000);
    std::fprintf(stderr,
                 "ecdde warning: breakpoint semigroup truncated to 10000 "
                 "points on [0,%g]\n",
                 U);
  }
  return pts;
}

// Pure multiples n*v_j carry the local behavior (u - n v_j)^{n-a}; the map
// records the lowest-Re exponent per point for singular-integrand handling.
struct SingularSources {
  std::vector<double> points;
  std::vector<Complex> exponents;

  bool lookup(double x, Complex* e) const {
    for (size_t i = 0; i < points.size(); ++i)
      if (std::abs(x - points[i]) <= kPointTol * (1.0 + std::abs(x))) {
        *e = exponents[i];
        return true;
      }
    return false;
  }
};

SingularSources make_sources(const DdeParams& params, double U) {
  SingularSources s;
  const int m = params.m();
  const int n_max = 3;
  for (int n = 0; n <= n_max; ++n)
    for (int j = 1; j <= m; ++j) {
      double pt = n == 0 ? 0.0 : n * params.shifts[size_t(j)];
      if (pt > U) continue;
      Complex e = double(n) - params.a;
      bool found = false;
      for (size_t i = 0; i < s.points.size(); ++i)
        if (std::abs(pt - s.points[i]) <= kPointTol * (1.0 + pt)) {
          if (std::real(e) < std::real(s.exponents[i])) s.exponents[i] = e;
          found = true;
          break;
        }
      if (!found) {
        s.points.push_back(pt);
        s.exponents.push_back(e);
      }
      if (n == 0) break;  // origin entry once
    }
  return s;
}

class Marcher {
 public:
  Marcher(const DdeParams& params, double U, const QuadratureConfig& cfg,
          const PiecewiseSolution& sol,
          std::vector<PiecewiseSolution::Panel>& panels)
      : params_(params),
        sol_(sol),
        panels_(panels),
        a_(params.a),
        v1_(params.shifts[1]),
        sources_(make_sources(params, U)) {
    seg_abs_ = std::max(cfg.abs_tol * 1e-3, 1e-15);
    seg_rel_ = std::max(cfg.rel_tol * 1e-3, 1e-14);
    interp_tol_ = std::max(cfg.rel_tol * 1e-2, 1e-12);
  }

  // sum over panels already built; the closed form covers (0, v1].
  Complex eval_built(double x) const { return sol_.eval(x); }

  // Integrand of the marching integral.
  Complex forcing(double t) const {
    Complex s = 0.0;
    for (int j = 1; j <= params_.m(); ++j)
      s += params_.alphas[size_t(j)] * eval_built(t - params_.shifts[size_t(j)]);
    return cpow(t, a_ - 1.0) * s;
  }

  Complex seg_integral(double x0, double x1, bool panel_start) {
    auto f = [this](double t) { return forcing(t); };
    if (panel_start) {
      // Does some shifted argument land exactly on a singular source?
      Complex worst{1e9, 0.0};
      bool hit = false;
      for (int j = 1; j <= params_.m(); ++j) {
        Complex e;
        if (sources_.lookup(x0 - params_.shifts[size_t(j)], &e) &&
            std::real(e) < std::real(worst)) {
          worst = e;
          hit = true;
        }
      }
      long long dummy = 0;
      if (hit && std::real(worst) < 0.5 && !near_integer(worst, &dummy) &&
          std::real(worst) > -1.0) {
        QuadResult r = integrate_singular_left(f, x0, x1, worst, seg_abs_,
                                               seg_rel_, 400);
        return r.value;
      }
    }
    QuadResult r = integrate(f, x0, x1, seg_abs_, seg_rel_, 400);
    return r.value;
  }

  // Builds panels on [l, r] starting from w_l = l^a p(l); returns w(r).
  Complex build(double l, double r, Complex w_l, int depth) {
    auto nodes = ChebSeries::nodes(l, r, kPanelDegree);
    std::vector<Complex> w(nodes.size());
    w[0] = w_l;
    for (size_t k = 1; k < nodes.size(); ++k)
      w[k] = w[k - 1] - seg_integral(nodes[k - 1], nodes[k], k == 1);
    std::vector<Complex> vals(nodes.size());
    double scale = 0.0;
    for (size_t k = 0; k < nodes.size(); ++k) {
      vals[k] = cpow(nodes[k], -a_) * w[k];
      scale = std::max(scale, std::abs(vals[k]));
    }
    ChebSeries series = ChebSeries::fit(l, r, vals);
    const double len = r - l;
    // Below ~1e-8 the panel nodes approach the double resolution of the
    // kink anchor and bisection stops paying: the marching integrals stay
    // accurate through the anchored singular quadrature, and the residual
    // interpolation error is confined to the sliver itself.
    const double floor_len = std::max(4e-16 * (std::abs(l) + 1.0), 1e-8);
    if (series.tail_estimate() > interp_tol_ * std::max(scale, 1e-6) &&
        len > floor_len && depth < 60) {
      double mid = 0.5 * (l + r);
      Complex w_mid = build(l, mid, w_l, depth + 1);
      return build(mid, r, w_mid, depth + 1);
    }
    PiecewiseSolution::Panel panel;
    panel.left = l;
    panel.right = r;
    panel.kind = PiecewiseSolution::Panel::Kind::chebyshev;
    panel.series = std::move(series);
    panels_.push_back(std::move(panel));
    return w.back();
  }

 private:
  const DdeParams& params_;
  const PiecewiseSolution& sol_;
  std::vector<PiecewiseSolution::Panel>& panels_;
  Complex a_;
  double v1_;
  SingularSources sources_;
  double seg_abs_ = 0.0, seg_rel_ = 0.0, interp_tol_ = 0.0;
};

}  // namespace

Complex PiecewiseSolution::eval_side(double u, Side side) const {
  if (u < 0.0) return Complex(0.0);
  if (u == 0.0) {
    if (side == Side::left) return Complex(0.0);
    // Right limit at 0 from the closed form coeff * u^{-a}.
    Complex a = params_.a;
    if (std::abs(a) <= kIntegerTol) return panels_.front().coeff;
    if (std::real(a) > 0.0)
      throw DomainError("p(0+) is unbounded for Re(a) > 0");
    return Complex(0.0);
  }
  if (u > horizon_ * (1.0 + 1e-14) + 1e-300)
    throw HorizonError("PiecewiseSolution: evaluation beyond horizon U=" +
                           std::to_string(horizon_),
                       u);
  int idx = locate(u, side);
  if (idx < 0) return Complex(0.0);
  const Panel& p = panels_[size_t(idx)];
  if (p.kind == Panel::Kind::closed_form) return p.coeff * cpow(u, -params_.a);
  return p.series.eval(std::clamp(u, p.left, p.right));
}

Complex PiecewiseSolution::derivative(double u, Side side) const {
  int idx = locate(u, side);
  if (idx < 0) return Complex(0.0);
  const Panel& p = panels_[size_t(idx)];
  if (p.kind == Panel::Kind::closed_form)
    return -params_.a * p.coeff * cpow(u, -params_.a - 1.0);
  return p.series.derivative().eval(std::clamp(u, p.left, p.right));
}

int PiecewiseSolution::locate(double u, Side side) const {
  if (u <= 0.0 || panels_.empty()) return -1;
  // Panels tile (0, U]; locate by right edge.
  size_t lo = 0, hi = panels_.size();
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    bool before =
        (side == Side::left) ? (panels_[mid].right < u) : (panels_[mid].right <= u);
    if (before)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo >= panels_.size()) lo = panels_.size() - 1;
  return int(lo);
}

PiecewiseSolution solve_p(const DdeParams& params, double U,
                          const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(U > 0.0)) throw ValidationError("solve_p: U must be > 0");
  if (!(std::real(params.a) < 1.0))
    throw RepresentationError(
        "solve_p: Re(a) >= 1; solve the base problem with alpha_0 reduced "
        "and apply lift_a");
  PiecewiseSolution sol;
  sol.params_ = params;
  sol.horizon_ = U;
  const double v1 = params.shifts[1];
  Complex coeff = params.c0 * inv_gamma(1.0 - params.a);

  PiecewiseSolution::Panel first;
  first.left = 0.0;
  first.right = std::min(v1, U);
  first.kind = PiecewiseSolution::Panel::Kind::closed_form;
  first.coeff = coeff;
  sol.panels_.push_back(first);
  sol.breakpoints_ = make_breakpoints(params, U,
                                      std::max(3, int(std::ceil(std::real(params.a))) + 2));
  if (U <= v1) {
    sol.note_ =
        "horizon does not exceed v_1; the closed-form initial interval is "
        "the whole solution";
    return sol;
  }

  Marcher marcher(params, U, cfg, sol, sol.panels_);
  // w = u^a p(u) is constant (= C0/Gamma(1-a)) on (0, v1].
  Complex w = coeff;
  std::vector<double> stops;
  for (double b : sol.breakpoints_)
    if (b > v1 + 1e-12 && b < U - 1e-12) stops.push_back(b);
  stops.push_back(U);
  double left = v1;
  for (double stop : stops) {
    double len = stop - left;
    int chunks = std::max(1, int(std::ceil(len / v1 - 1e-12)));
    for (int c = 0; c < chunks; ++c) {
      double l = left + len * double(c) / chunks;
      double r = (c == chunks - 1) ? stop : left + len * double(c + 1) / chunks;
      w = marcher.build(l, r, w, 0);
    }
    left = stop;
  }
  return sol;
}

namespace {

Complex lift_eval(const PiecewiseSolution& base, int k, double u, Side side) {
  if (u < 0.0 || (u == 0.0 && side == Side::left)) return Complex(0.0);
  if (u <= 0.0 && k > 0) return Complex(0.0);
  if (k == 0) return base.eval_side(u, side);
  const DdeParams& P = base.params();
  Complex a_prev = P.a + Complex(double(k - 1));
  Complex s = a_prev * lift_eval(base, k - 1, u, side);
  for (int j = 1; j <= P.m(); ++j)
    s += P.alphas[size_t(j)] *
         lift_eval(base, k - 1, u - P.shifts[size_t(j)], side);
  return -s / u;
}

}  // namespace

Complex lift_a(const DdeParams& params, double u, int n_lift,
               const PiecewiseSolution& base, Side side) {
  if (n_lift < 0) throw ValidationError("lift_a: n_lift must be >= 0");
  const DdeParams& bp = base.params();
  if (bp.shifts.size() != params.shifts.size())
    throw ValidationError("lift_a: base solves different shifts");
  for (size_t j = 0; j < params.shifts.size(); ++j) {
    if (std::abs(bp.shifts[j] - params.shifts[j]) > 1e-12)
      throw ValidationError("lift_a: base solves different shifts");
    if (j >= 1 && std::abs(bp.alphas[j] - params.alphas[j]) > 1e-12)
      throw ValidationError("lift_a: base solves different alpha_j (j >= 1)");
  }
  if (std::abs(bp.alphas[0] - (params.alphas[0] - double(n_lift))) > 1e-9)
    throw ValidationError(
        "lift_a: base must solve alpha_0 reduced by exactly n_lift");
  if (u <= 0.0 && side == Side::left) return Complex(0.0);
  if (u > base.horizon() * (1.0 + 1e-14))
    throw HorizonError("lift_a: base horizon too short", u);
  return lift_eval(base, n_lift, u, side);
}

std::vector<DiscontinuityReport> discontinuities(const DdeParams& params,
                                                 double U) {
  if (!(U > 0.0)) throw ValidationError("discontinuities: U must be > 0");
  std::vector<DiscontinuityReport> out;
  const Complex a = params.a;
  const double ra = std::real(a);
  const int m = params.m();
  long long a_int = 0;
  const bool a_is_integer = near_integer(a, &a_int);
  const bool re_a_integer = std::abs(ra - std::llround(ra)) <= kIntegerTol;

  auto coeff = [&](int n, int j) -> Complex {
    // (-alpha_j)^n C0 / (n! v_j^n Gamma(n - a + 1)).
    Complex num = std::pow(-params.alphas[size_t(j)], n) * params.c0;
    double nfact = 1.0;
    for (int k = 2; k <= n; ++k) nfact *= double(k);
    double vpow = std::pow(params.shifts[size_t(j)], n);
    return num / (nfact * vpow) * inv_gamma(double(n) - a + 1.0);
  };

  auto origin_report = [&](DiscontinuityKind kind) {
    DiscontinuityReport r;
    r.location = 0.0;
    r.n = 0;
    r.j = 0;
    r.kind = kind;
    r.local_exponent = -a;
    r.predicted_coefficient = params.c0 * inv_gamma(1.0 - a);
    return r;
  };

  if (a_is_integer && a_int == 0) {
    // p(u, 0, b): a single finite jump at 0 of size C0.
    DiscontinuityReport r = origin_report(DiscontinuityKind::finite_jump);
    r.predicted_coefficient = params.c0;
    out.push_back(r);
    return out;
  }
  if (a_is_integer && a_int > 0) {
    // Finite-jump candidates at n v_j, 1 <= n <= a; cancellation possible
    // for m >= 2.
    for (int n = 1; n <= int(a_int); ++n)
      for (int j = 1; j <= m; ++j) {
        double loc = n * params.shifts[size_t(j)];
        if (loc > U) continue;
        DiscontinuityReport r;
        r.location = loc;
        r.n = n;
        r.j = j;
        r.kind = DiscontinuityKind::finite_jump;
        r.local_exponent = double(n) - a;
        r.predicted_coefficient = coeff(n, j);
        out.push_back(r);
      }
  } else if (a_is_integer && a_int < 0) {
    // a a negative integer: p is continuous on the whole line.
  } else if (!re_a_integer) {
    // Blow-ups at n v_j for 0 <= n < Re(a).
    if (ra > 0.0) {
      out.push_back(origin_report(DiscontinuityKind::algebraic_blowup));
      for (int n = 1; n < ra; ++n)
        for (int j = 1; j <= m; ++j) {
          double loc = n * params.shifts[size_t(j)];
          if (loc > U) continue;
          DiscontinuityReport r;
          r.location = loc;
          r.n = n;
          r.j = j;
          r.kind = DiscontinuityKind::algebraic_blowup;
          r.local_exponent = double(n) - a;
          r.predicted_coefficient = coeff(n, j);
          out.push_back(r);
        }
    }
  } else {
    // Re(a) a non-negative integer but a itself non-real: blow-ups below
    // Re(a), bounded oscillation at n = Re(a).
    long long n_top = std::llround(ra);
    if (n_top >= 0) {
      out.push_back(origin_report(n_top == 0
                                      ? DiscontinuityKind::bounded_oscillatory
                                      : DiscontinuityKind::algebraic_blowup));
      for (int n = 1; n <= int(n_top); ++n)
        for (int j = 1; j <= m; ++j) {
          double loc = n * params.shifts[size_t(j)];
          if (loc > U) continue;
          DiscontinuityReport r;
          r.location = loc;
          r.n = n;
          r.j = j;
          r.kind = (n == int(n_top)) ? DiscontinuityKind::bounded_oscillatory
                                     : DiscontinuityKind::algebraic_blowup;
          r.local_exponent = double(n) - a;
          r.predicted_coefficient = coeff(n, j);
          out.push_back(r);
        }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const DiscontinuityReport& x, const DiscontinuityReport& y) {
              return x.location < y.location ||
                     (x.location == y.location && x.n < y.n);
            });
  return out;
}

namespace {

// int_U^inf u^k e^{-su} du = e^{-sU} k! sum_{i=0}^k U^i / (i! s^{k-i+1}).
Complex poly_tail(const std::vector<Complex>& poly, Complex s, double U) {
  Complex total = 0.0;
  for (size_t k = 0; k < poly.size(); ++k) {
    Complex sum = 0.0;
    double ifact = 1.0;
    double kfact = 1.0;
    for (size_t i = 1; i <= k; ++i) kfact *= double(i);
    double upow = 1.0;
    for (size_t i = 0; i <= k; ++i) {
      if (i > 0) {
        ifact *= double(i);
        upow *= U;
      }
      sum += upow / ifact * std::pow(s, -Complex(double(k - i + 1)));
    }
    total += poly[k] * kfact * sum;
  }
  return std::exp(-s * U) * total;
}

}  // namespace

LaplaceCheck p_laplace_check(const DdeParams& params, Complex s,
                             const PiecewiseSolution& sol,
                             const QuadratureConfig& cfg) {
  if (!(std::real(s) > 0.0))
    throw ValidationError("p_laplace_check: Re(s) must be > 0");
  if (!(std::real(params.a) < 1.0))
    throw DomainError("p_laplace_check: requires Re(a) < 1");
  const double U = sol.horizon();

  Complex lhs = 0.0;
  for (const auto& panel : sol.panels()) {
    if (panel.kind == PiecewiseSolution::Panel::Kind::closed_form) {
      auto f = [&](double u) {
        return std::exp(-s * u) * panel.coeff * cpow(u, -params.a);
      };
      QuadResult r;
      if (std::abs(params.a) <= kIntegerTol)
        r = integrate(f, panel.left, panel.right, cfg.abs_tol * 0.05,
                      cfg.rel_tol, cfg.max_subdivisions);
      else
        r = integrate_singular_left(f, panel.left, panel.right, -params.a,
                                    cfg.abs_tol * 0.05, cfg.rel_tol,
                                    cfg.max_subdivisions);
      lhs += r.value;
    } else {
      auto f = [&](double u) { return std::exp(-s * u) * panel.series.eval(u); };
      QuadResult r = integrate(f, panel.left, panel.right, cfg.abs_tol * 0.05,
                               cfg.rel_tol, 256);
      lhs += r.value;
    }
  }

  // Tail completion beyond the horizon from the large-u model of p.
  const double rs = std::real(s);
  Complex tail = 0.0;
  double tail_uncertainty = 0.0;
  Complex p_end = sol.eval(U);
  long long bi = 0;
  if (near_integer(params.beta, &bi) && bi >= 0) {
    // Superexponential decay; the tail is below |p(U)| e^{-Re(s) U}/Re(s).
    tail_uncertainty = std::abs(p_end) * std::exp(-rs * U) / rs;
  } else if (near_integer(params.beta, &bi) && bi < 0) {
    std::vector<Complex> poly = r_beta_poly(params);
    tail = poly_tail(poly, s, U);
    Complex model_end = 0.0;
    double upow = 1.0;
    for (size_t k = 0; k < poly.size(); ++k, upow *= U)
      model_end += poly[k] * upow;
    tail_uncertainty = std::abs(p_end - model_end) * std::exp(-rs * U) / rs;
  } else {
    // Explicit-coefficient expansion of p itself (c_0 = 1/Gamma(-beta)).
    AsymptoticSeries series = p_series(params, 4);
    double window = 46.0 / rs;
    auto f = [&](double u) { return std::exp(-s * u) * series.partial_sum(u); };
    QuadResult r = integrate(f, U, U + window, cfg.abs_tol * 0.1, cfg.rel_tol,
                             cfg.max_subdivisions);
    tail = r.value;
    Complex model_end = series.partial_sum(U);
    tail_uncertainty = std::abs(p_end - model_end) * std::exp(-rs * U) / rs +
                       std::abs(series.term(U, 3)) * std::exp(-rs * U) / rs;
  }
  if (tail_uncertainty > cfg.abs_tol) {
    double required = U + std::log(tail_uncertainty / cfg.abs_tol) / rs + 2.0;
    throw HorizonError(
        "p_laplace_check: horizon too short for the requested tolerance",
        required);
  }
  lhs += tail;

  Complex rhs_exp = params.beta * std::log(s);
  for (int j = 1; j <= params.m(); ++j)
    rhs_exp -= params.alphas[size_t(j)] * ein(params.shifts[size_t(j)] * s);
  Complex rhs = std::exp(rhs_exp);

  LaplaceCheck out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.dev = std::abs(lhs - rhs);
  out.tail_estimate = std::abs(tail) + tail_uncertainty;
  return out;
}

PFunction::PFunction(const DdeParams& params, double horizon,
                     const QuadratureConfig& cfg)
    : params_(params) {
  const double ra = std::real(params.a);
  n_lift_ = ra < 1.0 ? 0 : int(std::floor(ra));
  DdeParams base_params = params;
  if (n_lift_ > 0) {
    std::vector<Complex> alphas = params.alphas;
    alphas[0] -= double(n_lift_);
    base_params = make_params(std::move(alphas), params.shifts);
  }
  base_ = std::make_shared<PiecewiseSolution>(
      solve_p(base_params, horizon, cfg));
}

Complex PFunction::eval_side(double u, Side side) const {
  if (n_lift_ == 0) return base_->eval_side(u, side);
  return lift_a(params_, u, n_lift_, *base_, side);
}

Complex jump_at(const PFunction& p, double location) {
  return p.eval_side(location, Side::right) -
         p.eval_side(location, Side::left);
}

}  // namespace ecdde
