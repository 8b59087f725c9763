#include "ecdde/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ecdde/adjoint.hpp"
#include "ecdde/asym.hpp"
#include "ecdde/oscillab.hpp"
#include "ecdde/params.hpp"
#include "ecdde/pfun.hpp"
#include "ecdde/qstar.hpp"
#include "ecdde/special.hpp"

namespace ecdde {

namespace {

constexpr double kExpGamma = 1.7810724179901980;
constexpr double kInvExpGamma = 0.5614594835668852;

QuadratureConfig acc_cfg() {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-11;
  cfg.rel_tol = 1e-10;
  return cfg;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const auto t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

struct Timer {
  double start = now_seconds();
  double elapsed() const { return now_seconds() - start; }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

// Fine-mesh trapezoid marching oracle for the Dickman rho, h fixed.
double rho_oracle(double target, double h) {
  int per_unit = int(std::lround(1.0 / h));
  int n = int(std::lround((target - 1.0) / h));
  std::vector<double> rho(size_t(n) + 1), f(size_t(n) + 1);
  auto rho_at = [&](int idx) { return idx <= 0 ? 1.0 : rho[size_t(idx)]; };
  rho[0] = 1.0;
  f[0] = -1.0;
  for (int k = 1; k <= n; ++k) {
    double u = 1.0 + k * h;
    double fk = -rho_at(k - per_unit) / u;
    rho[size_t(k)] = rho[size_t(k - 1)] + 0.5 * h * (f[size_t(k - 1)] + fk);
    f[size_t(k)] = fk;
  }
  return rho[size_t(n)];
}

CheckResult check_1_dickman_closed_form() {
  Timer t;
  QuadratureConfig cfg = acc_cfg();
  PiecewiseSolution sol = solve_p(preset("dickman"), 3.0, cfg);
  double measured = std::abs(kExpGamma * sol.eval(2.0).real() -
                             0.30685281944005469);
  CheckResult r;
  r.criterion = 1;
  r.name = "dickman_closed_form";
  r.seconds = t.elapsed();
  r.pass = measured <= 1e-8 && r.seconds < 1.0;
  r.detail = "|e^g p(2) - (1-ln 2)| = " + fmt(measured) +
             " (bound 1e-8), t = " + fmt(r.seconds) + "s (< 1s)";
  return r;
}

CheckResult check_2_dickman_depth() {
  Timer t;
  QuadratureConfig cfg = acc_cfg();
  PiecewiseSolution sol = solve_p(preset("dickman"), 3.0, cfg);
  double oracle = rho_oracle(3.0, 1e-5);
  double measured = std::abs(kExpGamma * sol.eval(3.0).real() - oracle);
  CheckResult r;
  r.criterion = 2;
  r.name = "dickman_depth_oracle";
  r.seconds = t.elapsed();
  r.pass = measured <= 1e-6 && r.seconds < 5.0;
  r.detail = "|e^g p(3) - oracle| = " + fmt(measured) +
             " (bound 1e-6, oracle " + fmt(oracle) + "), t = " +
             fmt(r.seconds) + "s (< 5s)";
  return r;
}

CheckResult check_3_buchstab() {
  Timer t;
  QuadratureConfig cfg = acc_cfg();
  PFunction p(preset("buchstab"), 12.0, cfg);
  double worst = 0.0;
  for (int i = 1; i <= 32; ++i) {
    double u = 1.0 + double(i) / 32.0;
    worst = std::max(worst,
                     std::abs(p(u).real() / kExpGamma - 1.0 / u));
  }
  double omega_dev = std::abs(kInvExpGamma * p(10.0).real() - kInvExpGamma);
  CheckResult r;
  r.criterion = 3;
  r.name = "buchstab_exact_and_limit";
  r.seconds = t.elapsed();
  r.pass = worst <= 1e-10 && omega_dev <= 1e-6 && r.seconds < 5.0;
  r.detail = "sup |e^{-g} p - 1/u| on (1,2] = " + fmt(worst) +
             " (bound 1e-10); |omega(10) - e^{-g}| = " + fmt(omega_dev) +
             " (bound 1e-6)";
  return r;
}

CheckResult check_4_wheeler_cancellation() {
  Timer t;
  QuadratureConfig cfg = acc_cfg();
  DdeParams w = make_params({Complex(1.0), Complex(1.0), Complex(-2.0)},
                            {0.0, 1.0, 2.0});
  PFunction p(w, 3.5, cfg);
  double jump2 = std::abs(jump_at(p, 2.0));
  double jump1 = std::abs(jump_at(p, 1.0));
  double left = std::abs(p.eval_side(2.0, Side::left) - kExpGamma);
  double right = std::abs(p.eval_side(2.0, Side::right) - kExpGamma);
  CheckResult r;
  r.criterion = 4;
  r.name = "wheeler_cancellation";
  r.seconds = t.elapsed();
  r.pass = jump2 <= 1e-8 && jump1 >= 0.1 && left <= 1e-6 && right <= 1e-6;
  r.detail = "jump(2) = " + fmt(jump2) + " (<= 1e-8), jump(1) = " +
             fmt(jump1) + " (>= 0.1), one-sided limits off e^g by " +
             fmt(std::max(left, right)) + " (<= 1e-6)";
  return r;
}

CheckResult check_5_representation_equivalence() {
  Timer t;
  QuadratureConfig cfg = acc_cfg();
  std::mt19937 rng(752301);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    int m = 1 + int(rng() % 2);
    std::vector<double> shifts{0.0};
    double v = 0.0;
    for (int j = 0; j < m; ++j) {
      v += 0.4 + 1.6 * unif(rng);
      shifts.push_back(v);
    }
    double rb = -1.75 + 0.6 * unif(rng);
    if (std::abs(rb + 1.0) < 0.15) rb += 0.3;
    Complex beta(rb, -0.4 + 0.8 * unif(rng));
    std::vector<Complex> alphas(size_t(m) + 1);
    Complex tail = 0.0;
    for (int j = 1; j <= m; ++j) {
      alphas[size_t(j)] = Complex(-0.3 - 0.7 * unif(rng), 0.5 * unif(rng));
      tail += alphas[size_t(j)];
    }
    alphas[0] = beta - tail;
    DdeParams p = make_params(alphas, shifts);
    for (double u : {1.0, 5.0, 10.0})
      worst = std::max(worst, std::abs(qstar_laplace(p, u, cfg) -
                                       qstar_hankel(p, u, cfg)));
  }
  CheckResult r;
  r.criterion = 5;
  r.name = "representation_equivalence";
  r.seconds = t.elapsed();
  r.pass = worst <= 1e-8 && r.seconds < 30.0;
  r.detail = "max |laplace - hankel| over 10 random sets x u in {1,5,10} = " +
             fmt(worst) + " (bound 1e-8), t = " + fmt(r.seconds) +
             "s (< 30s)";
  return r;
}

CheckResult check_6_dde_residual() {
  Timer t;
  QuadratureConfig cfg = acc_cfg();
  DdeParams poly0 = make_params({Complex(1.0), Complex(-1.0)}, {0.0, 1.0});
  DdeParams poly1 = make_params({Complex(2.0), Complex(-1.0)}, {0.0, 1.0});
  double worst_preset = 0.0, worst_poly = 0.0;
  for (double u : {2.0, 5.0, 10.0}) {
    worst_preset = std::max(
        worst_preset, dde_residual(preset("iwaniec", 1.0), u, 1e-3, cfg));
    worst_preset = std::max(
        worst_preset, dde_residual(preset("iwaniec", 0.5), u, 1e-3, cfg));
    // The stencil is exact for polynomials; h = 1/2 keeps the 1/(12h)
    // rounding amplification below the 1e-12 bound.
    worst_poly = std::max(worst_poly, dde_residual(poly0, u, 0.5, cfg));
    worst_poly = std::max(worst_poly, dde_residual(poly1, u, 0.5, cfg));
  }
  CheckResult r;
  r.criterion = 6;
  r.name = "dde_residual";
  r.seconds = t.elapsed();
  r.pass = worst_preset <= 1e-6 && worst_poly <= 1e-12;
  r.detail = "max preset residual = " + fmt(worst_preset) +
             " (bound 1e-6); max polynomial residual = " + fmt(worst_poly) +
             " (bound 1e-12)";
  return r;
}

CheckResult check_7_laplace_identity() {
  Timer t;
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-8;
  cfg.rel_tol = 1e-8;
  double worst = 0.0;
  for (auto params : {preset("dickman"),
                      make_params({Complex(-1.0), Complex(-1.0)}, {0.0, 1.0})}) {
    PiecewiseSolution sol = solve_p(params, 25.0, cfg);
    for (double s : {0.5, 1.0, 2.0})
      worst = std::max(worst,
                       p_laplace_check(params, Complex(s), sol, cfg).dev);
  }
  CheckResult r;
  r.criterion = 7;
  r.name = "laplace_identity";
  r.seconds = t.elapsed();
  r.pass = worst <= 1e-6;
  r.detail = "max |lhs - rhs| over {dickman, a=0 buchstab-base} x s in "
             "{0.5,1,2}, U=25: " + fmt(worst) + " (bound 1e-6)";
  return r;
}

CheckResult check_8_asymptotic_coefficients(std::vector<CheckResult>* extra) {
  Timer t;
  QuadratureConfig cfg = acc_cfg();
  // p-side at iwaniec(1/2), u = 15, as stated.  beta = -1 for every
  // iwaniec preset, so c_n = 0 exactly for n >= 1 and the stated bound
  // 2|term(N)| degenerates to zero; the measured remainder is the
  // solver's accuracy.  Reported honestly (see the project notes).
  DdeParams h = preset("iwaniec", 0.5);
  PFunction p(h, 15.5, cfg);
  AsymptoticSeries series = p_series(h, 4);
  Complex scale = gamma_c(-h.beta);  // = 1 here
  double u = 15.0;
  Complex p_hat = scale * p(u);
  bool p_side = true;
  std::string p_detail;
  for (int N = 1; N <= 3; ++N) {
    double rem = std::abs(p_hat - scale * series.partial_sum(u, N));
    double bound = 2.0 * std::abs(scale * series.term(u, N));
    p_side = p_side && rem <= bound;
    p_detail += " N=" + std::to_string(N) + ": rem " + fmt(rem) +
                " vs 2|term| " + fmt(bound) + ";";
  }
  // q-side at u = 20.
  double uq = 20.0;
  Complex q = qstar(h, uq, cfg).value;
  double q_rem = std::abs(q - q_series_inf(h, uq, 3));
  double q_bound = 2.0 * std::abs(q_series_term(h, uq, 3));
  bool q_side = q_rem <= q_bound;

  if (extra) {
    // The bracket itself, exercised where the cited expansion is
    // non-degenerate (non-integer beta).
    DdeParams nb = make_params({Complex(-0.5), Complex(-0.75)}, {0.0, 1.0});
    PiecewiseSolution sol = solve_p(nb, 15.5, cfg);
    AsymptoticSeries s2 = p_series(nb, 4);
    bool ok = true;
    for (int N = 1; N <= 3; ++N) {
      double rem = std::abs(sol.eval(u) - s2.partial_sum(u, N));
      ok = ok && rem <= 2.0 * std::abs(s2.term(u, N));
    }
    CheckResult info;
    info.criterion = 8;
    info.name = "asymptotic_bracket_noninteger_beta (informational)";
    info.informational = true;
    info.pass = ok;
    info.detail = "same bracket on alphas=(-0.5,-0.75), beta=-1.25: " +
                  std::string(ok ? "holds" : "violated");
    extra->push_back(info);
  }

  CheckResult r;
  r.criterion = 8;
  r.name = "asymptotic_coefficients";
  r.seconds = t.elapsed();
  r.pass = p_side && q_side;
  r.detail = "p-side (iwaniec(1/2), u=15):" + p_detail +
             " q-side (u=20): rem " + fmt(q_rem) + " vs 2|term(3)| " +
             fmt(q_bound);
  return r;
}

CheckResult check_9_adjoint_constancy() {
  Timer t;
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-9;
  cfg.rel_tol = 1e-9;
  std::vector<double> grid{3.0, 4.0, 5.0, 6.0, 7.0, 8.0};
  double dev1 = adjoint_constant(preset("iwaniec", 1.0), grid, cfg).max_dev;
  double dev2 = adjoint_constant(preset("iwaniec", 0.5), grid, cfg).max_dev;
  UpqLimits limits = upq_limits(preset("iwaniec", 0.5), cfg, 60.0);
  bool zero_ok = limits.zero_covered && limits.limit_zero == Complex(1.0);
  double inf_dev = std::abs(limits.limit_inf - 1.0);
  CheckResult r;
  r.criterion = 9;
  r.name = "adjoint_constancy";
  r.seconds = t.elapsed();
  r.pass = dev1 <= 1e-6 && dev2 <= 1e-6 && zero_ok && inf_dev <= 0.02;
  r.detail = "max_dev(iwaniec(1)) = " + fmt(dev1) + ", max_dev(iwaniec(1/2)) = " +
             fmt(dev2) + " (bounds 1e-6); limit0 = 1 exact: " +
             (zero_ok ? "yes" : "no") + "; |limit_inf - 1| at U=60 = " +
             fmt(inf_dev) + " (bound 0.02)";
  return r;
}

CheckResult check_10_oscillation(std::vector<CheckResult>* extra) {
  Timer t;
  QuadratureConfig cfg = acc_cfg();
  // (a) bump seed, kappa = 1, T = 5, 8 steps.
  PiecewisePoly ext = forward_extend(1.0, bump_seed(5.0), 8);
  OscillationReport rep = analyze_intervals(ext, 6.0, 14.0);
  int k = -1;
  for (int cand = 0; cand < int(rep.max_abs.size()); ++cand) {
    bool ok = true;
    for (int n = cand; n < int(rep.max_abs.size()); ++n) {
      double u_left = 6.0 + double(n);
      ok = ok && rep.sign_change_counts[size_t(n)] >= 1 &&
           rep.max_abs[size_t(n)] >= std::exp(2.0 * u_left);
    }
    if (ok) {
      k = cand;
      break;
    }
  }
  bool bump_ok = k >= 0 && k <= 7;  // interval index k <=> step k+1 <= 8

  // (b) canonical seed: the literal 10x-fit-error tracking bound.
  auto [seed, fit_err] = fit_qstar_seed(preset("iwaniec", 1.0), 5.0, 8, cfg);
  PiecewisePoly cext = forward_extend(1.0, seed, 3);
  double track = 0.0;
  for (double u = 6.0; u <= 9.0; u += 0.0625) {
    double truth = std::real(qstar(preset("iwaniec", 1.0), u, cfg).value);
    track = std::max(track, std::abs(cext.eval(u) - truth));
  }
  bool canonical_ok = track <= 10.0 * fit_err;

  if (extra) {
    CheckResult info;
    info.criterion = 10;
    info.name = "canonical_no_spurious_oscillation (informational)";
    info.informational = true;
    info.pass = sign_changes(cext, 5.0, 9.0) == 0 && track <= 1e-4;
    info.detail = "canonical extension keeps the sign of q* and tracks it "
                  "to " + fmt(track) + " over 3 steps (fit error " +
                  fmt(fit_err) + ", wild-mode amplification ~" +
                  fmt(track / std::max(fit_err, 1e-300)) + "x)";
    extra->push_back(info);
  }

  CheckResult r;
  r.criterion = 10;
  r.name = "oscillation_dichotomy";
  r.seconds = t.elapsed();
  r.pass = bump_ok && canonical_ok;
  r.detail = "bump: sign change + e^{2u} growth from interval k=" +
             std::to_string(k) + " (need k <= 7): " +
             (bump_ok ? "ok" : "FAIL") + "; canonical: max|ext - q*| = " +
             fmt(track) + " vs 10 x fit_err = " + fmt(10.0 * fit_err) + ": " +
             (canonical_ok ? "ok" : "FAIL");
  return r;
}

CheckResult check_11_exponential_inequality() {
  Timer t;
  std::mt19937 rng(20031205);
  std::uniform_real_distribution<double> u_d(1.05, 20.0), r_d(-3.0, 3.0),
      eps_d(0.05, 4.0);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    double u = u_d(rng), rr = r_d(rng);
    double lambda = std::max(rr, 0.0) + eps_d(rng);
    auto f = [&](double x) {
      return Complex(std::exp(lambda * x) * std::pow(x, -rr));
    };
    QuadResult q = integrate(f, 1.0, u, 1e-12, 1e-11, 4000);
    double lhs = std::real(q.value);
    double rhs = std::exp(lambda * u) * std::pow(u, -rr) /
                 (lambda - std::max(rr, 0.0));
    if (!(lhs <= rhs * (1.0 + 1e-9) + 1e-12)) ++violations;
  }
  CheckResult r;
  r.criterion = 11;
  r.name = "exponential_integral_inequality";
  r.seconds = t.elapsed();
  r.pass = violations == 0;
  r.detail = std::to_string(violations) +
             " violations over 100 random (u, r, lambda) triples";
  return r;
}

}  // namespace

std::vector<CheckResult> run_acceptance(int criterion) {
  std::vector<CheckResult> out;
  Timer total;
  auto want = [&](int n) { return criterion == 0 || criterion == n; };
  if (want(1)) out.push_back(check_1_dickman_closed_form());
  if (want(2)) out.push_back(check_2_dickman_depth());
  if (want(3)) out.push_back(check_3_buchstab());
  if (want(4)) out.push_back(check_4_wheeler_cancellation());
  if (want(5)) out.push_back(check_5_representation_equivalence());
  if (want(6)) out.push_back(check_6_dde_residual());
  if (want(7)) out.push_back(check_7_laplace_identity());
  if (want(8)) {
    std::vector<CheckResult> extra;
    out.push_back(check_8_asymptotic_coefficients(&extra));
    out.insert(out.end(), extra.begin(), extra.end());
  }
  if (want(9)) out.push_back(check_9_adjoint_constancy());
  if (want(10)) {
    std::vector<CheckResult> extra;
    out.push_back(check_10_oscillation(&extra));
    out.insert(out.end(), extra.begin(), extra.end());
  }
  if (want(11)) out.push_back(check_11_exponential_inequality());
  if (criterion == 0 || criterion == 12) {
    CheckResult r;
    r.criterion = 12;
    r.name = "suite_runtime";
    if (criterion == 12) {
      // Standalone: run everything quietly to time it.
      std::vector<CheckResult> all = run_acceptance(0);
      r = all.back();
    } else {
      r.seconds = total.elapsed();
      r.pass = r.seconds < 180.0;
      r.detail = "criteria 1-11 completed in " + fmt(r.seconds) +
                 "s (< 180s)";
    }
    out.push_back(r);
  }
  return out;
}

std::string to_json_line(const CheckResult& r) {
  nlohmann::json j;
  j["criterion"] = r.criterion;
  j["name"] = r.name;
  j["pass"] = r.pass;
  if (r.informational) j["informational"] = true;
  j["seconds"] = r.seconds;
  j["detail"] = r.detail;
  return j.dump();
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.informational && !r.pass) return false;
  return true;
}

}  // namespace ecdde
