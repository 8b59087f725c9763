#include <doctest.h>

#include <cmath>
#include <vector>

#include "ecdde/asym.hpp"
#include "ecdde/params.hpp"
#include "ecdde/pfun.hpp"
#include "ecdde/special.hpp"

using namespace ecdde;

namespace {

constexpr double kExpGamma = 1.7810724179901980;

QuadratureConfig tight() {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-11;
  cfg.rel_tol = 1e-10;
  return cfg;
}

// Fine-mesh trapezoid marching for the Dickman rho: rho' = -rho(u-1)/u,
// rho = 1 on [0, 1]; entirely independent of the panel solver.
double dickman_rho_oracle(double target, double h) {
  int per_unit = int(std::lround(1.0 / h));
  int n = int(std::lround((target - 1.0) / h));
  std::vector<double> rho(size_t(n) + 1);
  std::vector<double> f(size_t(n) + 1);  // rho'(u) at grid points
  auto rho_at = [&](int idx) {  // idx counts h-steps from u = 1
    return idx <= 0 ? 1.0 : rho[size_t(idx)];
  };
  rho[0] = 1.0;
  f[0] = -1.0;  // u = 1+, rho(0+) = 1
  for (int k = 1; k <= n; ++k) {
    double u = 1.0 + k * h;
    double fk = -rho_at(k - per_unit) / u;  // explicit: history only
    rho[size_t(k)] = rho[size_t(k - 1)] + 0.5 * h * (f[size_t(k - 1)] + fk);
    f[size_t(k)] = -rho_at(k - per_unit) / u;
  }
  return rho[size_t(n)];
}

}  // namespace

TEST_SUITE_BEGIN("pfun");

TEST_CASE("dickman closed forms") {
  DdeParams d = preset("dickman");
  PiecewiseSolution sol = solve_p(d, 3.0, tight());
  // e^gamma p = rho; rho(2) = 1 - ln 2.
  CHECK(std::abs(kExpGamma * sol.eval(0.5) - 1.0) < 1e-13);
  CHECK(std::abs(kExpGamma * sol.eval(2.0) - 0.30685281944005469) < 1e-8);
  CHECK(std::abs(kExpGamma * sol.eval(3.0) - 0.048608388291131567) < 1e-8);
}

TEST_CASE("dickman depth against the trapezoid oracle") {
  DdeParams d = preset("dickman");
  PiecewiseSolution sol = solve_p(d, 3.0, tight());
  double oracle = dickman_rho_oracle(3.0, 1e-4);
  CHECK(std::abs(kExpGamma * sol.eval(3.0) - oracle) < 1e-6);
}

TEST_CASE("constant initial interval for a = 0, beta = -2") {
  DdeParams p = make_params({Complex(-1.0), Complex(-1.0)}, {0.0, 1.0});
  PiecewiseSolution sol = solve_p(p, 2.0, tight());
  for (double u : {0.1, 0.6, 1.0})
    CHECK(std::abs(sol.eval(u) - kExpGamma) < 1e-12);
  // p grows toward r_beta(u) = u + 1 afterwards.
  CHECK(std::abs(sol.eval(2.0)) > 1.0);
}

TEST_CASE("solve_p guards") {
  DdeParams b = preset("buchstab");  // a = 1
  CHECK_THROWS_AS(solve_p(b, 5.0, tight()), RepresentationError);
  DdeParams d = preset("dickman");
  PiecewiseSolution trivial = solve_p(d, 0.5, tight());
  CHECK(!trivial.note().empty());
  CHECK(std::abs(kExpGamma * trivial.eval(0.25) - 1.0) < 1e-13);
  CHECK_THROWS_AS(trivial.eval(2.0), HorizonError);
}

TEST_CASE("buchstab through one lift") {
  DdeParams b = preset("buchstab");
  QuadratureConfig cfg = tight();
  PFunction p(b, 12.0, cfg);
  CHECK(p.lifts() == 1);
  // e^{-gamma} p(u,1,b) = 1/u exactly on (1,2].
  for (double u : {1.1, 1.5, 1.9, 2.0})
    CHECK(std::abs(p(u) / kExpGamma - 1.0 / u) <= 1e-10);
  CHECK(std::abs(p(1.5) - kExpGamma / 1.5) < 1e-12);
  // Below the first shift the lifted solution vanishes (1/Gamma(0) = 0).
  CHECK(p(0.5) == Complex(0.0));
  // omega(u) -> e^{-gamma}: superexponentially fast, so p(10) -> 1.
  CHECK(std::abs(p(10.0) - 1.0) <= 1e-6);
}

TEST_CASE("buchstab closed form on the second marched interval") {
  // omega(u) = (1 + log(u-1))/u on [2,3]; omega = e^{-gamma} p(u,1,(-1)).
  DdeParams b = preset("buchstab");
  PFunction p(b, 4.0, tight());
  for (double u : {2.1, 2.5, 2.9}) {
    double omega = (1.0 + std::log(u - 1.0)) / u;
    CHECK(std::abs(p(u).real() / kExpGamma - omega) <= 1e-10);
  }
  CHECK(std::abs(p(2.5).real() / kExpGamma - 0.5621860432432658) <= 1e-11);
}

TEST_CASE("direct marching agrees with a lifted construction") {
  // p(u, a, b) built two ways: solved directly at a = 1/2, and lifted
  // once from the base at a = -1/2.  Probes the defining shift condition
  // p(u, a+1, b) = d/du p(u, a, b) across construction paths.
  QuadratureConfig cfg = tight();
  DdeParams half = preset("iwaniec", 0.5);  // a = 1/2
  PiecewiseSolution direct = solve_p(half, 8.0, cfg);
  std::vector<Complex> base_alphas = half.alphas;
  base_alphas[0] -= 1.0;
  PiecewiseSolution base = solve_p(make_params(base_alphas, half.shifts),
                                   8.0, cfg);
  for (double u : {0.7, 1.6, 2.5, 4.2, 6.9, 7.8}) {
    Complex lifted = lift_a(half, u, 1, base);
    CHECK(std::abs(lifted - direct.eval(u)) <= 1e-9);
  }
}

TEST_CASE("explicit lift against the base derivative") {
  DdeParams b = preset("buchstab");
  QuadratureConfig cfg = tight();
  std::vector<Complex> base_alphas = b.alphas;
  base_alphas[0] -= 1.0;
  DdeParams base_params = make_params(base_alphas, b.shifts);
  PiecewiseSolution base = solve_p(base_params, 6.0, cfg);
  // lift_a result equals d/du of the base solution.
  for (double u : {1.4, 2.6, 3.5}) {
    Complex lifted = lift_a(b, u, 1, base);
    Complex fd = (base.eval(u + 5e-6) - base.eval(u - 5e-6)) / 1e-5;
    CHECK(std::abs(lifted - fd) < 1e-7);
  }
  CHECK_THROWS_AS(lift_a(b, 7.5, 1, base), HorizonError);
  DdeParams wrong = preset("iwaniec", 0.5);
  CHECK_THROWS_AS(lift_a(wrong, 2.0, 1, base), ValidationError);
}

TEST_CASE("wheeler cancellation at u = 2") {
  DdeParams w = make_params({Complex(1.0), Complex(1.0), Complex(-2.0)},
                            {0.0, 1.0, 2.0});
  QuadratureConfig cfg = tight();
  PFunction p(w, 3.5, cfg);
  CHECK(p.lifts() == 2);
  CHECK(std::abs(jump_at(p, 1.0)) >= 0.1);
  CHECK(std::abs(jump_at(p, 2.0)) <= 1e-8);
  CHECK(std::abs(p.eval_side(2.0, Side::left) - kExpGamma) <= 1e-6);
  CHECK(std::abs(p.eval_side(2.0, Side::right) - kExpGamma) <= 1e-6);
}

TEST_CASE("panels tile the horizon and are left-continuous") {
  DdeParams p = preset("iwaniec", 0.5);  // a = 1/2, direct marching
  PiecewiseSolution sol = solve_p(p, 6.0, tight());
  const auto& panels = sol.panels();
  CHECK(panels.front().left == 0.0);
  CHECK(panels.back().right == doctest::Approx(6.0));
  for (size_t i = 1; i < panels.size(); ++i)
    CHECK(panels[i].left == doctest::Approx(panels[i - 1].right));
  // Left limits at breakpoints equal panel evaluations.
  for (double b : {2.0, 3.0, 4.0}) {
    Complex via_eval = sol.eval(b);
    int idx = sol.locate(b, Side::left);
    CHECK(std::abs(via_eval - panels[size_t(idx)].series.eval(b)) == 0.0);
  }
}

TEST_CASE("equation residual between breakpoints") {
  QuadratureConfig cfg = tight();
  for (auto* name : {"dickman", "iwaniec"}) {
    DdeParams p = std::string(name) == "dickman" ? preset("dickman")
                                                 : preset("iwaniec", 0.5);
    PiecewiseSolution sol = solve_p(p, 6.0, cfg);
    // (u p)' + sum_j alpha_j p(u - v_j) = 0 away from kinks.
    for (double u : {1.3, 1.7, 2.4, 3.6, 4.5, 5.2}) {
      Complex r = sol.eval(u) + u * sol.derivative(u);
      for (int j = 0; j <= p.m(); ++j)
        r += p.alphas[size_t(j)] * sol.eval(u - p.shifts[size_t(j)]);
      CHECK(std::abs(r) <= 1e-7);
    }
  }
}

TEST_CASE("complex a marches and satisfies the equation") {
  // a = 0.3 + 0.4i, beta = -1.5 + 0.4i.
  DdeParams p = make_params({Complex(-0.7, 0.4), Complex(-0.8)}, {0.0, 1.0});
  QuadratureConfig cfg = tight();
  PiecewiseSolution sol = solve_p(p, 5.0, cfg);
  for (double u : {0.4, 1.0})
    CHECK(std::abs(sol.eval(u) - p.c0 * inv_gamma(1.0 - p.a) *
                                     std::exp(-p.a * std::log(u))) < 1e-12);
  for (double u : {1.6, 2.3, 3.7, 4.5}) {
    Complex r = sol.eval(u) + u * sol.derivative(u);
    for (int j = 0; j <= p.m(); ++j)
      r += p.alphas[size_t(j)] * sol.eval(u - p.shifts[size_t(j)]);
    CHECK(std::abs(r) <= 1e-7);
  }
}

TEST_CASE("discontinuity classification") {
  // Case (i): a = 0.5, only the origin blow-up.
  DdeParams half = make_params({Complex(-0.5), Complex(-0.5)}, {0.0, 1.0});
  auto reps = discontinuities(half, 3.0);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].location == 0.0);
  CHECK(reps[0].kind == DiscontinuityKind::algebraic_blowup);
  CHECK(std::abs(reps[0].local_exponent - Complex(-0.5)) < 1e-12);

  // Case (iii): buchstab, a = 1: one finite-jump candidate at u = 1.
  auto breps = discontinuities(preset("buchstab"), 3.0);
  REQUIRE(breps.size() == 1);
  CHECK(breps[0].location == 1.0);
  CHECK(breps[0].kind == DiscontinuityKind::finite_jump);
  // The n = a candidate carries the exact jump size (-alpha_1)C_0.
  CHECK(std::abs(breps[0].predicted_coefficient - kExpGamma) < 1e-12);

  // Case (iii), wheeler: candidates at 1 and 2 (two mechanisms at 2).
  DdeParams w = make_params({Complex(1.0), Complex(1.0), Complex(-2.0)},
                            {0.0, 1.0, 2.0});
  auto wreps = discontinuities(w, 3.0);
  std::vector<double> locs;
  for (const auto& r : wreps) locs.push_back(r.location);
  CHECK(locs.size() == 3);
  CHECK(std::count(locs.begin(), locs.end(), 1.0) == 1);
  CHECK(std::count(locs.begin(), locs.end(), 2.0) == 2);

  // Case (iv): dickman, a = 0: a single jump at the origin of size C_0.
  auto dreps = discontinuities(preset("dickman"), 3.0);
  REQUIRE(dreps.size() == 1);
  CHECK(dreps[0].location == 0.0);
  CHECK(dreps[0].kind == DiscontinuityKind::finite_jump);
  CHECK(std::abs(dreps[0].predicted_coefficient - 0.56145948356689) < 1e-10);

  // Case (ii): Re(a) integer, a non-real: bounded oscillation at n = Re(a),
  // blow-ups below.  a = 0.7i: only the oscillatory origin.
  DdeParams osc0 =
      make_params({Complex(-1.0, 0.7), Complex(-1.0)}, {0.0, 1.0});
  auto oreps0 = discontinuities(osc0, 3.0);
  REQUIRE(oreps0.size() == 1);
  CHECK(oreps0[0].location == 0.0);
  CHECK(oreps0[0].kind == DiscontinuityKind::bounded_oscillatory);
  // a = 1 + 0.7i: origin blow-up plus oscillation at v_1.
  DdeParams osc1 = make_params({Complex(0.0, 0.7), Complex(-1.0)}, {0.0, 1.0});
  auto oreps1 = discontinuities(osc1, 3.0);
  REQUIRE(oreps1.size() == 2);
  CHECK(oreps1[0].location == 0.0);
  CHECK(oreps1[0].kind == DiscontinuityKind::algebraic_blowup);
  CHECK(oreps1[1].location == 1.0);
  CHECK(oreps1[1].kind == DiscontinuityKind::bounded_oscillatory);

  // Negative real a: continuous everywhere.
  DdeParams neg = make_params({Complex(-2.0), Complex(1.0)}, {0.0, 1.0});
  CHECK(discontinuities(neg, 3.0).empty());
}

TEST_CASE("blow-up exponent recovered from the lifted solution") {
  // a = 1.5: blow-ups at 0 (exponent -1.5) and v_1 (exponent -0.5).
  DdeParams p = make_params({Complex(0.5), Complex(-0.7)}, {0.0, 1.0});
  QuadratureConfig cfg = tight();
  PFunction pf(p, 4.0, cfg);
  std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5};
  std::vector<double> lx, ly;
  for (double e : eps) {
    lx.push_back(std::log(e));
    ly.push_back(std::log(std::abs(pf(1.0 + e))));
  }
  // Least-squares slope.
  double mx = 0, my = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= double(lx.size());
  my /= double(ly.size());
  double num = 0, den = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  CHECK(std::abs(num / den - (-0.5)) <= 0.02);
}

TEST_CASE("laplace transform identity") {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-8;
  cfg.rel_tol = 1e-8;
  DdeParams d = preset("dickman");
  PiecewiseSolution sol = solve_p(d, 25.0, cfg);
  LaplaceCheck c1 = p_laplace_check(d, Complex(1.0), sol, cfg);
  CHECK(std::abs(c1.rhs - 0.45085946332322) < 1e-9);
  CHECK(c1.dev <= 1e-6);

  DdeParams bb = make_params({Complex(-1.0), Complex(-1.0)}, {0.0, 1.0});
  PiecewiseSolution sol2 = solve_p(bb, 25.0, cfg);
  CHECK(p_laplace_check(bb, Complex(2.0), sol2, cfg).dev <= 1e-6);
  CHECK(p_laplace_check(bb, Complex(20.0), sol2, cfg).dev <= 1e-6);

  // Horizon too short for the tail model.
  PiecewiseSolution shallow = solve_p(bb, 3.0, cfg);
  CHECK_THROWS_AS(p_laplace_check(bb, Complex(0.5), shallow, cfg),
                  HorizonError);
  CHECK_THROWS_AS(p_laplace_check(bb, Complex(-1.0), sol2, cfg),
                  ValidationError);
}

TEST_CASE("laplace identity with a series tail (non-integer beta)") {
  DdeParams p = make_params({Complex(-0.5), Complex(-0.75)}, {0.0, 1.0});
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-8;
  cfg.rel_tol = 1e-8;
  PiecewiseSolution sol = solve_p(p, 25.0, cfg);
  for (double s : {0.5, 1.0, 3.0})
    CHECK(p_laplace_check(p, Complex(s), sol, cfg).dev <= 1e-6);
}

TEST_CASE("superexponential decay for integer beta") {
  // dickman: log |p| decreasing and concave on [U/2, U].
  DdeParams d = preset("dickman");
  PiecewiseSolution sol = solve_p(d, 14.0, tight());
  std::vector<double> logs;
  for (double u = 7.0; u <= 13.0; u += 1.0)
    logs.push_back(std::log(std::abs(sol.eval(u))));
  for (size_t i = 1; i < logs.size(); ++i) CHECK(logs[i] < logs[i - 1]);
  for (size_t i = 1; i + 1 < logs.size(); ++i)
    CHECK(logs[i + 1] - 2.0 * logs[i] + logs[i - 1] < 0.0);
}

TEST_CASE("asymptotic match near the horizon for non-integer beta") {
  // beta = -1.25: series bracket |p - partial(3)| <= 2 |term(3)|.
  DdeParams p = make_params({Complex(-0.5), Complex(-0.75)}, {0.0, 1.0});
  QuadratureConfig cfg = tight();
  PiecewiseSolution sol = solve_p(p, 14.0, cfg);
  AsymptoticSeries series = p_series(p, 4);
  double u = 13.0;
  Complex val = sol.eval(u);
  CHECK(std::abs(val - series.partial_sum(u, 3)) <=
        2.0 * std::abs(series.term(u, 3)));
}

TEST_SUITE_END();
