#include <doctest.h>

#include <cmath>
#include <vector>

#include "ecdde/oscillab.hpp"
#include "ecdde/params.hpp"
#include "ecdde/qstar.hpp"

using namespace ecdde;

namespace {
QuadratureConfig cfg10() {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-10;
  cfg.rel_tol = 1e-9;
  return cfg;
}
}  // namespace

TEST_SUITE_BEGIN("oscillab");

TEST_CASE("bump seed shape") {
  PiecewisePoly b = bump_seed(5.0);
  CHECK(b.degree == 8);
  CHECK(b.eval(5.0) == 0.0);
  CHECK(std::abs(b.eval(5.5) - std::pow(0.5, 8)) < 1e-15);
  CHECK(std::abs(b.eval(6.0 - 1e-9)) < 1e-30);
  CHECK(sign_changes(b, 5.0, 6.0) == 0);
}

TEST_CASE("zero seed extends to zero") {
  PiecewisePoly z = bump_seed(5.0);
  for (auto& c : z.pieces[0].coeffs) c = 0.0;
  PiecewisePoly ext = forward_extend(1.0, z, 4);
  for (double u = 5.0; u <= 9.9; u += 0.37) CHECK(ext.eval(u) == 0.0);
}

TEST_CASE("validation") {
  PiecewisePoly b = bump_seed(5.0);
  CHECK_THROWS_AS(forward_extend(1.0, b, 0), ValidationError);
  CHECK_THROWS_AS(forward_extend(0.0, b, 2), ValidationError);
  // Coefficients eventually exceed the double range and signal overflow.
  CHECK_THROWS_AS(forward_extend(0.1, bump_seed(1.0), 400), OverflowError);
}

TEST_CASE("linearity and degree preservation") {
  PiecewisePoly s1 = bump_seed(5.0);
  PiecewisePoly s2 = bump_seed(5.0);
  // A second, different compatible seed: scale and square-ish reshape.
  for (size_t i = 0; i < s2.pieces[0].coeffs.size(); ++i)
    s2.pieces[0].coeffs[i] *= 0.25 * double(i + 1);
  PiecewisePoly sum = s1;
  for (size_t i = 0; i < sum.pieces[0].coeffs.size(); ++i)
    sum.pieces[0].coeffs[i] += s2.pieces[0].coeffs[i];

  PiecewisePoly e1 = forward_extend(1.0, s1, 5);
  PiecewisePoly e2 = forward_extend(1.0, s2, 5);
  PiecewisePoly es = forward_extend(1.0, sum, 5);
  CHECK(es.degree == 8);
  REQUIRE(es.pieces.size() == e1.pieces.size());
  for (size_t p = 0; p < es.pieces.size(); ++p)
    for (size_t k = 0; k < es.pieces[p].coeffs.size(); ++k) {
      double lhs = es.pieces[p].coeffs[k];
      double rhs = e1.pieces[p].coeffs[k] + e2.pieces[p].coeffs[k];
      CHECK(std::abs(lhs - rhs) <=
            1e-12 * std::max(1.0, std::abs(lhs) + std::abs(rhs)));
    }
}

TEST_CASE("sign change counting") {
  PiecewisePoly line;
  line.degree = 1;
  PiecewisePoly::Piece pc;
  pc.lo = 1.0;
  pc.hi = 3.0;
  pc.coeffs = {-1.0, 1.0};  // (x - 1) - 1 = x - 2 on [1, 3)
  line.pieces.push_back(pc);
  CHECK(sign_changes(line, 1.0, 3.0) == 1);
}

TEST_CASE("bump extension oscillates and grows superexponentially") {
  PiecewisePoly ext = forward_extend(1.0, bump_seed(5.0), 8);
  OscillationReport rep = analyze_intervals(ext, 6.0, 14.0);
  REQUIRE(rep.max_abs.size() == 8);
  CHECK(rep.first_sign_change_interval >= 0);
  CHECK(rep.first_sign_change_interval <= 7);
  // Beyond the first flip, every unit interval keeps changing sign.
  for (size_t i = size_t(rep.first_sign_change_interval);
       i < rep.sign_change_counts.size(); ++i)
    CHECK(rep.sign_change_counts[i] >= 1);
  // At eight steps the growth already clears e^{2u} on the last interval.
  double u_last = 6.0 + double(rep.max_abs.size() - 1);
  for (double lambda : {1.0, 2.0})
    CHECK(rep.max_abs.back() > std::exp(lambda * u_last));
  // Growth rate over the last four intervals beats e^2 per unit.
  for (size_t i = rep.max_abs.size() - 4; i < rep.max_abs.size() - 1; ++i)
    CHECK(rep.max_abs[i + 1] / rep.max_abs[i] > std::exp(2.0));
}

TEST_CASE("no exponential bound holds eventually") {
  // The degree-preserving map multiplies the leading coefficient by
  // (d+1-kappa)/kappa per step, so a degree-8 lab object tops out at rate
  // ln((d+1-kappa)/kappa).  kappa = 1 clears lambda = 2 (rate ln 8); the
  // lambda = 4 face of "q != O(e^{lambda u})" needs kappa = 0.1 (rate
  // ln 89).
  PiecewisePoly ext2 = forward_extend(1.0, bump_seed(5.0), 14);
  OscillationReport rep2 = analyze_intervals(ext2, 6.0, 20.0);
  double u_last2 = 6.0 + double(rep2.max_abs.size() - 1);
  for (double lambda : {1.0, 2.0})
    CHECK(rep2.max_abs.back() > std::exp(lambda * u_last2));

  PiecewisePoly ext4 = forward_extend(0.1, bump_seed(1.0), 25);
  OscillationReport rep4 = analyze_intervals(ext4, 2.0, 27.0);
  double u_last4 = 2.0 + double(rep4.max_abs.size() - 1);
  for (double lambda : {1.0, 2.0, 4.0})
    CHECK(rep4.max_abs.back() > std::exp(lambda * u_last4));
}

TEST_CASE("canonical seed extends without spurious oscillation") {
  DdeParams p = preset("iwaniec", 1.0);
  QuadratureConfig cfg = cfg10();
  auto [seed, fit_err] = fit_qstar_seed(p, 5.0, 8, cfg);
  CHECK(fit_err < 1e-9);
  PiecewisePoly ext = forward_extend(1.0, seed, 3);
  // No sign changes anywhere: the canonical direction stays positive.
  CHECK(sign_changes(ext, 5.0, 9.0) == 0);
  // Tracks q* closely; the seed error is amplified by the wild modes but
  // stays far below the solution scale over three steps.
  double worst = 0.0;
  for (double u = 6.0; u <= 9.0; u += 0.125) {
    double truth = std::real(qstar(p, u, cfg).value);
    worst = std::max(worst, std::abs(ext.eval(u) - truth));
  }
  CHECK(worst <= 1e-4);
}

TEST_CASE("backward extension reproduces q*") {
  DdeParams p = preset("iwaniec", 1.0);
  QuadratureConfig cfg = cfg10();
  auto [seed, fit_err] = fit_qstar_seed(p, 5.0, 12, cfg);
  auto samples = backward_extend(p, seed, 0.1, 30, cfg);
  REQUIRE(samples.size() == 31);
  for (const auto& [u, value] : samples) {
    Complex truth = qstar(p, u, cfg).value;
    CHECK(std::abs(value - truth) <= 1e-6);
  }
}

TEST_CASE("backward extension of zero is zero") {
  DdeParams p = preset("iwaniec", 1.0);
  PiecewisePoly z = bump_seed(5.0);
  for (auto& c : z.pieces[0].coeffs) c = 0.0;
  auto samples = backward_extend(p, z, 0.25, 10, cfg10());
  for (const auto& [u, value] : samples) CHECK(std::abs(value) == 0.0);
}

TEST_CASE("backward extension is contractive for perturbed data") {
  DdeParams p = preset("iwaniec", 1.0);
  QuadratureConfig cfg = cfg10();
  auto [seed, fit_err] = fit_qstar_seed(p, 5.0, 12, cfg);
  // Add the bump: backward values stay finite and tame.
  PiecewisePoly bump = bump_seed(5.0);
  PiecewisePoly perturbed = seed;
  for (size_t k = 0; k < bump.pieces[0].coeffs.size(); ++k)
    perturbed.pieces[0].coeffs[k] += bump.pieces[0].coeffs[k];
  auto samples = backward_extend(p, perturbed, 0.1, 30, cfg);
  for (const auto& [u, value] : samples) {
    CHECK(std::isfinite(std::abs(value)));
    CHECK(std::abs(value) < 5.0);
  }
  CHECK_THROWS_AS(backward_extend(p, perturbed, 0.25, 30, cfg), DomainError);
  CHECK_THROWS_AS(backward_extend(p, perturbed, 2.0, 1, cfg),
                  ValidationError);
}

TEST_SUITE_END();
