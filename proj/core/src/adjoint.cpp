#include "ecdde/adjoint.hpp"

#include <algorithm>
#include <cmath>

#include "ecdde/pfun.hpp"
#include "ecdde/qstar.hpp"
#include "ecdde/special.hpp"

namespace ecdde {

namespace {

Complex median_complex(std::vector<Complex> v) {
  auto mid = [&](auto key) {
    std::vector<double> x;
    x.reserve(v.size());
    for (const Complex& c : v) x.push_back(key(c));
    std::sort(x.begin(), x.end());
    size_t n = x.size();
    return n % 2 == 1 ? x[n / 2] : 0.5 * (x[n / 2 - 1] + x[n / 2]);
  };
  return Complex(mid([](Complex c) { return c.real(); }),
                 mid([](Complex c) { return c.imag(); }));
}

// int_{u-vj}^{u} p(t) q(t+vj) dt split at the p-breakpoints in the window.
Complex window_integral(const PFunction& pf, const DdeParams& params,
                        Complex scale, double u, double vj,
                        const QuadratureConfig& cfg) {
  std::vector<double> cuts{u - vj, u};
  for (double b : pf.base().breakpoints())
    if (b > u - vj + 1e-12 && b < u - 1e-12) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  Complex total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto f = [&](double t) {
      return scale * pf(t) * qstar(params, t + vj, cfg).value;
    };
    QuadResult r = integrate(f, cuts[i], cuts[i + 1], cfg.abs_tol * 0.1,
                             cfg.rel_tol, cfg.max_subdivisions);
    total += r.value;
  }
  return total;
}

}  // namespace

AdjointReport adjoint_constant(const DdeParams& params,
                               std::span<const double> u_grid,
                               const QuadratureConfig& cfg,
                               bool bypass_normalization) {
  if (u_grid.empty())
    throw ValidationError("adjoint_constant: empty grid");
  double u_min = *std::min_element(u_grid.begin(), u_grid.end());
  double u_max = *std::max_element(u_grid.begin(), u_grid.end());
  if (!(u_min > params.v_max()))
    throw ValidationError(
        "adjoint_constant: grid minima must exceed v_m (the relation holds "
        "beyond the initial layers)");
  long long bi = 0;
  Complex scale(1.0);
  if (near_integer(params.beta, &bi) && bi >= 0) {
    if (!bypass_normalization)
      throw NormalizationError(
          "adjoint_constant: Gamma(-beta) has a pole for non-negative "
          "integer beta; pass bypass_normalization to pair the raw p");
  } else if (!bypass_normalization) {
    scale = gamma_c(-params.beta);
  }

  PFunction pf(params, u_max, cfg);
  AdjointReport rep;
  rep.bypassed_normalization = bypass_normalization;
  rep.grid.assign(u_grid.begin(), u_grid.end());
  for (double u : u_grid) {
    Complex A = u * scale * pf(u) * qstar(params, u, cfg).value;
    for (int j = 1; j <= params.m(); ++j)
      A -= params.alphas[size_t(j)] *
           window_integral(pf, params, scale, u, params.shifts[size_t(j)],
                           cfg);
    rep.A_estimates.push_back(A);
  }
  rep.A_mean = median_complex(rep.A_estimates);
  for (const Complex& a : rep.A_estimates)
    rep.max_dev = std::max(rep.max_dev, std::abs(a - rep.A_mean));
  return rep;
}

UpqLimits upq_limits(const DdeParams& params, const QuadratureConfig& cfg,
                     double u_large) {
  long long bi = 0;
  if (near_integer(params.beta, &bi) && bi >= 0)
    throw NormalizationError(
        "upq_limits: Gamma(-beta) has a pole for non-negative integer beta");
  if (!(u_large > 2.0 * params.v_max()))
    throw ValidationError("upq_limits: u_large too small");

  UpqLimits out;
  out.u_large = u_large;
  out.zero_covered = std::real(params.alphas[0]) < 0.0;
  // Near zero p = u^{-alpha_0-1} Gamma(-beta)/Gamma(-alpha_0) prod(...)^{-a_j}
  // and q ~ u^{alpha_0} Gamma(-alpha_0)/Gamma(-beta) prod(...)^{a_j}: the
  // coefficients cancel identically, so the limit is 1 by construction.
  out.limit_zero = out.zero_covered ? Complex(1.0) : Complex(0.0);

  PFunction pf(params, u_large, cfg);
  Complex g = gamma_c(-params.beta);
  auto f = [&](double u) {
    return u * g * pf(u) * qstar(params, u, cfg).value;
  };
  Complex f1 = f(u_large);
  Complex f2 = f(0.5 * u_large);
  out.limit_inf = f1;
  out.limit_inf_richardson = 2.0 * f1 - f2;
  return out;
}

}  // namespace ecdde
