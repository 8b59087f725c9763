#include "ecdde/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace ecdde {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw ValidationError("quadrature tolerances must be positive");
  if (max_subdivisions < 1)
    throw ValidationError("max_subdivisions must be >= 1");
  if (laplace_cutoff < 0.0)
    throw ValidationError("laplace_cutoff must be >= 0 (0 = automatic)");
  if (hankel_radius < 0.0)
    throw ValidationError("hankel_radius must be >= 0 (0 = automatic)");
  if (hankel_ray_length != 0.0 && hankel_radius != 0.0 &&
      hankel_ray_length <= hankel_radius)
    throw ValidationError("hankel_ray_length must exceed hankel_radius");
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1,1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
  double lo, hi;
  Complex value;
  double err;
};

PanelEstimate gk15(const Integrand& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  Complex fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  Complex resk = kWgk[7] * fv[7];
  Complex resg = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    resk += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }
  PanelEstimate p;
  p.lo = lo;
  p.hi = hi;
  p.value = resk * h;
  double diff = std::abs(resk - resg) * std::abs(h);
  // QUADPACK-style sharpening of the raw Kronrod-Gauss difference.
  p.err = diff;
  if (diff != 0.0) p.err = std::min(diff, 200.0 * diff * std::sqrt(diff));
  return p;
}

}  // namespace

QuadResult integrate(const Integrand& f, double lo, double hi,
                     double abs_tol, double rel_tol, int max_subdivisions) {
  QuadResult out;
  if (lo == hi) return out;
  double sign = 1.0;
  if (hi < lo) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  auto cmp = [](const PanelEstimate& a, const PanelEstimate& b) {
    return a.err < b.err;
  };
  std::priority_queue<PanelEstimate, std::vector<PanelEstimate>, decltype(cmp)>
      heap(cmp);
  heap.push(gk15(f, lo, hi));
  Complex total = heap.top().value;
  double total_err = heap.top().err;
  int used = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) &&
         used < max_subdivisions) {
    PanelEstimate worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // Interval at rounding resolution; keep its estimate as-is.
      heap.push(worst);
      break;
    }
    PanelEstimate a = gk15(f, worst.lo, mid);
    PanelEstimate b = gk15(f, mid, worst.hi);
    total += a.value + b.value - worst.value;
    total_err += a.err + b.err - worst.err;
    heap.push(a);
    heap.push(b);
    ++used;
  }
  out.value = sign * total;
  out.est_error = total_err;
  out.subdivisions = used;
  out.converged =
      total_err <= std::max(abs_tol, rel_tol * std::abs(total)) * 1.0001 ||
      total_err <= abs_tol;
  return out;
}

QuadResult integrate(const Integrand& f, double lo, double hi,
                     const QuadratureConfig& cfg) {
  return integrate(f, lo, hi, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
}

QuadResult integrate_singular_left(const Integrand& f, double lo, double hi,
                                   Complex sigma, double abs_tol,
                                   double rel_tol, int max_subdivisions) {
  if (std::real(sigma) <= -1.0)
    throw DomainError("integrate_singular_left: Re(sigma) must exceed -1");
  QuadResult out;
  if (hi <= lo) return out;
  const double len = hi - lo;
  // Outer, regular part.
  double split = lo + 0.25 * len;
  QuadResult outer = integrate(f, split, hi, abs_tol * 0.5, rel_tol,
                               max_subdivisions);
  out.value = outer.value;
  out.est_error = outer.est_error;
  out.subdivisions = outer.subdivisions;
  out.converged = outer.converged;
  // Graded panels [delta/4, delta] toward lo.  The analytic stub
  // c delta^{sigma+1}/(sigma+1) for the remaining sliver is only trusted
  // once the integrand measurably follows the local power law (the ratio
  // f(delta/4)/f(delta) matches 4^{-sigma}); exponentially concentrated
  // integrands fail that check until the grading reaches their mass.
  double delta = split - lo;
  const double floor_len = std::max(4e-16 * (std::abs(lo) + len), 1e-300);
  // The power law lives in the offset t - lo, which rounds when points are
  // formed as lo + delta; all stub formulas below use the realized offsets
  // (exact by Sterbenz subtraction) so the sliver estimate stays
  // self-consistent at offsets near the resolution of lo.
  auto power_stub = [&](double delta_req) {
    double x = lo + delta_req;
    double d_eff = x - lo;
    return f(x) * d_eff / (sigma + 1.0);
  };
  // Entry estimate keeps the sliver accounted for even when the floor is
  // reached immediately (tiny intervals deep inside a singular layer).
  Complex stub = power_stub(delta);
  while (true) {
    double next = delta * 0.25;
    if (next <= floor_len) break;
    QuadResult panel = integrate(f, lo + next, lo + delta, abs_tol * 0.02,
                                 rel_tol, std::max(64, max_subdivisions / 8));
    out.value += panel.value;
    out.est_error += panel.est_error;
    out.subdivisions += panel.subdivisions;
    delta = next;
    double x1 = lo + delta;
    double x4 = lo + 0.25 * delta;
    double d1 = x1 - lo, d4 = x4 - lo;
    Complex f1 = f(x1), f4 = f(x4);
    stub = f1 * d1 / (sigma + 1.0);
    Complex ratio_pow = std::exp(sigma * std::log(d1 / d4));
    double dev =
        std::abs(f4 * ratio_pow - f1) / (std::abs(f1) + 1e-300);
    double stub_err = std::abs(stub) * std::min(1.0, dev);
    if (dev <= 0.25 && stub_err <= abs_tol * 0.033) break;
  }
  out.value += stub;
  out.est_error += std::abs(stub) * 0.05 + abs_tol * 0.05;
  return out;
}

Complex require_converged(const QuadResult& r, const char* what) {
  if (!r.converged)
    throw AccuracyError(std::string(what) +
                            ": quadrature did not reach tolerance within the "
                            "subdivision budget",
                        r.value, r.est_error);
  return r.value;
}

}  // namespace ecdde
