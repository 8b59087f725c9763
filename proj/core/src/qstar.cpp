#include "ecdde/qstar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "ecdde/special.hpp"

namespace ecdde {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// exp{-u x + sum_j alpha_j Ein(v_j x)} for real x > 0 (shared by the
// Laplace integrand and the Hankel rays).
Complex real_axis_factor(const DdeParams& params, double u, double x) {
  Complex e = Complex(-u * x);
  for (int j = 1; j <= params.m(); ++j)
    e += params.alphas[size_t(j)] * ein(params.shifts[size_t(j)] * x);
  return std::exp(e);
}

// Envelope constant and power of |integrand| <= C x^pw e^{-ux} for large x.
void laplace_envelope(const DdeParams& params, double x0, double* c_out,
                      double* pw_out) {
  double logc = 0.0;
  for (int j = 1; j <= params.m(); ++j) {
    double vj = params.shifts[size_t(j)];
    logc += std::real(params.alphas[size_t(j)]) * (kEulerGamma + std::log(vj));
    // |E1(v_j x)| <= e^{-v_j x}/(v_j x) for x >= x0 enters the constant.
    logc += std::abs(params.alphas[size_t(j)]) *
            std::exp(-vj * x0) / std::max(vj * x0, 1.0);
  }
  *c_out = std::exp(logc);
  *pw_out = -std::real(params.alphas[0]) - 1.0;
}

double choose_laplace_cutoff(const DdeParams& params, double u,
                             const QuadratureConfig& cfg) {
  if (cfg.laplace_cutoff > 0.0) return cfg.laplace_cutoff;
  double x0 = std::max(1.0, 35.0 / params.shifts[1]);
  double c = 0.0, pw = 0.0;
  laplace_envelope(params, x0, &c, &pw);
  double X = std::max({x0, (2.0 * std::abs(pw) + 2.0) / u, 8.0 / u});
  for (int k = 0; k < 60; ++k) {
    double tail = c * (2.0 / u) * std::pow(X, pw) * std::exp(-u * X);
    if (tail <= 0.5 * cfg.abs_tol) return X;
    X *= 1.5;
    if (X > 1e8)
      throw AccuracyError(
          "qstar_laplace: could not find a finite truncation point",
          Complex(0.0), tail);
  }
  return X;
}

}  // namespace

const char* to_string(Representation r) {
  switch (r) {
    case Representation::polynomial: return "polynomial";
    case Representation::laplace: return "laplace";
    case Representation::hankel: return "hankel";
  }
  return "?";
}

Complex qstar_laplace(const DdeParams& params, double u,
                      const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(u > 0.0)) throw ValidationError("qstar_laplace: u must be > 0");
  if (!(std::real(params.beta) < 0.0))
    throw RepresentationError(
        "qstar_laplace: requires Re(beta) < 0 (use the Hankel or polynomial "
        "representation)");
  const Complex beta = params.beta;
  const double X = choose_laplace_cutoff(params, u, cfg);
  auto f = [&](double x) {
    return std::exp((-beta - 1.0) * std::log(x)) *
           real_axis_factor(params, u, x);
  };
  // x^{ -beta-1 } ~ x^{-Re beta - 1}: graded toward 0 with the power-law
  // stub (sigma = -beta-1 > -1 whenever Re beta < 0).
  QuadResult r = integrate_singular_left(f, 0.0, X, -beta - 1.0, cfg.abs_tol,
                                         cfg.rel_tol, cfg.max_subdivisions);
  Complex pref = 1.0 / gamma_c(-beta);
  if (!r.converged)
    throw AccuracyError("qstar_laplace: quadrature did not converge",
                        pref * r.value, std::abs(pref) * r.est_error);
  return pref * r.value;
}

Complex qstar_hankel(const DdeParams& params, double u,
                     const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(u > 0.0)) throw ValidationError("qstar_hankel: u must be > 0");
  const Complex beta = params.beta;
  long long bi = 0;
  if (near_integer(beta, &bi)) {
    if (bi >= 0)
      throw RepresentationError(
          "qstar_hankel: beta is a non-negative integer; q* is the "
          "polynomial Q_n(u, b)");
    throw RepresentationError(
        "qstar_hankel: beta is a negative integer; Gamma(beta+1) blows up "
        "and the closed contour vanishes -- use qstar_laplace");
  }
  {
    double re = std::real(beta);
    double dist = std::abs(re - std::llround(re));
    if (dist < 1e-6 && std::abs(std::imag(beta)) < 1e-6)
      std::fprintf(stderr,
                   "ecdde warning: qstar_hankel with beta within %g of an "
                   "integer; Gamma(beta+1) is large and cancellation may "
                   "degrade accuracy\n",
                   dist);
  }
  const double rho = cfg.hankel_radius > 0.0 ? cfg.hankel_radius
                                             : std::min(1.0, 1.0 / u);
  double L = cfg.hankel_ray_length;
  if (L <= 0.0) {
    // e^{-uL} L^{|Re b|+1+sum|Re a_j|} e^{gamma sum|Re a_j|} prod v_j^{|Re a_j|}
    double sum_abs = 0.0;
    double logp = 0.0;
    for (int j = 1; j <= params.m(); ++j) {
      double ra = std::abs(std::real(params.alphas[size_t(j)]));
      sum_abs += ra;
      logp += ra * std::log(params.shifts[size_t(j)]);
    }
    double pw = std::abs(std::real(beta)) + 1.0 + sum_abs;
    double logc = kEulerGamma * sum_abs + logp;
    L = std::max(2.0 * rho, 1.0);
    for (int k = 0; k < 200; ++k) {
      double logtail = -u * L + pw * std::log(L) + logc;
      if (logtail <= std::log(cfg.abs_tol)) break;
      L *= 1.5;
    }
  }
  if (L <= rho)
    throw ValidationError("qstar_hankel: ray length must exceed the radius");

  // Circle |z| = rho, theta in [-pi, pi]:
  // i rho e^{i theta} (rho e^{i theta})^{-beta-1}
  //   exp{u z + sum_j alpha_j Ein(-v_j z)}.
  auto circle = [&](double theta) {
    Complex z = rho * std::exp(Complex(0.0, theta));
    Complex e = u * z;
    for (int j = 1; j <= params.m(); ++j)
      e += params.alphas[size_t(j)] * ein(-params.shifts[size_t(j)] * z);
    Complex zpow = std::exp((-beta - 1.0) *
                            Complex(std::log(rho), theta));
    return Complex(0.0, 1.0) * z * zpow * std::exp(e);
  };
  QuadResult circ = integrate(circle, -kPi, kPi, cfg.abs_tol, cfg.rel_tol,
                              cfg.max_subdivisions);

  // Both rays combined: phases e^{+-i pi (-beta-1)} and directions fold to
  // (e^{-i pi beta} - e^{i pi beta}) int_rho^L x^{-beta-1} g(x) dx with
  // g(x) = exp{-u x + sum alpha_j Ein(v_j x)} (Ein arguments real).
  auto ray = [&](double x) {
    return std::exp((-beta - 1.0) * std::log(x)) *
           real_axis_factor(params, u, x);
  };
  QuadResult rays = integrate(ray, rho, L, cfg.abs_tol, cfg.rel_tol,
                              cfg.max_subdivisions);
  Complex phase = -2.0 * Complex(0.0, 1.0) * std::sin(kPi * beta);

  Complex pref = gamma_c(beta + 1.0) / Complex(0.0, 2.0 * kPi);
  Complex value = pref * (circ.value + phase * rays.value);
  if (!circ.converged || !rays.converged)
    throw AccuracyError("qstar_hankel: quadrature did not converge", value,
                        std::abs(pref) *
                            (circ.est_error +
                             std::abs(phase) * rays.est_error));
  return value;
}

QstarValue qstar(const DdeParams& params, double u,
                 const QuadratureConfig& cfg) {
  if (!(u > 0.0)) throw ValidationError("qstar: u must be > 0");
  QstarValue out;
  long long bi = 0;
  if (near_integer(params.beta, &bi) && bi >= 0) {
    out.representation_used = Representation::polynomial;
    out.value = qn_value(params, u, int(bi), +1);
    out.est_error = 1e-14 * std::abs(out.value) * double(bi + 1);
    return out;
  }
  if (std::real(params.beta) < 0.0) {
    out.representation_used = Representation::laplace;
    out.value = qstar_laplace(params, u, cfg);
  } else {
    out.representation_used = Representation::hankel;
    out.value = qstar_hankel(params, u, cfg);
  }
  out.est_error = cfg.abs_tol + cfg.rel_tol * std::abs(out.value);
  return out;
}

double dde_residual(const DdeParams& params, double u, double h,
                    const QuadratureConfig& cfg) {
  if (!(u > h && h > 0.0))
    throw ValidationError("dde_residual: requires u > h > 0");
  auto q = [&](double x) { return qstar(params, x, cfg).value; };
  Complex dq = (q(u - 2.0 * h) - 8.0 * q(u - h) + 8.0 * q(u + h) -
                q(u + 2.0 * h)) /
               (12.0 * h);
  Complex rhs = 0.0;
  for (int j = 0; j <= params.m(); ++j)
    rhs += params.alphas[size_t(j)] * q(u + params.shifts[size_t(j)]);
  return std::abs(u * dq - rhs);
}

std::pair<Complex, double> integral_form_constant(
    const DdeParams& params, std::span<const double> u_grid,
    const QuadratureConfig& cfg) {
  if (u_grid.size() < 2)
    throw ValidationError("integral_form_constant: grid needs >= 2 points");
  for (double u : u_grid)
    if (!(u > 0.0))
      throw ValidationError("integral_form_constant: grid values must be > 0");
  const int m = params.m();
  // c_j = sum_{i=j}^m alpha_i.
  std::vector<Complex> c(size_t(m) + 1, Complex(0.0));
  for (int j = m; j >= 1; --j)
    c[size_t(j)] = (j == m ? Complex(0.0) : c[size_t(j) + 1]) +
                   params.alphas[size_t(j)];
  std::vector<Complex> A;
  A.reserve(u_grid.size());
  for (double u : u_grid) {
    Complex acc = u * qstar(params, u, cfg).value;
    for (int j = 1; j <= m; ++j) {
      auto f = [&](double t) { return qstar(params, u + t, cfg).value; };
      QuadResult r =
          integrate(f, params.shifts[size_t(j - 1)], params.shifts[size_t(j)],
                    cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
      acc -= c[size_t(j)] * r.value;
    }
    A.push_back(acc);
  }
  Complex mean = 0.0;
  for (const Complex& v : A) mean += v;
  mean /= double(A.size());
  double max_dev = 0.0;
  for (const Complex& v : A) max_dev = std::max(max_dev, std::abs(v - mean));
  return {mean, max_dev};
}

}  // namespace ecdde
