#include "ecdde/asym.hpp"

#include <cmath>

#include "ecdde/special.hpp"

namespace ecdde {

Complex AsymptoticSeries::term(double u, int n) const {
  if (n < 0 || n >= int(coefficients.size()))
    throw ValidationError("AsymptoticSeries::term: index out of range");
  return coefficients[size_t(n)] *
         std::exp((-beta - 1.0 - double(n)) * std::log(u));
}

Complex AsymptoticSeries::partial_sum(double u, int n_terms) const {
  if (n_terms < 0) n_terms = truncation;
  if (n_terms > int(coefficients.size()))
    throw ValidationError("AsymptoticSeries::partial_sum: not enough terms");
  Complex s = 0.0;
  for (int n = 0; n < n_terms; ++n) s += term(u, n);
  return s;
}

double AsymptoticSeries::phi(double u) const {
  return u * std::log(u) / v_max;
}

AsymptoticSeries p_series(const DdeParams& params, int N) {
  if (N < 1) throw ValidationError("p_series: N must be >= 1");
  AsymptoticSeries s;
  s.beta = params.beta;
  s.truncation = N;
  s.v_max = params.v_max();
  long long bi = 0;
  s.superexponential = near_integer(params.beta, &bi);
  s.coefficients.resize(size_t(N));
  PowerSeriesCoeffs q = qn_coeffs(params, 0.0, N - 1, -1);
  double nfact = 1.0;
  for (int n = 0; n < N; ++n) {
    if (n > 0) nfact *= double(n);
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    // Q_n(0,-b)/n! = b_n straight from the recurrence.
    s.coefficients[size_t(n)] =
        sign * q.coeffs[size_t(n)] * inv_gamma(-params.beta - double(n));
  }
  return s;
}

std::vector<Complex> r_beta_poly(const DdeParams& params) {
  long long bi = 0;
  if (!near_integer(params.beta, &bi) || bi >= 0)
    throw DomainError("r_beta_poly: beta must be a negative integer");
  const int deg = int(-bi) - 1;  // -beta-1
  PowerSeriesCoeffs q = qn_coeffs(params, 0.0, deg, -1);
  std::vector<Complex> poly(size_t(deg) + 1, Complex(0.0));
  double kfact = 1.0;
  for (int k = 0; k <= deg; ++k) {
    if (k > 0) kfact *= double(k);
    const int n = deg - k;  // power u^k carries the n = deg-k coefficient
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    poly[size_t(k)] = sign * q.coeffs[size_t(n)] / kfact;
  }
  return poly;
}

Complex q_series_term(const DdeParams& params, double u, int n) {
  Complex qn = qn_value(params, 0.0, n, +1);
  return binom_c(params.beta, n) * qn *
         std::exp((params.beta - double(n)) * std::log(u));
}

Complex q_series_inf(const DdeParams& params, double u, int N) {
  if (N < 1) throw ValidationError("q_series_inf: N must be >= 1");
  if (!(u > 0.0)) throw ValidationError("q_series_inf: u must be > 0");
  PowerSeriesCoeffs q = qn_coeffs(params, 0.0, N - 1, +1);
  Complex s = 0.0;
  double nfact = 1.0;
  for (int n = 0; n < N; ++n) {
    if (n > 0) nfact *= double(n);
    s += binom_c(params.beta, n) * (nfact * q.coeffs[size_t(n)]) *
         std::exp((params.beta - double(n)) * std::log(u));
  }
  return s;
}

ZeroAsym q_zero_asym(const DdeParams& params) {
  if (!(std::real(params.alphas[0]) < 0.0))
    throw DomainError(
        "q_zero_asym: the u->0+ law holds only for Re(alpha_0) < 0");
  ZeroAsym out;
  out.exponent = params.alphas[0];
  // prod (v_j e^gamma)^{alpha_j} = 1/c0.
  out.coefficient =
      gamma_c(-params.alphas[0]) * inv_gamma(-params.beta) / params.c0;
  return out;
}

}  // namespace ecdde
