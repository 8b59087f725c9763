#include "ecdde/special.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "ecdde/params.hpp"

namespace ecdde {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Beyond this cancellation exponent the Taylor series of Ein loses more
// than ~2.5 decimal digits and the log + E1 route takes over.
constexpr double kEinTaylorLoss = 6.0;

Complex ein_taylor(Complex z) {
  // term_k = (-1)^{k+1} z^k / (k k!); ratio t_{k+1}/t_k = -z k / (k+1)^2.
  Complex term = z;
  Complex sum = z;
  for (int k = 1; k < 4000; ++k) {
    term *= -z * (double(k) / ((k + 1.0) * (k + 1.0)));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) + 5e-308) break;
  }
  return sum;
}

// E1(z) by the modified Lentz continued fraction
// E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...)))).
Complex e1_continued_fraction(Complex z) {
  const double tiny = 1e-290;
  Complex b = z + 1.0;
  Complex c = 1.0 / tiny;
  Complex d = 1.0 / b;
  Complex h = d;
  for (int k = 1; k < 20000; ++k) {
    Complex a = -double(k) * double(k);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    if (c == Complex(0.0)) c = tiny;
    Complex delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      double xr = -std::real(z);
      if (xr > 700.0) return Complex(0.0);  // e^{-z} underflow, Re z large
      return std::exp(-z) * h;
    }
  }
  throw AccuracyError("ein: continued fraction for E1 failed to converge",
                      std::exp(-z) * h, std::abs(h));
}

// Asymptotic E1(z) ~ e^{-z}/z * sum (-1)^k k!/z^k, truncated at the smallest
// term; usable for |z| >= ~34 in the left half-plane (off the cut).
Complex e1_asymptotic(Complex z) {
  Complex sum = 1.0;
  Complex term = 1.0;
  double best = std::numeric_limits<double>::max();
  for (int k = 1; k < 400; ++k) {
    term *= -double(k) / z;
    double mag = std::abs(term);
    if (mag >= best) break;
    best = mag;
    sum += term;
    if (mag < 1e-17) break;
  }
  return std::exp(-z) / z * sum;
}

}  // namespace

bool near_integer(Complex z, long long* n_out) {
  double r = std::real(z);
  if (std::abs(r) > 4.6e18) return false;
  long long n = std::llround(r);
  bool hit = std::abs(r - double(n)) <= kIntegerTol &&
             std::abs(std::imag(z)) <= kIntegerTol;
  if (hit && n_out) *n_out = n;
  return hit;
}

Complex ein(Complex z) {
  if (z == Complex(0.0)) return Complex(0.0);
  const double az = std::abs(z);
  const double re = std::real(z);
  if (re < 0.0 && -re - std::log1p(az) > 700.0)
    throw OverflowError("ein: |Re z| beyond the double exponent range",
                        Complex(-std::numeric_limits<double>::max(), 0.0));
  // Cancellation exponent of the alternating Taylor sum: max term ~ e^{|z|},
  // result ~ e^{max(0,-Re z)}.
  const double loss = az + std::min(re, 0.0);
  if (loss <= kEinTaylorLoss) return ein_taylor(z);
  // gamma + log z + E1(z), principal branch.  loss > 0 here, so z is never
  // on the negative real axis.
  Complex e1 = (re >= 0.0 || az < 34.0) ? e1_continued_fraction(z)
                                        : e1_asymptotic(z);
  return kEulerGamma + std::log(z) + e1;
}

Complex gamma_c(Complex z) {
  long long n = 0;
  if (near_integer(z, &n) && n <= 0)
    throw PoleError("gamma_c: pole at non-positive integer " +
                        std::to_string(n),
                    n);
  // Lanczos, g = 7, 9 coefficients.
  static const double p[9] = {0.99999999999980993,
                              676.5203681218851,
                              -1259.1392167224028,
                              771.32342877765313,
                              -176.61502916214059,
                              12.507343278686905,
                              -0.13857109526572012,
                              9.9843695780195716e-6,
                              1.5056327351493116e-7};
  if (std::real(z) < 0.5) {
    // Reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z)).
    return kPi / (std::sin(kPi * z) * gamma_c(1.0 - z));
  }
  z -= 1.0;
  Complex x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (z + double(i));
  Complex t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

Complex inv_gamma(Complex z) {
  long long n = 0;
  if (near_integer(z, &n) && n <= 0) return Complex(0.0);
  return 1.0 / gamma_c(z);
}

Complex binom_c(Complex top, int n) {
  if (n < 0) throw ValidationError("binom_c: n must be >= 0");
  Complex num = 1.0;
  double den = 1.0;
  for (int k = 0; k < n; ++k) {
    num *= top - double(k);
    den *= double(k + 1);
  }
  return num / den;
}

Complex PowerSeriesCoeffs::qn(int n) const {
  if (n < 0 || n > order)
    throw ValidationError("PowerSeriesCoeffs::qn: index out of range");
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= double(k);
  return fact * coeffs[size_t(n)];
}

PowerSeriesCoeffs qn_coeffs(const DdeParams& params, double u, int n_max,
                            int sign) {
  if (n_max < 0) throw ValidationError("qn_coeffs: N must be >= 0");
  if (sign != 1 && sign != -1)
    throw ValidationError("qn_coeffs: sign must be +1 or -1");
  if (n_max > 60)
    std::fprintf(stderr,
                 "ecdde warning: qn_coeffs with N=%d; coefficients scale "
                 "factorially and may lose accuracy\n",
                 n_max);
  const int m = params.m();
  // Exponent g(z) = u z - sign * sum_j alpha_j sum_k v_j^k z^k/(k k!).
  std::vector<Complex> a(size_t(n_max) + 1, Complex(0.0));
  if (n_max >= 1) {
    std::vector<double> vpow(size_t(m) + 1, 1.0);
    double kfact = 1.0;
    for (int k = 1; k <= n_max; ++k) {
      kfact *= double(k);
      Complex s = 0.0;
      for (int j = 1; j <= m; ++j) {
        vpow[size_t(j)] *= params.shifts[size_t(j)];
        s += params.alphas[size_t(j)] * vpow[size_t(j)];
      }
      a[size_t(k)] = -double(sign) * s / (double(k) * kfact);
    }
    a[1] += u;
  }
  // n b_n = sum_{k=1}^n k a_k b_{n-k}, b_0 = 1.
  PowerSeriesCoeffs out;
  out.order = n_max;
  out.coeffs.assign(size_t(n_max) + 1, Complex(0.0));
  out.coeffs[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    Complex s = 0.0;
    for (int k = 1; k <= n; ++k)
      s += double(k) * a[size_t(k)] * out.coeffs[size_t(n - k)];
    out.coeffs[size_t(n)] = s / double(n);
  }
  return out;
}

Complex qn_value(const DdeParams& params, double u, int n, int sign) {
  return qn_coeffs(params, u, n, sign).qn(n);
}

}  // namespace ecdde
