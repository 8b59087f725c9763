#include "ecdde/chebyshev.hpp"

#include <algorithm>
#include <cmath>

namespace ecdde {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

std::vector<double> ChebSeries::nodes(double lo, double hi, int degree) {
  std::vector<double> out(size_t(degree) + 1);
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  for (int k = 0; k <= degree; ++k)
    out[size_t(degree - k)] = c + h * std::cos(kPi * k / degree);
  out.front() = lo;
  out.back() = hi;
  return out;
}

ChebSeries ChebSeries::fit(double lo, double hi,
                           std::span<const Complex> values_ascending) {
  const int n = int(values_ascending.size()) - 1;
  if (n < 1) throw ValidationError("ChebSeries::fit: need at least 2 values");
  ChebSeries s;
  s.lo = lo;
  s.hi = hi;
  s.coeffs.assign(size_t(n) + 1, Complex(0.0));
  // values_ascending[i] corresponds to node cos(pi (n-i)/n).
  for (int j = 0; j <= n; ++j) {
    Complex acc = 0.5 * (values_ascending[size_t(n)] +
                         (j % 2 == 0 ? 1.0 : -1.0) * values_ascending[0]);
    for (int k = 1; k < n; ++k)
      acc += values_ascending[size_t(n - k)] * std::cos(kPi * j * k / n);
    Complex cj = (2.0 / n) * acc;
    if (j == 0 || j == n) cj *= 0.5;
    s.coeffs[size_t(j)] = cj;
  }
  return s;
}

Complex ChebSeries::eval(double x) const {
  const double t = (2.0 * x - (lo + hi)) / (hi - lo);
  // Clenshaw.
  Complex b1 = 0.0, b2 = 0.0;
  for (int k = degree(); k >= 1; --k) {
    Complex b0 = 2.0 * t * b1 - b2 + coeffs[size_t(k)];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + coeffs[0];
}

ChebSeries ChebSeries::derivative() const {
  const int n = degree();
  ChebSeries d;
  d.lo = lo;
  d.hi = hi;
  d.coeffs.assign(size_t(std::max(n, 1)), Complex(0.0));
  if (n >= 1) {
    std::vector<Complex> w(size_t(n) + 2, Complex(0.0));
    for (int k = n; k >= 1; --k)
      w[size_t(k - 1)] = w[size_t(k + 1)] + 2.0 * double(k) * coeffs[size_t(k)];
    w[0] *= 0.5;
    const double scale = 2.0 / (hi - lo);
    for (int k = 0; k < n; ++k) d.coeffs[size_t(k)] = scale * w[size_t(k)];
  }
  return d;
}

double ChebSeries::tail_estimate() const {
  const int n = degree();
  double m = 0.0;
  for (int k = std::max(0, n - 2); k <= n; ++k)
    m = std::max(m, std::abs(coeffs[size_t(k)]));
  return m;
}

std::vector<Complex> ChebSeries::to_monomial(double center) const {
  const int n = degree();
  // Monomial coefficients of T_k in the scaled variable t, built by the
  // recurrence T_{k+1} = 2 t T_k - T_{k-1}.
  std::vector<Complex> acc(size_t(n) + 1, Complex(0.0));
  std::vector<double> tkm1(size_t(n) + 1, 0.0), tk(size_t(n) + 1, 0.0);
  tkm1[0] = 1.0;
  if (n >= 1) tk[1] = 1.0;
  acc[0] += coeffs[0];
  if (n >= 1)
    for (int i = 0; i <= n; ++i) acc[size_t(i)] += coeffs[1] * tk[size_t(i)];
  for (int k = 2; k <= n; ++k) {
    std::vector<double> tkp1(size_t(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) tkp1[size_t(i + 1)] = 2.0 * tk[size_t(i)];
    for (int i = 0; i <= n; ++i) tkp1[size_t(i)] -= tkm1[size_t(i)];
    for (int i = 0; i <= n; ++i) acc[size_t(i)] += coeffs[size_t(k)] * tkp1[size_t(i)];
    tkm1.swap(tk);
    tk.swap(tkp1);
  }
  // t = s*(x - center) + o with s = 2/(hi-lo), o = (2*center-(lo+hi))/(hi-lo).
  const double s = 2.0 / (hi - lo);
  const double o = (2.0 * center - (lo + hi)) / (hi - lo);
  // Compose acc(t) with the affine map via Horner in (x - center).
  std::vector<Complex> out(size_t(n) + 1, Complex(0.0));
  for (int k = n; k >= 0; --k) {
    // out = out * (s y + o) + acc[k], y = x - center.
    for (int i = n; i >= 1; --i)
      out[size_t(i)] = out[size_t(i)] * o + out[size_t(i - 1)] * s;
    out[0] = out[0] * o + acc[size_t(k)];
  }
  return out;
}

}  // namespace ecdde
