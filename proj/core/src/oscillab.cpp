#include "ecdde/oscillab.hpp"

#include <algorithm>
#include <cmath>

#include "ecdde/chebyshev.hpp"
#include "ecdde/qstar.hpp"

namespace ecdde {

namespace {

double eval_piece(const PiecewisePoly::Piece& p, double x) {
  const double y = x - p.lo;
  double acc = 0.0;
  for (size_t i = p.coeffs.size(); i-- > 0;) acc = acc * y + p.coeffs[i];
  return acc;
}

double eval_piece_derivative(const PiecewisePoly::Piece& p, double x) {
  const double y = x - p.lo;
  double acc = 0.0;
  for (size_t i = p.coeffs.size(); i-- > 1;)
    acc = acc * y + double(i) * p.coeffs[i];
  return acc;
}

const PiecewisePoly::Piece* find_piece(const PiecewisePoly& q, double x) {
  for (const auto& p : q.pieces)
    if (x >= p.lo - 1e-14 && (x < p.hi || (&p == &q.pieces.back() &&
                                           x <= p.hi + 1e-14)))
      return &p;
  return nullptr;
}

}  // namespace

double PiecewisePoly::eval(double x) const {
  const Piece* p = find_piece(*this, x);
  if (!p) throw DomainError("PiecewisePoly::eval outside support");
  return eval_piece(*p, x);
}

double PiecewisePoly::derivative(double x) const {
  const Piece* p = find_piece(*this, x);
  if (!p) throw DomainError("PiecewisePoly::derivative outside support");
  return eval_piece_derivative(*p, x);
}

PiecewisePoly bump_seed(double T) {
  // y^4 (1-y)^4 = y^4 - 4 y^5 + 6 y^6 - 4 y^7 + y^8, y = u - T.
  PiecewisePoly q;
  q.degree = 8;
  PiecewisePoly::Piece p;
  p.lo = T;
  p.hi = T + 1.0;
  p.coeffs = {0, 0, 0, 0, 1, -4, 6, -4, 1};
  q.pieces.push_back(std::move(p));
  return q;
}

std::pair<PiecewisePoly, double> fit_qstar_seed(const DdeParams& params,
                                                double T, int degree,
                                                const QuadratureConfig& cfg) {
  if (degree < 1) throw ValidationError("fit_qstar_seed: degree must be >= 1");
  const int n_samples = 4 * (degree + 1);
  std::vector<double> xs(static_cast<size_t>(n_samples));
  std::vector<double> ys(static_cast<size_t>(n_samples));
  constexpr double kPi = 3.14159265358979323846;
  for (int i = 0; i < n_samples; ++i) {
    // Chebyshev-distributed sample points resist Runge artifacts.
    double t = 0.5 - 0.5 * std::cos(kPi * (i + 0.5) / n_samples);
    xs[size_t(i)] = T + t;
    ys[size_t(i)] = std::real(qstar(params, xs[size_t(i)], cfg).value);
  }
  // Least squares in the Chebyshev basis on [T, T+1], normal equations.
  const int nb = degree + 1;
  auto basis = [&](int k, double x) {
    double t = 2.0 * (x - T) - 1.0;
    double a = 1.0, b = t;
    if (k == 0) return 1.0;
    for (int i = 1; i < k; ++i) {
      double c = 2.0 * t * b - a;
      a = b;
      b = c;
    }
    return b;
  };
  std::vector<double> G(size_t(nb) * size_t(nb), 0.0);
  std::vector<double> rhs(size_t(nb), 0.0);
  for (int s = 0; s < n_samples; ++s) {
    for (int i = 0; i < nb; ++i) {
      double bi = basis(i, xs[size_t(s)]);
      rhs[size_t(i)] += bi * ys[size_t(s)];
      for (int j = 0; j <= i; ++j)
        G[size_t(i) * size_t(nb) + size_t(j)] += bi * basis(j, xs[size_t(s)]);
    }
  }
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j)
      G[size_t(i) * size_t(nb) + size_t(j)] =
          G[size_t(j) * size_t(nb) + size_t(i)];
  // Gaussian elimination with partial pivoting.
  std::vector<double> c(rhs);
  for (int col = 0; col < nb; ++col) {
    int piv = col;
    for (int r = col + 1; r < nb; ++r)
      if (std::abs(G[size_t(r) * size_t(nb) + size_t(col)]) >
          std::abs(G[size_t(piv) * size_t(nb) + size_t(col)]))
        piv = r;
    for (int k = 0; k < nb; ++k)
      std::swap(G[size_t(col) * size_t(nb) + size_t(k)],
                G[size_t(piv) * size_t(nb) + size_t(k)]);
    std::swap(c[size_t(col)], c[size_t(piv)]);
    double d = G[size_t(col) * size_t(nb) + size_t(col)];
    for (int r = col + 1; r < nb; ++r) {
      double fr = G[size_t(r) * size_t(nb) + size_t(col)] / d;
      for (int k = col; k < nb; ++k)
        G[size_t(r) * size_t(nb) + size_t(k)] -=
            fr * G[size_t(col) * size_t(nb) + size_t(k)];
      c[size_t(r)] -= fr * c[size_t(col)];
    }
  }
  for (int r = nb - 1; r >= 0; --r) {
    for (int k = r + 1; k < nb; ++k)
      c[size_t(r)] -= G[size_t(r) * size_t(nb) + size_t(k)] * c[size_t(k)];
    c[size_t(r)] /= G[size_t(r) * size_t(nb) + size_t(r)];
  }
  // Convert the Chebyshev combination to a monomial piece centered at T.
  ChebSeries cs;
  cs.lo = T;
  cs.hi = T + 1.0;
  cs.coeffs.assign(size_t(nb), Complex(0.0));
  for (int i = 0; i < nb; ++i) cs.coeffs[size_t(i)] = c[size_t(i)];
  std::vector<Complex> mono = cs.to_monomial(T);
  PiecewisePoly seed;
  seed.degree = degree;
  PiecewisePoly::Piece piece;
  piece.lo = T;
  piece.hi = T + 1.0;
  piece.coeffs.resize(mono.size());
  for (size_t i = 0; i < mono.size(); ++i)
    piece.coeffs[i] = std::real(mono[i]);
  seed.pieces.push_back(std::move(piece));

  double fit_err = 0.0;
  for (int i = 0; i <= 200; ++i) {
    double x = T + double(i) / 200.0;
    double truth = std::real(qstar(params, x, cfg).value);
    fit_err = std::max(fit_err, std::abs(seed.eval(x) - truth));
  }
  return {seed, fit_err};
}

PiecewisePoly forward_extend(double kappa, const PiecewisePoly& seed,
                             int steps) {
  if (steps < 1) throw ValidationError("forward_extend: steps must be >= 1");
  if (!(kappa > 0.0)) throw ValidationError("forward_extend: kappa must be > 0");
  if (seed.pieces.empty())
    throw ValidationError("forward_extend: empty seed");
  PiecewisePoly q = seed;
  size_t window_begin = 0;  // pieces of the most recent unit window
  for (int step = 0; step < steps; ++step) {
    size_t window_end = q.pieces.size();
    for (size_t i = window_begin; i < window_end; ++i) {
      const auto& src = q.pieces[i];
      // Q(y) = ((kappa-1) P(y) - (y + a) P'(y)) / kappa on [a+1, b+1).
      const size_t n = src.coeffs.size();
      PiecewisePoly::Piece dst;
      dst.lo = src.lo + 1.0;
      dst.hi = src.hi + 1.0;
      dst.coeffs.assign(n, 0.0);
      for (size_t k = 0; k < n; ++k) {
        double v = (kappa - 1.0 - double(k)) * src.coeffs[k];
        if (k + 1 < n) v -= src.lo * double(k + 1) * src.coeffs[k + 1];
        dst.coeffs[k] = v / kappa;
        if (!std::isfinite(dst.coeffs[k]))
          throw OverflowError(
              "forward_extend: coefficient overflow at step " +
                  std::to_string(step),
              Complex(dst.coeffs[k], 0.0));
      }
      q.pieces.push_back(std::move(dst));
    }
    window_begin = window_end;
  }
  return q;
}

int sign_changes(const PiecewisePoly& q, double lo, double hi,
                 int samples_per_unit) {
  lo = std::max(lo, q.support_lo());
  hi = std::min(hi, q.support_hi());
  if (!(hi > lo)) return 0;
  const int n = std::max(16, int(std::ceil((hi - lo) * samples_per_unit)));
  int changes = 0;
  int last_sign = 0;
  for (int i = 0; i <= n; ++i) {
    double x = lo + (hi - lo) * double(i) / n;
    double v = q.eval(std::min(x, q.support_hi()));
    int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (s != 0) {
      if (last_sign != 0 && s != last_sign) ++changes;
      last_sign = s;
    }
  }
  return changes;
}

OscillationReport analyze_intervals(const PiecewisePoly& q, double lo,
                                    double hi) {
  OscillationReport rep;
  rep.t0 = lo;
  for (double a = lo; a < hi - 1e-12; a += 1.0) {
    double b = std::min(a + 1.0, hi);
    double m = 0.0;
    const int samples = 512;
    for (int i = 0; i <= samples; ++i) {
      double x = a + (b - a) * double(i) / samples;
      m = std::max(m, std::abs(q.eval(x)));
    }
    rep.max_abs.push_back(m);
    rep.log_max_abs.push_back(m > 0.0 ? std::log(m) : -1e308);
    int sc = sign_changes(q, a, b);
    rep.sign_change_counts.push_back(sc);
    if (sc > 0 && rep.first_sign_change_interval < 0)
      rep.first_sign_change_interval = int(rep.max_abs.size()) - 1;
  }
  return rep;
}

std::vector<std::pair<double, Complex>> backward_extend(
    const DdeParams& params, const PiecewisePoly& seed, double h, int steps,
    const QuadratureConfig& cfg) {
  if (steps < 1) throw ValidationError("backward_extend: steps must be >= 1");
  if (!(h > 0.0) || h > params.shifts[1] + 1e-12)
    throw ValidationError("backward_extend: need 0 < h <= v_1");
  const double T = seed.support_lo();
  if (!(T - steps * h > 0.0))
    throw DomainError("backward_extend: steps would reach u <= 0");
  const Complex a0 = params.alphas[0];

  std::vector<ChebSeries> panels;  // descending: panel k covers [T-(k+1)h, T-kh]
  auto q_known = [&](double x) -> Complex {
    if (x >= T - 1e-13) return Complex(seed.eval(x), 0.0);
    int k = int(std::floor((T - x) / h - 1e-12));
    k = std::clamp(k, 0, int(panels.size()) - 1);
    return panels[size_t(k)].eval(x);
  };
  auto forcing = [&](double t) {
    Complex s = 0.0;
    for (int j = 1; j <= params.m(); ++j)
      s += params.alphas[size_t(j)] * q_known(t + params.shifts[size_t(j)]);
    return std::exp((-a0 - 1.0) * std::log(t)) * s;
  };

  const int deg = 12;
  Complex w_hi = std::exp(-a0 * std::log(T)) * Complex(seed.eval(T), 0.0);
  for (int k = 0; k < steps; ++k) {
    double hi_u = T - k * h;
    double lo_u = hi_u - h;
    auto nodes = ChebSeries::nodes(lo_u, hi_u, deg);
    std::vector<Complex> w(nodes.size());
    w.back() = w_hi;
    for (size_t i = nodes.size() - 1; i-- > 0;) {
      QuadResult r = integrate(forcing, nodes[i], nodes[i + 1],
                               std::max(cfg.abs_tol * 1e-2, 1e-14),
                               cfg.rel_tol * 1e-2, 200);
      w[i] = w[i + 1] - r.value;
    }
    std::vector<Complex> vals(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i)
      vals[i] = std::exp(a0 * std::log(nodes[i])) * w[i];
    panels.push_back(ChebSeries::fit(lo_u, hi_u, vals));
    w_hi = w.front();
  }

  std::vector<std::pair<double, Complex>> out;
  out.reserve(size_t(steps) + 1);
  out.emplace_back(T, Complex(seed.eval(T), 0.0));
  for (int k = 1; k <= steps; ++k) {
    double u = T - k * h;
    out.emplace_back(u, panels[size_t(k - 1)].eval(u));
  }
  return out;
}

}  // namespace ecdde
