// Command-line front end: evaluates the canonical advanced-equation
// solution q*, the retarded-equation solution p(u,a,b), their asymptotic
// expansions and the adjoint relation, and runs the acceptance checks.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecdde/adjoint.hpp"
#include "ecdde/asym.hpp"
#include "ecdde/checks.hpp"
#include "ecdde/oscillab.hpp"
#include "ecdde/params.hpp"
#include "ecdde/pfun.hpp"
#include "ecdde/qstar.hpp"
#include "ecdde/special.hpp"

namespace {

using ecdde::Complex;
using nlohmann::json;

// "re", "re+imi", "re-imi", "imi" (e.g. "1.5", "0.5+0.25i", "-2i").
Complex parse_complex(const std::string& text) {
  std::string s = text;
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw ecdde::ValidationError("empty complex literal");
  try {
    if (s.back() == 'i' || s.back() == 'I') {
      std::string body = s.substr(0, s.size() - 1);
      // Split at the sign that separates re from im (not a leading sign,
      // not an exponent sign).
      for (size_t k = body.size(); k-- > 1;) {
        char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
          double re = std::stod(body.substr(0, k));
          std::string imtxt = body.substr(k);
          double im = (imtxt == "+" || imtxt == "-") ? (imtxt == "+" ? 1 : -1)
                                                     : std::stod(imtxt);
          return {re, im};
        }
      }
      if (body.empty() || body == "+") return {0.0, 1.0};
      if (body == "-") return {0.0, -1.0};
      return {0.0, std::stod(body)};
    }
    size_t used = 0;
    double re = std::stod(s, &used);
    if (used != s.size())
      throw ecdde::ValidationError("trailing characters in '" + text + "'");
    return {re, 0.0};
  } catch (const std::invalid_argument&) {
    throw ecdde::ValidationError("cannot parse complex number '" + text +
                                 "' (expected re or re+imi)");
  } catch (const std::out_of_range&) {
    throw ecdde::ValidationError("complex literal out of range: '" + text +
                                 "'");
  }
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_complex(item));
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  return out;
}

// "A:B:N" -> N points from A to B inclusive.
std::vector<double> parse_grid(const std::string& text) {
  double a = 0, b = 0;
  int n = 0;
  char c1 = 0, c2 = 0;
  std::istringstream ss(text);
  if (!(ss >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
    throw ecdde::ValidationError("grid must be A:B:N with N >= 1, got '" +
                                 text + "'");
  std::vector<double> out;
  out.reserve(size_t(n));
  for (int i = 0; i < n; ++i)
    out.push_back(n == 1 ? a : a + (b - a) * double(i) / double(n - 1));
  return out;
}

// Shared parameter-source options.
struct ParamsSource {
  std::string preset_name;
  double kappa = 1.0;
  std::string alphas_text, shifts_text;
  std::string json_text;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--preset", preset_name,
                    "named parameter set: dickman|buchstab|iwaniec|q1");
    cmd->add_option("--kappa", kappa, "kappa for the iwaniec preset (> 0)");
    cmd->add_option("--alphas", alphas_text,
                    "comma-separated alpha_0..alpha_m (re or re+imi)");
    cmd->add_option("--shifts", shifts_text,
                    "comma-separated shifts v_0..v_m (v_0 = 0, increasing)");
    cmd->add_option("--params-json", json_text,
                    "parameters as {\"alphas\":[[re,im],...],\"shifts\":[...]}");
  }

  ecdde::DdeParams resolve() const {
    int sources = int(!preset_name.empty()) +
                  int(!alphas_text.empty() || !shifts_text.empty()) +
                  int(!json_text.empty());
    if (sources != 1)
      throw ecdde::ValidationError(
          "exactly one parameter source required: --preset, "
          "--alphas/--shifts, or --params-json");
    if (!preset_name.empty()) return ecdde::preset(preset_name, kappa);
    if (!json_text.empty()) return ecdde::params_from_json_string(json_text);
    if (alphas_text.empty() || shifts_text.empty())
      throw ecdde::ValidationError("--alphas and --shifts go together");
    return ecdde::make_params(parse_complex_list(alphas_text),
                              parse_real_list(shifts_text));
  }
};

struct OutputTarget {
  std::string path;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--out", path,
                    "output file (relative paths resolve against "
                    "ECDDE_OUT_DIR when set); default stdout");
  }

  // Keeps the stream alive for the duration of the command.
  std::unique_ptr<std::ofstream> file;
  std::ostream& stream() {
    if (path.empty()) return std::cout;
    std::string full = path;
    const char* dir = std::getenv("ECDDE_OUT_DIR");
    if (dir && *dir && path.front() != '/')
      full = std::string(dir) + "/" + path;
    file = std::make_unique<std::ofstream>(full);
    if (!*file)
      throw ecdde::ValidationError("cannot open output file " + full);
    return *file;
  }
};

struct Tolerances {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--abs-tol", abs_tol, "absolute tolerance");
    cmd->add_option("--rel-tol", rel_tol, "relative tolerance");
  }

  ecdde::QuadratureConfig config() const {
    ecdde::QuadratureConfig cfg;
    cfg.abs_tol = abs_tol;
    cfg.rel_tol = rel_tol;
    cfg.validate();
    return cfg;
  }
};

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

int run_cli(int argc, char** argv) {
  CLI::App app{"ecdde: Euler-Cauchy difference differential equations -- "
               "canonical solutions, method of steps, asymptotics"};
  app.require_subcommand(1);

  // --- qstar ---
  auto* q_cmd = app.add_subcommand(
      "qstar", "evaluate the canonical advanced-equation solution q*");
  ParamsSource q_src;
  Tolerances q_tol;
  OutputTarget q_out;
  std::optional<double> q_u;
  std::string q_grid;
  bool q_json = false, q_csv = false;
  q_src.add_to(q_cmd);
  q_tol.add_to(q_cmd);
  q_out.add_to(q_cmd);
  q_cmd->add_option("--u", q_u, "single evaluation point (> 0)");
  q_cmd->add_option("--grid", q_grid, "evaluation grid A:B:N");
  q_cmd->add_flag("--json", q_json, "JSON output");
  q_cmd->add_flag("--csv", q_csv, "CSV output (default)");

  // --- pfun ---
  auto* p_cmd = app.add_subcommand(
      "pfun", "solve the retarded equation p(u,a,b) by method of steps");
  ParamsSource p_src;
  Tolerances p_tol;
  OutputTarget p_out;
  double p_U = 10.0;
  int p_lift = 0;
  std::optional<double> p_at;
  std::string p_grid, p_laplace_s;
  bool p_disc = false, p_json = false;
  p_src.add_to(p_cmd);
  p_tol.add_to(p_cmd);
  p_out.add_to(p_cmd);
  p_cmd->add_option("--U", p_U, "solution horizon (> v_1)");
  p_cmd->add_option("--a-lift", p_lift,
                    "evaluate p(u, a+n, b): n extra derivative lifts");
  p_cmd->add_option("--at", p_at, "single evaluation point");
  p_cmd->add_option("--grid", p_grid, "evaluation grid A:B:N");
  p_cmd->add_flag("--discontinuities", p_disc,
                  "emit discontinuity candidates with measured jumps (JSON)");
  p_cmd->add_option("--laplace-check", p_laplace_s,
                    "verify the Laplace transform at s (Re s > 0)");
  p_cmd->add_flag("--json", p_json, "JSON output for values");

  // --- asym ---
  auto* a_cmd = app.add_subcommand(
      "asym", "asymptotic expansions: partial sums and term magnitudes");
  ParamsSource a_src;
  Tolerances a_tol;
  OutputTarget a_out;
  std::string a_side = "p";
  double a_u = 10.0;
  int a_N = 4;
  a_src.add_to(a_cmd);
  a_tol.add_to(a_cmd);
  a_out.add_to(a_cmd);
  a_cmd->add_option("--side", a_side, "which expansion: p or q")
      ->check(CLI::IsMember({"p", "q"}));
  a_cmd->add_option("--u", a_u, "evaluation point");
  a_cmd->add_option("--N", a_N, "number of terms");

  // --- adjoint ---
  auto* ad_cmd = app.add_subcommand(
      "adjoint", "adjoint-relation constant A and the u p q limits");
  ParamsSource ad_src;
  Tolerances ad_tol;
  OutputTarget ad_out;
  std::string ad_grid = "3:8:6";
  bool ad_bypass = false;
  double ad_ularge = 60.0;
  ad_src.add_to(ad_cmd);
  ad_tol.add_to(ad_cmd);
  ad_out.add_to(ad_cmd);
  ad_cmd->add_option("--grid", ad_grid, "grid A:B:N (entries > v_m)");
  ad_cmd->add_flag("--bypass-normalization", ad_bypass,
                   "pair the raw p(u,a,b) (required when beta is a "
                   "non-negative integer)");
  ad_cmd->add_option("--u-large", ad_ularge, "evaluation point for the "
                     "u -> infinity limit");

  // --- oscillate ---
  auto* o_cmd = app.add_subcommand(
      "oscillate", "forward-extension lab for (uq)' = kq(u) - kq(u+1)");
  Tolerances o_tol;
  OutputTarget o_out;
  double o_kappa = 1.0, o_T = 5.0;
  std::string o_seed = "bump";
  int o_degree = 8, o_steps = 10;
  bool o_csv = false;
  o_tol.add_to(o_cmd);
  o_out.add_to(o_cmd);
  o_cmd->add_option("--kappa", o_kappa, "kappa > 0");
  o_cmd->add_option("--T", o_T, "seed interval [T, T+1]");
  o_cmd->add_option("--seed", o_seed, "bump | fit-qstar")
      ->check(CLI::IsMember({"bump", "fit-qstar"}));
  o_cmd->add_option("--degree", o_degree, "fit degree for fit-qstar");
  o_cmd->add_option("--steps", o_steps, "forward steps (>= 1)");
  o_cmd->add_flag("--csv", o_csv,
                  "emit (u, q) samples as CSV (report goes to stderr)");

  // --- special ---
  auto* s_cmd = app.add_subcommand(
      "special", "scalar special functions (debugging aid)");
  s_cmd->require_subcommand(1);
  auto* s_ein = s_cmd->add_subcommand("ein", "entire exponential integral");
  std::string s_ein_z;
  s_ein->add_option("--z", s_ein_z, "argument (re or re+imi)")->required();
  auto* s_gamma = s_cmd->add_subcommand("gamma", "complex Gamma");
  std::string s_gamma_z;
  s_gamma->add_option("--z", s_gamma_z, "argument")->required();
  auto* s_qn = s_cmd->add_subcommand("qn", "Q_n polynomial values");
  ParamsSource s_qn_src;
  double s_qn_u = 0.0;
  int s_qn_n = 1, s_qn_sign = 1;
  s_qn_src.add_to(s_qn);
  s_qn->add_option("--u", s_qn_u, "argument");
  s_qn->add_option("--N", s_qn_n, "order");
  s_qn->add_option("--sign", s_qn_sign, "+1 for Q_n(u,b), -1 for Q_n(u,-b)")
      ->check(CLI::IsMember({1, -1}));

  // --- check-all ---
  auto* c_cmd = app.add_subcommand(
      "check-all", "run the acceptance suite (line-per-check JSON stream)");
  int c_criterion = 0;
  c_cmd->add_option("--criterion", c_criterion,
                    "run a single criterion (1-12); default all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints usage or the help text
    return code == 0 ? 0 : 2;
  }

  if (q_cmd->parsed()) {
    ecdde::DdeParams params = q_src.resolve();
    ecdde::QuadratureConfig cfg = q_tol.config();
    std::vector<double> grid;
    if (q_u && !q_grid.empty())
      throw ecdde::ValidationError("--u and --grid are mutually exclusive");
    if (q_u)
      grid.push_back(*q_u);
    else if (!q_grid.empty())
      grid = parse_grid(q_grid);
    else
      throw ecdde::ValidationError("qstar needs --u or --grid");
    std::ostream& os = q_out.stream();
    if (q_json) {
      json arr = json::array();
      for (double u : grid) {
        ecdde::QstarValue v = ecdde::qstar(params, u, cfg);
        arr.push_back({{"u", u},
                       {"value", complex_json(v.value)},
                       {"est_error", v.est_error},
                       {"representation", ecdde::to_string(v.representation_used)}});
      }
      os << arr.dump(2) << "\n";
    } else {
      os << "u,re,im,est_error,representation\n";
      os.precision(15);
      for (double u : grid) {
        ecdde::QstarValue v = ecdde::qstar(params, u, cfg);
        os << u << ',' << v.value.real() << ',' << v.value.imag() << ','
           << v.est_error << ',' << ecdde::to_string(v.representation_used)
           << "\n";
      }
    }
    return 0;
  }

  if (p_cmd->parsed()) {
    ecdde::DdeParams params = p_src.resolve();
    if (p_lift < 0)
      throw ecdde::ValidationError("--a-lift must be >= 0");
    if (p_lift > 0) {
      std::vector<Complex> alphas = params.alphas;
      alphas[0] += double(p_lift);
      params = ecdde::make_params(alphas, params.shifts);
    }
    ecdde::QuadratureConfig cfg = p_tol.config();
    ecdde::PFunction p(params, p_U, cfg);
    std::ostream& os = p_out.stream();
    os.precision(15);

    if (p_disc) {
      json arr = json::array();
      for (const auto& rep : ecdde::discontinuities(params, p_U)) {
        const char* kind = "none";
        switch (rep.kind) {
          case ecdde::DiscontinuityKind::algebraic_blowup:
            kind = "algebraic_blowup";
            break;
          case ecdde::DiscontinuityKind::bounded_oscillatory:
            kind = "bounded_oscillatory";
            break;
          case ecdde::DiscontinuityKind::finite_jump:
            kind = "finite_jump";
            break;
          case ecdde::DiscontinuityKind::none:
            kind = "none";
            break;
        }
        json entry = {{"location", rep.location},
                      {"n", rep.n},
                      {"j", rep.j},
                      {"kind", kind},
                      {"local_exponent", complex_json(rep.local_exponent)},
                      {"predicted_coefficient",
                       complex_json(rep.predicted_coefficient)}};
        // Finite-jump candidates may cancel; report the measured size.
        if (rep.kind == ecdde::DiscontinuityKind::finite_jump &&
            rep.location > 0.0 && rep.location < p_U) {
          Complex measured = ecdde::jump_at(p, rep.location);
          entry["measured_jump"] = complex_json(measured);
          entry["cancelled"] = std::abs(measured) <= 1e-8;
        }
        arr.push_back(entry);
      }
      os << arr.dump(2) << "\n";
      return 0;
    }
    if (!p_laplace_s.empty()) {
      Complex s = parse_complex(p_laplace_s);
      ecdde::LaplaceCheck chk =
          ecdde::p_laplace_check(params, s, p.base(), cfg);
      json j = {{"s", complex_json(s)},
                {"lhs", complex_json(chk.lhs)},
                {"rhs", complex_json(chk.rhs)},
                {"dev", chk.dev},
                {"tail_estimate", chk.tail_estimate}};
      os << j.dump(2) << "\n";
      return 0;
    }

    std::vector<double> grid;
    if (p_at && !p_grid.empty())
      throw ecdde::ValidationError("--at and --grid are mutually exclusive");
    if (p_at)
      grid.push_back(*p_at);
    else if (!p_grid.empty())
      grid = parse_grid(p_grid);
    else
      throw ecdde::ValidationError(
          "pfun needs --at, --grid, --discontinuities or --laplace-check");
    if (p_json) {
      json arr = json::array();
      for (double u : grid) {
        Complex v = p(u);
        arr.push_back({{"u", u},
                       {"value", complex_json(v)},
                       {"c0_scaled", complex_json(v / params.c0)}});
      }
      os << arr.dump(2) << "\n";
    } else {
      // c0-scaled columns make the classical normalizations visible
      // (dickman: p/C0 = rho; buchstab: p/C0 = u-scaled omega form).
      os << "u,re,im,scaled_re,scaled_im,panel_index\n";
      for (double u : grid) {
        Complex v = p(u);
        Complex scaled = v / params.c0;
        os << u << ',' << v.real() << ',' << v.imag() << ','
           << scaled.real() << ',' << scaled.imag() << ','
           << p.base().locate(u) << "\n";
      }
    }
    return 0;
  }

  if (a_cmd->parsed()) {
    ecdde::DdeParams params = a_src.resolve();
    if (a_N < 1) throw ecdde::ValidationError("--N must be >= 1");
    std::ostream& os = a_out.stream();
    os.precision(15);
    os << "n,term_re,term_im,term_abs,partial_re,partial_im\n";
    if (a_side == "p") {
      ecdde::AsymptoticSeries s = ecdde::p_series(params, a_N);
      Complex partial = 0.0;
      for (int n = 0; n < a_N; ++n) {
        Complex term = s.term(a_u, n);
        partial += term;
        os << n << ',' << term.real() << ',' << term.imag() << ','
           << std::abs(term) << ',' << partial.real() << ','
           << partial.imag() << "\n";
      }
    } else {
      Complex partial = 0.0;
      for (int n = 0; n < a_N; ++n) {
        Complex term = ecdde::q_series_term(params, a_u, n);
        partial += term;
        os << n << ',' << term.real() << ',' << term.imag() << ','
           << std::abs(term) << ',' << partial.real() << ','
           << partial.imag() << "\n";
      }
    }
    return 0;
  }

  if (ad_cmd->parsed()) {
    ecdde::DdeParams params = ad_src.resolve();
    ecdde::QuadratureConfig cfg = ad_tol.config();
    std::vector<double> grid = parse_grid(ad_grid);
    ecdde::AdjointReport rep =
        ecdde::adjoint_constant(params, grid, cfg, ad_bypass);
    json j;
    j["grid"] = rep.grid;
    json est = json::array();
    for (const Complex& a : rep.A_estimates) est.push_back(complex_json(a));
    j["A_estimates"] = est;
    j["A_mean"] = complex_json(rep.A_mean);
    j["max_dev"] = rep.max_dev;
    j["bypassed_normalization"] = rep.bypassed_normalization;
    if (!ad_bypass) {
      try {
        ecdde::UpqLimits limits = ecdde::upq_limits(params, cfg, ad_ularge);
        j["upq_limits"] = {
            {"limit_zero", complex_json(limits.limit_zero)},
            {"zero_covered", limits.zero_covered},
            {"limit_inf", complex_json(limits.limit_inf)},
            {"limit_inf_richardson",
             complex_json(limits.limit_inf_richardson)},
            {"u_large", limits.u_large}};
      } catch (const ecdde::DomainError& e) {
        j["upq_limits"] = {{"error", e.what()}};
      }
    }
    ad_out.stream() << j.dump(2) << "\n";
    return 0;
  }

  if (o_cmd->parsed()) {
    ecdde::QuadratureConfig cfg = o_tol.config();
    ecdde::PiecewisePoly seed;
    double fit_err = 0.0;
    if (o_seed == "bump") {
      seed = ecdde::bump_seed(o_T);
    } else {
      auto fitted = ecdde::fit_qstar_seed(ecdde::preset("iwaniec", o_kappa),
                                          o_T, o_degree, cfg);
      seed = fitted.first;
      fit_err = fitted.second;
    }
    ecdde::PiecewisePoly ext = ecdde::forward_extend(o_kappa, seed, o_steps);
    ecdde::OscillationReport rep =
        ecdde::analyze_intervals(ext, o_T + 1.0, ext.support_hi());
    json j;
    j["t0"] = rep.t0;
    j["max_abs"] = rep.max_abs;
    j["sign_changes"] = rep.sign_change_counts;
    j["log_max_abs"] = rep.log_max_abs;
    j["first_sign_change_interval"] = rep.first_sign_change_interval;
    if (o_seed == "fit-qstar") j["fit_error"] = fit_err;
    if (o_csv) {
      std::ostream& os = o_out.stream();
      os.precision(15);
      os << "u,q\n";
      double lo = ext.support_lo(), hi = ext.support_hi();
      int n = int((hi - lo) * 64);
      for (int i = 0; i <= n; ++i) {
        double u = lo + (hi - lo) * double(i) / n;
        os << u << ',' << ext.eval(u) << "\n";
      }
      std::cerr << j.dump() << "\n";
    } else {
      o_out.stream() << j.dump(2) << "\n";
    }
    return 0;
  }

  if (s_cmd->parsed()) {
    std::cout.precision(16);
    if (s_ein->parsed()) {
      Complex v = ecdde::ein(parse_complex(s_ein_z));
      std::cout << json{{"ein", complex_json(v)}}.dump() << "\n";
    } else if (s_gamma->parsed()) {
      Complex v = ecdde::gamma_c(parse_complex(s_gamma_z));
      std::cout << json{{"gamma", complex_json(v)}}.dump() << "\n";
    } else if (s_qn->parsed()) {
      ecdde::DdeParams params = s_qn_src.resolve();
      Complex v = ecdde::qn_value(params, s_qn_u, s_qn_n, s_qn_sign);
      std::cout << json{{"qn", complex_json(v)},
                        {"n", s_qn_n},
                        {"sign", s_qn_sign}}
                       .dump()
                << "\n";
    }
    return 0;
  }

  if (c_cmd->parsed()) {
    if (c_criterion < 0 || c_criterion > 12)
      throw ecdde::ValidationError("check-all: criterion must be 1..12");
    auto results = ecdde::run_acceptance(c_criterion);
    for (const auto& r : results)
      std::cout << ecdde::to_json_line(r) << "\n";
    return ecdde::all_passed(results) ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const ecdde::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const ecdde::AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what()
              << " (best estimate " << e.best_estimate.real();
    if (e.best_estimate.imag() != 0.0)
      std::cerr << (e.best_estimate.imag() < 0 ? "" : "+")
                << e.best_estimate.imag() << "i";
    std::cerr << ", est error " << e.est_error << ")\n";
    return 3;
  } catch (const ecdde::OverflowError& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return 3;
  } catch (const ecdde::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
