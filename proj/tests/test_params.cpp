#include <doctest.h>

#include <cmath>
#include <random>

#include "ecdde/params.hpp"
#include "ecdde/special.hpp"

using namespace ecdde;

TEST_SUITE_BEGIN("params");

TEST_CASE("derived quantities for the worked examples") {
  DdeParams d = make_params({Complex(-1.0), Complex(1.0)}, {0.0, 1.0});
  CHECK(d.beta == Complex(0.0));
  CHECK(d.a == Complex(0.0));
  CHECK(std::abs(d.c0 - 0.5614594835668852) < 1e-12);

  DdeParams b = make_params({Complex(0.0), Complex(-1.0)}, {0.0, 1.0});
  CHECK(b.beta == Complex(-1.0));
  CHECK(b.a == Complex(1.0));
  // (v_1 e^gamma)^{+1} = e^gamma, to >= 12 significant digits.
  CHECK(std::abs(b.c0 - 1.7810724179901980) <= 1e-12 * 1.79);

  DdeParams w = make_params({Complex(1.0), Complex(1.0), Complex(-2.0)},
                            {0.0, 1.0, 2.0});
  CHECK(w.beta == Complex(0.0));
  CHECK(w.a == Complex(2.0));
  CHECK(std::abs(w.c0 - 4.0 * 1.7810724179901980) < 1e-11);
}

TEST_CASE("validation failures") {
  CHECK_THROWS_AS(make_params({}, {}), ValidationError);
  CHECK_THROWS_AS(make_params({Complex(1.0)}, {0.0}), ValidationError);
  CHECK_THROWS_AS(make_params({Complex(1.0), Complex(1.0)}, {0.5, 1.0}),
                  ValidationError);
  CHECK_THROWS_AS(
      make_params({Complex(1.0), Complex(1.0), Complex(1.0)}, {0.0, 2.0, 1.0}),
      ValidationError);
  CHECK_THROWS_AS(make_params({Complex(1.0), Complex(0.0)}, {0.0, 1.0}),
                  ValidationError);
  CHECK_THROWS_AS(make_params({Complex(1.0), Complex(1.0)}, {0.0}),
                  ValidationError);
  // The offending index is named.
  try {
    make_params({Complex(1.0), Complex(1.0), Complex(1.0)}, {0.0, 2.0, 2.0});
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("presets") {
  DdeParams q1 = preset("iwaniec", 1.0);
  CHECK(q1.alphas[0] == Complex(0.0));
  CHECK(q1.alphas[1] == Complex(-1.0));
  CHECK(q1.beta == Complex(-1.0));

  DdeParams d = preset("dickman");
  CHECK(d.a == Complex(0.0));
  CHECK(d.alphas[0] == Complex(-1.0));
  CHECK(d.alphas[1] == Complex(1.0));

  CHECK(preset("q1").alphas == preset("iwaniec", 1.0).alphas);
  CHECK(preset("buchstab").alphas == preset("iwaniec", 1.0).alphas);

  CHECK_THROWS_AS(preset("iwaniec", 0.0), ValidationError);
  CHECK_THROWS_AS(preset("iwaniec", -2.0), ValidationError);
  CHECK_THROWS_AS(preset("nope"), ValidationError);
}

TEST_CASE("make_params is idempotent on its own fields") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> re(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    int m = 1 + int(rng() % 3);
    std::vector<double> shifts{0.0};
    double v = 0.0;
    for (int j = 0; j < m; ++j) {
      v += 0.25 + std::abs(re(rng));
      shifts.push_back(v);
    }
    std::vector<Complex> alphas{Complex(re(rng), re(rng))};
    for (int j = 0; j < m; ++j) {
      Complex a(re(rng), re(rng));
      if (std::abs(a) < 1e-3) a = Complex(1.0, -0.5);
      alphas.push_back(a);
    }
    DdeParams p = make_params(alphas, shifts);
    DdeParams p2 = make_params(p.alphas, p.shifts);
    CHECK(p2.beta == p.beta);
    CHECK(p2.a == p.a);
    CHECK(p2.c0 == p.c0);
  }
}

TEST_CASE("json round trip") {
  DdeParams p = make_params({Complex(0.5, -1.0), Complex(-1.5, 0.25),
                             Complex(2.0, 0.0)},
                            {0.0, 0.5, 1.75});
  DdeParams q = params_from_json_string(to_json_string(p));
  CHECK(q.alphas == p.alphas);
  CHECK(q.shifts == p.shifts);
  CHECK(q.beta == p.beta);

  DdeParams r = params_from_json_string(
      R"({"alphas":[[-1,0],[1,0]],"shifts":[0,1]})");
  CHECK(r.a == Complex(0.0));
  CHECK_THROWS_AS(params_from_json_string("{"), ValidationError);
  CHECK_THROWS_AS(params_from_json_string(R"({"alphas":[[1,0]]})"),
                  ValidationError);
}

TEST_SUITE_END();
