#include <doctest.h>

#include <sstream>

#include "ffdet/experiment.hpp"

using namespace ffdet;

TEST_CASE("config text round trip") {
  const auto c = parse_config(
      "# grid\n"
      "primes = 5, 7\n"
      "deltas=1,2,3\n"
      "ns=1,2\n"
      "shape=dense\n"
      "seeds=3,4\n"
      "budget=1000000\n"
      "mode=brute\n");
  CHECK(c.primes == std::vector<uint32_t>{5, 7});
  CHECK(c.deltas == std::vector<int>{1, 2, 3});
  CHECK(c.shape == CurveShape::dense);
  CHECK(c.mode == EnumMode::brute);
  CHECK(c.budget == 1000000);
  CHECK(parse_config(format_config(c)) == c);
  CHECK(parse_config("") == ExperimentConfig{});
}

TEST_CASE("config errors name the line") {
  try {
    parse_config("primes=5\nns=1,x\n");
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS(parse_config("colour=blue\n"));
  CHECK_THROWS(parse_config("primes\n"));
  ExperimentConfig big;
  big.primes = {7};
  big.ns = {6};
  big.budget = 1000;
  CHECK_FALSE(config_problems(big).empty());
  ExperimentConfig bad;
  bad.primes = {4};
  CHECK_FALSE(config_problems(bad).empty());
  CHECK(config_problems(ExperimentConfig{}).empty());
}

TEST_CASE("grid curves") {
  const FieldDesc f = FieldDesc::make(5, 1);
  const auto g = grid_curve(f, 2, CurveShape::weierstrass, 1, true);
  REQUIRE(g);
  CHECK(g->first.flagged_irreducible());
  CHECK((g->second - 1) % kSeedStride == 0);
  CHECK(grid_curve(f, 2, CurveShape::weierstrass, 1, true)->first.f == g->first.f);
}

TEST_CASE("count grid is deterministic") {
  ExperimentConfig c;
  c.primes = {3, 5};
  c.deltas = {1, 2};
  c.ns = {1, 2};
  const auto par = run_count_grid(c, true);
  const auto ser = run_count_grid(c, false);
  CHECK(rows_to_csv(par, false) == rows_to_csv(ser, false));
  CHECK(rows_to_json(par, false) == rows_to_json(ser, false));
  // 2 primes x 2 deltas x 2 ns cells, then one summary row per delta
  REQUIRE(par.size() == 10);
  Rational max_line(0), max_conic(0);
  for (const auto& r : par) {
    if (r.kind != "cell") continue;
    CHECK(r.status == "ok");
    CHECK(Rational(static_cast<int64_t>(r.count), r.bound_value) == r.fitted_C);
    if (r.delta == 1) {
      CHECK(r.count == r.trivial_value);
      CHECK(r.fitted_C == Rational(1, r.n * r.n));
      max_line = std::max(max_line, r.fitted_C);
    } else {
      max_conic = std::max(max_conic, r.fitted_C);
    }
  }
  CHECK(par[8].kind == "summary");
  CHECK(par[8].fitted_C == max_line);
  CHECK(par[9].fitted_C == max_conic);

  const std::string csv = rows_to_csv(par, true);
  CHECK(csv.rfind("kind,p,a,q,delta,shape,seed,curve,n,count,bound_value,fitted_C,fitted_C_float,trivial_value,status,elapsed_ms\n", 0) == 0);
  std::istringstream in(csv);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 11);
}

TEST_CASE("budget exhaustion is reported per cell") {
  ExperimentConfig c;
  c.primes = {7};
  c.deltas = {3};
  c.ns = {3};
  c.budget = 343;
  c.shape = CurveShape::dense;
  const auto rows = run_count_grid(c, false);
  CHECK(rows[0].status == "budget_exceeded");
}

TEST_CASE("hilbert audit") {
  const auto rows = run_audit(5, 15);
  CHECK(rows.size() == 2 + 3 + 4 + 5 + 6);
  for (const auto& r : rows) {
    CHECK(r.hf_mismatches == 0);
    CHECK(r.sigma_residual == 0);
    CHECK(r.salberger_ok);
    CHECK(r.a[0] + r.a[1] + r.a[2] == Rational(1));
    CHECK(r.hf.size() == 16);
  }
  CHECK(audit_to_csv(rows) == audit_to_csv(run_audit(5, 15)));
  CHECK_THROWS(run_audit(7, 20));
  CHECK_THROWS(run_audit(5, 6));
}

TEST_CASE("bounds json") {
  BoundInputs in;
  in.q = 7;
  in.n = 3;
  in.delta = 2;
  const auto j = bounds_to_json(bound_formulas(in));
  CHECK(j.contains("inputs"));
  CHECK(j.dump().find("main") != std::string::npos);
}
