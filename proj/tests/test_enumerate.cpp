#include <doctest.h>

#include <algorithm>

#include "ffdet/enumerate.hpp"

using namespace ffdet;

namespace {

std::vector<uint32_t> padded(const PolyT& a, int n) {
  std::vector<uint32_t> v(n, 0);
  for (int i = 0; i < a.size(); ++i) v[i] = a.coeff(i).v;
  return v;
}

// Oracle: every pair in F_q[t]_n^2, filtered by direct evaluation.
std::vector<Point> oracle_points(const PlaneCurve& c, int n) {
  const uint64_t qn = ipow(c.field.order(), n);
  std::vector<Point> out;
  for (uint64_t i = 0; i < qn; ++i) {
    const PolyT x = PolyT::from_index(c.field, i, n);
    for (uint64_t j = 0; j < qn; ++j) {
      const PolyT y = PolyT::from_index(c.field, j, n);
      if (c.f.eval(x, y).is_zero()) out.emplace_back(x, y);
    }
  }
  std::sort(out.begin(), out.end(), [n](const Point& a, const Point& b) {
    const auto ka = std::pair(padded(a.first, n), padded(a.second, n));
    const auto kb = std::pair(padded(b.first, n), padded(b.second, n));
    return ka < kb;
  });
  return out;
}

PlaneCurve curve(const char* s) { return curve_from_spec(s, false); }

}  // namespace

TEST_CASE("modes agree with the direct oracle") {
  const char* specs[] = {
      "p=3;a=1;f=y - x^2 - t",
      "p=3;a=1;f=y^2 - x^3 - t*x - 1",
      "p=5;a=1;f=y^2 - x",
      "p=5;a=1;f=x*y - t",
      "p=5;a=1;f=y^2 - t^2*x^2 - t^3",
      "p=2;a=2;f=y^2 + x*y + x^3 + z",
      "p=5;a=1;f=(y - x)^2 - t^2",
  };
  for (const char* s : specs) {
    const auto c = curve(s);
    for (int n = 1; n <= 2; ++n) {
      CAPTURE(s);
      CAPTURE(n);
      const auto want = oracle_points(c, n);
      for (auto mode : {EnumMode::brute, EnumMode::hensel})
        for (bool par : {false, true}) {
          EnumOptions o;
          o.mode = mode;
          o.parallel = par;
          CHECK(enumerate_points(c, n, o) == want);
        }
      CHECK(enumerate_naive(c, n) == want);
    }
  }
}

TEST_CASE("lines have q^n points") {
  for (const char* s : {"p=5;a=1;f=y - 2*x - 3", "p=7;a=1;f=y - x", "p=3;a=2;f=y + z*x + 1"}) {
    const auto c = curve(s);
    for (int n = 1; n <= 3; ++n) CHECK(enumerate_points(c, n).size() == ipow(c.field.order(), n));
  }
}

TEST_CASE("budget") {
  const auto c = curve("p=7;a=1;f=y^2 - x^3 - 1");
  EnumOptions o;
  o.budget = 10;
  CHECK_THROWS_AS(enumerate_points(c, 3, o), BudgetExceeded);
  CHECK_THROWS_AS(enumerate_naive(c, 3, 100), BudgetExceeded);
}

TEST_CASE("count report") {
  const auto c = curve("p=5;a=1;f=y - x");
  const auto r = count_vs_bounds(c, 2, {}, true);
  CHECK(r.count == 25);
  CHECK(r.bound_value == 4 * 25);
  CHECK(r.fitted_C == Rational(1, 4));
  CHECK(r.trivial_value == 25);
  REQUIRE(r.points);
  CHECK(r.points->size() == 25);
}

TEST_CASE("random curves") {
  const FieldDesc f = FieldDesc::make(5, 1);
  for (int d = 1; d <= 4; ++d)
    for (auto shape : {CurveShape::weierstrass, CurveShape::dense}) {
      const auto a = random_curve(f, d, shape, 42);
      const auto b = random_curve(f, d, shape, 42);
      CHECK(a.f == b.f);
      CHECK(a.delta == d);
      CHECK(a.irreducibility_checked);
    }
  CHECK(parse_curve_shape("dense") == CurveShape::dense);
  CHECK(to_string(EnumMode::brute) == "brute");
  CHECK_THROWS(parse_enum_mode("fast"));
}

TEST_CASE("random lines are graphs over F_q[t]_n") {
  const FieldDesc f = FieldDesc::make(7, 1);
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const auto c = random_curve(f, 1, CurveShape::weierstrass, seed);
    for (int n = 1; n <= 3; ++n) CHECK(enumerate_points(c, n).size() == ipow(7, n));
  }
}

TEST_CASE("a line with a sloped t-coefficient loses points") {
  const auto c = curve("p=5;a=1;f=y - 2*x - t");
  CHECK(enumerate_points(c, 1).empty());
  CHECK(enumerate_points(c, 2).size() == 25);
}
