#include <doctest.h>

#include <random>
#include <set>

#include "ffdet/trcheck.hpp"

using namespace ffdet;

namespace {

LaurentApprox C(const FieldDesc& f, uint32_t c) { return LaurentApprox::constant(f, FqElem{c}); }
LaurentApprox T(const FieldDesc& f, uint32_t c, int64_t k) { return LaurentApprox::monomial(f, FqElem{c}, k); }

// Univariate polynomial chart sum a_i x^i on the ball (center, radius).
SeriesChart poly_chart(const FieldDesc& f, const std::map<int, LaurentApprox>& a, const LaurentApprox& center, int64_t radius) {
  SeriesChart c;
  c.field = f;
  c.arity = 1;
  c.origin = {LaurentApprox::zero(f)};
  c.domain = {Ball{center, radius}};
  SeriesComponent comp;
  for (const auto& [i, v] : a) {
    comp.emplace(Exponent{i}, v);
    c.degree_cap = std::max(c.degree_cap, i);
  }
  c.components.push_back(comp);
  return c;
}

LaurentApprox random_unit(const FieldDesc& f, std::mt19937_64& rng, int len) {
  std::vector<FqElem> d(len);
  for (auto& x : d) x = FqElem{static_cast<uint32_t>(rng() % f.order())};
  d[0] = FqElem{static_cast<uint32_t>(1 + rng() % (f.order() - 1))};
  return LaurentApprox(f, 0, d);
}

}  // namespace

TEST_CASE("taylor sections") {
  const FieldDesc f = FieldDesc::make(5, 1);
  const auto sq = poly_chart(f, {{2, C(f, 1)}}, C(f, 1), 1);
  const LaurentApprox y = C(f, 1) + T(f, 2, 1);
  const auto sec = taylor_section(sq, {y}, 2);
  CHECK(sec[0].at(Exponent{0}).agrees_with(y * y));
  CHECK(sec[0].at(Exponent{1}).agrees_with(y.scaled(FqElem{2})));

  // x^3 over F_3 at y = 1: Hasse coefficients (1, 0, 0)
  const FieldDesc f3 = FieldDesc::make(3, 1);
  const auto cube = poly_chart(f3, {{3, C(f3, 1)}}, C(f3, 1), 1);
  const auto s3 = taylor_section(cube, {C(f3, 1)}, 3);
  CHECK(s3[0].size() == 1);
  CHECK(s3[0].at(Exponent{0}).agrees_with(C(f3, 1)));

  // a polynomial of degree < r is its own section
  const auto lin = poly_chart(f, {{0, C(f, 3)}, {1, T(f, 1, 2)}}, C(f, 0), 0);
  const LaurentApprox x = T(f, 1, 1), y0 = T(f, 4, 3);
  const auto fx = evaluate(lin, {x});
  const auto tx = evaluate_section(taylor_section(lin, {y0}, 3), {y0}, {x}, lin.precision);
  CHECK((fx[0] - tx[0]).known_zero());

  auto capped = sq;
  capped.truncated = true;
  capped.degree_cap = 2;
  CHECK_THROWS_AS(taylor_section(capped, {y}, 5), std::invalid_argument);
}

TEST_CASE("bundled polynomial charts") {
  const FieldDesc f = FieldDesc::make(5, 1);
  const auto sq = poly_chart(f, {{2, C(f, 1)}}, C(f, 1), 1);
  const auto v2 = check_Tr(sq, 2, 60, 1);
  CHECK(v2.verdict == Verdict::pass);
  CHECK(v2.equality == v2.samples);
  CHECK(v2.min_excess == 0);

  const auto cube = poly_chart(f, {{3, C(f, 1)}}, C(f, 1), 1);
  CHECK(check_Tr(cube, 3, 60, 2).equality == 60);
  // (x - y)^2 (x + 2y) with x + 2y a unit on 1 + M
  const auto c2 = check_Tr(cube, 2, 60, 3);
  CHECK(c2.verdict == Verdict::pass);
  CHECK(c2.equality == c2.samples);

  const auto bad = poly_chart(f, {{2, T(f, 1, -1)}}, C(f, 1), 1);
  const auto vb = check_Tr(bad, 2, 40, 4);
  CHECK(vb.verdict == Verdict::fail);
  CHECK(vb.passed == 0);
  CHECK(static_cast<int>(vb.violations.size()) + vb.inconclusive == vb.samples);
  CHECK(vb.violations[0].ord_diff == vb.violations[0].need - 1);
}

TEST_CASE("nesting on shared samples") {
  const FieldDesc f = FieldDesc::make(7, 1);
  std::mt19937_64 rng(31);
  for (int it = 0; it < 10; ++it) {
    std::map<int, LaurentApprox> a;
    for (int i = 0; i <= 4; ++i) a.emplace(i, random_unit(f, rng, 3).shifted(static_cast<int64_t>(rng() % 3)));
    const auto ch = poly_chart(f, a, C(f, 1), 1);
    for (int r = 1; r <= 4; ++r) {
      const auto samples = sample_pairs(ch, r + 1, 30, it);
      const auto hi = check_Tr_on(ch, r + 1, samples);
      if (hi.verdict != Verdict::pass) continue;
      CHECK(check_Tr_on(ch, r, samples).verdict == Verdict::pass);
    }
  }
}

TEST_CASE("uniqueness of the section") {
  const FieldDesc f = FieldDesc::make(5, 1);
  const auto cube = poly_chart(f, {{3, C(f, 1)}, {1, C(f, 2)}}, C(f, 1), 1);
  const auto samples = sample_pairs(cube, 3, 20, 7);
  for (int deg = 0; deg < 3; ++deg) {
    bool broke = false;
    for (const auto& s : samples) {
      auto sec = taylor_section(cube, s.y, 3);
      auto& slot = sec[0][Exponent{deg}];
      slot = slot + C(f, 1);
      const auto d = evaluate(cube, s.x)[0] - evaluate_section(sec, s.y, s.x, cube.precision)[0];
      if (d.val() < 3 * s.k) broke = true;
    }
    CHECK(broke);
  }
}

TEST_CASE("precision exhaustion is inconclusive") {
  const FieldDesc f = FieldDesc::make(5, 1);
  auto sq = poly_chart(f, {{2, C(f, 1)}}, C(f, 1), 1);
  sq.precision = 8;
  sq.guard = 4;
  // 2k <= 4 only for k <= 2
  const auto s = sample_pairs(sq, 2, 10, 1);
  for (const auto& p : s) CHECK(p.k <= 2);
  sq.precision = 5;
  CHECK(check_Tr(sq, 2, 10, 1).verdict == Verdict::inconclusive);
  // a tail that swamps the working precision
  auto tail = sq;
  tail.precision = 24;
  tail.truncated = true;
  tail.degree_cap = 2;
  tail.tail_val = 0;
  const auto v = check_Tr(tail, 2, 20, 1);
  CHECK(v.verdict != Verdict::pass);
  CHECK(v.verdict != Verdict::fail);
}

TEST_CASE("coset selector") {
  const FieldDesc f = FieldDesc::make(7, 1);
  const auto sel = coset_selector(f, 3);
  CHECK(sel.ell == 3);
  REQUIRE(sel.reps.size() == 3);
  CHECK(sel.reps[0] == f.one());
  // reps lie in distinct cosets of the cubes
  std::set<uint32_t> cosets;
  for (auto d : sel.reps) cosets.insert(f.log(d) % 3);
  CHECK(cosets.size() == 3);
  // x -> x^3 is a bijection from each block onto the cubes
  for (uint32_t b = 0; b < 3; ++b) {
    std::set<uint32_t> img;
    for (uint32_t v = 1; v < 7; ++v)
      if (sel.block(FqElem{v}) == b) img.insert(f.pow(FqElem{v}, 3).v);
    CHECK(img.size() == 2);
  }
  CHECK(coset_selector(FieldDesc::make(5, 1), 3).ell == 1);
  CHECK_THROWS(sel.xi(FqElem{0}));
}

TEST_CASE("power maps cover the punctured residue classes") {
  for (auto [p, r] : {std::pair{5u, 3}, {7u, 3}, {7u, 2}}) {
    const FieldDesc f = FieldDesc::make(p, 1);
    const auto sel = coset_selector(f, r);
    const uint32_t q = f.order();
    std::set<std::vector<uint32_t>> hit;
    for (uint32_t a0 = 1; a0 < q; ++a0)
      for (uint32_t a1 = 0; a1 < q; ++a1)
        for (uint32_t a2 = 0; a2 < q; ++a2) {
          const LaurentApprox x(f, 0, {FqElem{a0}, FqElem{a1}, FqElem{a2}});
          for (int j = 0; j < r; ++j) {
            const auto y = power_map(sel, j, x);
            std::vector<uint32_t> key;
            for (int i = 0; i < r; ++i) key.push_back(y.coeff(i).v);
            hit.insert(key);
          }
        }
    // every nonzero class mod t^r is hit
    uint64_t nonzero = 1;
    for (int i = 0; i < r; ++i) nonzero *= q;
    CHECK(hit.size() == nonzero - 1);
  }
}

TEST_CASE("precomposition with power maps") {
  const FieldDesc f = FieldDesc::make(5, 1);
  // identity o x^3 is x^3
  const auto id = identity_chart(f, Ball{LaurentApprox::zero(f), 0});
  const auto cube = power_precompose(id, 3, 0, f.one(), Ball{LaurentApprox::zero(f), 0});
  REQUIRE(cube.components[0].size() == 1);
  CHECK(cube.components[0].count(Exponent{3}) == 1);

  // identity on b(1 + M) composed with d x^2 around b'
  const LaurentApprox bp = C(f, 2) + T(f, 1, 1);
  const auto sel = coset_selector(f, 2);
  const FqElem d = sel.xi(bp.ac());
  const LaurentApprox b = (bp * bp).scaled(d);
  const auto idb = identity_chart(f, Ball{b, 1});
  const auto comp = power_precompose(idb, 2, 0, d, Ball{bp, 1});
  CHECK(comp.components[0].at(Exponent{2}).agrees_with(C(f, d.v)));
  CHECK(comp.components[0].at(Exponent{1}).agrees_with(bp.scaled(f.mul(d, FqElem{2}))));
  CHECK(check_coeff_bounds(comp, 2, {bp}, false).verdict == Verdict::pass);
  CHECK(check_Tr(comp, 2, 40, 1).verdict == Verdict::pass);

  // image escaping the domain
  CHECK_THROWS_AS(power_precompose(idb, 2, 0, d, Ball{bp, 0}), std::domain_error);
  auto trunc = idb;
  trunc.truncated = true;
  CHECK_THROWS_AS(power_precompose(trunc, 2, 0, d, Ball{bp, 1}), std::invalid_argument);
}

TEST_CASE("multivariate coefficient bound") {
  const FieldDesc f = FieldDesc::make(5, 1);
  SeriesChart c;
  c.field = f;
  c.arity = 2;
  c.origin = {LaurentApprox::zero(f), LaurentApprox::zero(f)};
  c.domain = {Ball{LaurentApprox::zero(f), 0}, Ball{LaurentApprox::zero(f), 0}};
  c.degree_cap = 2;
  c.components = {SeriesComponent{{Exponent{1, 1}, C(f, 1)}}};
  const std::vector<LaurentApprox> bp{T(f, 1, 1), T(f, 3, 2)};
  const auto comp = power_precompose(c, {2, 2}, {0, 0}, {f.one(), f.one()}, {Ball{bp[0], 2}, Ball{bp[1], 3}});
  // (b1 + w1)^2 (b2 + w2)^2 has 9 coefficients
  CHECK(comp.components[0].size() == 9);
  const auto rep = check_coeff_bounds(comp, 2, bp, true);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.checked == 8);
  auto bad = comp;
  bad.components[0][Exponent{1, 0}] = T(f, 1, 0);
  CHECK(check_coeff_bounds(bad, 2, bp, true).verdict == Verdict::fail);
}

TEST_CASE("chart json round trip") {
  const FieldDesc f = FieldDesc::make(3, 2);
  auto c = poly_chart(f, {{2, T(f, 4, -1)}, {0, LaurentApprox(f, 1, {FqElem{2}, FqElem{5}}, 6)}}, C(f, 1), 1);
  c.truncated = true;
  c.tail_val = 3;
  const auto back = chart_from_json(chart_to_json(c));
  CHECK(chart_to_json(back) == chart_to_json(c));
  CHECK(back.components[0].at(Exponent{0}).prec() == 6);
  CHECK(laurent_from_json(f, laurent_to_json(LaurentApprox::zero(f, 4))).prec() == 4);
  CHECK_THROWS(chart_from_json(nlohmann::json{{"field", "6"}}));
}
