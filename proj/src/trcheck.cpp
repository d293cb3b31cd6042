#include "ffdet/trcheck.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ffdet {

namespace {

LaurentApprox one(const FieldDesc& f) { return LaurentApprox::constant(f, f.one()); }

LaurentApprox power_trunc(const LaurentApprox& a, int e, int64_t prec) {
  LaurentApprox r = one(a.field());
  for (int i = 0; i < e; ++i) r = (r * a).truncated(prec);
  return r;
}

std::vector<Exponent> exponents_below(int m, int r) {
  std::vector<Exponent> out;
  for (int d = 0; d < r; ++d)
    for (auto& e : lambda_enumerate(m, d)) out.push_back(std::move(e));
  return out;
}

int64_t min_offset_val(const std::vector<LaurentApprox>& x, const std::vector<LaurentApprox>& o) {
  int64_t v = kInfinity;
  for (size_t i = 0; i < x.size(); ++i) v = std::min(v, (x[i] - o[i]).val_lower_bound());
  return v;
}

// Precision cap implied by an omitted tail starting at total degree deg0.
int64_t tail_cap(const SeriesChart& c, int64_t vmin, int deg0) {
  if (!c.truncated) return kInfinity;
  if (vmin < 0) throw std::domain_error("point outside the convergence box of a truncated chart");
  if (vmin >= kInfinity) return kInfinity;
  return sat_add(c.tail_val, static_cast<int64_t>(deg0) * vmin);
}

std::string point_text(const std::vector<LaurentApprox>& x) {
  std::string s;
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += x[i].to_string();
  }
  return x.size() == 1 ? s : "(" + s + ")";
}

FieldDesc parse_field_text(const std::string& s) {
  const auto pos = s.find('^');
  if (pos == std::string::npos) return FieldDesc::make(static_cast<uint32_t>(std::stoul(s)), 1);
  return FieldDesc::make(static_cast<uint32_t>(std::stoul(s.substr(0, pos))), static_cast<uint32_t>(std::stoul(s.substr(pos + 1))));
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
  }
}

void validate_chart(const SeriesChart& c) {
  if (c.arity < 1) throw std::invalid_argument("chart arity must be positive");
  if (static_cast<int>(c.origin.size()) != c.arity || static_cast<int>(c.domain.size()) != c.arity)
    throw std::invalid_argument("chart origin and domain must match the arity");
  if (c.precision <= c.guard || c.guard < 0) throw std::invalid_argument("chart precision must exceed the guard band");
  for (const auto& comp : c.components)
    for (const auto& [e, a] : comp) {
      if (static_cast<int>(e.size()) != c.arity) throw std::invalid_argument("coefficient exponent has the wrong length");
      if (e.total() > c.degree_cap) throw std::invalid_argument("coefficient degree exceeds the degree cap");
    }
}

bool in_domain(const SeriesChart& c, const std::vector<LaurentApprox>& x) {
  if (static_cast<int>(x.size()) != c.arity) return false;
  for (int i = 0; i < c.arity; ++i)
    if ((x[i] - c.domain[i].center).val_lower_bound() < c.domain[i].radius) return false;
  return true;
}

std::vector<LaurentApprox> evaluate(const SeriesChart& c, const std::vector<LaurentApprox>& x) {
  if (static_cast<int>(x.size()) != c.arity) throw std::invalid_argument("evaluate: wrong point arity");
  std::vector<LaurentApprox> w;
  for (int i = 0; i < c.arity; ++i) w.push_back((x[i] - c.origin[i]).truncated(c.precision));
  const int64_t cap = std::min(c.precision, tail_cap(c, min_offset_val(x, c.origin), c.degree_cap + 1));
  std::vector<LaurentApprox> out;
  for (const auto& comp : c.components) {
    LaurentApprox acc = LaurentApprox::zero(c.field);
    for (const auto& [e, a] : comp) {
      LaurentApprox term = a;
      for (int i = 0; i < c.arity; ++i) term = (term * power_trunc(w[i], e[i], c.precision)).truncated(c.precision);
      acc = (acc + term).truncated(c.precision);
    }
    out.push_back(acc.truncated(cap));
  }
  return out;
}

std::vector<SeriesComponent> taylor_section(const SeriesChart& c, const std::vector<LaurentApprox>& y, int r) {
  if (r < 1) throw std::invalid_argument("taylor_section: r must be positive");
  if (static_cast<int>(y.size()) != c.arity) throw std::invalid_argument("taylor_section: wrong point arity");
  if (c.truncated && r - 1 > c.degree_cap)
    throw std::invalid_argument("taylor_section: degree cap " + std::to_string(c.degree_cap) + " is below r - 1");
  const int64_t vmin = min_offset_val(y, c.origin);
  std::vector<LaurentApprox> w;
  for (int i = 0; i < c.arity; ++i) w.push_back((y[i] - c.origin[i]).truncated(c.precision));
  const auto ks = exponents_below(c.arity, r);
  std::vector<SeriesComponent> out;
  for (const auto& comp : c.components) {
    SeriesComponent sec;
    for (const auto& k : ks) {
      LaurentApprox acc = LaurentApprox::zero(c.field);
      for (const auto& [a, coef] : comp) {
        FqElem b = c.field.one();
        for (int i = 0; i < c.arity && !b.is_zero(); ++i)
          b = a[i] < k[i] ? FqElem{0} : c.field.mul(b, binomial_mod(c.field, a[i], k[i]));
        if (b.is_zero()) continue;
        LaurentApprox term = coef.scaled(b);
        for (int i = 0; i < c.arity; ++i) term = (term * power_trunc(w[i], a[i] - k[i], c.precision)).truncated(c.precision);
        acc = (acc + term).truncated(c.precision);
      }
      if (acc.is_exact_zero() && !c.truncated) continue;
      const int64_t cap = std::min(c.precision, tail_cap(c, vmin, c.degree_cap + 1 - k.total()));
      sec.emplace(k, acc.truncated(cap));
    }
    out.push_back(std::move(sec));
  }
  return out;
}

std::vector<LaurentApprox> evaluate_section(const std::vector<SeriesComponent>& sec, const std::vector<LaurentApprox>& y,
                                            const std::vector<LaurentApprox>& x, int64_t precision) {
  std::vector<LaurentApprox> out;
  const FieldDesc& f = x.at(0).field();
  for (const auto& comp : sec) {
    LaurentApprox acc = LaurentApprox::zero(f);
    for (const auto& [k, a] : comp) {
      LaurentApprox term = a;
      for (size_t i = 0; i < x.size(); ++i)
        term = (term * power_trunc(x[i] - y[i], k[i], precision)).truncated(precision);
      acc = (acc + term).truncated(precision);
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<SamplePair> sample_pairs(const SeriesChart& c, int r, int budget, uint64_t seed) {
  validate_chart(c);
  if (r < 1) throw std::invalid_argument("sample_pairs: r must be positive");
  int64_t kmin = 1;
  for (const auto& b : c.domain) kmin = std::max(kmin, b.radius);
  const int64_t kmax = (c.precision - c.guard) / r;
  std::vector<SamplePair> out;
  if (kmin > kmax || budget <= 0) return out;
  std::mt19937_64 rng(seed);
  const uint32_t q = c.field.order();
  constexpr int kDigits = 4;
  auto random_digits = [&](bool unit) {
    std::vector<FqElem> d(kDigits);
    for (auto& x : d) x = FqElem{static_cast<uint32_t>(rng() % q)};
    if (unit) d[0] = FqElem{static_cast<uint32_t>(1 + rng() % (q - 1))};
    return d;
  };
  const int64_t strata = kmax - kmin + 1;
  for (int s = 0; s < budget; ++s) {
    SamplePair sp;
    sp.k = kmin + s % strata;
    const int unit_coord = static_cast<int>((s / strata) % c.arity);
    for (int i = 0; i < c.arity; ++i) {
      const LaurentApprox u(c.field, c.domain[i].radius, random_digits(false));
      const LaurentApprox v(c.field, sp.k, random_digits(i == unit_coord));
      sp.y.push_back(c.domain[i].center + u);
      sp.x.push_back(sp.y.back() + v);
    }
    out.push_back(std::move(sp));
  }
  return out;
}

PairCheck check_pair(const SeriesChart& c, int r, const SamplePair& s) {
  PairCheck pc;
  pc.need = static_cast<int64_t>(r) * s.k;
  const auto fx = evaluate(c, s.x);
  const auto tx = evaluate_section(taylor_section(c, s.y, r), s.y, s.x, c.precision);
  bool all_pass = true, any_fail = false, all_equal_or_more = true;
  int64_t ord_min = kInfinity;
  bool equality = false;
  for (size_t i = 0; i < fx.size(); ++i) {
    const LaurentApprox d = fx[i] - tx[i];
    const int64_t pd = d.prec();
    const int64_t usable = pd >= kInfinity ? kInfinity : pd - c.guard;
    if (!d.known_zero() && d.val() < pc.need && d.val() < usable) {
      any_fail = true;
      ord_min = std::min(ord_min, d.val());
      continue;
    }
    const bool decided = pc.need <= usable && (d.known_zero() || d.val() >= pc.need);
    if (!decided) {
      all_pass = false;
      all_equal_or_more = false;
    }
    ord_min = std::min(ord_min, d.val_lower_bound());
    if (!d.known_zero() && d.val() == pc.need) equality = true;
  }
  pc.ord_diff = ord_min;
  if (any_fail)
    pc.verdict = Verdict::fail;
  else if (all_pass)
    pc.verdict = Verdict::pass;
  else
    pc.verdict = Verdict::inconclusive;
  pc.exact_equality = pc.verdict == Verdict::pass && equality && ord_min == pc.need && all_equal_or_more;
  return pc;
}

TrVerdict check_Tr_on(const SeriesChart& c, int r, const std::vector<SamplePair>& samples) {
  TrVerdict v;
  v.r = r;
  v.samples = static_cast<int>(samples.size());
  v.min_excess = kInfinity;
  std::vector<PairCheck> res(samples.size());
#pragma omp parallel for schedule(dynamic)
  for (int64_t i = 0; i < static_cast<int64_t>(samples.size()); ++i) res[i] = check_pair(c, r, samples[i]);
  for (size_t i = 0; i < samples.size(); ++i) {
    const PairCheck& pc = res[i];
    if (pc.verdict == Verdict::fail) {
      v.violations.push_back({point_text(samples[i].x), point_text(samples[i].y), pc.ord_diff, pc.need});
    } else if (pc.verdict == Verdict::inconclusive) {
      ++v.inconclusive;
    } else {
      ++v.passed;
      if (pc.exact_equality) ++v.equality;
      v.min_excess = std::min(v.min_excess, pc.ord_diff - pc.need);
    }
  }
  if (!v.violations.empty())
    v.verdict = Verdict::fail;
  else if (samples.empty()) {
    v.verdict = Verdict::inconclusive;
    v.note = "no stratum ord(x - y) fits the working precision";
  } else if (v.inconclusive > 0) {
    v.verdict = Verdict::inconclusive;
    v.note = "some samples reached the guard band";
  } else {
    v.verdict = Verdict::pass;
  }
  return v;
}

TrVerdict check_Tr(const SeriesChart& c, int r, int sample_budget, uint64_t seed) {
  return check_Tr_on(c, r, sample_pairs(c, r, sample_budget, seed));
}

uint32_t CosetSelector::block(FqElem a) const {
  if (a.is_zero()) throw std::invalid_argument("coset selector: zero has no coset");
  const uint32_t n = field.order() - 1;
  return field.log(a) / (n / ell);
}

FqElem CosetSelector::xi(FqElem a) const { return reps[block(a)]; }

CosetSelector coset_selector(const FieldDesc& f, int r) {
  if (r < 1) throw std::invalid_argument("coset_selector: r must be positive");
  CosetSelector s;
  s.field = f;
  s.r = r;
  const uint32_t n = f.order() - 1;
  s.ell = std::gcd(static_cast<uint32_t>(r), n);
  std::vector<bool> found(s.ell, false);
  for (uint32_t v = 1; v <= n; ++v) {
    const uint32_t c = f.log(FqElem{v}) % s.ell;
    if (!found[c]) {
      found[c] = true;
      s.reps.push_back(FqElem{v});
    }
  }
  std::sort(s.reps.begin(), s.reps.end());
  return s;
}

LaurentApprox power_map(const CosetSelector& sel, int j, const LaurentApprox& x) {
  const FqElem d = sel.xi(x.ac());
  LaurentApprox r = one(x.field());
  for (int i = 0; i < sel.r; ++i) r = r * x;
  return r.scaled(d).shifted(j);
}

SeriesChart power_precompose(const SeriesChart& c, const std::vector<int>& r, const std::vector<int>& j,
                             const std::vector<FqElem>& xi, const std::vector<Ball>& new_domain) {
  validate_chart(c);
  if (c.truncated) throw std::invalid_argument("power_precompose: chart must have no omitted tail");
  const size_t m = c.arity;
  if (r.size() != m || j.size() != m || xi.size() != m || new_domain.size() != m)
    throw std::invalid_argument("power_precompose: parameter lengths must match the arity");
  const FieldDesc& f = c.field;
  int max_deg = 0;
  for (const auto& comp : c.components)
    for (const auto& [e, a] : comp) max_deg = std::max(max_deg, e.total());

  // U_i(w) = t^j xi (b' + w)^r - origin_i, coefficients low degree first.
  std::vector<std::vector<LaurentApprox>> u(m);
  for (size_t i = 0; i < m; ++i) {
    if (r[i] < 1 || j[i] < 0) throw std::invalid_argument("power_precompose: need r >= 1 and j >= 0");
    const LaurentApprox& b = new_domain[i].center;
    for (int l = 0; l <= r[i]; ++l) {
      LaurentApprox coef = one(f);
      for (int k = 0; k < r[i] - l; ++k) coef = coef * b;
      coef = coef.scaled(f.mul(xi[i], binomial_mod(f, r[i], l))).shifted(j[i]);
      u[i].push_back(coef);
    }
    // image of the new ball must stay in the chart's domain
    std::vector<LaurentApprox> img = u[i];
    img[0] = img[0] - c.domain[i].center;
    for (int l = 0; l <= r[i]; ++l) {
      const int64_t v = img[l].val_lower_bound();
      if (v >= kInfinity) continue;
      if (sat_add(v, static_cast<int64_t>(l) * new_domain[i].radius) < c.domain[i].radius)
        throw std::domain_error("power_precompose: image escapes the chart domain");
    }
    u[i][0] = u[i][0] - c.origin[i];
  }

  auto mul_uni = [&](const std::vector<LaurentApprox>& a, const std::vector<LaurentApprox>& b) {
    std::vector<LaurentApprox> out(a.size() + b.size() - 1, LaurentApprox::zero(f));
    for (size_t p = 0; p < a.size(); ++p)
      for (size_t q = 0; q < b.size(); ++q) out[p + q] = out[p + q] + a[p] * b[q];
    return out;
  };
  // powers[i][e] = U_i^e
  std::vector<std::vector<std::vector<LaurentApprox>>> pw(m);
  for (size_t i = 0; i < m; ++i) {
    pw[i].push_back({one(f)});
    for (int e = 1; e <= max_deg; ++e) pw[i].push_back(mul_uni(pw[i].back(), u[i]));
  }

  SeriesChart out;
  out.field = f;
  out.arity = c.arity;
  out.precision = c.precision;
  out.guard = c.guard;
  out.domain = new_domain;
  for (const auto& b : new_domain) out.origin.push_back(b.center);
  for (const auto& comp : c.components) {
    std::map<Exponent, LaurentApprox> acc;
    for (const auto& [e, a] : comp) {
      // expand a * prod_i U_i(w_i)^{e_i}
      std::map<Exponent, LaurentApprox> term{{Exponent(std::vector<int>(m, 0)), a}};
      for (size_t i = 0; i < m; ++i) {
        std::map<Exponent, LaurentApprox> next;
        const auto& p = pw[i][e[i]];
        for (const auto& [k, v] : term)
          for (size_t l = 0; l < p.size(); ++l) {
            std::vector<int> kk = k.entries();
            kk[i] += static_cast<int>(l);
            const LaurentApprox prod = v * p[l];
            auto [it, ins] = next.try_emplace(Exponent(kk), prod);
            if (!ins) it->second = it->second + prod;
          }
        term = std::move(next);
      }
      for (auto& [k, v] : term) {
        auto [it, ins] = acc.try_emplace(k, v);
        if (!ins) it->second = it->second + v;
      }
    }
    SeriesComponent comp_out;
    for (auto& [k, v] : acc)
      if (!v.is_exact_zero()) {
        out.degree_cap = std::max(out.degree_cap, k.total());
        comp_out.emplace(k, std::move(v));
      }
    out.components.push_back(std::move(comp_out));
  }
  return out;
}

SeriesChart power_precompose(const SeriesChart& c, int r, int j, FqElem xi, const Ball& new_domain) {
  return power_precompose(c, std::vector<int>{r}, std::vector<int>{j}, std::vector<FqElem>{xi}, std::vector<Ball>{new_domain});
}

CoeffBoundReport check_coeff_bounds(const SeriesChart& c, int r, const std::vector<LaurentApprox>& b, bool multidim) {
  validate_chart(c);
  if (static_cast<int>(b.size()) != c.arity) throw std::invalid_argument("check_coeff_bounds: b' has the wrong arity");
  if (!multidim && c.arity != 1) throw std::invalid_argument("check_coeff_bounds: univariate bound needs arity 1");
  for (int i = 0; i < c.arity; ++i)
    if (!c.origin[i].agrees_with(b[i]) || c.origin[i].prec() != b[i].prec())
      throw std::invalid_argument("check_coeff_bounds: chart is not developed around b'");
  std::vector<int64_t> ob;
  for (const auto& x : b) ob.push_back(x.ord());
  CoeffBoundReport rep;
  for (size_t ci = 0; ci < c.components.size(); ++ci) {
    for (const auto& [k, a] : c.components[ci]) {
      if (k.total() == 0) continue;
      int64_t bound;
      if (!multidim) {
        bound = static_cast<int64_t>(r - k[0]) * ob[0];
      } else {
        int64_t mx = std::numeric_limits<int64_t>::min(), dot = 0;
        for (int i = 0; i < c.arity; ++i) {
          if (k[i] > 0) mx = std::max(mx, ob[i]);
          dot += static_cast<int64_t>(k[i]) * ob[i];
        }
        bound = r * mx - dot;
      }
      ++rep.checked;
      rep.max_degree = std::max(rep.max_degree, k.total());
      if (a.known_zero()) {
        if (a.prec() < bound) rep.undetermined.push_back(k);
      } else if (a.val() < bound) {
        rep.failures.push_back({static_cast<int>(ci), k, a.val(), bound});
      }
    }
  }
  if (!rep.failures.empty())
    rep.verdict = Verdict::fail;
  else if (!rep.undetermined.empty())
    rep.verdict = Verdict::inconclusive;
  else
    rep.verdict = Verdict::pass;
  return rep;
}

SeriesChart identity_chart(const FieldDesc& f, const Ball& domain, int64_t precision) {
  SeriesChart c;
  c.field = f;
  c.arity = 1;
  c.origin = {domain.center};
  c.domain = {domain};
  c.precision = precision;
  c.degree_cap = 1;
  SeriesComponent comp;
  if (!domain.center.is_exact_zero()) comp.emplace(Exponent{0}, domain.center);
  comp.emplace(Exponent{1}, one(f));
  c.components.push_back(std::move(comp));
  return c;
}

nlohmann::json laurent_to_json(const LaurentApprox& a) {
  nlohmann::json j;
  j["valuation"] = a.known_zero() ? nlohmann::json(nullptr) : nlohmann::json(a.val());
  std::vector<uint32_t> d;
  for (auto x : a.digits()) d.push_back(x.v);
  j["digits"] = d;
  j["precision"] = a.exact() ? nlohmann::json(nullptr) : nlohmann::json(a.prec());
  return j;
}

LaurentApprox laurent_from_json(const FieldDesc& f, const nlohmann::json& j) {
  const int64_t prec = j.contains("precision") && !j.at("precision").is_null() ? j.at("precision").get<int64_t>() : kInfinity;
  std::vector<FqElem> digits;
  if (j.contains("digits"))
    for (const auto& d : j.at("digits")) {
      const auto v = d.get<int64_t>();
      if (v < 0 || v >= static_cast<int64_t>(f.order())) throw std::invalid_argument("digit out of range for the field");
      digits.push_back(FqElem{static_cast<uint32_t>(v)});
    }
  if (!j.contains("valuation") || j.at("valuation").is_null()) {
    if (!digits.empty()) throw std::invalid_argument("digits given without a valuation");
    return LaurentApprox::zero(f, prec);
  }
  return LaurentApprox(f, j.at("valuation").get<int64_t>(), std::move(digits), prec);
}

nlohmann::json chart_to_json(const SeriesChart& c) {
  nlohmann::json j;
  j["field"] = c.field.to_string();
  j["arity"] = c.arity;
  nlohmann::json origin = nlohmann::json::array();
  for (const auto& o : c.origin) origin.push_back(laurent_to_json(o));
  j["origin"] = origin;
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& comp : c.components) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, a] : comp) {
      nlohmann::json t = laurent_to_json(a);
      t["exponent"] = e.entries();
      terms.push_back(t);
    }
    comps.push_back(terms);
  }
  j["components"] = comps;
  nlohmann::json dom = nlohmann::json::array();
  for (const auto& b : c.domain) dom.push_back({{"center", laurent_to_json(b.center)}, {"radius", b.radius}});
  j["domain"] = dom;
  j["degree_cap"] = c.degree_cap;
  j["truncated"] = c.truncated;
  if (c.truncated) j["tail_valuation"] = c.tail_val;
  j["precision"] = c.precision;
  j["guard"] = c.guard;
  return j;
}

SeriesChart chart_from_json(const nlohmann::json& j) {
  SeriesChart c;
  c.field = parse_field_text(j.at("field").get<std::string>());
  c.arity = j.value("arity", 1);
  for (const auto& o : j.at("origin")) c.origin.push_back(laurent_from_json(c.field, o));
  for (const auto& terms : j.at("components")) {
    SeriesComponent comp;
    for (const auto& t : terms) {
      LaurentApprox a = laurent_from_json(c.field, t);
      Exponent e(t.at("exponent").get<std::vector<int>>());
      auto [it, ins] = comp.try_emplace(e, a);
      if (!ins) throw std::invalid_argument("duplicate exponent " + e.to_string() + " in chart");
    }
    c.components.push_back(std::move(comp));
  }
  for (const auto& b : j.at("domain")) c.domain.push_back({laurent_from_json(c.field, b.at("center")), b.at("radius").get<int64_t>()});
  c.degree_cap = j.value("degree_cap", 0);
  c.truncated = j.value("truncated", false);
  c.tail_val = j.value("tail_valuation", int64_t{0});
  c.precision = j.value("precision", int64_t{24});
  c.guard = j.value("guard", int64_t{4});
  validate_chart(c);
  return c;
}

nlohmann::json verdict_to_json(const TrVerdict& v) {
  nlohmann::json j;
  j["r"] = v.r;
  j["verdict"] = to_string(v.verdict);
  j["samples"] = v.samples;
  j["passed"] = v.passed;
  j["inconclusive"] = v.inconclusive;
  j["equality"] = v.equality;
  if (v.min_excess < kInfinity) j["min_excess"] = v.min_excess;
  nlohmann::json viol = nlohmann::json::array();
  for (const auto& x : v.violations)
    viol.push_back({{"x", x.x}, {"y", x.y}, {"ord_diff", x.ord_diff}, {"r_ord_x_minus_y", x.need}});
  j["violations"] = viol;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

nlohmann::json coeff_report_to_json(const CoeffBoundReport& r) {
  nlohmann::json j;
  j["verdict"] = to_string(r.verdict);
  j["checked"] = r.checked;
  j["max_degree"] = r.max_degree;
  nlohmann::json f = nlohmann::json::array();
  for (const auto& x : r.failures)
    f.push_back({{"component", x.component}, {"k", x.k.entries()}, {"ord", x.ord}, {"bound", x.bound}});
  j["failures"] = f;
  nlohmann::json u = nlohmann::json::array();
  for (const auto& k : r.undetermined) u.push_back(k.entries());
  j["undetermined"] = u;
  return j;
}

}  // namespace ffdet
