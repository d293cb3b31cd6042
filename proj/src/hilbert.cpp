#include "ffdet/hilbert.hpp"

#include <algorithm>
#include <stdexcept>

#include "ffdet/poly_text.hpp"

namespace ffdet {

HomPoly homogenize(const BiPoly& f, int deg) {
  HomPoly F;
  for (const auto& [k, c] : f.terms()) {
    const int d = k.first + k.second;
    if (d > deg) throw std::invalid_argument("homogenize: degree exceeds target");
    F.emplace(Exponent{deg - d, k.first, k.second}, c);
  }
  return F;
}

BiPoly dehomogenize(const HomPoly& F) {
  if (F.empty()) throw std::invalid_argument("dehomogenize: empty polynomial has no field");
  BiPoly f(F.begin()->second.field());
  for (const auto& [e, c] : F) f.add_term(e[1], e[2], c);
  return f;
}

Exponent leading_exponent(const HomPoly& F) {
  if (F.empty()) throw std::invalid_argument("leading_exponent of zero");
  const Exponent* best = nullptr;
  for (const auto& [e, c] : F) {
    if (c.is_zero()) continue;
    if (!best || salberger_less(*best, e)) best = &e;
  }
  if (!best) throw std::invalid_argument("leading_exponent of zero");
  return *best;
}

namespace {

// Monomials of total degree <= k in (x, y), ascending in graded lex
// (degree first, then x-exponent).
std::vector<BiPoly::Key> grlex_monomials(int k) {
  std::vector<BiPoly::Key> out;
  for (int d = 0; d <= k; ++d)
    for (int i = 0; i <= d; ++i) out.push_back({i, d - i});
  return out;
}

constexpr uint64_t kFactorSearchCap = 4'000'000;

}  // namespace

std::optional<bool> irreducible_over_fq(const BiPoly& f0) {
  const int delta = f0.total_degree();
  if (delta < 1) throw std::invalid_argument("irreducible_over_fq: constant polynomial");
  if (delta == 1) return true;
  const FieldDesc& f = f0.field();
  const uint64_t q = f.order();
  for (int k = 1; 2 * k <= delta; ++k) {
    const auto monos = grlex_monomials(k);
    // leading monomial index ranges over the degree-k block
    const size_t first_top = static_cast<size_t>(k) * (k + 1) / 2;
    uint64_t total = 0;
    for (size_t lead = first_top; lead < monos.size(); ++lead) {
      uint64_t c = 1;
      for (size_t i = 0; i < lead; ++i) {
        c *= q;
        if (c > kFactorSearchCap) return std::nullopt;
      }
      total += c;
      if (total > kFactorSearchCap) return std::nullopt;
    }
    for (size_t lead = first_top; lead < monos.size(); ++lead) {
      uint64_t count = 1;
      for (size_t i = 0; i < lead; ++i) count *= q;
      for (uint64_t idx = 0; idx < count; ++idx) {
        BiPoly g(f);
        g.add_term(monos[lead].first, monos[lead].second, PolyT::constant(f, f.one()));
        uint64_t r = idx;
        for (size_t i = 0; i < lead; ++i) {
          const FqElem c{static_cast<uint32_t>(r % q)};
          r /= q;
          if (!c.is_zero()) g.add_term(monos[i].first, monos[i].second, PolyT::constant(f, c));
        }
        if (divides_over_fq(g, f0)) return false;
      }
    }
  }
  return true;
}

IrreducibilityCheck check_irreducible(const BiPoly& f) {
  IrreducibilityCheck out;
  const int delta = f.total_degree();
  if (delta < 1) {
    out.note = "constant polynomial";
    return out;
  }
  if (delta == 1) {
    out.certified = true;
    out.note = "degree one";
    return out;
  }
  const FieldDesc& fd = f.field();
  bool any_full_degree = false;
  bool search_capped = false;
  for (uint32_t i = 0; i < fd.order(); ++i) {
    const FqElem t0{i};
    const BiPoly f0 = f.specialize_t(t0);
    if (f0.total_degree() != delta) continue;
    any_full_degree = true;
    const auto irr = irreducible_over_fq(f0);
    if (!irr) {
      search_capped = true;
      continue;
    }
    if (*irr) {
      out.certified = true;
      out.witness = t0;
      out.note = "specialization t=" + fd.elem_to_string(t0) + " is irreducible over F_q";
      return out;
    }
  }
  if (!any_full_degree)
    out.note = "no specialization t=t0 in F_q keeps the total degree";
  else if (search_capped)
    out.note = "factor search exceeded its budget";
  else
    out.note = "every full-degree specialization is reducible over F_q";
  return out;
}

std::string PlaneCurve::spec() const { return format_curve_spec(field, f); }

PlaneCurve curve_build(const BiPoly& f, bool check_irreducible_flag) {
  if (f.is_zero()) throw std::invalid_argument("curve_build: zero polynomial");
  const int delta = f.total_degree();
  if (delta < 1) throw std::invalid_argument("curve_build: constant polynomial has no curve");
  PlaneCurve c;
  c.field = f.field();
  c.f = f;
  c.delta = delta;
  c.F = homogenize(f, delta);
  c.lt = leading_exponent(c.F);
  if (c.lt[0] != 0) throw std::logic_error("curve_build: leading exponent involves x0");
  if (check_irreducible_flag) {
    c.irreducibility_checked = true;
    c.irreducibility = check_irreducible(f);
  }
  return c;
}

PlaneCurve curve_from_spec(const std::string& spec, bool check_irreducible_flag) {
  const CurveSpec cs = parse_curve_spec(spec);
  return curve_build(parse_bipoly(cs.field, cs.poly_text), check_irreducible_flag);
}

StaircaseSlice staircase(const Exponent& lt, int s) {
  if (s < 0) throw std::invalid_argument("staircase: negative degree");
  if (lt.size() != 3) throw std::invalid_argument("staircase: expected three homogeneous variables");
  StaircaseSlice out;
  out.s = s;
  for (auto& a : lambda_enumerate(3, s)) {
    if (lt.divides(a)) continue;
    for (int i = 0; i < 3; ++i) out.sigma[i] += a[i];
    out.monomials.push_back(std::move(a));
  }
  out.hf = static_cast<int64_t>(out.monomials.size());
  return out;
}

int64_t hf_closed_form(int delta, int s) {
  return static_cast<int64_t>(delta) * s - static_cast<int64_t>(delta) * (delta - 3) / 2;
}

HilbertRatios hilbert_ratios(const Exponent& lt, int s_max) {
  if (s_max < lt.total() + 3)
    throw std::invalid_argument("hilbert_ratios: s_max must be at least delta + 3 for the polynomial regime");
  StaircaseSlice sl[4];
  for (int i = 0; i < 4; ++i) sl[i] = staircase(lt, s_max - 3 + i);
  // HF linear, sigma_i quadratic: third differences of sigma and second of HF vanish
  if (sl[3].hf - 2 * sl[2].hf + sl[1].hf != 0)
    throw std::logic_error("hilbert_ratios: Hilbert function not yet linear");
  const int64_t hf_lead = sl[3].hf - sl[2].hf;
  HilbertRatios out;
  for (int i = 0; i < 3; ++i) {
    const int64_t d3 = sl[3].sigma[i] - 3 * sl[2].sigma[i] + 3 * sl[1].sigma[i] - sl[0].sigma[i];
    if (d3 != 0) throw std::logic_error("hilbert_ratios: sigma not yet quadratic");
    const int64_t second = sl[3].sigma[i] - 2 * sl[2].sigma[i] + sl[1].sigma[i];
    // sigma_i ~ (second/2) s^2 and s HP(s) ~ hf_lead s^2
    out.a[i] = Rational(second, 2 * hf_lead);
  }
  return out;
}

bool det_inequality_holds(const Exponent& lt, int n, int beta, int s) {
  const StaircaseSlice sl = staircase(lt, s);
  const __int128 mu = sl.hf;
  const __int128 e = mu * (mu - 1) / 2;
  return static_cast<__int128>(beta) * e > static_cast<__int128>(n - 1) * (sl.sigma[1] + sl.sigma[2]);
}

SChoice choose_s(const PlaneCurve& c, int n) {
  if (n < 1) throw std::invalid_argument("choose_s: n must be >= 1");
  SChoice out;
  out.beta = static_cast<int>(ceil_div(n, c.delta));
  const int cap = 10 * n * c.delta;
  for (int s = 1; s <= cap; ++s) {
    if (!det_inequality_holds(c.lt, n, out.beta, s)) continue;
    const StaircaseSlice sl = staircase(c, s);
    out.s = s;
    out.mu = sl.hf;
    out.e = sl.hf * (sl.hf - 1) / 2;
    out.sigma1 = sl.sigma[1];
    out.sigma2 = sl.sigma[2];
    return out;
  }
  throw std::runtime_error("choose_s: no admissible s up to " + std::to_string(cap));
}

}  // namespace ffdet
