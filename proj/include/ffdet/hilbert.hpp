#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffdet/bipoly.hpp"
#include "ffdet/combinat.hpp"
#include "ffdet/rational.hpp"

namespace ffdet {

/// Homogeneous polynomial in (x0, x1, x2) with F_q[t] coefficients.
using HomPoly = std::map<Exponent, PolyT>;

/// Homogenizes f to degree deg via iota(x, y) = (1, x, y).
HomPoly homogenize(const BiPoly& f, int deg);
/// Sets x0 = 1.
BiPoly dehomogenize(const HomPoly& F);
/// Salberger-largest exponent with nonzero coefficient.
Exponent leading_exponent(const HomPoly& F);

struct IrreducibilityCheck {
  bool certified = false;
  /// t0 with f(t0; x, y) of full degree and irreducible over F_q.
  std::optional<FqElem> witness;
  std::string note;
};

/// Best-effort irreducibility over F_q(t): searches t0 in F_q whose
/// specialization keeps the total degree and has no factor over F_q of
/// degree <= delta/2. Such a t0 certifies irreducibility; failing to find one
/// leaves the curve uncertified (not proven reducible).
IrreducibilityCheck check_irreducible(const BiPoly& f);

/// Irreducibility of a polynomial with constant-in-t coefficients over F_q,
/// by exhaustive factor search. Returns nullopt when the search is too large.
std::optional<bool> irreducible_over_fq(const BiPoly& f0);

/// An affine plane curve f(x, y) = 0 over F_q[t] with its homogenization.
struct PlaneCurve {
  FieldDesc field;
  BiPoly f;
  int delta = 0;
  HomPoly F;
  Exponent lt;
  bool irreducibility_checked = false;
  IrreducibilityCheck irreducibility;

  bool flagged_irreducible() const { return irreducibility_checked && irreducibility.certified; }
  std::string spec() const;
};

/// Throws std::invalid_argument for zero or constant f.
PlaneCurve curve_build(const BiPoly& f, bool check_irreducible);
PlaneCurve curve_from_spec(const std::string& spec, bool check_irreducible);

/// M_z(s) together with its Hilbert function value and sigma sums.
struct StaircaseSlice {
  int s = 0;
  std::vector<Exponent> monomials;  // ascending Salberger order
  int64_t hf = 0;
  std::array<int64_t, 3> sigma{};
};

/// Degree-s monomials of three variables not divisible by lt.
StaircaseSlice staircase(const Exponent& lt, int s);
inline StaircaseSlice staircase(const PlaneCurve& c, int s) { return staircase(c.lt, s); }

/// delta s - delta(delta-3)/2, valid for s >= delta - 1.
int64_t hf_closed_form(int delta, int s);

struct HilbertRatios {
  std::array<Rational, 3> a;
};

/// Exact limits sigma_i(s) / (s HP(s)) from the polynomial regime at
/// s_max-3 .. s_max (the third difference must vanish). Requires s_max >= delta + 3.
HilbertRatios hilbert_ratios(const Exponent& lt, int s_max);
inline HilbertRatios hilbert_ratios(const PlaneCurve& c, int s_max) { return hilbert_ratios(c.lt, s_max); }

struct SChoice {
  int s = 0;
  int beta = 0;
  int64_t mu = 0;
  int64_t e = 0;
  int64_t sigma1 = 0;
  int64_t sigma2 = 0;
};

/// beta = ceil(n / delta); s the least s >= 1 with
/// beta e(s) > (n - 1)(sigma_1(s) + sigma_2(s)), e = mu(mu-1)/2, mu = HF(s).
/// Searches s <= 10 n delta and throws std::runtime_error past that cap.
SChoice choose_s(const PlaneCurve& c, int n);
/// The determinant inequality at a given s.
bool det_inequality_holds(const Exponent& lt, int n, int beta, int s);

}  // namespace ffdet
