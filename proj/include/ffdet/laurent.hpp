#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffdet/poly_t.hpp"

namespace ffdet {

/// Sentinel for "+infinity" in valuations and for exact (unbounded) precision.
inline constexpr int64_t kInfinity = std::numeric_limits<int64_t>::max() / 4;

inline int64_t sat_add(int64_t a, int64_t b) {
  if (a >= kInfinity || b >= kInfinity) return kInfinity;
  return a + b;
}

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A truncated element of F_q((t)).
///
/// The value is t^val * (c_0 + c_1 t + ...), known modulo t^prec. Digits past
/// the stored ones and below prec are zero; digits at or above prec are
/// unknown. prec == kInfinity marks an exact element. When every known digit
/// is zero the element has val == kInfinity (an exact zero when prec is also
/// kInfinity, otherwise O(t^prec)).
///
/// Arithmetic never overstates precision: a sum is known to min(p1, p2) and a
/// product to min(v1 + p2, v2 + p1).
class LaurentApprox {
 public:
  LaurentApprox() = default;
  explicit LaurentApprox(FieldDesc f) : field_(std::move(f)) {}
  /// digits[i] is the coefficient of t^(v + i).
  LaurentApprox(FieldDesc f, int64_t v, std::vector<FqElem> digits, int64_t prec = kInfinity);

  static LaurentApprox zero(const FieldDesc& f, int64_t prec = kInfinity);
  static LaurentApprox from_poly(const PolyT& p, int64_t prec = kInfinity);
  static LaurentApprox constant(const FieldDesc& f, FqElem c, int64_t prec = kInfinity);
  /// c * t^k
  static LaurentApprox monomial(const FieldDesc& f, FqElem c, int64_t k, int64_t prec = kInfinity);

  const FieldDesc& field() const { return field_; }
  int64_t val() const { return val_; }
  int64_t prec() const { return prec_; }
  bool exact() const { return prec_ >= kInfinity; }
  const std::vector<FqElem>& digits() const { return digits_; }
  /// Coefficient of t^i; throws PrecisionError when i >= prec.
  FqElem coeff(int64_t i) const;

  /// No known nonzero digit (exact zero or O(t^prec)).
  bool known_zero() const { return val_ >= kInfinity; }
  bool is_exact_zero() const { return known_zero() && exact(); }
  /// Lower bound on the true valuation: val when determined, prec otherwise.
  int64_t val_lower_bound() const { return known_zero() ? prec_ : val_; }

  /// Valuation (kInfinity for an exact zero). Throws PrecisionError for
  /// O(t^prec), whose valuation is not determined.
  int64_t ord() const;
  /// Angular component. ac(0) = 0; throws PrecisionError when undetermined.
  FqElem ac() const;

  LaurentApprox operator-() const;
  friend LaurentApprox operator+(const LaurentApprox& a, const LaurentApprox& b);
  friend LaurentApprox operator-(const LaurentApprox& a, const LaurentApprox& b) { return a + (-b); }
  friend LaurentApprox operator*(const LaurentApprox& a, const LaurentApprox& b);
  LaurentApprox& operator+=(const LaurentApprox& o) { return *this = *this + o; }
  LaurentApprox& operator-=(const LaurentApprox& o) { return *this = *this - o; }
  LaurentApprox& operator*=(const LaurentApprox& o) { return *this = *this * o; }

  LaurentApprox scaled(FqElem s) const;
  /// Multiplication by t^k (k may be negative).
  LaurentApprox shifted(int64_t k) const;
  LaurentApprox pow(unsigned e) const;
  /// Inverse; exact inputs with infinite expansions are cut at absolute
  /// precision cap. Throws PrecisionError when the leading digit is unknown.
  LaurentApprox inverse(int64_t cap) const;
  /// Lowers precision to min(prec, p).
  LaurentApprox truncated(int64_t p) const;

  /// Digits below min(prec, bound) as a polynomial; requires val >= 0.
  PolyT to_poly(int64_t bound) const;

  /// Equality of all digits known in both operands.
  bool agrees_with(const LaurentApprox& o) const;

  /// "t^v*(c0 + c1*t + ...) + O(t^prec)"
  std::string to_string() const;

 private:
  void normalize();

  FieldDesc field_;
  int64_t val_ = kInfinity;
  std::vector<FqElem> digits_;
  int64_t prec_ = kInfinity;
};

}  // namespace ffdet
