#pragma once

#include <climits>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ffdet/field.hpp"

namespace ffdet {

/// deg_t(0).
inline constexpr int kDegNegInf = INT_MIN;
/// ord_t(0).
inline constexpr int kOrdInf = INT_MAX;

/// A polynomial in t over F_q. Coefficients are stored low-degree-first with
/// no trailing zeros, so the zero polynomial has an empty coefficient vector.
class PolyT {
 public:
  PolyT() = default;
  explicit PolyT(FieldDesc f) : field_(std::move(f)) {}
  PolyT(FieldDesc f, std::vector<FqElem> c) : field_(std::move(f)), c_(std::move(c)) { trim(); }

  static PolyT constant(const FieldDesc& f, FqElem c) { return PolyT(f, {c}); }
  static PolyT monomial(const FieldDesc& f, FqElem c, int deg);
  /// The element whose coefficient vector is the base-q expansion of index.
  static PolyT from_index(const FieldDesc& f, uint64_t index, int length);

  const FieldDesc& field() const { return field_; }
  std::span<const FqElem> coeffs() const { return c_; }
  FqElem coeff(int i) const { return i >= 0 && i < size() ? c_[i] : FqElem{}; }
  int size() const { return static_cast<int>(c_.size()); }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].v == 1; }
  /// kDegNegInf for zero.
  int deg() const { return c_.empty() ? kDegNegInf : size() - 1; }
  /// t-adic order; kOrdInf for zero.
  int ord() const;
  FqElem lead() const { return c_.empty() ? FqElem{} : c_.back(); }

  PolyT& operator+=(const PolyT& o);
  PolyT& operator-=(const PolyT& o);
  PolyT operator-() const;
  friend PolyT operator+(PolyT a, const PolyT& b) { return a += b; }
  friend PolyT operator-(PolyT a, const PolyT& b) { return a -= b; }
  friend PolyT operator*(const PolyT& a, const PolyT& b);
  PolyT scaled(FqElem s) const;
  PolyT shifted(int k) const;  // times t^k, k >= 0
  /// Reduction mod t^k.
  PolyT truncated(int k) const;
  PolyT pow(unsigned e) const;

  /// Euclidean division; throws std::domain_error when b is zero.
  static std::pair<PolyT, PolyT> divmod(const PolyT& a, const PolyT& b);
  /// Quotient that must be exact; throws std::logic_error otherwise.
  static PolyT exact_div(const PolyT& a, const PolyT& b);
  /// Monic gcd (zero when both inputs are zero).
  static PolyT gcd(PolyT a, PolyT b);
  /// a(b(t)).
  static PolyT compose(const PolyT& a, const PolyT& b);
  FqElem eval(FqElem x) const;

  PolyT derivative() const;
  PolyT monic() const;

  /// Packs coefficients as the base-q integer used for canonical orderings.
  std::vector<uint32_t> key() const;

  std::string to_string() const;

  friend bool operator==(const PolyT& a, const PolyT& b) { return a.c_ == b.c_; }
  friend auto operator<=>(const PolyT& a, const PolyT& b) { return a.c_ <=> b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().v == 0) c_.pop_back();
  }

  FieldDesc field_;
  std::vector<FqElem> c_;
};

/// H(x) = q^{deg x}; height(0) = 1.
uint64_t height(const PolyT& x, uint64_t q);
/// Max height over a tuple.
uint64_t height(std::span<const PolyT> xs, uint64_t q);

/// Checked integer power; throws std::overflow_error on overflow.
uint64_t ipow(uint64_t base, unsigned e);

}  // namespace ffdet
