#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffdet {

/// Element of F_{p^a}, packed as the integer sum c_i p^i of its coefficient
/// vector with respect to the field modulus. The packed value doubles as the
/// canonical "residue as integer" used for orderings.
struct FqElem {
  uint32_t v = 0;
  friend constexpr auto operator<=>(FqElem, FqElem) = default;
  constexpr bool is_zero() const { return v == 0; }
};

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(uint64_t n);

/// A finite field F_{p^a} with its canonical modulus: the lexicographically
/// smallest monic irreducible of degree a over F_p, coefficients compared
/// low-degree-first. Instances for equal (p, a) share one table set.
class FieldDesc {
 public:
  FieldDesc() = default;

  static FieldDesc make(uint32_t p, uint32_t a);

  uint32_t p() const { return impl_->p; }
  uint32_t degree() const { return impl_->a; }
  uint32_t order() const { return impl_->q; }
  /// Monic modulus, low-degree-first, length a + 1.
  const std::vector<uint32_t>& modulus() const { return impl_->modulus; }
  /// Smallest (as integer) multiplicative generator.
  FqElem primitive() const { return FqElem{impl_->exp.size() > 1 ? impl_->exp[1] : 1u}; }

  bool valid() const { return impl_ != nullptr; }

  FqElem zero() const { return {0}; }
  FqElem one() const { return {1}; }
  FqElem from_int(int64_t n) const;
  /// The class of the polynomial variable z in F_p[z]/(modulus).
  FqElem generator() const;
  FqElem from_coeffs(std::span<const uint32_t> c) const;
  std::vector<uint32_t> coeffs(FqElem x) const;
  FqElem from_index(uint64_t i) const;

  FqElem add(FqElem x, FqElem y) const {
    if (impl_->a == 1) {
      uint32_t s = x.v + y.v;
      return {s >= impl_->p ? s - impl_->p : s};
    }
    if (impl_->p == 2) return {x.v ^ y.v};
    return add_slow(x, y);
  }
  FqElem neg(FqElem x) const {
    if (x.v == 0) return x;
    if (impl_->a == 1) return {impl_->p - x.v};
    if (impl_->p == 2) return x;
    return neg_slow(x);
  }
  FqElem sub(FqElem x, FqElem y) const { return add(x, neg(y)); }
  FqElem mul(FqElem x, FqElem y) const {
    if (x.v == 0 || y.v == 0) return {0};
    if (impl_->a == 1)
      return {static_cast<uint32_t>(static_cast<uint64_t>(x.v) * y.v % impl_->p)};
    uint32_t e = impl_->log[x.v] + impl_->log[y.v];
    if (e >= impl_->q - 1) e -= impl_->q - 1;
    return {impl_->exp[e]};
  }
  FqElem inv(FqElem x) const;
  FqElem div(FqElem x, FqElem y) const { return mul(x, inv(y)); }
  FqElem pow(FqElem x, uint64_t e) const;
  /// Discrete logarithm with respect to primitive(); x must be nonzero.
  uint32_t log(FqElem x) const;
  FqElem exp(uint64_t e) const { return {impl_->exp[e % (impl_->q - 1)]}; }

  /// "p^a"
  std::string to_string() const;
  /// Element text: an integer for prime fields, otherwise a polynomial in z.
  std::string elem_to_string(FqElem x) const;

  friend bool operator==(const FieldDesc& l, const FieldDesc& r) {
    return l.impl_ == r.impl_ ||
           (l.impl_ && r.impl_ && l.impl_->p == r.impl_->p && l.impl_->a == r.impl_->a);
  }

 private:
  struct Impl {
    uint32_t p = 0, a = 0, q = 0;
    std::vector<uint32_t> modulus;
    std::vector<uint32_t> exp;  // exp[i] = g^i, length q-1
    std::vector<uint32_t> log;  // log[x], log[0] unused
  };
  explicit FieldDesc(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  FqElem add_slow(FqElem x, FqElem y) const;
  FqElem neg_slow(FqElem x) const;

  std::shared_ptr<const Impl> impl_;
};

void require_same_field(const FieldDesc& a, const FieldDesc& b);

/// Binomial coefficient reduced mod p (Lucas), as an element of the prime field.
FqElem binomial_mod(const FieldDesc& f, uint64_t n, uint64_t k);

}  // namespace ffdet
