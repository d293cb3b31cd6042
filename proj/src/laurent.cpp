#include "ffdet/laurent.hpp"

#include <algorithm>

namespace ffdet {

LaurentApprox::LaurentApprox(FieldDesc f, int64_t v, std::vector<FqElem> digits, int64_t prec)
    : field_(std::move(f)), val_(v), digits_(std::move(digits)), prec_(prec) {
  normalize();
}

LaurentApprox LaurentApprox::zero(const FieldDesc& f, int64_t prec) {
  LaurentApprox z(f);
  z.prec_ = prec;
  return z;
}

LaurentApprox LaurentApprox::from_poly(const PolyT& p, int64_t prec) {
  return LaurentApprox(p.field(), 0, std::vector<FqElem>(p.coeffs().begin(), p.coeffs().end()), prec);
}

LaurentApprox LaurentApprox::constant(const FieldDesc& f, FqElem c, int64_t prec) {
  return LaurentApprox(f, 0, {c}, prec);
}

LaurentApprox LaurentApprox::monomial(const FieldDesc& f, FqElem c, int64_t k, int64_t prec) {
  return LaurentApprox(f, k, {c}, prec);
}

void LaurentApprox::normalize() {
  if (val_ >= kInfinity) {
    digits_.clear();
    return;
  }
  // drop digits at or beyond prec
  if (prec_ < kInfinity) {
    const int64_t keep = std::max<int64_t>(0, prec_ - val_);
    if (static_cast<int64_t>(digits_.size()) > keep) digits_.resize(keep);
  }
  size_t lead = 0;
  while (lead < digits_.size() && digits_[lead].is_zero()) ++lead;
  if (lead == digits_.size()) {
    digits_.clear();
    val_ = kInfinity;
    return;
  }
  if (lead > 0) {
    digits_.erase(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<int64_t>(lead);
  }
  while (!digits_.empty() && digits_.back().is_zero()) digits_.pop_back();
}

FqElem LaurentApprox::coeff(int64_t i) const {
  if (i >= prec_) throw PrecisionError("coefficient of t^" + std::to_string(i) + " is beyond precision");
  if (known_zero() || i < val_) return FqElem{};
  const int64_t off = i - val_;
  return off < static_cast<int64_t>(digits_.size()) ? digits_[off] : FqElem{};
}

int64_t LaurentApprox::ord() const {
  if (known_zero() && !exact())
    throw PrecisionError("valuation undetermined: all digits below t^" + std::to_string(prec_) + " vanish");
  return val_;
}

FqElem LaurentApprox::ac() const {
  if (known_zero()) {
    if (exact()) return FqElem{};
    throw PrecisionError("angular component undetermined at precision " + std::to_string(prec_));
  }
  return digits_.front();
}

LaurentApprox LaurentApprox::operator-() const {
  LaurentApprox r = *this;
  for (auto& d : r.digits_) d = field_.neg(d);
  return r;
}

LaurentApprox operator+(const LaurentApprox& a, const LaurentApprox& b) {
  const FieldDesc& f = a.field_.valid() ? a.field_ : b.field_;
  const int64_t prec = std::min(a.prec_, b.prec_);
  if (a.known_zero()) return LaurentApprox(f, b.val_, b.digits_, prec);
  if (b.known_zero()) return LaurentApprox(f, a.val_, a.digits_, prec);
  const int64_t lo = std::min(a.val_, b.val_);
  int64_t hi = std::max(a.val_ + static_cast<int64_t>(a.digits_.size()),
                        b.val_ + static_cast<int64_t>(b.digits_.size()));
  if (prec < kInfinity) hi = std::min(hi, prec);
  std::vector<FqElem> d(static_cast<size_t>(std::max<int64_t>(0, hi - lo)));
  for (size_t i = 0; i < a.digits_.size(); ++i) {
    const int64_t k = a.val_ + static_cast<int64_t>(i) - lo;
    if (k < static_cast<int64_t>(d.size())) d[k] = a.digits_[i];
  }
  for (size_t i = 0; i < b.digits_.size(); ++i) {
    const int64_t k = b.val_ + static_cast<int64_t>(i) - lo;
    if (k < static_cast<int64_t>(d.size())) d[k] = f.add(d[k], b.digits_[i]);
  }
  return LaurentApprox(f, lo, std::move(d), prec);
}

LaurentApprox operator*(const LaurentApprox& a, const LaurentApprox& b) {
  const FieldDesc& f = a.field_.valid() ? a.field_ : b.field_;
  if (a.is_exact_zero() || b.is_exact_zero()) return LaurentApprox::zero(f);
  const int64_t prec = std::min(sat_add(a.val_lower_bound(), b.prec_), sat_add(b.val_lower_bound(), a.prec_));
  if (a.known_zero() || b.known_zero()) return LaurentApprox::zero(f, prec);
  const int64_t v = a.val_ + b.val_;
  size_t len = a.digits_.size() + b.digits_.size() - 1;
  if (prec < kInfinity) len = std::min<size_t>(len, static_cast<size_t>(std::max<int64_t>(0, prec - v)));
  std::vector<FqElem> d(len);
  for (size_t i = 0; i < a.digits_.size() && i < len; ++i) {
    if (a.digits_[i].is_zero()) continue;
    for (size_t j = 0; j < b.digits_.size() && i + j < len; ++j)
      d[i + j] = f.add(d[i + j], f.mul(a.digits_[i], b.digits_[j]));
  }
  return LaurentApprox(f, v, std::move(d), prec);
}

LaurentApprox LaurentApprox::scaled(FqElem s) const {
  if (s.is_zero()) return zero(field_);
  LaurentApprox r = *this;
  for (auto& d : r.digits_) d = field_.mul(d, s);
  return r;
}

LaurentApprox LaurentApprox::shifted(int64_t k) const {
  LaurentApprox r = *this;
  if (!r.known_zero()) r.val_ += k;
  if (!r.exact()) r.prec_ += k;
  return r;
}

LaurentApprox LaurentApprox::pow(unsigned e) const {
  LaurentApprox r = constant(field_, field_.one());
  LaurentApprox b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

LaurentApprox LaurentApprox::inverse(int64_t cap) const {
  if (known_zero()) {
    if (exact()) throw std::domain_error("inverse of zero");
    throw PrecisionError("inverse of an element with undetermined leading digit");
  }
  // relative precision of the unit part
  const int64_t rel = exact() ? kInfinity : prec_ - val_;
  const int64_t out_prec = std::min(sat_add(-val_, rel), cap);
  const int64_t n = out_prec + val_;  // digits of u^{-1} needed
  if (n <= 0) return zero(field_, out_prec);
  std::vector<FqElem> inv(static_cast<size_t>(n));
  const FqElem u0_inv = field_.inv(digits_[0]);
  inv[0] = u0_inv;
  for (int64_t k = 1; k < n; ++k) {
    FqElem s{};
    for (int64_t i = 1; i <= k && i < static_cast<int64_t>(digits_.size()); ++i)
      s = field_.add(s, field_.mul(digits_[i], inv[k - i]));
    inv[k] = field_.neg(field_.mul(s, u0_inv));
  }
  return LaurentApprox(field_, -val_, std::move(inv), out_prec);
}

LaurentApprox LaurentApprox::truncated(int64_t p) const {
  if (p >= prec_) return *this;
  return LaurentApprox(field_, val_, digits_, p);
}

PolyT LaurentApprox::to_poly(int64_t bound) const {
  if (known_zero()) return PolyT(field_);
  if (val_ < 0) throw std::domain_error("negative valuation has no polynomial representative");
  const int64_t hi = std::min(bound, prec_);
  std::vector<FqElem> c(static_cast<size_t>(std::max<int64_t>(0, hi)));
  for (size_t i = 0; i < digits_.size(); ++i) {
    const int64_t k = val_ + static_cast<int64_t>(i);
    if (k < hi) c[k] = digits_[i];
  }
  return PolyT(field_, std::move(c));
}

bool LaurentApprox::agrees_with(const LaurentApprox& o) const {
  const LaurentApprox d = *this - o;
  return d.known_zero();
}

std::string LaurentApprox::to_string() const {
  std::string out;
  if (known_zero()) {
    out = "0";
  } else {
    std::string inner;
    for (size_t i = 0; i < digits_.size(); ++i) {
      if (digits_[i].is_zero()) continue;
      if (!inner.empty()) inner += " + ";
      const std::string c = field_.elem_to_string(digits_[i]);
      if (i == 0) {
        inner += c;
      } else {
        if (c != "1") inner += c + "*";
        inner += "t";
        if (i > 1) inner += "^" + std::to_string(i);
      }
    }
    out = "t^" + std::to_string(val_) + "*(" + inner + ")";
  }
  if (!exact()) out += " + O(t^" + std::to_string(prec_) + ")";
  return out;
}

}  // namespace ffdet
