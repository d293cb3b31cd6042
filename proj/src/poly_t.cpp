#include "ffdet/poly_t.hpp"

#include <algorithm>
#include <stdexcept>

#include "ffdet/poly_text.hpp"

namespace ffdet {

PolyT PolyT::monomial(const FieldDesc& f, FqElem c, int deg) {
  if (c.is_zero()) return PolyT(f);
  std::vector<FqElem> v(deg + 1);
  v[deg] = c;
  return PolyT(f, std::move(v));
}

PolyT PolyT::from_index(const FieldDesc& f, uint64_t index, int length) {
  std::vector<FqElem> v(length);
  const uint64_t q = f.order();
  for (int i = 0; i < length; ++i) {
    v[i] = FqElem{static_cast<uint32_t>(index % q)};
    index /= q;
  }
  return PolyT(f, std::move(v));
}

int PolyT::ord() const {
  for (int i = 0; i < size(); ++i)
    if (!c_[i].is_zero()) return i;
  return kOrdInf;
}

PolyT& PolyT::operator+=(const PolyT& o) {
  if (o.is_zero()) return *this;
  if (!field_.valid()) field_ = o.field_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_.add(c_[i], o.c_[i]);
  trim();
  return *this;
}

PolyT& PolyT::operator-=(const PolyT& o) {
  if (o.is_zero()) return *this;
  if (!field_.valid()) field_ = o.field_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_.sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

PolyT PolyT::operator-() const {
  PolyT r = *this;
  for (auto& c : r.c_) c = field_.neg(c);
  return r;
}

PolyT operator*(const PolyT& a, const PolyT& b) {
  if (a.is_zero() || b.is_zero()) return PolyT(a.field_.valid() ? a.field_ : b.field_);
  const FieldDesc& f = a.field_;
  std::vector<FqElem> r(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a.c_[i], b.c_[j]));
  }
  return PolyT(f, std::move(r));
}

PolyT PolyT::scaled(FqElem s) const {
  if (s.is_zero()) return PolyT(field_);
  PolyT r = *this;
  for (auto& c : r.c_) c = field_.mul(c, s);
  return r;
}

PolyT PolyT::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  PolyT r(field_);
  r.c_.assign(k, FqElem{});
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

PolyT PolyT::truncated(int k) const {
  if (k >= size()) return *this;
  PolyT r(field_, std::vector<FqElem>(c_.begin(), c_.begin() + std::max(k, 0)));
  return r;
}

PolyT PolyT::pow(unsigned e) const {
  PolyT r = PolyT::constant(field_, field_.one());
  PolyT b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::pair<PolyT, PolyT> PolyT::divmod(const PolyT& a, const PolyT& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  require_same_field(a.field_.valid() ? a.field_ : b.field_, b.field_);
  const FieldDesc& f = b.field_;
  if (a.deg() < b.deg()) return {PolyT(f), a};
  std::vector<FqElem> rem(a.c_.begin(), a.c_.end());
  std::vector<FqElem> quo(a.c_.size() - b.c_.size() + 1);
  const FqElem lead_inv = f.inv(b.lead());
  const size_t db = b.c_.size() - 1;
  for (size_t i = rem.size(); i-- > db;) {
    if (rem[i].is_zero()) continue;
    const FqElem c = f.mul(rem[i], lead_inv);
    quo[i - db] = c;
    for (size_t j = 0; j <= db; ++j) rem[i - db + j] = f.sub(rem[i - db + j], f.mul(c, b.c_[j]));
  }
  rem.resize(db);
  return {PolyT(f, std::move(quo)), PolyT(f, std::move(rem))};
}

PolyT PolyT::exact_div(const PolyT& a, const PolyT& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
  return q;
}

PolyT PolyT::gcd(PolyT a, PolyT b) {
  while (!b.is_zero()) {
    PolyT r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

PolyT PolyT::compose(const PolyT& a, const PolyT& b) {
  PolyT r(a.field_.valid() ? a.field_ : b.field_);
  for (int i = a.size(); i-- > 0;) {
    r = r * b;
    r += PolyT::constant(a.field_, a.c_[i]);
  }
  return r;
}

FqElem PolyT::eval(FqElem x) const {
  FqElem r{};
  for (int i = size(); i-- > 0;) r = field_.add(field_.mul(r, x), c_[i]);
  return r;
}

PolyT PolyT::derivative() const {
  if (size() <= 1) return PolyT(field_);
  std::vector<FqElem> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = field_.mul(field_.from_int(static_cast<int64_t>(i)), c_[i]);
  return PolyT(field_, std::move(d));
}

PolyT PolyT::monic() const {
  if (is_zero()) return *this;
  return scaled(field_.inv(lead()));
}

std::vector<uint32_t> PolyT::key() const {
  std::vector<uint32_t> k(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) k[i] = c_[i].v;
  return k;
}

std::string PolyT::to_string() const { return format_poly_t(*this); }

uint64_t ipow(uint64_t base, unsigned e) {
  uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && r > UINT64_MAX / base) throw std::overflow_error("integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

uint64_t height(const PolyT& x, uint64_t q) {
  if (x.is_zero()) return 1;
  return ipow(q, static_cast<unsigned>(x.deg()));
}

uint64_t height(std::span<const PolyT> xs, uint64_t q) {
  uint64_t h = 1;
  for (const auto& x : xs) h = std::max(h, height(x, q));
  return h;
}

}  // namespace ffdet
