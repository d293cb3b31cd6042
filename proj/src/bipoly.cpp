#include "ffdet/bipoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "ffdet/poly_text.hpp"

namespace ffdet {

void BiPoly::add_term(int dx, int dy, const PolyT& c) {
  if (c.is_zero()) return;
  if (!field_.valid()) field_ = c.field();
  auto [it, inserted] = terms_.try_emplace({dx, dy}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PolyT BiPoly::coeff(int dx, int dy) const {
  auto it = terms_.find({dx, dy});
  return it == terms_.end() ? PolyT(field_) : it->second;
}

int BiPoly::total_degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
  return d;
}

int BiPoly::deg_x() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first);
  return d;
}

int BiPoly::deg_y() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.second);
  return d;
}

std::vector<PolyT> BiPoly::y_coeffs_at(const PolyT& x) const {
  const int dy = deg_y();
  std::vector<PolyT> out(std::max(dy + 1, 0), PolyT(field_));
  if (dy < 0) return out;
  std::vector<PolyT> xp{PolyT::constant(field_, field_.one())};
  for (int i = 1; i <= deg_x(); ++i) xp.push_back(xp.back() * x);
  for (const auto& [k, c] : terms_) out[k.second] += c * xp[k.first];
  return out;
}

PolyT BiPoly::eval(const PolyT& x, const PolyT& y) const {
  const auto cy = y_coeffs_at(x);
  PolyT r(field_);
  for (size_t j = cy.size(); j-- > 0;) r = r * y + cy[j];
  return r;
}

BiPoly BiPoly::partial_x() const {
  BiPoly r(field_);
  for (const auto& [k, c] : terms_)
    if (k.first > 0) r.add_term(k.first - 1, k.second, c.scaled(field_.from_int(k.first)));
  return r;
}

BiPoly BiPoly::partial_y() const {
  BiPoly r(field_);
  for (const auto& [k, c] : terms_)
    if (k.second > 0) r.add_term(k.first, k.second - 1, c.scaled(field_.from_int(k.second)));
  return r;
}

BiPoly BiPoly::specialize_t(FqElem t0) const {
  BiPoly r(field_);
  for (const auto& [k, c] : terms_) r.add_term(k.first, k.second, PolyT::constant(field_, c.eval(t0)));
  return r;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  BiPoly r = a;
  for (const auto& [k, c] : b.terms_) r.add_term(k.first, k.second, c);
  return r;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

BiPoly BiPoly::operator-() const {
  BiPoly r(field_);
  for (const auto& [k, c] : terms_) r.add_term(k.first, k.second, -c);
  return r;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly r(a.field_.valid() ? a.field_ : b.field_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return r;
}

BiPoly BiPoly::scaled(const PolyT& c) const {
  BiPoly r(field_);
  for (const auto& [k, v] : terms_) r.add_term(k.first, k.second, v * c);
  return r;
}

std::string BiPoly::to_string() const { return format_bipoly(*this); }

namespace {

// graded lex on (dx, dy): larger total degree first, then larger dx
bool grlex_less(const BiPoly::Key& a, const BiPoly::Key& b) {
  const int da = a.first + a.second, db = b.first + b.second;
  if (da != db) return da < db;
  return a.first < b.first;
}

BiPoly::Key leading_key(const BiPoly& p) {
  BiPoly::Key best = p.terms().begin()->first;
  for (const auto& [k, c] : p.terms())
    if (grlex_less(best, k)) best = k;
  return best;
}

}  // namespace

bool divides_over_fq(const BiPoly& b, const BiPoly& a) {
  if (b.is_zero()) throw std::domain_error("divisibility by the zero polynomial");
  for (const auto& [k, c] : b.terms())
    if (c.deg() > 0) throw std::invalid_argument("divides_over_fq: divisor has t-dependent coefficients");
  const FieldDesc& f = b.field();
  const auto lk = leading_key(b);
  const FqElem lc_inv = f.inv(b.terms().at(lk).coeff(0));
  BiPoly r = a;
  // reduce until no term of r is divisible by the leading monomial of b
  for (;;) {
    bool reduced = false;
    // scan terms from largest in grlex so the process terminates
    std::vector<BiPoly::Key> keys;
    for (const auto& [k, c] : r.terms()) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [](auto& x, auto& y) { return grlex_less(y, x); });
    for (const auto& k : keys) {
      if (k.first >= lk.first && k.second >= lk.second) {
        const PolyT c = r.coeff(k.first, k.second).scaled(lc_inv);
        BiPoly shift(f);
        shift.add_term(k.first - lk.first, k.second - lk.second, c);
        r = r - shift * b;
        reduced = true;
        break;
      }
    }
    if (!reduced) break;
  }
  return r.is_zero();
}

}  // namespace ffdet
