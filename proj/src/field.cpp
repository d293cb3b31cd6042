#include "ffdet/field.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace ffdet {

namespace {

using Digits = std::vector<uint32_t>;

// Polynomials over F_p as digit vectors, low-degree-first.
void trim(Digits& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

Digits poly_mod(Digits a, const Digits& m, uint32_t p) {
  trim(a);
  const size_t dm = m.size() - 1;
  uint32_t lead_inv = 1;
  {
    uint64_t base = m.back(), e = p - 2, r = 1;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    lead_inv = static_cast<uint32_t>(r);
  }
  while (a.size() > dm) {
    const size_t shift = a.size() - 1 - dm;
    const uint64_t c = static_cast<uint64_t>(a.back()) * lead_inv % p;
    for (size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<uint32_t>((a[shift + i] + (p - c) * m[i]) % p);
    }
    trim(a);
  }
  return a;
}

bool has_factor_of_degree(const Digits& m, uint32_t p, uint32_t k) {
  // every monic polynomial of degree k, enumerated by its low coefficients
  uint64_t count = 1;
  for (uint32_t i = 0; i < k; ++i) count *= p;
  for (uint64_t idx = 0; idx < count; ++idx) {
    Digits g(k + 1, 0);
    uint64_t r = idx;
    for (uint32_t i = 0; i < k; ++i) {
      g[i] = static_cast<uint32_t>(r % p);
      r /= p;
    }
    g[k] = 1;
    if (poly_mod(m, g, p).empty()) return true;
  }
  return false;
}

bool irreducible(const Digits& m, uint32_t p) {
  const uint32_t a = static_cast<uint32_t>(m.size() - 1);
  for (uint32_t k = 1; 2 * k <= a; ++k)
    if (has_factor_of_degree(m, p, k)) return false;
  return true;
}

Digits canonical_modulus(uint32_t p, uint32_t a) {
  // Lexicographic low-degree-first: c0 is the most significant position.
  uint64_t count = 1;
  for (uint32_t i = 0; i < a; ++i) count *= p;
  for (uint64_t idx = 0; idx < count; ++idx) {
    Digits m(a + 1, 0);
    uint64_t r = idx;
    for (uint32_t i = a; i-- > 0;) {
      m[i] = static_cast<uint32_t>(r % p);
      r /= p;
    }
    m[a] = 1;
    if (a == 1 || irreducible(m, p)) return m;
  }
  throw FieldError("no irreducible polynomial found");
}

Digits unpack(uint32_t v, uint32_t p, uint32_t a) {
  Digits d(a, 0);
  for (uint32_t i = 0; i < a; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return d;
}

uint32_t pack(const Digits& d, uint32_t p) {
  uint32_t v = 0;
  for (size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

uint32_t mul_slow(uint32_t x, uint32_t y, uint32_t p, uint32_t a, const Digits& m) {
  Digits dx = unpack(x, p, a), dy = unpack(y, p, a);
  Digits prod(2 * a, 0);
  for (uint32_t i = 0; i < a; ++i)
    for (uint32_t j = 0; j < a; ++j)
      prod[i + j] = static_cast<uint32_t>((prod[i + j] + static_cast<uint64_t>(dx[i]) * dy[j]) % p);
  Digits r = poly_mod(prod, m, p);
  r.resize(a, 0);
  return pack(r, p);
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldDesc FieldDesc::make(uint32_t p, uint32_t a) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (a < 1) throw FieldError("extension degree must be >= 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < a; ++i) {
    q *= p;
    if (q > (1u << 20)) throw FieldError("field too large for tabulated arithmetic (p^a > 2^20)");
  }

  static std::mutex mu;
  static std::map<std::pair<uint32_t, uint32_t>, std::shared_ptr<const Impl>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find({p, a}); it != cache.end()) return FieldDesc(it->second);

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->a = a;
  impl->q = static_cast<uint32_t>(q);
  impl->modulus = canonical_modulus(p, a);

  auto mul = [&](uint32_t x, uint32_t y) -> uint32_t {
    if (a == 1) return static_cast<uint32_t>(static_cast<uint64_t>(x) * y % p);
    return mul_slow(x, y, p, a, impl->modulus);
  };

  const uint32_t order = impl->q - 1;
  const auto factors = prime_factors(order);
  auto pw = [&](uint32_t x, uint64_t e) {
    uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  };
  uint32_t g = 1;
  if (order > 1) {
    for (g = 2; g < impl->q; ++g) {
      bool ok = true;
      for (auto f : factors)
        if (pw(g, order / f) == 1) {
          ok = false;
          break;
        }
      if (ok) break;
    }
  }
  impl->exp.resize(order);
  impl->log.assign(impl->q, 0);
  uint32_t cur = 1;
  for (uint32_t i = 0; i < order; ++i) {
    impl->exp[i] = cur;
    impl->log[cur] = i;
    cur = mul(cur, g);
  }
  std::shared_ptr<const Impl> frozen = impl;
  cache.emplace(std::make_pair(p, a), frozen);
  return FieldDesc(frozen);
}

FqElem FieldDesc::from_int(int64_t n) const {
  int64_t r = n % static_cast<int64_t>(impl_->p);
  if (r < 0) r += impl_->p;
  return {static_cast<uint32_t>(r)};
}

FqElem FieldDesc::generator() const {
  if (impl_->a == 1) return from_int(-impl_->modulus[0]);
  return {impl_->p};
}

FqElem FieldDesc::from_coeffs(std::span<const uint32_t> c) const {
  Digits d(c.begin(), c.end());
  for (auto& x : d) x %= impl_->p;
  if (d.size() > impl_->a) {
    d = poly_mod(d, impl_->modulus, impl_->p);
  }
  d.resize(impl_->a, 0);
  return {pack(d, impl_->p)};
}

std::vector<uint32_t> FieldDesc::coeffs(FqElem x) const { return unpack(x.v, impl_->p, impl_->a); }

FqElem FieldDesc::from_index(uint64_t i) const {
  if (i >= impl_->q) throw FieldError("field index out of range");
  return {static_cast<uint32_t>(i)};
}

FqElem FieldDesc::add_slow(FqElem x, FqElem y) const {
  const uint32_t p = impl_->p;
  uint32_t out = 0, scale = 1, a = x.v, b = y.v;
  for (uint32_t i = 0; i < impl_->a; ++i) {
    uint32_t s = a % p + b % p;
    if (s >= p) s -= p;
    out += s * scale;
    scale *= p;
    a /= p;
    b /= p;
  }
  return {out};
}

FqElem FieldDesc::neg_slow(FqElem x) const {
  const uint32_t p = impl_->p;
  uint32_t out = 0, scale = 1, a = x.v;
  for (uint32_t i = 0; i < impl_->a; ++i) {
    uint32_t d = a % p;
    out += (d == 0 ? 0 : p - d) * scale;
    scale *= p;
    a /= p;
  }
  return {out};
}

FqElem FieldDesc::inv(FqElem x) const {
  if (x.v == 0) throw std::domain_error("inverse of zero in " + to_string());
  const uint32_t order = impl_->q - 1;
  const uint32_t l = impl_->log[x.v];
  return {impl_->exp[l == 0 ? 0 : order - l]};
}

FqElem FieldDesc::pow(FqElem x, uint64_t e) const {
  if (e == 0) return one();
  if (x.v == 0) return zero();
  const uint64_t order = impl_->q - 1;
  return {impl_->exp[(static_cast<uint64_t>(impl_->log[x.v]) * (e % order)) % order]};
}

uint32_t FieldDesc::log(FqElem x) const {
  if (x.v == 0) throw std::domain_error("log of zero");
  return impl_->log[x.v];
}

std::string FieldDesc::to_string() const {
  return std::to_string(impl_->p) + "^" + std::to_string(impl_->a);
}

std::string FieldDesc::elem_to_string(FqElem x) const {
  if (impl_->a == 1) return std::to_string(x.v);
  auto d = coeffs(x);
  std::string out;
  int terms = 0;
  for (size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += " + ";
    ++terms;
    if (i == 0) {
      out += std::to_string(d[i]);
    } else {
      if (d[i] != 1) out += std::to_string(d[i]) + "*";
      out += "z";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  if (out.empty()) return "0";
  return terms > 1 ? "(" + out + ")" : out;
}

void require_same_field(const FieldDesc& a, const FieldDesc& b) {
  if (!(a == b)) throw FieldError("field mismatch: " + a.to_string() + " vs " + b.to_string());
}

FqElem binomial_mod(const FieldDesc& f, uint64_t n, uint64_t k) {
  if (k > n) return f.zero();
  const uint64_t p = f.p();
  uint64_t r = 1;
  while (n || k) {
    const uint64_t ni = n % p, ki = k % p;
    if (ki > ni) return f.zero();
    // C(ni, ki) mod p with ni < p
    uint64_t num = 1, den = 1;
    for (uint64_t i = 0; i < ki; ++i) {
      num = num * ((ni - i) % p) % p;
      den = den * ((i + 1) % p) % p;
    }
    uint64_t inv = 1, base = den, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    r = r * (num * inv % p) % p;
    n /= p;
    k /= p;
  }
  return f.from_int(static_cast<int64_t>(r));
}

}  // namespace ffdet
