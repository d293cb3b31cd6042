#include "ffdet/combinat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ffdet/poly_t.hpp"

namespace ffdet {

Exponent::Exponent(std::vector<int> e) : e_(std::move(e)) {
  for (int v : e_) {
    if (v < 0) throw std::invalid_argument("negative exponent entry");
    total_ += v;
  }
}

bool Exponent::divides(const Exponent& o) const {
  if (o.size() != size()) return false;
  for (size_t i = 0; i < size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw std::invalid_argument("exponent length mismatch");
  std::vector<int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a.e_[i] + b.e_[i];
  return Exponent(std::move(r));
}

Exponent operator-(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw std::invalid_argument("exponent length mismatch");
  std::vector<int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a.e_[i] - b.e_[i];
  return Exponent(std::move(r));
}

std::string Exponent::to_string() const {
  std::string s = "(";
  for (size_t i = 0; i < e_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e_[i]);
  }
  return s + ")";
}

std::strong_ordering salberger_compare(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw std::invalid_argument("salberger_compare: length mismatch");
  if (a.total() != b.total()) return a.total() <=> b.total();
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

namespace {

void enumerate_rec(int m, int k, size_t i, std::vector<int>& cur, std::vector<Exponent>& out) {
  if (i + 1 == static_cast<size_t>(m)) {
    cur[i] = k;
    out.emplace_back(cur);
    return;
  }
  // larger leading entries first: that is ascending Salberger order
  for (int v = k; v >= 0; --v) {
    cur[i] = v;
    enumerate_rec(m, k - v, i + 1, cur, out);
  }
}

}  // namespace

std::vector<Exponent> lambda_enumerate(int m, int k) {
  if (m < 0 || k < 0) throw std::invalid_argument("lambda_enumerate: negative argument");
  std::vector<Exponent> out;
  if (m == 0) {
    if (k == 0) out.emplace_back(std::vector<int>{});
    return out;
  }
  std::vector<int> cur(m, 0);
  enumerate_rec(m, k, 0, cur, out);
  return out;
}

int64_t binomial(int64_t n, int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (int64_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > INT64_MAX) throw std::overflow_error("binomial coefficient overflows int64");
  }
  return static_cast<int64_t>(r);
}

Counts counts(int m, int k) {
  if (m < 1 || k < 0) throw std::invalid_argument("counts: need m >= 1 and k >= 0");
  return {binomial(k + m - 1, m - 1), binomial(k + m, m)};
}

CoverParams cover_params(int n, int m, int d) {
  if (m < 1 || m >= n) throw std::invalid_argument("cover_params: need 1 <= m < n");
  if (d < 1) throw std::invalid_argument("cover_params: need d >= 1");
  CoverParams c;
  c.n = n;
  c.m = m;
  c.d = d;
  c.mu = counts(n, d).D;
  int64_t r = 1;
  while (counts(m, static_cast<int>(r)).D <= c.mu) ++r;
  c.r = r;
  const int64_t d_prev = counts(m, static_cast<int>(r - 1)).D;
  if (!(d_prev <= c.mu && c.mu < counts(m, static_cast<int>(r)).D))
    throw std::logic_error("cover_params: r search invariant broken");
  for (int k = 0; k <= d; ++k) c.V += k * counts(n, k).L;
  for (int64_t k = 1; k <= r - 1; ++k) c.e += k * counts(m, static_cast<int>(k)).L;
  c.e += r * (c.mu - d_prev);
  return c;
}

bool cover_params_consistent(const CoverParams& c) {
  try {
    const CoverParams fresh = cover_params(c.n, c.m, c.d);
    return fresh.mu == c.mu && fresh.r == c.r && fresh.V == c.V && fresh.e == c.e;
  } catch (const std::exception&) {
    return false;
  }
}

Rational covering_exponent_alpha(int n, int m) {
  if (m < 1 || m >= n) throw std::invalid_argument("covering_exponent_alpha: need 1 <= m < n");
  if (m == 1) return Rational(n, n - 1);
  return Rational(static_cast<int64_t>(n) * m, static_cast<int64_t>(m - 1) * (n - m));
}

Rational height_exponent(const CoverParams& c) { return Rational(c.m * c.V, c.e); }

BoundRecord bound_formulas(const BoundInputs& in) {
  if (in.q < 2 || in.n < 1 || in.delta < 1 || in.dim < 0 || in.ambient < 1 || in.height < 1)
    throw std::invalid_argument("bound_formulas: parameters must be positive");
  BoundRecord b;
  b.in = in;
  b.trivial_exponent = static_cast<int64_t>(in.n) * in.dim;
  b.naive_degree = static_cast<int64_t>(in.delta) * in.ambient * (in.dim + 1);
  b.cover = cover_params(in.cover_n, in.cover_m, in.cover_d);
  b.cover_q_factor = static_cast<int64_t>(ipow(static_cast<uint64_t>(in.q), static_cast<unsigned>(in.cover_m)));
  b.cover_height_exponent = height_exponent(b.cover);
  b.cover_count_log10 = in.cover_m * std::log10(static_cast<double>(in.q)) +
                        to_double(b.cover_height_exponent) * std::log10(static_cast<double>(in.height));
  b.factorial_term_log10 =
      static_cast<double>(in.cover_m) / static_cast<double>(b.cover.e) * std::lgamma(static_cast<double>(b.cover.mu) + 1.0) / std::log(10.0);
  b.main_n_squared = static_cast<int64_t>(in.n) * in.n;
  b.main_q_exponent = ceil_div(in.n, in.delta);
  try {
    const uint64_t qp = ipow(static_cast<uint64_t>(in.q), static_cast<unsigned>(b.main_q_exponent));
    if (qp <= static_cast<uint64_t>(INT64_MAX / b.main_n_squared)) b.main_shape = b.main_n_squared * static_cast<int64_t>(qp);
  } catch (const std::overflow_error&) {
  }
  b.alpha = covering_exponent_alpha(in.cover_n, in.cover_m);
  return b;
}

}  // namespace ffdet
