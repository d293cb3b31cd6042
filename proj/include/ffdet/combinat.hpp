#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "ffdet/rational.hpp"

namespace ffdet {

/// Exponent vector alpha in N^m with cached total degree |alpha|.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::vector<int> e);
  Exponent(std::initializer_list<int> e) : Exponent(std::vector<int>(e)) {}

  const std::vector<int>& entries() const { return e_; }
  int operator[](size_t i) const { return e_[i]; }
  size_t size() const { return e_.size(); }
  int total() const { return total_; }

  bool divides(const Exponent& o) const;
  friend Exponent operator+(const Exponent& a, const Exponent& b);
  friend Exponent operator-(const Exponent& a, const Exponent& b);

  /// Plain lexicographic order on entries, for use as a container key.
  friend bool operator==(const Exponent& a, const Exponent& b) { return a.e_ == b.e_; }
  friend auto operator<=>(const Exponent& a, const Exponent& b) { return a.e_ <=> b.e_; }

  std::string to_string() const;

 private:
  std::vector<int> e_;
  int total_ = 0;
};

/// Salberger's graded order: alpha < beta iff |alpha| < |beta|, or the
/// degrees agree and alpha_i > beta_i at the first index where they differ.
/// Throws std::invalid_argument on length mismatch.
std::strong_ordering salberger_compare(const Exponent& a, const Exponent& b);
inline bool salberger_less(const Exponent& a, const Exponent& b) { return salberger_compare(a, b) < 0; }

/// Lambda_m(k): all exponents in N^m of total degree k, in ascending
/// Salberger order (see hilbert.hpp). Empty when m == 0 and k > 0.
std::vector<Exponent> lambda_enumerate(int m, int k);

struct Counts {
  int64_t L;  // #Lambda_m(k) = C(k+m-1, m-1)
  int64_t D;  // #Delta_m(k)  = C(k+m, m)
};
Counts counts(int m, int k);

/// Exact binomial coefficient; throws std::overflow_error past int64.
int64_t binomial(int64_t n, int64_t k);

struct CoverParams {
  int n = 0, m = 0, d = 0;
  int64_t mu = 0, r = 0, V = 0, e = 0;
};

/// mu = D_n(d); r minimal with D_m(r-1) <= mu < D_m(r);
/// V = sum_{k<=d} k L_n(k); e = sum_{k<r} k L_m(k) + r (mu - D_m(r-1)).
CoverParams cover_params(int n, int m, int d);
/// True when every derived field matches a recomputation from (n, m, d).
bool cover_params_consistent(const CoverParams& c);

/// alpha = nm / ((m-1)(n-m)) for m > 1, n/(n-1) for m = 1.
Rational covering_exponent_alpha(int n, int m);

/// m V / e as an exact fraction.
Rational height_exponent(const CoverParams& c);

struct BoundInputs {
  int64_t q = 0;
  int n = 0;          // degree bound: coordinates in F_q[t]_n
  int delta = 0;      // degree of the variety
  int dim = 1;        // dimension d of the variety
  int ambient = 2;    // ambient affine dimension (naive degree bound)
  int cover_n = 2;    // covering lemma: ambient dimension
  int cover_m = 1;    // covering lemma: source dimension of the chart
  int cover_d = 1;    // covering lemma: hypersurface degree
  int64_t height = 1; // H
};

struct BoundRecord {
  BoundInputs in;
  int64_t trivial_exponent = 0;  // n d in  # <= C q^{n d}
  int64_t naive_degree = 0;      // delta m (d + 1)
  // positive characteristic covering count q^m H^{mV/e}
  CoverParams cover;
  int64_t cover_q_factor = 0;     // q^m
  Rational cover_height_exponent; // mV/e
  double cover_count_log10 = 0;   // log10(q^m H^{mV/e}), report only
  double factorial_term_log10 = 0; // log10((mu!)^{m/e}), report only
  // C n^2 q^{ceil(n/delta)}, C symbolic
  int64_t main_n_squared = 0;
  int64_t main_q_exponent = 0;
  std::optional<int64_t> main_shape;  // n^2 q^{ceil(n/delta)} when it fits
  Rational alpha;
};

BoundRecord bound_formulas(const BoundInputs& in);

/// ceil(a / b) for b > 0.
constexpr int64_t ceil_div(int64_t a, int64_t b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

}  // namespace ffdet
