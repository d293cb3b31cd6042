#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ffdet/poly_t.hpp"

namespace ffdet {

/// Polynomial in (x, y) with coefficients in F_q[t], sparse by (deg_x, deg_y).
class BiPoly {
 public:
  using Key = std::pair<int, int>;

  BiPoly() = default;
  explicit BiPoly(FieldDesc f) : field_(std::move(f)) {}

  const FieldDesc& field() const { return field_; }
  const std::map<Key, PolyT>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(int dx, int dy, const PolyT& c);
  PolyT coeff(int dx, int dy) const;

  /// Total degree in (x, y); -1 for zero.
  int total_degree() const;
  int deg_x() const;
  int deg_y() const;

  PolyT eval(const PolyT& x, const PolyT& y) const;
  /// Coefficients of f(x, .) as a polynomial in y, low degree first.
  std::vector<PolyT> y_coeffs_at(const PolyT& x) const;

  BiPoly partial_x() const;
  BiPoly partial_y() const;
  /// Substitutes t = t0, giving a polynomial over F_q (constant PolyT coefficients).
  BiPoly specialize_t(FqElem t0) const;

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  BiPoly operator-() const;
  BiPoly scaled(const PolyT& c) const;

  std::string to_string() const;

  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

 private:
  FieldDesc field_;
  std::map<Key, PolyT> terms_;
};

/// Exact divisibility of a by b in F_q[x, y] (coefficients must be constants
/// in t). Uses the division algorithm with respect to graded lex.
bool divides_over_fq(const BiPoly& b, const BiPoly& a);

}  // namespace ffdet
