#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ffdet/hilbert.hpp"
#include "ffdet/rational.hpp"

namespace ffdet {

using Point = std::pair<PolyT, PolyT>;

/// Lexicographic on (x, y) coefficient vectors, low degree first, residues
/// compared as integers.
bool point_less(const Point& a, const Point& b);
bool poly_less(const PolyT& a, const PolyT& b);

enum class EnumMode { brute, hensel };
EnumMode parse_enum_mode(const std::string& s);
std::string to_string(EnumMode m);

inline constexpr uint64_t kDefaultBudget = 100'000'000;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumOptions {
  EnumMode mode = EnumMode::hensel;
  uint64_t budget = kDefaultBudget;
  bool parallel = true;
};

/// Points of f = 0 with both coordinates in F_q[t]_n, sorted canonically.
///
/// brute: every x, and every y digit by digit, discarding a prefix y mod t^k
/// as soon as f(x, y) is nonzero mod t^k. hensel: lifts the simple residual
/// roots of f(x, .) and searches the remaining residue classes as in brute.
/// The budget bounds the number of candidate evaluations; exceeding it throws
/// BudgetExceeded. Parallel and serial runs return identical lists.
std::vector<Point> enumerate_points(const PlaneCurve& c, int n, const EnumOptions& opt = {});

/// Plain double loop over F_q[t]_n^2 with no pruning. Test oracle.
std::vector<Point> enumerate_naive(const PlaneCurve& c, int n, uint64_t budget = kDefaultBudget);

struct CountReport {
  std::string curve;
  uint32_t p = 0;
  uint64_t q = 0;
  int n = 0;
  int delta = 0;
  uint64_t count = 0;
  std::optional<std::vector<Point>> points;
  int64_t bound_value = 0;       // n^2 q^{ceil(n/delta)}
  Rational fitted_C;             // count / bound_value
  uint64_t trivial_value = 0;    // q^n
  double elapsed_ms = 0;
};

CountReport count_vs_bounds(const PlaneCurve& c, int n, const EnumOptions& opt = {}, bool keep_points = false);

enum class CurveShape { weierstrass, dense };
CurveShape parse_curve_shape(const std::string& s);
std::string to_string(CurveShape s);

/// Deterministic random curve of total degree delta with coefficients in
/// F_q[t]_2. weierstrass: y^k - g(x) with k = min(2, delta) and g monic of
/// degree delta when delta >= 3. Lines (delta = 1) get constant coefficients.
/// Irreducibility is checked (best effort).
PlaneCurve random_curve(const FieldDesc& f, int delta, CurveShape shape, uint64_t seed);

}  // namespace ffdet
