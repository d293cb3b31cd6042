#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffdet/combinat.hpp"
#include "ffdet/laurent.hpp"

namespace ffdet {

/// {x : ord(x - center) >= radius}
struct Ball {
  LaurentApprox center;
  int64_t radius = 0;
};

/// One component: sum of a_alpha (x - origin)^alpha.
using SeriesComponent = std::map<Exponent, LaurentApprox>;

/// An explicit power-series map on a box in F_q((t))^m. When truncated is
/// set the listed terms stop at degree_cap and every omitted coefficient has
/// valuation >= tail_val.
struct SeriesChart {
  FieldDesc field;
  int arity = 1;
  std::vector<LaurentApprox> origin;
  std::vector<SeriesComponent> components;
  std::vector<Ball> domain;
  int degree_cap = 0;
  bool truncated = false;
  int64_t tail_val = 0;
  int64_t precision = 24;
  int64_t guard = 4;

  int codim() const { return static_cast<int>(components.size()); }
};

/// Throws std::invalid_argument when arities or the degree cap disagree.
void validate_chart(const SeriesChart& c);
bool in_domain(const SeriesChart& c, const std::vector<LaurentApprox>& x);

/// f(x) at working precision.
std::vector<LaurentApprox> evaluate(const SeriesChart& c, const std::vector<LaurentApprox>& x);

/// Coefficients of T^{<r}_{f,y} in powers of (x - y), one map per component,
/// from Hasse derivatives D^k f(y) = sum_a a_alpha binom(alpha, k) (y - o)^(alpha - k).
/// Throws std::invalid_argument when a truncated chart stops below degree r - 1.
std::vector<SeriesComponent> taylor_section(const SeriesChart& c, const std::vector<LaurentApprox>& y, int r);

std::vector<LaurentApprox> evaluate_section(const std::vector<SeriesComponent>& sec, const std::vector<LaurentApprox>& y,
                                            const std::vector<LaurentApprox>& x, int64_t precision);

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct SamplePair {
  std::vector<LaurentApprox> x, y;
  int64_t k = 0;  // ord(x - y)
};

/// Exact samples stratified by k = ord(x - y), from the largest domain radius
/// (at least 1) up to floor((precision - guard) / r), round robin over strata.
/// Empty when no stratum fits the precision.
std::vector<SamplePair> sample_pairs(const SeriesChart& c, int r, int budget, uint64_t seed);

struct PairCheck {
  Verdict verdict = Verdict::inconclusive;
  int64_t ord_diff = 0;  // lower bound when not determined
  int64_t need = 0;      // r k
  bool exact_equality = false;
};

/// ord(f(x) - T^{<r}_{f,y}(x)) >= r ord(x - y), decided at working precision.
PairCheck check_pair(const SeriesChart& c, int r, const SamplePair& s);

struct Violation {
  std::string x, y;
  int64_t ord_diff = 0;
  int64_t need = 0;
};

struct TrVerdict {
  int r = 0;
  Verdict verdict = Verdict::inconclusive;
  int samples = 0;
  int passed = 0;
  int inconclusive = 0;
  int equality = 0;   // samples with ord(f - T) = r ord(x - y) exactly
  int64_t min_excess = 0;  // min over decided samples of ord(f - T) - r k
  std::vector<Violation> violations;
  std::string note;
};

TrVerdict check_Tr(const SeriesChart& c, int r, int sample_budget, uint64_t seed);
TrVerdict check_Tr_on(const SeriesChart& c, int r, const std::vector<SamplePair>& samples);

/// Discrete-log blocks A_1..A_l of F_q^x, l = gcd(r, q - 1), each mapped
/// bijectively onto the r-th powers by x -> x^r, paired with coset
/// representatives d_1 < ... < d_l of the r-th powers (smallest packed index
/// in each coset).
struct CosetSelector {
  FieldDesc field;
  int r = 1;
  uint32_t ell = 1;
  std::vector<FqElem> reps;
  /// xi(a) = d_i for a in A_i; a must be nonzero.
  FqElem xi(FqElem a) const;
  uint32_t block(FqElem a) const;
};
CosetSelector coset_selector(const FieldDesc& f, int r);

/// p_{r,j}(x) = t^j xi(ac x) x^r for nonzero x.
LaurentApprox power_map(const CosetSelector& sel, int j, const LaurentApprox& x);

/// The chart x -> f(t^{j_i} xi_i x_i^{r_i})_i developed around the center of
/// new_domain. Only charts without a truncated tail are accepted. Throws
/// std::domain_error when the image of new_domain leaves the chart's domain.
SeriesChart power_precompose(const SeriesChart& c, const std::vector<int>& r, const std::vector<int>& j,
                             const std::vector<FqElem>& xi, const std::vector<Ball>& new_domain);
SeriesChart power_precompose(const SeriesChart& c, int r, int j, FqElem xi, const Ball& new_domain);

struct CoeffBoundFailure {
  int component = 0;
  Exponent k;
  int64_t ord = 0;
  int64_t bound = 0;
};

struct CoeffBoundReport {
  Verdict verdict = Verdict::inconclusive;
  int checked = 0;
  int max_degree = 0;
  std::vector<CoeffBoundFailure> failures;
  std::vector<Exponent> undetermined;
};

/// Univariate: ord c_k >= (r - k) ord b'. Multivariate: ord c_k >=
/// r max_{k_j > 0} ord b'_j - sum_j k_j ord b'_j. Checked for k != 0 over
/// every listed coefficient of a chart developed around b'.
CoeffBoundReport check_coeff_bounds(const SeriesChart& c, int r, const std::vector<LaurentApprox>& b, bool multidim);

/// Univariate identity chart on a ball.
SeriesChart identity_chart(const FieldDesc& f, const Ball& domain, int64_t precision = 24);

nlohmann::json laurent_to_json(const LaurentApprox& a);
LaurentApprox laurent_from_json(const FieldDesc& f, const nlohmann::json& j);
nlohmann::json chart_to_json(const SeriesChart& c);
SeriesChart chart_from_json(const nlohmann::json& j);
nlohmann::json verdict_to_json(const TrVerdict& v);
nlohmann::json coeff_report_to_json(const CoeffBoundReport& r);

}  // namespace ffdet
