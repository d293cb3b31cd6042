#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffdet/enumerate.hpp"
#include "ffdet/matrix.hpp"

namespace ffdet {

/// Curve points whose coordinates agree with center mod t^beta.
struct BallGroup {
  int beta = 1;
  Point center;
  std::vector<Point> points;
};

/// Empty when the group is well formed; otherwise the first violated condition.
std::string ball_group_problem(const BallGroup& g, const PlaneCurve& c);

/// Rows are points, columns the values iota(point)^alpha = x^{a1} y^{a2}.
PolyMatrix monomial_matrix(const std::vector<Point>& points, const std::vector<Exponent>& monomials);

struct DetLemmaResult {
  bool zero = false;
  int64_t ord = 0;        // ord_t(Delta), meaningless when zero
  int deg = -1;           // deg_t(Delta), -1 when zero
  int64_t ord_bound = 0;  // beta e
  int64_t deg_bound = 0;  // (n - 1)(sigma_1 + sigma_2)
  bool ord_holds = false;
  bool deg_holds = false;
};

/// Delta over a group of exactly mu = #monomials points. The valuation bound
/// is ord Delta >= beta e (or Delta = 0); the degree bound uses n.
DetLemmaResult check_det_lemma(const BallGroup& g, const std::vector<Exponent>& monomials, int64_t e, int n);

/// A nonzero polynomial with support in M_z(s) vanishing on all points, from
/// the maximal minor chosen by rank_profile and alpha_0 the Salberger-largest
/// unused column. Throws std::domain_error when the points impose mu
/// independent conditions.
BiPoly auxiliary_polynomial(const std::vector<Point>& points, const PlaneCurve& c, int s);

/// Divisibility of g by the curve polynomial over F_q(t), by pseudo-division
/// in the Salberger order.
bool divisible_by_curve(const BiPoly& g, const PlaneCurve& c);

class CoverRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CoverGroup {
  Point center;
  std::vector<int> points;       // indices into CoverCertificate::points
  std::vector<int> hypersurfaces;
};

struct CoverCertificate {
  PlaneCurve curve;
  int n = 0;
  SChoice choice;
  std::vector<Point> points;
  std::vector<CoverGroup> groups;
  std::vector<BiPoly> hypersurfaces;
  std::vector<int> assignment;   // point index -> hypersurface index
  int split_groups = 0;          // joint-residue groups that needed splitting
};

struct CertificateCheck {
  bool enumeration_matches = false;
  bool coverage = false;
  bool properness = false;
  bool bezout = false;
  bool grouping = false;
  int64_t max_points_per_hypersurface = 0;
  int64_t bezout_bound = 0;
  std::vector<std::string> problems;
  bool ok() const { return enumeration_matches && coverage && properness && bezout && grouping; }
};

/// Builds the cover for X(F_q[t])_n. Throws CoverRefused when the curve is
/// not certified irreducible or an auxiliary polynomial is divisible by f.
CoverCertificate cover_curve(const PlaneCurve& c, int n, const EnumOptions& opt = {});

/// Recomputes everything from the curve: enumeration, (s, beta), grouping,
/// vanishing, properness and the per-hypersurface count <= s delta.
CertificateCheck verify_certificate(const CoverCertificate& cert, const EnumOptions& opt = {});

nlohmann::json certificate_to_json(const CoverCertificate& cert, const CertificateCheck* check = nullptr);
/// Parses the curve, points and hypersurfaces back; throws on malformed input.
CoverCertificate certificate_from_json(const nlohmann::json& j);

/// Groups of mu points with a common x mod t^beta, a common y mod t and f_y a
/// unit at the residual point, so each group lies on one Hensel branch.
/// Draws up to count groups uniformly from the eligible buckets.
std::vector<BallGroup> single_branch_groups(const PlaneCurve& c, const std::vector<Point>& points, int beta, int mu,
                                            int count, std::mt19937_64& rng);

}  // namespace ffdet
