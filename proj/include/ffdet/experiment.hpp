#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ffdet/enumerate.hpp"

namespace ffdet {

/// Grid of curve-count experiments. Text form: one key=value per line,
/// lists comma separated, '#' starts a comment.
struct ExperimentConfig {
  std::vector<uint32_t> primes{5};
  std::vector<uint32_t> extensions{1};
  std::vector<int> deltas{1};
  std::vector<int> ns{1, 2, 3};
  CurveShape shape = CurveShape::weierstrass;
  std::vector<uint64_t> seeds{1};
  uint64_t budget = kDefaultBudget;
  EnumMode mode = EnumMode::hensel;
  bool require_irreducible = true;
  std::string out;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws std::invalid_argument naming the offending line.
ExperimentConfig parse_config(std::string_view text);
std::string format_config(const ExperimentConfig& c);
/// Problems that make the grid unusable (empty when fine).
std::vector<std::string> config_problems(const ExperimentConfig& c);

/// Seeded curve for a grid cell: the first seed of seed, seed + k * kSeedStride
/// (k < 64) whose curve is certified irreducible when that is required.
inline constexpr uint64_t kSeedStride = 1'000'003;
std::optional<std::pair<PlaneCurve, uint64_t>> grid_curve(const FieldDesc& f, int delta, CurveShape shape, uint64_t seed,
                                                          bool require_irreducible);

struct CountRow {
  std::string kind = "cell";  // cell or summary
  uint32_t p = 0, a = 0;
  uint64_t q = 0;
  int delta = 0;
  std::string shape;
  uint64_t seed = 0;
  std::string curve;
  int n = 0;
  uint64_t count = 0;
  int64_t bound_value = 0;
  Rational fitted_C;
  uint64_t trivial_value = 0;
  std::string status = "ok";
  double elapsed_ms = 0;
};

/// One row per (p, a, delta, seed, n) in that order, then one summary row per
/// delta with the largest fitted_C. Cells run concurrently; output order is fixed.
std::vector<CountRow> run_count_grid(const ExperimentConfig& c, bool parallel = true);

/// CSV with header; the trailing elapsed_ms column is the only
/// nondeterministic field and is omitted when with_elapsed is false.
std::string rows_to_csv(const std::vector<CountRow>& rows, bool with_elapsed = true);
nlohmann::json rows_to_json(const std::vector<CountRow>& rows, bool with_elapsed = true);

struct AuditRow {
  int delta = 0;
  Exponent lt;
  int s_max = 0;
  int64_t hf_slope = 0, hf_intercept = 0;  // closed form delta s - delta(delta-3)/2
  int hf_mismatches = 0;                   // staircase vs closed form, delta-1 <= s <= s_max
  int64_t sigma_residual = 0;              // max |s HF - sigma_0 - sigma_1 - sigma_2|
  std::vector<int64_t> hf;                 // staircase HF(s), s = 0..s_max
  std::array<Rational, 3> a{};
  bool salberger_ok = false;               // a_1 + a_2 <= 1/2
};

/// Every leading exponent (0, i, delta - i) for delta = 1..delta_max.
std::vector<AuditRow> run_audit(int delta_max, int s_max);
std::string audit_to_csv(const std::vector<AuditRow>& rows);
nlohmann::json audit_to_json(const std::vector<AuditRow>& rows);

nlohmann::json bounds_to_json(const BoundRecord& b);

}  // namespace ffdet
