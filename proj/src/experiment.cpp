#include "ffdet/experiment.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ffdet {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& s, const std::string& key) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("config: bad number '" + s + "' for " + key);
  return v;
}

template <class T>
std::vector<T> parse_list(const std::string& s, const std::string& key) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number<T>(item, key));
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt_double(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::stringstream ss{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string val = trim(std::string_view(line).substr(eq + 1));
    try {
      if (key == "primes") c.primes = parse_list<uint32_t>(val, key);
      else if (key == "extensions") c.extensions = parse_list<uint32_t>(val, key);
      else if (key == "deltas") c.deltas = parse_list<int>(val, key);
      else if (key == "ns") c.ns = parse_list<int>(val, key);
      else if (key == "shape") c.shape = parse_curve_shape(val);
      else if (key == "seeds") c.seeds = parse_list<uint64_t>(val, key);
      else if (key == "budget") c.budget = parse_number<uint64_t>(val, key);
      else if (key == "mode") c.mode = parse_enum_mode(val);
      else if (key == "require_irreducible") {
        if (val != "true" && val != "false") throw std::invalid_argument("expected true or false");
        c.require_irreducible = val == "true";
      } else if (key == "out") c.out = val;
      else throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

std::string format_config(const ExperimentConfig& c) {
  std::string s;
  s += "primes=" + join(c.primes) + "\n";
  s += "extensions=" + join(c.extensions) + "\n";
  s += "deltas=" + join(c.deltas) + "\n";
  s += "ns=" + join(c.ns) + "\n";
  s += "shape=" + to_string(c.shape) + "\n";
  s += "seeds=" + join(c.seeds) + "\n";
  s += "budget=" + std::to_string(c.budget) + "\n";
  s += "mode=" + to_string(c.mode) + "\n";
  s += std::string("require_irreducible=") + (c.require_irreducible ? "true" : "false") + "\n";
  if (!c.out.empty()) s += "out=" + c.out + "\n";
  return s;
}

std::vector<std::string> config_problems(const ExperimentConfig& c) {
  std::vector<std::string> out;
  for (auto p : c.primes)
    if (!is_prime(p)) out.push_back(std::to_string(p) + " is not prime");
  for (auto a : c.extensions)
    if (a < 1) out.push_back("extension degrees must be >= 1");
  for (int d : c.deltas)
    if (d < 1) out.push_back("deltas must be >= 1");
  for (int n : c.ns)
    if (n < 1) out.push_back("ns must be >= 1");
  for (auto p : c.primes)
    for (auto a : c.extensions)
      for (int n : c.ns) {
        // every x in F_q[t]_n is visited at least once
        try {
          const uint64_t q = ipow(p, a);
          if (ipow(q, static_cast<unsigned>(n)) > c.budget)
            out.push_back("q=" + std::to_string(q) + ", n=" + std::to_string(n) + " exceeds the budget");
        } catch (const std::overflow_error&) {
          out.push_back("grid cell size overflows");
        }
      }
  return out;
}

std::optional<std::pair<PlaneCurve, uint64_t>> grid_curve(const FieldDesc& f, int delta, CurveShape shape, uint64_t seed,
                                                          bool require_irreducible) {
  for (uint64_t k = 0; k < 64; ++k) {
    const uint64_t s = seed + k * kSeedStride;
    PlaneCurve c = random_curve(f, delta, shape, s);
    if (!require_irreducible || c.flagged_irreducible()) return std::make_pair(std::move(c), s);
  }
  return std::nullopt;
}

std::vector<CountRow> run_count_grid(const ExperimentConfig& c, bool parallel) {
  if (auto probs = config_problems(c); !probs.empty()) throw std::invalid_argument("config: " + probs.front());
  struct Cell {
    CountRow row;
    std::optional<PlaneCurve> curve;
  };
  std::vector<Cell> cells;
  for (auto p : c.primes)
    for (auto a : c.extensions) {
      const FieldDesc f = FieldDesc::make(p, a);
      for (int delta : c.deltas)
        for (auto seed : c.seeds) {
          auto gc = grid_curve(f, delta, c.shape, seed, c.require_irreducible);
          for (int n : c.ns) {
            Cell cell;
            CountRow& r = cell.row;
            r.p = p;
            r.a = a;
            r.q = f.order();
            r.delta = delta;
            r.shape = to_string(c.shape);
            r.seed = gc ? gc->second : seed;
            r.n = n;
            if (gc) {
              r.curve = gc->first.spec();
              cell.curve = gc->first;
            } else {
              r.status = "no_irreducible_curve";
            }
            cells.push_back(std::move(cell));
          }
        }
    }
  EnumOptions opt;
  opt.mode = c.mode;
  opt.budget = c.budget;
  opt.parallel = false;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int64_t i = 0; i < static_cast<int64_t>(cells.size()); ++i) {
    Cell& cell = cells[i];
    if (!cell.curve) continue;
    CountRow& r = cell.row;
    try {
      const CountReport rep = count_vs_bounds(*cell.curve, r.n, opt);
      r.count = rep.count;
      r.bound_value = rep.bound_value;
      r.fitted_C = rep.fitted_C;
      r.trivial_value = rep.trivial_value;
      r.elapsed_ms = rep.elapsed_ms;
    } catch (const BudgetExceeded&) {
      r.status = "budget_exceeded";
    }
  }
  std::vector<CountRow> rows;
  std::map<int, CountRow> summary;
  for (auto& cell : cells) {
    const CountRow& r = cell.row;
    if (r.status == "ok") {
      auto [it, ins] = summary.try_emplace(r.delta);
      CountRow& s = it->second;
      if (ins) {
        s.kind = "summary";
        s.delta = r.delta;
        s.shape = r.shape;
      }
      s.fitted_C = std::max(s.fitted_C, r.fitted_C);
      s.count += r.count;
      s.elapsed_ms += r.elapsed_ms;
    }
    rows.push_back(r);
  }
  for (auto& [d, s] : summary) rows.push_back(s);
  return rows;
}

std::string rows_to_csv(const std::vector<CountRow>& rows, bool with_elapsed) {
  std::string s = "kind,p,a,q,delta,shape,seed,curve,n,count,bound_value,fitted_C,fitted_C_float,trivial_value,status";
  s += with_elapsed ? ",elapsed_ms\n" : "\n";
  for (const auto& r : rows) {
    const bool cell = r.kind == "cell";
    auto num = [&](auto v) { return cell ? std::to_string(v) : std::string(); };
    s += r.kind + "," + num(r.p) + "," + num(r.a) + "," + num(r.q) + "," + std::to_string(r.delta) + "," + r.shape + "," +
         num(r.seed) + "," + csv_quote(r.curve) + "," + num(r.n) + "," + std::to_string(r.count) + "," + num(r.bound_value) +
         "," + to_string(r.fitted_C) + "," + fmt_double(to_double(r.fitted_C), 6) + "," + num(r.trivial_value) + "," +
         (cell ? r.status : std::string("ok"));
    if (with_elapsed) s += "," + fmt_double(r.elapsed_ms, 4);
    s += "\n";
  }
  return s;
}

nlohmann::json rows_to_json(const std::vector<CountRow>& rows, bool with_elapsed) {
  nlohmann::json cells = nlohmann::json::array(), summary = nlohmann::json::array();
  for (const auto& r : rows) {
    if (r.kind == "summary") {
      summary.push_back({{"delta", r.delta}, {"shape", r.shape}, {"max_fitted_C", to_string(r.fitted_C)},
                         {"max_fitted_C_float", to_double(r.fitted_C)}, {"points", r.count}});
      continue;
    }
    nlohmann::json j = {{"p", r.p},         {"a", r.a},
                        {"q", r.q},         {"delta", r.delta},
                        {"shape", r.shape}, {"seed", r.seed},
                        {"curve", r.curve}, {"n", r.n},
                        {"count", r.count}, {"bound_value", r.bound_value},
                        {"fitted_C", to_string(r.fitted_C)}, {"fitted_C_float", to_double(r.fitted_C)},
                        {"trivial_value", r.trivial_value}, {"status", r.status}};
    if (with_elapsed) j["elapsed_ms"] = r.elapsed_ms;
    cells.push_back(j);
  }
  return {{"cells", cells}, {"summary", summary}};
}

std::vector<AuditRow> run_audit(int delta_max, int s_max) {
  if (delta_max < 1 || delta_max > 6) throw std::invalid_argument("audit: delta_max must be in 1..6");
  if (s_max < delta_max + 3) throw std::invalid_argument("audit: s_max must be at least delta_max + 3");
  std::vector<AuditRow> rows;
  for (int d = 1; d <= delta_max; ++d)
    for (int i = d; i >= 0; --i) {
      AuditRow r;
      r.delta = d;
      r.lt = Exponent{0, i, d - i};
      r.s_max = s_max;
      r.hf_slope = d;
      r.hf_intercept = -static_cast<int64_t>(d) * (d - 3) / 2;
      for (int s = 0; s <= s_max; ++s) {
        const StaircaseSlice sl = staircase(r.lt, s);
        r.hf.push_back(sl.hf);
        if (s >= d - 1 && sl.hf != hf_closed_form(d, s)) ++r.hf_mismatches;
        const int64_t res = static_cast<int64_t>(s) * sl.hf - sl.sigma[0] - sl.sigma[1] - sl.sigma[2];
        r.sigma_residual = std::max(r.sigma_residual, res < 0 ? -res : res);
      }
      r.a = hilbert_ratios(r.lt, s_max).a;
      r.salberger_ok = r.a[1] + r.a[2] <= Rational(1, 2);
      rows.push_back(std::move(r));
    }
  return rows;
}

std::string audit_to_csv(const std::vector<AuditRow>& rows) {
  std::string s = "delta,lt,s_max,hf_closed_form,hf_at_s_max,hf_mismatches,sigma_residual,a0,a1,a2,a1_plus_a2,salberger_ok\n";
  for (const auto& r : rows) {
    std::string cf = std::to_string(r.hf_slope) + "*s";
    if (r.hf_intercept > 0) cf += "+" + std::to_string(r.hf_intercept);
    if (r.hf_intercept < 0) cf += std::to_string(r.hf_intercept);
    s += std::to_string(r.delta) + "," + csv_quote(r.lt.to_string()) + "," + std::to_string(r.s_max) + "," + cf + "," +
         std::to_string(r.hf.back()) + "," + std::to_string(r.hf_mismatches) + "," + std::to_string(r.sigma_residual) + "," +
         to_string(r.a[0]) + "," + to_string(r.a[1]) + "," + to_string(r.a[2]) + "," + to_string(r.a[1] + r.a[2]) + "," +
         (r.salberger_ok ? "true" : "false") + "\n";
  }
  return s;
}

nlohmann::json audit_to_json(const std::vector<AuditRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows)
    out.push_back({{"delta", r.delta},
                   {"lt", r.lt.entries()},
                   {"s_max", r.s_max},
                   {"hf_slope", r.hf_slope},
                   {"hf_intercept", r.hf_intercept},
                   {"hf", r.hf},
                   {"hf_mismatches", r.hf_mismatches},
                   {"sigma_residual", r.sigma_residual},
                   {"a", {to_string(r.a[0]), to_string(r.a[1]), to_string(r.a[2])}},
                   {"a1_plus_a2", to_string(r.a[1] + r.a[2])},
                   {"salberger_ok", r.salberger_ok}});
  return out;
}

nlohmann::json bounds_to_json(const BoundRecord& b) {
  nlohmann::json j;
  j["inputs"] = {{"q", b.in.q},          {"n", b.in.n},
                 {"delta", b.in.delta},  {"dim", b.in.dim},
                 {"ambient", b.in.ambient}, {"cover_n", b.in.cover_n},
                 {"cover_m", b.in.cover_m}, {"cover_d", b.in.cover_d},
                 {"height", b.in.height}};
  j["trivial_exponent"] = b.trivial_exponent;
  j["naive_degree"] = b.naive_degree;
  j["cover"] = {{"mu", b.cover.mu}, {"r", b.cover.r}, {"V", b.cover.V}, {"e", b.cover.e}};
  j["cover_count_poschar"] = {{"q_factor", b.cover_q_factor},
                              {"height_exponent", to_string(b.cover_height_exponent)},
                              {"log10", b.cover_count_log10}};
  j["factorial_term_log10"] = b.factorial_term_log10;
  j["main_bound"] = {{"n_squared", b.main_n_squared},
                     {"q_exponent", b.main_q_exponent},
                     {"shape", b.main_shape ? nlohmann::json(*b.main_shape) : nlohmann::json(nullptr)},
                     {"constant", "C"}};
  j["alpha"] = to_string(b.alpha);
  return j;
}

}  // namespace ffdet
