// ffdet: command line front end.
//
// Exit codes: 0 pass, 1 verification failure, 2 inconclusive (budget or
// precision), 3 input error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ffdet/detcover.hpp"
#include "ffdet/experiment.hpp"
#include "ffdet/poly_text.hpp"
#include "ffdet/trcheck.hpp"

using namespace ffdet;

namespace {

enum Exit { kPass = 0, kVerifyFail = 1, kInconclusive = 2, kInputError = 3 };

struct Global {
  std::optional<uint64_t> budget;
  std::optional<uint64_t> seed;
  std::optional<int64_t> precision;
  std::string out;
  std::string format;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const Global& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw InputError("cannot write " + g.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

// ---- count ----

struct CountArgs {
  std::string config;
  std::string curve;
  std::vector<uint32_t> primes;
  std::vector<uint32_t> extensions;
  std::vector<int> deltas;
  std::vector<int> ns;
  std::string shape;
  std::string mode = "hensel";
  bool no_elapsed = false;
  bool points = false;
};

int cmd_count(const Global& g, const CountArgs& a) {
  const bool csv = g.format != "json";
  if (!a.curve.empty()) {
    if (a.ns.empty()) throw InputError("--curve needs --n");
    const PlaneCurve c = curve_from_spec(a.curve, false);
    EnumOptions opt;
    opt.budget = g.budget.value_or(kDefaultBudget);
    opt.mode = parse_enum_mode(a.mode);
    std::vector<CountRow> rows;
    std::vector<std::optional<std::vector<Point>>> pts;
    bool inconclusive = false;
    for (int n : a.ns) {
      CountRow r;
      r.p = c.field.p();
      r.a = c.field.degree();
      r.q = c.field.order();
      r.delta = c.delta;
      r.shape = "given";
      r.curve = c.spec();
      r.n = n;
      try {
        const auto rep = count_vs_bounds(c, n, opt, a.points);
        r.count = rep.count;
        r.bound_value = rep.bound_value;
        r.fitted_C = rep.fitted_C;
        r.trivial_value = rep.trivial_value;
        r.elapsed_ms = rep.elapsed_ms;
        pts.push_back(rep.points);
      } catch (const BudgetExceeded&) {
        r.status = "budget_exceeded";
        inconclusive = true;
        pts.emplace_back();
      }
      rows.push_back(r);
    }
    if (csv) {
      emit(g, rows_to_csv(rows, !a.no_elapsed));
    } else {
      auto j = rows_to_json(rows, !a.no_elapsed);
      if (a.points)
        for (size_t i = 0; i < rows.size(); ++i) {
          if (!pts[i]) continue;
          nlohmann::json list = nlohmann::json::array();
          for (const auto& [x, y] : *pts[i]) list.push_back({format_poly_t(x), format_poly_t(y)});
          j[i]["points"] = list;
        }
      emit(g, j.dump(2));
    }
    return inconclusive ? kInconclusive : kPass;
  }

  ExperimentConfig cfg;
  if (!a.config.empty()) {
    try {
      cfg = parse_config(read_file(a.config));
    } catch (const std::invalid_argument& e) {
      throw InputError(a.config + ": " + e.what());
    }
  }
  if (!a.primes.empty()) cfg.primes = a.primes;
  if (!a.extensions.empty()) cfg.extensions = a.extensions;
  if (!a.deltas.empty()) cfg.deltas = a.deltas;
  if (!a.ns.empty()) cfg.ns = a.ns;
  if (!a.shape.empty()) cfg.shape = parse_curve_shape(a.shape);
  if (g.seed) cfg.seeds = {*g.seed};
  if (g.budget) cfg.budget = *g.budget;
  cfg.mode = parse_enum_mode(a.mode);
  if (auto probs = config_problems(cfg); !probs.empty()) throw InputError("config: " + probs.front());
  const auto rows = run_count_grid(cfg, true);
  Global g2 = g;
  if (g2.out.empty()) g2.out = cfg.out;
  emit(g2, csv ? rows_to_csv(rows, !a.no_elapsed) : rows_to_json(rows, !a.no_elapsed).dump(2));
  for (const auto& r : rows)
    if (r.status != "ok") return kInconclusive;
  return kPass;
}

// ---- cover ----

struct CoverArgs {
  std::string curve;
  int n = 0;
  std::string check;
  std::string mode = "hensel";
};

std::string check_csv(const CoverCertificate& c, const CertificateCheck& ck) {
  std::string s = "curve,n,s,beta,points,groups,hypersurfaces,split_groups,max_points_per_hypersurface,bezout_bound,ok\n";
  s += csv_quote(c.curve.spec()) + "," + std::to_string(c.n) + "," + std::to_string(c.choice.s) + "," +
       std::to_string(c.choice.beta) + "," + std::to_string(c.points.size()) + "," + std::to_string(c.groups.size()) + "," +
       std::to_string(c.hypersurfaces.size()) + "," + std::to_string(c.split_groups) + "," +
       std::to_string(ck.max_points_per_hypersurface) + "," + std::to_string(ck.bezout_bound) + "," +
       (ck.ok() ? "true" : "false") + "\n";
  return s;
}

int cmd_cover(const Global& g, const CoverArgs& a) {
  EnumOptions opt;
  opt.budget = g.budget.value_or(kDefaultBudget);
  opt.mode = parse_enum_mode(a.mode);
  CoverCertificate cert;
  if (!a.check.empty()) {
    try {
      cert = certificate_from_json(nlohmann::json::parse(read_file(a.check)));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(a.check + ": " + e.what());
    }
  } else {
    if (a.curve.empty() || a.n < 1) throw InputError("cover needs --curve and --n >= 1, or --check FILE");
    const PlaneCurve c = curve_from_spec(a.curve, true);
    // serialize and reload so that the verdict is about the emitted certificate
    cert = certificate_from_json(certificate_to_json(cover_curve(c, a.n, opt)));
  }
  const CertificateCheck ck = verify_certificate(cert, opt);
  if (g.format == "csv")
    emit(g, check_csv(cert, ck));
  else
    emit(g, certificate_to_json(cert, &ck).dump(2));
  for (const auto& p : ck.problems) std::cerr << "cover: " << p << "\n";
  return ck.ok() ? kPass : kVerifyFail;
}

// ---- audit ----

int cmd_audit(const Global& g, int delta_max, int s_max) {
  if (delta_max < 1 || delta_max > 6) throw InputError("--delta-max must be between 1 and 6");
  if (s_max < delta_max + 3) throw InputError("--s-max must be at least delta-max + 3");
  const auto rows = run_audit(delta_max, s_max);
  emit(g, g.format == "json" ? audit_to_json(rows).dump(2) : audit_to_csv(rows));
  for (const auto& r : rows)
    if (r.hf_mismatches || r.sigma_residual || !r.salberger_ok) return kVerifyFail;
  return kPass;
}

// ---- trcheck ----

struct TrArgs {
  std::string chart;
  std::optional<int> r;
  int samples = 200;
  bool coeff_bounds = false;
};

int cmd_trcheck(const Global& g, const TrArgs& a) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(a.chart));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(a.chart + ": " + e.what());
  }
  SeriesChart c;
  try {
    c = chart_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(a.chart + ": " + e.what());
  }
  if (g.precision) {
    c.precision = *g.precision;
    validate_chart(c);
  }
  int r = 0;
  if (a.r)
    r = *a.r;
  else if (doc.contains("r"))
    r = doc.at("r").get<int>();
  else
    throw InputError("no --r given and the chart names none");
  if (r < 1) throw InputError("r must be positive");
  if (a.samples < 1) throw InputError("--samples must be positive");
  const TrVerdict v = check_Tr(c, r, a.samples, g.seed.value_or(1));
  Verdict overall = v.verdict;
  nlohmann::json j = verdict_to_json(v);
  j["chart"] = a.chart;
  j["precision"] = c.precision;
  j["guard"] = c.guard;
  if (a.coeff_bounds) {
    const auto rep = check_coeff_bounds(c, r, c.origin, c.arity > 1);
    j["coefficient_bounds"] = coeff_report_to_json(rep);
    if (rep.verdict == Verdict::fail)
      overall = Verdict::fail;
    else if (rep.verdict == Verdict::inconclusive && overall == Verdict::pass)
      overall = Verdict::inconclusive;
  }
  j["overall"] = to_string(overall);
  if (g.format == "csv") {
    std::string s = "chart,r,verdict,samples,passed,inconclusive,equality,violations\n";
    s += csv_quote(a.chart) + "," + std::to_string(r) + "," + to_string(overall) + "," + std::to_string(v.samples) + "," +
         std::to_string(v.passed) + "," + std::to_string(v.inconclusive) + "," + std::to_string(v.equality) + "," +
         std::to_string(v.violations.size()) + "\n";
    emit(g, s);
  } else {
    emit(g, j.dump(2));
  }
  switch (overall) {
    case Verdict::pass: return kPass;
    case Verdict::fail: return kVerifyFail;
    default: return kInconclusive;
  }
}

// ---- bounds ----

int cmd_bounds(const Global& g, const BoundInputs& in) {
  const BoundRecord b = bound_formulas(in);
  const nlohmann::json j = bounds_to_json(b);
  if (g.format == "csv") {
    std::string s = "key,value\n";
    const nlohmann::json flat = j.flatten();
    for (const auto& [k, v] : flat.items()) s += csv_quote(k) + "," + csv_quote(v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    emit(g, s);
  } else {
    emit(g, j.dump(2));
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting points of bounded height on plane curves over F_q[t]"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--budget", g.budget, "Maximum candidate evaluations per enumeration");
  app.add_option("--seed", g.seed, "Seed for curve generation and sampling");
  app.add_option("--precision", g.precision, "Working precision in t-digits (trcheck)");
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  CountArgs ca;
  auto* count = app.add_subcommand("count", "Count points on a curve or over a grid and fit the bound shape");
  count->add_option("--config", ca.config, "Grid config file (key=value lines)");
  count->add_option("--curve", ca.curve, "Curve spec, e.g. 'p=5;a=1;f=y^2 - x^3 - t*x'");
  count->add_option("--primes", ca.primes)->delimiter(',');
  count->add_option("--extensions", ca.extensions)->delimiter(',');
  count->add_option("--deltas", ca.deltas)->delimiter(',');
  count->add_option("--n", ca.ns, "Degree bounds n (comma separated)")->delimiter(',');
  count->add_option("--shape", ca.shape)->check(CLI::IsMember({"weierstrass", "dense"}));
  count->add_option("--mode", ca.mode)->check(CLI::IsMember({"brute", "hensel"}));
  count->add_flag("--no-elapsed", ca.no_elapsed, "Omit the elapsed_ms column");
  count->add_flag("--points", ca.points, "List the points (with --curve and --format=json)");

  CoverArgs cva;
  auto* cover = app.add_subcommand("cover", "Build and verify a cover certificate");
  cover->add_option("--curve", cva.curve, "Curve spec");
  cover->add_option("--n", cva.n, "Degree bound n");
  cover->add_option("--check", cva.check, "Verify an existing certificate file instead");
  cover->add_option("--mode", cva.mode)->check(CLI::IsMember({"brute", "hensel"}));

  int delta_max = 5, s_max = 15;
  auto* audit = app.add_subcommand("audit", "Hilbert function and Salberger ratio audit");
  audit->add_option("--delta-max", delta_max);
  audit->add_option("--s-max", s_max);

  TrArgs ta;
  auto* tr = app.add_subcommand("trcheck", "Check T_r-approximation of a chart");
  tr->add_option("--chart", ta.chart, "Chart JSON file")->required();
  tr->add_option("--r", ta.r, "Approximation order (default: the chart's r)");
  tr->add_option("--samples", ta.samples, "Number of sample pairs");
  tr->add_flag("--coeff-bounds", ta.coeff_bounds, "Also check the coefficient bounds around the chart origin");

  BoundInputs bi;
  auto* bounds = app.add_subcommand("bounds", "Evaluate the bound formulas");
  bounds->add_option("--q", bi.q)->required();
  bounds->add_option("--n", bi.n)->required();
  bounds->add_option("--delta", bi.delta)->required();
  bounds->add_option("--dim", bi.dim);
  bounds->add_option("--ambient", bi.ambient);
  bounds->add_option("--cover-n", bi.cover_n);
  bounds->add_option("--cover-m", bi.cover_m);
  bounds->add_option("--cover-d", bi.cover_d);
  bounds->add_option("--height", bi.height);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kInputError;
  }

  try {
    if (*count) return cmd_count(g, ca);
    if (*cover) return cmd_cover(g, cva);
    if (*audit) return cmd_audit(g, delta_max, s_max);
    if (*tr) return cmd_trcheck(g, ta);
    if (*bounds) return cmd_bounds(g, bi);
  } catch (const BudgetExceeded& e) {
    std::cerr << "ffdet: " << e.what() << "\n";
    return kInconclusive;
  } catch (const CoverRefused& e) {
    std::cerr << "ffdet: cover refused: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    std::cerr << "ffdet: parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "ffdet: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ffdet: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "ffdet: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "ffdet: " << e.what() << "\n";
    return kInconclusive;
  }
  return kInputError;
}
