#include "ffdet/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>

#include "ffdet/hensel.hpp"

namespace ffdet {

bool poly_less(const PolyT& a, const PolyT& b) {
  const int len = std::max(a.size(), b.size());
  for (int i = 0; i < len; ++i) {
    const uint32_t u = a.coeff(i).v, v = b.coeff(i).v;
    if (u != v) return u < v;
  }
  return false;
}

bool point_less(const Point& a, const Point& b) {
  if (poly_less(a.first, b.first)) return true;
  if (poly_less(b.first, a.first)) return false;
  return poly_less(a.second, b.second);
}

EnumMode parse_enum_mode(const std::string& s) {
  if (s == "brute") return EnumMode::brute;
  if (s == "hensel") return EnumMode::hensel;
  throw std::invalid_argument("unknown enumeration mode '" + s + "'");
}

std::string to_string(EnumMode m) { return m == EnumMode::brute ? "brute" : "hensel"; }

CurveShape parse_curve_shape(const std::string& s) {
  if (s == "weierstrass") return CurveShape::weierstrass;
  if (s == "dense") return CurveShape::dense;
  throw std::invalid_argument("unknown curve shape '" + s + "'");
}

std::string to_string(CurveShape s) { return s == CurveShape::weierstrass ? "weierstrass" : "dense"; }

namespace {

PolyT horner(const std::vector<PolyT>& g, const PolyT& y) {
  PolyT acc(y.field());
  for (size_t k = g.size(); k-- > 0;) acc = acc * y + g[k];
  return acc;
}

// Shared per-x kernel. evals counts candidate evaluations for the budget.
class FiberSearch {
 public:
  FiberSearch(const FieldDesc& f, int n, const std::atomic<bool>& abort)
      : f_(f), n_(n), abort_(abort) {}

  uint64_t evals = 0;

  // All y of degree < n in the class prefix mod t^k with g(y) = 0, where
  // g(prefix) is already known to vanish mod t^k.
  void search(const std::vector<PolyT>& g, const PolyT& prefix, int k, const PolyT& x, std::vector<Point>& out) {
    if (abort_.load(std::memory_order_relaxed)) return;
    if (k == n_) {
      ++evals;
      if (horner(g, prefix).is_zero()) out.emplace_back(x, prefix);
      return;
    }
    for (uint32_t c = 0; c < f_.order(); ++c) {
      const PolyT y = prefix + PolyT::monomial(f_, FqElem{c}, k);
      ++evals;
      const PolyT v = horner(g, y);
      if (v.is_zero() || v.ord() >= k + 1) search(g, y, k + 1, x, out);
    }
  }

  void brute(const std::vector<PolyT>& g, const PolyT& x, std::vector<Point>& out) {
    search(g, PolyT(f_), 0, x, out);
  }

  void hensel(const std::vector<PolyT>& g, const PolyT& x, std::vector<Point>& out) {
    std::vector<FqElem> red(g.size()), dred;
    for (size_t k = 0; k < g.size(); ++k) red[k] = g[k].coeff(0);
    for (size_t k = 1; k < red.size(); ++k) dred.push_back(f_.mul(f_.from_int(static_cast<int64_t>(k)), red[k]));
    auto eval = [&](const std::vector<FqElem>& p, FqElem y) {
      FqElem acc{0};
      for (size_t k = p.size(); k-- > 0;) acc = f_.add(f_.mul(acc, y), p[k]);
      return acc;
    };
    SeriesPolyY series;
    for (const auto& c : g) series.push_back(LaurentApprox::from_poly(c));
    for (uint32_t c = 0; c < f_.order(); ++c) {
      if (abort_.load(std::memory_order_relaxed)) return;
      const FqElem y0{c};
      ++evals;
      if (!eval(red, y0).is_zero()) continue;
      if (!eval(dred, y0).is_zero()) {
        const PolyT y = hensel_lift(series, y0, n_).to_poly(n_);
        ++evals;
        if (horner(g, y).is_zero()) out.emplace_back(x, y);
      } else {
        search(g, PolyT::constant(f_, y0), 1, x, out);
      }
    }
  }

 private:
  const FieldDesc& f_;
  int n_;
  const std::atomic<bool>& abort_;
};

void run_fiber(FiberSearch& fs, const PlaneCurve& c, int n, uint64_t xi, EnumMode mode, std::vector<Point>& out) {
  const PolyT x = PolyT::from_index(c.field, xi, n);
  const std::vector<PolyT> g = c.f.y_coeffs_at(x);
  if (mode == EnumMode::brute)
    fs.brute(g, x, out);
  else
    fs.hensel(g, x, out);
}

void finish(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end(), point_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

}  // namespace

std::vector<Point> enumerate_points(const PlaneCurve& c, int n, const EnumOptions& opt) {
  if (n < 1) throw std::invalid_argument("enumerate_points: n must be >= 1");
  const uint64_t q = c.field.order();
  const uint64_t nx = ipow(q, static_cast<unsigned>(n));
  std::vector<Point> pts;
  std::atomic<bool> abort{false};
  std::atomic<uint64_t> evals{0};

  if (!opt.parallel) {
    FiberSearch fs(c.field, n, abort);
    for (uint64_t xi = 0; xi < nx; ++xi) {
      run_fiber(fs, c, n, xi, opt.mode, pts);
      if (fs.evals > opt.budget) {
        abort = true;
        break;
      }
    }
    evals = fs.evals;
  } else {
#pragma omp parallel
    {
      FiberSearch fs(c.field, n, abort);
      std::vector<Point> local;
      uint64_t reported = 0;
#pragma omp for schedule(dynamic, 8)
      for (int64_t xi = 0; xi < static_cast<int64_t>(nx); ++xi) {
        if (abort.load(std::memory_order_relaxed)) continue;
        run_fiber(fs, c, n, static_cast<uint64_t>(xi), opt.mode, local);
        const uint64_t total = evals.fetch_add(fs.evals - reported) + (fs.evals - reported);
        reported = fs.evals;
        if (total > opt.budget) abort = true;
      }
#pragma omp critical(ffdet_enumerate_merge)
      pts.insert(pts.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
    }
  }
  if (abort || evals > opt.budget)
    throw BudgetExceeded("enumeration exceeded the budget of " + std::to_string(opt.budget) + " candidate evaluations");
  finish(pts);
  return pts;
}

std::vector<Point> enumerate_naive(const PlaneCurve& c, int n, uint64_t budget) {
  if (n < 1) throw std::invalid_argument("enumerate_naive: n must be >= 1");
  const uint64_t nx = ipow(c.field.order(), static_cast<unsigned>(n));
  if (nx > budget / nx) throw BudgetExceeded("naive enumeration needs q^(2n) evaluations");
  std::vector<Point> pts;
  for (uint64_t xi = 0; xi < nx; ++xi) {
    const PolyT x = PolyT::from_index(c.field, xi, n);
    for (uint64_t yi = 0; yi < nx; ++yi) {
      const PolyT y = PolyT::from_index(c.field, yi, n);
      if (c.f.eval(x, y).is_zero()) pts.emplace_back(x, y);
    }
  }
  finish(pts);
  return pts;
}

CountReport count_vs_bounds(const PlaneCurve& c, int n, const EnumOptions& opt, bool keep_points) {
  const auto t0 = std::chrono::steady_clock::now();
  CountReport r;
  r.curve = c.spec();
  r.p = c.field.p();
  r.q = c.field.order();
  r.n = n;
  r.delta = c.delta;
  auto pts = enumerate_points(c, n, opt);
  r.count = pts.size();
  const uint64_t qe = ipow(r.q, static_cast<unsigned>(ceil_div(n, c.delta)));
  r.bound_value = static_cast<int64_t>(static_cast<uint64_t>(n) * n * qe);
  r.fitted_C = Rational(static_cast<int64_t>(r.count), r.bound_value);
  r.trivial_value = ipow(r.q, static_cast<unsigned>(n));
  if (keep_points) r.points = std::move(pts);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

PlaneCurve random_curve(const FieldDesc& f, int delta, CurveShape shape, uint64_t seed) {
  if (delta < 1) throw std::invalid_argument("random_curve: delta must be >= 1");
  std::mt19937_64 rng(seed);
  const uint64_t q = f.order();
  // lines use constant coefficients so that y = c1 x + c0 is a bijection on F_q[t]_n
  const uint64_t range = delta == 1 ? q : q * q;
  auto coeff = [&] { return PolyT::from_index(f, rng() % range, 2); };
  const PolyT one = PolyT::constant(f, f.one());
  BiPoly g(f);
  if (shape == CurveShape::weierstrass) {
    const int k = std::min(2, delta);
    g.add_term(0, k, one);
    if (delta >= 3) g.add_term(delta, 0, -one);
    const int top = delta >= 3 ? delta - 1 : delta;
    for (int i = 0; i <= top; ++i) g.add_term(i, 0, -coeff());
  } else {
    for (int d = 0; d <= delta; ++d)
      for (int i = 0; i <= d; ++i) g.add_term(i, d - i, coeff());
    if (g.total_degree() < delta) g.add_term(0, delta, one);
  }
  return curve_build(g, true);
}

}  // namespace ffdet
