#include "ffdet/detcover.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "ffdet/poly_text.hpp"

namespace ffdet {

namespace {

std::vector<uint32_t> residue_key(const PolyT& x, const PolyT& y, int bx, int by) {
  std::vector<uint32_t> k;
  k.reserve(bx + by);
  for (int i = 0; i < bx; ++i) k.push_back(x.coeff(i).v);
  for (int i = 0; i < by; ++i) k.push_back(y.coeff(i).v);
  return k;
}

std::vector<PolyT> powers(const PolyT& x, int s) {
  std::vector<PolyT> out;
  out.push_back(PolyT::constant(x.field(), x.field().one()));
  for (int i = 1; i <= s; ++i) out.push_back(out.back() * x);
  return out;
}

}  // namespace

std::string ball_group_problem(const BallGroup& g, const PlaneCurve& c) {
  if (g.beta < 1) return "radius must be at least 1";
  const PolyT cx = g.center.first.truncated(g.beta), cy = g.center.second.truncated(g.beta);
  for (const auto& [x, y] : g.points) {
    if (!c.f.eval(x, y).is_zero()) return "point (" + format_poly_t(x) + ", " + format_poly_t(y) + ") is not on the curve";
    if (x.truncated(g.beta) != cx || y.truncated(g.beta) != cy)
      return "point (" + format_poly_t(x) + ", " + format_poly_t(y) + ") lies outside the ball";
  }
  return {};
}

PolyMatrix monomial_matrix(const std::vector<Point>& points, const std::vector<Exponent>& monomials) {
  int s = 0;
  for (const auto& a : monomials) {
    if (a.size() != 3) throw std::invalid_argument("monomial_matrix: exponents must have three entries");
    s = std::max(s, a.total());
  }
  PolyMatrix m;
  m.reserve(points.size());
  for (const auto& [x, y] : points) {
    const auto px = powers(x, s), py = powers(y, s);
    std::vector<PolyT> row;
    row.reserve(monomials.size());
    for (const auto& a : monomials) row.push_back(px[a[1]] * py[a[2]]);
    m.push_back(std::move(row));
  }
  return m;
}

DetLemmaResult check_det_lemma(const BallGroup& g, const std::vector<Exponent>& monomials, int64_t e, int n) {
  if (g.points.size() != monomials.size())
    throw std::invalid_argument("check_det_lemma: need exactly as many points as monomials");
  const FieldDesc& f = g.center.first.field().valid() ? g.center.first.field() : g.points.at(0).first.field();
  const PolyT delta = det_exact(f, monomial_matrix(g.points, monomials));
  DetLemmaResult r;
  r.ord_bound = static_cast<int64_t>(g.beta) * e;
  for (const auto& a : monomials) r.deg_bound += static_cast<int64_t>(n - 1) * (a[1] + a[2]);
  r.zero = delta.is_zero();
  if (r.zero) {
    r.ord_holds = r.deg_holds = true;
    return r;
  }
  r.ord = delta.ord();
  r.deg = delta.deg();
  r.ord_holds = r.ord >= r.ord_bound;
  r.deg_holds = r.deg <= r.deg_bound;
  return r;
}

BiPoly auxiliary_polynomial(const std::vector<Point>& points, const PlaneCurve& c, int s) {
  const auto monos = staircase(c.lt, s).monomials;
  const PolyMatrix a = monomial_matrix(points, monos);
  const RankProfile prof = rank_profile(c.field, a);
  if (prof.rank >= static_cast<int>(monos.size()))
    throw std::domain_error("auxiliary_polynomial: points impose independent conditions on degree " + std::to_string(s));
  int alpha0 = static_cast<int>(monos.size()) - 1;
  while (std::find(prof.cols.begin(), prof.cols.end(), alpha0) != prof.cols.end()) --alpha0;
  std::vector<int> cols = prof.cols;
  cols.push_back(alpha0);
  std::sort(cols.begin(), cols.end());
  BiPoly g(c.field);
  const int rho = prof.rank;
  for (int j = 0; j <= rho; ++j) {
    std::vector<int> minor_cols;
    for (int k = 0; k <= rho; ++k)
      if (k != j) minor_cols.push_back(cols[k]);
    PolyT cof = det_exact(c.field, submatrix(a, prof.rows, minor_cols));
    if ((rho + j) % 2) cof = -cof;
    const Exponent& e = monos[cols[j]];
    g.add_term(e[1], e[2], cof);
  }
  if (g.is_zero()) throw std::logic_error("auxiliary_polynomial: expansion vanished identically");
  return g;
}

bool divisible_by_curve(const BiPoly& g, const PlaneCurve& c) {
  if (g.is_zero()) return true;
  HomPoly G = homogenize(g, g.total_degree());
  const PolyT lc = c.F.at(c.lt);
  while (!G.empty()) {
    const Exponent lead = leading_exponent(G);
    if (!c.lt.divides(lead)) return false;
    const Exponent shift = lead - c.lt;
    const PolyT cg = G.at(lead);
    HomPoly next;
    for (const auto& [e, v] : G) next.emplace(e, v * lc);
    for (const auto& [e, v] : c.F) {
      auto [it, inserted] = next.try_emplace(e + shift, -(v * cg));
      if (!inserted) it->second -= v * cg;
    }
    for (auto it = next.begin(); it != next.end();) it = it->second.is_zero() ? next.erase(it) : std::next(it);
    G = std::move(next);
  }
  return true;
}

CoverCertificate cover_curve(const PlaneCurve& c, int n, const EnumOptions& opt) {
  if (!c.flagged_irreducible())
    throw CoverRefused("curve is not certified irreducible (" +
                       (c.irreducibility_checked ? c.irreducibility.note : std::string("not checked")) + ")");
  CoverCertificate cert;
  cert.curve = c;
  cert.n = n;
  cert.choice = choose_s(c, n);
  cert.points = enumerate_points(c, n, opt);
  const int beta = cert.choice.beta, s = cert.choice.s;
  const int64_t mu = cert.choice.mu;
  const auto monos = staircase(c.lt, s).monomials;

  std::map<std::vector<uint32_t>, std::vector<int>> buckets;
  for (size_t i = 0; i < cert.points.size(); ++i)
    buckets[residue_key(cert.points[i].first, cert.points[i].second, beta, beta)].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> members;
  for (auto& [k, v] : buckets) members.push_back(std::move(v));

  struct Work {
    std::vector<std::vector<int>> subs;
    std::vector<BiPoly> polys;
    std::string error;
  };
  std::vector<Work> work(members.size());
  auto pts_of = [&](const std::vector<int>& idx) {
    std::vector<Point> out;
    for (int i : idx) out.push_back(cert.points[i]);
    return out;
  };
  auto rank_of = [&](const std::vector<int>& idx) {
    return rank_profile(c.field, monomial_matrix(pts_of(idx), monos)).rank;
  };

#pragma omp parallel for schedule(dynamic) if (opt.parallel)
  for (int64_t gi = 0; gi < static_cast<int64_t>(members.size()); ++gi) {
    Work& w = work[gi];
    try {
      const auto& idx = members[gi];
      if (rank_of(idx) < mu) {
        w.subs.push_back(idx);
      } else {
        for (int i : idx) {
          bool placed = false;
          for (auto& sub : w.subs) {
            sub.push_back(i);
            if (rank_of(sub) < mu) {
              placed = true;
              break;
            }
            sub.pop_back();
          }
          if (!placed) w.subs.push_back({i});
        }
      }
      for (const auto& sub : w.subs) {
        BiPoly g = auxiliary_polynomial(pts_of(sub), c, s);
        if (divisible_by_curve(g, c)) {
          w.error = "auxiliary polynomial " + format_bipoly(g) + " is divisible by the curve";
          break;
        }
        w.polys.push_back(std::move(g));
      }
    } catch (const std::exception& ex) {
      w.error = ex.what();
    }
  }

  cert.assignment.assign(cert.points.size(), -1);
  for (size_t gi = 0; gi < members.size(); ++gi) {
    Work& w = work[gi];
    if (!w.error.empty()) throw CoverRefused(w.error);
    CoverGroup grp;
    const Point& p0 = cert.points[members[gi].front()];
    grp.center = {p0.first.truncated(beta), p0.second.truncated(beta)};
    grp.points = members[gi];
    if (w.subs.size() > 1) ++cert.split_groups;
    for (size_t k = 0; k < w.subs.size(); ++k) {
      const int h = static_cast<int>(cert.hypersurfaces.size());
      cert.hypersurfaces.push_back(std::move(w.polys[k]));
      grp.hypersurfaces.push_back(h);
      for (int i : w.subs[k]) cert.assignment[i] = h;
    }
    cert.groups.push_back(std::move(grp));
  }
  return cert;
}

CertificateCheck verify_certificate(const CoverCertificate& cert, const EnumOptions& opt) {
  CertificateCheck ck;
  const PlaneCurve& c = cert.curve;
  const SChoice fresh = choose_s(c, cert.n);
  const int s = fresh.s, beta = fresh.beta;
  if (fresh.s != cert.choice.s || fresh.beta != cert.choice.beta)
    ck.problems.push_back("stored (s, beta) differ from a fresh computation");
  ck.bezout_bound = static_cast<int64_t>(s) * c.delta;

  const auto pts = enumerate_points(c, cert.n, opt);
  ck.enumeration_matches = pts == cert.points;
  if (!ck.enumeration_matches) ck.problems.push_back("point list differs from a fresh enumeration");

  ck.grouping = cert.assignment.size() == cert.points.size() && ck.problems.empty();
  std::vector<int> seen(cert.points.size(), 0);
  for (const auto& g : cert.groups) {
    BallGroup bg{beta, g.center, {}};
    for (int i : g.points) {
      if (i < 0 || i >= static_cast<int>(cert.points.size())) {
        ck.grouping = false;
        ck.problems.push_back("group references a missing point");
        continue;
      }
      ++seen[i];
      bg.points.push_back(cert.points[i]);
      if (ck.grouping && std::find(g.hypersurfaces.begin(), g.hypersurfaces.end(), cert.assignment[i]) == g.hypersurfaces.end()) {
        ck.grouping = false;
        ck.problems.push_back("point assigned outside its group");
      }
    }
    if (auto why = ball_group_problem(bg, c); !why.empty()) {
      ck.grouping = false;
      ck.problems.push_back("group: " + why);
    }
  }
  for (int v : seen)
    if (v != 1) {
      ck.grouping = false;
      ck.problems.push_back("groups do not partition the points");
      break;
    }

  ck.coverage = cert.assignment.size() == cert.points.size();
  for (size_t i = 0; i < cert.assignment.size() && ck.coverage; ++i) {
    const int h = cert.assignment[i];
    if (h < 0 || h >= static_cast<int>(cert.hypersurfaces.size()) ||
        !cert.hypersurfaces[h].eval(cert.points[i].first, cert.points[i].second).is_zero()) {
      ck.coverage = false;
      ck.problems.push_back("point " + std::to_string(i) + " is not on its hypersurface");
    }
  }

  ck.properness = true;
  ck.bezout = true;
  for (size_t h = 0; h < cert.hypersurfaces.size(); ++h) {
    const BiPoly& g = cert.hypersurfaces[h];
    if (g.is_zero() || g.total_degree() > s || divisible_by_curve(g, c)) {
      ck.properness = false;
      ck.problems.push_back("hypersurface " + std::to_string(h) + " is zero, too large or divisible by f");
    }
    int64_t on = 0;
    for (const auto& [x, y] : pts)
      if (g.eval(x, y).is_zero()) ++on;
    ck.max_points_per_hypersurface = std::max(ck.max_points_per_hypersurface, on);
    if (on > ck.bezout_bound) {
      ck.bezout = false;
      ck.problems.push_back("hypersurface " + std::to_string(h) + " carries " + std::to_string(on) + " points");
    }
  }
  return ck;
}

nlohmann::json certificate_to_json(const CoverCertificate& cert, const CertificateCheck* check) {
  using nlohmann::json;
  json j;
  j["curve"] = cert.curve.spec();
  j["n"] = cert.n;
  j["delta"] = cert.curve.delta;
  j["q"] = cert.curve.field.order();
  j["s"] = cert.choice.s;
  j["beta"] = cert.choice.beta;
  j["mu"] = cert.choice.mu;
  j["e"] = cert.choice.e;
  j["sigma1"] = cert.choice.sigma1;
  j["sigma2"] = cert.choice.sigma2;
  json pts = json::array();
  for (const auto& [x, y] : cert.points) pts.push_back({format_poly_t(x), format_poly_t(y)});
  j["points"] = pts;
  json groups = json::array();
  for (const auto& g : cert.groups)
    groups.push_back({{"center", {format_poly_t(g.center.first), format_poly_t(g.center.second)}},
                      {"points", g.points},
                      {"hypersurfaces", g.hypersurfaces}});
  j["groups"] = groups;
  json hyps = json::array();
  for (const auto& h : cert.hypersurfaces) hyps.push_back(format_bipoly(h));
  j["hypersurfaces"] = hyps;
  j["assignment"] = cert.assignment;
  const uint64_t q = cert.curve.field.order();
  j["census"] = {{"points", cert.points.size()},
                 {"groups", cert.groups.size()},
                 {"hypersurfaces", cert.hypersurfaces.size()},
                 {"split_groups", cert.split_groups},
                 {"group_bound", ipow(q, static_cast<unsigned>(2 * cert.choice.beta))},
                 {"bezout_bound", static_cast<int64_t>(cert.choice.s) * cert.curve.delta}};
  if (check) {
    j["verification"] = {{"ok", check->ok()},
                         {"enumeration_matches", check->enumeration_matches},
                         {"coverage", check->coverage},
                         {"properness", check->properness},
                         {"bezout", check->bezout},
                         {"grouping", check->grouping},
                         {"max_points_per_hypersurface", check->max_points_per_hypersurface},
                         {"problems", check->problems}};
  }
  return j;
}

CoverCertificate certificate_from_json(const nlohmann::json& j) {
  CoverCertificate cert;
  cert.curve = curve_from_spec(j.at("curve").get<std::string>(), true);
  const FieldDesc& f = cert.curve.field;
  cert.n = j.at("n").get<int>();
  cert.choice.s = j.at("s").get<int>();
  cert.choice.beta = j.at("beta").get<int>();
  cert.choice.mu = j.at("mu").get<int64_t>();
  cert.choice.e = j.at("e").get<int64_t>();
  cert.choice.sigma1 = j.at("sigma1").get<int64_t>();
  cert.choice.sigma2 = j.at("sigma2").get<int64_t>();
  for (const auto& p : j.at("points"))
    cert.points.emplace_back(parse_poly_t(f, p.at(0).get<std::string>()), parse_poly_t(f, p.at(1).get<std::string>()));
  for (const auto& g : j.at("groups")) {
    CoverGroup grp;
    grp.center = {parse_poly_t(f, g.at("center").at(0).get<std::string>()),
                  parse_poly_t(f, g.at("center").at(1).get<std::string>())};
    grp.points = g.at("points").get<std::vector<int>>();
    grp.hypersurfaces = g.at("hypersurfaces").get<std::vector<int>>();
    if (grp.hypersurfaces.size() > 1) ++cert.split_groups;
    cert.groups.push_back(std::move(grp));
  }
  for (const auto& h : j.at("hypersurfaces")) cert.hypersurfaces.push_back(parse_bipoly(f, h.get<std::string>()));
  cert.assignment = j.at("assignment").get<std::vector<int>>();
  return cert;
}

std::vector<BallGroup> single_branch_groups(const PlaneCurve& c, const std::vector<Point>& points, int beta, int mu,
                                            int count, std::mt19937_64& rng) {
  const BiPoly fy = c.f.partial_y();
  std::map<std::vector<uint32_t>, std::vector<Point>> buckets;
  for (const auto& p : points) {
    if (fy.eval(p.first, p.second).coeff(0).is_zero()) continue;
    buckets[residue_key(p.first, p.second, beta, 1)].push_back(p);
  }
  std::vector<const std::vector<Point>*> eligible;
  for (const auto& [k, v] : buckets)
    if (static_cast<int>(v.size()) >= mu) eligible.push_back(&v);
  std::vector<BallGroup> out;
  if (eligible.empty()) return out;
  for (int i = 0; i < count; ++i) {
    std::vector<Point> pool = *eligible[rng() % eligible.size()];
    for (int k = 0; k < mu; ++k) std::swap(pool[k], pool[k + rng() % (pool.size() - k)]);
    pool.resize(mu);
    BallGroup g;
    g.beta = beta;
    g.center = {pool.front().first.truncated(beta), pool.front().second.truncated(beta)};
    g.points = std::move(pool);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace ffdet
