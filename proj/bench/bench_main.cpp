// Serial vs OpenMP timings for the two parallel kernels (point enumeration and
// cover construction). Each run also checks that both paths agree.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "ffdet/detcover.hpp"
#include "ffdet/enumerate.hpp"
#include "ffdet/hilbert.hpp"

using namespace ffdet;

namespace {

template <class F>
double best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (ms < best) best = ms;
  }
  return best;
}

struct Case {
  const char* curve;
  int n;
};

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  const std::vector<Case> cases = {
      {"p=5;a=1;f=y^2 - x^3 - t*x - 1", 4},
      {"p=7;a=1;f=y^2 - x^3 - t", 3},
      {"p=5;a=1;f=y - x^3 - t", 6},
      {"p=3;a=2;f=y^2 - x^3 - t*x", 3},
      {"p=5;a=1;f=y - x^2 - t", 7},
      {"p=7;a=1;f=y - 3*x", 4},
  };
  std::printf("threads=%d reps=%d\n", omp_get_max_threads(), reps);
  std::printf("%-8s %-34s %2s %8s %10s %10s %7s %s\n", "kernel", "curve", "n", "points", "serial_ms", "omp_ms", "speedup", "agree");
  bool all_agree = true;
  for (const auto& k : cases) {
    const PlaneCurve c = curve_from_spec(k.curve, true);
    EnumOptions ser, par;
    ser.parallel = false;
    par.parallel = true;

    std::vector<Point> a, b;
    const double ts = best_ms(reps, [&] { a = enumerate_points(c, k.n, ser); });
    const double tp = best_ms(reps, [&] { b = enumerate_points(c, k.n, par); });
    const bool ok = a == b;
    all_agree &= ok;
    std::printf("%-8s %-34s %2d %8zu %10.2f %10.2f %7.2f %s\n", "enum", k.curve, k.n, a.size(), ts, tp, ts / tp,
                ok ? "yes" : "NO");

    if (!c.flagged_irreducible()) continue;
    CoverCertificate ca, cb;
    const double cs = best_ms(reps, [&] { ca = cover_curve(c, k.n, ser); });
    const double cp = best_ms(reps, [&] { cb = cover_curve(c, k.n, par); });
    const bool cok = certificate_to_json(ca) == certificate_to_json(cb);
    all_agree &= cok;
    std::printf("%-8s %-34s %2d %8zu %10.2f %10.2f %7.2f %s\n", "cover", k.curve, k.n, ca.points.size(), cs, cp, cs / cp,
                cok ? "yes" : "NO");
  }
  return all_agree ? 0 : 1;
}
