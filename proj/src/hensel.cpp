#include "ffdet/hensel.hpp"

namespace ffdet {

LaurentApprox eval_series_poly(const SeriesPolyY& f, const LaurentApprox& y) {
  if (f.empty()) return LaurentApprox::zero(y.field());
  LaurentApprox r = f.back();
  for (size_t i = f.size() - 1; i-- > 0;) r = r * y + f[i];
  return r;
}

SeriesPolyY derivative(const SeriesPolyY& f) {
  SeriesPolyY d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i].scaled(f[i].field().from_int(static_cast<int64_t>(i))));
  return d;
}

LaurentApprox hensel_lift(const SeriesPolyY& f, FqElem y0, int64_t prec) {
  if (f.empty()) throw HenselError("zero polynomial has no simple root");
  const FieldDesc& fd = f.front().field();
  if (prec < 1) throw std::invalid_argument("hensel_lift: precision must be >= 1");
  for (const auto& c : f) {
    if (c.prec() < prec)
      throw PrecisionError("hensel_lift: coefficient known only to t^" + std::to_string(c.prec()));
    if (!c.known_zero() && c.val() < 0) throw HenselError("hensel_lift: coefficients must be integral");
  }
  // residual conditions
  auto residue = [&](const SeriesPolyY& g, FqElem x) {
    FqElem r{};
    for (size_t i = g.size(); i-- > 0;) r = fd.add(fd.mul(r, x), g[i].coeff(0));
    return r;
  };
  const SeriesPolyY df = derivative(f);
  if (!residue(f, y0).is_zero())
    throw HenselError("hensel_lift: " + fd.elem_to_string(y0) + " is not a root of f mod t");
  if (residue(df, y0).is_zero())
    throw HenselError("hensel_lift: " + fd.elem_to_string(y0) + " is a multiple root of f mod t");

  // Newton iteration doubling the precision at each step.
  LaurentApprox y = LaurentApprox::constant(fd, y0, 1);
  int64_t cur = 1;
  while (cur < prec) {
    cur = std::min(2 * cur, prec);
    // widen the current approximation: its unknown digits are taken as zero
    const LaurentApprox ye = y.known_zero() ? LaurentApprox::zero(fd, cur) : LaurentApprox(fd, y.val(), y.digits(), cur);
    std::vector<LaurentApprox> ft;
    ft.reserve(f.size());
    for (const auto& c : f) ft.push_back(c.truncated(cur));
    SeriesPolyY dft;
    for (const auto& c : df) dft.push_back(c.truncated(cur));
    const LaurentApprox num = eval_series_poly(ft, ye);
    const LaurentApprox den = eval_series_poly(dft, ye);
    y = (ye - num * den.inverse(cur)).truncated(cur);
  }
  y = y.truncated(prec);
  if (eval_series_poly(f, y).val_lower_bound() < prec)
    throw std::logic_error("hensel_lift: lifted root does not vanish to requested precision");
  return y;
}

}  // namespace ffdet
