#pragma once

#include <stdexcept>
#include <vector>

#include "ffdet/laurent.hpp"

namespace ffdet {

/// Raised when the residual root is not simple or is not a root at all.
class HenselError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polynomial in y with truncated power-series coefficients, low degree first.
using SeriesPolyY = std::vector<LaurentApprox>;

LaurentApprox eval_series_poly(const SeriesPolyY& f, const LaurentApprox& y);
SeriesPolyY derivative(const SeriesPolyY& f);

/// Lifts a simple root y0 of f mod t to the unique y in F_q[[t]] with
/// y = y0 mod t and f(y) = 0 mod t^prec.
///
/// Coefficients must be integral and known at least to t^prec. Throws
/// HenselError when y0 is not a simple root of the reduction and
/// PrecisionError when a coefficient is under-precise.
LaurentApprox hensel_lift(const SeriesPolyY& f, FqElem y0, int64_t prec);

}  // namespace ffdet
