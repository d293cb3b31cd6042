#include "ffdet/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace ffdet {

PolyT det_exact(const FieldDesc& f, PolyMatrix a) {
  const size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("det_exact: matrix is not square");
  if (n == 0) return PolyT::constant(f, f.one());
  PolyT prev = PolyT::constant(f, f.one());
  bool negate = false;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && a[piv][k].is_zero()) ++piv;
    if (piv == n) return PolyT(f);
    if (piv != k) {
      std::swap(a[piv], a[k]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        a[i][j] = PolyT::exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
      a[i][k] = PolyT(f);
    }
    prev = a[k][k];
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

RankProfile rank_profile(const FieldDesc& f, PolyMatrix a) {
  RankProfile out;
  if (a.empty()) return out;
  const size_t rows = a.size();
  const size_t cols = a[0].size();
  for (const auto& row : a)
    if (row.size() != cols) throw std::invalid_argument("rank_profile: ragged matrix");
  std::vector<bool> used(rows, false);
  PolyT prev = PolyT::constant(f, f.one());
  for (size_t c = 0; c < cols; ++c) {
    size_t r = 0;
    while (r < rows && (used[r] || a[r][c].is_zero())) ++r;
    if (r == rows) continue;
    used[r] = true;
    out.rows.push_back(static_cast<int>(r));
    out.cols.push_back(static_cast<int>(c));
    for (size_t i = 0; i < rows; ++i) {
      if (used[i]) continue;
      for (size_t j = c + 1; j < cols; ++j)
        a[i][j] = PolyT::exact_div(a[i][j] * a[r][c] - a[i][c] * a[r][j], prev);
      a[i][c] = PolyT(f);
    }
    prev = a[r][c];
  }
  out.rank = static_cast<int>(out.rows.size());
  return out;
}

PolyMatrix submatrix(const PolyMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  PolyMatrix out;
  out.reserve(rows.size());
  for (int r : rows) {
    std::vector<PolyT> row;
    row.reserve(cols.size());
    for (int c : cols) row.push_back(m.at(r).at(c));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace ffdet
