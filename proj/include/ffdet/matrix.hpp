#pragma once

#include <vector>

#include "ffdet/poly_t.hpp"

namespace ffdet {

/// Dense matrix over F_q[t], row-major.
using PolyMatrix = std::vector<std::vector<PolyT>>;

/// Determinant by fraction-free (Bareiss) elimination. The empty matrix has
/// determinant 1. Throws std::invalid_argument for a non-square input.
PolyT det_exact(const FieldDesc& f, PolyMatrix m);

/// Pivot rows and columns of a fraction-free echelon form. Columns are
/// scanned left to right; each pivot is the first unused row (input order)
/// with a nonzero reduced entry. The minor on (rows, cols) is nonzero and
/// has maximal size.
struct RankProfile {
  int rank = 0;
  std::vector<int> rows;
  std::vector<int> cols;
};
RankProfile rank_profile(const FieldDesc& f, PolyMatrix m);

/// Submatrix on the given rows and columns.
PolyMatrix submatrix(const PolyMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols);

}  // namespace ffdet
