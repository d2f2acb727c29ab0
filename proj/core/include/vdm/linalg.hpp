#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vdm/rational.hpp"

namespace vdm {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

/// Rank of a matrix over Q (rows may be ragged-free; all rows same width).
int rank(RatMat m);

/// Determinant of a square rational matrix by Gaussian elimination.
Rat det(RatMat m);

/// Rank of {(row, 1)} — the affine rank of the rows viewed as points.
/// Points are affinely independent iff affine_rank == #points.
int affine_rank(const RatMat& points);

bool affinely_independent(const RatMat& points);

/// 0-1 point of a subset mask as a rational vector of length n.
RatVec indicator_vector(std::uint32_t bits, int n);

/// Solves A x = b exactly. Returns std::nullopt when inconsistent; when
/// underdetermined an arbitrary solution (free variables zero) is returned.
std::optional<RatVec> solve_linear(RatMat a, RatVec b);

/// Expresses `target` as an affine combination of `points` (coefficients
/// summing to 1). nullopt when target is outside the affine hull.
std::optional<RatVec> affine_coordinates(const RatMat& points, const RatVec& target);

/// Row-reduces `rows` in place and returns the rank; used for incremental
/// rank computations over many sparse dependence equations.
class RowSpace {
 public:
  explicit RowSpace(int width) : width_(width) {}
  /// Returns true when the row was independent of the current span.
  bool add(RatVec row);
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  int width_;
  std::vector<RatVec> rows_;  // reduced echelon rows
  std::vector<int> pivots_;
};

}  // namespace vdm
