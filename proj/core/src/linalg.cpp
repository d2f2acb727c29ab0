#include "vdm/linalg.hpp"

#include <cassert>

namespace vdm {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: \"" + s + "\"");
  q.canonicalize();
  if (sgn(Rat(q.get_den())) == 0) throw std::invalid_argument("zero denominator: \"" + s + "\"");
  return q;
}

std::string rat_to_string(const Rat& x) { return x.get_str(); }

int rank(RatMat m) {
  if (m.empty()) return 0;
  const size_t cols = m[0].size();
  int r = 0;
  for (size_t c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    size_t piv = m.size();
    for (size_t i = r; i < m.size(); ++i)
      if (sgn(m[i][c]) != 0) {
        piv = i;
        break;
      }
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    for (size_t i = r + 1; i < m.size(); ++i) {
      if (sgn(m[i][c]) == 0) continue;
      Rat f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

Rat det(RatMat m) {
  const size_t n = m.size();
  Rat result(1);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t i = c; i < n; ++i)
      if (sgn(m[i][c]) != 0) {
        piv = i;
        break;
      }
    if (piv == n) return Rat(0);
    if (piv != c) {
      std::swap(m[c], m[piv]);
      result = -result;
    }
    result *= m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      Rat f = m[i][c] / m[c][c];
      for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return result;
}

int affine_rank(const RatMat& points) {
  RatMat lifted = points;
  for (auto& row : lifted) row.push_back(1);
  return rank(std::move(lifted));
}

bool affinely_independent(const RatMat& points) {
  return affine_rank(points) == static_cast<int>(points.size());
}

RatVec indicator_vector(std::uint32_t bits, int n) {
  RatVec v(n, Rat(0));
  for (int i = 0; i < n; ++i)
    if ((bits >> i) & 1u) v[i] = 1;
  return v;
}

std::optional<RatVec> solve_linear(RatMat a, RatVec b) {
  const size_t rows = a.size();
  const size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = rows;
    for (size_t i = r; i < rows; ++i)
      if (sgn(a[i][c]) != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    std::swap(b[r], b[piv]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rat f = a[i][c] / a[r][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (sgn(b[i]) != 0) return std::nullopt;
  RatVec x(cols, Rat(0));
  for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
  return x;
}

std::optional<RatVec> affine_coordinates(const RatMat& points, const RatVec& target) {
  if (points.empty()) return std::nullopt;
  const size_t dim = target.size();
  // Columns are the points; one extra row forces the coefficients to sum to 1.
  RatMat a(dim + 1, RatVec(points.size(), Rat(0)));
  RatVec b(dim + 1, Rat(0));
  for (size_t j = 0; j < points.size(); ++j) {
    assert(points[j].size() == dim);
    for (size_t i = 0; i < dim; ++i) a[i][j] = points[j][i];
    a[dim][j] = 1;
  }
  for (size_t i = 0; i < dim; ++i) b[i] = target[i];
  b[dim] = 1;
  return solve_linear(std::move(a), std::move(b));
}

bool RowSpace::add(RatVec row) {
  assert(static_cast<int>(row.size()) == width_);
  for (size_t k = 0; k < rows_.size(); ++k) {
    const int pc = pivots_[k];
    if (sgn(row[pc]) == 0) continue;
    Rat f = row[pc] / rows_[k][pc];
    for (int j = 0; j < width_; ++j) row[j] -= f * rows_[k][j];
  }
  int pc = -1;
  for (int j = 0; j < width_; ++j)
    if (sgn(row[j]) != 0) {
      pc = j;
      break;
    }
  if (pc < 0) return false;
  rows_.push_back(std::move(row));
  pivots_.push_back(pc);
  return true;
}

}  // namespace vdm
