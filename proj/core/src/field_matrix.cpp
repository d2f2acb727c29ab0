#include "vdm/field_matrix.hpp"

#include <cassert>

namespace vdm {

std::string tag_name(MatrixTag tag) {
  switch (tag) {
    case MatrixTag::general: return "general";
    case MatrixTag::symmetric: return "symmetric";
    case MatrixTag::skew_symmetric: return "skew-symmetric";
    case MatrixTag::hermitian: return "hermitian";
    case MatrixTag::skew_hermitian: return "skew-hermitian";
  }
  throw std::logic_error("tag_name: unreachable");
}

MatrixTag tag_from_name(const std::string& name) {
  if (name == "general") return MatrixTag::general;
  if (name == "symmetric") return MatrixTag::symmetric;
  if (name == "skew-symmetric") return MatrixTag::skew_symmetric;
  if (name == "hermitian") return MatrixTag::hermitian;
  if (name == "skew-hermitian") return MatrixTag::skew_hermitian;
  throw std::invalid_argument("unknown matrix tag: \"" + name + "\"");
}

FieldMatrix::FieldMatrix(FieldSpecPtr spec, int size, MatrixTag tag)
    : spec_(std::move(spec)), size_(size), tag_(tag) {
  if (size < 0) throw std::invalid_argument("FieldMatrix: negative size");
  e_.assign(static_cast<size_t>(size) * size, FieldElem::zero(spec_));
}

FieldMatrix FieldMatrix::from_entries(FieldSpecPtr spec,
                                      std::vector<std::vector<FieldElem>> entries, MatrixTag tag) {
  FieldMatrix m(std::move(spec), static_cast<int>(entries.size()), tag);
  for (int i = 0; i < m.size_; ++i) {
    if (static_cast<int>(entries[i].size()) != m.size_)
      throw std::invalid_argument("FieldMatrix: ragged entries");
    for (int j = 0; j < m.size_; ++j) m.at(i, j) = std::move(entries[i][j]);
  }
  m.verify_tag();
  return m;
}

void FieldMatrix::verify_tag() const {
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j) {
      const FieldElem& x = at(i, j);
      const FieldElem& y = at(j, i);
      bool ok = true;
      switch (tag_) {
        case MatrixTag::general: break;
        case MatrixTag::symmetric: ok = (y == x); break;
        case MatrixTag::skew_symmetric: ok = (y == -x) && (i != j || x.is_zero()); break;
        case MatrixTag::hermitian: ok = (y == x.conj()); break;
        case MatrixTag::skew_hermitian: ok = (y == -x.conj()); break;
      }
      if (!ok)
        throw std::invalid_argument("FieldMatrix: entries violate the '" + tag_name(tag_) +
                                    "' structure at (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
    }
}

std::vector<std::vector<FieldElem>> FieldMatrix::principal_submatrix(std::uint32_t mask) const {
  const std::vector<int> elems = subset_elements(mask);
  std::vector<std::vector<FieldElem>> out(elems.size());
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = 0; j < elems.size(); ++j) out[i].push_back(at(elems[i] - 1, elems[j] - 1));
  return out;
}

FieldElem FieldMatrix::principal_minor(std::uint32_t mask) const {
  if (mask == 0) return FieldElem::one(spec_);
  return grid_det(spec_, principal_submatrix(mask));
}

namespace {

FieldElem cofactor_det(const FieldSpecPtr& spec, const std::vector<std::vector<FieldElem>>& g,
                       std::vector<int> cols, int row) {
  const size_t k = cols.size();
  if (k == 0) return FieldElem::one(spec);
  if (k == 1) return g[row][cols[0]];
  FieldElem acc = FieldElem::zero(spec);
  for (size_t c = 0; c < k; ++c) {
    if (g[row][cols[c]].is_zero()) continue;
    std::vector<int> rest;
    for (size_t x = 0; x < k; ++x)
      if (x != c) rest.push_back(cols[x]);
    FieldElem sub = cofactor_det(spec, g, std::move(rest), row + 1);
    FieldElem term = g[row][cols[c]] * sub;
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Poly poly_exact_div(const BaseFieldCtx& ctx, Poly a, const Poly& b) {
  auto [q, r] = poly_divmod(ctx, std::move(a), b);
  if (!r.empty()) throw std::logic_error("bareiss: non-exact polynomial division");
  return q;
}

FieldElem bareiss_det(const FieldSpecPtr& spec, const std::vector<std::vector<FieldElem>>& grid) {
  const BaseFieldCtx& ctx = spec->base;
  const size_t k = grid.size();
  // Clear denominators row by row; the determinant divides by the product.
  std::vector<std::vector<Poly>> m(k, std::vector<Poly>(k));
  Poly den_product{b_one(ctx)};
  for (size_t i = 0; i < k; ++i) {
    Poly row_lcm{b_one(ctx)};
    for (size_t j = 0; j < k; ++j) {
      const Poly& d = grid[i][j].den();
      Poly g = poly_gcd(ctx, row_lcm, d);
      row_lcm = poly_mul(ctx, row_lcm, poly_exact_div(ctx, d, g));
    }
    for (size_t j = 0; j < k; ++j)
      m[i][j] = poly_mul(ctx, grid[i][j].num(), poly_exact_div(ctx, row_lcm, grid[i][j].den()));
    den_product = poly_mul(ctx, den_product, row_lcm);
  }

  int sign = 1;
  Poly prev{b_one(ctx)};
  for (size_t r = 0; r + 1 < k; ++r) {
    if (m[r][r].empty()) {
      size_t swap_row = k;
      for (size_t i = r + 1; i < k; ++i)
        if (!m[i][r].empty()) {
          swap_row = i;
          break;
        }
      if (swap_row == k) return FieldElem::zero(spec);
      std::swap(m[r], m[swap_row]);
      sign = -sign;
    }
    for (size_t i = r + 1; i < k; ++i) {
      for (size_t j = r + 1; j < k; ++j) {
        Poly num = poly_sub(ctx, poly_mul(ctx, m[i][j], m[r][r]), poly_mul(ctx, m[i][r], m[r][j]));
        m[i][j] = poly_exact_div(ctx, std::move(num), prev);
      }
      m[i][r] = {};
    }
    prev = m[r][r];
  }
  Poly result = m[k - 1][k - 1];
  if (sign < 0) result = poly_neg(ctx, std::move(result));
  return FieldElem::fraction(spec, std::move(result), std::move(den_product));
}

}  // namespace

FieldElem grid_det(FieldSpecPtr spec, const std::vector<std::vector<FieldElem>>& grid) {
  const size_t k = grid.size();
  for (const auto& row : grid)
    if (row.size() != k) throw std::invalid_argument("grid_det: matrix is not square");
  if (k == 0) return FieldElem::one(spec);
  if (k <= 4) {
    std::vector<int> cols(k);
    for (size_t i = 0; i < k; ++i) cols[i] = static_cast<int>(i);
    return cofactor_det(spec, grid, std::move(cols), 0);
  }
  return bareiss_det(spec, grid);
}

}  // namespace vdm
