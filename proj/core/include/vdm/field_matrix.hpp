#pragma once

#include <cstdint>
#include <vector>

#include "vdm/subset.hpp"
#include "vdm/valued_field.hpp"

namespace vdm {

enum class MatrixTag { general, symmetric, skew_symmetric, hermitian, skew_hermitian };

std::string tag_name(MatrixTag tag);
MatrixTag tag_from_name(const std::string& name);

/// Square matrix over a valued field with a declared structure, verified at
/// construction: symmetric (A^T = A), skew-symmetric (alternating: A^T = -A
/// with zero diagonal), Hermitian (conj(A)^T = A), skew-Hermitian
/// (conj(A)^T = -A).
class FieldMatrix {
 public:
  FieldMatrix(FieldSpecPtr spec, int size, MatrixTag tag = MatrixTag::general);
  static FieldMatrix from_entries(FieldSpecPtr spec, std::vector<std::vector<FieldElem>> entries,
                                  MatrixTag tag = MatrixTag::general);

  int size() const { return size_; }
  MatrixTag tag() const { return tag_; }
  const FieldSpecPtr& spec() const { return spec_; }

  const FieldElem& at(int i, int j) const { return e_.at(i * size_ + j); }
  FieldElem& at(int i, int j) { return e_.at(i * size_ + j); }

  /// Throws std::invalid_argument when the entries violate the tag.
  void verify_tag() const;

  /// Principal submatrix on the 1-based elements of the mask.
  std::vector<std::vector<FieldElem>> principal_submatrix(std::uint32_t mask) const;

  /// Principal minor A_S; the empty minor is 1.
  FieldElem principal_minor(std::uint32_t mask) const;

 private:
  FieldSpecPtr spec_;
  int size_ = 0;
  MatrixTag tag_ = MatrixTag::general;
  std::vector<FieldElem> e_;
};

/// Determinant of a square grid of field elements: cofactor expansion for
/// size <= 4, fraction-free Bareiss elimination over the cleared polynomial
/// forms beyond that.
FieldElem grid_det(FieldSpecPtr spec, const std::vector<std::vector<FieldElem>>& grid);

}  // namespace vdm
