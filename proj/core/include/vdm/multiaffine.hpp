#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "vdm/valued_field.hpp"

namespace vdm {

/// Multiaffine polynomial over the field: degree <= 1 in each of x_1..x_n,
/// stored as a dense coefficient table indexed by the monomial's subset mask.
class MultiAffinePoly {
 public:
  MultiAffinePoly(FieldSpecPtr spec, int n);

  int n() const { return n_; }
  const FieldSpecPtr& spec() const { return spec_; }
  std::uint32_t table_size() const { return 1u << n_; }
  const FieldElem& at(std::uint32_t mask) const { return coeffs_.at(mask); }
  FieldElem& at(std::uint32_t mask) { return coeffs_.at(mask); }

  FieldElem evaluate(const std::vector<FieldElem>& point) const;
  bool operator==(const MultiAffinePoly& o) const { return n_ == o.n_ && coeffs_ == o.coeffs_; }

 private:
  FieldSpecPtr spec_;
  int n_ = 0;
  std::vector<FieldElem> coeffs_;
};

/// Sparse polynomial of degree <= 2 per variable (products of two
/// multiaffine polynomials); keys pack two bits of exponent per variable.
class SmallPoly {
 public:
  SmallPoly(FieldSpecPtr spec, int n);

  int n() const { return n_; }
  const FieldSpecPtr& spec() const { return spec_; }
  const std::map<std::uint64_t, FieldElem>& terms() const { return terms_; }

  static std::uint64_t key_of_mask(std::uint32_t mask);  // exponents 0/1
  static int exponent(std::uint64_t key, int var);       // 1-based var

  void add_term(std::uint64_t key, const FieldElem& c);
  bool is_zero() const { return terms_.empty(); }
  FieldElem evaluate(const std::vector<FieldElem>& point) const;

  friend SmallPoly operator-(const SmallPoly& a, const SmallPoly& b);
  bool operator==(const SmallPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

 private:
  FieldSpecPtr spec_;
  int n_ = 0;
  std::map<std::uint64_t, FieldElem> terms_;  // zero coefficients are erased
};

SmallPoly multiply_affine(const MultiAffinePoly& a, const MultiAffinePoly& b);

/// Rayleigh difference Delta_ij(f) = f_i^j f_j^i - f_ij f^{ij} from the four
/// multiaffine slices (1-based i != j). Cross-checked on fixed sample points
/// against df/dx_i * df/dx_j - f * d2f/dx_i dx_j.
SmallPoly rayleigh(const MultiAffinePoly& f, int i, int j);

/// lambda * f: coefficient of x^T scaled by lambda^T. All lambda_i nonzero.
MultiAffinePoly scale_vars(const MultiAffinePoly& f, const std::vector<FieldElem>& lambda);
SmallPoly scale_vars(const SmallPoly& f, const std::vector<FieldElem>& lambda);

/// conj(g)(sigma * x): conjugate coefficients, scale by sigma^{|T|}.
MultiAffinePoly conj_at_sigma(const MultiAffinePoly& g, int sigma);

// --- Residue-field polynomials --------------------------------------------

struct ResiduePoly {
  BaseFieldCtx ctx;
  int n = 0;
  std::vector<BaseElem> coeffs;  // multiaffine table by mask
  bool operator==(const ResiduePoly& o) const { return n == o.n && coeffs == o.coeffs; }
};

struct ResidueSmallPoly {
  BaseFieldCtx ctx;
  int n = 0;
  std::map<std::uint64_t, BaseElem> terms;
  bool operator==(const ResidueSmallPoly& o) const { return n == o.n && terms == o.terms; }
};

/// Coefficient-wise residue; every coefficient must lie in the valuation
/// ring (nu >= 0).
ResiduePoly residue_poly(const MultiAffinePoly& f);
ResidueSmallPoly residue_small(const SmallPoly& f);

ResidueSmallPoly rayleigh_residue(const ResiduePoly& f, int i, int j);
ResidueSmallPoly multiply_affine_residue(const ResiduePoly& a, const ResiduePoly& b);

}  // namespace vdm
