#pragma once

// Shared helpers for the unit and acceptance suites: seeded instance
// generators and small independent oracles.

#include <bit>
#include <vector>

#include "vdm/delta_matroid.hpp"
#include "vdm/presets.hpp"
#include "vdm/representability.hpp"
#include "vdm/subset_function.hpp"

namespace vdm_test {

using namespace vdm;

inline SubsetFunction by_cardinality(int n, const std::vector<Val>& values_by_size) {
  SubsetFunction p(n);
  for (std::uint32_t s = 0; s < p.table_size(); ++s) p.set(s, values_by_size.at(std::popcount(s)));
  return p;
}

/// p = 0 on even subsets, seeded positive integers on odd ones (the
/// dimension lower-bound construction).
inline SubsetFunction even_zero_odd_positive(int n, Rng& rng) {
  SubsetFunction p(n);
  for (std::uint32_t s = 0; s < p.table_size(); ++s)
    p.set(s, Val(Rat(std::popcount(s) % 2 ? rng.int_in(1, 9) : 0)));
  return p;
}

/// A mixed bag for the oracle-equivalence runs: uniform random tables,
/// infinity-pattern tables, rank valuations, and affine reshufflings of
/// valuated instances, all seeded.
inline SubsetFunction mixed_instance(int n, std::uint64_t seed) {
  Rng rng(seed);
  switch (seed % 5) {
    case 0:
      return random_subset_function(n, rng);
    case 1: {
      RandomSubsetFunctionOptions opts;
      opts.infinity_percent = 10 + static_cast<unsigned>(rng.below(30));
      return random_subset_function(n, rng, opts);
    }
    case 2:
      return neg_rank_as_valuation(random_delta_matroid(n, rng.raw(), {64, true}));
    case 3:
      return even_zero_odd_positive(n, rng);
    default: {
      // A valuated instance after a random positive-scale affine change.
      SubsetFunction p = neg_rank_as_valuation(random_delta_matroid(n, rng.raw(), {64, true}));
      RatVec a(n);
      for (int i = 0; i < n; ++i) a[i] = Rat(rng.int_in(-3, 3));
      return p.rescaled(Rat(rng.int_in(1, 4)), a, Rat(rng.int_in(-2, 2)));
    }
  }
}

/// Brute-force evenness oracle: the strong exchange axiom (b may not equal
/// a, both exchanges must land in the family). Used to cross-check the
/// parity implementation.
inline bool strong_exchange_oracle(const BasisFamily& f) {
  for (std::uint32_t a : f.bases)
    for (std::uint32_t b : f.bases) {
      const std::uint32_t diff = a ^ b;
      for (std::uint32_t d = diff; d != 0; d &= d - 1) {
        const std::uint32_t abit = d & -d;
        bool ok = false;
        for (std::uint32_t e = diff; e != 0 && !ok; e &= e - 1) {
          const std::uint32_t bbit = e & -e;
          if (bbit == abit) continue;
          if (f.contains(a ^ abit ^ bbit) && f.contains(b ^ abit ^ bbit)) ok = true;
        }
        if (!ok) return false;
      }
    }
  return true;
}

inline std::vector<std::vector<FieldElem>> standard_vectors(const FieldSpecPtr& spec, int n) {
  std::vector<std::vector<FieldElem>> out;
  for (int i = 0; i < n; ++i) {
    std::vector<FieldElem> e(n, FieldElem::zero(spec));
    e[i] = FieldElem::one(spec);
    out.push_back(std::move(e));
  }
  return out;
}

/// The first worked example: the 3x3 Hermitian matrix with t on the
/// diagonal and +-i off it, over Q[i](t).
inline FieldMatrix complex_example_matrix() {
  const FieldSpecPtr spec = presets::complex_t_adic();
  std::vector<std::vector<FieldElem>> e(3, std::vector<FieldElem>(3, FieldElem::zero(spec)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      e[i][j] = (i == j) ? FieldElem::t(spec)
                         : (i < j ? FieldElem::alpha(spec) : -FieldElem::alpha(spec));
  return FieldMatrix::from_entries(spec, std::move(e), MatrixTag::hermitian);
}

/// The 2-adic Hermitian example over Q[a]/(a^2+a+1): ones on the diagonal,
/// +-(1+2a) off it.
inline FieldMatrix eisenstein_hermitian_matrix() {
  const FieldSpecPtr spec = presets::eisenstein_2adic();
  const FieldElem w = parse_field_elem("1+2*a", spec);
  std::vector<std::vector<FieldElem>> e(3, std::vector<FieldElem>(3, FieldElem::one(spec)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) e[i][j] = (i < j) ? w : -w;
  return FieldMatrix::from_entries(spec, std::move(e), MatrixTag::hermitian);
}

/// The 2-adic skew-Hermitian example over the same field.
inline FieldMatrix eisenstein_skew_matrix() {
  const FieldSpecPtr spec = presets::eisenstein_2adic();
  const FieldElem w = parse_field_elem("1+2*a", spec);
  std::vector<std::vector<FieldElem>> e(3, std::vector<FieldElem>(3, FieldElem::zero(spec)));
  e[0][1] = FieldElem::one(spec);
  e[1][0] = -FieldElem::one(spec);
  e[0][2] = FieldElem::one(spec);
  e[2][0] = -FieldElem::one(spec);
  e[1][2] = w;
  e[2][1] = w;  // conj(1+2a) = -(1+2a)
  return FieldMatrix::from_entries(spec, std::move(e), MatrixTag::skew_hermitian);
}

/// The valuation-violating Hermitian matrix over Q[a]/(a^2+a+2), 2-adic.
inline FieldMatrix violating_matrix() {
  const FieldSpecPtr spec = presets::violating_2adic();
  const FieldElem four = FieldElem::from_rat(spec, Rat(4));
  const FieldElem u = parse_field_elem("4+a", spec);
  const FieldElem w = parse_field_elem("3-a", spec);
  std::vector<std::vector<FieldElem>> e = {{four, u, w}, {w, four, u}, {u, w, four}};
  return FieldMatrix::from_entries(spec, std::move(e), MatrixTag::hermitian);
}

inline SubsetFunction counterexample_p() {
  return by_cardinality(3, {Val(Rat(0)), Val(Rat(2)), Val(Rat(1)), Val(Rat(0))});
}

inline SubsetFunction dim_dr4_p() {
  SubsetFunction p(4);
  for (std::uint32_t s = 0; s < 16; ++s) {
    if (s == 0b0000 || s == 0b0011 || s == 0b1100 || s == 0b1111)
      p.set(s, Val(Rat(0)));
    else if (std::popcount(s) == 2)
      p.set(s, Val(Rat(1)));
    else
      p.set(s, Val(Rat(100)));
  }
  return p;
}

}  // namespace vdm_test
