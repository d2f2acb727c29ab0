#pragma once

#include <cstdint>
#include <vector>

#include "vdm/cube.hpp"
#include "vdm/rational.hpp"
#include "vdm/rng.hpp"
#include "vdm/subset.hpp"

namespace vdm {

/// A function p : {0,1}^n -> Q u {inf}, the candidate valuated Delta-matroid.
/// The effective domain dom p is the set of subsets with finite value.
/// Restrictions to cube faces may have empty domain; functions entering the
/// public checkers are expected to have at least one finite value.
class SubsetFunction {
 public:
  explicit SubsetFunction(int n);
  static SubsetFunction constant(int n, const Val& v);

  int n() const { return n_; }
  std::uint32_t table_size() const { return 1u << n_; }
  const Val& at(std::uint32_t mask) const { return values_.at(mask); }
  void set(std::uint32_t mask, Val v) { values_.at(mask) = std::move(v); }

  std::vector<std::uint32_t> domain() const;
  bool has_finite_value() const;

  SubsetFunction restricted_to(const CubeFace& face) const;

  /// (g . p)(S) = p(g^{-1} S).
  SubsetFunction transformed(const SignedSymmetry& g) const;

  /// c * p + (a . e_S + b) with c > 0; an affine change of the lift.
  SubsetFunction rescaled(const Rat& c, const RatVec& a, const Rat& b) const;

  friend bool operator==(const SubsetFunction& x, const SubsetFunction& y) {
    return x.n_ == y.n_ && x.values_ == y.values_;
  }

 private:
  int n_;
  std::vector<Val> values_;
};

struct RandomSubsetFunctionOptions {
  long min_value = -6;
  long max_value = 6;
  unsigned infinity_percent = 0;  // chance per subset of being infinite
};

/// Seeded random p, guaranteed to have nonempty domain. Used by property
/// tests, the acceptance suite, and the search harness.
SubsetFunction random_subset_function(int n, Rng& rng, const RandomSubsetFunctionOptions& opts = {});

}  // namespace vdm
