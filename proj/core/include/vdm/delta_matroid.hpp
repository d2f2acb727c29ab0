#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vdm/subset.hpp"
#include "vdm/subset_function.hpp"

namespace vdm {

/// A candidate Delta-matroid: a nonempty family of subsets of [n].
struct BasisFamily {
  int n = 0;
  std::vector<std::uint32_t> bases;  // sorted, unique

  BasisFamily(int n_, std::vector<std::uint32_t> bases_);
  bool contains(std::uint32_t mask) const;
  size_t size() const { return bases.size(); }
};

/// Witness that the symmetric exchange axiom fails: a in A delta B but no b
/// in A delta B has A delta {a,b} in the family.
struct ExchangeViolation {
  Subset a_set, b_set;
  int element;
};

std::optional<ExchangeViolation> delta_matroid_violation(const BasisFamily& f);
inline bool is_delta_matroid(const BasisFamily& f) { return !delta_matroid_violation(f).has_value(); }

/// Even Delta-matroid: the exchange axiom holds and all bases share the
/// parity of their size.
bool is_even(const BasisFamily& f);

enum class EdgeDirection {
  axis,        // +-e_i
  plane_sum,   // e_i + e_j (both endpoints gain/lose two elements)
  plane_diff,  // e_i - e_j
  longer,      // Hamming length >= 3
};

struct PolytopeEdge {
  Subset a, b;
  EdgeDirection dir;
};

/// Exact edge list of conv{e_B : B in F} via the strict-feasibility LP.
std::vector<PolytopeEdge> polytope_edges(const BasisFamily& f);

/// r_M(S) = max over bases of |B cap S| + |B^C cap S^C|; equivalently
/// n minus the Hamming distance from S to the nearest basis. Both routes
/// are computed and must agree.
struct RankTable {
  int n = 0;
  std::vector<int> values;  // indexed by subset mask

  int at(std::uint32_t mask) const { return values.at(mask); }
};

RankTable rank_function(const BasisFamily& f);

/// p_S = -r_M(S), a finite-valued function destined for the subdivision
/// checker.
SubsetFunction neg_rank_as_valuation(const BasisFamily& f);

struct RandomDeltaMatroidOptions {
  long rejection_budget = 100000;
  bool allow_fallback = true;  // principal-minor supports of a random
                               // (skew-)symmetric rational matrix
};

/// Deterministic per seed; the returned family always passes
/// is_delta_matroid. Throws when the budget is exhausted and the fallback
/// generator is disabled.
BasisFamily random_delta_matroid(int n, std::uint64_t seed,
                                 const RandomDeltaMatroidOptions& opts = {});

}  // namespace vdm
