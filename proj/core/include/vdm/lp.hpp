#pragma once

#include <optional>
#include <vector>

#include "vdm/linalg.hpp"

namespace vdm::lp {

/// One linear condition coeffs . x (= or >=) rhs over rational unknowns.
struct LinearConstraint {
  RatVec coeffs;
  Rat rhs;
};

struct StrictWitness {
  RatVec point;  // the unknowns
  Rat margin;    // optimal slack, in (0, 1]
};

/// Decides strict feasibility of { a.x = b (equalities), a.x > b (inequalities) }
/// by maximizing a margin t subject to a.x >= b + t and t <= 1, with exact
/// rational pivoting (Bland's rule, two phases, no tolerances).
///
/// Returns a witness iff the optimum margin is positive. The relaxed system
/// is infeasible only when the equalities are inconsistent, which also
/// reports "no witness". Throws std::invalid_argument on malformed systems.
std::optional<StrictWitness> strict_feasible(int num_vars,
                                             const std::vector<LinearConstraint>& equalities,
                                             const std::vector<LinearConstraint>& inequalities);

}  // namespace vdm::lp
