#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vdm/field_matrix.hpp"
#include "vdm/multiaffine.hpp"
#include "vdm/rng.hpp"
#include "vdm/subdivision.hpp"
#include "vdm/subset_function.hpp"

namespace vdm {

/// p_S = nu(A_S) over all subsets; the empty minor is 1, so p of the empty
/// set is 0.
SubsetFunction principal_minor_valuations(const FieldMatrix& a);

/// f = det(sum_i x_i v_i conj(v_i)^T + A) as a multiaffine coefficient
/// table, recovered from the 2^n determinants at 0-1 points by Moebius
/// inversion. A is r x r; each of the n vectors lives in K^r.
MultiAffinePoly det_poly(const FieldMatrix& a, const std::vector<std::vector<FieldElem>>& vectors);

/// Partial derivative of a multiaffine polynomial (1-based variable).
MultiAffinePoly partial(const MultiAffinePoly& f, int var);

struct FactorizationReport {
  bool pass = false;
  int sigma = 1;
  bool dependent_route = false;
  MultiAffinePoly g;  // Delta_ij(f) == sigma^{r-1} g(x) conj(g)(sigma x)
};

/// Checks the Rayleigh-difference factorization for a Hermitian (sigma = 1)
/// or skew-Hermitian (sigma = -1) matrix: the Dodgson-condensation route
/// when v_i, v_j are independent, the scaled-derivative route otherwise.
/// Symmetric / skew-symmetric tags are accepted when the involution is
/// trivial.
FactorizationReport verify_factorization(const FieldMatrix& a,
                                         const std::vector<std::vector<FieldElem>>& vectors,
                                         int i, int j);

struct SkewPlusRankOneReport {
  SubsetFunction p;
  bool odd_minors_vanish = true;    // |S| odd  => B_S = 0
  bool even_quad_vanishes = true;   // |S| even => v[S]^T adj(B[S]) v[S] = 0
  CheckerResult verdict;
  SkewPlusRankOneReport(int n) : p(n) {}
};

/// p_S = nu((B + alpha v v^T)_S) for skew-symmetric B, with the two parity
/// identities from the rank-one update verified exactly.
SkewPlusRankOneReport skew_plus_rank_one(const FieldMatrix& b, const FieldElem& alpha,
                                         const std::vector<FieldElem>& v);

enum class FormKind { symplectic, quadratic_even, quadratic_odd, hermitian_even };

std::string form_name(FormKind kind);
FormKind form_from_name(const std::string& name);

struct IsotropicReport {
  SubsetFunction p;
  bool minors_agree = true;  // column-selection minors == +- principal minors
  CheckerResult verdict;
  IsotropicReport(int n) : p(n) {}
};

/// p_S(L) = nu(det M[{e_i : i in S} u {f_i : i not in S}]) for the maximal
/// isotropic row space L of M = (A | I) or (A | I | v), by form type:
///   symplectic       A symmetric            (trivial involution)
///   quadratic-even   A skew-symmetric       (trivial involution)
///   quadratic-odd    A = B - alpha v v^T, B skew-symmetric given as input
///   hermitian-even   A skew-Hermitian       (nontrivial involution)
IsotropicReport isotropic_rep(FormKind kind, const FieldMatrix& a_or_b,
                              const std::optional<FieldElem>& alpha,
                              const std::optional<std::vector<FieldElem>>& v);

struct Realize3Report {
  bool ok = false;
  std::string failure;                      // human-readable reason when !ok
  Rat scale = 1;                            // p was multiplied by this to clear denominators
  std::vector<FieldElem> assignment;        // a_S by mask, over Q(t)
  bool valuations_match = false;            // nu(a_S) == scaled p_S
  bool pair_inequalities = false;           // a_i a_j - a_ij >= 0 and the triple family
  bool hypdet_nonpositive = false;          // HypDet(a) <= 0
};

/// Realizes a valuated p on [3] with p_empty = 0 as principal minors over
/// the ordered field Q(t): a_empty = 1, a_i = -t^{p_i}, a_ij = -t^{p_ij},
/// a_123 = t^{p_123}, after clearing denominators of p. Verifies the
/// valuations, both inequality families, and HypDet(a) <= 0 by exact signs.
Realize3Report realize3(const SubsetFunction& p);

/// The 12-term quartic constraining principal minors of 3x3 Hermitian
/// matrices, evaluated exactly.
FieldElem hypdet(const std::vector<FieldElem>& a_by_mask);

enum class ConjectureShape { skew_hermitian_plus_rank_one, char2_omega_rank_one };

struct ConjectureSearchConfig {
  ConjectureShape shape = ConjectureShape::skew_hermitian_plus_rank_one;
  FieldSpecPtr spec;
  int n = 3;
  int trials = 100;
  std::uint64_t seed = 0;
  int jobs = 1;  // trials run on derived per-trial seeds, so any job count
                 // produces the identical report
};

struct ConjectureCounterexample {
  int trial = 0;
  FieldMatrix a;  // the assembled matrix whose minors fail the checker
  SubsetFunction p;
  CheckerCertificate certificate;
};

struct ConjectureSearchReport {
  ConjectureSearchConfig config;
  int trials_run = 0;
  std::vector<ConjectureCounterexample> counterexamples;
};

/// Seeded random trials of the two conjectured representability shapes; any
/// checker failure is recorded with the full offending matrix.
ConjectureSearchReport conjecture_search(const ConjectureSearchConfig& config);

// --- Seeded samplers (shared by tests, the acceptance suite, the search) ---

BaseElem random_base_elem(const BaseFieldCtx& ctx, Rng& rng, bool nonzero);
FieldElem random_field_elem(const FieldSpecPtr& spec, Rng& rng, bool nonzero = false);
std::vector<FieldElem> random_vector(const FieldSpecPtr& spec, int len, Rng& rng);
FieldMatrix random_structured_matrix(const FieldSpecPtr& spec, int n, MatrixTag tag, Rng& rng);
/// A fixed-field scalar (conj(x) == x), possibly zero.
FieldElem random_fixed_scalar(const FieldSpecPtr& spec, Rng& rng);

}  // namespace vdm
