#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "vdm/cube.hpp"
#include "vdm/delta_matroid.hpp"
#include "vdm/lp.hpp"
#include "vdm/subset_function.hpp"

namespace vdm {

/// Exact certificate that a vertex set V spans a cell of the regular
/// subdivision S_p: phi . e_S + p_S == b on V and >= b + margin on the rest
/// of dom p.
struct FaceWitness {
  RatVec phi;
  Rat b;
  Rat margin;
};

struct Cell {
  std::vector<std::uint32_t> vertices;  // sorted masks
  int dim = 0;                          // affine dimension of the vertex set
};

/// Decides whether V is exactly the vertex set of a cell of S_p, via the
/// margin-maximizing LP over all of dom p.
std::optional<FaceWitness> is_face(const SubsetFunction& p, const std::vector<std::uint32_t>& v);

/// Same decision for a pair {s, t}, restricted to the smallest cube face
/// containing both endpoints (cells inside a cube face are exactly the cells
/// of the restriction, and only faces of that subcube can compete).
bool pair_is_cell(const SubsetFunction& p, std::uint32_t s, std::uint32_t t);

/// All pairs of dom p at Hamming distance >= min_len that are 1-cells.
std::vector<std::pair<Subset, Subset>> long_edges(const SubsetFunction& p, int min_len);

/// The six lifted quantities of the 3-dimensional criterion, in order:
/// 2p0+2p123, 2p1+2p23, 2p2+2p13, 2p3+2p12, p0+p12+p13+p23, p1+p2+p3+p123.
/// Passes iff the minimum is attained at least twice, or on one of the last
/// two, or everything is infinite. On failure the minimum is attained by a
/// unique diagonal, which is a long edge of the face.
struct Check3Result {
  bool pass = true;
  std::array<Val, 6> quantities{};
  int unique_argmin = -1;                     // 0..3 when failing
  std::pair<std::uint32_t, std::uint32_t> edge{0, 0};  // face-local masks
};

Check3Result check3(const SubsetFunction& p3);

/// The 4-dimensional criterion: every facet passes check3 and the minimum of
/// p(x, J) over all convex circuit representations J of the centre is
/// attained at least twice (an all-infinite minimum passes).
struct Check4Result {
  bool pass = true;
  // Facet failure: which facet (as a face of the 4-cube) and its check3 data.
  std::optional<std::pair<CubeFace, Check3Result>> facet_failure;
  // Circuit failure: the unique minimizing circuit (face-local supports).
  std::optional<ConvexCircuit> circuit_failure;
};

Check4Result check4(const SubsetFunction& p4);

struct LongEdgeCert {
  Subset s, t;
};
struct CircuitTieCert {
  CubeFace face;                        // the offending 4-face
  std::vector<Subset> support;          // ambient supports of the unique minimizer
  std::vector<Rat> weights;
};
using CheckerCertificate = std::variant<ExchangeViolation, LongEdgeCert, CircuitTieCert>;

struct CheckerResult {
  bool valuated = true;
  std::optional<CheckerCertificate> certificate;
};

/// Full checker: n <= 2 is always valuated; n == 3 is a single check3;
/// n >= 4 requires dom p to be a Delta-matroid and check4 to pass on every
/// 4-dimensional face of the cube.
CheckerResult is_valuated_delta_matroid(const SubsetFunction& p);

enum class CellMode { exhaustive, bfs };

struct MaximalCellsOptions {
  CellMode mode = CellMode::exhaustive;
  long bfs_vertex_budget = 200000;
};

/// Inclusion-maximal cells of S_p.
///
/// Exhaustive mode (n <= 4): every minimizer-closed subset of dom p is
/// tested with is_face. BFS mode (n <= 6): exact traversal of the maximal
/// cells by crossing walls, implemented as vertex enumeration of the
/// polyhedron of affine functions below the lifted points with a
/// lexicographic perturbation.
std::vector<Cell> maximal_cells(const SubsetFunction& p, const MaximalCellsOptions& opts = {});

struct BfsBudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dimension of the linear span of { q : S_q = S_p } for finite-valued p:
/// 2^n minus the rank of the affine-dependence equations collected from
/// every maximal cell.
int cone_dimension(const SubsetFunction& p, const MaximalCellsOptions& opts);
int cone_dimension(const SubsetFunction& p);  // exhaustive for n <= 4, else BFS

}  // namespace vdm
