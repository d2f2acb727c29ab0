#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "vdm/linalg.hpp"
#include "vdm/subset.hpp"

namespace vdm {

/// A face of [0,1]^n: some coordinates fixed to 0/1, the rest free.
struct CubeFace {
  int n = 0;                    // ambient dimension
  std::uint32_t free_mask = 0;  // free coordinates (bit i-1 <-> coordinate i)
  std::uint32_t fixed_vals = 0; // values on fixed coordinates, bits outside free_mask

  CubeFace() = default;
  CubeFace(int n_, std::uint32_t free_mask_, std::uint32_t fixed_vals_);

  int dim() const { return std::popcount(free_mask); }
  std::vector<int> free_coords() const;                 // ascending, 1-based
  std::vector<std::pair<int, int>> fixed_coords() const;  // (coordinate, bit)

  /// Embeds a vertex of the face (bits over the free coordinates, in
  /// ascending free-coordinate order) into the ambient cube.
  std::uint32_t embed(std::uint32_t local_bits) const;
  /// Inverse of embed; the vertex must lie on the face.
  std::uint32_t project(std::uint32_t ambient_bits) const;
  bool contains_vertex(std::uint32_t ambient_bits) const;

  friend bool operator==(const CubeFace& a, const CubeFace& b) {
    return a.n == b.n && a.free_mask == b.free_mask && a.fixed_vals == b.fixed_vals;
  }
};

/// All dim-dimensional faces of [0,1]^n, each exactly once, in a fixed
/// deterministic order (free coordinate sets ascending, then fixed values).
std::vector<CubeFace> enumerate_faces(int n, int dim);

/// An element of the symmetry group B_n of the n-cube: flip a set of
/// coordinates, then permute. Acting on a subset: bits ^= flips, then
/// bit i-1 moves to position perm[i-1].
struct SignedSymmetry {
  int n = 0;
  std::array<std::uint8_t, kMaxGroundSet> perm{};  // 0-based positions
  std::uint32_t flips = 0;

  static SignedSymmetry identity(int n);

  std::uint32_t apply_bits(std::uint32_t bits) const;
  Subset apply(const Subset& s) const { return Subset(apply_bits(s.bits), n); }
  RatVec apply_point(const RatVec& x) const;  // flips: x -> 1-x, then permute

  SignedSymmetry compose(const SignedSymmetry& inner) const;  // this after inner
  SignedSymmetry inverse() const;

  friend bool operator==(const SignedSymmetry& a, const SignedSymmetry& b) {
    return a.n == b.n && a.flips == b.flips &&
           std::equal(a.perm.begin(), a.perm.begin() + a.n, b.perm.begin());
  }
};

/// The whole group B_n (size 2^n n!), deterministic order. n <= 5 in practice.
std::vector<SignedSymmetry> signed_symmetries(int n);

/// A convex circuit representation: a point written as a strict convex
/// combination of affinely independent 0-1 points. The representation is
/// unique given its support.
struct ConvexCircuit {
  int n = 0;
  std::vector<std::uint32_t> support;  // sorted ascending after canonicalize()
  std::vector<Rat> weights;            // parallel to support, each in (0,1)
  RatVec barycenter;                   // length n

  void canonicalize();  // sort (support, weight) pairs by mask
  void validate() const;  // throws on any violated invariant

  friend bool operator==(const ConvexCircuit& a, const ConvexCircuit& b) {
    return a.n == b.n && a.support == b.support && a.weights == b.weights;
  }
  friend bool operator<(const ConvexCircuit& a, const ConvexCircuit& b) {
    if (a.support != b.support) return a.support < b.support;
    return std::lexicographical_compare(a.weights.begin(), a.weights.end(),
                                        b.weights.begin(), b.weights.end());
  }
};

/// Orbit of a circuit under all of B_n, deduplicated.
std::set<ConvexCircuit> orbit(int symgroup_n, const ConvexCircuit& circuit);

/// Every convex circuit representation of (1/2, ..., 1/2), by brute force
/// over affinely independent subsets of cube vertices. Requires n <= 5.
std::vector<ConvexCircuit> center_circuits(int n);

}  // namespace vdm
