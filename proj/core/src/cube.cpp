#include "vdm/cube.hpp"

#include <algorithm>
#include <numeric>

namespace vdm {

CubeFace::CubeFace(int n_, std::uint32_t free_mask_, std::uint32_t fixed_vals_)
    : n(n_), free_mask(free_mask_), fixed_vals(fixed_vals_) {
  if (n < 0 || n > kMaxGroundSet) throw std::invalid_argument("CubeFace: n out of range");
  if (free_mask >= (1u << n)) throw std::invalid_argument("CubeFace: free_mask out of range");
  if (fixed_vals & free_mask) throw std::invalid_argument("CubeFace: fixed values overlap free coordinates");
  if (fixed_vals >= (1u << n)) throw std::invalid_argument("CubeFace: fixed_vals out of range");
}

std::vector<int> CubeFace::free_coords() const {
  return subset_elements(free_mask);
}

std::vector<std::pair<int, int>> CubeFace::fixed_coords() const {
  std::vector<std::pair<int, int>> out;
  for (int e : subset_elements(Subset::mask_all(n) & ~free_mask))
    out.emplace_back(e, (fixed_vals >> (e - 1)) & 1u);
  return out;
}

std::uint32_t CubeFace::embed(std::uint32_t local_bits) const {
  std::uint32_t out = fixed_vals;
  std::uint32_t m = free_mask;
  int k = 0;
  while (m) {
    int pos = std::countr_zero(m);
    if ((local_bits >> k) & 1u) out |= (1u << pos);
    m &= m - 1;
    ++k;
  }
  return out;
}

std::uint32_t CubeFace::project(std::uint32_t ambient_bits) const {
  if (!contains_vertex(ambient_bits)) throw std::invalid_argument("CubeFace: vertex not on face");
  std::uint32_t out = 0;
  std::uint32_t m = free_mask;
  int k = 0;
  while (m) {
    int pos = std::countr_zero(m);
    if ((ambient_bits >> pos) & 1u) out |= (1u << k);
    m &= m - 1;
    ++k;
  }
  return out;
}

bool CubeFace::contains_vertex(std::uint32_t ambient_bits) const {
  return (ambient_bits & ~free_mask) == fixed_vals;
}

std::vector<CubeFace> enumerate_faces(int n, int dim) {
  if (n < 1 || n > kMaxGroundSet) throw std::invalid_argument("enumerate_faces: n out of range");
  if (dim < 0 || dim > n) throw std::invalid_argument("enumerate_faces: dim out of range");
  std::vector<CubeFace> out;
  const std::uint32_t all = Subset::mask_all(n);
  for (std::uint32_t free = 0; free <= all; ++free) {
    if (std::popcount(free) != dim) continue;
    const std::uint32_t fixed_mask = all & ~free;
    // Iterate over all settings of the fixed coordinates.
    std::uint32_t vals = 0;
    while (true) {
      out.emplace_back(n, free, vals);
      if (vals == fixed_mask) break;
      vals = (vals - fixed_mask) & fixed_mask;  // next subset of fixed_mask
    }
  }
  return out;
}

SignedSymmetry SignedSymmetry::identity(int n) {
  SignedSymmetry g;
  g.n = n;
  for (int i = 0; i < n; ++i) g.perm[i] = static_cast<std::uint8_t>(i);
  return g;
}

std::uint32_t SignedSymmetry::apply_bits(std::uint32_t bits) const {
  std::uint32_t flipped = bits ^ flips;
  std::uint32_t out = 0;
  for (int i = 0; i < n; ++i)
    if ((flipped >> i) & 1u) out |= (1u << perm[i]);
  return out;
}

RatVec SignedSymmetry::apply_point(const RatVec& x) const {
  RatVec out(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    Rat xi = ((flips >> i) & 1u) ? Rat(1) - x[i] : x[i];
    out[perm[i]] = xi;
  }
  return out;
}

SignedSymmetry SignedSymmetry::compose(const SignedSymmetry& inner) const {
  // (this o inner)(S) = this(inner(S)).
  SignedSymmetry g;
  g.n = n;
  for (int i = 0; i < n; ++i) g.perm[i] = perm[inner.perm[i]];
  // this(inner(S)) = permThis(permInner(S ^ fIn) ^ fThis)
  //               = (permThis o permInner)(S ^ fIn ^ permInner^{-1}(fThis)).
  std::uint32_t pulled = 0;
  for (int i = 0; i < n; ++i)
    if ((flips >> inner.perm[i]) & 1u) pulled |= (1u << i);
  g.flips = inner.flips ^ pulled;
  return g;
}

SignedSymmetry SignedSymmetry::inverse() const {
  SignedSymmetry g;
  g.n = n;
  for (int i = 0; i < n; ++i) g.perm[perm[i]] = static_cast<std::uint8_t>(i);
  std::uint32_t pushed = 0;
  for (int i = 0; i < n; ++i)
    if ((flips >> i) & 1u) pushed |= (1u << perm[i]);
  g.flips = pushed;
  return g;
}

std::vector<SignedSymmetry> signed_symmetries(int n) {
  std::vector<SignedSymmetry> out;
  std::vector<std::uint8_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    for (std::uint32_t flips = 0; flips < (1u << n); ++flips) {
      SignedSymmetry g;
      g.n = n;
      std::copy(p.begin(), p.end(), g.perm.begin());
      g.flips = flips;
      out.push_back(g);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

void ConvexCircuit::canonicalize() {
  std::vector<size_t> idx(support.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return support[a] < support[b]; });
  std::vector<std::uint32_t> s;
  std::vector<Rat> w;
  for (size_t i : idx) {
    s.push_back(support[i]);
    w.push_back(weights[i]);
  }
  support = std::move(s);
  weights = std::move(w);
}

void ConvexCircuit::validate() const {
  if (support.empty() || support.size() != weights.size())
    throw std::invalid_argument("ConvexCircuit: support/weights mismatch");
  if (static_cast<int>(barycenter.size()) != n)
    throw std::invalid_argument("ConvexCircuit: barycenter dimension mismatch");
  Rat total(0);
  RatVec sum(n, Rat(0));
  RatMat points;
  for (size_t i = 0; i < support.size(); ++i) {
    if (sgn(weights[i]) <= 0 || weights[i] >= 1)
      throw std::invalid_argument("ConvexCircuit: weight outside (0,1)");
    total += weights[i];
    RatVec e = indicator_vector(support[i], n);
    for (int j = 0; j < n; ++j) sum[j] += weights[i] * e[j];
    points.push_back(std::move(e));
  }
  if (total != 1) throw std::invalid_argument("ConvexCircuit: weights do not sum to 1");
  if (sum != barycenter) throw std::invalid_argument("ConvexCircuit: barycenter mismatch");
  if (!affinely_independent(points))
    throw std::invalid_argument("ConvexCircuit: support not affinely independent");
}

std::set<ConvexCircuit> orbit(int symgroup_n, const ConvexCircuit& circuit) {
  std::set<ConvexCircuit> out;
  for (const SignedSymmetry& g : signed_symmetries(symgroup_n)) {
    ConvexCircuit image;
    image.n = circuit.n;
    image.weights = circuit.weights;
    image.support.reserve(circuit.support.size());
    for (std::uint32_t s : circuit.support) image.support.push_back(g.apply_bits(s));
    image.barycenter = g.apply_point(circuit.barycenter);
    image.canonicalize();
    out.insert(std::move(image));
  }
  return out;
}

namespace {

void circuits_of_point(int n, const RatVec& target, std::vector<ConvexCircuit>& out) {
  const int num_vertices = 1 << n;
  // Affinely independent supports have at most n+1 points.
  std::vector<std::uint32_t> chosen;
  RatMat points;
  auto recurse = [&](auto&& self, int first) -> void {
    if (chosen.size() >= 2) {
      if (affinely_independent(points)) {
        if (auto lambda = affine_coordinates(points, target)) {
          bool strict = true;
          for (const Rat& l : *lambda)
            if (sgn(l) <= 0 || l >= 1) {
              strict = false;
              break;
            }
          if (strict) {
            ConvexCircuit c;
            c.n = n;
            c.support = chosen;
            c.weights = *lambda;
            c.barycenter = target;
            c.canonicalize();
            out.push_back(std::move(c));
          }
        }
      } else {
        return;  // no superset of a dependent set is independent
      }
    }
    if (static_cast<int>(chosen.size()) == n + 1) return;
    for (int v = first; v < num_vertices; ++v) {
      chosen.push_back(static_cast<std::uint32_t>(v));
      points.push_back(indicator_vector(static_cast<std::uint32_t>(v), n));
      self(self, v + 1);
      chosen.pop_back();
      points.pop_back();
    }
  };
  recurse(recurse, 0);
}

}  // namespace

std::vector<ConvexCircuit> center_circuits(int n) {
  if (n < 1 || n > 5)
    throw std::invalid_argument("center_circuits: exhaustive enumeration supports n <= 5 only");
  RatVec center(n, Rat(1, 2));
  std::vector<ConvexCircuit> out;
  circuits_of_point(n, center, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace vdm
