#include "vdm/delta_matroid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "vdm/linalg.hpp"
#include "vdm/rng.hpp"
#include "vdm/subdivision.hpp"

namespace vdm {

BasisFamily::BasisFamily(int n_, std::vector<std::uint32_t> bases_) : n(n_), bases(std::move(bases_)) {
  if (n < 0 || n > kMaxGroundSet) throw std::invalid_argument("BasisFamily: n out of range");
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  if (bases.empty()) throw std::invalid_argument("BasisFamily: empty family");
  if (bases.back() >= (1u << n)) throw std::invalid_argument("BasisFamily: basis out of range");
}

bool BasisFamily::contains(std::uint32_t mask) const {
  return std::binary_search(bases.begin(), bases.end(), mask);
}

std::optional<ExchangeViolation> delta_matroid_violation(const BasisFamily& f) {
  for (std::uint32_t a : f.bases)
    for (std::uint32_t b : f.bases) {
      std::uint32_t diff = a ^ b;
      for (std::uint32_t d = diff; d != 0; d &= d - 1) {
        const std::uint32_t abit = d & -d;
        bool exchanged = false;
        for (std::uint32_t e = diff; e != 0 && !exchanged; e &= e - 1) {
          const std::uint32_t bbit = e & -e;
          // b == a is allowed and exchanges to A delta {a}.
          const std::uint32_t cand = (bbit == abit) ? (a ^ abit) : (a ^ abit ^ bbit);
          if (f.contains(cand)) exchanged = true;
        }
        if (!exchanged) {
          ExchangeViolation v{Subset(a, f.n), Subset(b, f.n), std::countr_zero(abit) + 1};
          return v;
        }
      }
    }
  return std::nullopt;
}

bool is_even(const BasisFamily& f) {
  const int parity = std::popcount(f.bases.front()) & 1;
  for (std::uint32_t b : f.bases)
    if ((std::popcount(b) & 1) != parity) return false;
  return is_delta_matroid(f);
}

std::vector<PolytopeEdge> polytope_edges(const BasisFamily& f) {
  if (f.size() < 2) throw std::invalid_argument("polytope_edges: need at least two bases");
  SubsetFunction p(f.n);
  for (std::uint32_t b : f.bases) p.set(b, Val(Rat(0)));
  std::vector<PolytopeEdge> out;
  for (size_t i = 0; i < f.bases.size(); ++i)
    for (size_t j = i + 1; j < f.bases.size(); ++j) {
      const std::uint32_t s = f.bases[i], t = f.bases[j];
      if (!pair_is_cell(p, s, t)) continue;
      EdgeDirection dir;
      switch (hamming(s, t)) {
        case 1:
          dir = EdgeDirection::axis;
          break;
        case 2: {
          const std::uint32_t gained = t & ~s, lost = s & ~t;
          dir = (gained == 0 || lost == 0) ? EdgeDirection::plane_sum : EdgeDirection::plane_diff;
          break;
        }
        default:
          dir = EdgeDirection::longer;
      }
      out.push_back(PolytopeEdge{Subset(s, f.n), Subset(t, f.n), dir});
    }
  return out;
}

RankTable rank_function(const BasisFamily& f) {
  RankTable table;
  table.n = f.n;
  table.values.resize(1u << f.n);
  const std::uint32_t all = Subset::mask_all(f.n);
  for (std::uint32_t s = 0; s <= all && s < (1u << f.n); ++s) {
    int best_max = -1;
    int min_dist = f.n + 1;
    for (std::uint32_t b : f.bases) {
      best_max = std::max(best_max, std::popcount(b & s) + std::popcount(~b & ~s & all));
      min_dist = std::min(min_dist, std::popcount(b ^ s));
    }
    if (best_max != f.n - min_dist)
      throw std::logic_error("rank_function: the two formulas disagree");
    table.values[s] = best_max;
  }
  return table;
}

SubsetFunction neg_rank_as_valuation(const BasisFamily& f) {
  const RankTable r = rank_function(f);
  SubsetFunction p(f.n);
  for (std::uint32_t s = 0; s < p.table_size(); ++s) p.set(s, Val(Rat(-r.values[s])));
  return p;
}

namespace {

BasisFamily minor_support_family(int n, Rng& rng) {
  // Random symmetric or skew-symmetric rational matrix; the supports of its
  // principal minors form a Delta-matroid, which a random cube symmetry
  // then moves off the "contains the empty set" special position.
  const bool skew = rng.chance(50);
  RatMat a(n, RatVec(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (i == j) {
        if (!skew && rng.chance(60)) a[i][i] = Rat(rng.int_in(-3, 3));
        continue;
      }
      if (rng.chance(40)) continue;  // keep some structural zeros
      Rat v(rng.int_in(-3, 3));
      a[i][j] = v;
      a[j][i] = skew ? Rat(-v) : v;
    }
  std::vector<std::uint32_t> bases;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    auto elems = subset_elements(s);
    RatMat sub(elems.size(), RatVec(elems.size()));
    for (size_t i = 0; i < elems.size(); ++i)
      for (size_t j = 0; j < elems.size(); ++j) sub[i][j] = a[elems[i] - 1][elems[j] - 1];
    if (sgn(det(std::move(sub))) != 0 || s == 0) bases.push_back(s);
  }

  SignedSymmetry g;
  g.n = n;
  std::vector<std::uint8_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  std::copy(perm.begin(), perm.end(), g.perm.begin());
  g.flips = static_cast<std::uint32_t>(rng.below(1u << n));
  for (std::uint32_t& b : bases) b = g.apply_bits(b);
  return BasisFamily(n, std::move(bases));
}

}  // namespace

BasisFamily random_delta_matroid(int n, std::uint64_t seed, const RandomDeltaMatroidOptions& opts) {
  if (n < 1 || n > 8) throw std::invalid_argument("random_delta_matroid: n must be in 1..8");
  Rng rng(seed);
  for (long attempt = 0; attempt < opts.rejection_budget; ++attempt) {
    const unsigned density = 20 + static_cast<unsigned>(rng.below(61));
    std::vector<std::uint32_t> picked;
    for (std::uint32_t s = 0; s < (1u << n); ++s)
      if (rng.chance(density)) picked.push_back(s);
    if (picked.empty()) picked.push_back(static_cast<std::uint32_t>(rng.below(1u << n)));
    BasisFamily f(n, std::move(picked));
    if (is_delta_matroid(f)) return f;
  }
  if (!opts.allow_fallback)
    throw std::runtime_error("random_delta_matroid: sampling budget exhausted");
  BasisFamily f = minor_support_family(n, rng);
  if (!is_delta_matroid(f))
    throw std::logic_error("random_delta_matroid: minor-support family failed the exchange axiom");
  return f;
}

}  // namespace vdm
