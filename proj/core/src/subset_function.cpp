#include "vdm/subset_function.hpp"

namespace vdm {

SubsetFunction::SubsetFunction(int n) : n_(n) {
  if (n < 0 || n > kMaxGroundSet) throw std::invalid_argument("SubsetFunction: n out of range");
  values_.assign(1u << n, Val::infinity());
}

SubsetFunction SubsetFunction::constant(int n, const Val& v) {
  SubsetFunction p(n);
  for (std::uint32_t s = 0; s < p.table_size(); ++s) p.values_[s] = v;
  return p;
}

std::vector<std::uint32_t> SubsetFunction::domain() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < table_size(); ++s)
    if (values_[s].is_finite()) out.push_back(s);
  return out;
}

bool SubsetFunction::has_finite_value() const {
  for (const Val& v : values_)
    if (v.is_finite()) return true;
  return false;
}

SubsetFunction SubsetFunction::restricted_to(const CubeFace& face) const {
  if (face.n != n_) throw std::invalid_argument("SubsetFunction: face from a different cube");
  SubsetFunction q(face.dim());
  for (std::uint32_t s = 0; s < q.table_size(); ++s) q.values_[s] = values_[face.embed(s)];
  return q;
}

SubsetFunction SubsetFunction::transformed(const SignedSymmetry& g) const {
  if (g.n != n_) throw std::invalid_argument("SubsetFunction: symmetry of a different cube");
  const SignedSymmetry inv = g.inverse();
  SubsetFunction q(n_);
  for (std::uint32_t s = 0; s < table_size(); ++s) q.values_[s] = values_[inv.apply_bits(s)];
  return q;
}

SubsetFunction SubsetFunction::rescaled(const Rat& c, const RatVec& a, const Rat& b) const {
  if (sgn(c) <= 0) throw std::invalid_argument("SubsetFunction: scale must be positive");
  if (static_cast<int>(a.size()) != n_) throw std::invalid_argument("SubsetFunction: affine part dimension");
  SubsetFunction q(n_);
  for (std::uint32_t s = 0; s < table_size(); ++s) {
    if (!values_[s].is_finite()) continue;
    Rat shift = b;
    for (int i = 0; i < n_; ++i)
      if ((s >> i) & 1u) shift += a[i];
    q.values_[s] = Val(values_[s].finite_value() * c + shift);
  }
  return q;
}

SubsetFunction random_subset_function(int n, Rng& rng, const RandomSubsetFunctionOptions& opts) {
  while (true) {
    SubsetFunction p(n);
    bool any_finite = false;
    for (std::uint32_t s = 0; s < p.table_size(); ++s) {
      if (opts.infinity_percent > 0 && rng.chance(opts.infinity_percent)) continue;
      p.set(s, Val(Rat(rng.int_in(opts.min_value, opts.max_value))));
      any_finite = true;
    }
    if (any_finite) return p;
  }
}

}  // namespace vdm
