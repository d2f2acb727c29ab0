#include "vdm/multiaffine.hpp"

#include <bit>
#include <optional>
#include <stdexcept>

#include "vdm/subset.hpp"

namespace vdm {

MultiAffinePoly::MultiAffinePoly(FieldSpecPtr spec, int n) : spec_(std::move(spec)), n_(n) {
  if (n < 0 || n > kMaxGroundSet) throw std::invalid_argument("MultiAffinePoly: n out of range");
  coeffs_.assign(1u << n, FieldElem::zero(spec_));
}

FieldElem MultiAffinePoly::evaluate(const std::vector<FieldElem>& point) const {
  if (static_cast<int>(point.size()) != n_)
    throw std::invalid_argument("MultiAffinePoly: point dimension mismatch");
  FieldElem acc = FieldElem::zero(spec_);
  for (std::uint32_t t = 0; t < table_size(); ++t) {
    if (coeffs_[t].is_zero()) continue;
    FieldElem term = coeffs_[t];
    for (int i = 0; i < n_; ++i)
      if ((t >> i) & 1u) term = term * point[i];
    acc = acc + term;
  }
  return acc;
}

SmallPoly::SmallPoly(FieldSpecPtr spec, int n) : spec_(std::move(spec)), n_(n) {
  if (n < 0 || n > kMaxGroundSet) throw std::invalid_argument("SmallPoly: n out of range");
}

std::uint64_t SmallPoly::key_of_mask(std::uint32_t mask) {
  std::uint64_t key = 0;
  for (int i = 0; i < 32 && (mask >> i) != 0; ++i)
    if ((mask >> i) & 1u) key |= (std::uint64_t{1} << (2 * i));
  return key;
}

int SmallPoly::exponent(std::uint64_t key, int var) {
  return static_cast<int>((key >> (2 * (var - 1))) & 0x3u);
}

void SmallPoly::add_term(std::uint64_t key, const FieldElem& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

FieldElem SmallPoly::evaluate(const std::vector<FieldElem>& point) const {
  FieldElem acc = FieldElem::zero(spec_);
  for (const auto& [key, c] : terms_) {
    FieldElem term = c;
    for (int i = 1; i <= n_; ++i)
      for (int e = 0; e < exponent(key, i); ++e) term = term * point[i - 1];
    acc = acc + term;
  }
  return acc;
}

SmallPoly operator-(const SmallPoly& a, const SmallPoly& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("SmallPoly: dimension mismatch");
  SmallPoly out = a;
  for (const auto& [key, c] : b.terms_) out.add_term(key, -c);
  return out;
}

namespace {

// Puts the nonzero coefficients of a table over a common denominator so the
// accumulation below is pure polynomial arithmetic with one fraction
// canonicalization per output term.
struct ClearedTable {
  Poly common_den;
  std::vector<std::pair<std::uint32_t, Poly>> numerators;
};

ClearedTable clear_denominators(const MultiAffinePoly& f) {
  const BaseFieldCtx& ctx = f.spec()->base;
  ClearedTable out;
  out.common_den = {b_one(ctx)};
  for (std::uint32_t t = 0; t < f.table_size(); ++t) {
    if (f.at(t).is_zero()) continue;
    const Poly& d = f.at(t).den();
    Poly g = poly_gcd(ctx, out.common_den, d);
    out.common_den = poly_mul(ctx, out.common_den, poly_divmod(ctx, d, g).first);
  }
  for (std::uint32_t t = 0; t < f.table_size(); ++t) {
    if (f.at(t).is_zero()) continue;
    Poly scale = poly_divmod(ctx, out.common_den, f.at(t).den()).first;
    out.numerators.emplace_back(t, poly_mul(ctx, f.at(t).num(), scale));
  }
  return out;
}

}  // namespace

SmallPoly multiply_affine(const MultiAffinePoly& a, const MultiAffinePoly& b) {
  if (a.n() != b.n()) throw std::invalid_argument("multiply_affine: dimension mismatch");
  const BaseFieldCtx& ctx = a.spec()->base;
  const ClearedTable ca = clear_denominators(a);
  const ClearedTable cb = clear_denominators(b);
  std::map<std::uint64_t, Poly> sums;
  for (const auto& [s, anum] : ca.numerators)
    for (const auto& [t, bnum] : cb.numerators) {
      const std::uint64_t key = SmallPoly::key_of_mask(s) + SmallPoly::key_of_mask(t);
      Poly prod = poly_mul(ctx, anum, bnum);
      auto it = sums.find(key);
      if (it == sums.end())
        sums.emplace(key, std::move(prod));
      else
        it->second = poly_add(ctx, it->second, prod);
    }
  const Poly den = poly_mul(ctx, ca.common_den, cb.common_den);
  SmallPoly out(a.spec(), a.n());
  for (auto& [key, num] : sums) {
    if (num.empty()) continue;
    out.add_term(key, FieldElem::fraction(a.spec(), std::move(num), den));
  }
  return out;
}

namespace {

// The four slices f = x_i x_j f_ij + x_i f_i^j + x_j f_j^i + f^{ij}; the
// output polynomials formally keep ambient arity n but involve neither
// variable.
MultiAffinePoly slice(const MultiAffinePoly& f, int i, int j, bool with_i, bool with_j) {
  const std::uint32_t bi = Subset::bit_of(i), bj = Subset::bit_of(j);
  MultiAffinePoly out(f.spec(), f.n());
  for (std::uint32_t t = 0; t < f.table_size(); ++t) {
    if (t & (bi | bj)) continue;
    out.at(t) = f.at(t | (with_i ? bi : 0) | (with_j ? bj : 0));
  }
  return out;
}

BaseElem poly_eval_base(const BaseFieldCtx& ctx, const Poly& p, const BaseElem& c) {
  BaseElem acc = b_zero(ctx);
  for (size_t i = p.size(); i-- > 0;) acc = b_add(ctx, b_mul(ctx, acc, c), p[i]);
  return acc;
}

std::optional<BaseElem> specialize_t(const FieldElem& x, const BaseElem& c) {
  const BaseFieldCtx& ctx = x.spec()->base;
  const BaseElem den = poly_eval_base(ctx, x.den(), c);
  if (b_is_zero(den)) return std::nullopt;
  return b_div(ctx, poly_eval_base(ctx, x.num(), c), den);
}

// Cross-check the slice formula against the derivative definition after
// specializing t to a base-field point (so the verification runs in plain
// base-field arithmetic). Falls back silently only when every candidate
// point meets a vanishing denominator, which cannot happen for polynomial
// coefficient tables.
void check_rayleigh_identity(const MultiAffinePoly& f, const SmallPoly& delta, int i, int j) {
  const BaseFieldCtx& ctx = f.spec()->base;
  std::vector<BaseElem> candidates;
  if (ctx.characteristic == 0) {
    for (long c : {2L, 3L, 5L, 7L}) candidates.push_back(b_make(ctx, Rat(c)));
  } else {
    const long p = ctx.characteristic;
    for (long re = 0; re < std::min(p, 4L); ++re) {
      candidates.push_back(b_make(ctx, Rat(re)));
      if (ctx.quadratic) candidates.push_back(b_make(ctx, Rat(re), Rat(1)));
    }
  }

  for (const BaseElem& c : candidates) {
    std::vector<BaseElem> table(f.table_size(), b_zero(ctx));
    bool usable = true;
    for (std::uint32_t t = 0; t < f.table_size() && usable; ++t) {
      auto v = specialize_t(f.at(t), c);
      if (!v)
        usable = false;
      else
        table[t] = *v;
    }
    std::vector<std::pair<std::uint64_t, BaseElem>> dterms;
    for (const auto& [key, coeff] : delta.terms()) {
      auto v = specialize_t(coeff, c);
      if (!v) {
        usable = false;
        break;
      }
      dterms.emplace_back(key, *v);
    }
    if (!usable) continue;

    std::vector<BaseElem> x;
    for (int k = 1; k <= f.n(); ++k)
      x.push_back(b_make(ctx, Rat(k + 1), ctx.quadratic ? Rat(k) : Rat(0)));
    auto f_at = [&](const std::vector<BaseElem>& pt) {
      BaseElem acc = b_zero(ctx);
      for (std::uint32_t t = 0; t < f.table_size(); ++t) {
        if (b_is_zero(table[t])) continue;
        BaseElem term = table[t];
        for (int k = 0; k < f.n(); ++k)
          if ((t >> k) & 1u) term = b_mul(ctx, term, pt[k]);
        acc = b_add(ctx, acc, term);
      }
      return acc;
    };
    auto with = [&](std::vector<BaseElem> pt, int var, long value) {
      pt[var - 1] = b_make(ctx, Rat(value));
      return pt;
    };
    const BaseElem d_i = b_sub(ctx, f_at(with(x, i, 1)), f_at(with(x, i, 0)));
    const BaseElem d_j = b_sub(ctx, f_at(with(x, j, 1)), f_at(with(x, j, 0)));
    const BaseElem d_ij =
        b_add(ctx, b_sub(ctx, f_at(with(with(x, i, 1), j, 1)), f_at(with(with(x, i, 1), j, 0))),
              b_sub(ctx, f_at(with(with(x, i, 0), j, 0)), f_at(with(with(x, i, 0), j, 1))));
    const BaseElem direct = b_sub(ctx, b_mul(ctx, d_i, d_j), b_mul(ctx, f_at(x), d_ij));

    BaseElem dval = b_zero(ctx);
    for (const auto& [key, coeff] : dterms) {
      BaseElem term = coeff;
      for (int k = 1; k <= f.n(); ++k)
        for (int e = 0; e < SmallPoly::exponent(key, k); ++e) term = b_mul(ctx, term, x[k - 1]);
      dval = b_add(ctx, dval, term);
    }
    if (!(dval == direct))
      throw std::logic_error("rayleigh: slice route disagrees with the derivative route");
    return;
  }
}

}  // namespace

SmallPoly rayleigh(const MultiAffinePoly& f, int i, int j) {
  if (i == j) throw std::invalid_argument("rayleigh: indices must differ");
  if (i < 1 || i > f.n() || j < 1 || j > f.n())
    throw std::invalid_argument("rayleigh: index out of range");
  const MultiAffinePoly fij = slice(f, i, j, true, true);
  const MultiAffinePoly fi = slice(f, i, j, true, false);
  const MultiAffinePoly fj = slice(f, i, j, false, true);
  const MultiAffinePoly f0 = slice(f, i, j, false, false);
  SmallPoly delta = multiply_affine(fi, fj) - multiply_affine(fij, f0);
  check_rayleigh_identity(f, delta, i, j);
  return delta;
}

MultiAffinePoly scale_vars(const MultiAffinePoly& f, const std::vector<FieldElem>& lambda) {
  if (static_cast<int>(lambda.size()) != f.n())
    throw std::invalid_argument("scale_vars: lambda dimension mismatch");
  for (const FieldElem& l : lambda)
    if (l.is_zero()) throw std::invalid_argument("scale_vars: zero scale");
  MultiAffinePoly out(f.spec(), f.n());
  for (std::uint32_t t = 0; t < f.table_size(); ++t) {
    if (f.at(t).is_zero()) continue;
    FieldElem c = f.at(t);
    for (int i = 0; i < f.n(); ++i)
      if ((t >> i) & 1u) c = c * lambda[i];
    out.at(t) = c;
  }
  return out;
}

SmallPoly scale_vars(const SmallPoly& f, const std::vector<FieldElem>& lambda) {
  if (static_cast<int>(lambda.size()) != f.n())
    throw std::invalid_argument("scale_vars: lambda dimension mismatch");
  for (const FieldElem& l : lambda)
    if (l.is_zero()) throw std::invalid_argument("scale_vars: zero scale");
  SmallPoly out(f.spec(), f.n());
  for (const auto& [key, c] : f.terms()) {
    FieldElem v = c;
    for (int i = 1; i <= f.n(); ++i)
      for (int e = 0; e < SmallPoly::exponent(key, i); ++e) v = v * lambda[i - 1];
    out.add_term(key, v);
  }
  return out;
}

MultiAffinePoly conj_at_sigma(const MultiAffinePoly& g, int sigma) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("conj_at_sigma: sigma must be +-1");
  MultiAffinePoly out(g.spec(), g.n());
  for (std::uint32_t t = 0; t < g.table_size(); ++t) {
    if (g.at(t).is_zero()) continue;
    FieldElem c = g.at(t).conj();
    if (sigma == -1 && (std::popcount(t) & 1)) c = -c;
    out.at(t) = c;
  }
  return out;
}

ResiduePoly residue_poly(const MultiAffinePoly& f) {
  ResiduePoly out;
  out.ctx = residue_field(*f.spec());
  out.n = f.n();
  out.coeffs.assign(f.table_size(), b_zero(out.ctx));
  for (std::uint32_t t = 0; t < f.table_size(); ++t) {
    if (valuation(f.at(t)) < Val(Rat(0)))
      throw std::invalid_argument("residue_poly: coefficient of x^" + Subset(t, f.n()).to_string() +
                                  " has negative valuation");
    out.coeffs[t] = residue(f.at(t)).v;
  }
  return out;
}

ResidueSmallPoly residue_small(const SmallPoly& f) {
  ResidueSmallPoly out;
  out.ctx = residue_field(*f.spec());
  out.n = f.n();
  for (const auto& [key, c] : f.terms()) {
    if (valuation(c) < Val(Rat(0)))
      throw std::invalid_argument("residue_small: coefficient with negative valuation");
    BaseElem r = residue(c).v;
    if (!b_is_zero(r)) out.terms[key] = r;
  }
  return out;
}

ResidueSmallPoly multiply_affine_residue(const ResiduePoly& a, const ResiduePoly& b) {
  if (a.n != b.n || !(a.ctx == b.ctx))
    throw std::invalid_argument("multiply_affine_residue: mismatched operands");
  ResidueSmallPoly out;
  out.ctx = a.ctx;
  out.n = a.n;
  for (std::uint32_t s = 0; s < a.coeffs.size(); ++s) {
    if (b_is_zero(a.coeffs[s])) continue;
    for (std::uint32_t t = 0; t < b.coeffs.size(); ++t) {
      if (b_is_zero(b.coeffs[t])) continue;
      const std::uint64_t key = SmallPoly::key_of_mask(s) + SmallPoly::key_of_mask(t);
      auto it = out.terms.find(key);
      const BaseElem prod = b_mul(a.ctx, a.coeffs[s], b.coeffs[t]);
      if (it == out.terms.end()) {
        if (!b_is_zero(prod)) out.terms[key] = prod;
      } else {
        it->second = b_add(a.ctx, it->second, prod);
        if (b_is_zero(it->second)) out.terms.erase(it);
      }
    }
  }
  return out;
}

ResidueSmallPoly rayleigh_residue(const ResiduePoly& f, int i, int j) {
  if (i == j) throw std::invalid_argument("rayleigh_residue: indices must differ");
  const std::uint32_t bi = Subset::bit_of(i), bj = Subset::bit_of(j);
  auto slice_r = [&](bool with_i, bool with_j) {
    ResiduePoly out;
    out.ctx = f.ctx;
    out.n = f.n;
    out.coeffs.assign(f.coeffs.size(), b_zero(f.ctx));
    for (std::uint32_t t = 0; t < f.coeffs.size(); ++t) {
      if (t & (bi | bj)) continue;
      out.coeffs[t] = f.coeffs[t | (with_i ? bi : 0) | (with_j ? bj : 0)];
    }
    return out;
  };
  ResidueSmallPoly lhs = multiply_affine_residue(slice_r(true, false), slice_r(false, true));
  ResidueSmallPoly rhs = multiply_affine_residue(slice_r(true, true), slice_r(false, false));
  for (const auto& [key, c] : rhs.terms) {
    auto it = lhs.terms.find(key);
    const BaseElem neg = b_neg(f.ctx, c);
    if (it == lhs.terms.end()) {
      lhs.terms[key] = neg;
    } else {
      it->second = b_add(f.ctx, it->second, neg);
      if (b_is_zero(it->second)) lhs.terms.erase(it);
    }
  }
  return lhs;
}

}  // namespace vdm
