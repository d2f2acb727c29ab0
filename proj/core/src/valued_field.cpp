#include "vdm/valued_field.hpp"

#include <algorithm>
#include <cassert>

namespace vdm {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

// x as an element of F_p; requires a p-coprime denominator.
Rat mod_p(const Rat& x, long p) {
  const mpz_class P(p);
  mpz_class den = x.get_den() % P;
  if (den < 0) den += P;
  if (den == 0) throw std::invalid_argument("valued_field: rational is not p-integral");
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t()) == 0)
    throw std::invalid_argument("valued_field: denominator not invertible mod p");
  mpz_class num = x.get_num() % P;
  if (num < 0) num += P;
  return Rat((num * inv) % P);
}

long nu_p_int(const mpz_class& x, long p) {
  assert(x != 0);
  mpz_class rem;
  const mpz_class P(p);
  return static_cast<long>(mpz_remove(rem.get_mpz_t(), x.get_mpz_t(), P.get_mpz_t()));
}

long nu_p_rat(const Rat& x, long p) {
  assert(sgn(x) != 0);
  long v = 0;
  if (x.get_num() != 0) v += nu_p_int(mpz_class(x.get_num()), p);
  v -= nu_p_int(mpz_class(x.get_den()), p);
  return v;
}

bool rational_is_square(const Rat& x) {
  if (sgn(x) < 0) return false;
  if (sgn(x) == 0) return true;
  mpz_class n = x.get_num(), d = x.get_den();
  return mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t());
}

}  // namespace

// ---------------------------------------------------------------------------
// Base field
// ---------------------------------------------------------------------------

BaseFieldCtx BaseFieldCtx::rationals() { return BaseFieldCtx{}; }

BaseFieldCtx BaseFieldCtx::quadratic_rationals(Rat c, Rat d, Rat e, Rat f) {
  BaseFieldCtx ctx;
  ctx.quadratic = true;
  ctx.min_c = std::move(c);
  ctx.min_d = std::move(d);
  ctx.conj_e = std::move(e);
  ctx.conj_f = std::move(f);
  ctx.validate();
  return ctx;
}

BaseFieldCtx BaseFieldCtx::prime_field(long p) {
  BaseFieldCtx ctx;
  ctx.characteristic = p;
  ctx.validate();
  return ctx;
}

BaseFieldCtx BaseFieldCtx::quadratic_prime(long p, Rat c, Rat d, Rat e, Rat f) {
  BaseFieldCtx ctx;
  ctx.characteristic = p;
  ctx.quadratic = true;
  ctx.min_c = mod_p(c, p);
  ctx.min_d = mod_p(d, p);
  ctx.conj_e = mod_p(e, p);
  ctx.conj_f = mod_p(f, p);
  ctx.validate();
  return ctx;
}

void BaseFieldCtx::validate() const {
  if (characteristic != 0 && !is_prime(characteristic))
    throw std::invalid_argument("BaseFieldCtx: characteristic must be 0 or prime");
  if (!quadratic) {
    if (!conj_is_identity()) throw std::invalid_argument("BaseFieldCtx: involution needs alpha");
    return;
  }
  // Irreducibility of x^2 + c x + d over the prime field.
  if (characteristic == 0) {
    if (rational_is_square(min_c * min_c - 4 * min_d))
      throw std::invalid_argument("BaseFieldCtx: minimal polynomial is reducible over Q");
  } else if (characteristic == 2) {
    for (long r = 0; r < 2; ++r) {
      Rat value = mod_p(Rat(r * r) + min_c * r + min_d, 2);
      if (sgn(value) == 0)
        throw std::invalid_argument("BaseFieldCtx: minimal polynomial is reducible mod 2");
    }
  } else {
    const Rat disc = mod_p(min_c * min_c - 4 * min_d, characteristic);
    mpz_class dz = disc.get_num();
    if (mpz_legendre(dz.get_mpz_t(), mpz_class(characteristic).get_mpz_t()) != -1)
      throw std::invalid_argument("BaseFieldCtx: minimal polynomial is reducible mod p");
  }
  // The declared conjugate must be a root of the minimal polynomial and an
  // involution (applying it twice fixes alpha).
  const BaseElem cbar = b_make(*this, conj_e, conj_f);
  const BaseElem root_check =
      b_add(*this, b_add(*this, b_mul(*this, cbar, cbar),
                         b_mul(*this, b_make(*this, min_c), cbar)),
            b_make(*this, min_d));
  if (!b_is_zero(root_check))
    throw std::invalid_argument("BaseFieldCtx: conj(alpha) is not a root of the minimal polynomial");
  if (b_conj(*this, cbar) != b_make(*this, Rat(0), Rat(1)))
    throw std::invalid_argument("BaseFieldCtx: involution does not have order <= 2");
}

BaseElem b_make(const BaseFieldCtx& ctx, Rat re, Rat al) {
  if (!ctx.quadratic && sgn(al) != 0)
    throw std::invalid_argument("BaseElem: alpha component in a plain field");
  if (ctx.characteristic != 0) {
    re = mod_p(re, ctx.characteristic);
    al = ctx.quadratic ? mod_p(al, ctx.characteristic) : Rat(0);
  }
  return BaseElem{std::move(re), std::move(al)};
}

BaseElem b_zero(const BaseFieldCtx&) { return BaseElem{Rat(0), Rat(0)}; }
BaseElem b_one(const BaseFieldCtx&) { return BaseElem{Rat(1), Rat(0)}; }
bool b_is_zero(const BaseElem& x) { return sgn(x.re) == 0 && sgn(x.al) == 0; }

BaseElem b_add(const BaseFieldCtx& ctx, const BaseElem& x, const BaseElem& y) {
  return b_make(ctx, x.re + y.re, x.al + y.al);
}
BaseElem b_sub(const BaseFieldCtx& ctx, const BaseElem& x, const BaseElem& y) {
  return b_make(ctx, x.re - y.re, x.al - y.al);
}
BaseElem b_neg(const BaseFieldCtx& ctx, const BaseElem& x) { return b_make(ctx, -x.re, -x.al); }

BaseElem b_mul(const BaseFieldCtx& ctx, const BaseElem& x, const BaseElem& y) {
  // (a + b alpha)(c + d alpha) with alpha^2 = -min_c alpha - min_d.
  const Rat cross = x.re * y.al + x.al * y.re;
  const Rat sq = x.al * y.al;
  return b_make(ctx, x.re * y.re - sq * ctx.min_d, cross - sq * ctx.min_c);
}

BaseElem b_inv(const BaseFieldCtx& ctx, const BaseElem& x) {
  if (b_is_zero(x)) throw std::invalid_argument("BaseElem: division by zero");
  if (!ctx.quadratic) {
    if (ctx.characteristic == 0) return b_make(ctx, 1 / x.re);
    return b_make(ctx, Rat(1) / x.re);  // re is a unit mod p; b_make reduces
  }
  // Field norm (a + b alpha)(a - b c - b alpha) = a^2 - a b c + b^2 d.
  const Rat norm = x.re * x.re - x.re * x.al * ctx.min_c + x.al * x.al * ctx.min_d;
  if (ctx.characteristic == 0 && sgn(norm) == 0)
    throw std::logic_error("BaseElem: zero norm for a nonzero element");
  return b_make(ctx, (x.re - x.al * ctx.min_c) / norm, -x.al / norm);
}

BaseElem b_div(const BaseFieldCtx& ctx, const BaseElem& x, const BaseElem& y) {
  return b_mul(ctx, x, b_inv(ctx, y));
}

BaseElem b_conj(const BaseFieldCtx& ctx, const BaseElem& x) {
  return b_make(ctx, x.re + x.al * ctx.conj_e, x.al * ctx.conj_f);
}

std::string b_to_string(const BaseFieldCtx& ctx, const BaseElem& x) {
  const bool use_i = ctx.quadratic && sgn(ctx.min_c) == 0 && ctx.min_d == 1;
  const std::string sym = use_i ? "i" : "a";
  if (sgn(x.al) == 0) return rat_to_string(x.re);
  std::string alpart;
  if (x.al == 1)
    alpart = sym;
  else if (x.al == -1)
    alpart = "-" + sym;
  else
    alpart = rat_to_string(x.al) + "*" + sym;
  if (sgn(x.re) == 0) return alpart;
  if (alpart[0] == '-') return rat_to_string(x.re) + alpart;
  return rat_to_string(x.re) + "+" + alpart;
}

// ---------------------------------------------------------------------------
// Polynomials in t
// ---------------------------------------------------------------------------

void poly_trim(Poly& p) {
  while (!p.empty() && b_is_zero(p.back())) p.pop_back();
}

Poly poly_add(const BaseFieldCtx& ctx, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), b_zero(ctx));
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] = b_add(ctx, out[i], b[i]);
  poly_trim(out);
  return out;
}

Poly poly_neg(const BaseFieldCtx& ctx, Poly a) {
  for (BaseElem& c : a) c = b_neg(ctx, c);
  return a;
}

Poly poly_sub(const BaseFieldCtx& ctx, const Poly& a, const Poly& b) {
  return poly_add(ctx, a, poly_neg(ctx, b));
}

Poly poly_mul(const BaseFieldCtx& ctx, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, b_zero(ctx));
  for (size_t i = 0; i < a.size(); ++i) {
    if (b_is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j)
      out[i + j] = b_add(ctx, out[i + j], b_mul(ctx, a[i], b[j]));
  }
  poly_trim(out);
  return out;
}

Poly poly_scale(const BaseFieldCtx& ctx, Poly a, const BaseElem& c) {
  for (BaseElem& x : a) x = b_mul(ctx, x, c);
  poly_trim(a);
  return a;
}

// Division with remainder; the divisor must be nonzero.
std::pair<Poly, Poly> poly_divmod(const BaseFieldCtx& ctx, Poly a, const Poly& b) {
  assert(!b.empty());
  Poly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, b_zero(ctx));
  const BaseElem lead_inv = b_inv(ctx, b.back());
  while (a.size() >= b.size()) {
    const size_t shift = a.size() - b.size();
    const BaseElem f = b_mul(ctx, a.back(), lead_inv);
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = b_sub(ctx, a[shift + i], b_mul(ctx, f, b[i]));
    poly_trim(a);
    if (a.size() < b.size()) break;
    if (a.empty()) break;
  }
  poly_trim(q);
  return {std::move(q), std::move(a)};
}

Poly poly_monic(const BaseFieldCtx& ctx, Poly a) {
  if (a.empty()) return a;
  const BaseElem inv = b_inv(ctx, a.back());
  return poly_scale(ctx, std::move(a), inv);
}

Poly poly_gcd(const BaseFieldCtx& ctx, Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_divmod(ctx, a, b).second;
    // Renormalizing each remainder keeps the coefficients from exploding
    // along the Euclidean chain.
    r = poly_monic(ctx, std::move(r));
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(ctx, std::move(a));
}

namespace {

Poly poly_involution(const BaseFieldCtx& ctx, Poly a, bool twist) {
  for (size_t i = 0; i < a.size(); ++i) {
    a[i] = b_conj(ctx, a[i]);
    if (twist && (i & 1)) a[i] = b_neg(ctx, a[i]);
  }
  return a;
}

size_t poly_low(const Poly& a) {
  for (size_t i = 0; i < a.size(); ++i)
    if (!b_is_zero(a[i])) return i;
  throw std::logic_error("poly_low: zero polynomial");
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

void FieldSpec::validate() const {
  base.validate();
  if (vkind == ValuationKind::p_adic) {
    if (!is_prime(prime)) throw std::invalid_argument("FieldSpec: p-adic valuation needs a prime");
    if (base.characteristic != 0)
      throw std::invalid_argument("FieldSpec: p-adic valuation needs a characteristic-zero base");
    if (base.quadratic) {
      if ((sgn(base.min_c) != 0 && nu_p_rat(base.min_c, prime) < 0) ||
          (sgn(base.min_d) != 0 && nu_p_rat(base.min_d, prime) < 0))
        throw std::invalid_argument("FieldSpec: minimal polynomial must be p-integral");
      // Factor x^2 + cx + d mod p: inert wants no roots, split two simple ones.
      std::vector<long> roots;
      for (long r = 0; r < prime; ++r) {
        Rat value = mod_p(base.min_c * r + base.min_d + Rat(r) * Rat(r), prime);
        if (sgn(value) == 0) roots.push_back(r);
      }
      if (mode == PadicMode::inert && !roots.empty())
        throw std::invalid_argument("FieldSpec: inert mode but the minimal polynomial has roots mod p");
      if (mode == PadicMode::split) {
        if (roots.size() != 2)
          throw std::invalid_argument("FieldSpec: split mode needs two distinct simple roots mod p");
        for (long r : roots) {
          Rat deriv = mod_p(2 * Rat(r) + base.min_c, prime);
          if (sgn(deriv) == 0)
            throw std::invalid_argument("FieldSpec: ramified root (derivative vanishes mod p)");
        }
      }
    }
  }
}

namespace {

std::vector<long> split_roots_mod_p(const FieldSpec& spec) {
  std::vector<long> roots;
  for (long r = 0; r < spec.prime; ++r) {
    Rat value = mod_p(spec.base.min_c * r + spec.base.min_d + Rat(r) * Rat(r), spec.prime);
    if (sgn(value) == 0) roots.push_back(r);
  }
  assert(roots.size() == 2);
  return roots;
}

mpz_class mod_int(const Rat& x, const mpz_class& modulus) {
  mpz_class den = x.get_den() % modulus;
  if (den < 0) den += modulus;
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0)
    throw std::logic_error("mod_int: non-invertible denominator");
  mpz_class num = x.get_num() % modulus;
  if (num < 0) num += modulus;
  return (num * inv) % modulus;
}

}  // namespace

mpz_class FieldSpec::hensel_root(long k) const {
  std::lock_guard<std::mutex> lock(hensel->mu);
  if (hensel->precision == 0) {
    const std::vector<long> roots = split_roots_mod_p(*this);
    long chosen;
    if (split_branch == 0)
      chosen = roots[0];
    else if (split_branch == 1)
      chosen = roots[1];
    else {
      // Default branch: the root of higher valuation, i.e. the one congruent
      // to 0 mod p when it exists; otherwise the smaller residue.
      chosen = (roots[0] % prime == 0) ? roots[0] : (roots[1] % prime == 0 ? roots[1] : roots[0]);
    }
    hensel->root = chosen;
    hensel->pk = prime;
    hensel->precision = 1;
  }
  while (hensel->precision < k) {
    long next = hensel->precision * 2;
    if (next > hensel_cap)
      throw std::runtime_error("FieldSpec: Hensel precision budget exceeded");
    mpz_class pk2 = hensel->pk * hensel->pk;
    const mpz_class c = mod_int(base.min_c, pk2), d = mod_int(base.min_d, pk2);
    mpz_class r = hensel->root;
    mpz_class fr = (r * r + c * r + d) % pk2;
    mpz_class fpr = (2 * r + c) % pk2;
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), fpr.get_mpz_t(), pk2.get_mpz_t()) == 0)
      throw std::logic_error("hensel_root: derivative not invertible");
    r = (r - fr * inv) % pk2;
    if (r < 0) r += pk2;
    hensel->root = r;
    hensel->pk = pk2;
    hensel->precision = next;
  }
  return hensel->root;
}

namespace {

// nu of a nonzero a + b*alpha in a split p-adic spec, with the residue of
// its unit part mod p as a byproduct (used by residue()).
std::pair<long, long> split_valuation_and_unit(const FieldSpec& spec, const Rat& a, const Rat& b) {
  const long p = spec.prime;
  mpz_class d_lcm;
  mpz_lcm(d_lcm.get_mpz_t(), mpz_class(a.get_den()).get_mpz_t(), mpz_class(b.get_den()).get_mpz_t());
  const mpz_class A = mpz_class(a.get_num()) * (d_lcm / a.get_den());
  const mpz_class B = mpz_class(b.get_num()) * (d_lcm / b.get_den());
  const long shift = nu_p_int(d_lcm, p);

  long k = std::max<long>(16, shift + 8);
  while (true) {
    if (k > spec.hensel_cap)
      throw std::runtime_error("FieldSpec: Hensel precision budget exceeded");
    const mpz_class root = spec.hensel_root(k);
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    mpz_class n = (A + B * root) % pk;
    if (n < 0) n += pk;
    if (n != 0) {
      const long v = nu_p_int(n, p);
      if (v < k) {
        mpz_class pv;
        mpz_ui_pow_ui(pv.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(v));
        const mpz_class P(p);
        mpz_class unit = (n / pv) % P;
        // Divide out the unit part of the cleared denominator.
        mpz_class pshift;
        mpz_ui_pow_ui(pshift.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(shift));
        mpz_class dunit = (d_lcm / pshift) % P;
        mpz_class dinv;
        mpz_invert(dinv.get_mpz_t(), dunit.get_mpz_t(), P.get_mpz_t());
        unit = (unit * dinv) % P;
        return {v - shift, unit.get_si()};
      }
    }
    k *= 2;
  }
}

Val base_valuation(const FieldSpec& spec, const BaseElem& x) {
  if (b_is_zero(x)) return Val::infinity();
  switch (spec.vkind) {
    case ValuationKind::trivial:
      return Val(Rat(0));
    case ValuationKind::t_adic:
      return Val(Rat(0));  // base valuation is trivial under the t-adic rule
    case ValuationKind::p_adic: {
      if (!spec.base.quadratic) return Val(Rat(nu_p_rat(x.re, spec.prime)));
      if (spec.mode == PadicMode::inert) {
        Val v = Val::infinity();
        if (sgn(x.re) != 0) v = Val(Rat(nu_p_rat(x.re, spec.prime)));
        if (sgn(x.al) != 0) {
          Val w(Rat(nu_p_rat(x.al, spec.prime)));
          if (w < v) v = w;
        }
        return v;
      }
      return Val(Rat(split_valuation_and_unit(spec, x.re, x.al).first));
    }
  }
  throw std::logic_error("base_valuation: unreachable");
}

Val poly_gauss_valuation(const FieldSpec& spec, const Poly& p) {
  if (spec.vkind == ValuationKind::t_adic) return Val(Rat(poly_low(p)));
  Val best = Val::infinity();
  for (const BaseElem& c : p) {
    if (b_is_zero(c)) continue;
    Val v = base_valuation(spec, c);
    if (v < best) best = v;
  }
  return best;
}

}  // namespace

bool FieldSpec::involution_preserves_valuation() const {
  if (vkind != ValuationKind::p_adic || mode != PadicMode::split) return true;
  if (base.conj_is_identity()) return true;
  const Val va = alpha_valuation();
  // conj(alpha) = e + f*alpha.
  const Val vc = Val(Rat(split_valuation_and_unit(*this, base.conj_e, base.conj_f).first));
  return va == vc;
}

Val FieldSpec::alpha_valuation() const {
  if (!base.quadratic) throw std::logic_error("alpha_valuation: no alpha in this spec");
  return base_valuation(*this, BaseElem{Rat(0), Rat(1)});
}

FieldSpecPtr make_field_spec(FieldSpec spec) {
  spec.validate();
  return std::make_shared<const FieldSpec>(std::move(spec));
}

// ---------------------------------------------------------------------------
// FieldElem
// ---------------------------------------------------------------------------

FieldElem::FieldElem(FieldSpecPtr spec, Poly num, Poly den)
    : spec_(std::move(spec)), num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

void FieldElem::canonicalize() {
  const BaseFieldCtx& ctx = spec_->base;
  poly_trim(num_);
  poly_trim(den_);
  if (den_.empty()) throw std::invalid_argument("FieldElem: zero denominator");
  if (num_.empty()) {
    den_ = {b_one(ctx)};
    return;
  }
  // A gcd can only have positive degree when both sides do.
  if (num_.size() > 1 && den_.size() > 1) {
    Poly g = poly_gcd(ctx, num_, den_);
    if (g.size() > 1) {
      num_ = poly_divmod(ctx, num_, g).first;
      den_ = poly_divmod(ctx, den_, g).first;
    }
  }
  const BaseElem lead = den_.back();
  if (!(lead == b_one(ctx))) {
    const BaseElem inv = b_inv(ctx, lead);
    num_ = poly_scale(ctx, std::move(num_), inv);
    den_ = poly_scale(ctx, std::move(den_), inv);
  }
}

FieldElem FieldElem::zero(FieldSpecPtr spec) {
  Poly one{b_one(spec->base)};
  return FieldElem(std::move(spec), {}, std::move(one));
}
FieldElem FieldElem::one(FieldSpecPtr spec) {
  Poly num{b_one(spec->base)}, den{b_one(spec->base)};
  return FieldElem(std::move(spec), std::move(num), std::move(den));
}
FieldElem FieldElem::from_rat(FieldSpecPtr spec, const Rat& r) {
  Poly num{b_make(spec->base, r)}, den{b_one(spec->base)};
  return FieldElem(std::move(spec), std::move(num), std::move(den));
}
FieldElem FieldElem::from_base(FieldSpecPtr spec, BaseElem b) {
  Poly num{std::move(b)}, den{b_one(spec->base)};
  return FieldElem(std::move(spec), std::move(num), std::move(den));
}
FieldElem FieldElem::t(FieldSpecPtr spec) {
  Poly num{b_zero(spec->base), b_one(spec->base)}, den{b_one(spec->base)};
  return FieldElem(std::move(spec), std::move(num), std::move(den));
}
FieldElem FieldElem::alpha(FieldSpecPtr spec) {
  if (!spec->base.quadratic) throw std::invalid_argument("FieldElem: spec has no alpha");
  Poly num{b_make(spec->base, Rat(0), Rat(1))}, den{b_one(spec->base)};
  return FieldElem(std::move(spec), std::move(num), std::move(den));
}
FieldElem FieldElem::fraction(FieldSpecPtr spec, Poly num, Poly den) {
  return FieldElem(std::move(spec), std::move(num), std::move(den));
}

bool FieldElem::is_constant() const { return num_.size() <= 1 && den_.size() == 1; }

BaseElem FieldElem::constant_value() const {
  if (!is_constant()) throw std::logic_error("FieldElem: not constant in t");
  if (num_.empty()) return b_zero(spec_->base);
  return b_div(spec_->base, num_[0], den_[0]);
}

namespace {
void require_same_spec(const FieldElem& x, const FieldElem& y) {
  if (!x.spec() || !y.spec()) throw std::invalid_argument("FieldElem: uninitialized element");
  if (!(*x.spec() == *y.spec())) throw std::invalid_argument("FieldElem: field spec mismatch");
}
}  // namespace

FieldElem FieldElem::operator-() const {
  return FieldElem(spec_, poly_neg(spec_->base, num_), den_);
}

FieldElem operator+(const FieldElem& x, const FieldElem& y) {
  require_same_spec(x, y);
  const BaseFieldCtx& ctx = x.spec_->base;
  const bool x_poly = x.den_.size() == 1 && x.den_[0] == b_one(ctx);
  const bool y_poly = y.den_.size() == 1 && y.den_[0] == b_one(ctx);
  if (x_poly && y_poly) {
    FieldElem out;
    out.spec_ = x.spec_;
    out.num_ = poly_add(ctx, x.num_, y.num_);
    out.den_ = {b_one(ctx)};
    return out;
  }
  Poly num = poly_add(ctx, poly_mul(ctx, x.num_, y.den_), poly_mul(ctx, y.num_, x.den_));
  return FieldElem(x.spec_, std::move(num), poly_mul(ctx, x.den_, y.den_));
}

FieldElem operator-(const FieldElem& x, const FieldElem& y) { return x + (-y); }

FieldElem operator*(const FieldElem& x, const FieldElem& y) {
  require_same_spec(x, y);
  const BaseFieldCtx& ctx = x.spec_->base;
  return FieldElem(x.spec_, poly_mul(ctx, x.num_, y.num_), poly_mul(ctx, x.den_, y.den_));
}

FieldElem operator/(const FieldElem& x, const FieldElem& y) {
  require_same_spec(x, y);
  if (y.is_zero()) throw std::invalid_argument("FieldElem: division by zero");
  const BaseFieldCtx& ctx = x.spec_->base;
  return FieldElem(x.spec_, poly_mul(ctx, x.num_, y.den_), poly_mul(ctx, x.den_, y.num_));
}

FieldElem FieldElem::conj() const {
  return FieldElem(spec_, poly_involution(spec_->base, num_, spec_->twist),
                   poly_involution(spec_->base, den_, spec_->twist));
}

FieldElem FieldElem::pow(long e) const {
  if (e < 0) return one(spec_) / this->pow(-e);
  FieldElem acc = one(spec_);
  FieldElem base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool operator==(const FieldElem& x, const FieldElem& y) {
  require_same_spec(x, y);
  return x.num_ == y.num_ && x.den_ == y.den_;
}

// ---------------------------------------------------------------------------
// Valuation, sign, residue
// ---------------------------------------------------------------------------

Val valuation(const FieldElem& x) {
  if (x.is_zero()) return Val::infinity();
  const FieldSpec& spec = *x.spec();
  if (spec.vkind == ValuationKind::trivial) return Val(Rat(0));
  Val vn = poly_gauss_valuation(spec, x.num());
  Val vd = poly_gauss_valuation(spec, x.den());
  return Val(vn.finite_value() - vd.finite_value());
}

int field_sign(const FieldElem& x) {
  const FieldSpec& spec = *x.spec();
  if (spec.base.characteristic != 0 || spec.base.quadratic)
    throw std::invalid_argument("field_sign: base field is not ordered");
  if (spec.vkind == ValuationKind::p_adic)
    throw std::invalid_argument("field_sign: p-adic specs carry no order");
  if (x.is_zero()) return 0;
  const int sn = sgn(x.num()[poly_low(x.num())].re);
  const int sd = sgn(x.den()[poly_low(x.den())].re);
  return sn * sd;
}

BaseFieldCtx residue_field(const FieldSpec& spec) {
  switch (spec.vkind) {
    case ValuationKind::trivial:
    case ValuationKind::t_adic:
      return spec.base;
    case ValuationKind::p_adic:
      if (!spec.base.quadratic || spec.mode == PadicMode::split)
        return BaseFieldCtx::prime_field(spec.prime);
      return BaseFieldCtx::quadratic_prime(spec.prime, spec.base.min_c, spec.base.min_d,
                                           spec.base.conj_e, spec.base.conj_f);
  }
  throw std::logic_error("residue_field: unreachable");
}

ResidueElem residue(const FieldElem& x) {
  const FieldSpec& spec = *x.spec();
  const BaseFieldCtx rf = residue_field(spec);
  const Val v = valuation(x);
  if (v < Val(Rat(0))) throw std::invalid_argument("residue: negative valuation");
  if (x.is_zero()) return ResidueElem{rf, b_zero(rf)};

  switch (spec.vkind) {
    case ValuationKind::trivial: {
      if (!x.is_constant())
        throw std::invalid_argument("residue: t-dependent element under the trivial valuation");
      return ResidueElem{rf, x.constant_value()};
    }
    case ValuationKind::t_adic: {
      if (v > Val(Rat(0))) return ResidueElem{rf, b_zero(rf)};
      const size_t ln = poly_low(x.num()), ld = poly_low(x.den());
      return ResidueElem{rf, b_div(spec.base, x.num()[ln], x.den()[ld])};
    }
    case ValuationKind::p_adic: {
      if (!x.is_constant())
        throw std::invalid_argument("residue: t-dependent element under a p-adic valuation");
      if (v > Val(Rat(0))) return ResidueElem{rf, b_zero(rf)};
      const BaseElem c = x.constant_value();
      const long p = spec.prime;
      if (!spec.base.quadratic) return ResidueElem{rf, b_make(rf, mod_p(c.re, p))};
      if (spec.mode == PadicMode::inert)
        return ResidueElem{rf, b_make(rf, mod_p(c.re, p), mod_p(c.al, p))};
      const long unit = split_valuation_and_unit(spec, c.re, c.al).second;
      return ResidueElem{rf, b_make(rf, Rat(unit))};
    }
  }
  throw std::logic_error("residue: unreachable");
}

ResidueElem residue_conj(const ResidueElem& x) { return ResidueElem{x.ctx, b_conj(x.ctx, x.v)}; }

// ---------------------------------------------------------------------------
// Parser and printer
// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(const std::string& s, FieldSpecPtr spec) : s_(s), spec_(std::move(spec)) {}

  FieldElem run() {
    FieldElem e = expr();
    skip_ws();
    if (pos_ != s_.size()) throw FieldParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  FieldElem expr() {
    FieldElem acc = term();
    while (true) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  FieldElem term() {
    FieldElem acc = factor();
    while (true) {
      if (eat('*'))
        acc = acc * factor();
      else if (eat('/')) {
        FieldElem d = factor();
        if (d.is_zero()) throw FieldParseError("division by zero", pos_);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  FieldElem factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    FieldElem a = atom();
    skip_ws();
    if (eat('^')) {
      bool negexp = eat('-');
      long e = integer_literal();
      if (negexp && a.is_zero()) throw FieldParseError("zero to a negative power", pos_);
      a = a.pow(negexp ? -e : e);
    }
    return a;
  }

  long integer_literal() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) throw FieldParseError("expected an integer", pos_);
    return std::stol(s_.substr(start, pos_ - start));
  }

  FieldElem atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw FieldParseError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return FieldElem::from_rat(spec_, Rat(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (c == 't') {
      ++pos_;
      return FieldElem::t(spec_);
    }
    if (c == 'a') {
      if (!spec_->base.quadratic) throw FieldParseError("symbol 'a' not in this field", pos_);
      ++pos_;
      return FieldElem::alpha(spec_);
    }
    if (c == 'i') {
      if (!spec_->base.quadratic || sgn(spec_->base.min_c) != 0 || !(spec_->base.min_d == 1))
        throw FieldParseError("symbol 'i' requires alpha^2 = -1", pos_);
      ++pos_;
      return FieldElem::alpha(spec_);
    }
    if (c == '(') {
      ++pos_;
      FieldElem e = expr();
      if (!eat(')')) throw FieldParseError("expected ')'", pos_);
      return e;
    }
    throw FieldParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  const std::string& s_;
  FieldSpecPtr spec_;
  size_t pos_ = 0;
};

bool atom_like(const std::string& s) {
  if (s.empty()) return false;
  size_t start = s[0] == '-' ? 1 : 0;
  for (size_t i = start; i < s.size(); ++i)
    if (s[i] == '+' || s[i] == '-') return false;
  return true;
}

std::string poly_to_string(const BaseFieldCtx& ctx, const Poly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (size_t k = p.size(); k-- > 0;) {
    if (b_is_zero(p[k])) continue;
    std::string cs = b_to_string(ctx, p[k]);
    std::string term;
    if (k == 0) {
      term = cs;
    } else {
      std::string tpow = (k == 1) ? "t" : "t^" + std::to_string(k);
      if (cs == "1")
        term = tpow;
      else if (cs == "-1")
        term = "-" + tpow;
      else if (atom_like(cs))
        term = cs + "*" + tpow;
      else
        term = "(" + cs + ")*" + tpow;
    }
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += term;
    else
      out += "+" + term;
  }
  return out;
}

}  // namespace

FieldElem parse_field_elem(const std::string& expr, FieldSpecPtr spec) {
  return Parser(expr, std::move(spec)).run();
}

std::string to_string(const FieldElem& x) {
  if (x.is_zero()) return "0";
  const BaseFieldCtx& ctx = x.spec()->base;
  std::string num = poly_to_string(ctx, x.num());
  if (x.den().size() == 1 && x.den()[0] == b_one(ctx)) return num;
  return "(" + num + ")/(" + poly_to_string(ctx, x.den()) + ")";
}

}  // namespace vdm
