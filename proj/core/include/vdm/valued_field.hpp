#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "vdm/rational.hpp"

namespace vdm {

/// The coefficient field: the rationals or a prime field, optionally
/// extended by a root alpha of x^2 + c x + d with a declared involution
/// conj(alpha) = e + f alpha (possibly the identity).
struct BaseFieldCtx {
  long characteristic = 0;  // 0 for Q, else a prime
  bool quadratic = false;
  Rat min_c, min_d;   // alpha^2 + c*alpha + d = 0
  Rat conj_e = 0, conj_f = 1;

  /// Checks irreducibility of the minimal polynomial over the prime field
  /// and that the declared involution is a field automorphism of order <= 2.
  void validate() const;
  bool conj_is_identity() const { return !quadratic || (sgn(conj_e) == 0 && conj_f == 1); }

  static BaseFieldCtx rationals();
  static BaseFieldCtx quadratic_rationals(Rat c, Rat d, Rat e, Rat f);
  static BaseFieldCtx prime_field(long p);
  static BaseFieldCtx quadratic_prime(long p, Rat c, Rat d, Rat e, Rat f);

  friend bool operator==(const BaseFieldCtx&, const BaseFieldCtx&) = default;
};

/// re + al * alpha, with al = 0 whenever the context has no alpha.
/// In characteristic p both parts are integers normalized to [0, p).
struct BaseElem {
  Rat re, al;
  friend bool operator==(const BaseElem&, const BaseElem&) = default;
};

BaseElem b_make(const BaseFieldCtx& ctx, Rat re, Rat al = Rat(0));
BaseElem b_zero(const BaseFieldCtx& ctx);
BaseElem b_one(const BaseFieldCtx& ctx);
bool b_is_zero(const BaseElem& x);
BaseElem b_add(const BaseFieldCtx& ctx, const BaseElem& x, const BaseElem& y);
BaseElem b_sub(const BaseFieldCtx& ctx, const BaseElem& x, const BaseElem& y);
BaseElem b_neg(const BaseFieldCtx& ctx, const BaseElem& x);
BaseElem b_mul(const BaseFieldCtx& ctx, const BaseElem& x, const BaseElem& y);
BaseElem b_inv(const BaseFieldCtx& ctx, const BaseElem& x);
BaseElem b_div(const BaseFieldCtx& ctx, const BaseElem& x, const BaseElem& y);
BaseElem b_conj(const BaseFieldCtx& ctx, const BaseElem& x);
std::string b_to_string(const BaseFieldCtx& ctx, const BaseElem& x);

/// Dense polynomial in t over the base field; no trailing zero coefficients.
using Poly = std::vector<BaseElem>;

void poly_trim(Poly& p);
Poly poly_add(const BaseFieldCtx& ctx, const Poly& a, const Poly& b);
Poly poly_sub(const BaseFieldCtx& ctx, const Poly& a, const Poly& b);
Poly poly_neg(const BaseFieldCtx& ctx, Poly a);
Poly poly_mul(const BaseFieldCtx& ctx, const Poly& a, const Poly& b);
Poly poly_scale(const BaseFieldCtx& ctx, Poly a, const BaseElem& c);
/// Quotient and remainder; the divisor must be nonzero.
std::pair<Poly, Poly> poly_divmod(const BaseFieldCtx& ctx, Poly a, const Poly& b);
/// Monic gcd (empty for gcd(0,0)).
Poly poly_gcd(const BaseFieldCtx& ctx, Poly a, Poly b);

enum class ValuationKind { trivial, t_adic, p_adic };
enum class PadicMode { inert, split };

/// A computable valued field with involution: rational functions in t over
/// the base field, one of three valuations, and an involution that acts on
/// coefficients and optionally sends t to -t.
struct FieldSpec {
  BaseFieldCtx base;
  bool twist = false;  // involution also maps t -> -t
  ValuationKind vkind = ValuationKind::trivial;
  long prime = 0;          // p-adic only
  PadicMode mode = PadicMode::inert;
  int split_branch = -1;   // -1: pick the higher-valuation root; else 0/1 by residue

  void validate() const;

  /// nu(conj a) == nu(a) for every element? False exactly for split specs
  /// whose two root valuations differ under a nontrivial involution.
  bool involution_preserves_valuation() const;

  /// Valuation of alpha itself (p-adic split data); exact.
  Val alpha_valuation() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.base == b.base && a.twist == b.twist && a.vkind == b.vkind && a.prime == b.prime &&
           a.mode == b.mode && a.split_branch == b.split_branch;
  }

  // Hensel root cache (split mode), grown monotonically under a lock.
  // Copies of a spec share the cache; the stored values are idempotent.
  struct HenselCache {
    std::mutex mu;
    long precision = 0;  // exponent k with the root known mod p^k
    mpz_class pk;
    mpz_class root;
  };
  mutable std::shared_ptr<HenselCache> hensel = std::make_shared<HenselCache>();
  long hensel_cap = 1 << 14;

  /// Root of the minimal polynomial in Z_p modulo at least p^k, on the
  /// selected branch.
  mpz_class hensel_root(long k) const;
};

using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

FieldSpecPtr make_field_spec(FieldSpec spec);

/// An element of the valued field: a canonical fraction of polynomials in t
/// (denominator monic, gcd-reduced). Immutable after construction.
class FieldElem {
 public:
  FieldElem() = default;

  static FieldElem zero(FieldSpecPtr spec);
  static FieldElem one(FieldSpecPtr spec);
  static FieldElem from_rat(FieldSpecPtr spec, const Rat& r);
  static FieldElem from_base(FieldSpecPtr spec, BaseElem b);
  static FieldElem t(FieldSpecPtr spec);
  static FieldElem alpha(FieldSpecPtr spec);
  static FieldElem fraction(FieldSpecPtr spec, Poly num, Poly den);

  const FieldSpecPtr& spec() const { return spec_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.empty(); }
  /// Constant in t (degree-zero numerator and denominator)?
  bool is_constant() const;
  BaseElem constant_value() const;

  FieldElem operator-() const;
  friend FieldElem operator+(const FieldElem& x, const FieldElem& y);
  friend FieldElem operator-(const FieldElem& x, const FieldElem& y);
  friend FieldElem operator*(const FieldElem& x, const FieldElem& y);
  friend FieldElem operator/(const FieldElem& x, const FieldElem& y);
  FieldElem conj() const;
  FieldElem pow(long e) const;

  friend bool operator==(const FieldElem& x, const FieldElem& y);
  friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }

 private:
  FieldElem(FieldSpecPtr spec, Poly num, Poly den);
  void canonicalize();

  FieldSpecPtr spec_;
  Poly num_;          // zero element: empty num, den = {1}
  Poly den_{};
};

/// nu(x); infinity exactly for zero.
Val valuation(const FieldElem& x);

/// Sign of the lowest-order coefficient (ordered rational base with the
/// t-adic or trivial valuation); the sign of the element as a germ at
/// t -> 0+. Throws on unordered specs.
int field_sign(const FieldElem& x);

/// An element of the residue field, carried with its field context.
struct ResidueElem {
  BaseFieldCtx ctx;
  BaseElem v;
  friend bool operator==(const ResidueElem&, const ResidueElem&) = default;
};

/// The residue field of the spec as a base-field context: the base field for
/// the t-adic and trivial valuations, F_p[alpha] for inert p-adic, F_p for
/// split p-adic.
BaseFieldCtx residue_field(const FieldSpec& spec);

/// Image of x in the residue field; requires nu(x) >= 0. For p-adic specs
/// only elements constant in t are supported.
ResidueElem residue(const FieldElem& x);

/// Involution induced on the residue field (valid when the spec's involution
/// preserves the valuation).
ResidueElem residue_conj(const ResidueElem& x);

struct FieldParseError : std::runtime_error {
  size_t position;
  FieldParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

/// Grammar: integers, 'a' (alpha), 'i' (alpha when alpha^2 = -1), 't',
/// + - * / ^ with integer exponents, parentheses.
FieldElem parse_field_elem(const std::string& expr, FieldSpecPtr spec);

/// Canonical printer; parse_field_elem(to_string(x)) == x.
std::string to_string(const FieldElem& x);

}  // namespace vdm
