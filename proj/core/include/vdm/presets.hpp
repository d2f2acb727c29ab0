#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vdm/valued_field.hpp"

namespace vdm::presets {

/// The concrete valued fields exercised throughout the tests and tools.

inline FieldSpecPtr rational_t_adic() {
  static const FieldSpecPtr s = [] {
    FieldSpec spec;
    spec.base = BaseFieldCtx::rationals();
    spec.vkind = ValuationKind::t_adic;
    return make_field_spec(std::move(spec));
  }();
  return s;
}

/// Q(t) with the valuation-preserving involution t -> -t.
inline FieldSpecPtr rational_t_adic_twist() {
  static const FieldSpecPtr s = [] {
    FieldSpec spec;
    spec.base = BaseFieldCtx::rationals();
    spec.vkind = ValuationKind::t_adic;
    spec.twist = true;
    return make_field_spec(std::move(spec));
  }();
  return s;
}

/// Q[i](t) with complex conjugation fixing t; a computable core of the
/// field of complex Puiseux series.
inline FieldSpecPtr complex_t_adic() {
  static const FieldSpecPtr s = [] {
    FieldSpec spec;
    spec.base = BaseFieldCtx::quadratic_rationals(Rat(0), Rat(1), Rat(0), Rat(-1));
    spec.vkind = ValuationKind::t_adic;
    return make_field_spec(std::move(spec));
  }();
  return s;
}

/// Q[a]/(a^2+a+1) with the 2-adic valuation (inert) and conj(a) = -1-a.
inline FieldSpecPtr eisenstein_2adic() {
  static const FieldSpecPtr s = [] {
    FieldSpec spec;
    spec.base = BaseFieldCtx::quadratic_rationals(Rat(1), Rat(1), Rat(-1), Rat(-1));
    spec.vkind = ValuationKind::p_adic;
    spec.prime = 2;
    spec.mode = PadicMode::inert;
    return make_field_spec(std::move(spec));
  }();
  return s;
}

/// Q[i] with the 3-adic valuation (inert); residue field F_9.
inline FieldSpecPtr gauss_3adic() {
  static const FieldSpecPtr s = [] {
    FieldSpec spec;
    spec.base = BaseFieldCtx::quadratic_rationals(Rat(0), Rat(1), Rat(0), Rat(-1));
    spec.vkind = ValuationKind::p_adic;
    spec.prime = 3;
    spec.mode = PadicMode::inert;
    return make_field_spec(std::move(spec));
  }();
  return s;
}

/// Q[a]/(a^2+a+2) with a 2-adic split valuation: nu(a) = 1 but
/// nu(conj(a)) = 0, so the involution does not preserve the valuation.
inline FieldSpecPtr violating_2adic() {
  static const FieldSpecPtr s = [] {
    FieldSpec spec;
    spec.base = BaseFieldCtx::quadratic_rationals(Rat(1), Rat(2), Rat(-1), Rat(-1));
    spec.vkind = ValuationKind::p_adic;
    spec.prime = 2;
    spec.mode = PadicMode::split;
    return make_field_spec(std::move(spec));
  }();
  return s;
}

/// F_4 = F_2[a]/(a^2+a+1) with the Frobenius involution a -> 1+a and the
/// trivial valuation.
inline FieldSpecPtr gf4_trivial() {
  static const FieldSpecPtr s = [] {
    FieldSpec spec;
    spec.base = BaseFieldCtx::quadratic_prime(2, Rat(1), Rat(1), Rat(1), Rat(1));
    spec.vkind = ValuationKind::trivial;
    return make_field_spec(std::move(spec));
  }();
  return s;
}

/// F_4(t) with the t-adic valuation.
inline FieldSpecPtr gf4_t_adic() {
  static const FieldSpecPtr s = [] {
    FieldSpec spec;
    spec.base = BaseFieldCtx::quadratic_prime(2, Rat(1), Rat(1), Rat(1), Rat(1));
    spec.vkind = ValuationKind::t_adic;
    return make_field_spec(std::move(spec));
  }();
  return s;
}

/// Every supported spec whose involution preserves the valuation.
inline std::vector<std::pair<std::string, FieldSpecPtr>> supported_specs() {
  return {
      {"rational-t-adic", rational_t_adic()},
      {"rational-t-adic-twist", rational_t_adic_twist()},
      {"complex-t-adic", complex_t_adic()},
      {"eisenstein-2adic", eisenstein_2adic()},
      {"gauss-3adic", gauss_3adic()},
      {"gf4-trivial", gf4_trivial()},
      {"gf4-t-adic", gf4_t_adic()},
  };
}

}  // namespace vdm::presets
