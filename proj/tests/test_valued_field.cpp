#include <doctest.h>

#include "support.hpp"
#include "vdm/presets.hpp"
#include "vdm/representability.hpp"
#include "vdm/valued_field.hpp"

using namespace vdm;
using namespace vdm_test;

TEST_CASE("parsing the worked entries") {
  auto eis = presets::eisenstein_2adic();
  FieldElem x = parse_field_elem("1+2*a", eis);
  CHECK(x == FieldElem::from_base(eis, b_make(eis->base, Rat(1), Rat(2))));

  auto viol = presets::violating_2adic();
  CHECK(parse_field_elem("(3-a)/1", viol) ==
        FieldElem::from_base(viol, b_make(viol->base, Rat(3), Rat(-1))));

  auto qt = presets::rational_t_adic();
  FieldElem t2 = parse_field_elem("t^2+1", qt);
  CHECK(t2 == FieldElem::t(qt) * FieldElem::t(qt) + FieldElem::one(qt));

  CHECK(parse_field_elem("i", presets::complex_t_adic()) ==
        FieldElem::alpha(presets::complex_t_adic()));
  CHECK(parse_field_elem("t^-2", qt) == FieldElem::one(qt) / FieldElem::t(qt).pow(2));
  CHECK(parse_field_elem("2^3", qt) == FieldElem::from_rat(qt, Rat(8)));
}

TEST_CASE("parse errors carry positions") {
  auto qt = presets::rational_t_adic();
  CHECK_THROWS_AS(parse_field_elem("1+", qt), FieldParseError);
  CHECK_THROWS_AS(parse_field_elem("a", qt), FieldParseError);      // no alpha in Q(t)
  CHECK_THROWS_AS(parse_field_elem("i", presets::eisenstein_2adic()), FieldParseError);
  CHECK_THROWS_AS(parse_field_elem("t t", qt), FieldParseError);    // trailing input
  CHECK_THROWS_AS(parse_field_elem("1/0", qt), FieldParseError);
  try {
    parse_field_elem("1+*2", qt);
    CHECK(false);
  } catch (const FieldParseError& e) {
    CHECK(e.position == 2);
  }
}

TEST_CASE("involutions") {
  auto eis = presets::eisenstein_2adic();
  CHECK(FieldElem::alpha(eis).conj() == parse_field_elem("-1-a", eis));

  auto twist = presets::rational_t_adic_twist();
  CHECK(FieldElem::t(twist).conj() == -FieldElem::t(twist));

  for (auto& [name, spec] : presets::supported_specs()) {
    Rng rng(101);
    for (int trial = 0; trial < 25; ++trial) {
      FieldElem x = random_field_elem(spec, rng);
      CHECK(x.conj().conj() == x);
    }
  }
}

TEST_CASE("valuation examples from the worked matrices") {
  auto ct = presets::complex_t_adic();
  FieldElem t = FieldElem::t(ct);
  CHECK(valuation(FieldElem::from_rat(ct, Rat(-3)) * t + t.pow(3)) == Val(Rat(1)));

  auto eis = presets::eisenstein_2adic();
  CHECK(valuation(parse_field_elem("2-4*a", eis)) == Val(Rat(1)));
  CHECK(valuation(parse_field_elem("-2-4*a", eis)) == Val(Rat(1)));

  auto viol = presets::violating_2adic();
  CHECK(valuation(parse_field_elem("-55", viol)) == Val(Rat(0)));
  CHECK(valuation(parse_field_elem("4", viol)) == Val(Rat(2)));
  CHECK(valuation(FieldElem::zero(viol)) == Val::infinity());
}

TEST_CASE("the split branch gives nu(alpha) = 1 and nu(conj alpha) = 0") {
  auto viol = presets::violating_2adic();
  CHECK(viol->alpha_valuation() == Val(Rat(1)));
  CHECK(valuation(FieldElem::alpha(viol).conj()) == Val(Rat(0)));
  CHECK(!viol->involution_preserves_valuation());
  for (auto& [name, spec] : presets::supported_specs())
    CHECK(spec->involution_preserves_valuation());

  // Deeper Hensel precision: alpha = 2 mod 4, and nu(alpha - 2) = 3.
  CHECK(valuation(FieldElem::alpha(viol) - FieldElem::from_rat(viol, Rat(2))) == Val(Rat(3)));
}

TEST_CASE("ultrametric and multiplicativity on random elements") {
  for (auto& [name, spec] : presets::supported_specs()) {
    CAPTURE(name);
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
      FieldElem x = random_field_elem(spec, rng, true);
      FieldElem y = random_field_elem(spec, rng, true);
      CHECK(valuation(x * y) == valuation(x) + valuation(y));
      Val vx = valuation(x), vy = valuation(y);
      Val vsum = valuation(x + y);
      CHECK(vsum >= std::min(vx, vy));
      if (!(vx == vy)) CHECK(vsum == std::min(vx, vy));
      CHECK(valuation(x.conj()) == vx);
      CHECK(valuation(FieldElem::one(spec) / x) == Val(Rat(-vx.finite_value())));
    }
  }
}

TEST_CASE("fixed plus anti-fixed parts add valuations minimally away from residue char 2") {
  // For conj(a) = a and conj(b) = -b: nu(a+b) = min(nu a, nu b).
  for (auto spec : {presets::gauss_3adic(), presets::complex_t_adic()}) {
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
      FieldElem x = random_field_elem(spec, rng);
      FieldElem y = random_field_elem(spec, rng);
      FieldElem a = x + x.conj();
      FieldElem b = y - y.conj();
      CHECK(valuation(a + b) == std::min(valuation(a), valuation(b)));
    }
  }
}

TEST_CASE("signs of ordered elements") {
  auto qt = presets::rational_t_adic();
  FieldElem t = FieldElem::t(qt);
  CHECK(field_sign(t.pow(5) + t.pow(2)) == 1);
  CHECK(field_sign(FieldElem::zero(qt)) == 0);
  CHECK(field_sign(t * t - FieldElem::from_rat(qt, Rat(2)) * t) == -1);
  CHECK(field_sign(FieldElem::one(qt) / (-t)) == -1);
  CHECK_THROWS(field_sign(FieldElem::one(presets::eisenstein_2adic())));
  CHECK_THROWS(field_sign(FieldElem::one(presets::gauss_3adic())));
}

TEST_CASE("residues") {
  auto ct = presets::complex_t_adic();
  // residue(-1 + i t) = -1.
  FieldElem x = -FieldElem::one(ct) + FieldElem::alpha(ct) * FieldElem::t(ct);
  CHECK(residue(x).v == b_make(ct->base, Rat(-1)));

  auto eis = presets::eisenstein_2adic();
  CHECK(b_is_zero(residue(FieldElem::from_rat(eis, Rat(2))).v));
  ResidueElem ra = residue(FieldElem::alpha(eis));
  CHECK(ra.ctx.characteristic == 2);
  CHECK(ra.v == b_make(ra.ctx, Rat(0), Rat(1)));
  CHECK(residue_conj(ra).v == b_make(ra.ctx, Rat(1), Rat(1)));  // induced a -> 1+a

  auto viol = presets::violating_2adic();
  CHECK(residue(FieldElem::alpha(viol) / FieldElem::from_rat(viol, Rat(2))).v ==
        b_make(residue_field(*viol), Rat(1)));

  CHECK_THROWS(residue(FieldElem::one(eis) / FieldElem::from_rat(eis, Rat(2))));
}

TEST_CASE("residue is a ring homomorphism commuting with the involution") {
  for (auto& [name, spec] : presets::supported_specs()) {
    CAPTURE(name);
    Rng rng(29);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 30; ++trial) {
      FieldElem x = random_field_elem(spec, rng);
      FieldElem y = random_field_elem(spec, rng);
      if (valuation(x) < Val(Rat(0)) || valuation(y) < Val(Rat(0))) continue;
      if (spec->vkind == ValuationKind::p_adic && (!x.is_constant() || !y.is_constant())) continue;
      ++done;
      const BaseFieldCtx rf = residue_field(*spec);
      CHECK(residue(x + y).v == b_add(rf, residue(x).v, residue(y).v));
      CHECK(residue(x * y).v == b_mul(rf, residue(x).v, residue(y).v));
      if (!spec->twist) CHECK(residue(x.conj()) == residue_conj(residue(x)));
    }
    CHECK(done >= 30);
  }
}

TEST_CASE("print-parse round trip on random elements") {
  for (auto& [name, spec] : presets::supported_specs()) {
    CAPTURE(name);
    Rng rng(51);
    for (int trial = 0; trial < 50; ++trial) {
      FieldElem x = random_field_elem(spec, rng);
      if (rng.chance(50)) x = x + random_field_elem(spec, rng);
      if (rng.chance(50)) x = x / random_field_elem(spec, rng, true);
      CAPTURE(to_string(x));
      CHECK(parse_field_elem(to_string(x), spec) == x);
    }
  }
}

TEST_CASE("field spec validation") {
  // Reducible minimal polynomial over Q.
  CHECK_THROWS(BaseFieldCtx::quadratic_rationals(Rat(0), Rat(-1), Rat(0), Rat(-1)));
  // Declared conjugate is not a root.
  CHECK_THROWS(BaseFieldCtx::quadratic_rationals(Rat(0), Rat(1), Rat(1), Rat(-1)));
  // x^2+1 splits mod 5, so the inert 5-adic spec must be rejected.
  {
    FieldSpec s;
    s.base = BaseFieldCtx::quadratic_rationals(Rat(0), Rat(1), Rat(0), Rat(-1));
    s.vkind = ValuationKind::p_adic;
    s.prime = 5;
    s.mode = PadicMode::inert;
    CHECK_THROWS(make_field_spec(std::move(s)));
  }
  // ... and x^2+x+1 is irreducible mod 2, so split mode must be rejected.
  {
    FieldSpec s;
    s.base = BaseFieldCtx::quadratic_rationals(Rat(1), Rat(1), Rat(-1), Rat(-1));
    s.vkind = ValuationKind::p_adic;
    s.prime = 2;
    s.mode = PadicMode::split;
    CHECK_THROWS(make_field_spec(std::move(s)));
  }
  // p-adic needs a characteristic-zero base.
  {
    FieldSpec s;
    s.base = BaseFieldCtx::prime_field(2);
    s.vkind = ValuationKind::p_adic;
    s.prime = 2;
    CHECK_THROWS(make_field_spec(std::move(s)));
  }
}

TEST_CASE("characteristic-2 quadratic arithmetic") {
  auto gf4 = presets::gf4_trivial();
  const BaseFieldCtx& ctx = gf4->base;
  BaseElem a = b_make(ctx, Rat(0), Rat(1));
  CHECK(b_mul(ctx, a, a) == b_make(ctx, Rat(1), Rat(1)));  // a^2 = a + 1
  CHECK(b_conj(ctx, a) == b_make(ctx, Rat(1), Rat(1)));
  CHECK(b_mul(ctx, a, b_inv(ctx, a)) == b_one(ctx));
  CHECK(valuation(FieldElem::alpha(gf4)) == Val(Rat(0)));
  // Frobenius fixed field is F_2: x * conj(x) and x + conj(x) have no alpha part.
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    FieldElem x = random_field_elem(gf4, rng);
    CHECK(sgn((x * x.conj()).constant_value().al) == 0);
    CHECK(sgn((x + x.conj()).constant_value().al) == 0);
  }
}

TEST_CASE("alpha powers satisfy the minimal polynomial") {
  for (auto spec : {presets::eisenstein_2adic(), presets::complex_t_adic(),
                    presets::violating_2adic(), presets::gf4_t_adic()}) {
    FieldElem a = FieldElem::alpha(spec);
    FieldElem c = FieldElem::from_rat(spec, spec->base.min_c);
    FieldElem d = FieldElem::from_rat(spec, spec->base.min_d);
    CHECK((a * a + c * a + d).is_zero());
  }
}
