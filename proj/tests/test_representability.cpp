#include <doctest.h>

#include <bit>

#include "support.hpp"
#include "vdm/representability.hpp"

using namespace vdm;
using namespace vdm_test;

TEST_CASE("principal minor valuations of the worked matrices") {
  SubsetFunction p1 = principal_minor_valuations(complex_example_matrix());
  for (std::uint32_t s = 0; s < 8; ++s)
    CHECK(p1.at(s) == Val(Rat(std::popcount(s) % 2)));
  CHECK(is_valuated_delta_matroid(p1).valuated);

  SubsetFunction p2 = principal_minor_valuations(eisenstein_hermitian_matrix());
  const Val expect2[4] = {Val(Rat(0)), Val(Rat(0)), Val(Rat(1)), Val(Rat(3))};
  for (std::uint32_t s = 0; s < 8; ++s) CHECK(p2.at(s) == expect2[std::popcount(s)]);
  CHECK(is_valuated_delta_matroid(p2).valuated);

  SubsetFunction p3 = principal_minor_valuations(eisenstein_skew_matrix());
  const Val expect3[4] = {Val(Rat(0)), Val::infinity(), Val(Rat(0)), Val(Rat(1))};
  for (std::uint32_t s = 0; s < 8; ++s) CHECK(p3.at(s) == expect3[std::popcount(s)]);
  CHECK(is_valuated_delta_matroid(p3).valuated);

  SubsetFunction pv = principal_minor_valuations(violating_matrix());
  const Val expectv[4] = {Val(Rat(0)), Val(Rat(2)), Val(Rat(1)), Val(Rat(0))};
  for (std::uint32_t s = 0; s < 8; ++s) CHECK(pv.at(s) == expectv[std::popcount(s)]);
  CheckerResult res = is_valuated_delta_matroid(pv);
  CHECK(!res.valuated);
  auto* edge = std::get_if<LongEdgeCert>(&*res.certificate);
  REQUIRE(edge != nullptr);
  CHECK(edge->s.bits == 0b000);
  CHECK(edge->t.bits == 0b111);
}

TEST_CASE("empty principal minor convention") {
  FieldMatrix z(presets::rational_t_adic(), 2, MatrixTag::general);
  CHECK(principal_minor_valuations(z).at(0) == Val(Rat(0)));
}

TEST_CASE("det_poly specializes to principal minors on the diagonal form") {
  Rng rng(11);
  for (auto tag : {MatrixTag::hermitian, MatrixTag::skew_hermitian}) {
    FieldMatrix a = random_structured_matrix(presets::complex_t_adic(), 3, tag, rng);
    MultiAffinePoly f = det_poly(a, standard_vectors(a.spec(), 3));
    for (std::uint32_t s = 0; s < 8; ++s)
      CHECK(f.at(Subset::mask_all(3) & ~s) == a.principal_minor(s));
  }
}

TEST_CASE("det_poly coefficients evaluate to the determinant") {
  Rng rng(23);
  auto spec = presets::eisenstein_2adic();
  const int r = 2, n = 3;
  FieldMatrix a = random_structured_matrix(spec, r, MatrixTag::hermitian, rng);
  std::vector<std::vector<FieldElem>> vectors;
  for (int k = 0; k < n; ++k) vectors.push_back(random_vector(spec, r, rng));
  MultiAffinePoly f = det_poly(a, vectors);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<FieldElem> x;
    for (int k = 0; k < n; ++k) x.push_back(FieldElem::from_rat(spec, Rat(rng.int_in(-3, 3))));
    // Direct evaluation: det(sum x_k v_k conj(v_k)^T + A).
    std::vector<std::vector<FieldElem>> m(r, std::vector<FieldElem>(r, FieldElem::zero(spec)));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        m[i][j] = a.at(i, j);
        for (int k = 0; k < n; ++k) m[i][j] = m[i][j] + x[k] * vectors[k][i] * vectors[k][j].conj();
      }
    CHECK(grid_det(spec, m) == f.evaluate(x));
  }
}

TEST_CASE("first example: f, Delta_12, factorization, residue factors") {
  FieldMatrix a = complex_example_matrix();
  const FieldSpecPtr spec = a.spec();
  MultiAffinePoly f = det_poly(a, standard_vectors(spec, 3));
  const FieldElem t = FieldElem::t(spec);
  CHECK(f.at(0b111) == FieldElem::one(spec));
  CHECK(f.at(0b011) == t);
  CHECK(f.at(0b001) == t * t - FieldElem::one(spec));
  CHECK(f.at(0b000) == t.pow(3) - FieldElem::from_rat(spec, Rat(3)) * t);

  SmallPoly delta = rayleigh(f, 1, 2);
  SmallPoly expected(spec, 3);
  expected.add_term(SmallPoly::key_of_mask(0b100) * 2, FieldElem::one(spec));  // x3^2
  expected.add_term(SmallPoly::key_of_mask(0b100), FieldElem::from_rat(spec, Rat(2)) * t);
  expected.add_term(0, FieldElem::one(spec) + t * t);
  CHECK(delta == expected);

  FactorizationReport rep = verify_factorization(a, standard_vectors(spec, 3), 1, 2);
  CHECK(rep.pass);
  CHECK(rep.sigma == 1);
  CHECK(!rep.dependent_route);

  // Residue of Delta_12 modulo t factors as (-1 + i x3)(-1 - i x3).
  ResidueSmallPoly dres = residue_small(delta);
  const BaseFieldCtx rf = residue_field(*spec);
  ResiduePoly g1{rf, 3, std::vector<BaseElem>(8, b_zero(rf))};
  ResiduePoly g2 = g1;
  g1.coeffs[0b000] = b_make(rf, Rat(-1));
  g1.coeffs[0b100] = b_make(rf, Rat(0), Rat(1));
  g2.coeffs[0b000] = b_make(rf, Rat(-1));
  g2.coeffs[0b100] = b_make(rf, Rat(0), Rat(-1));
  CHECK(multiply_affine_residue(g1, g2) == dres);
}

TEST_CASE("eisenstein example: recomputed Delta_12 and residue") {
  FieldMatrix a = eisenstein_hermitian_matrix();
  MultiAffinePoly f = det_poly(a, standard_vectors(a.spec(), 3));
  SmallPoly delta = rayleigh(f, 1, 2);
  // Delta_12(f) = 3 x3^2 + 6 x3 + 12 = 3(x3^2 + 2 x3 + 4).
  SmallPoly expected(a.spec(), 3);
  expected.add_term(SmallPoly::key_of_mask(0b100) * 2, FieldElem::from_rat(a.spec(), Rat(3)));
  expected.add_term(SmallPoly::key_of_mask(0b100), FieldElem::from_rat(a.spec(), Rat(6)));
  expected.add_term(0, FieldElem::from_rat(a.spec(), Rat(12)));
  CHECK(delta == expected);

  // Its image mod 2 is x3^2.
  ResidueSmallPoly dres = residue_small(delta);
  REQUIRE(dres.terms.size() == 1);
  CHECK(dres.terms.begin()->first == SmallPoly::key_of_mask(0b100) * 2);
  CHECK(dres.terms.begin()->second == b_one(dres.ctx));

  CHECK(verify_factorization(a, standard_vectors(a.spec(), 3), 1, 2).pass);
}

TEST_CASE("rayleigh of the product of two variables vanishes") {
  auto spec = presets::rational_t_adic();
  MultiAffinePoly f(spec, 2);
  f.at(0b11) = FieldElem::one(spec);
  CHECK(rayleigh(f, 1, 2).is_zero());
  CHECK_THROWS(rayleigh(f, 1, 1));
}

TEST_CASE("factorization on random structured matrices") {
  Rng rng(37);
  // Symmetric over Q(t): sigma = +1 with the trivial involution.
  for (int trial = 0; trial < 5; ++trial) {
    FieldMatrix a = random_structured_matrix(presets::rational_t_adic(), 3, MatrixTag::symmetric, rng);
    CHECK(verify_factorization(a, standard_vectors(a.spec(), 3), 1, 3).pass);
  }
  // Skew-Hermitian over the twisted field: sigma = -1.
  for (int trial = 0; trial < 3; ++trial) {
    FieldMatrix a =
        random_structured_matrix(presets::rational_t_adic_twist(), 4, MatrixTag::skew_hermitian, rng);
    CHECK(verify_factorization(a, standard_vectors(a.spec(), 4), 2, 4).pass);
  }
  // The r != n shape with random vectors, both sigmas.
  auto spec = presets::complex_t_adic();
  for (auto tag : {MatrixTag::hermitian, MatrixTag::skew_hermitian}) {
    FieldMatrix a = random_structured_matrix(spec, 2, tag, rng);
    std::vector<std::vector<FieldElem>> vectors;
    for (int k = 0; k < 3; ++k) vectors.push_back(random_vector(spec, 2, rng));
    FactorizationReport rep = verify_factorization(a, vectors, 1, 2);
    CHECK(rep.pass);
  }
  // Linearly dependent columns: v_1 = lambda v_2 goes through the
  // scaled-derivative route.
  for (int trial = 0; trial < 5; ++trial) {
    FieldMatrix a = random_structured_matrix(spec, 3, MatrixTag::hermitian, rng);
    std::vector<std::vector<FieldElem>> vectors = standard_vectors(spec, 3);
    FieldElem lambda = random_field_elem(spec, rng, true);
    for (int k = 0; k < 3; ++k) vectors[0][k] = lambda * vectors[1][k];
    FactorizationReport rep = verify_factorization(a, vectors, 1, 2);
    CHECK(rep.pass);
    CHECK(rep.dependent_route);
  }
  // Structural tag mismatch is rejected.
  FieldMatrix g(spec, 2, MatrixTag::general);
  CHECK_THROWS(verify_factorization(g, standard_vectors(spec, 2), 1, 2));
}

TEST_CASE("variable scaling: the two chain-rule identities") {
  Rng rng(41);
  auto spec = presets::eisenstein_2adic();
  for (int trial = 0; trial < 10; ++trial) {
    FieldMatrix a = random_structured_matrix(spec, 3, MatrixTag::hermitian, rng);
    MultiAffinePoly f = det_poly(a, standard_vectors(spec, 3));
    std::vector<FieldElem> lambda;
    for (int k = 0; k < 3; ++k) lambda.push_back(random_field_elem(spec, rng, true));

    MultiAffinePoly lf = scale_vars(f, lambda);
    SmallPoly lhs = rayleigh(lf, 1, 2);
    SmallPoly rhs = scale_vars(rayleigh(f, 1, 2), lambda);
    // Multiply by lambda_1 lambda_2.
    SmallPoly scaled(spec, 3);
    for (const auto& [key, c] : rhs.terms()) scaled.add_term(key, c * lambda[0] * lambda[1]);
    CHECK(lhs == scaled);

    // lambda * (lambda' * f) = (lambda lambda') * f, and 1 * f = f.
    std::vector<FieldElem> mu, prod;
    for (int k = 0; k < 3; ++k) {
      mu.push_back(random_field_elem(spec, rng, true));
      prod.push_back(lambda[k] * mu[k]);
    }
    CHECK(scale_vars(scale_vars(f, mu), lambda) == scale_vars(f, prod));
    CHECK(scale_vars(f, std::vector<FieldElem>(3, FieldElem::one(spec))) == f);
  }
  CHECK_THROWS(scale_vars(MultiAffinePoly(spec, 2),
                          std::vector<FieldElem>{FieldElem::one(spec), FieldElem::zero(spec)}));
}

TEST_CASE("residue reduction commutes with the Rayleigh difference") {
  Rng rng(43);
  for (auto spec : {presets::eisenstein_2adic(), presets::complex_t_adic()}) {
    int done = 0;
    for (int trial = 0; trial < 60 && done < 10; ++trial) {
      FieldMatrix a = random_structured_matrix(spec, 3, MatrixTag::hermitian, rng);
      MultiAffinePoly f = det_poly(a, standard_vectors(spec, 3));
      bool integral = true;
      for (std::uint32_t t = 0; t < 8; ++t)
        if (valuation(f.at(t)) < Val(Rat(0))) integral = false;
      if (!integral) continue;
      ++done;
      CHECK(residue_small(rayleigh(f, 1, 2)) == rayleigh_residue(residue_poly(f), 1, 2));
    }
    CHECK(done == 10);
  }
  // All-positive valuations reduce to the zero polynomial.
  auto spec = presets::eisenstein_2adic();
  MultiAffinePoly f(spec, 2);
  f.at(0b01) = FieldElem::from_rat(spec, Rat(2));
  f.at(0b10) = FieldElem::from_rat(spec, Rat(4));
  ResiduePoly rp = residue_poly(f);
  for (const BaseElem& c : rp.coeffs) CHECK(b_is_zero(c));
  f.at(0b11) = FieldElem::one(spec) / FieldElem::from_rat(spec, Rat(2));
  CHECK_THROWS(residue_poly(f));
}

TEST_CASE("skew plus rank one") {
  Rng rng(47);
  auto spec = presets::rational_t_adic();

  // alpha = 0 reduces to a pure skew-symmetric matrix.
  FieldMatrix b0 = random_structured_matrix(spec, 4, MatrixTag::skew_symmetric, rng);
  auto rep0 = skew_plus_rank_one(b0, FieldElem::zero(spec), random_vector(spec, 4, rng));
  CHECK(rep0.verdict.valuated);
  CHECK(rep0.odd_minors_vanish);
  CHECK(rep0.even_quad_vanishes);
  for (std::uint32_t s = 0; s < 16; ++s)
    if (std::popcount(s) % 2 == 1) CHECK(rep0.p.at(s) == Val::infinity());

  for (int trial = 0; trial < 8; ++trial) {
    FieldMatrix b = random_structured_matrix(spec, 4, MatrixTag::skew_symmetric, rng);
    auto rep = skew_plus_rank_one(b, random_field_elem(spec, rng, true),
                                  random_vector(spec, 4, rng));
    CHECK(rep.verdict.valuated);
    CHECK(rep.odd_minors_vanish);
    CHECK(rep.even_quad_vanishes);
  }
  CHECK_THROWS(skew_plus_rank_one(
      random_structured_matrix(spec, 3, MatrixTag::symmetric, rng), FieldElem::one(spec),
      random_vector(spec, 3, rng)));
}

TEST_CASE("isotropic representations by form type") {
  Rng rng(53);
  auto qt = presets::rational_t_adic();

  FieldMatrix sym = random_structured_matrix(qt, 3, MatrixTag::symmetric, rng);
  IsotropicReport r1 = isotropic_rep(FormKind::symplectic, sym, std::nullopt, std::nullopt);
  CHECK(r1.minors_agree);
  CHECK(r1.verdict.valuated);
  SubsetFunction direct = principal_minor_valuations(sym);
  for (std::uint32_t s = 0; s < 8; ++s) CHECK(r1.p.at(s) == direct.at(s));

  // Quadratic even with A = 0: only the empty minor survives.
  FieldMatrix zero(qt, 3, MatrixTag::skew_symmetric);
  IsotropicReport r2 = isotropic_rep(FormKind::quadratic_even, zero, std::nullopt, std::nullopt);
  CHECK(r2.verdict.valuated);
  CHECK(r2.p.at(0) == Val(Rat(0)));
  for (std::uint32_t s = 1; s < 8; ++s)
    if (std::popcount(s) % 2 == 1) CHECK(r2.p.at(s) == Val::infinity());

  FieldMatrix b = random_structured_matrix(qt, 4, MatrixTag::skew_symmetric, rng);
  IsotropicReport r3 = isotropic_rep(FormKind::quadratic_odd, b,
                                     random_field_elem(qt, rng, true), random_vector(qt, 4, rng));
  CHECK(r3.minors_agree);
  CHECK(r3.verdict.valuated);

  auto eis = presets::eisenstein_2adic();
  FieldMatrix h = random_structured_matrix(eis, 3, MatrixTag::skew_hermitian, rng);
  IsotropicReport r4 = isotropic_rep(FormKind::hermitian_even, h, std::nullopt, std::nullopt);
  CHECK(r4.minors_agree);
  CHECK(r4.verdict.valuated);

  // Structural conditions are enforced.
  CHECK_THROWS(isotropic_rep(FormKind::symplectic, zero, std::nullopt, std::nullopt));
  CHECK_THROWS(isotropic_rep(FormKind::hermitian_even,
                             random_structured_matrix(qt, 3, MatrixTag::skew_symmetric, rng),
                             std::nullopt, std::nullopt));
}

TEST_CASE("realize3 on the worked instances") {
  SubsetFunction p = by_cardinality(3, {Val(Rat(0)), Val(Rat(1)), Val(Rat(0)), Val(Rat(1))});
  Realize3Report rep = realize3(p);
  REQUIRE(rep.ok);
  auto spec = rep.assignment[0].spec();
  const FieldElem t = FieldElem::t(spec);
  CHECK(rep.assignment[0] == FieldElem::one(spec));
  CHECK(rep.assignment[0b001] == -t);
  CHECK(rep.assignment[0b011] == -FieldElem::one(spec));
  CHECK(rep.assignment[0b111] == t);

  Realize3Report flat = realize3(SubsetFunction::constant(3, Val(Rat(0))));
  REQUIRE(flat.ok);
  CHECK(flat.assignment[0b111] == FieldElem::one(spec));
  CHECK(flat.assignment[0b010] == -FieldElem::one(spec));

  // Rational values are scaled to integers first.
  SubsetFunction frac(3);
  for (std::uint32_t s = 0; s < 8; ++s) frac.set(s, Val(rat_frac(std::popcount(s), 2)));
  Realize3Report fr = realize3(frac);
  CHECK(fr.ok);
  CHECK(fr.scale == Rat(2));

  // Rejections carry the reason.
  Realize3Report bad = realize3(counterexample_p());
  CHECK(!bad.ok);
  CHECK(bad.failure.find("123") != std::string::npos);
  SubsetFunction shifted = SubsetFunction::constant(3, Val(Rat(1)));
  CHECK(!realize3(shifted).ok);
}

TEST_CASE("conjecture search determinism and covered cases") {
  ConjectureSearchConfig config;
  config.shape = ConjectureShape::skew_hermitian_plus_rank_one;
  config.spec = presets::gauss_3adic();
  config.n = 3;
  config.trials = 40;
  config.seed = 5;
  ConjectureSearchReport a = conjecture_search(config);
  ConjectureSearchReport b = conjecture_search(config);
  CHECK(a.trials_run == 40);
  CHECK(a.counterexamples.size() == b.counterexamples.size());
  CHECK(a.counterexamples.empty());  // residue characteristic 3: proved case

  config.jobs = 4;
  ConjectureSearchReport c = conjecture_search(config);
  CHECK(c.counterexamples.size() == a.counterexamples.size());

  ConjectureSearchConfig char2;
  char2.shape = ConjectureShape::char2_omega_rank_one;
  char2.spec = presets::gf4_trivial();
  char2.n = 3;
  char2.trials = 40;
  char2.seed = 9;
  ConjectureSearchReport d = conjecture_search(char2);
  CHECK(d.counterexamples.empty());  // trivial valuation: proved case

  char2.spec = presets::gauss_3adic();
  CHECK_THROWS(conjecture_search(char2));  // not a characteristic-2 field
}
