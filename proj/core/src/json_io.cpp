#include "vdm/json_io.hpp"

namespace vdm::io {

json rat_to_json(const Rat& x) { return rat_to_string(x); }

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  throw std::invalid_argument("expected a rational as an integer or \"a/b\" string");
}

json val_to_json(const Val& v) { return v.to_string(); }

Val val_from_json(const json& j) {
  if (j.is_number_integer()) return Val(Rat(j.get<long>()));
  if (j.is_string()) return Val::from_string(j.get<std::string>());
  throw std::invalid_argument("expected a value as an integer, \"a/b\", or \"inf\"");
}

json subset_function_to_json(const SubsetFunction& p) {
  json values = json::object();
  for (std::uint32_t s = 0; s < p.table_size(); ++s)
    values[Subset(s, p.n()).to_string()] = val_to_json(p.at(s));
  return json{{"n", p.n()}, {"values", values}};
}

SubsetFunction subset_function_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  SubsetFunction p(n);  // missing keys stay infinite
  for (const auto& [key, value] : j.at("values").items())
    p.set(Subset::from_string(key, n).bits, val_from_json(value));
  if (!p.has_finite_value())
    throw std::invalid_argument("SubsetFunction: at least one finite value required");
  return p;
}

json basis_family_to_json(const BasisFamily& f) {
  json bases = json::array();
  for (std::uint32_t b : f.bases) bases.push_back(Subset(b, f.n).to_string());
  return json{{"n", f.n}, {"bases", bases}};
}

BasisFamily basis_family_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  std::vector<std::uint32_t> bases;
  for (const auto& b : j.at("bases")) bases.push_back(Subset::from_string(b.get<std::string>(), n).bits);
  return BasisFamily(n, std::move(bases));
}

json field_spec_to_json(const FieldSpec& spec) {
  json base;
  if (spec.base.quadratic) {
    base = json{{"kind", "quadratic"},
                {"c", rat_to_json(spec.base.min_c)},
                {"d", rat_to_json(spec.base.min_d)},
                {"conj", json::array({rat_to_json(spec.base.conj_e), rat_to_json(spec.base.conj_f)})}};
  } else {
    base = json{{"kind", "rational"}};
  }
  if (spec.base.characteristic != 0) base["char"] = spec.base.characteristic;

  json val;
  switch (spec.vkind) {
    case ValuationKind::trivial: val = json{{"kind", "trivial"}}; break;
    case ValuationKind::t_adic: val = json{{"kind", "t-adic"}}; break;
    case ValuationKind::p_adic:
      val = json{{"kind", "p-adic"},
                 {"p", spec.prime},
                 {"mode", spec.mode == PadicMode::inert ? "inert" : "split"}};
      if (spec.split_branch >= 0) val["branch"] = spec.split_branch;
      break;
  }
  return json{{"base", base},
              {"twist", spec.twist},
              {"valuation", val},
              {"involution-preserves-valuation", spec.involution_preserves_valuation()}};
}

FieldSpecPtr field_spec_from_json(const json& j) {
  FieldSpec spec;
  const json& base = j.at("base");
  const std::string kind = base.at("kind").get<std::string>();
  const long characteristic = base.value("char", 0L);
  if (kind == "rational") {
    spec.base = characteristic == 0 ? BaseFieldCtx::rationals()
                                    : BaseFieldCtx::prime_field(characteristic);
  } else if (kind == "quadratic") {
    const Rat c = rat_from_json(base.at("c")), d = rat_from_json(base.at("d"));
    Rat e(0), f(1);
    if (base.contains("conj")) {
      e = rat_from_json(base.at("conj").at(0));
      f = rat_from_json(base.at("conj").at(1));
    }
    spec.base = characteristic == 0 ? BaseFieldCtx::quadratic_rationals(c, d, e, f)
                                    : BaseFieldCtx::quadratic_prime(characteristic, c, d, e, f);
  } else {
    throw std::invalid_argument("field spec: unknown base kind \"" + kind + "\"");
  }
  spec.twist = j.value("twist", false);
  const json& val = j.at("valuation");
  const std::string vkind = val.at("kind").get<std::string>();
  if (vkind == "trivial") {
    spec.vkind = ValuationKind::trivial;
  } else if (vkind == "t-adic") {
    spec.vkind = ValuationKind::t_adic;
  } else if (vkind == "p-adic") {
    spec.vkind = ValuationKind::p_adic;
    spec.prime = val.at("p").get<long>();
    const std::string mode = val.at("mode").get<std::string>();
    if (mode == "inert")
      spec.mode = PadicMode::inert;
    else if (mode == "split")
      spec.mode = PadicMode::split;
    else
      throw std::invalid_argument("field spec: unknown p-adic mode \"" + mode + "\"");
    spec.split_branch = val.value("branch", -1);
  } else {
    throw std::invalid_argument("field spec: unknown valuation kind \"" + vkind + "\"");
  }
  FieldSpecPtr out = make_field_spec(std::move(spec));
  if (j.contains("involution-preserves-valuation") &&
      j.at("involution-preserves-valuation").get<bool>() != out->involution_preserves_valuation())
    throw std::invalid_argument("field spec: declared involution/valuation flag is wrong");
  return out;
}

json matrix_to_json(const FieldMatrix& m) {
  json entries = json::array();
  for (int i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (int j2 = 0; j2 < m.size(); ++j2) row.push_back(to_string(m.at(i, j2)));
    entries.push_back(row);
  }
  return json{{"spec", field_spec_to_json(*m.spec())}, {"tag", tag_name(m.tag())}, {"entries", entries}};
}

FieldMatrix matrix_from_json(const json& j) {
  FieldSpecPtr spec = field_spec_from_json(j.at("spec"));
  const MatrixTag tag = tag_from_name(j.at("tag").get<std::string>());
  std::vector<std::vector<FieldElem>> entries;
  for (const auto& row : j.at("entries")) {
    std::vector<FieldElem> out;
    for (const auto& e : row) out.push_back(parse_field_elem(e.get<std::string>(), spec));
    entries.push_back(std::move(out));
  }
  return FieldMatrix::from_entries(std::move(spec), std::move(entries), tag);
}

json cube_face_to_json(const CubeFace& f) {
  json fixed = json::object();
  for (auto [coord, bit] : f.fixed_coords()) fixed[std::to_string(coord)] = bit;
  return json{{"n", f.n}, {"free", f.free_coords()}, {"fixed", fixed}};
}

json circuit_to_json(const ConvexCircuit& c) {
  json support = json::array(), weights = json::array();
  for (size_t i = 0; i < c.support.size(); ++i) {
    support.push_back(Subset(c.support[i], c.n).to_string());
    weights.push_back(rat_to_json(c.weights[i]));
  }
  return json{{"n", c.n}, {"support", support}, {"weights", weights}};
}

json face_witness_to_json(const FaceWitness& w) {
  json phi = json::array();
  for (const Rat& x : w.phi) phi.push_back(rat_to_json(x));
  return json{{"phi", phi}, {"b", rat_to_json(w.b)}, {"margin", rat_to_json(w.margin)}};
}

json cell_to_json(const Cell& c, int n) {
  json vertices = json::array();
  for (std::uint32_t v : c.vertices) vertices.push_back(Subset(v, n).to_string());
  return json{{"vertices", vertices}, {"dim", c.dim}};
}

json checker_result_to_json(const CheckerResult& r) {
  json out{{"valuated", r.valuated}};
  if (!r.certificate) return out;
  if (const auto* ex = std::get_if<ExchangeViolation>(&*r.certificate)) {
    out["certificate"] = json{{"kind", "exchange-violation"},
                              {"A", ex->a_set.to_string()},
                              {"B", ex->b_set.to_string()},
                              {"a", ex->element}};
  } else if (const auto* edge = std::get_if<LongEdgeCert>(&*r.certificate)) {
    out["certificate"] =
        json{{"kind", "long-edge"}, {"s", edge->s.to_string()}, {"t", edge->t.to_string()}};
  } else if (const auto* tie = std::get_if<CircuitTieCert>(&*r.certificate)) {
    json support = json::array(), weights = json::array();
    for (size_t i = 0; i < tie->support.size(); ++i) {
      support.push_back(tie->support[i].to_string());
      weights.push_back(rat_to_json(tie->weights[i]));
    }
    out["certificate"] = json{{"kind", "circuit-tie"},
                              {"face", cube_face_to_json(tie->face)},
                              {"support", support},
                              {"weights", weights}};
  }
  return out;
}

json polytope_edge_to_json(const PolytopeEdge& e) {
  const char* dir = nullptr;
  switch (e.dir) {
    case EdgeDirection::axis: dir = "e_i"; break;
    case EdgeDirection::plane_sum: dir = "e_i+e_j"; break;
    case EdgeDirection::plane_diff: dir = "e_i-e_j"; break;
    case EdgeDirection::longer: dir = "longer"; break;
  }
  return json{{"a", e.a.to_string()}, {"b", e.b.to_string()}, {"dir", dir}};
}

json rank_table_to_json(const RankTable& r) {
  json values = json::object();
  for (std::uint32_t s = 0; s < r.values.size(); ++s)
    values[Subset(s, r.n).to_string()] = r.values[s];
  return json{{"n", r.n}, {"values", values}};
}

json search_report_to_json(const ConjectureSearchReport& r) {
  json out{{"shape", r.config.shape == ConjectureShape::skew_hermitian_plus_rank_one
                         ? "skew-hermitian-plus-rank-one"
                         : "char2-omega-rank-one"},
           {"spec", field_spec_to_json(*r.config.spec)},
           {"n", r.config.n},
           {"trials", r.trials_run},
           {"seed", r.config.seed},
           {"counterexamples", json::array()}};
  for (const auto& c : r.counterexamples) {
    CheckerResult res;
    res.valuated = false;
    res.certificate = c.certificate;
    out["counterexamples"].push_back(json{{"trial", c.trial},
                                          {"matrix", matrix_to_json(c.a)},
                                          {"p", subset_function_to_json(c.p)},
                                          {"verdict", checker_result_to_json(res)}});
  }
  return out;
}

json realize3_report_to_json(const Realize3Report& r, const SubsetFunction& p) {
  json out{{"ok", r.ok},
           {"input", subset_function_to_json(p)},
           {"scale", rat_to_json(r.scale)}};
  if (!r.failure.empty()) out["failure"] = r.failure;
  if (!r.assignment.empty()) {
    json a = json::object();
    for (std::uint32_t s = 0; s < r.assignment.size(); ++s)
      a[Subset(s, 3).to_string()] = to_string(r.assignment[s]);
    out["assignment"] = a;
    out["valuations-match"] = r.valuations_match;
    out["pair-inequalities"] = r.pair_inequalities;
    out["hypdet-nonpositive"] = r.hypdet_nonpositive;
  }
  return out;
}

json isotropic_report_to_json(const IsotropicReport& r) {
  return json{{"p", subset_function_to_json(r.p)},
              {"minors-agree", r.minors_agree},
              {"verdict", checker_result_to_json(r.verdict)}};
}

json multiaffine_to_json(const MultiAffinePoly& f) {
  json coeffs = json::object();
  for (std::uint32_t t = 0; t < f.table_size(); ++t)
    if (!f.at(t).is_zero()) coeffs[Subset(t, f.n()).to_string()] = to_string(f.at(t));
  return json{{"n", f.n()}, {"coeffs", coeffs}};
}

json small_poly_to_json(const SmallPoly& s) {
  json terms = json::array();
  for (const auto& [key, c] : s.terms()) {
    json exps = json::array();
    for (int i = 1; i <= s.n(); ++i) exps.push_back(SmallPoly::exponent(key, i));
    terms.push_back(json{{"exponents", exps}, {"coeff", to_string(c)}});
  }
  return json{{"n", s.n()}, {"terms", terms}};
}

}  // namespace vdm::io
