#include <doctest.h>

#include "support.hpp"
#include "vdm/json_io.hpp"
#include "vdm/presets.hpp"

using namespace vdm;
using namespace vdm_test;
using nlohmann::json;

TEST_CASE("subset function round trip") {
  SubsetFunction p(3);
  p.set(0b000, Val(Rat(0)));
  p.set(0b011, Val(Rat(1, 2)));
  p.set(0b111, Val(Rat(-3)));
  json j = io::subset_function_to_json(p);
  CHECK(j["values"]["12"] == "1/2");
  CHECK(j["values"]["1"] == "inf");
  CHECK(io::subset_function_from_json(j) == p);

  // Missing keys are infinite; integers are accepted.
  json sparse = {{"n", 2}, {"values", {{"", 0}, {"12", "3/4"}}}};
  SubsetFunction q = io::subset_function_from_json(sparse);
  CHECK(q.at(0b01) == Val::infinity());
  CHECK(q.at(0b11) == Val(Rat(3, 4)));

  CHECK_THROWS(io::subset_function_from_json(json{{"n", 2}, {"values", json::object()}}));
}

TEST_CASE("basis family round trip") {
  json j = {{"n", 3}, {"bases", {"", "12", "13", "23", "123"}}};
  BasisFamily f = io::basis_family_from_json(j);
  CHECK(f.size() == 5);
  CHECK(io::basis_family_from_json(io::basis_family_to_json(f)).bases == f.bases);
}

TEST_CASE("field spec round trip for every preset") {
  for (auto& [name, spec] : presets::supported_specs()) {
    CAPTURE(name);
    json j = io::field_spec_to_json(*spec);
    FieldSpecPtr back = io::field_spec_from_json(j);
    CHECK(*back == *spec);
  }
  json j = io::field_spec_to_json(*presets::violating_2adic());
  CHECK(j["involution-preserves-valuation"] == false);
  CHECK(*io::field_spec_from_json(j) == *presets::violating_2adic());

  // A wrong declared flag is rejected.
  j["involution-preserves-valuation"] = true;
  CHECK_THROWS(io::field_spec_from_json(j));
}

TEST_CASE("matrix round trip re-parses to the same entries") {
  for (FieldMatrix m : {complex_example_matrix(), eisenstein_skew_matrix(), violating_matrix()}) {
    FieldMatrix back = io::matrix_from_json(io::matrix_to_json(m));
    REQUIRE(back.size() == m.size());
    CHECK(back.tag() == m.tag());
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j) CHECK(back.at(i, j) == m.at(i, j));
  }
  json bad = io::matrix_to_json(complex_example_matrix());
  bad["entries"][0][1] = "t";  // breaks the hermitian structure
  CHECK_THROWS(io::matrix_from_json(bad));
}

TEST_CASE("checker verdicts serialize with their certificates") {
  json reject = io::checker_result_to_json(is_valuated_delta_matroid(counterexample_p()));
  CHECK(reject["valuated"] == false);
  CHECK(reject["certificate"]["kind"] == "long-edge");
  CHECK(reject["certificate"]["s"] == "");
  CHECK(reject["certificate"]["t"] == "123");

  SubsetFunction gap(4);
  gap.set(0b0000, Val(Rat(0)));
  gap.set(0b1111, Val(Rat(0)));
  json exch = io::checker_result_to_json(is_valuated_delta_matroid(gap));
  CHECK(exch["certificate"]["kind"] == "exchange-violation");

  json accept = io::checker_result_to_json(is_valuated_delta_matroid(dim_dr4_p()));
  CHECK(accept["valuated"] == true);
  CHECK(!accept.contains("certificate"));
}

TEST_CASE("search reports embed reproducible data") {
  ConjectureSearchConfig config;
  config.shape = ConjectureShape::skew_hermitian_plus_rank_one;
  config.spec = presets::eisenstein_2adic();
  config.n = 3;
  config.trials = 10;
  config.seed = 123;
  json a = io::search_report_to_json(conjecture_search(config));
  json b = io::search_report_to_json(conjecture_search(config));
  CHECK(a == b);
  CHECK(a["trials"] == 10);
  // Any serialized counterexample matrix must re-parse.
  for (const auto& c : a["counterexamples"]) {
    FieldMatrix m = io::matrix_from_json(c["matrix"]);
    SubsetFunction p = io::subset_function_from_json(c["p"]);
    CHECK(principal_minor_valuations(m) == p);
  }
}

TEST_CASE("dump is byte stable") {
  SubsetFunction p = dim_dr4_p();
  std::string a = io::subset_function_to_json(p).dump(2);
  std::string b = io::subset_function_to_json(p).dump(2);
  CHECK(a == b);
}
