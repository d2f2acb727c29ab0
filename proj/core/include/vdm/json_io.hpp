#pragma once

#include <json.hpp>

#include "vdm/delta_matroid.hpp"
#include "vdm/field_matrix.hpp"
#include "vdm/representability.hpp"
#include "vdm/subdivision.hpp"
#include "vdm/subset_function.hpp"

namespace vdm::io {

using nlohmann::json;

json rat_to_json(const Rat& x);
Rat rat_from_json(const json& j);
json val_to_json(const Val& v);
Val val_from_json(const json& j);

json subset_function_to_json(const SubsetFunction& p);
SubsetFunction subset_function_from_json(const json& j);

json basis_family_to_json(const BasisFamily& f);
BasisFamily basis_family_from_json(const json& j);

json field_spec_to_json(const FieldSpec& spec);
FieldSpecPtr field_spec_from_json(const json& j);

json matrix_to_json(const FieldMatrix& m);
FieldMatrix matrix_from_json(const json& j);

json cube_face_to_json(const CubeFace& f);
json circuit_to_json(const ConvexCircuit& c);
json face_witness_to_json(const FaceWitness& w);
json cell_to_json(const Cell& c, int n);
json checker_result_to_json(const CheckerResult& r);
json polytope_edge_to_json(const PolytopeEdge& e);
json rank_table_to_json(const RankTable& r);

json search_report_to_json(const ConjectureSearchReport& r);
json realize3_report_to_json(const Realize3Report& r, const SubsetFunction& p);
json isotropic_report_to_json(const IsotropicReport& r);
json multiaffine_to_json(const MultiAffinePoly& f);
json small_poly_to_json(const SmallPoly& s);

}  // namespace vdm::io
