#pragma once

#include <json.hpp>

#include "supergrade/classify.hpp"

namespace supergrade {

using nlohmann::json;

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// scalars as strings with the ambient order in the variable name ("3*z8^2")
json scalar_to_json(const Cyclo& c);
Cyclo scalar_from_json(const json& j, long order_hint = 1);

json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);
json vector_to_json(const Vec& v);
Vec vector_from_json(const json& j);

json group_to_json(const AbGroup& g);
AbGroup group_from_json(const json& j);
json elem_to_json(const GroupElem& e);
GroupElem elem_from_json(const json& j);
json semigroup_to_json(const SemigroupTable& t);
SemigroupTable semigroup_from_json(const json& j);

json algebra_to_json(const SuperAlgebra& a);
SuperAlgebra algebra_from_json(const json& j);

/// Elements in structural form: a matrix for M(n|m), {"x","y"} matrices for
/// Q(n), {"first","second"} elements for pair algebras and direct sums.
json element_to_json(const SuperAlgebra& a, const Vec& v);
Vec element_from_json(const SuperAlgebra& a, const json& j);

json supermap_to_json(const SuperMap& m);
SuperMap supermap_from_json(const json& j);
/// accepts {"canonical": "osp"|"trp"|"exchange"|"tau"|"identity"|"transpose"}
/// or a full action matrix
SuperMap supermap_from_json(const json& j, const SuperAlgebra& alg);

json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const json& j, long ambient_dim);

json grading_to_json(const Grading& g);
Grading grading_from_json(const json& j, long ambient_dim);

json typed_grading_to_json(const TypedGrading& t);

json map_check_report_to_json(const MapCheckReport& r);
json grading_check_report_to_json(const GradingCheckReport& r);
json support_report_to_json(const SupportReport& r);
json exchange_result_to_json(const ExchangeResult& r);
json obstruction_report_to_json(const ObstructionReport& r);
json identity_decomposition_to_json(const IdentityDecomposition& d,
                                    const SuperAlgebra& alg);

}  // namespace supergrade
