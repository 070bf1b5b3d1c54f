#pragma once

// JSON serialization: matrices as {"dim", "re", "im"}, Cartan forms as r x r
// real arrays (canonicalized to the antisymmetric part on read), dual-group
// elements, orbit points and reports. All readers reject non-finite entries.

#include <string>

#include "json.hpp"

#include "plc/dual_group.hpp"
#include "plc/lie_su.hpp"

namespace plc {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j);

Json rvec_to_json(const RVec& v);
RVec rvec_from_json(const Json& j);

Json cartan_form_to_json(const CartanForm& u);
/// Canonicalizes to the antisymmetric part; `discarded` (optional out)
/// receives the symmetric mass dropped in the process.
CartanForm cartan_form_from_json(const Json& j, double* discarded = nullptr);

Json coalgebra_to_json(const CoalgebraVector& a);
CoalgebraVector coalgebra_from_json(const Json& j);

/// {N, cartan_coord, u, t}; t is carried alongside for context.
Json dual_element_to_json(const DualGroupElement& a, double t);
DualGroupElement dual_element_from_json(const Json& j, double* t_out = nullptr);

Json special_element_to_json(const SpecialDualElement& a);
SpecialDualElement special_element_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace plc
