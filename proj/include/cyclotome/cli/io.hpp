#pragma once

// JSON schemas for inputs and reports. Every input document carries
// "schema": "cyclotome.<kind>/1"; matrices are lists of columns.

#include <string>
#include <vector>

#include <json.hpp>

#include "cyclotome/algebra/algebra.hpp"
#include "cyclotome/burnside/burnside.hpp"
#include "cyclotome/cyclic/homology.hpp"
#include "cyclotome/fdm/de_rham.hpp"
#include "cyclotome/fdm/fdm.hpp"
#include "cyclotome/fdm/generalized.hpp"

namespace cyclotome::io {

using json = nlohmann::ordered_json;

inline constexpr const char* tool_version = "cyclotome 0.1.0";

// "Q", "Z", "F<p>", "Z/<p^k>"
Ring parse_ring(const std::string& s);
std::string ring_label(const Ring& r);

Scalar parse_scalar(const json& j);
IntMat parse_columns(const json& j, std::size_t rows);
json columns_json(const IntMat& m);

json load_file(const std::string& path);
void check_schema(const json& j, const std::string& kind);

GroupTable parse_group(const json& j);  // preset name or {"labels", "table"}
AlgebraSpec parse_algebra_spec(const json& j);
FDM parse_fdm(const json& j);
GeneralizedFDM parse_generalized_fdm(const json& j);
DeRhamData parse_de_rham(const json& j);
// {"ring", "rank": [...], "restriction": [...], "transfer": [...]} aligned with orbit_maps
MackeyFunctor parse_mackey(const json& j, const SubgroupLattice& l);

json to_json(const ModuleDescriptor& m);
json to_json(const HomologyTable& t);
json to_json(const FDMValidation& v);
json to_json(const FDMDescriptor& d);
json to_json(const SpanClass& c, std::size_t target_size, const GroupTable& g);

}  // namespace cyclotome::io
