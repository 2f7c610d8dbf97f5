#pragma once

#include <json.hpp>

#include "modcat/classify.hpp"
#include "modcat/modular_data.hpp"
#include "modcat/supermod.hpp"

namespace modcat {

using Json = nlohmann::ordered_json;

Json to_json(const Cyclotomic& x);
Cyclotomic cyclotomic_from_json(const Json& j);

Json to_json(const ModularData& c, bool include_fusion = false);
ModularData modular_data_from_json(const Json& j);

Json to_json(const SuperModularData& s);
SuperModularData super_from_json(const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const Catalog& c);
std::string catalog_to_csv(const Catalog& c);

// Floating rendering {re, im, err} at the given precision.
Json approx_json(const Cyclotomic& x, long bits);

}  // namespace modcat
