#pragma once

#include "qes/invisibility.hpp"
#include "qes/oracle.hpp"
#include "qes/potentials.hpp"
#include "qes/support.hpp"

#include <json.hpp>

namespace qes {

using Json = nlohmann::ordered_json;

/// {"terms":[{"z":[re,im],"xf":{"kind":"g|gbar|const","L":..,"n":..,"beta":..},"yf":{...}}]}
/// Unknown kinds and unknown keys are rejected.
Potential potential_from_json(const Json& j);
Json to_json(const Potential& v);

Json to_json(const SupportCertificate& c);
Json to_json(const InvisibilityVerdict& v);
Json to_json(const VerifyReport& r);
Json to_json(const OracleReport& r);

/// [re, im]
Complex complex_from_json(const Json& j, const char* what);
Json to_json(Complex z);

/// Throws when `j` is not an object or has a key outside `allowed`.
void require_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what);

} // namespace qes
